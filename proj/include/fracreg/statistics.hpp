#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <ostream>
#include <vector>

#include "json.hpp"

#include "fracreg/model_space.hpp"

namespace fracreg {

// Statistics are taken over the negative sector with the uniform measure.

struct SizeDistribution {
  std::map<std::int64_t, std::size_t> counts;  // Q = q -> elements
  std::size_t total = 0;
  double q_star = 0;
  double p_not_multiple = 0;  // P{Q mod N != 0}; Q = 0 counts as a multiple
  double mean_q_over_qstar = 0;
  double var_q_over_qstar = 0;
  bool certified = false;
};

SizeDistribution size_distribution(const ModelSpace& ms);

struct HomogeneityBin {
  Homogeneity value;  // b = 0 when kappa is dropped
  std::size_t count = 0;
};

std::vector<HomogeneityBin> homogeneity_histogram(const ModelSpace& ms, bool drop_kappa);

struct DegreeDistribution {
  bool bare = false;
  // Index j = vertex degree, 0..N+1. Pooled over all vertices of all negative
  // elements plus the unit element as one degree-0 vertex.
  std::vector<std::size_t> pooled_counts;
  std::vector<double> pooled;
  // Mean over elements of (vertices of degree j) / (vertices), j = 0..N+1.
  std::vector<double> per_tree_mean;
};

DegreeDistribution degree_distribution(const ModelSpace& ms, bool bare);

struct HeightDiameter {
  std::vector<std::size_t> heights;  // bare trees, in negative-sector order
  std::vector<std::size_t> diameters;
  double mean_height = 0;
  double mean_diameter = 0;
  double mean_sqrt_gap_height = 0;  // E[sqrt(rho - rho_c) H]
  double mean_sqrt_gap_diameter = 0;
  double mean_gap_height = 0;  // E[(rho - rho_c) H]
  double mean_gap_diameter = 0;
  double height_constant = 0;    // 4 sqrt(pi d) / (3 lambda_2)
  double diameter_constant = 0;  // 16 sqrt(pi d) / (9 lambda_2)
};

inline constexpr double kLambda2 = 1.1300337;

HeightDiameter height_diameter(const ModelSpace& ms);

struct GraphMeasures {
  double M_d = 0;  // density m / (n (n-1)), directed edges
  double M_b = 0;  // betweenness, ordered pairs, endpoints excluded, averaged by 1/n
  double M_r = 0;  // mean vertex PageRank
  double M_p = 0;  // vertices whose eccentricity equals the diameter, root-to-leaf orientation
  double M_p_undirected = 0;
};

struct GraphOptions {
  bool bare = false;
  double damping = 0.85;
  double tolerance = 1e-10;
  int max_iterations = 10'000;
};

GraphMeasures graph_measures(const ModelSpace& ms, const GraphOptions& options = {});

// Per-tree measures on an explicit tree (parent[0] is ignored; parent[v] < v).
struct TreeMeasures {
  double density = 0;
  double betweenness = 0;  // (1/n) sum over vertices
  double mean_pagerank = 0;
  std::vector<double> pagerank;
  std::size_t periphery_directed = 0;
  std::size_t periphery_undirected = 0;
};

TreeMeasures tree_measures(const std::vector<std::size_t>& parent, const GraphOptions& options = {});
// Parent array of a symbol's tree in preorder, optionally without Xi leaves.
std::vector<std::size_t> parent_array(const Symbol& t, bool bare);

struct ScanPoint {
  Rational rho;
  std::size_t h_F = 0;
  std::size_t c_F = 0;
  bool certified = false;
};

struct ScalingFit {
  double A = 0;  // h_F ~ A / gap
  double A_lower = 0;  // coefficient envelope at the mid-grid rho
  double A_upper = 0;
  double B = 0;
  double beta = 0;  // log c_F - 1.5 log gap ~ B + beta d / gap
  double beta_reference = 0;
  double beta_relative_error = 0;
  std::vector<double> h_residuals;
  std::vector<double> c_residuals;
  std::vector<double> hF_times_gap;
};

ScalingFit scaling_fit(const std::vector<ScanPoint>& points, int N, int d);

struct ElementRecord {
  std::string symbol;
  std::int64_t p = 0;
  std::int64_t q = 0;
  Rational k_degree;
  Homogeneity homogeneity;
  std::size_t height = 0;
  std::size_t diameter = 0;
  std::vector<std::size_t> degree_counts;  // decorated
};

struct StatReport {
  Parameters params;
  bool certified = false;
  std::vector<ElementRecord> elements;
  SizeDistribution sizes;
  std::vector<HomogeneityBin> homogeneity;
  std::vector<HomogeneityBin> homogeneity_exact;
  DegreeDistribution degrees;
  DegreeDistribution bare_degrees;
  HeightDiameter shape;
  GraphMeasures graph;
};

StatReport make_report(const ModelSpace& ms, const GraphOptions& options = {});
nlohmann::json to_json(const StatReport& report);

// bin,count,normalized
void write_size_csv(std::ostream& os, const SizeDistribution& s);
void write_homogeneity_csv(std::ostream& os, const std::vector<HomogeneityBin>& bins, bool with_kappa);
void write_degree_csv(std::ostream& os, const DegreeDistribution& dd);

}  // namespace fracreg
