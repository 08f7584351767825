#include "fracreg/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "fracreg/analytic.hpp"

namespace fracreg {

namespace {

// Where the zero-homogeneity line leaves the cone of reachable types (kappa = 0).
double q_star_of(const Parameters& params) {
  double a = -to_double(params.alpha0.a);
  double denom = to_double(params.rho) / a - static_cast<double>(params.N - 1) / params.N;
  return denom > 0 ? 1 / denom : std::numeric_limits<double>::infinity();
}

double gap_of(const Parameters& params) { return to_double(params.rho - rho_c(params.N, params.d)); }

std::vector<const SymbolRecord*> negatives(const ModelSpace& ms) {
  std::vector<const SymbolRecord*> out;
  for (const auto& r : ms.records)
    if (r.homogeneity.is_negative()) out.push_back(&r);
  return out;
}

void collect_parents(const SymbolNode& n, std::size_t self, bool bare, std::vector<std::size_t>& parent) {
  for (const auto& e : n.children()) {
    if (bare && e.type == EdgeType::Xi) continue;
    std::size_t id = parent.size();
    parent.push_back(self);
    collect_parents(*e.target, id, bare, parent);
  }
}

}  // namespace

SizeDistribution size_distribution(const ModelSpace& ms) {
  SizeDistribution s;
  s.certified = ms.negative_sector_complete();
  s.q_star = q_star_of(ms.params);
  std::size_t off = 0;
  double sum = 0, sum2 = 0;
  for (const auto* r : negatives(ms)) {
    auto q = r->symbol.type().q;
    s.counts[q] += 1;
    s.total += 1;
    if (q % ms.params.N != 0) ++off;
    double x = static_cast<double>(q) / s.q_star;
    sum += x;
    sum2 += x * x;
  }
  if (s.total > 0) {
    double n = static_cast<double>(s.total);
    s.p_not_multiple = static_cast<double>(off) / n;
    s.mean_q_over_qstar = sum / n;
    s.var_q_over_qstar = std::max(0.0, sum2 / n - s.mean_q_over_qstar * s.mean_q_over_qstar);
  }
  return s;
}

std::vector<HomogeneityBin> homogeneity_histogram(const ModelSpace& ms, bool drop_kappa) {
  std::vector<HomogeneityBin> bins;
  for (const auto* r : negatives(ms)) {
    Homogeneity key = r->homogeneity;
    if (drop_kappa) key.b = 0;
    if (!bins.empty() && bins.back().value == key) bins.back().count += 1;
    else bins.push_back({key, 1});
  }
  // Records are sorted by (a, b), so equal rational parts are adjacent.
  return bins;
}

DegreeDistribution degree_distribution(const ModelSpace& ms, bool bare) {
  DegreeDistribution dd;
  dd.bare = bare;
  const std::size_t width = static_cast<std::size_t>(ms.params.N) + 2;
  dd.pooled_counts.assign(width, 0);
  dd.per_tree_mean.assign(width, 0.0);
  dd.pooled_counts[0] += 1;  // the unit element
  auto neg = negatives(ms);
  for (const auto* r : neg) {
    auto dv = degree_vector(r->symbol, !bare);
    std::size_t n = 0;
    for (auto c : dv.counts) n += c;
    for (std::size_t j = 0; j < dv.counts.size(); ++j) {
      if (j >= width) throw std::logic_error("vertex degree exceeds N+1 in " + r->symbol.encoding());
      dd.pooled_counts[j] += dv.counts[j];
      dd.per_tree_mean[j] += static_cast<double>(dv.counts[j]) / static_cast<double>(n);
    }
  }
  double total = std::accumulate(dd.pooled_counts.begin(), dd.pooled_counts.end(), 0.0);
  for (auto c : dd.pooled_counts) dd.pooled.push_back(c / total);
  if (!neg.empty())
    for (auto& m : dd.per_tree_mean) m /= static_cast<double>(neg.size());
  return dd;
}

HeightDiameter height_diameter(const ModelSpace& ms) {
  HeightDiameter hd;
  const double gap = gap_of(ms.params);
  const double sg = gap > 0 ? std::sqrt(gap) : 0;
  const double pi = std::acos(-1.0);
  hd.height_constant = 4 * std::sqrt(pi * ms.params.d) / (3 * kLambda2);
  hd.diameter_constant = 16 * std::sqrt(pi * ms.params.d) / (9 * kLambda2);
  auto neg = negatives(ms);
  for (const auto* r : neg) {
    auto b = bare_tree(r->symbol);
    hd.heights.push_back(tree_height(b));
    hd.diameters.push_back(tree_diameter(b));
  }
  if (neg.empty()) return hd;
  double n = static_cast<double>(neg.size());
  hd.mean_height = std::accumulate(hd.heights.begin(), hd.heights.end(), 0.0) / n;
  hd.mean_diameter = std::accumulate(hd.diameters.begin(), hd.diameters.end(), 0.0) / n;
  hd.mean_sqrt_gap_height = sg * hd.mean_height;
  hd.mean_sqrt_gap_diameter = sg * hd.mean_diameter;
  hd.mean_gap_height = gap * hd.mean_height;
  hd.mean_gap_diameter = gap * hd.mean_diameter;
  return hd;
}

std::vector<std::size_t> parent_array(const Symbol& t, bool bare) {
  std::vector<std::size_t> parent{0};
  collect_parents(*t.node(), 0, bare, parent);
  return parent;
}

TreeMeasures tree_measures(const std::vector<std::size_t>& parent, const GraphOptions& options) {
  TreeMeasures m;
  const std::size_t n = parent.size();
  if (n == 0) throw std::invalid_argument("empty tree");
  if (n == 1) {
    m.pagerank = {1.0};
    m.mean_pagerank = 1.0;
    m.periphery_directed = 1;
    m.periphery_undirected = 1;
    return m;
  }
  std::vector<std::vector<std::size_t>> adj(n), kids(n);
  for (std::size_t v = 1; v < n; ++v) {
    if (parent[v] >= v) throw std::invalid_argument("parent array must list parents before children");
    adj[v].push_back(parent[v]);
    adj[parent[v]].push_back(v);
    kids[parent[v]].push_back(v);
  }
  const double nn = static_cast<double>(n);
  m.density = static_cast<double>(n - 1) / (nn * (nn - 1));

  std::vector<std::size_t> size(n, 1), height(n, 0);
  for (std::size_t v = n; v-- > 1;) {
    size[parent[v]] += size[v];
    height[parent[v]] = std::max(height[parent[v]], height[v] + 1);
  }
  double between = 0;
  for (std::size_t v = 0; v < n; ++v) {
    double sq = 0;
    for (auto c : kids[v]) sq += static_cast<double>(size[c]) * static_cast<double>(size[c]);
    double up = static_cast<double>(n - size[v]);
    sq += up * up;
    between += (nn - 1) * (nn - 1) - sq;
  }
  m.betweenness = between / nn;

  std::vector<double> pr(n, 1 / nn), next(n);
  for (int it = 0; it < options.max_iterations; ++it) {
    for (std::size_t v = 0; v < n; ++v) {
      double s = 0;
      for (auto u : adj[v]) s += pr[u] / static_cast<double>(adj[u].size());
      next[v] = (1 - options.damping) / nn + options.damping * s;
    }
    double delta = 0;
    for (std::size_t v = 0; v < n; ++v) delta += std::abs(next[v] - pr[v]);
    pr.swap(next);
    if (delta < options.tolerance) break;
  }
  m.pagerank = pr;
  m.mean_pagerank = std::accumulate(pr.begin(), pr.end(), 0.0) / nn;

  for (std::size_t v = 0; v < n; ++v)
    if (height[v] == height[0]) ++m.periphery_directed;

  std::vector<std::size_t> ecc(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> dist(n, SIZE_MAX);
    std::queue<std::size_t> bfs;
    dist[s] = 0;
    bfs.push(s);
    while (!bfs.empty()) {
      auto v = bfs.front();
      bfs.pop();
      ecc[s] = std::max(ecc[s], dist[v]);
      for (auto u : adj[v])
        if (dist[u] == SIZE_MAX) {
          dist[u] = dist[v] + 1;
          bfs.push(u);
        }
    }
  }
  auto diam = *std::max_element(ecc.begin(), ecc.end());
  m.periphery_undirected = static_cast<std::size_t>(std::count(ecc.begin(), ecc.end(), diam));
  return m;
}

GraphMeasures graph_measures(const ModelSpace& ms, const GraphOptions& options) {
  GraphMeasures g;
  auto neg = negatives(ms);
  if (neg.empty()) return g;
  for (const auto* r : neg) {
    auto tm = tree_measures(parent_array(r->symbol, options.bare), options);
    g.M_d += tm.density;
    g.M_b += tm.betweenness;
    g.M_r += tm.mean_pagerank;
    g.M_p += static_cast<double>(tm.periphery_directed);
    g.M_p_undirected += static_cast<double>(tm.periphery_undirected);
  }
  double n = static_cast<double>(neg.size());
  g.M_d /= n;
  g.M_b /= n;
  g.M_r /= n;
  g.M_p /= n;
  g.M_p_undirected /= n;
  return g;
}

ScalingFit scaling_fit(const std::vector<ScanPoint>& points, int N, int d) {
  if (points.size() < 4) throw std::invalid_argument("scaling fit needs at least 4 grid points");
  std::vector<double> x, hf, y;
  for (const auto& p : points) {
    Rational gap = p.rho - rho_c(N, d);
    if (gap <= Rational(0)) throw std::invalid_argument("grid point rho = " + to_string(p.rho) + " is not subcritical");
    if (p.c_F == 0) throw std::invalid_argument("grid point with c_F = 0");
    double g = to_double(gap);
    x.push_back(1 / g);
    hf.push_back(static_cast<double>(p.h_F));
    y.push_back(std::log(static_cast<double>(p.c_F)) - 1.5 * std::log(g));
  }
  const double n = static_cast<double>(x.size());
  double sxx = 0, sxh = 0, sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += x[i] * x[i];
    sxh += x[i] * hf[i];
    sx += x[i];
    sy += y[i];
  }
  double mx = sx / n, my = sy / n, cxx = 0, cxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    cxx += (x[i] - mx) * (x[i] - mx);
    cxy += (x[i] - mx) * (y[i] - my);
  }
  if (cxx <= 1e-12 * sxx) throw std::invalid_argument("degenerate grid: all points share one rho");

  ScalingFit f;
  f.A = sxh / sxx;
  double slope = cxy / cxx;
  f.beta = slope / d;
  f.B = my - slope * mx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    f.h_residuals.push_back(hf[i] - f.A * x[i]);
    f.c_residuals.push_back(y[i] - (f.B + slope * x[i]));
    f.hF_times_gap.push_back(hf[i] / x[i]);
  }
  auto [lo, hi] = std::minmax_element(points.begin(), points.end(),
                                      [](const ScanPoint& a, const ScanPoint& b) { return a.rho < b.rho; });
  double mid = (to_double(lo->rho) + to_double(hi->rho)) / 2;
  f.A_lower = (mid + d) / (N + 1);
  f.A_upper = (mid + d) * d * N / (N + 1);
  if (auto a = alpha_N(N)) {
    f.beta_reference = beta_N(N, *a);
    f.beta_relative_error = std::abs(f.beta - f.beta_reference) / f.beta_reference;
  }
  return f;
}

StatReport make_report(const ModelSpace& ms, const GraphOptions& options) {
  StatReport rep;
  rep.params = ms.params;
  rep.certified = ms.negative_sector_complete();
  for (const auto* r : negatives(ms)) {
    const auto& t = r->symbol.type();
    auto b = bare_tree(r->symbol);
    rep.elements.push_back({render(r->symbol, static_cast<std::size_t>(ms.params.d) + 1), t.p, t.q,
                            scaled_degree(t.k, ms.params.rho), r->homogeneity, tree_height(b), tree_diameter(b),
                            degree_vector(r->symbol, true).counts});
  }
  rep.sizes = size_distribution(ms);
  rep.homogeneity = homogeneity_histogram(ms, true);
  rep.homogeneity_exact = homogeneity_histogram(ms, false);
  rep.degrees = degree_distribution(ms, false);
  rep.bare_degrees = degree_distribution(ms, true);
  rep.shape = height_diameter(ms);
  rep.graph = graph_measures(ms, options);
  return rep;
}

namespace {

nlohmann::json degrees_json(const DegreeDistribution& dd) {
  return {{"bare", dd.bare}, {"pooled_counts", dd.pooled_counts}, {"pooled", dd.pooled}, {"per_tree_mean", dd.per_tree_mean}};
}

nlohmann::json bins_json(const std::vector<HomogeneityBin>& bins, bool with_kappa) {
  auto out = nlohmann::json::array();
  for (const auto& b : bins) {
    nlohmann::json j{{"a", to_string(b.value.a)}, {"count", b.count}};
    if (with_kappa) j["b"] = b.value.b;
    out.push_back(j);
  }
  return out;
}

}  // namespace

nlohmann::json to_json(const StatReport& r) {
  nlohmann::json j;
  j["params"] = {{"N", r.params.N}, {"d", r.params.d}, {"rho", to_string(r.params.rho)},
                 {"alpha0", {{"a", to_string(r.params.alpha0.a)}, {"b", r.params.alpha0.b}}}};
  j["certified"] = r.certified;
  auto els = nlohmann::json::array();
  for (const auto& e : r.elements) {
    els.push_back({{"symbol", e.symbol}, {"p", e.p}, {"q", e.q}, {"k_degree", to_string(e.k_degree)},
                   {"a", to_string(e.homogeneity.a)}, {"b", e.homogeneity.b}, {"height", e.height},
                   {"diameter", e.diameter}, {"degree_counts", e.degree_counts}});
  }
  j["elements"] = els;
  nlohmann::json q = nlohmann::json::array();
  for (const auto& [k, v] : r.sizes.counts) q.push_back({{"q", k}, {"count", v}});
  j["size_distribution"] = {{"counts", q},
                            {"total", r.sizes.total},
                            {"q_star", r.sizes.q_star},
                            {"p_not_multiple", r.sizes.p_not_multiple},
                            {"mean_q_over_qstar", r.sizes.mean_q_over_qstar},
                            {"var_q_over_qstar", r.sizes.var_q_over_qstar}};
  j["homogeneity_histogram"] = bins_json(r.homogeneity, false);
  j["homogeneity_histogram_exact"] = bins_json(r.homogeneity_exact, true);
  j["degree_distribution"] = degrees_json(r.degrees);
  j["bare_degree_distribution"] = degrees_json(r.bare_degrees);
  j["height_diameter"] = {{"mean_height", r.shape.mean_height},
                          {"mean_diameter", r.shape.mean_diameter},
                          {"mean_sqrt_gap_height", r.shape.mean_sqrt_gap_height},
                          {"mean_sqrt_gap_diameter", r.shape.mean_sqrt_gap_diameter},
                          {"mean_gap_height", r.shape.mean_gap_height},
                          {"mean_gap_diameter", r.shape.mean_gap_diameter},
                          {"height_constant", r.shape.height_constant},
                          {"diameter_constant", r.shape.diameter_constant}};
  j["graph_measures"] = {{"M_d", r.graph.M_d},
                         {"M_b", r.graph.M_b},
                         {"M_r", r.graph.M_r},
                         {"M_p", r.graph.M_p},
                         {"M_p_undirected", r.graph.M_p_undirected}};
  return j;
}

void write_size_csv(std::ostream& os, const SizeDistribution& s) {
  os << "bin,count,normalized\n";
  for (const auto& [q, c] : s.counts)
    os << q << ',' << c << ',' << static_cast<double>(c) / static_cast<double>(s.total) << '\n';
}

void write_homogeneity_csv(std::ostream& os, const std::vector<HomogeneityBin>& bins, bool with_kappa) {
  std::size_t total = 0;
  for (const auto& b : bins) total += b.count;
  os << "bin,count,normalized\n";
  for (const auto& b : bins) {
    os << (with_kappa ? to_string(b.value) : to_string(b.value.a)) << ',' << b.count << ','
       << static_cast<double>(b.count) / static_cast<double>(total) << '\n';
  }
}

void write_degree_csv(std::ostream& os, const DegreeDistribution& dd) {
  os << "bin,count,normalized\n";
  for (std::size_t j = 0; j < dd.pooled_counts.size(); ++j)
    os << j << ',' << dd.pooled_counts[j] << ',' << dd.pooled[j] << '\n';
}

}  // namespace fracreg
