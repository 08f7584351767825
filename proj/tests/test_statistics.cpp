#include "doctest.h"

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "fracreg/analytic.hpp"
#include "fracreg/combinatorics.hpp"
#include "fracreg/statistics.hpp"

using namespace fracreg;

namespace {

Rational R(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

Symbol I(const Symbol& t) { return *integrate(t); }

Symbol power(const Symbol& t, int n) {
  Symbol out = Symbol::one();
  for (int i = 0; i < n; ++i) out = multiply(out, t);
  return out;
}

// Betweenness by explicit path walking: for every ordered pair (s, t) mark the
// interior vertices of the unique s-t path.
double brute_betweenness(const std::vector<std::size_t>& parent) {
  const std::size_t n = parent.size();
  std::vector<std::size_t> depth(n, 0);
  for (std::size_t v = 1; v < n; ++v) depth[v] = depth[parent[v]] + 1;
  double total = 0;
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) {
      if (s == t) continue;
      std::size_t a = s, b = t;
      std::set<std::size_t> path;
      while (a != b) {
        if (depth[a] >= depth[b]) {
          a = parent[a];
          path.insert(a);
        } else {
          b = parent[b];
          path.insert(b);
        }
      }
      for (auto v : path) total += (v != s && v != t);
    }
  return total / static_cast<double>(n);
}

std::vector<std::size_t> random_tree(std::mt19937& rng, std::size_t n) {
  std::vector<std::size_t> parent{0};
  for (std::size_t v = 1; v < n; ++v) parent.push_back(std::uniform_int_distribution<std::size_t>(0, v - 1)(rng));
  return parent;
}

}  // namespace

TEST_CASE("homogeneity histogram of the smallest case") {
  auto ms = build_negative_sector(Parameters::white(2, 2, R(3, 2)));
  auto bins = homogeneity_histogram(ms, true);
  REQUIRE(bins.size() == 3);
  CHECK(bins[0].value == Homogeneity{R(-7, 4), 0});
  CHECK(bins[1].value == Homogeneity{R(-1, 2), 0});
  CHECK(bins[2].value == Homogeneity{R(-1, 4), 0});
  for (const auto& b : bins) CHECK(b.count == 1);
  std::ostringstream os;
  write_homogeneity_csv(os, bins, false);
  CHECK(os.str() == "bin,count,normalized\n-7/4,1,0.333333\n-1/2,1,0.333333\n-1/4,1,0.333333\n");
}

TEST_CASE("histograms sum to the sector size") {
  for (auto rho : {R(1), R(9, 10), R(4, 5)}) {
    auto ms = build_negative_sector(Parameters::white(2, 2, rho));
    auto c = c_F(ms).value;
    std::size_t sum = 0;
    for (const auto& b : homogeneity_histogram(ms, true)) sum += b.count;
    CHECK(sum == c);
    auto exact = homogeneity_histogram(ms, false);
    CHECK(exact.size() == h_F(ms).value);
    for (std::size_t i = 1; i < exact.size(); ++i) CHECK(exact[i - 1].value < exact[i].value);
    auto sizes = size_distribution(ms);
    CHECK(sizes.total == c);
    std::size_t s2 = 0;
    for (const auto& [q, n] : sizes.counts) s2 += n;
    CHECK(s2 == c);
    CHECK(sizes.certified);
  }
}

TEST_CASE("homogeneity decomposes into noise, integration and polynomial parts") {
  for (auto [N, d, rho] : std::vector<std::tuple<int, int, Rational>>{
           {2, 2, R(4, 5)}, {3, 3, R(17, 10)}, {2, 3, R(13, 10)}, {3, 2, R(6, 5)}}) {
    auto p = Parameters::white(N, d, rho);
    auto ms = build_negative_sector(p);
    for (const auto& r : negative_sector(ms)) {
      const auto& t = r.symbol.type();
      Homogeneity expected = t.p * p.alpha0 + Homogeneity{rho * t.q + scaled_degree(t.k, rho), 0};
      CHECK(r.homogeneity == expected);
      if (t.k.is_zero() && t.q >= 1) {
        // P = 1 + (N-1)Q/N - frac(-Q/N)
        Rational minus_q_over_n(-t.q, N);
        Rational frac = minus_q_over_n - Rational(floor(minus_q_over_n));
        CHECK(Rational(t.p) == Rational(1) + Rational((N - 1) * t.q, N) - frac);
      }
    }
  }
}

TEST_CASE("sizes follow the regular tree counts on multiples of N") {
  for (auto [N, d, rho] : std::vector<std::tuple<int, int, Rational>>{
           {2, 2, R(9, 10)}, {2, 2, R(4, 5)}, {2, 2, R(3, 4)}, {3, 3, R(17, 10)}, {3, 3, R(21, 11)}}) {
    CAPTURE(N);
    CAPTURE(to_string(rho));
    auto ms = build_negative_sector(Parameters::white(N, d, rho));
    REQUIRE(ms.negative_sector_complete());
    auto s = size_distribution(ms);
    const auto q_max = floor(lattice_bounds(N, d, rho).q_star);
    std::size_t checked = 0;
    for (std::int64_t q = 0; q <= q_max; q += N) {
      // Only the unique p = p_of_q lattice point can be negative; skip if it is not.
      auto p = q == 0 ? 1 : p_of_q(q, N);
      auto h = p * Parameters::white(N, d, rho).alpha0 + Homogeneity{rho * q, 0};
      if (!h.is_negative()) continue;
      auto it = s.counts.find(q);
      std::size_t got = it == s.counts.end() ? 0 : it->second;
      CHECK(BigInt(got) == count_regular(N, static_cast<int>(q) + 1));
      ++checked;
    }
    CHECK(checked >= 2);
  }
}

TEST_CASE("size moments") {
  auto ms = build_negative_sector(Parameters::white(2, 2, R(3, 2)));
  auto s = size_distribution(ms);
  CHECK(s.q_star == doctest::Approx(14.0 / 5.0));
  // Q values 0, 1, 2.
  CHECK(s.mean_q_over_qstar == doctest::Approx(1.0 / (14.0 / 5.0)));
  CHECK(s.p_not_multiple == doctest::Approx(1.0 / 3.0));
  CHECK(s.var_q_over_qstar == doctest::Approx((5.0 / 3.0 - 1.0) / (14.0 * 14.0 / 25.0)));
}

TEST_CASE("degree distributions") {
  auto ms = build_negative_sector(Parameters::white(2, 2, R(3, 2)));
  auto dec = degree_distribution(ms, false);
  // Xi: 2 vertices of degree 1. I(Xi): degrees 1, 2, 1. I(Xi)^2: 2, 2, 1, 2, 1 -> root 2.
  // Plus the unit as one vertex of degree 0.
  CHECK(dec.pooled_counts == std::vector<std::size_t>{1, 6, 4, 0});
  double sum = 0;
  for (auto x : dec.pooled) sum += x;
  CHECK(sum == doctest::Approx(1.0));
  auto bare = degree_distribution(ms, true);
  // Bare trees: single vertex, path of 2, cherry.
  CHECK(bare.pooled_counts == std::vector<std::size_t>{2, 4, 1, 0});
  CHECK(bare.per_tree_mean[0] == doctest::Approx(1.0 / 3.0));

  std::ostringstream os;
  write_degree_csv(os, dec);
  CHECK(os.str().rfind("bin,count,normalized\n0,1,", 0) == 0);

  for (auto rho : {R(9, 10), R(4, 5)}) {
    auto m2 = build_negative_sector(Parameters::white(2, 2, rho));
    for (const auto& r : negative_sector(m2)) {
      auto dv = degree_vector(bare_tree(r.symbol), false);
      std::size_t vertices = 0, degree_sum = 0;
      for (std::size_t j = 0; j < dv.counts.size(); ++j) {
        vertices += dv.counts[j];
        degree_sum += j * dv.counts[j];
      }
      CHECK(vertices == static_cast<std::size_t>(r.symbol.type().q + 1));
      CHECK(degree_sum == static_cast<std::size_t>(2 * r.symbol.type().q));
    }
  }
}

TEST_CASE("heights and diameters") {
  auto xi = Symbol::xi();
  CHECK(tree_height(bare_tree(xi)) == 0);
  CHECK(tree_diameter(bare_tree(xi)) == 0);
  auto t = I(power(I(xi), 2));
  CHECK(tree_height(bare_tree(t)) == 2);
  CHECK(tree_diameter(bare_tree(t)) == 2);

  auto ms = build_negative_sector(Parameters::white(2, 2, R(4, 5)));
  auto hd = height_diameter(ms);
  auto neg = negative_sector(ms);
  REQUIRE(hd.heights.size() == neg.size());
  for (std::size_t i = 0; i < neg.size(); ++i) {
    CHECK(hd.diameters[i] <= 2 * hd.heights[i]);
    CHECK(hd.heights[i] <= static_cast<std::size_t>(neg[i].symbol.type().q));
    auto plain = to_plain_tree(bare_tree(neg[i].symbol));
    CHECK(plain.height() == hd.heights[i]);
    CHECK(plain.diameter() == hd.diameters[i]);
  }
  CHECK(hd.height_constant == doctest::Approx(4 * std::sqrt(std::acos(-1.0) * 2) / (3 * 1.1300337)));
  CHECK(hd.height_constant == doctest::Approx(2.958).epsilon(1e-3));
  CHECK(hd.mean_sqrt_gap_height == doctest::Approx(std::sqrt(0.8 - 2.0 / 3.0) * hd.mean_height));
}

TEST_CASE("single-vertex conventions") {
  auto m = tree_measures({0});
  CHECK(m.density == 0);
  CHECK(m.betweenness == 0);
  CHECK(m.pagerank == std::vector<double>{1.0});
  CHECK(m.periphery_directed == 1);
  CHECK(m.periphery_undirected == 1);
  CHECK_THROWS(tree_measures({}));
  CHECK_THROWS(tree_measures({0, 1}));
}

TEST_CASE("tree measures on small trees") {
  // Path root - a - b.
  auto path = tree_measures({0, 0, 1});
  CHECK(path.density == doctest::Approx(2.0 / 6.0));
  CHECK(path.betweenness == doctest::Approx(2.0 / 3.0));
  CHECK(path.periphery_directed == 1);
  CHECK(path.periphery_undirected == 2);
  // PageRank on the path: the middle vertex dominates, ends are symmetric.
  CHECK(path.pagerank[1] > path.pagerank[0]);
  CHECK(path.pagerank[0] == doctest::Approx(path.pagerank[2]));

  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    auto parent = random_tree(rng, 2 + static_cast<std::size_t>(trial % 12));
    auto m = tree_measures(parent);
    CHECK(m.betweenness == doctest::Approx(brute_betweenness(parent)));
    double sum = 0;
    for (auto x : m.pagerank) sum += x;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(m.mean_pagerank == doctest::Approx(1.0 / static_cast<double>(parent.size())));
    CHECK(m.periphery_undirected >= 2);
  }
}

TEST_CASE("forest averages") {
  auto ms = build_negative_sector(Parameters::white(2, 2, R(3, 2)));
  auto g = graph_measures(ms);
  // Decorated trees have 2, 3 and 5 vertices.
  CHECK(g.M_r == doctest::Approx((1.0 / 2 + 1.0 / 3 + 1.0 / 5) / 3));
  CHECK(g.M_d == doctest::Approx((1.0 / 2 + 2.0 / 6 + 4.0 / 20) / 3));
  CHECK(g.M_p == doctest::Approx(1.0));
  GraphOptions bare;
  bare.bare = true;
  auto gb = graph_measures(ms, bare);
  CHECK(gb.M_r == doctest::Approx((1.0 + 1.0 / 2 + 1.0 / 3) / 3));

  CHECK(parent_array(power(I(Symbol::xi()), 2), false).size() == 5);
  CHECK(parent_array(power(I(Symbol::xi()), 2), true).size() == 3);
}

TEST_CASE("scaling fit recovers synthetic laws") {
  const int N = 2, d = 2;
  const double A = 2.5, B = 0.3, beta = 0.8;
  std::vector<ScanPoint> pts;
  for (auto rho : {R(1), R(9, 10), R(17, 20), R(4, 5), R(3, 4)}) {
    double gap = to_double(rho - rho_c(N, d));
    ScanPoint p;
    p.rho = rho;
    p.h_F = static_cast<std::size_t>(std::llround(A / gap * 1000));
    p.c_F = static_cast<std::size_t>(std::llround(std::exp(B + 1.5 * std::log(gap) + beta * d / gap) * 1e6));
    p.certified = true;
    pts.push_back(p);
  }
  auto f = scaling_fit(pts, N, d);
  CHECK(f.A == doctest::Approx(A * 1000).epsilon(1e-3));
  CHECK(f.beta == doctest::Approx(beta).epsilon(1e-4));
  CHECK(f.B == doctest::Approx(B + std::log(1e6)).epsilon(1e-4));
  CHECK(f.beta_reference == doctest::Approx(0.8085063));
  CHECK(f.h_residuals.size() == 5);
  CHECK(f.A_lower == doctest::Approx((0.875 + 2) / 3));
  CHECK(f.A_upper == doctest::Approx((0.875 + 2) * 4 / 3));

  CHECK_THROWS(scaling_fit({pts.begin(), pts.begin() + 3}, N, d));
  std::vector<ScanPoint> same(4, pts[0]);
  CHECK_THROWS(scaling_fit(same, N, d));
  auto bad = pts;
  bad[0].rho = R(1, 2);
  CHECK_THROWS(scaling_fit(bad, N, d));
}

TEST_CASE("report") {
  auto ms = build_negative_sector(Parameters::white(2, 2, R(9, 10)));
  auto rep = make_report(ms);
  CHECK(rep.certified);
  CHECK(rep.elements.size() == c_F(ms).value);
  auto j = to_json(rep);
  CHECK(j["elements"].size() == rep.elements.size());
  CHECK(j["params"]["rho"] == "9/10");
  CHECK(j["size_distribution"]["total"] == rep.sizes.total);
  CHECK(j.contains("graph_measures"));
  CHECK(to_json(make_report(ms)).dump() == j.dump());
  std::ostringstream os;
  write_size_csv(os, rep.sizes);
  CHECK(os.str().rfind("bin,count,normalized\n0,1,", 0) == 0);
}
