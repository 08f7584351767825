#include "doctest.h"

#include <cmath>
#include <sstream>

#include "fracreg/analytic.hpp"
#include "fracreg/model_space.hpp"

using namespace fracreg;

namespace {

Rational R(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

}  // namespace

TEST_CASE("cone membership") {
  CHECK(d0_contains(0, 0, 2));
  CHECK(d0_contains(1, 0, 2));
  CHECK_FALSE(d0_contains(2, 1, 2));
  CHECK(d0_contains(5, 8, 2));
  CHECK(d0_contains(7, 9, 3));
  CHECK_FALSE(d0_contains(0, 3, 2));
  CHECK_FALSE(d0_contains(2, 0, 3));
  CHECK_FALSE(d0_contains(1, -1, 2));
  // Boundary p = 1 + (N-1)q/N is inside.
  for (int N = 2; N <= 5; ++N)
    for (std::int64_t q = 0; q <= 40; q += N) {
      CHECK(d0_contains(1 + (N - 1) * q / N, q, N));
      CHECK_FALSE(d0_contains(2 + (N - 1) * q / N, q, N));
    }
}

TEST_CASE("p is determined by q") {
  CHECK(p_of_q(9, 3) == 7);
  CHECK(p_of_q(8, 2) == 5);
  for (int N = 2; N <= 6; ++N) CHECK(p_of_q(N, N) == N);
  CHECK_THROWS(p_of_q(0, 2));
  for (int N = 2; N <= 4; ++N)
    for (std::int64_t q = 1; q <= 30; ++q) {
      CHECK(d0_contains(p_of_q(q, N), q, N));
      CHECK_FALSE(d0_contains(p_of_q(q, N) + 1, q, N));
    }
}

TEST_CASE("lattice cutoffs") {
  auto b = lattice_bounds(2, 2, R(3, 2));
  CHECK(b.q_star == R(14, 5));
  CHECK(b.rho_gap == R(5, 6));
  CHECK(b.p_star == R(2 * 3 * 2, 2) / (b.rho_gap * 3));

  auto c = lattice_bounds(3, 3, R(21, 11));
  CHECK(c.q_star == R(9));
  // The (7,9,0) element lies on the zero line, so 7 alpha0 + 9 rho = 0 at kappa = 0.
  auto p = Parameters::white(3, 3, R(21, 11));
  CHECK(p.alpha0.a * static_cast<std::int64_t>(7) + p.rho * static_cast<std::int64_t>(9) == R(0));

  CHECK_THROWS(lattice_bounds(3, 3, R(3, 2)));
  CHECK_THROWS(lattice_bounds(2, 2, R(1, 2)));

  // q* grows without bound as rho approaches rho_c from above.
  Rational prev(0);
  for (std::int64_t n : {1, 2, 5, 10, 100, 1000}) {
    auto q = lattice_bounds(2, 2, rho_c(2, 2) + R(1, n)).q_star;
    CHECK(q > prev);
    prev = q;
  }
  CHECK(prev > R(1000));

  // (p*, q*) is on the zero-homogeneity line and on the cone boundary.
  for (auto [N, d, rho] : std::vector<std::tuple<int, int, Rational>>{
           {2, 2, R(9, 10)}, {3, 3, R(17, 10)}, {2, 3, R(5, 4)}, {4, 2, R(7, 5)}}) {
    auto lb = lattice_bounds(N, d, rho);
    auto a0 = alpha0_white_noise(rho, d).a;
    CHECK(a0 * lb.p_star + rho * lb.q_star == R(0));
    CHECK(lb.p_star == R(1) + lb.q_star * static_cast<std::int64_t>(N - 1) / static_cast<std::int64_t>(N));
  }
}

TEST_CASE("closed-form bounds") {
  auto h0 = h0_bounds(2, 2, R(9, 10));
  CHECK(h0.lower == R(29, 7));
  CHECK(h0.upper == R(1) + R(29, 7) * static_cast<std::int64_t>(2));
  CHECK(h0.contains(R(7)));
  auto hf = hF_bounds(2, 2, R(9, 10));
  CHECK(hf.lower == h0.lower);
  CHECK(hf.upper == R(1) + R(29, 7) * static_cast<std::int64_t>(4));
  CHECK_THROWS(h0_bounds(2, 2, R(2, 3)));
  CHECK_THROWS(hF_bounds(3, 3, R(1)));

  auto shape = cF_bounds(2, 2, R(4, 5));
  CHECK(shape.exponent == doctest::Approx(0.8085063 * 2 / (0.8 - 2.0 / 3.0)).epsilon(1e-6));
  CHECK(shape.log_shape == doctest::Approx(1.5 * std::log(0.8 - 2.0 / 3.0) + shape.exponent));
}

TEST_CASE("growth exponents") {
  CHECK(beta_N(2) == doctest::Approx(0.8085063).epsilon(1e-6));
  CHECK(std::abs(beta_N(3) - 1.164517) < 1e-5);
  CHECK(std::abs(beta_N(2) - 0.8085063) < 1e-6);
  CHECK(alpha_N(2).value() == doctest::Approx(0.4026975));
  CHECK(alpha_N(3).value() == doctest::Approx(0.3551817));
  CHECK_FALSE(alpha_N(4).has_value());
  CHECK_THROWS(beta_N(4));
  CHECK(beta_N(4, kAlphaLimit) == doctest::Approx(32.0 / 25.0 * std::log(1 / kAlphaLimit)));
}

TEST_CASE("Diophantine system layout") {
  auto sys = DioSystem::make(3, 3, R(21, 11));
  CHECK(sys.b == std::array<std::int64_t, 3>{12, -24, 0});
  CHECK(sys.A[0] == std::array<std::int64_t, 6>{21, 22, -33, 1, 0, 0});
  CHECK(sys.A[1] == std::array<std::int64_t, 6>{21, 22, -33, 0, -1, 0});
  CHECK(sys.A[2] == std::array<std::int64_t, 6>{-1, 0, 1, 0, 0, 1});

  auto raw = DioSystem::make(2, 2, 9, 10);
  CHECK(raw.b == std::array<std::int64_t, 3>{11, -11, 0});

  // Every reported solution satisfies A c = b and lies in the realizable region.
  for (auto [N, d, rho] : std::vector<std::tuple<int, int, Rational>>{
           {2, 2, R(3, 2)}, {2, 2, R(9, 10)}, {3, 3, R(17, 10)}, {2, 3, R(13, 10)}}) {
    auto s = DioSystem::make(N, d, rho);
    for (auto boundary : {DioBoundary::NonPositive, DioBoundary::Negative}) {
      auto sols = dio_solutions(s, boundary);
      CHECK(sols.size() == dio_count(N, d, rho, boundary));
      for (const auto& c : sols) {
        CHECK(s.satisfied(c));
        for (auto v : c) CHECK(v >= 0);
        CHECK(c[0] >= c[2]);
        CHECK((c[0] - c[2]) % 2 == 0);
      }
    }
    CHECK(dio_count(N, d, rho, DioBoundary::Negative) <= dio_count(N, d, rho, DioBoundary::NonPositive));
  }
  CHECK_THROWS(DioSystem::make(2, 2, R(1, 2)));
}

TEST_CASE("Diophantine count ignores the representation of rho") {
  for (auto [N, d, num, den] : std::vector<std::tuple<int, int, std::int64_t, std::int64_t>>{
           {2, 2, 3, 2}, {2, 2, 9, 10}, {3, 3, 17, 10}, {2, 3, 6, 5}, {3, 2, 7, 5}}) {
    auto base = dio_solutions(DioSystem::make(N, d, num, den));
    for (std::int64_t c : {2, 3, 7}) {
      auto scaled = dio_solutions(DioSystem::make(N, d, num * c, den * c));
      CHECK(scaled.size() == base.size());
    }
  }
}

TEST_CASE("enumerated negative elements sit on the predicted lattice points") {
  for (auto [N, d, rho] : std::vector<std::tuple<int, int, Rational>>{
           {2, 2, R(9, 10)}, {2, 2, R(4, 5)}, {3, 3, R(17, 10)}, {3, 3, R(21, 11)}, {2, 3, R(13, 10)}}) {
    auto ms = build_negative_sector(Parameters::white(N, d, rho));
    REQUIRE(ms.negative_sector_complete());
    for (const auto& r : negative_sector(ms)) {
      const auto& t = r.symbol.type();
      if (!t.k.is_zero()) continue;
      CHECK(d0_contains(t.p, t.q, N));
      if (t.q >= 1) CHECK(t.p == p_of_q(t.q, N));
    }
  }
}

TEST_CASE("enumerated counts respect the closed-form sandwiches") {
  for (auto [N, d, rho] : std::vector<std::tuple<int, int, Rational>>{
           {2, 2, R(3, 2)}, {2, 2, R(1)}, {2, 2, R(9, 10)}, {2, 2, R(4, 5)}, {2, 3, R(3, 2)}, {2, 3, R(13, 10)},
           {3, 2, R(6, 5)}, {3, 2, R(3, 2)}, {3, 3, R(17, 10)}, {3, 3, R(21, 11)}, {3, 3, R(2)}}) {
    CAPTURE(N);
    CAPTURE(d);
    CAPTURE(to_string(rho));
    auto ms = build_negative_sector(Parameters::white(N, d, rho));
    REQUIRE(ms.negative_sector_complete());
    auto h0 = static_cast<std::int64_t>(h0_F(ms).value);
    auto hf = static_cast<std::int64_t>(h_F(ms).value);
    CHECK(h0_bounds(N, d, rho).contains(R(h0)));
    CHECK(hF_bounds(N, d, rho).contains(R(hf)));
    CHECK(h0 <= hf);
    CHECK(hf <= static_cast<std::int64_t>(c_F(ms).value));
  }
}

TEST_CASE("bounds table CSV") {
  std::ostringstream os;
  BoundsRow row;
  row.N = 2;
  row.d = 2;
  row.rho = R(9, 10);
  row.h0 = h0_bounds(2, 2, R(9, 10));
  row.h0_value = 7;
  row.hF = hF_bounds(2, 2, R(9, 10));
  row.hF_value = 7;
  row.cF_value = 11;
  row.dio = 6;
  write_bounds_csv(os, {row});
  std::istringstream in(os.str());
  std::string header, line;
  std::getline(in, header);
  std::getline(in, line);
  CHECK(header == "N,d,rho,h0_lower,h0,h0_upper,hF_lower,hF,hF_upper,cF,dio_count");
  CHECK(line == std::string("2,2,9/10,4.142857,7,9.285714,4.142857,7,17.571429,11,6"));
}
