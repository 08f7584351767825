#include "doctest.h"

#include <random>

#include "fracreg/params.hpp"

using namespace fracreg;

namespace {
Rational R(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }
}  // namespace

TEST_CASE("parse_rational keeps decimals exact") {
  CHECK(parse_rational("0.9") == R(9, 10));
  CHECK(parse_rational("17/10") == R(17, 10));
  CHECK(parse_rational(" 1.75 ") == R(7, 4));
  CHECK(parse_rational("-0.05") == R(-1, 20));
  CHECK(parse_rational("2") == R(2));
  CHECK(parse_rational("6/4") == R(3, 2));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
  CHECK_THROWS(parse_rational("1.2.3"));
  CHECK_THROWS(parse_rational(""));
}

TEST_CASE("rationals print in lowest terms") {
  CHECK(to_string(R(6, 4)) == "3/2");
  CHECK(to_string(R(-7, 4)) == "-7/4");
  CHECK(to_string(R(0)) == "0");
  CHECK(floor(R(-7, 4)) == -2);
  CHECK(floor(R(14, 5)) == 2);
  CHECK(floor(R(9)) == 9);
}

TEST_CASE("rho_c") {
  CHECK(rho_c(3, 3) == R(3, 2));
  CHECK(rho_c(2, 2) == R(2, 3));
  for (int d = 1; d < 8; ++d) CHECK(rho_c(1, d) == R(0));
}

TEST_CASE("white noise regularity") {
  auto a = alpha0_white_noise(R(3, 2), 2);
  CHECK(a.a == R(-7, 4));
  CHECK(a.b == -1);
  CHECK(alpha0_white_noise(R(2), 3).a == R(-5, 2));
  CHECK(alpha0_white_noise(R(9, 10), 2).a == R(-29, 20));
}

TEST_CASE("scaled degree") {
  CHECK(scaled_degree(MultiIndex({0, 0, 0}), R(3, 2), 2) == R(0));
  CHECK(scaled_degree(MultiIndex({1, 0, 0}), R(3, 2), 2) == R(3, 2));
  CHECK(scaled_degree(MultiIndex({0, 1, 1}), R(3, 2), 2) == R(2));
  CHECK_THROWS(scaled_degree(MultiIndex({0, 1}), R(3, 2), 2));
}

TEST_CASE("homogeneity order treats kappa as a positive infinitesimal") {
  Homogeneity zero_minus{R(0), -7};
  CHECK(zero_minus.is_negative());
  CHECK_FALSE(Homogeneity{R(0), 0}.is_negative());
  CHECK_FALSE(Homogeneity{R(1, 100), -50}.is_negative());
  CHECK(Homogeneity{R(-1, 100), 50}.is_negative());
  CHECK(Homogeneity{R(-1), 3} < Homogeneity{R(0), -9});
  CHECK(Homogeneity{R(0), -9} < Homogeneity{R(0), -1});
  CHECK(to_string(Homogeneity{R(-7, 4), -1}) == "-7/4 - k");
  CHECK(to_string(Homogeneity{R(0), -7}) == "0 - 7k");
}

TEST_CASE("homogeneity order is total and addition is monotone") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> num(-6, 6), den(1, 4), kap(-3, 3);
  for (int i = 0; i < 500; ++i) {
    Homogeneity x{R(num(rng), den(rng)), kap(rng)};
    Homogeneity y{R(num(rng), den(rng)), kap(rng)};
    Homogeneity z{R(num(rng), den(rng)), kap(rng)};
    int relations = (x < y) + (y < x) + (x == y);
    CHECK(relations == 1);
    if (x < y) CHECK(x + z < y + z);
    if (x < y && y < z) CHECK(x < z);
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS(Parameters::white(0, 2, R(1)));
  CHECK_THROWS(Parameters::white(2, 0, R(1)));
  CHECK_THROWS(Parameters::white(2, 2, R(0)));
  CHECK_THROWS(Parameters::white(2, 2, R(21, 10)));
  CHECK_THROWS(Parameters::with_noise(2, 2, R(1), Homogeneity{R(1, 2), 0}));
  CHECK_NOTHROW(Parameters::white(2, 2, R(2)));
}

TEST_CASE("local subcriticality") {
  CHECK_FALSE(is_locally_subcritical(Parameters::white(3, 3, R(3, 2))).subcritical);
  auto v = is_locally_subcritical(Parameters::white(2, 2, R(9, 10)));
  CHECK(v.subcritical);
  // Custom noise -(1 + 1/N) rho is always admissible.
  for (int N = 1; N <= 5; ++N)
    for (int d = 2; d <= 4; ++d)
      for (auto rho : {R(1, 5), R(1), R(19, 10), R(2)}) {
        Homogeneity a0{-(R(1) + R(1, N)) * rho, -1};
        CHECK(is_locally_subcritical(Parameters::with_noise(N, d, rho, a0)).subcritical);
      }
}

TEST_CASE("white noise subcriticality agrees with rho > rho_c on a grid") {
  for (int N = 1; N <= 6; ++N)
    for (int d = 1; d <= 6; ++d)
      for (int k = 1; k <= 40; ++k) {
        Rational rho = R(k, 20);
        bool expected = rho > rho_c(N, d);
        CHECK(is_locally_subcritical(Parameters::white(N, d, rho)).subcritical == expected);
      }
}

TEST_CASE("largest admissible N per dimension") {
  CHECK(max_subcritical_degree(1, 50) == 50);
  CHECK(max_subcritical_degree(2, 50) == 50);
  CHECK(max_subcritical_degree(3, 50) == 4);
  CHECK(max_subcritical_degree(4, 50) == 2);
  CHECK(max_subcritical_degree(5, 50) == 2);
  for (int d = 6; d <= 10; ++d) CHECK(max_subcritical_degree(d, 50) == 1);
}

TEST_CASE("multiindex ignores trailing zeros") {
  CHECK(MultiIndex({1, 0, 0}) == MultiIndex({1}));
  CHECK((MultiIndex({1, 2}) + MultiIndex({0, 0, 3})) == MultiIndex({1, 2, 3}));
  CHECK(MultiIndex({0, 0}).is_zero());
  CHECK(MultiIndex({2}).padded(3).components() == std::vector<std::uint32_t>{2, 0, 0});
  CHECK_THROWS(MultiIndex({0, 0, 1}).padded(2));
}
