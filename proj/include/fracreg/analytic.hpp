#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "fracreg/params.hpp"

namespace fracreg {

// (p, q) lies in the cone of types reachable by the recursion:
// (0,0), or p >= 1, q >= 0 and p <= 1 + (N-1)q/N.
bool d0_contains(std::int64_t p, std::int64_t q, int N);

// The only p that can give a negative k = 0 element with q integrations.
std::int64_t p_of_q(std::int64_t q, int N);

// Where the zero-homogeneity line leaves the cone, at kappa = 0.
struct LatticeBounds {
  Rational p_star;
  Rational q_star;
  Rational rho_gap;  // rho - rho_c
};

LatticeBounds lattice_bounds(int N, int d, const Rational& rho);

struct Interval {
  Rational lower;
  Rational upper;
  bool contains(const Rational& x) const { return lower <= x && x <= upper; }
};

// Both bounds share the lower end (rho+d)/((N+1) gap).
Interval h0_bounds(int N, int d, const Rational& rho);
Interval hF_bounds(int N, int d, const Rational& rho);

// Growth shape gap^{3/2} exp(beta_N d / gap); the prefactors are unknown.
struct CFShape {
  double exponent = 0;   // beta_N d / gap
  double log_shape = 0;  // 1.5 log(gap) + exponent
};

CFShape cF_bounds(int N, int d, const Rational& rho);

// Radius of convergence of the N-ary tree generating series, for N = 2, 3.
std::optional<double> alpha_N(int N);
// alpha_N as N -> infinity; informational only.
inline constexpr double kAlphaLimit = 0.3383219;

double beta_N(int N);
double beta_N(int N, double alpha);

// A c = b with c in N_0^6, built from rho = num/den.
struct DioSystem {
  int N = 2;
  int d = 2;
  std::int64_t num = 1;
  std::int64_t den = 1;
  std::array<std::array<std::int64_t, 6>, 3> A{};
  std::array<std::int64_t, 3> b{};

  static DioSystem make(int N, int d, std::int64_t num, std::int64_t den);
  static DioSystem make(int N, int d, const Rational& rho);
  bool satisfied(const std::array<std::int64_t, 6>& c) const;
};

// NonPositive keeps the zero end of the slab (first slack may be 0); Negative
// requires it to be at least 1.
enum class DioBoundary { NonPositive, Negative };

// Solutions restricted to realizable (c1, c3): the shifted pair (c1+1, c3+1)
// satisfies (N+1)(c3+1) <= 2N + (N-1)(c1+1) and c1 = c3 (mod 2). The
// unrestricted system has infinitely many solutions when rho < d.
std::vector<std::array<std::int64_t, 6>> dio_solutions(const DioSystem& sys,
                                                       DioBoundary boundary = DioBoundary::NonPositive);
std::size_t dio_count(const DioSystem& sys, DioBoundary boundary = DioBoundary::NonPositive);
std::size_t dio_count(int N, int d, const Rational& rho, DioBoundary boundary = DioBoundary::NonPositive);

struct BoundsRow {
  int N = 0;
  int d = 0;
  Rational rho;
  Interval h0;
  std::size_t h0_value = 0;
  Interval hF;
  std::size_t hF_value = 0;
  std::size_t cF_value = 0;
  std::size_t dio = 0;
};

void write_bounds_csv(std::ostream& os, const std::vector<BoundsRow>& rows);

}  // namespace fracreg
