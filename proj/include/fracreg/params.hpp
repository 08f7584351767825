#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace fracreg {

using Rational = boost::rational<std::int64_t>;

// Parses "3/2", "-7", "0.9" (exact: 9/10) or "1.25e0"-free decimals.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);
double to_double(const Rational& r);
std::int64_t floor(const Rational& r);

// Value a + b*kappa where kappa is a positive infinitesimal.
struct Homogeneity {
  Rational a{0};
  std::int64_t b = 0;

  bool is_negative() const { return a < Rational(0) || (a == Rational(0) && b < 0); }

  Homogeneity& operator+=(const Homogeneity& o) {
    a += o.a;
    b += o.b;
    return *this;
  }
  friend Homogeneity operator+(Homogeneity l, const Homogeneity& r) { return l += r; }
  friend Homogeneity operator*(std::int64_t n, const Homogeneity& h) { return {h.a * n, h.b * n}; }
  friend bool operator==(const Homogeneity&, const Homogeneity&) = default;
  friend std::strong_ordering operator<=>(const Homogeneity& l, const Homogeneity& r) {
    if (l.a < r.a) return std::strong_ordering::less;
    if (r.a < l.a) return std::strong_ordering::greater;
    return l.b <=> r.b;
  }
};

// Renders "a + b*k", e.g. "-7/4 - k", "0 - 7k", "3/2".
std::string to_string(const Homogeneity& h);

// Multiindex (k_0, k_1, ..., k_d); index 0 is time.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<std::uint32_t> k) : k_(std::move(k)) {}

  std::size_t size() const { return k_.size(); }
  std::uint32_t operator[](std::size_t i) const { return i < k_.size() ? k_[i] : 0; }
  const std::vector<std::uint32_t>& components() const { return k_; }
  bool is_zero() const;

  // Componentwise sum; the shorter operand is padded with zeros.
  MultiIndex operator+(const MultiIndex& o) const;
  // Drops trailing zeros (the zero multiindex becomes empty).
  MultiIndex trimmed() const;
  // Pads with zeros to length n; throws if a nonzero component would be cut.
  MultiIndex padded(std::size_t n) const;

  // Comparison ignores trailing zeros.
  friend bool operator==(const MultiIndex& l, const MultiIndex& r);
  friend std::strong_ordering operator<=>(const MultiIndex& l, const MultiIndex& r);

 private:
  std::vector<std::uint32_t> k_;
};

enum class NoiseKind { White, Custom };

struct Parameters {
  int N = 1;
  int d = 1;
  Rational rho{1};
  Homogeneity alpha0;
  NoiseKind noise = NoiseKind::White;

  // White-noise parameters; validates the invariants.
  static Parameters white(int N, int d, Rational rho);
  static Parameters with_noise(int N, int d, Rational rho, Homogeneity alpha0);
};

// d(N-1)/(N+1)
Rational rho_c(int N, int d);
// -(rho+d)/2 - kappa
Homogeneity alpha0_white_noise(const Rational& rho, int d);
// rho*k_0 + k_1 + ... + k_d; k must have exactly d+1 components.
Rational scaled_degree(const MultiIndex& k, const Rational& rho, int d);
// Same, without a dimension check (trailing components beyond the data are zero).
Rational scaled_degree(const MultiIndex& k, const Rational& rho);

enum class SubcriticalCase { None, RegularNoise, Nonlinearity, Linear };
std::string_view to_string(SubcriticalCase c);

struct SubcriticalityVerdict {
  bool subcritical = false;
  SubcriticalCase which = SubcriticalCase::None;
};

// Local subcriticality of the fractional Allen-Cahn equation:
// (i) alpha0 + rho > 0, (ii) rho > -alpha0 (N-1)/N, (iii) N == 0.
SubcriticalityVerdict is_locally_subcritical(const Parameters& params);

// Largest N <= n_max with rho_c(N, d) < 2; returns n_max if none fails.
int max_subcritical_degree(int d, int n_max);

}  // namespace fracreg
