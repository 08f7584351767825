#include "fracreg/analytic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fracreg {

namespace {

Rational require_gap(int N, int d, const Rational& rho) {
  if (N < 1 || d < 1) throw std::invalid_argument("N and d must be >= 1");
  Rational gap = rho - rho_c(N, d);
  if (gap <= Rational(0))
    throw std::invalid_argument("rho = " + to_string(rho) + " is not above rho_c = " + to_string(rho_c(N, d)));
  return gap;
}

}  // namespace

bool d0_contains(std::int64_t p, std::int64_t q, int N) {
  if (p == 0 && q == 0) return true;
  if (p < 1 || q < 0) return false;
  // p <= 1 + (N-1)q/N  <=>  N p <= N + (N-1) q
  return N * p <= N + static_cast<std::int64_t>(N - 1) * q;
}

std::int64_t p_of_q(std::int64_t q, int N) {
  if (q < 1) throw std::invalid_argument("p_of_q needs q >= 1");
  return 1 + (static_cast<std::int64_t>(N - 1) * q) / N;
}

LatticeBounds lattice_bounds(int N, int d, const Rational& rho) {
  Rational gap = require_gap(N, d, rho);
  Rational scale = gap * static_cast<std::int64_t>(N + 1);
  return {rho * static_cast<std::int64_t>(2 * N) / scale, (rho + d) * static_cast<std::int64_t>(N) / scale, gap};
}

Interval h0_bounds(int N, int d, const Rational& rho) {
  Rational gap = require_gap(N, d, rho);
  Rational base = (rho + d) / static_cast<std::int64_t>(N + 1) / gap;
  return {base, Rational(1) + base * static_cast<std::int64_t>(N)};
}

Interval hF_bounds(int N, int d, const Rational& rho) {
  Rational gap = require_gap(N, d, rho);
  Rational base = (rho + d) / static_cast<std::int64_t>(N + 1) / gap;
  return {base, Rational(1) + base * static_cast<std::int64_t>(d * N)};
}

CFShape cF_bounds(int N, int d, const Rational& rho) {
  double gap = to_double(require_gap(N, d, rho));
  CFShape s;
  s.exponent = beta_N(N) * d / gap;
  s.log_shape = 1.5 * std::log(gap) + s.exponent;
  return s;
}

std::optional<double> alpha_N(int N) {
  if (N == 2) return 0.4026975;
  if (N == 3) return 0.3551817;
  return std::nullopt;
}

double beta_N(int N, double alpha) {
  if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("alpha_N must lie in (0, 1)");
  double n = N;
  return 2 * n * n / ((n + 1) * (n + 1)) * std::log(1 / alpha);
}

double beta_N(int N) {
  auto a = alpha_N(N);
  if (!a)
    throw std::invalid_argument("alpha_N is tabulated only for N = 2, 3; pass it explicitly for N = " +
                                std::to_string(N));
  return beta_N(N, *a);
}

DioSystem DioSystem::make(int N, int d, std::int64_t num, std::int64_t den) {
  if (num <= 0 || den <= 0) throw std::invalid_argument("rho must be a positive fraction");
  require_gap(N, d, Rational(num, den));
  DioSystem s;
  s.N = N;
  s.d = d;
  s.num = num;
  s.den = den;
  const std::int64_t dq = static_cast<std::int64_t>(d) * den;
  s.A = {{{num, 2 * den, -dq, 1, 0, 0}, {num, 2 * den, -dq, 0, -1, 0}, {-1, 0, 1, 0, 0, 1}}};
  s.b = {dq - num, -static_cast<std::int64_t>(N - 1) * (dq - num), 0};
  return s;
}

DioSystem DioSystem::make(int N, int d, const Rational& rho) {
  return make(N, d, rho.numerator(), rho.denominator());
}

bool DioSystem::satisfied(const std::array<std::int64_t, 6>& c) const {
  for (auto v : c)
    if (v < 0) return false;
  for (std::size_t i = 0; i < 3; ++i) {
    std::int64_t lhs = 0;
    for (std::size_t j = 0; j < 6; ++j) lhs += A[i][j] * c[j];
    if (lhs != b[i]) return false;
  }
  return true;
}

std::vector<std::array<std::int64_t, 6>> dio_solutions(const DioSystem& sys, DioBoundary boundary) {
  const Rational rho(sys.num, sys.den);
  const auto lb = lattice_bounds(sys.N, sys.d, rho);
  const std::int64_t N = sys.N;
  const std::int64_t p = sys.num;
  const std::int64_t q2 = 2 * sys.den;
  const std::int64_t dq = static_cast<std::int64_t>(sys.d) * sys.den;
  const std::int64_t top = dq - p - (boundary == DioBoundary::Negative ? 1 : 0);
  const std::int64_t bottom = -(N - 1) * (dq - p);

  std::vector<std::array<std::int64_t, 6>> out;
  const std::int64_t c3_max = floor(lb.p_star) - 1;
  for (std::int64_t c3 = 0; c3 <= c3_max; ++c3) {
    for (std::int64_t c1 = c3; p * c1 - dq * c3 <= top; c1 += 2) {
      if ((N + 1) * (c3 + 1) > 2 * N + (N - 1) * (c1 + 1)) continue;
      for (std::int64_t c2 = 0;; ++c2) {
        std::int64_t s = p * c1 + q2 * c2 - dq * c3;
        if (s > top) break;
        if (s < bottom) continue;
        std::array<std::int64_t, 6> c{c1, c2, c3, sys.b[0] - s, s - sys.b[1], c1 - c3};
        if (!sys.satisfied(c)) throw std::logic_error("Diophantine solver produced a non-solution");
        out.push_back(c);
      }
    }
  }
  return out;
}

std::size_t dio_count(const DioSystem& sys, DioBoundary boundary) { return dio_solutions(sys, boundary).size(); }

std::size_t dio_count(int N, int d, const Rational& rho, DioBoundary boundary) {
  return dio_count(DioSystem::make(N, d, rho), boundary);
}

void write_bounds_csv(std::ostream& os, const std::vector<BoundsRow>& rows) {
  os << "N,d,rho,h0_lower,h0,h0_upper,hF_lower,hF,hF_upper,cF,dio_count\n";
  auto dec = [](const Rational& r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", to_double(r));
    return std::string(buf);
  };
  for (const auto& r : rows) {
    os << r.N << ',' << r.d << ',' << to_string(r.rho) << ',' << dec(r.h0.lower) << ',' << r.h0_value << ','
       << dec(r.h0.upper) << ',' << dec(r.hF.lower) << ',' << r.hF_value << ',' << dec(r.hF.upper) << ','
       << r.cF_value << ',' << r.dio << '\n';
  }
}

}  // namespace fracreg
