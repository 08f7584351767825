#include "fracreg/params.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace fracreg {

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw std::invalid_argument("malformed rational: empty");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = parse_int(s.substr(0, slash), text);
    auto den = parse_int(s.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    return Rational(num, den);
  }

  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  auto dot = s.find('.');
  std::string_view whole = s.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
  if (whole.empty() && frac.empty()) throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  if (frac.size() > 15) throw std::invalid_argument("too many decimal digits: '" + std::string(text) + "'");

  std::int64_t scale = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
  std::int64_t w = whole.empty() ? 0 : parse_int(whole, text);
  std::int64_t f = frac.empty() ? 0 : parse_int(frac, text);
  if (w < 0 || f < 0) throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  Rational r(w * scale + f, scale);
  return negative ? -r : r;
}

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << '/' << r.denominator();
  return os.str();
}

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::int64_t floor(const Rational& r) {
  auto n = r.numerator();
  auto d = r.denominator();
  auto q = n / d;
  if (n % d != 0 && n < 0) --q;
  return q;
}

std::string to_string(const Homogeneity& h) {
  std::string out = to_string(h.a);
  if (h.b == 0) return out;
  out += h.b < 0 ? " - " : " + ";
  auto mag = h.b < 0 ? -h.b : h.b;
  if (mag != 1) out += std::to_string(mag);
  out += "k";
  return out;
}

bool MultiIndex::is_zero() const {
  return std::all_of(k_.begin(), k_.end(), [](auto v) { return v == 0; });
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
  std::vector<std::uint32_t> out(std::max(k_.size(), o.k_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (*this)[i] + o[i];
  return MultiIndex(std::move(out));
}

MultiIndex MultiIndex::trimmed() const {
  auto out = k_;
  while (!out.empty() && out.back() == 0) out.pop_back();
  return MultiIndex(std::move(out));
}

MultiIndex MultiIndex::padded(std::size_t n) const {
  auto t = trimmed().k_;
  if (t.size() > n) throw std::invalid_argument("multiindex has more than " + std::to_string(n) + " components");
  t.resize(n, 0);
  return MultiIndex(std::move(t));
}

bool operator==(const MultiIndex& l, const MultiIndex& r) {
  return (l <=> r) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const MultiIndex& l, const MultiIndex& r) {
  auto n = std::max(l.size(), r.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = l[i] <=> r[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

Parameters Parameters::white(int N, int d, Rational rho) {
  return with_noise(N, d, rho, alpha0_white_noise(rho, d));
}

Parameters Parameters::with_noise(int N, int d, Rational rho, Homogeneity alpha0) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  if (rho <= Rational(0) || rho > Rational(2)) throw std::invalid_argument("rho must lie in (0, 2], got " + to_string(rho));
  if (alpha0.a >= Rational(0)) throw std::invalid_argument("noise regularity must be negative, got " + to_string(alpha0));
  Parameters p;
  p.N = N;
  p.d = d;
  p.rho = rho;
  p.alpha0 = alpha0;
  p.noise = alpha0 == alpha0_white_noise(rho, d) ? NoiseKind::White : NoiseKind::Custom;
  return p;
}

Rational rho_c(int N, int d) {
  if (N < 1 || d < 1) throw std::invalid_argument("rho_c needs N >= 1, d >= 1");
  return Rational(static_cast<std::int64_t>(d) * (N - 1), N + 1);
}

Homogeneity alpha0_white_noise(const Rational& rho, int d) {
  return {-(rho + static_cast<std::int64_t>(d)) / 2, -1};
}

Rational scaled_degree(const MultiIndex& k, const Rational& rho, int d) {
  if (k.size() != static_cast<std::size_t>(d) + 1)
    throw std::invalid_argument("multiindex length " + std::to_string(k.size()) + " does not match d+1 = " +
                                std::to_string(d + 1));
  return scaled_degree(k, rho);
}

Rational scaled_degree(const MultiIndex& k, const Rational& rho) {
  Rational out = rho * static_cast<std::int64_t>(k[0]);
  for (std::size_t i = 1; i < k.size(); ++i) out += static_cast<std::int64_t>(k[i]);
  return out;
}

std::string_view to_string(SubcriticalCase c) {
  switch (c) {
    case SubcriticalCase::RegularNoise: return "(i) alpha0 + rho > 0";
    case SubcriticalCase::Nonlinearity: return "(ii) rho > -alpha0 (N-1)/N";
    case SubcriticalCase::Linear: return "(iii) N = 0";
    case SubcriticalCase::None: break;
  }
  return "none";
}

SubcriticalityVerdict is_locally_subcritical(const Parameters& params) {
  if (params.N == 0) return {true, SubcriticalCase::Linear};
  Homogeneity shifted = params.alpha0 + Homogeneity{params.rho, 0};
  if (Homogeneity{} < shifted) return {true, SubcriticalCase::RegularNoise};
  // N rho > -(N-1) alpha0, scaled by N so the kappa coefficient stays integral.
  Homogeneity lhs{params.rho * static_cast<std::int64_t>(params.N), 0};
  Homogeneity rhs = static_cast<std::int64_t>(-(params.N - 1)) * params.alpha0;
  if (rhs < lhs) return {true, SubcriticalCase::Nonlinearity};
  return {false, SubcriticalCase::None};
}

int max_subcritical_degree(int d, int n_max) {
  int best = 0;
  for (int N = 1; N <= n_max; ++N) {
    if (rho_c(N, d) < Rational(2)) best = N;
    else break;
  }
  return best;
}

}  // namespace fracreg
