#include <algorithm>
#include <functional>
#include <set>
#include <string_view>
#include <thread>
#include <unordered_map>

#include "fracreg/model_space.hpp"

namespace fracreg {

namespace {

struct Entry {
  Symbol symbol;
  Homogeneity h;
  int generation = 0;
  int w_gen = -1;
  int u_gen = -1;
};

struct Candidate {
  Symbol symbol;
  Homogeneity h;
};

// All k in N^{d+1} with rho*k_0 + k_1 + ... + k_d <= limit.
void all_monomials(const Parameters& params, const Rational& limit, std::vector<std::uint32_t>& k, std::size_t pos,
                   Rational used, std::vector<MultiIndex>& out) {
  if (pos == k.size()) {
    out.emplace_back(k);
    return;
  }
  Rational weight = pos == 0 ? params.rho : Rational(1);
  for (std::uint32_t v = 0;; ++v) {
    Rational total = used + weight * static_cast<std::int64_t>(v);
    if (total > limit) break;
    k[pos] = v;
    all_monomials(params, limit, k, pos + 1, total, out);
  }
  k[pos] = 0;
}

class Builder {
 public:
  Builder(const Parameters& params, const BuildConfig& config) : params_(params), config_(config) {
    bound_ = sufficient_maxh(params_);
    if (config_.scope == BuildScope::Full) {
      u_limit_ = config_.maxh;
      w_enum_limit_ = config_.maxh;
    } else {
      u_limit_ = std::min(config_.maxh, bound_);
      w_enum_limit_ = std::max(Rational(0), u_limit_ - params_.rho);
    }
  }

  ModelSpace run() {
    if (config_.iter < 1) throw std::invalid_argument("iter must be >= 1");
    if (config_.maxh < Rational(0)) throw std::invalid_argument("maxh must be >= 0");
    auto verdict = is_locally_subcritical(params_);
    if (!verdict.subcritical) {
      throw NotSubcritical("parameters are not locally subcritical: need rho > " + to_string(rho_c(params_.N, params_.d)) +
                           " (white noise) / rho > -alpha0 (N-1)/N; got N=" + std::to_string(params_.N) +
                           ", d=" + std::to_string(params_.d) + ", rho=" + to_string(params_.rho) +
                           ", alpha0=" + to_string(params_.alpha0));
    }

    std::vector<std::uint32_t> k(static_cast<std::size_t>(params_.d) + 1, 0);
    std::vector<MultiIndex> monos;
    all_monomials(params_, u_limit_, k, 0, Rational(0), monos);

    bool converged = false;
    int m = 1;
    for (; m <= config_.iter; ++m) {
      bool grew = false;
      if (m == 1) {
        grew = add_to_w(Candidate{Symbol::xi(), homogeneity_of(Symbol::xi(), params_)}, m);
      } else {
        grew = w_step(m);
      }
      if (!grew) {
        converged = true;
        break;
      }
      if (m == 1) {
        for (const auto& mk : monos) {
          auto s = Symbol::monomial(mk);
          add_to_u(s, homogeneity_of(s, params_), m);
        }
      }
      u_step(m);
      history_.push_back({w_count_, u_count_});
      check_cap(m);
    }
    int ran = converged ? m - 1 : config_.iter;
    if (!converged) converged = !probe(config_.iter + 1);
    return finish(ran, converged, false);
  }

  ModelSpace finish(int ran, bool converged, bool truncated) const {
    ModelSpace ms;
    ms.params = params_;
    ms.config = config_;
    ms.converged = converged;
    ms.truncated = truncated;
    ms.iterations_run = ran;
    ms.history = history_;
    ms.records.reserve(entries_.size());
    for (const auto& e : entries_) {
      std::uint8_t roles = (e.w_gen >= 0 ? kInW : 0) | (e.u_gen >= 0 ? kInU : 0);
      ms.records.push_back({e.symbol, e.h, e.generation, roles});
    }
    std::sort(ms.records.begin(), ms.records.end(), [](const SymbolRecord& l, const SymbolRecord& r) {
      if (l.homogeneity != r.homogeneity) return l.homogeneity < r.homogeneity;
      return l.symbol.encoding() < r.symbol.encoding();
    });
    return ms;
  }

 private:
  bool keep_in_w(const Symbol& s, const Homogeneity& h) const {
    if (config_.scope == BuildScope::Full) return h.a <= config_.maxh;
    if (s.is_one() || h.is_negative()) return true;
    return h.a + params_.rho <= u_limit_;
  }

  bool add_to_w(const Candidate& c, int m) {
    auto it = index_.find(c.symbol.encoding());
    if (it != index_.end()) {
      auto& e = entries_[it->second];
      if (e.w_gen >= 0) return false;
      e.w_gen = m;
      ++w_count_;
      fresh_w_.push_back(it->second);
      return true;
    }
    entries_.push_back({c.symbol, c.h, m, m, -1});
    index_.emplace(entries_.back().symbol.encoding(), entries_.size() - 1);
    ++w_count_;
    fresh_w_.push_back(entries_.size() - 1);
    return true;
  }

  void add_to_u(const Symbol& s, const Homogeneity& h, int m) {
    auto it = index_.find(s.encoding());
    std::size_t id;
    if (it != index_.end()) {
      id = it->second;
      if (entries_[id].u_gen >= 0) return;
      entries_[id].u_gen = m;
    } else {
      entries_.push_back({s, h, m, -1, m});
      id = entries_.size() - 1;
      index_.emplace(entries_.back().symbol.encoding(), id);
    }
    ++u_count_;
    if (s.children().empty()) monomials_.push_back(id);
    else planted_.push_back(id);
  }

  void u_step(int m) {
    auto fresh = std::move(fresh_w_);
    fresh_w_.clear();
    for (auto id : fresh) {
      auto planted = integrate(entries_[id].symbol);
      if (!planted) continue;
      Homogeneity h = entries_[id].h + Homogeneity{params_.rho, 0};
      if (h.a > u_limit_) continue;
      add_to_u(*planted, h, m);
    }
    auto by_a = [this](std::size_t l, std::size_t r) {
      if (entries_[l].h != entries_[r].h) return entries_[l].h < entries_[r].h;
      return l < r;
    };
    std::sort(planted_.begin(), planted_.end(), by_a);
    std::sort(monomials_.begin(), monomials_.end(), by_a);
  }

  // Visits products X^k * P_1 ... P_j (j <= N, k = 0 when j = N) of U_{m-1}
  // elements that use at least one factor first added to U at step m-1 and whose
  // kappa-free homogeneity stays within the enumeration limit. The visitor returns
  // false to stop. Only first planted indices congruent to `lane` mod `lanes` are
  // visited (lane 0 also owns the planted-free products).
  void enumerate(int m, unsigned lane, unsigned lanes,
                 const std::function<bool(const std::vector<std::size_t>&, std::size_t)>& visit) const {
    std::vector<std::size_t> chosen;
    const int N = params_.N;
    const int fresh_gen = m - 1;
    bool stop = false;

    std::function<void(std::size_t, Rational, bool)> rec = [&](std::size_t start, Rational sum, bool has_new) {
      if (stop) return;
      const int j = static_cast<int>(chosen.size());
      if (j > 0 || lane == 0) {
        for (auto mono : monomials_) {
          const auto& me = entries_[mono];
          if (j == N && !me.symbol.is_one()) continue;
          if (sum + me.h.a > w_enum_limit_) break;
          if (!has_new && me.u_gen != fresh_gen) continue;
          if (!visit(chosen, mono)) {
            stop = true;
            return;
          }
        }
      }
      if (j == N) return;
      for (std::size_t i = start; i < planted_.size(); ++i) {
        if (j == 0 && i % lanes != lane) continue;
        const auto& pe = entries_[planted_[i]];
        Rational a = pe.h.a;
        Rational lower = sum + a + (a < Rational(0) ? a * static_cast<std::int64_t>(N - j - 1) : Rational(0));
        if (lower > w_enum_limit_) break;
        chosen.push_back(planted_[i]);
        rec(i, sum + a, has_new || pe.u_gen == fresh_gen);
        chosen.pop_back();
        if (stop) return;
      }
    };
    rec(0, Rational(0), false);
  }

  Candidate assemble(const std::vector<std::size_t>& chosen, std::size_t mono) const {
    std::vector<Edge> kids;
    kids.reserve(chosen.size());
    Homogeneity h = entries_[mono].h;
    for (auto id : chosen) {
      kids.push_back(entries_[id].symbol.children()[0]);
      h += entries_[id].h;
    }
    return {Symbol::make(entries_[mono].symbol.decoration(), std::move(kids)), h};
  }

  bool w_step(int m) {
    unsigned lanes = std::max(1u, config_.threads);
    std::vector<std::vector<Candidate>> out(lanes);
    auto work = [&](unsigned lane) {
      enumerate(m, lane, lanes, [&](const std::vector<std::size_t>& chosen, std::size_t mono) {
        auto c = assemble(chosen, mono);
        if (keep_in_w(c.symbol, c.h)) out[lane].push_back(std::move(c));
        return true;
      });
    };
    if (lanes == 1) {
      work(0);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < lanes; ++t) pool.emplace_back(work, t);
    }
    bool grew = false;
    for (auto& lane : out) {
      for (auto& c : lane) grew = add_to_w(c, m) || grew;
      lane.clear();
      lane.shrink_to_fit();
      check_cap(m);
    }
    return grew;
  }

  // True when one more step would add a symbol to W.
  bool probe(int m) const {
    bool found = false;
    enumerate(m, 0, 1, [&](const std::vector<std::size_t>& chosen, std::size_t mono) {
      auto c = assemble(chosen, mono);
      if (!keep_in_w(c.symbol, c.h)) return true;
      auto it = index_.find(c.symbol.encoding());
      if (it != index_.end() && entries_[it->second].w_gen >= 0) return true;
      found = true;
      return false;
    });
    return found;
  }

  void check_cap(int m) const {
    if (entries_.size() <= config_.cap) return;
    throw CapExceeded("symbol cap of " + std::to_string(config_.cap) + " exceeded during iteration " +
                          std::to_string(m) + " (" + std::to_string(entries_.size()) + " symbols)",
                      finish(m - 1, false, true));
  }

  Parameters params_;
  BuildConfig config_;
  Rational bound_;
  Rational u_limit_;
  Rational w_enum_limit_;

  std::vector<Entry> entries_;
  std::unordered_map<std::string_view, std::size_t> index_;
  std::vector<std::size_t> monomials_;
  std::vector<std::size_t> planted_;
  std::vector<std::size_t> fresh_w_;
  std::size_t w_count_ = 0;
  std::size_t u_count_ = 0;
  std::vector<IterationSizes> history_;
};

}  // namespace

std::string_view to_string(BuildScope s) { return s == BuildScope::Full ? "full" : "negative"; }

BuildScope parse_build_scope(std::string_view s) {
  if (s == "full") return BuildScope::Full;
  if (s == "negative") return BuildScope::NegativeSector;
  throw std::invalid_argument("unknown build scope '" + std::string(s) + "' (expected full|negative)");
}

Rational sufficient_maxh(const Parameters& params) {
  Rational shifted = params.alpha0.a + params.rho;
  Rational b = -shifted * static_cast<std::int64_t>(params.N - 1);
  return std::max(Rational(0), b);
}

bool ModelSpace::negative_sector_complete() const {
  return converged && !truncated && config.maxh >= sufficient_maxh(params);
}

const SymbolRecord* ModelSpace::find(const std::string& encoding) const {
  for (const auto& r : records)
    if (r.symbol.encoding() == encoding) return &r;
  return nullptr;
}

std::vector<Homogeneity> ModelSpace::index_set() const {
  std::vector<Homogeneity> out;
  for (const auto& r : records)
    if (out.empty() || out.back() != r.homogeneity) out.push_back(r.homogeneity);
  return out;
}

ModelSpace build(const Parameters& params, const BuildConfig& config) { return Builder(params, config).run(); }

ModelSpace build_negative_sector(const Parameters& params, int max_iter, std::size_t cap, unsigned threads) {
  BuildConfig config;
  config.maxh = sufficient_maxh(params);
  config.iter = max_iter;
  config.scope = BuildScope::NegativeSector;
  config.cap = cap;
  config.threads = threads;
  return build(params, config);
}

std::vector<SymbolRecord> negative_sector(const ModelSpace& ms) {
  std::vector<SymbolRecord> out;
  for (const auto& r : ms.records)
    if (r.homogeneity.is_negative()) out.push_back(r);
  return out;
}

Count h_F(const ModelSpace& ms) {
  std::size_t n = 0;
  const Homogeneity* last = nullptr;
  for (const auto& r : ms.records) {
    if (!r.homogeneity.is_negative()) break;
    if (!last || *last != r.homogeneity) ++n;
    last = &r.homogeneity;
  }
  return {n, ms.negative_sector_complete()};
}

Count c_F(const ModelSpace& ms) {
  std::size_t n = 0;
  for (const auto& r : ms.records) {
    if (!r.homogeneity.is_negative()) break;
    ++n;
  }
  return {n, ms.negative_sector_complete()};
}

Count h0_F(const ModelSpace& ms) {
  std::set<std::pair<std::int64_t, std::int64_t>> pairs;
  for (const auto& r : ms.records) {
    if (!r.homogeneity.is_negative()) break;
    const auto& t = r.symbol.type();
    if (t.k.is_zero()) pairs.emplace(t.p, t.q);
  }
  return {pairs.size(), ms.negative_sector_complete()};
}

}  // namespace fracreg
