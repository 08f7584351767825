#include "fracreg/combinatorics.hpp"

#include "fracreg/analytic.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <stdexcept>

namespace fracreg {

BigInt wedderburn(int n) {
  if (n < 0) throw std::invalid_argument("wedderburn needs n >= 0");
  return wedderburn_table(n)[static_cast<std::size_t>(n)];
}

std::vector<BigInt> wedderburn_table(int n_max) {
  std::vector<BigInt> w(static_cast<std::size_t>(std::max(n_max, 1)) + 1, 0);
  w[1] = 1;
  for (int n = 2; n <= n_max; ++n) {
    BigInt sum = 0;
    for (int i = 1; 2 * i < n; ++i) sum += w[i] * w[n - i];
    if (n % 2 == 0) sum += w[n / 2] * (w[n / 2] + 1) / 2;
    w[n] = sum;
  }
  w.resize(static_cast<std::size_t>(n_max) + 1);
  return w;
}

namespace {

BigInt multichoose(const BigInt& kinds, int k) {
  BigInt out = 1;
  for (int i = 0; i < k; ++i) out = out * (kinds + i) / (i + 1);
  return out;
}

}  // namespace

std::vector<BigInt> count_regular_table(int N, int n_max) {
  if (N < 2) throw std::invalid_argument("count_regular needs N >= 2");
  std::vector<BigInt> R(static_cast<std::size_t>(std::max(n_max, 1)) + 1, 0);
  // M[k][m]: multisets of k trees with m vertices in total, over sizes processed so far.
  std::vector<std::vector<BigInt>> M(static_cast<std::size_t>(N) + 1, std::vector<BigInt>(R.size(), 0));
  M[0][0] = 1;
  R[1] = 1;
  for (int s = 1; s < n_max; ++s) {
    if (R[s] != 0) {
      auto next = M;
      for (int k = 0; k <= N; ++k) {
        for (int m = 0; m <= n_max; ++m) {
          if (M[k][m] == 0) continue;
          for (int t = 1; k + t <= N && m + t * s <= n_max; ++t) next[k + t][m + t * s] += M[k][m] * multichoose(R[s], t);
        }
      }
      M = std::move(next);
    }
    R[s + 1] = M[N][s];
  }
  R.resize(static_cast<std::size_t>(n_max) + 1);
  if (n_max >= 0) R[0] = 0;
  return R;
}

BigInt count_regular(int N, int n) {
  if (n < 1) throw std::invalid_argument("count_regular needs n >= 1");
  return count_regular_table(N, n)[static_cast<std::size_t>(n)];
}

namespace {

// Children lists by preorder index.
std::vector<std::vector<std::size_t>> shape_of(const std::string& code) {
  std::vector<std::vector<std::size_t>> kids;
  std::vector<std::size_t> stack;
  for (char c : code) {
    if (c == '(') {
      std::size_t id = kids.size();
      kids.emplace_back();
      if (!stack.empty()) kids[stack.back()].push_back(id);
      stack.push_back(id);
    } else {
      stack.pop_back();
    }
  }
  return kids;
}

std::string canonical(std::string_view code, std::size_t& pos) {
  if (pos >= code.size() || code[pos] != '(') throw std::invalid_argument("malformed tree code");
  ++pos;
  std::vector<std::string> kids;
  while (pos < code.size() && code[pos] == '(') kids.push_back(canonical(code, pos));
  if (pos >= code.size() || code[pos] != ')') throw std::invalid_argument("malformed tree code");
  ++pos;
  std::sort(kids.begin(), kids.end());
  std::string out = "(";
  for (auto& k : kids) out += k;
  return out + ")";
}

}  // namespace

PlainTree PlainTree::from_code(std::string_view code) {
  std::size_t pos = 0;
  auto out = canonical(code, pos);
  if (pos != code.size()) throw std::invalid_argument("trailing characters in tree code");
  return PlainTree(std::move(out));
}

PlainTree PlainTree::from_children(std::vector<PlainTree> children) {
  std::sort(children.begin(), children.end());
  std::string out = "(";
  for (auto& c : children) out += c.code_;
  return PlainTree(out + ")");
}

std::vector<PlainTree> PlainTree::children() const {
  std::vector<PlainTree> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 1; i + 1 < code_.size(); ++i) {
    if (code_[i] == '(') {
      if (depth++ == 0) start = i;
    } else if (--depth == 0) {
      out.push_back(PlainTree(code_.substr(start, i - start + 1)));
    }
  }
  return out;
}

std::size_t PlainTree::leaf_count() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i + 1 < code_.size(); ++i)
    if (code_[i] == '(' && code_[i + 1] == ')') ++n;
  return n;
}

std::vector<std::size_t> PlainTree::out_degrees() const {
  auto kids = shape_of(code_);
  std::vector<std::size_t> out;
  out.reserve(kids.size());
  for (auto& k : kids) out.push_back(k.size());
  return out;
}

std::size_t PlainTree::max_children() const {
  auto d = out_degrees();
  return *std::max_element(d.begin(), d.end());
}

std::size_t PlainTree::height() const {
  std::size_t best = 0, depth = 0;
  for (char c : code_) {
    if (c == '(') best = std::max(best, depth++);
    else --depth;
  }
  return best;
}

std::size_t PlainTree::diameter() const {
  auto kids = shape_of(code_);
  std::vector<std::size_t> h(kids.size(), 0);
  std::size_t best = 0;
  // Preorder indices: children come after parents, so reverse order is bottom-up.
  for (std::size_t v = kids.size(); v-- > 0;) {
    std::size_t a = 0, b = 0;
    for (auto c : kids[v]) {
      std::size_t x = h[c] + 1;
      if (x > a) {
        b = a;
        a = x;
      } else if (x > b) {
        b = x;
      }
    }
    h[v] = a;
    best = std::max(best, a + b);
  }
  return best;
}

const std::vector<PlainTree>& BareTreeEnumerator::trees(int vertices, int leaves) {
  auto key = std::make_pair(vertices, leaves);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  std::vector<PlainTree> out;
  if (vertices == 1) {
    if (leaves == 1) out.emplace_back();
  } else if (vertices > 1 && leaves >= 1 && leaves < vertices) {
    std::vector<const PlainTree*> chosen;
    multisets(vertices - 1, leaves, N_, {vertices - 1, leaves}, static_cast<std::size_t>(-1), chosen, out);
    std::sort(out.begin(), out.end());
  }
  produced_ += out.size();
  if (produced_ > limit_.max_trees)
    throw EnumerationTooLarge("tree enumeration exceeded " + std::to_string(limit_.max_trees) + " trees");
  return memo_.emplace(key, std::move(out)).first->second;
}

void BareTreeEnumerator::multisets(int rv, int rl, int slots, std::pair<int, int> max_key, std::size_t max_index,
                                   std::vector<const PlainTree*>& chosen, std::vector<PlainTree>& out) {
  if (rv == 0) {
    if (rl != 0 || chosen.empty()) return;
    std::vector<PlainTree> kids;
    kids.reserve(chosen.size());
    for (auto* t : chosen) kids.push_back(*t);
    out.push_back(PlainTree::from_children(std::move(kids)));
    return;
  }
  if (slots == 0 || rl == 0) return;
  for (int s = std::min(rv, max_key.first); s >= 1; --s) {
    int lf_top = s == max_key.first ? std::min(rl, max_key.second) : rl;
    for (int lf = lf_top; lf >= 1; --lf) {
      if ((rv - s > 0 && slots == 1) || (rv - s == 0) != (rl - lf == 0)) continue;
      const auto& pool = trees(s, lf);
      if (pool.empty()) continue;
      std::pair<int, int> key{s, lf};
      std::size_t top = key == max_key ? std::min(max_index, pool.size() - 1) : pool.size() - 1;
      for (std::size_t i = top + 1; i-- > 0;) {
        chosen.push_back(&pool[i]);
        multisets(rv - s, rl - lf, slots - 1, key, i, chosen, out);
        chosen.pop_back();
      }
    }
  }
}

std::vector<PlainTree> BareTreeEnumerator::with_edges(int q) {
  if (q < 0) throw std::invalid_argument("q must be >= 0");
  std::vector<PlainTree> out;
  for (int l = 1; l <= q + 1; ++l) {
    const auto& part = trees(q + 1, l);
    out.insert(out.end(), part.begin(), part.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PlainTree> enumerate_bare(int N, int q, EnumerationLimit limit) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  BareTreeEnumerator e(N, limit);
  return e.with_edges(q);
}

PruneClassification verify_prune_structure(const PlainTree& bare, int N) {
  auto kids = shape_of(bare.code());
  PruneClassification out;
  out.degree_counts.assign(static_cast<std::size_t>(N) + 2, 0);
  for (std::size_t v = 0; v < kids.size(); ++v) {
    std::size_t c = kids[v].size();
    if (c > static_cast<std::size_t>(N))
      throw PruneStructureError("vertex " + std::to_string(v) + " has " + std::to_string(c) + " children (N = " +
                                std::to_string(N) + ")");
    std::size_t deg = c + (v == 0 ? 0 : 1);
    out.degree_counts[deg] += 1;
    if (c == 0) continue;
    for (std::size_t k = c; k < static_cast<std::size_t>(N); ++k) out.witness.push_back(v);
  }
  out.r = out.witness.size();
  if (out.r >= static_cast<std::size_t>(N))
    throw PruneStructureError("tree " + bare.code() + " needs " + std::to_string(out.r) +
                              " extra edges to become " + std::to_string(N) + "-regular");

  const std::size_t q = bare.edge_count();
  std::size_t vertices = 0, degree_sum = 0;
  for (std::size_t j = 0; j < out.degree_counts.size(); ++j) {
    vertices += out.degree_counts[j];
    degree_sum += j * out.degree_counts[j];
  }
  if (vertices != q + 1 || degree_sum != 2 * q) throw PruneStructureError("inconsistent degree vector for " + bare.code());
  if (q == 0) {
    out.label = "single vertex";
  } else if (N == 2) {
    std::size_t n = out.r == 0 ? q / 2 : (q - 1) / 2;
    auto s = [](std::size_t x) { return std::to_string(x); };
    std::array<std::size_t, 3> expect{};
    if (out.r == 0) {
      out.label = "(n+1,1,n-1) n=" + s(n);
      expect = {n + 1, 1, n - 1};
    } else if (kids[0].size() == 1) {
      out.label = "(n+2,0,n) n=" + s(n);
      expect = {n + 2, 0, n};
    } else {
      out.label = "(n+1,2,n-1) n=" + s(n);
      expect = {n + 1, 2, n - 1};
    }
    const auto& dc = out.degree_counts;
    if (dc[0] != 0 || dc[1] != expect[0] || dc[2] != expect[1] || dc[3] != expect[2])
      throw PruneStructureError("tree " + bare.code() + " does not match degree pattern " + out.label);
  } else if (out.r == 0) {
    out.label = std::to_string(N) + "-regular";
  } else {
    out.label = std::to_string(N) + "-regular minus " + std::to_string(out.r);
  }
  return out;
}

Symbol to_symbol(const PlainTree& bare) {
  std::vector<Edge> edges;
  for (const auto& c : bare.children()) edges.push_back({EdgeType::Int, to_symbol(c).node()});
  return Symbol::make(MultiIndex(), std::move(edges));
}

PlainTree to_plain_tree(const Symbol& t) {
  std::vector<PlainTree> kids;
  for (const auto& e : t.children()) kids.push_back(to_plain_tree(Symbol(e.target)));
  return PlainTree::from_children(std::move(kids));
}

std::vector<Symbol> decorated_negative_trees(const Parameters& params, EnumerationLimit limit) {
  const auto q_max = floor(lattice_bounds(params.N, params.d, params.rho).q_star);
  BareTreeEnumerator en(params.N, limit);
  std::vector<Symbol> out;
  for (std::int64_t q = 0; q <= q_max; ++q) {
    // Each leaf carries one Xi, so only leaf counts with p alpha0 + q rho <= 0 can qualify.
    for (std::int64_t p = q + 1; p >= 1; --p) {
      if (params.alpha0.a * p + params.rho * q > Rational(0)) break;
      for (const auto& bare : en.trees(static_cast<int>(q + 1), static_cast<int>(p))) {
        Symbol s = decorate(to_symbol(bare));
        if (homogeneity_of(s, params).is_negative()) out.push_back(std::move(s));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace fracreg
