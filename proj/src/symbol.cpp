#include "fracreg/symbol.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace fracreg {

namespace {

char edge_tag(EdgeType t) { return t == EdgeType::Xi ? 'x' : 'i'; }

bool edge_less(const Edge& l, const Edge& r) {
  if (l.type != r.type) return l.type < r.type;
  return l.target->encoding() < r.target->encoding();
}

bool edge_equal(const Edge& l, const Edge& r) {
  return l.type == r.type && (l.target == r.target || l.target->encoding() == r.target->encoding());
}

std::string decoration_string(const MultiIndex& k) {
  std::string out = "[";
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(k[i]);
  }
  return out + "]";
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Symbol parse() {
    auto t = node();
    if (pos_ != s_.size()) fail("trailing characters");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("bad symbol encoding at offset " + std::to_string(pos_) + ": " + what);
  }
  void expect(char c) {
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  Symbol node() {
    expect('(');
    MultiIndex dec;
    if (pos_ < s_.size() && s_[pos_] == '[') {
      ++pos_;
      std::vector<std::uint32_t> k;
      while (true) {
        std::size_t start = pos_;
        while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') ++pos_;
        if (start == pos_) fail("expected digit");
        k.push_back(static_cast<std::uint32_t>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
        if (pos_ < s_.size() && s_[pos_] == ',') { ++pos_; continue; }
        expect(']');
        break;
      }
      dec = MultiIndex(std::move(k));
    }
    std::vector<Edge> children;
    while (pos_ < s_.size() && s_[pos_] != ')') {
      char tag = s_[pos_++];
      EdgeType type;
      if (tag == 'x') type = EdgeType::Xi;
      else if (tag == 'i') type = EdgeType::Int;
      else fail("unknown edge tag");
      children.push_back({type, node().node()});
    }
    expect(')');
    return Symbol::make(dec, std::move(children));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

void degrees(const SymbolNode& n, bool decorated, bool is_root, std::vector<std::size_t>& counts) {
  std::size_t deg = is_root ? 0 : 1;
  for (const auto& e : n.children()) {
    if (!decorated && e.type == EdgeType::Xi) continue;
    ++deg;
    degrees(*e.target, decorated, false, counts);
  }
  if (counts.size() <= deg) counts.resize(deg + 1, 0);
  ++counts[deg];
}

// Returns the height of the subtree; updates best with the longest path through it.
std::size_t height_and_diameter(const SymbolNode& n, std::size_t& best) {
  std::size_t top1 = 0, top2 = 0;
  for (const auto& e : n.children()) {
    std::size_t h = height_and_diameter(*e.target, best) + 1;
    if (h > top1) {
      top2 = top1;
      top1 = h;
    } else if (h > top2) {
      top2 = h;
    }
  }
  best = std::max(best, top1 + top2);
  return top1;
}

std::string render_node(const SymbolNode& n, std::size_t dims);

std::string render_edge(const Edge& e, std::size_t dims) {
  const auto& t = *e.target;
  if (e.type == EdgeType::Xi) {
    bool plain = t.children().empty() && t.decoration().is_zero();
    return plain ? "Xi" : "Xi{" + render_node(t, dims) + "}";
  }
  return "I(" + render_node(t, dims) + ")";
}

std::string render_node(const SymbolNode& n, std::size_t dims) {
  std::vector<std::string> factors;
  if (!n.decoration().is_zero()) {
    auto k = dims ? n.decoration().padded(dims) : n.decoration();
    std::string s = "X^(";
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(k[i]);
    }
    factors.push_back(s + ")");
  }
  auto kids = n.children();
  for (std::size_t i = 0; i < kids.size();) {
    std::size_t j = i + 1;
    while (j < kids.size() && edge_equal(kids[i], kids[j])) ++j;
    auto f = render_edge(kids[i], dims);
    if (j - i > 1) f += "^" + std::to_string(j - i);
    factors.push_back(std::move(f));
    i = j;
  }
  if (factors.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out += '*';
    out += factors[i];
  }
  return out;
}

}  // namespace

bool operator==(const DegreeVector& l, const DegreeVector& r) {
  auto n = std::max(l.counts.size(), r.counts.size());
  for (std::size_t j = 0; j < n; ++j)
    if (l.at(j) != r.at(j)) return false;
  return true;
}

Symbol Symbol::make(const MultiIndex& decoration, std::vector<Edge> children) {
  std::sort(children.begin(), children.end(), edge_less);
  auto node = std::make_shared<SymbolNode>();
  node->decoration_ = decoration.trimmed();
  node->type_.k = node->decoration_;

  std::size_t length = 2;
  for (const auto& e : children) length += 1 + e.target->encoding().size();
  std::string enc;
  std::string dec = node->decoration_.size() ? decoration_string(node->decoration_) : std::string();
  enc.reserve(length + dec.size());
  enc += '(';
  enc += dec;
  for (const auto& e : children) {
    enc += edge_tag(e.type);
    enc += e.target->encoding();
    const auto& sub = e.target->type();
    node->type_.p += sub.p + (e.type == EdgeType::Xi ? 1 : 0);
    node->type_.q += sub.q + (e.type == EdgeType::Int ? 1 : 0);
    if (sub.k.size()) node->type_.k = node->type_.k + sub.k;
  }
  enc += ')';
  node->encoding_ = std::move(enc);
  node->children_ = std::move(children);
  return Symbol(std::move(node));
}

Symbol Symbol::one() {
  static const Symbol unit = make({}, {});
  return unit;
}

Symbol Symbol::xi() {
  static const Symbol noise = make({}, {Edge{EdgeType::Xi, one().node()}});
  return noise;
}

Symbol Symbol::monomial(const MultiIndex& k) { return make(k, {}); }

std::optional<Symbol> integrate(const Symbol& t) {
  if (t.is_one()) return std::nullopt;
  return Symbol::make({}, {Edge{EdgeType::Int, t.node()}});
}

Symbol multiply(const Symbol& l, const Symbol& r) {
  std::vector<Edge> kids(l.children().begin(), l.children().end());
  kids.insert(kids.end(), r.children().begin(), r.children().end());
  return Symbol::make(l.decoration() + r.decoration(), std::move(kids));
}

const std::string& canonical_encode(const Symbol& t) { return t.encoding(); }

Symbol parse_encoding(std::string_view text) { return Parser(text).parse(); }

TypeTriple type_of(const Symbol& t) { return t.type(); }

Homogeneity homogeneity_of(const TypeTriple& type, const Parameters& params) {
  Homogeneity h = type.p * params.alpha0;
  h.a += params.rho * type.q;
  h.a += scaled_degree(type.k, params.rho);
  return h;
}

Homogeneity homogeneity_of(const Symbol& t, const Parameters& params) {
  if (t.type().k.size() > static_cast<std::size_t>(params.d) + 1)
    throw std::invalid_argument("symbol decoration exceeds d+1 components");
  return homogeneity_of(t.type(), params);
}

DegreeVector degree_vector(const Symbol& t, bool decorated) {
  DegreeVector dv;
  degrees(*t.node(), decorated, true, dv.counts);
  return dv;
}

Symbol bare_tree(const Symbol& t) {
  std::vector<Edge> kids;
  for (const auto& e : t.children()) {
    if (e.type == EdgeType::Xi) continue;
    kids.push_back({EdgeType::Int, bare_tree(Symbol(e.target)).node()});
  }
  return Symbol::make(t.decoration(), std::move(kids));
}

Symbol decorate(const Symbol& bare) {
  if (!bare.decoration().is_zero()) throw std::invalid_argument("decorate: bare tree carries a polynomial decoration");
  if (bare.children().empty()) return Symbol::xi();
  std::vector<Edge> kids;
  for (const auto& e : bare.children()) {
    if (e.type != EdgeType::Int) throw std::invalid_argument("decorate: bare tree contains a Xi edge");
    kids.push_back({EdgeType::Int, decorate(Symbol(e.target)).node()});
  }
  return Symbol::make({}, std::move(kids));
}

std::size_t tree_height(const Symbol& t) {
  std::size_t best = 0;
  return height_and_diameter(*t.node(), best);
}

std::size_t tree_diameter(const Symbol& t) {
  std::size_t best = 0;
  height_and_diameter(*t.node(), best);
  return best;
}

std::string render(const Symbol& t, std::size_t dims) { return render_node(*t.node(), dims); }

namespace {

void emit_dot_tree(std::ostream& os, const Symbol& t, const std::string& prefix, std::size_t dims,
                   const std::string& indent) {
  std::size_t next = 0;
  std::function<std::size_t(const SymbolNode&, bool, bool)> visit = [&](const SymbolNode& n, bool root,
                                                                         bool noise_leaf) -> std::size_t {
    std::size_t id = next++;
    os << indent << prefix << id << " [";
    if (root) os << "shape=doublecircle, ";
    if (noise_leaf) os << "color=teal, ";
    if (!n.decoration().is_zero()) {
      auto k = dims ? n.decoration().padded(dims) : n.decoration();
      os << "shape=box, label=\"X^(";
      for (std::size_t i = 0; i < k.size(); ++i) os << (i ? "," : "") << k[i];
      os << ")\", ";
    }
    os << "root=" << (root ? "true" : "false") << "];\n";
    for (const auto& e : n.children()) {
      bool xi = e.type == EdgeType::Xi;
      std::size_t child = visit(*e.target, false, xi);
      os << indent << prefix << id << " -> " << prefix << child
         << (xi ? " [type=xi, style=dashed, color=teal];\n" : " [type=int, style=solid, color=blue];\n");
    }
    return id;
  };
  visit(*t.node(), true, false);
}

}  // namespace

std::string to_dot(const Symbol& t, const DotOptions& options) {
  std::ostringstream os;
  os << "digraph " << options.graph_name << " {\n";
  os << "  node [shape=circle, width=0.2, label=\"\"];\n";
  emit_dot_tree(os, t, "v", options.dims, "  ");
  os << "}\n";
  return os.str();
}

std::string to_dot_forest(const std::vector<Symbol>& trees, const DotOptions& options) {
  std::ostringstream os;
  os << "digraph " << options.graph_name << " {\n";
  os << "  node [shape=circle, width=0.2, label=\"\"];\n";
  for (std::size_t i = 0; i < trees.size(); ++i) {
    os << "  subgraph cluster_" << i << " {\n";
    os << "    label=\"" << render(trees[i], options.dims) << "\";\n";
    emit_dot_tree(os, trees[i], "t" + std::to_string(i) + "v", options.dims, "    ");
    os << "  }\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace fracreg
