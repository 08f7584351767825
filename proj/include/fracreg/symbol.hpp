#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fracreg/params.hpp"

namespace fracreg {

// Sort order of edge types inside a vertex: Xi < Int.
enum class EdgeType : std::uint8_t { Xi = 0, Int = 1 };

struct TypeTriple {
  std::int64_t p = 0;  // occurrences of Xi
  std::int64_t q = 0;  // occurrences of the integration operator
  MultiIndex k;        // total polynomial exponent (trailing zeros trimmed)

  friend bool operator==(const TypeTriple&, const TypeTriple&) = default;
};

// counts[j] = number of vertices of (undirected) degree j.
struct DegreeVector {
  std::vector<std::size_t> counts;

  std::size_t at(std::size_t j) const { return j < counts.size() ? counts[j] : 0; }
  friend bool operator==(const DegreeVector& l, const DegreeVector& r);
};

class Symbol;

struct Edge {
  EdgeType type;
  std::shared_ptr<const class SymbolNode> target;
};

class SymbolNode {
 public:
  const MultiIndex& decoration() const { return decoration_; }
  std::span<const Edge> children() const { return children_; }
  const std::string& encoding() const { return encoding_; }
  const TypeTriple& type() const { return type_; }

 private:
  friend class Symbol;
  MultiIndex decoration_;
  std::vector<Edge> children_;
  std::string encoding_;
  TypeTriple type_;
};

// Decorated rooted tree. Immutable; children are stored in canonical order, so
// two symbols are equal exactly when their encodings are.
class Symbol {
 public:
  static Symbol one();
  static Symbol xi();
  static Symbol monomial(const MultiIndex& k);
  // Builds a vertex from its decoration and a multiset of outgoing edges.
  static Symbol make(const MultiIndex& decoration, std::vector<Edge> children);

  explicit Symbol(std::shared_ptr<const SymbolNode> node) : node_(std::move(node)) {}

  const MultiIndex& decoration() const { return node_->decoration(); }
  std::span<const Edge> children() const { return node_->children(); }
  const std::string& encoding() const { return node_->encoding(); }
  const TypeTriple& type() const { return node_->type(); }
  std::size_t vertex_count() const { return static_cast<std::size_t>(type().p + type().q + 1); }
  bool is_one() const { return children().empty() && decoration().is_zero(); }
  const std::shared_ptr<const SymbolNode>& node() const { return node_; }

  friend bool operator==(const Symbol& l, const Symbol& r) {
    return l.node_ == r.node_ || l.encoding() == r.encoding();
  }
  friend std::strong_ordering operator<=>(const Symbol& l, const Symbol& r) {
    return l.encoding().compare(r.encoding()) <=> 0;
  }

 private:
  std::shared_ptr<const SymbolNode> node_;
};

// Planted tree I(t); absent when t is the unit.
std::optional<Symbol> integrate(const Symbol& t);
// Root concatenation: decorations add, child multisets merge.
Symbol multiply(const Symbol& l, const Symbol& r);

// AHU-style canonical encoding: "(" [k0,k1,...] then ("x"|"i") child... ")".
const std::string& canonical_encode(const Symbol& t);
// Inverse of canonical_encode; accepts any child order and canonicalizes.
Symbol parse_encoding(std::string_view text);

TypeTriple type_of(const Symbol& t);
Homogeneity homogeneity_of(const Symbol& t, const Parameters& params);
Homogeneity homogeneity_of(const TypeTriple& type, const Parameters& params);
DegreeVector degree_vector(const Symbol& t, bool decorated);

// Strips every Xi edge together with its leaf.
Symbol bare_tree(const Symbol& t);
// Attaches a Xi edge to every leaf; throws on decorations or Xi edges.
Symbol decorate(const Symbol& bare);

// Height (root to deepest vertex) and diameter of the tree as an undirected graph.
std::size_t tree_height(const Symbol& t);
std::size_t tree_diameter(const Symbol& t);

// Notation like "I(I(Xi)^2)*I(Xi)^2" or "X^(1,0,0)*I(Xi)". dims pads multiindices.
std::string render(const Symbol& t, std::size_t dims = 0);

struct DotOptions {
  std::string graph_name = "tau";
  std::size_t dims = 0;
};
// Graphviz digraph, edges pointing away from the root.
std::string to_dot(const Symbol& t, const DotOptions& options = {});
// All trees in one digraph, one cluster each; vertex ids are prefixed "t<i>v".
std::string to_dot_forest(const std::vector<Symbol>& trees, const DotOptions& options = {});

}  // namespace fracreg
