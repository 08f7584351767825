#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fracreg/symbol.hpp"

namespace fracreg {

using BigInt = boost::multiprecision::cpp_int;

// Unordered binary trees with n leaves: 0, 1, 1, 1, 2, 3, 6, 11, ...
BigInt wedderburn(int n);
std::vector<BigInt> wedderburn_table(int n_max);

// Rooted trees with n vertices in which every vertex has 0 or N children.
// Indexed by vertices: count_regular(2, 2m - 1) == wedderburn(m).
BigInt count_regular(int N, int n);
std::vector<BigInt> count_regular_table(int N, int n_max);

// Plain rooted unordered tree in canonical parenthesis form: a vertex is
// "(" + its children's codes in ascending order + ")". "()" is one vertex.
class PlainTree {
 public:
  PlainTree() : code_("()") {}
  static PlainTree from_code(std::string_view code);
  static PlainTree from_children(std::vector<PlainTree> children);

  const std::string& code() const { return code_; }
  std::vector<PlainTree> children() const;
  std::size_t vertex_count() const { return code_.size() / 2; }
  std::size_t edge_count() const { return vertex_count() - 1; }
  std::size_t leaf_count() const;
  std::size_t max_children() const;
  std::size_t height() const;
  std::size_t diameter() const;
  // Children per vertex, preorder.
  std::vector<std::size_t> out_degrees() const;

  friend bool operator==(const PlainTree&, const PlainTree&) = default;
  friend auto operator<=>(const PlainTree& l, const PlainTree& r) { return l.code_ <=> r.code_; }

 private:
  explicit PlainTree(std::string code) : code_(std::move(code)) {}
  std::string code_;
};

struct EnumerationLimit {
  std::size_t max_trees = 5'000'000;
};

class EnumerationTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Trees with q edges where every vertex has at most N children (so every vertex
// has degree <= N+1 and the root degree <= N), sorted by code.
std::vector<PlainTree> enumerate_bare(int N, int q, EnumerationLimit limit = {});

// Same, restricted to trees with the given number of leaves. Subtrees are
// memoized by (vertices, leaves), which keeps leaf-constrained queries small.
class BareTreeEnumerator {
 public:
  explicit BareTreeEnumerator(int N, EnumerationLimit limit = {}) : N_(N), limit_(limit) {}
  const std::vector<PlainTree>& trees(int vertices, int leaves);
  std::vector<PlainTree> with_edges(int q);

 private:
  void multisets(int remaining_vertices, int remaining_leaves, int slots, std::pair<int, int> max_key,
                 std::size_t max_index, std::vector<const PlainTree*>& chosen, std::vector<PlainTree>& out);

  int N_;
  EnumerationLimit limit_;
  std::size_t produced_ = 0;
  std::map<std::pair<int, int>, std::vector<PlainTree>> memo_;
};

struct PruneClassification {
  std::size_t r = 0;  // edges missing from N-regularity
  // Preorder indices of vertices that receive one new leaf each; a vertex
  // appears once per missing child.
  std::vector<std::size_t> witness;
  // counts[j] = vertices of (undirected) degree j.
  std::vector<std::size_t> degree_counts;
  std::string label;
};

class PruneStructureError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Completes the tree to an N-regular one by adding leaves below internal
// vertices with fewer than N children. Throws PruneStructureError if a vertex
// has more than N children or more than N-1 leaves would be needed.
PruneClassification verify_prune_structure(const PlainTree& bare, int N);

// Bare symbol with the same shape (all edges are integrations) and back.
Symbol to_symbol(const PlainTree& bare);
PlainTree to_plain_tree(const Symbol& t);

// Decorates every bare tree with at most floor(q*) edges and keeps those of
// negative homogeneity; these are the k = 0 negative elements. Sorted by encoding.
std::vector<Symbol> decorated_negative_trees(const Parameters& params, EnumerationLimit limit = {});

}  // namespace fracreg
