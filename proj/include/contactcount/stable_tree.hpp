#pragma once

// Stable (m,d)-trees: the dual graphs of genus-0 stable maps.
//
// A tree is stored in flag form. Every flag sits on a vertex and is either a
// leaf (its own partner under the involution) or one half of an edge. Leaves
// carry the labels 1..m; flag and vertex identifiers are dense internal
// integers with no meaning beyond the structure they describe.

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace contactcount {

using FlagId = int;
using VertexId = int;
using EdgeId = int;

class StableTree {
 public:
  StableTree() = default;

  /// Raw flag data; no validation is done here (see validate()).
  StableTree(int marks, std::vector<int> vertex_degrees, std::vector<VertexId> flag_vertex,
             std::vector<FlagId> flag_partner, std::vector<int> flag_label);

  /// Convenience builder: `leaf_vertex[i]` is the vertex carrying label i+1.
  static StableTree from_edges(std::vector<int> vertex_degrees,
                               const std::vector<std::pair<VertexId, VertexId>>& edges,
                               const std::vector<VertexId>& leaf_vertex);

  /// The single-vertex tree with leaves 1..marks.
  static StableTree single_vertex(int degree, int marks);

  int marks() const { return marks_; }
  int total_degree() const;
  int vertex_count() const { return static_cast<int>(degrees_.size()); }
  int flag_count() const { return static_cast<int>(flag_vertex_.size()); }
  int edge_count() const;

  int vertex_degree(VertexId v) const { return degrees_[v]; }
  const std::vector<int>& vertex_degrees() const { return degrees_; }
  VertexId flag_vertex(FlagId f) const { return flag_vertex_[f]; }
  FlagId partner(FlagId f) const { return partner_[f]; }
  int label(FlagId f) const { return label_[f]; }
  bool is_leaf(FlagId f) const { return partner_[f] == f; }

  /// Edges as flag pairs (f, j(f)) with f < j(f), ordered by f. An EdgeId
  /// indexes this list.
  std::vector<std::pair<FlagId, FlagId>> edges() const;
  std::vector<FlagId> flags_at(VertexId v) const;
  /// n(v): all flags at v.
  int valence(VertexId v) const;
  /// Number of edges at v.
  int edge_valence(VertexId v) const;
  std::vector<std::vector<VertexId>> adjacency() const;

  /// Leaf labels sitting at v, ascending.
  std::vector<int> labels_at(VertexId v) const;
  /// Vertex carrying the leaf with this label, or -1.
  VertexId leaf_vertex(int label) const;

  friend bool operator==(const StableTree&, const StableTree&) = default;

 private:
  int marks_ = 0;
  std::vector<int> degrees_;
  std::vector<VertexId> flag_vertex_;
  std::vector<FlagId> partner_;
  std::vector<int> label_;
};

struct Violation {
  enum class Kind {
    malformed,        // out-of-range identifiers
    involution,       // j∘j != id
    connectivity,
    tree_identity,    // |E|+|L|+|V| != 1+|F|
    stability,        // degree-0 vertex with valence < 3
    leaf_labels,      // labels not a bijection onto 1..m
    negative_degree,
  };
  Kind kind;
  std::string message;
};

/// Empty result means the tree is a stable (m,d)-tree.
std::vector<Violation> validate(const StableTree& tree);
bool is_stable_tree(const StableTree& tree);

/// Identifies the isomorphism class (leaf labels and degrees preserved).
struct CanonicalKey {
  std::string code;
  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
};

CanonicalKey canonical_key(const StableTree& tree);

/// The isomorphic tree whose vertices and flags are numbered in canonical
/// order. Isomorphic inputs give identical outputs.
StableTree canonical_representative(const StableTree& tree);

/// Canonical position of each vertex: rank[v] = index of v in canonical order.
std::vector<int> canonical_vertex_rank(const StableTree& tree);

/// |Aut(τ)|: automorphisms fixing every leaf label and preserving degrees.
std::uint64_t automorphism_order(const StableTree& tree);

/// |V⁰|, the number of contracted (degree-0) vertices.
int codimension(const StableTree& tree);

/// Result of cutting an edge {f, f'}. Both halves are relabelled 1..m_σ with
/// the surviving labels in increasing order and the new leaf last.
struct Decomposition {
  StableTree sigma;        // contains f
  StableTree sigma_prime;  // contains f'
  int f_label = 0;         // label of f inside sigma
  int f_prime_label = 0;   // label of f' inside sigma_prime
  // origin[i] = label in the parent tree of label i+1, or 0 for the new leaf
  std::vector<int> sigma_origin;
  std::vector<int> sigma_prime_origin;
};

Decomposition decompose_at_edge(const StableTree& tree, EdgeId edge);

/// Inverse of decompose_at_edge: joins f and f' and restores the parent labels.
StableTree glue(const Decomposition& parts);

}  // namespace contactcount
