#pragma once

// Canonical form of a vertex- and edge-labelled free tree.
//
// The tree is rooted at its centroid (or at whichever of the two centroids
// yields the smaller code) and encoded bottom up; a vertex's code is its
// label followed by the sorted codes of its children, each prefixed by the
// label of the connecting edge. Two labelled trees are isomorphic iff their
// codes agree.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace contactcount::detail {

struct LabelledTree {
  // Labels must not contain '(' ')' or '|'.
  std::vector<std::string> vertex_label;
  // adjacency[v] = (neighbour, edge label)
  std::vector<std::vector<std::pair<int, int>>> adjacency;
};

struct CanonicalForm {
  std::string code;
  // Vertices in canonical preorder: order[i] is the input vertex visited i-th.
  std::vector<int> order;
  // Order of the automorphism group (label-preserving vertex permutations).
  std::uint64_t automorphisms = 1;
};

CanonicalForm canonicalize(const LabelledTree& tree);

/// One or two centroids of a connected tree given by adjacency lists.
std::vector<int> centroids(const std::vector<std::vector<std::pair<int, int>>>& adjacency);

}  // namespace contactcount::detail
