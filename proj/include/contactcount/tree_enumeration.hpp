#pragma once

#include "contactcount/rational.hpp"
#include "contactcount/stable_tree.hpp"

#include <utility>
#include <vector>

namespace contactcount {

using EdgeList = std::vector<std::pair<int, int>>;

/// One representative of every unlabelled free tree on k vertices
/// (Wright, Richmond, Odlyzko and McKay), as edge lists on 0..k-1.
std::vector<EdgeList> free_trees(int k);

/// Largest vertex count a stable (m,d)-tree can have.
int max_vertex_count(int m, int d);

struct TreeClass {
  CanonicalKey key;
  StableTree tree;  // canonical representative
};

/// Γ(m,d) or Γ(m,d)⁺, one representative per class, sorted by key.
std::vector<TreeClass> enumerate_stable_trees(int m, int d, bool positive_only);

/// A class of trees whose leaves carry colours instead of labels.
struct TypedTreeClass {
  // Labelled representative: labels 1..m carry colours `colours[0..m-1]`.
  StableTree tree;
  // Number of classes in Γ(m,d) lying over this typed class.
  Integer labelled_classes;
};

/// Classes of trees whose leaves are coloured by `colours` (a colour per
/// label, grouped so that equal colours are contiguous). Summing
/// `labelled_classes` over the result gives |Γ(m,d)| (or |Γ(m,d)⁺|).
std::vector<TypedTreeClass> enumerate_typed_trees(const std::vector<int>& colours, int d, bool positive_only);

}  // namespace contactcount
