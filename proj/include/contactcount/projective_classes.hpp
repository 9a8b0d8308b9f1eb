#pragma once

// Dimension bookkeeping and Schubert-condition arithmetic in H*(P^n).
// Conditions are powers H^c of the hyperplane class, recorded by codimension.

#include "contactcount/stable_tree.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace contactcount {

class ConditionMultiset {
 public:
  ConditionMultiset() = default;
  /// Throws DomainError unless n is odd and positive and every codim is in 0..n.
  ConditionMultiset(int n, std::vector<int> codims);

  /// counts[i] conditions of codimension first_codim + i.
  static ConditionMultiset from_counts(int n, const std::vector<int>& counts, int first_codim = 0);

  int ambient() const { return n_; }
  /// Sorted descending.
  const std::vector<int>& codims() const { return codims_; }
  int size() const { return static_cast<int>(codims_.size()); }
  int total_codim() const;
  int multiplicity(int codim) const;
  /// counts()[c] = multiplicity(c) for c = 0..n.
  std::vector<int> counts() const;

  std::string to_string() const;  // "3,3,2"; "-" when empty

  friend bool operator==(const ConditionMultiset&, const ConditionMultiset&) = default;

 private:
  int n_ = 1;
  std::vector<int> codims_;
};

/// Grammar: comma list of `c` or `c^k`, e.g. "2^7,3". Throws ParseError.
ConditionMultiset parse_condition_spec(int n, std::string_view spec);

/// d(n-1)+n+m-2 for d > 0, n+m-3 for d = 0 (which needs m >= 3).
int moduli_dim(int n, int d, int m);

/// Dimension of the closed stratum of the tree: d(n-1)+n+m-2-|V⁰|.
int stratum_dim(int n, const StableTree& tree);

/// ∫ over the degree-0 space: 1 iff exactly three conditions with codims summing to n.
int degree_zero_integral(int n, const ConditionMultiset& conditions);

/// Künneth decomposition of the diagonal: (n-j, j) for j = 0..n.
std::vector<std::pair<int, int>> diagonal_split(int n);

}  // namespace contactcount
