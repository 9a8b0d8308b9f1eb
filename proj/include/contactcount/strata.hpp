#pragma once

// Integrals over closures of strata S(τ) in the space of contact stable maps.
//
// A multi-vertex stratum is cut at an edge into σ ∋ f and σ' ∋ f', and
//
//   ∫_{S(τ)} = |Aut σ||Aut σ'| / |Aut τ| · Σ_j ∫_{S(σ)}(…, f ↦ H^{n-j}) · ∫_{S(σ')}(…, f' ↦ H^j).
//
// A single vertex of degree d closes up to everything in the full space not
// covered by the other Γ(m,d)⁺ components, which gives the base case.

#include "contactcount/localization.hpp"
#include "contactcount/memo_store.hpp"
#include "contactcount/projective_classes.hpp"
#include "contactcount/stable_tree.hpp"
#include "contactcount/tree_enumeration.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace contactcount {

struct LabeledQuery {
  int n = 3;
  StableTree tree;
  std::vector<int> leaf_codims;  // leaf_codims[i] is the codim at label i+1
};

struct StratumTerm {
  StableTree tree;
  Rational value;
};

class StrataCalculus {
 public:
  struct Options {
    // Sum over leaf-coloured tree classes (weighted by the number of labelled
    // classes above them) instead of over Γ(m,d)⁺ directly.
    bool grouped = true;
  };

  using Diagnostics = std::function<void(const std::string&)>;

  explicit StrataCalculus(const LocalizationEngine& engine, std::shared_ptr<MemoStore> memo = nullptr);
  StrataCalculus(const LocalizationEngine& engine, std::shared_ptr<MemoStore> memo, Options options);

  void set_diagnostics(Diagnostics sink) { diagnostics_ = std::move(sink); }
  MemoStore& memo() const { return *memo_; }

  /// gw_integral through the cache.
  Rational full_space_integral(int n, int d, const ConditionMultiset& conditions) const;

  /// ∫ over the closure of the single-vertex stratum τ_v.
  Rational single_vertex_closure_integral(int n, int d, const ConditionMultiset& conditions) const;

  /// Uses the canonical decomposition edge.
  Rational stratum_integral(const LabeledQuery& q) const;
  /// Same, decomposing at edge `edge` of q.tree (an index into q.tree.edges()).
  Rational stratum_integral_at_edge(const LabeledQuery& q, EdgeId edge) const;

  /// The first edge in canonical order that touches a vertex of maximal
  /// eccentricity; an index into tree.edges().
  static EdgeId canonical_edge(const StableTree& tree);

  /// Number of maps with dual graph q.tree meeting the conditions; warns and
  /// returns 0 when the codims do not add up to the stratum dimension.
  Rational graph_count(const LabeledQuery& q) const;

  /// N_d^irr with a[i] conditions of codim i+2. Warns and returns 0 on a
  /// dimension mismatch; throws VerificationError unless the result is a
  /// non-negative integer.
  Integer irreducible_count(int n, int d, const std::vector<int>& a) const;
  Integer irreducible_count(int d, const ConditionMultiset& conditions) const;

  /// Stratum values of Γ(m,d)⁺ ∖ {τ_v}, conditions on labels 1..m in
  /// descending order.
  std::vector<StratumTerm> breakdown(int n, int d, const ConditionMultiset& conditions) const;

  /// Coefficient I_d(m_0,…,m_n) of the contact potential.
  Integer potential_coefficient(int n, int d, const std::vector<int>& m_counts) const;

 private:
  void warn(const std::string& message) const;
  Rational tree_sum(int n, int d, const ConditionMultiset& conditions) const;
  const std::vector<TypedTreeClass>& typed_classes(const std::vector<int>& colours, int d) const;
  const std::vector<TreeClass>& labelled_classes(int m, int d) const;

  const LocalizationEngine& engine_;
  std::shared_ptr<MemoStore> memo_;
  Options options_;
  Diagnostics diagnostics_;

  mutable std::mutex enumeration_mutex_;
  mutable std::map<std::pair<std::vector<int>, int>, std::vector<TypedTreeClass>> typed_cache_;
  mutable std::map<std::pair<int, int>, std::vector<TreeClass>> labelled_cache_;
};

/// d²(d+3)(d+2)(d+1)(d-1)/6 = 20d·C(d+3,5).
Integer lv_closed_form(int d);

/// The two families of trees in the count of degree-d plane contact curves
/// through d+3 lines (d >= 3).
StableTree lv_tree_tau1(int d);
StableTree lv_tree_tau2(int d);

/// C(d+3,3)C(d,2)·s1 + (1/3!)C(d+3,2)C(d+1,2)C(d-1,2)·s2.
Rational lv_recombination(int d, const Rational& tau1_value, const Rational& tau2_value);

}  // namespace contactcount
