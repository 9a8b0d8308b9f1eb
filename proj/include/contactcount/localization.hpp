#pragma once

// Torus localization on the space of genus-0 stable maps to P^n.
//
// A fixed locus is indexed by a tree whose vertices sit at coordinate points
// p_0..p_n and whose edges are degree-δ covers of coordinate lines. The
// integral of ev*-classes against the Euler class of the contact bundle (rank
// 2d-1) is the sum over fixed loci of restricted integrand over a_Γ·e(N).

#include "contactcount/projective_classes.hpp"
#include "contactcount/rational.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <utility>
#include <vector>

namespace contactcount {

/// The weights λ_0..λ_n with H|p_i = λ_i.
struct WeightVector {
  std::vector<Integer> lambda;
};

/// Distinct integers in [1, 2^31], a deterministic function of the arguments.
WeightVector sample_weights(int n, std::uint64_t seed, int d, int sample, int attempt);

struct FixedGraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> vertex_labels;  // fixed point of each vertex
  std::vector<int> edge_degrees;
  std::vector<int> mark_vertex;  // mark i+1 sits on mark_vertex[i]
  std::uint64_t automorphisms = 1;

  int degree() const;
  /// a_Γ = |Aut Γ| · ∏ δ_e
  Integer symmetry_factor() const;
};

/// Every fixed graph for (n, d, m) once up to isomorphism, in a
/// deterministic order. Requires d >= 1.
void for_each_fixed_graph(int n, int d, int m, const std::function<void(const FixedGraph&)>& visit);
std::vector<FixedGraph> enumerate_fixed_graphs(int n, int d, int m);

enum class Twist { contact, none };

/// Restriction of the contact-bundle Euler class to the fixed locus.
Rational contact_class_factor(const FixedGraph& g, const WeightVector& w);
/// Number of linear factors in contact_class_factor.
int contact_class_rank(const FixedGraph& g);

/// Contribution of one fixed locus; mark_codims[i] is the codim at mark i+1.
/// Throws DegenerateWeightsError on a zero denominator.
Rational graph_contribution(const FixedGraph& g, const WeightVector& w, const std::vector<int>& mark_codims,
                            Twist twist = Twist::contact);

/// Per-(n, d, weights) tables of fixed-locus data with the marks summed out.
///
/// With S_v = Σ_F 1/ω_F over the edge flags at v, placing a mark with
/// condition H^c at v multiplies the vertex term by λ_v^c S_v; summing over
/// all placements therefore factors as base · ∏_marks Σ_v λ_v^c S_v.
class LocalizationTable {
 public:
  LocalizationTable(int n, int d, const WeightVector& w, Twist twist, unsigned threads);

  /// Σ over fixed loci and mark placements; no dimension check.
  Rational integral(const ConditionMultiset& conditions) const;
  /// Same, with counts[c] conditions of codimension c (any n, odd or not).
  Rational integral(const std::vector<int>& counts) const;
  std::size_t locus_count() const { return entries_.size(); }
  const WeightVector& weights() const { return weights_; }

 private:
  struct Entry {
    Rational base;                   // includes 1/(|Aut shape|·∏δ)
    std::vector<Rational> mark_sum;  // index c: Σ_v λ_v^c S_v
  };
  int n_;
  int d_;
  WeightVector weights_;
  unsigned threads_;
  std::vector<Entry> entries_;
};

struct EngineOptions {
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool verify = true;  // evaluate with two weight samples and compare
  Twist twist = Twist::contact;
};

class LocalizationEngine {
 public:
  explicit LocalizationEngine(EngineOptions options = {});

  /// The invariant for n odd, d >= 1; 0 when Σcodim != moduli_dim. Throws
  /// VerificationError if samples disagree or the value is not an integer.
  Integer gw_integral(int n, int d, const ConditionMultiset& conditions) const;

  /// Single-sample evaluation through the factorised tables.
  Rational evaluate(int n, int d, const ConditionMultiset& conditions, int sample) const;

  /// Reference path: explicit sum over enumerate_fixed_graphs with marks.
  Rational integral_by_enumeration(int n, int d, const std::vector<int>& mark_codims, const WeightVector& w) const;

  std::size_t locus_count(int n, int d) const;
  const EngineOptions& options() const { return options_; }

 private:
  const LocalizationTable& table(int n, int d, int sample) const;

  EngineOptions options_;
  mutable std::mutex mutex_;
  mutable std::map<std::tuple<int, int, int>, std::shared_ptr<const LocalizationTable>> tables_;
};

}  // namespace contactcount
