#include "contactcount/errors.hpp"
#include "contactcount/strata.hpp"
#include "contactcount/tree_io.hpp"

#include <doctest.h>

#include <functional>
#include <set>

using namespace contactcount;

namespace {

ConditionMultiset cond(int n, std::vector<int> c) { return ConditionMultiset(n, std::move(c)); }

const LocalizationEngine& shared_engine() {
  static const LocalizationEngine engine({.seed = 2024});
  return engine;
}

// All codim vectors in lo..hi of length m adding up to `total`.
void for_each_assignment(int m, int lo, int hi, int total, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> v(m, lo);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == m) {
      if (left == 0) visit(v);
      return;
    }
    for (int c = lo; c <= hi && c <= left; ++c) {
      v[i] = c;
      rec(i + 1, left - c);
    }
  };
  rec(0, total);
}

// Descending multisets of codims in lo..hi with m entries adding up to total.
std::vector<std::vector<int>> multisets(int m, int lo, int hi, int total) {
  std::vector<std::vector<int>> out;
  std::vector<int> v;
  std::function<void(int, int)> rec = [&](int top, int left) {
    if (static_cast<int>(v.size()) == m) {
      if (left == 0) out.push_back(v);
      return;
    }
    for (int c = std::min(top, left); c >= lo; --c) {
      v.push_back(c);
      rec(c, left - c);
      v.pop_back();
    }
  };
  rec(hi, total);
  return out;
}

}  // namespace

TEST_CASE("conic example") {
  StrataCalculus calc(shared_engine());
  const auto tau2 = StableTree::from_edges({1, 1}, {{0, 1}}, {0, 0, 1});
  CHECK(calc.stratum_integral({3, tau2, {2, 3, 3}}) == 1);
  CHECK(calc.graph_count({3, tau2, {2, 3, 3}}) == 1);
  const auto tau4 = StableTree::from_edges({1, 1}, {{0, 1}}, {1, 0, 0});
  const auto tau5 = StableTree::from_edges({1, 1}, {{0, 1}}, {0, 0, 0});
  CHECK(calc.stratum_integral({3, tau4, {2, 3, 3}}) == 0);
  CHECK(calc.stratum_integral({3, tau5, {2, 3, 3}}) == 0);

  CHECK(calc.full_space_integral(3, 2, cond(3, {2, 3, 3})) == 2);
  CHECK(calc.single_vertex_closure_integral(3, 2, cond(3, {2, 3, 3})) == 0);
  CHECK(calc.single_vertex_closure_integral(3, 1, cond(3, {2, 3, 1})) == 1);

  std::multiset<std::string> values;
  for (const auto& term : calc.breakdown(3, 2, cond(3, {2, 3, 3}))) values.insert(to_string(term.value));
  CHECK(values == std::multiset<std::string>{"0", "0", "1", "1"});

  CHECK(calc.irreducible_count(3, 2, {1, 2}) == 0);
}

TEST_CASE("dimension filter") {
  StrataCalculus calc(shared_engine());
  std::vector<std::string> warnings;
  calc.set_diagnostics([&](const std::string& s) { warnings.push_back(s); });
  const auto tau2 = StableTree::from_edges({1, 1}, {{0, 1}}, {0, 0, 1});
  CHECK(calc.stratum_integral({3, tau2, {2, 2, 3}}) == 0);
  CHECK(calc.graph_count({3, tau2, {2, 2, 3}}) == 0);
  CHECK(calc.irreducible_count(3, 3, {6, 0}) == 0);
  CHECK(warnings.size() == 2);
  CHECK_THROWS_AS(calc.stratum_integral({3, tau2, {2, 3}}), DomainError);
}

TEST_CASE("degree one closure is the whole space") {
  StrataCalculus calc(shared_engine());
  for (const auto& c : multisets(4, 1, 3, 6)) {
    const auto conditions = cond(3, c);
    CHECK(calc.single_vertex_closure_integral(3, 1, conditions) == calc.full_space_integral(3, 1, conditions));
  }
}

TEST_CASE("twisted cubic row") {
  StrataCalculus calc(shared_engine());
  CHECK(calc.irreducible_count(3, 3, {1, 3}) == 3);
  CHECK(calc.irreducible_count(3, 3, {3, 2}) == 18);
  CHECK(calc.irreducible_count(3, 3, {5, 1}) == 132);
  CHECK(calc.irreducible_count(3, 3, {7, 0}) == 1080);
}

TEST_CASE("conics in P^5") {
  StrataCalculus calc(shared_engine());
  CHECK(calc.irreducible_count(5, 2, {11, 0, 0, 0}) == 27184);
  CHECK(calc.irreducible_count(5, 2, {4, 2, 1, 0}) == 100);
  CHECK(calc.irreducible_count(5, 2, {0, 0, 1, 2}) == 0);
}

// A contact conic spans a Legendrian plane. Through two general points there is
// none (they are not ω-orthogonal), while the full space sees the 2^3 line
// pairs pr ∪ qr meeting three codim-2 planes.
TEST_CASE("conics through two points of P^5") {
  StrataCalculus calc(shared_engine());
  CHECK(calc.full_space_integral(5, 2, cond(5, {5, 5, 2, 2, 2})) == 8);
  CHECK(calc.irreducible_count(5, 2, {3, 0, 0, 2}) == 0);
}

// Through p, meeting a line, a plane and two P^3: the Legendrian plane is forced
// through p, the point of the line ω-orthogonal to p and the point where the
// plane meets (p,x)^⊥; five points then fix the conic.
TEST_CASE("conic through a point meeting a line and a plane") {
  StrataCalculus calc(shared_engine());
  CHECK(calc.irreducible_count(5, 2, {2, 1, 1, 1}) == 1);
}

// Lines through p lie in the contact hyperplane at p.
TEST_CASE("contact lines through a point of P^5") {
  const auto& engine = shared_engine();
  CHECK(engine.gw_integral(5, 1, cond(5, {5, 4})) == 1);
  CHECK(engine.gw_integral(5, 1, cond(5, {5, 3, 2})) == 1);
  CHECK(engine.gw_integral(5, 1, cond(5, {5, 2, 2, 2})) == 1);
}

TEST_CASE("grouped and labelled sums agree") {
  StrataCalculus grouped(shared_engine());
  StrataCalculus labelled(shared_engine(), nullptr, {.grouped = false});
  for (const auto& c : multisets(7, 1, 3, 12)) {
    CAPTURE(cond(3, c).to_string());
    CHECK(grouped.single_vertex_closure_integral(3, 3, cond(3, c)) ==
          labelled.single_vertex_closure_integral(3, 3, cond(3, c)));
  }
  for (const auto& c : multisets(8, 2, 5, 19)) {
    CHECK(grouped.single_vertex_closure_integral(5, 2, cond(5, c)) ==
          labelled.single_vertex_closure_integral(5, 2, cond(5, c)));
  }
}

TEST_CASE("sum over Γ⁺ reproduces the full-space invariant") {
  StrataCalculus calc(shared_engine(), nullptr, {.grouped = false});
  for (const auto& [m, d] : std::vector<std::pair<int, int>>{{3, 2}, {7, 3}}) {
    const int dim = moduli_dim(3, d, m);
    for (const auto& c : multisets(m, 0, 3, dim)) {
      CAPTURE(cond(3, c).to_string());
      Rational sum = 0;
      for (const auto& cls : enumerate_stable_trees(m, d, true)) sum += calc.stratum_integral({3, cls.tree, c});
      CHECK(sum == calc.full_space_integral(3, d, cond(3, c)));
    }
  }
}

TEST_CASE("stratum values do not depend on the cut edge; nonzero strata are rigid") {
  StrataCalculus calc(shared_engine());
  int nonzero = 0;
  for (int m = 0; m <= 5; ++m)
    for (int d = 1; d <= 3; ++d)
      for (const auto& cls : enumerate_stable_trees(m, d, true)) {
        const auto& t = cls.tree;
        for_each_assignment(m, 1, 3, stratum_dim(3, t), [&](const std::vector<int>& codims) {
          const LabeledQuery q{3, t, codims};
          const Rational value = calc.stratum_integral(q);
          for (EdgeId e = 0; e < t.edge_count(); ++e) {
            CAPTURE(format_tree(t));
            CHECK(calc.stratum_integral_at_edge(q, e) == value);
          }
          if (value != 0) {
            ++nonzero;
            CHECK(automorphism_order(t) == 1);
          }
        });
      }
  CHECK(nonzero > 0);
}

TEST_CASE("canonical edge is independent of the numbering") {
  const auto t = lv_tree_tau1(5);
  const auto e = StrataCalculus::canonical_edge(t);
  const auto rep = canonical_representative(t);
  const auto e_rep = StrataCalculus::canonical_edge(rep);
  CHECK(canonical_key(glue(decompose_at_edge(t, e))) == canonical_key(t));
  auto halves = [](const StableTree& tree, EdgeId edge) {
    const auto parts = decompose_at_edge(tree, edge);
    return std::multiset<CanonicalKey>{canonical_key(parts.sigma), canonical_key(parts.sigma_prime)};
  };
  CHECK(halves(t, e) == halves(rep, e_rep));
}

TEST_CASE("trees of the plane-curve count") {
  StrataCalculus calc(shared_engine());
  for (int d = 3; d <= 6; ++d) {
    CAPTURE(d);
    const auto t1 = lv_tree_tau1(d), t2 = lv_tree_tau2(d);
    CHECK(is_stable_tree(t1));
    CHECK(is_stable_tree(t2));
    CHECK(codimension(t1) == d - 2);
    CHECK(codimension(t2) == d - 2);
    CHECK(stratum_dim(3, t1) == 2 * (d + 3));
    const std::vector<int> lines(d + 3, 2);
    CHECK(calc.graph_count({3, t1, lines}) == 4);
    CHECK(calc.graph_count({3, t2, lines}) == 8);
    CHECK(lv_recombination(d, 4, 8) == Rational(lv_closed_form(d)));
    CHECK(lv_closed_form(d) == 20 * d * binomial(d + 3, 5));
  }
  CHECK(lv_closed_form(1) == 0);
  CHECK(lv_closed_form(3) == 360);
  CHECK(lv_closed_form(4) == 1680);

  // cutting next to the three-leaf vertex splits off a degree-1 vertex with leaves {1,2,3,f}
  const auto t = lv_tree_tau1(4);
  const auto parts = decompose_at_edge(t, 0);
  CHECK(parts.sigma.vertex_count() == 1);
  CHECK(parts.sigma.total_degree() == 1);
  CHECK(parts.sigma_origin == std::vector<int>{1, 2, 3, 0});
}

TEST_CASE("contact potential coefficients") {
  StrataCalculus calc(shared_engine());
  CHECK(calc.potential_coefficient(3, 2, {0, 0, 1, 2}) == 2);
  CHECK(calc.potential_coefficient(3, 1, {0, 1, 1, 1}) == 1);
  CHECK(calc.potential_coefficient(3, 0, {0, 3, 0, 0}) == 1);
  CHECK(calc.potential_coefficient(3, 0, {0, 2, 0, 0}) == 0);
}

TEST_CASE("warm and cold caches agree") {
  auto memo = std::make_shared<MemoStore>();
  Rational cold, warm;
  {
    StrataCalculus calc(shared_engine(), memo);
    cold = calc.single_vertex_closure_integral(3, 3, cond(3, {3, 3, 2, 2, 2}));
  }
  auto reloaded = std::make_shared<MemoStore>();
  reloaded->merge_text(memo->serialize());
  CHECK(reloaded->serialize() == memo->serialize());
  {
    LocalizationEngine other({.seed = 77});
    StrataCalculus calc(other, reloaded);
    warm = calc.single_vertex_closure_integral(3, 3, cond(3, {3, 3, 2, 2, 2}));
  }
  CHECK(cold == 18);
  CHECK(warm == cold);
}
