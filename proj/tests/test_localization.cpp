#include "contactcount/errors.hpp"
#include "contactcount/localization.hpp"

#include <doctest.h>

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <random>
#include <set>

using namespace contactcount;

namespace {

ConditionMultiset cond(int n, std::vector<int> c) { return ConditionMultiset(n, std::move(c)); }

WeightVector weights(std::vector<long> xs) {
  WeightVector w;
  for (long x : xs) w.lambda.emplace_back(x);
  return w;
}

// Decorated trees with at most three vertices, deduplicated by trying every
// vertex permutation.
struct SmallGraph {
  std::vector<int> colour;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> degree;  // per edge
  std::vector<int> marks;
};

std::vector<int> brute_canonical(const SmallGraph& g, const std::vector<int>& perm) {
  const int k = static_cast<int>(g.colour.size());
  std::vector<int> out(k);
  for (int v = 0; v < k; ++v) out[perm[v]] = g.colour[v];
  std::vector<std::array<int, 3>> es;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const int a = perm[g.edges[e].first], b = perm[g.edges[e].second];
    es.push_back({std::min(a, b), std::max(a, b), g.degree[e]});
  }
  std::sort(es.begin(), es.end());
  for (const auto& e : es) out.insert(out.end(), e.begin(), e.end());
  for (int v : g.marks) out.push_back(perm[v]);
  return out;
}

// (number of classes, Σ 1/a_Γ over classes)
std::pair<std::size_t, Rational> brute_fixed_graphs(int n, int d, int m) {
  std::set<std::vector<int>> classes;
  Rational inverse_sum = 0;
  auto consider = [&](const SmallGraph& g) {
    const int k = static_cast<int>(g.colour.size());
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best;
    int stabiliser = 0;
    const auto self = brute_canonical(g, perm);
    do {
      const auto c = brute_canonical(g, perm);
      if (best.empty() || c < best) best = c;
      if (c == self) ++stabiliser;
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (classes.insert(best).second) {
      int prod = stabiliser;
      for (int x : g.degree) prod *= x;
      inverse_sum += make_rational(1, prod);
    }
  };
  const std::vector<std::vector<std::pair<int, int>>> shapes2{{{0, 1}}};
  const std::vector<std::vector<std::pair<int, int>>> shapes3{{{0, 1}, {1, 2}}, {{0, 1}, {0, 2}}, {{0, 2}, {1, 2}}};
  for (int k = 2; k <= std::min(3, d + 1); ++k)
    for (const auto& edges : (k == 2 ? shapes2 : shapes3)) {
      std::vector<int> degree(k - 1, 1);
      std::function<void(int, int)> degs = [&](int e, int left) {
        if (e == k - 1) {
          if (left) return;
          std::vector<int> colour(k);
          std::function<void(int)> col = [&](int v) {
            if (v == k) {
              for (auto [a, b] : edges)
                if (colour[a] == colour[b]) return;
              std::vector<int> marks(m);
              std::function<void(int)> mk = [&](int i) {
                if (i == m) {
                  consider({colour, edges, degree, marks});
                  return;
                }
                for (int v2 = 0; v2 < k; ++v2) {
                  marks[i] = v2;
                  mk(i + 1);
                }
              };
              mk(0);
              return;
            }
            for (int c = 0; c <= n; ++c) {
              colour[v] = c;
              col(v + 1);
            }
          };
          col(0);
          return;
        }
        for (int x = 1; x <= left; ++x) {
          degree[e] = x;
          degs(e + 1, left - x);
        }
      };
      degs(0, d);
    }
  return {classes.size(), inverse_sum};
}

// Kontsevich's recursion for plane rational curves through 3d-1 points.
Integer kontsevich(int d) {
  std::vector<Integer> N(d + 1, 0);
  N[1] = 1;
  for (int e = 2; e <= d; ++e)
    for (int a = 1; a < e; ++a) {
      const int b = e - a;
      N[e] += N[a] * N[b] * a * a * b * (b * binomial(3 * e - 4, 3 * a - 2) - a * binomial(3 * e - 4, 3 * a - 1));
    }
  return N[d];
}

// Lines in P^3 meeting three general lines and isotropic for the standard
// symplectic form: parametrise p on the first line, let q be the point where
// the line through p meeting the second line hits the third, and count the
// roots of ω(p, q), a binary quadratic form.
int contact_lines_through_three_lines(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> coord(-50, 50);
  auto vec = [&] {
    std::array<Integer, 4> v;
    for (auto& x : v) x = coord(rng);
    return v;
  };
  const auto a = vec(), b = vec(), u = vec(), v = vec(), c = vec(), e = vec();
  auto det4 = [](const std::array<std::array<Integer, 4>, 4>& m) {
    Integer total = 0;
    std::array<int, 4> p{0, 1, 2, 3};
    do {
      int inversions = 0;
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
          if (p[i] > p[j]) ++inversions;
      Integer term = inversions % 2 ? -1 : 1;
      for (int i = 0; i < 4; ++i) term *= m[i][p[i]];
      total += term;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
  };
  auto omega = [](const std::array<Integer, 4>& x, const std::array<Integer, 4>& y) {
    return Integer(x[0] * y[1] - x[1] * y[0] + x[2] * y[3] - x[3] * y[2]);
  };
  // ω(p(s), q(s)) at p = s0·a + s1·b is a quadratic form; sample it at three points.
  auto value = [&](long s0, long s1) {
    std::array<Integer, 4> p;
    for (int i = 0; i < 4; ++i) p[i] = s0 * a[i] + s1 * b[i];
    const Integer dc = det4({p, u, v, c});
    const Integer de = det4({p, u, v, e});
    std::array<Integer, 4> q;
    for (int i = 0; i < 4; ++i) q[i] = de * c[i] - dc * e[i];
    return omega(p, q);
  };
  // f(s0,s1) = α s0² + β s0 s1 + γ s1²
  const Integer alpha = value(1, 0), gamma = value(0, 1);
  const Integer beta = value(1, 1) - alpha - gamma;
  if (alpha == 0 && beta == 0 && gamma == 0) return -1;  // not general
  const Integer disc = beta * beta - 4 * alpha * gamma;
  return disc == 0 ? 1 : 2;
}

}  // namespace

TEST_CASE("weights are distinct, in range, and reproducible") {
  const auto w = sample_weights(5, 42, 2, 0, 0);
  REQUIRE(w.lambda.size() == 6);
  std::set<std::string> seen;
  for (const auto& x : w.lambda) {
    CHECK(x >= 1);
    CHECK(x <= Integer(1UL << 31));
    seen.insert(x.get_str());
  }
  CHECK(seen.size() == 6);
  CHECK(sample_weights(5, 42, 2, 0, 0).lambda == w.lambda);
  CHECK(sample_weights(5, 42, 2, 1, 0).lambda != w.lambda);
  CHECK(sample_weights(5, 43, 2, 0, 0).lambda != w.lambda);
}

TEST_CASE("fixed graphs for lines in P^3") {
  // unordered pairs of distinct fixed points; the endpoint swap is not a
  // symmetry of the decorated graph since the endpoints carry different labels
  const auto graphs = enumerate_fixed_graphs(3, 1, 0);
  CHECK(graphs.size() == 6);
  for (const auto& g : graphs) CHECK(g.symmetry_factor() == 1);
}

TEST_CASE("fixed graph classes agree with permutation search") {
  for (const auto& [n, d, m] : std::vector<std::array<int, 3>>{{3, 1, 0}, {3, 2, 0}, {5, 2, 0}, {3, 1, 2}, {3, 2, 1}, {1, 2, 2}}) {
    CAPTURE(n);
    CAPTURE(d);
    CAPTURE(m);
    const auto [count, inverse_sum] = brute_fixed_graphs(n, d, m);
    const auto graphs = enumerate_fixed_graphs(n, d, m);
    CHECK(graphs.size() == count);
    Rational mine = 0;
    for (const auto& g : graphs) {
      mine += 1 / Rational(g.symmetry_factor());
      for (std::size_t e = 0; e < g.edges.size(); ++e)
        CHECK(g.vertex_labels[g.edges[e].first] != g.vertex_labels[g.edges[e].second]);
      CHECK(g.degree() == d);
    }
    CHECK(mine == inverse_sum);
  }
}

TEST_CASE("contact class factor has rank 2d-1") {
  const auto w = weights({3, 7, 11, 19});
  auto doubled = w;
  for (auto& x : doubled.lambda) x *= 2;
  for (int d = 1; d <= 4; ++d)
    for (const auto& g : enumerate_fixed_graphs(3, d, 0)) {
      CHECK(contact_class_rank(g) == 2 * d - 1);
      CHECK(contact_class_factor(g, doubled) == contact_class_factor(g, w) * power(Rational(2), 2 * d - 1));
    }
}

TEST_CASE("a codim-0 mark restricts to 1") {
  const auto w = weights({5, 13, 29, 41});
  for (const auto& g : enumerate_fixed_graphs(3, 2, 2)) {
    const Rational lv = Rational(w.lambda[g.vertex_labels[g.mark_vertex[1]]]);
    CHECK(graph_contribution(g, w, {2, 0}) == graph_contribution(g, w, {2, 3}) / power(lv, 3u));
  }
}

TEST_CASE("base-case invariants") {
  LocalizationEngine engine;
  CHECK(engine.gw_integral(3, 1, cond(3, {2, 3, 1})) == 1);
  CHECK(engine.gw_integral(3, 1, cond(3, {3, 2})) == 1);
  CHECK(engine.gw_integral(3, 2, cond(3, {2, 3, 3})) == 2);
  CHECK(engine.gw_integral(3, 2, cond(3, {2, 2})) == 0);  // dimension filter
}

TEST_CASE("contact lines meeting three lines") {
  std::mt19937_64 rng(11);
  int roots = -1;
  for (int tries = 0; tries < 10 && roots != 2; ++tries) roots = contact_lines_through_three_lines(rng);
  REQUIRE(roots == 2);
  LocalizationEngine engine;
  CHECK(engine.gw_integral(3, 1, cond(3, {2, 2, 2})) == roots);
}

TEST_CASE("classical invariants without the contact twist") {
  const auto w2 = weights({2, 9, 31});
  for (int d = 1; d <= 3; ++d) {
    LocalizationTable plane(2, d, w2, Twist::none, 1);
    CHECK(plane.integral(std::vector<int>{0, 0, 3 * d - 1}) == Rational(kontsevich(d)));
  }
  LocalizationTable space(3, 1, weights({2, 9, 31, 70}), Twist::none, 1);
  CHECK(space.integral(std::vector<int>{0, 0, 4}) == 2);
}

TEST_CASE("factorised tables agree with the explicit graph sum") {
  const auto w = weights({4, 17, 23, 58});
  LocalizationEngine engine;
  for (const auto& [d, codims] : std::vector<std::pair<int, std::vector<int>>>{
           {1, {2, 3, 1}}, {1, {3, 2}}, {2, {2, 3, 3}}, {2, {3, 2, 3}}, {2, {1, 1}}, {1, {2, 2, 2}}, {3, {3, 3, 3, 2}}}) {
    CAPTURE(d);
    LocalizationTable table(3, d, w, Twist::contact, 1);
    std::vector<int> counts(4, 0);
    for (int c : codims) ++counts[c];
    CHECK(table.integral(counts) == engine.integral_by_enumeration(3, d, codims, w));
  }
  const auto w5 = weights({4, 17, 23, 58, 91, 130});
  LocalizationTable t5(5, 2, w5, Twist::contact, 1);
  CHECK(t5.integral(std::vector<int>{0, 0, 1, 2, 1}) == engine.integral_by_enumeration(5, 2, {4, 3, 2, 3}, w5));
}

TEST_CASE("two weight samples and thread counts give the same numbers") {
  LocalizationEngine one({.seed = 1, .threads = 1});
  LocalizationEngine three({.seed = 99, .threads = 3});
  for (const auto& c : {cond(3, {3, 3, 3, 2}), cond(3, {2, 2, 2, 2, 2, 2, 2}), cond(3, {3, 3, 2, 2, 2})}) {
    CHECK(one.evaluate(3, 3, c, 0) == one.evaluate(3, 3, c, 1));
    CHECK(one.evaluate(3, 3, c, 0) == three.evaluate(3, 3, c, 0));
    CHECK(one.gw_integral(3, 3, c) == three.gw_integral(3, 3, c));
  }
  const auto w = sample_weights(3, 5, 3, 0, 0);
  const auto c = cond(3, {3, 3, 2, 2, 2});
  CHECK(LocalizationTable(3, 3, w, Twist::contact, 1).integral(c) ==
        LocalizationTable(3, 3, w, Twist::contact, 4).integral(c));
}
