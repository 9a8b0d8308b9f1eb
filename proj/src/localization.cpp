#include "contactcount/localization.hpp"

#include "contactcount/detail/canonical_tree.hpp"
#include "contactcount/errors.hpp"
#include "contactcount/parallel.hpp"
#include "contactcount/tree_enumeration.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace contactcount {

WeightVector sample_weights(int n, std::uint64_t seed, int d, int sample, int attempt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(d),
                    static_cast<std::uint32_t>(sample), static_cast<std::uint32_t>(attempt)};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<std::uint64_t> pick(1, std::uint64_t{1} << 31);
  std::set<std::uint64_t> used;
  WeightVector w;
  while (static_cast<int>(w.lambda.size()) <= n) {
    const auto x = pick(rng);
    if (used.insert(x).second) w.lambda.emplace_back(static_cast<unsigned long>(x));
  }
  return w;
}

int FixedGraph::degree() const { return std::accumulate(edge_degrees.begin(), edge_degrees.end(), 0); }

Integer FixedGraph::symmetry_factor() const {
  Integer out(static_cast<unsigned long>(automorphisms));
  for (int delta : edge_degrees) out *= delta;
  return out;
}

// ---------------------------------------------------------------------------
// local factors

namespace {

Rational lam(const WeightVector& w, int i) { return Rational(w.lambda.at(i)); }

void require_nonzero(const Rational& x) {
  if (x == 0) throw DegenerateWeightsError("zero denominator in a localization term");
}

// 1 / e(N) contribution of a degree-δ cover of the line p_i p_j.
Rational inverse_edge_factor(const WeightVector& w, int i, int j, int delta) {
  const int n = static_cast<int>(w.lambda.size()) - 1;
  const Rational li = lam(w, i), lj = lam(w, j);
  Rational den = power(Rational(li - lj) / delta, 2u * delta);
  den *= factorial(static_cast<unsigned>(delta)) * factorial(static_cast<unsigned>(delta));
  if (delta % 2) den = -den;
  for (int k = 0; k <= n; ++k) {
    if (k == i || k == j) continue;
    const Rational lk = lam(w, k);
    for (int a = 0; a <= delta; ++a) den *= Rational(a * li + (delta - a) * lj) / delta - lk;
  }
  require_nonzero(den);
  return 1 / den;
}

Rational contact_edge_factor(const WeightVector& w, int i, int j, int delta) {
  const Rational li = lam(w, i), lj = lam(w, j);
  Rational out = 1;
  for (int a = 1; a < 2 * delta; ++a) out *= Rational(a * li + (2 * delta - a) * lj) / delta;
  return out;
}

// e(T_{p_i} P^n)
Rational tangent_weight(const WeightVector& w, int i) {
  Rational out = 1;
  const Rational li = lam(w, i);
  for (int k = 0; k < static_cast<int>(w.lambda.size()); ++k)
    if (k != i) out *= li - lam(w, k);
  return out;
}

struct VertexData {
  Rational inverse_omega_product = 1;  // ∏ 1/ω_F over edge flags
  Rational psi_sum = 0;                // S_v = Σ 1/ω_F
  int edge_valence = 0;
};

std::vector<VertexData> vertex_data(int k, const std::vector<std::pair<int, int>>& edges,
                                    const std::vector<int>& colour, const std::vector<int>& degrees,
                                    const WeightVector& w) {
  std::vector<VertexData> out(k);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [u, v] = edges[e];
    for (const auto& [here, there] : {std::pair{u, v}, std::pair{v, u}}) {
      const Rational inv_omega = Rational(degrees[e]) / (lam(w, colour[here]) - lam(w, colour[there]));
      out[here].inverse_omega_product *= inv_omega;
      out[here].psi_sum += inv_omega;
      ++out[here].edge_valence;
    }
  }
  return out;
}

// Everything except the mark terms; a vertex contributes
// e(T)^{valE-1} ∏ω⁻¹ S^{valE-3} (and (2λ)^{valE-1} when twisted).
Rational unmarked_weight(const std::vector<std::pair<int, int>>& edges, const std::vector<int>& colour,
                         const std::vector<int>& degrees, const std::vector<VertexData>& vd,
                         const WeightVector& w, Twist twist) {
  Rational out = 1;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const int i = colour[edges[e].first], j = colour[edges[e].second];
    out *= inverse_edge_factor(w, i, j, degrees[e]);
    if (twist == Twist::contact) out *= contact_edge_factor(w, i, j, degrees[e]);
  }
  for (std::size_t v = 0; v < vd.size(); ++v) {
    const int val = vd[v].edge_valence;
    out *= power(tangent_weight(w, colour[v]), val - 1);
    out *= vd[v].inverse_omega_product;
    out *= power(vd[v].psi_sum, val - 3);
    if (twist == Twist::contact) out *= power(Rational(2 * lam(w, colour[v])), val - 1);
  }
  return out;
}

// Vertex permutations of a shape that preserve its edges.
std::vector<std::vector<int>> shape_automorphisms(int k, const std::vector<std::pair<int, int>>& edges) {
  std::set<std::pair<int, int>> edge_set;
  for (auto [a, b] : edges) edge_set.insert(std::minmax(a, b));
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    bool ok = true;
    for (auto [a, b] : edges)
      if (!edge_set.count(std::minmax(p[a], p[b]))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

template <typename Visit>
void for_each_composition(int total, int parts, Visit&& visit) {
  std::vector<int> current(parts, 1);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == parts - 1) {
      current[i] = 1 + left;
      visit(current);
      return;
    }
    for (int x = 0; x <= left; ++x) {
      current[i] = 1 + x;
      rec(i + 1, left - x);
    }
  };
  if (parts == 0) {
    if (total == 0) visit(current);
    return;
  }
  if (total >= parts) rec(0, total - parts);
}

// Proper colourings of a tree with colours 0..n, vertices taken in BFS order.
template <typename Visit>
void for_each_colouring(int k, const std::vector<std::pair<int, int>>& edges, int n, Visit&& visit) {
  std::vector<std::vector<int>> adj(k);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> order{0}, parent(k, -1);
  std::vector<char> seen(k, 0);
  seen[0] = 1;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int w : adj[order[i]])
      if (!seen[w]) {
        seen[w] = 1;
        parent[w] = order[i];
        order.push_back(w);
      }
  std::vector<int> colour(k, -1);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == k) {
      visit(colour);
      return;
    }
    const int v = order[pos];
    for (int c = 0; c <= n; ++c) {
      if (parent[v] >= 0 && colour[parent[v]] == c) continue;
      colour[v] = c;
      rec(pos + 1);
    }
  };
  rec(0);
}

}  // namespace

// ---------------------------------------------------------------------------
// fixed graphs

void for_each_fixed_graph(int n, int d, int m, const std::function<void(const FixedGraph&)>& visit) {
  if (d < 1) throw DomainError("fixed graphs need d >= 1");
  for (int k = 2; k <= d + 1; ++k) {
    for (const auto& edges : free_trees(k)) {
      const auto autos = shape_automorphisms(k, edges);
      std::map<std::pair<int, int>, int> edge_index;
      for (std::size_t e = 0; e < edges.size(); ++e)
        edge_index[std::minmax(edges[e].first, edges[e].second)] = static_cast<int>(e);

      for_each_composition(d, k - 1, [&](const std::vector<int>& degrees) {
        for_each_colouring(k, edges, n, [&](const std::vector<int>& colour) {
          std::vector<int> marks(m, 0);
          std::function<void(int)> place = [&](int i) {
            if (i < m) {
              for (int v = 0; v < k; ++v) {
                marks[i] = v;
                place(i + 1);
              }
              return;
            }
            // keep the lexicographically least decoration of each orbit
            std::vector<int> mine = colour;
            mine.insert(mine.end(), degrees.begin(), degrees.end());
            mine.insert(mine.end(), marks.begin(), marks.end());
            std::uint64_t stabiliser = 0;
            std::vector<int> image(mine.size());
            for (const auto& g : autos) {
              for (int v = 0; v < k; ++v) image[g[v]] = colour[v];
              for (std::size_t e = 0; e < edges.size(); ++e)
                image[k + edge_index.at(std::minmax(g[edges[e].first], g[edges[e].second]))] = degrees[e];
              for (int j = 0; j < m; ++j) image[k + (k - 1) + j] = g[marks[j]];
              if (image < mine) return;
              if (image == mine) ++stabiliser;
            }
            FixedGraph graph;
            graph.vertex_count = k;
            graph.edges = edges;
            graph.vertex_labels = colour;
            graph.edge_degrees = degrees;
            graph.mark_vertex = marks;
            graph.automorphisms = stabiliser;
            visit(graph);
          };
          place(0);
        });
      });
    }
  }
}

std::vector<FixedGraph> enumerate_fixed_graphs(int n, int d, int m) {
  std::vector<FixedGraph> out;
  for_each_fixed_graph(n, d, m, [&](const FixedGraph& g) { out.push_back(g); });
  return out;
}

int contact_class_rank(const FixedGraph& g) {
  int rank = 0;
  for (int delta : g.edge_degrees) rank += 2 * delta - 1;
  std::vector<int> valence(g.vertex_count, 0);
  for (auto [a, b] : g.edges) {
    ++valence[a];
    ++valence[b];
  }
  for (int v : valence) rank += v - 1;
  return rank;
}

Rational contact_class_factor(const FixedGraph& g, const WeightVector& w) {
  Rational out = 1;
  std::vector<int> valence(g.vertex_count, 0);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto [a, b] = g.edges[e];
    out *= contact_edge_factor(w, g.vertex_labels[a], g.vertex_labels[b], g.edge_degrees[e]);
    ++valence[a];
    ++valence[b];
  }
  for (int v = 0; v < g.vertex_count; ++v) out *= power(Rational(2 * lam(w, g.vertex_labels[v])), valence[v] - 1);
  return out;
}

Rational graph_contribution(const FixedGraph& g, const WeightVector& w, const std::vector<int>& mark_codims,
                            Twist twist) {
  if (mark_codims.size() != g.mark_vertex.size()) throw DomainError("graph_contribution: mark count mismatch");
  const auto vd = vertex_data(g.vertex_count, g.edges, g.vertex_labels, g.edge_degrees, w);
  Rational out = 1;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const int i = g.vertex_labels[g.edges[e].first], j = g.vertex_labels[g.edges[e].second];
    out *= inverse_edge_factor(w, i, j, g.edge_degrees[e]);
  }
  if (twist == Twist::contact) out *= contact_class_factor(g, w);
  std::vector<int> marks_at(g.vertex_count, 0);
  for (int v : g.mark_vertex) ++marks_at[v];
  for (int v = 0; v < g.vertex_count; ++v) {
    const int val_e = vd[v].edge_valence;
    out *= power(tangent_weight(w, g.vertex_labels[v]), val_e - 1);
    out *= vd[v].inverse_omega_product;
    out *= power(vd[v].psi_sum, val_e + marks_at[v] - 3);
  }
  for (std::size_t i = 0; i < mark_codims.size(); ++i)
    out *= power(lam(w, g.vertex_labels[g.mark_vertex[i]]), static_cast<unsigned>(mark_codims[i]));
  return out / Rational(g.symmetry_factor());
}

// ---------------------------------------------------------------------------
// tables

LocalizationTable::LocalizationTable(int n, int d, const WeightVector& w, Twist twist, unsigned threads)
    : n_(n), d_(d), weights_(w), threads_(threads) {
  if (d < 1) throw DomainError("localization needs d >= 1");
  if (static_cast<int>(w.lambda.size()) != n + 1) throw DomainError("weight vector has the wrong length");
  for (int k = 2; k <= d + 1; ++k) {
    for (const auto& edges : free_trees(k)) {
      const auto shape_aut = static_cast<unsigned long>(shape_automorphisms(k, edges).size());
      for_each_composition(d, k - 1, [&](const std::vector<int>& degrees) {
        Integer weight(shape_aut);
        for (int delta : degrees) weight *= delta;
        for_each_colouring(k, edges, n, [&](const std::vector<int>& colour) {
          const auto vd = vertex_data(k, edges, colour, degrees, w);
          Entry entry;
          entry.base = unmarked_weight(edges, colour, degrees, vd, w, twist) / Rational(weight);
          entry.mark_sum.assign(n + 1, Rational(0));
          for (int v = 0; v < k; ++v) {
            Rational term = vd[v].psi_sum;
            const Rational lv = lam(w, colour[v]);
            for (int c = 0; c <= n; ++c) {
              entry.mark_sum[c] += term;
              term *= lv;
            }
          }
          entries_.push_back(std::move(entry));
        });
      });
    }
  }
}

Rational LocalizationTable::integral(const ConditionMultiset& conditions) const {
  if (conditions.ambient() != n_) throw DomainError("condition ambient dimension does not match the table");
  return integral(conditions.counts());
}

Rational LocalizationTable::integral(const std::vector<int>& counts) const {
  if (static_cast<int>(counts.size()) > n_ + 1) throw DomainError("codimension exceeds n");
  return parallel_sum<Rational>(entries_.size(), threads_, [&](std::size_t i) {
    const Entry& e = entries_[i];
    Rational term = e.base;
    for (std::size_t c = 0; c < counts.size(); ++c)
      if (counts[c]) term *= power(e.mark_sum[c], static_cast<unsigned>(counts[c]));
    return term;
  });
}

// ---------------------------------------------------------------------------
// engine

namespace {
constexpr int max_attempts = 16;
}

LocalizationEngine::LocalizationEngine(EngineOptions options) : options_(options) {
  if (options_.threads < 1) throw DomainError("thread count must be at least 1");
}

const LocalizationTable& LocalizationEngine::table(int n, int d, int sample) const {
  std::lock_guard<std::mutex> lock(mutex_);
  const auto key = std::make_tuple(n, d, sample);
  if (auto it = tables_.find(key); it != tables_.end()) return *it->second;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    try {
      auto t = std::make_shared<const LocalizationTable>(
          n, d, sample_weights(n, options_.seed, d, sample, attempt), options_.twist, options_.threads);
      return *tables_.emplace(key, std::move(t)).first->second;
    } catch (const DegenerateWeightsError&) {
    }
  }
  throw VerificationError("degenerate weights persisted after " + std::to_string(max_attempts) + " samples (n=" +
                          std::to_string(n) + ", d=" + std::to_string(d) + ")");
}

Rational LocalizationEngine::evaluate(int n, int d, const ConditionMultiset& conditions, int sample) const {
  return table(n, d, sample).integral(conditions);
}

Integer LocalizationEngine::gw_integral(int n, int d, const ConditionMultiset& conditions) const {
  if (d < 1) throw DomainError("gw_integral needs d >= 1");
  if (conditions.ambient() != n) throw DomainError("conditions live in a different P^n");
  if (conditions.total_codim() != moduli_dim(n, d, conditions.size())) return 0;

  const Rational first = evaluate(n, d, conditions, 0);
  if (options_.verify) {
    const Rational second = evaluate(n, d, conditions, 1);
    if (first != second)
      throw VerificationError("weight dependence detected for G(" + std::to_string(n) + "," + std::to_string(d) +
                              ",{" + conditions.to_string() + "}): " + to_string(first) + " vs " +
                              to_string(second));
  }
  if (!is_integer(first))
    throw VerificationError("non-integral invariant G(" + std::to_string(n) + "," + std::to_string(d) + ",{" +
                            conditions.to_string() + "}) = " + to_string(first));
  return first.get_num();
}

Rational LocalizationEngine::integral_by_enumeration(int n, int d, const std::vector<int>& mark_codims,
                                                     const WeightVector& w) const {
  Rational total = 0;
  for_each_fixed_graph(n, d, static_cast<int>(mark_codims.size()),
                       [&](const FixedGraph& g) { total += graph_contribution(g, w, mark_codims, options_.twist); });
  return total;
}

std::size_t LocalizationEngine::locus_count(int n, int d) const { return table(n, d, 0).locus_count(); }

}  // namespace contactcount
