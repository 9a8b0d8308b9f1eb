#include "contactcount/strata.hpp"

#include "contactcount/errors.hpp"
#include "contactcount/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <queue>
#include <sstream>

namespace contactcount {

StrataCalculus::StrataCalculus(const LocalizationEngine& engine, std::shared_ptr<MemoStore> memo)
    : StrataCalculus(engine, std::move(memo), Options{}) {}

StrataCalculus::StrataCalculus(const LocalizationEngine& engine, std::shared_ptr<MemoStore> memo, Options options)
    : engine_(engine), memo_(memo ? std::move(memo) : std::make_shared<MemoStore>()), options_(options) {}

void StrataCalculus::warn(const std::string& message) const {
  if (diagnostics_) diagnostics_("warning: " + message);
}

namespace {

void check_query(const LabeledQuery& q) {
  const auto problems = validate(q.tree);
  if (!problems.empty()) throw InvalidTreeError("not a stable tree: " + problems.front().message);
  if (static_cast<int>(q.leaf_codims.size()) != q.tree.marks())
    throw DomainError("query has " + std::to_string(q.leaf_codims.size()) + " conditions for " +
                      std::to_string(q.tree.marks()) + " leaves");
  for (int c : q.leaf_codims)
    if (c < 0 || c > q.n) throw DomainError("codimension " + std::to_string(c) + " outside 0.." + std::to_string(q.n));
}

int total(const std::vector<int>& xs) { return std::accumulate(xs.begin(), xs.end(), 0); }

std::vector<int> eccentricities(const StableTree& tree) {
  const auto adj = tree.adjacency();
  const int k = tree.vertex_count();
  std::vector<int> out(k, 0);
  for (int s = 0; s < k; ++s) {
    std::vector<int> dist(k, -1);
    std::queue<int> todo;
    dist[s] = 0;
    todo.push(s);
    while (!todo.empty()) {
      const int v = todo.front();
      todo.pop();
      out[s] = std::max(out[s], dist[v]);
      for (int w : adj[v])
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          todo.push(w);
        }
    }
  }
  return out;
}

std::string describe(int n, int d, const ConditionMultiset& c) {
  return "(n=" + std::to_string(n) + ", d=" + std::to_string(d) + ", {" + c.to_string() + "})";
}

}  // namespace

EdgeId StrataCalculus::canonical_edge(const StableTree& tree) {
  if (tree.edge_count() == 0) throw DomainError("a single-vertex tree has no edge to cut");
  const auto rep = canonical_representative(tree);
  const auto ecc = eccentricities(rep);
  const int worst = *std::max_element(ecc.begin(), ecc.end());
  const auto rep_edges = rep.edges();
  std::pair<int, int> chosen{-1, -1};
  for (const auto& [f, g] : rep_edges) {
    const int a = rep.flag_vertex(f), b = rep.flag_vertex(g);
    if (ecc[a] == worst || ecc[b] == worst) {
      chosen = {a, b};
      break;
    }
  }
  // translate back: rep vertex r is the input vertex of canonical rank r
  const auto rank = canonical_vertex_rank(tree);
  const auto edges = tree.edges();
  for (EdgeId e = 0; e < static_cast<EdgeId>(edges.size()); ++e) {
    const int a = rank[tree.flag_vertex(edges[e].first)], b = rank[tree.flag_vertex(edges[e].second)];
    if (std::minmax(a, b) == std::minmax(chosen.first, chosen.second)) return e;
  }
  throw InvalidTreeError("canonical edge not found");
}

Rational StrataCalculus::full_space_integral(int n, int d, const ConditionMultiset& conditions) const {
  const auto key = MemoKey::make(MemoKind::full_space, d, conditions);
  if (auto hit = memo_->find(key)) return *hit;
  const auto start = std::chrono::steady_clock::now();
  const Rational value(engine_.gw_integral(n, d, conditions));
  memo_->insert(key, value);
  if (diagnostics_) {
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    std::ostringstream msg;
    msg << "G" << describe(n, d, conditions) << " = " << to_string(value) << " over "
        << engine_.locus_count(n, d) << " fixed loci in " << took.count() << " s";
    diagnostics_(msg.str());
  }
  return value;
}

Rational StrataCalculus::single_vertex_closure_integral(int n, int d, const ConditionMultiset& conditions) const {
  if (conditions.ambient() != n) throw DomainError("conditions live in a different P^n");
  if (d < 0) throw DomainError("negative degree");
  if (d == 0) return degree_zero_integral(n, conditions);
  if (conditions.total_codim() != moduli_dim(n, d, conditions.size())) return 0;

  const auto key = MemoKey::make(MemoKind::single_vertex, d, conditions);
  if (auto hit = memo_->find(key)) return *hit;
  Rational value = full_space_integral(n, d, conditions);
  if (d >= 2) value -= tree_sum(n, d, conditions);
  memo_->insert(key, value);
  return value;
}

const std::vector<TypedTreeClass>& StrataCalculus::typed_classes(const std::vector<int>& colours, int d) const {
  std::lock_guard<std::mutex> lock(enumeration_mutex_);
  const auto key = std::make_pair(colours, d);
  auto it = typed_cache_.find(key);
  if (it == typed_cache_.end()) it = typed_cache_.emplace(key, enumerate_typed_trees(colours, d, true)).first;
  return it->second;
}

const std::vector<TreeClass>& StrataCalculus::labelled_classes(int m, int d) const {
  std::lock_guard<std::mutex> lock(enumeration_mutex_);
  const auto key = std::make_pair(m, d);
  auto it = labelled_cache_.find(key);
  if (it == labelled_cache_.end()) it = labelled_cache_.emplace(key, enumerate_stable_trees(m, d, true)).first;
  return it->second;
}

// Σ over τ ∈ Γ(m,d)⁺ ∖ {τ_v} of the stratum integrals.
Rational StrataCalculus::tree_sum(int n, int d, const ConditionMultiset& conditions) const {
  const auto& codims = conditions.codims();
  const unsigned threads = engine_.options().threads;
  if (options_.grouped) {
    const auto& classes = typed_classes(codims, d);
    return parallel_sum<Rational>(classes.size(), threads, [&](std::size_t i) -> Rational {
      const auto& cls = classes[i];
      if (cls.tree.vertex_count() == 1) return 0;
      return Rational(cls.labelled_classes) * stratum_integral({n, cls.tree, codims});
    });
  }
  const auto& classes = labelled_classes(conditions.size(), d);
  return parallel_sum<Rational>(classes.size(), threads, [&](std::size_t i) -> Rational {
    const auto& cls = classes[i];
    if (cls.tree.vertex_count() == 1) return 0;
    return stratum_integral({n, cls.tree, codims});
  });
}

Rational StrataCalculus::stratum_integral(const LabeledQuery& q) const {
  check_query(q);
  if (total(q.leaf_codims) != stratum_dim(q.n, q.tree)) return 0;
  if (q.tree.vertex_count() == 1)
    return single_vertex_closure_integral(q.n, q.tree.total_degree(), ConditionMultiset(q.n, q.leaf_codims));
  return stratum_integral_at_edge(q, canonical_edge(q.tree));
}

Rational StrataCalculus::stratum_integral_at_edge(const LabeledQuery& q, EdgeId edge) const {
  check_query(q);
  if (total(q.leaf_codims) != stratum_dim(q.n, q.tree)) return 0;
  const auto parts = decompose_at_edge(q.tree, edge);

  auto inherit = [&](const std::vector<int>& origin) {
    std::vector<int> codims;
    for (std::size_t i = 0; i + 1 < origin.size(); ++i) codims.push_back(q.leaf_codims[origin[i] - 1]);
    codims.push_back(0);  // the cut leaf, filled in per diagonal term
    return codims;
  };
  LabeledQuery left{q.n, parts.sigma, inherit(parts.sigma_origin)};
  LabeledQuery right{q.n, parts.sigma_prime, inherit(parts.sigma_prime_origin)};
  const int left_fixed = total(left.leaf_codims);
  const int left_dim = stratum_dim(q.n, parts.sigma);
  const int right_fixed = total(right.leaf_codims);
  const int right_dim = stratum_dim(q.n, parts.sigma_prime);

  Rational sum = 0;
  for (const auto& [left_codim, right_codim] : diagonal_split(q.n)) {
    // only the term matching both dimensions can be nonzero
    if (left_fixed + left_codim != left_dim || right_fixed + right_codim != right_dim) continue;
    left.leaf_codims.back() = left_codim;
    right.leaf_codims.back() = right_codim;
    const Rational a = stratum_integral(left);
    if (a == 0) continue;
    sum += a * stratum_integral(right);
  }
  if (sum == 0) return 0;
  const Rational prefactor = make_rational(
      Integer(std::to_string(automorphism_order(parts.sigma) * automorphism_order(parts.sigma_prime))),
      Integer(std::to_string(automorphism_order(q.tree))));
  return prefactor * sum;
}

Rational StrataCalculus::graph_count(const LabeledQuery& q) const {
  check_query(q);
  if (total(q.leaf_codims) != stratum_dim(q.n, q.tree)) {
    warn("conditions add up to codim " + std::to_string(total(q.leaf_codims)) + " but the stratum has dimension " +
         std::to_string(stratum_dim(q.n, q.tree)));
    return 0;
  }
  return stratum_integral(q);
}

Integer StrataCalculus::irreducible_count(int n, int d, const std::vector<int>& a) const {
  return irreducible_count(d, ConditionMultiset::from_counts(n, a, 2));
}

Integer StrataCalculus::irreducible_count(int d, const ConditionMultiset& conditions) const {
  const int n = conditions.ambient();
  const int m = conditions.size();
  if (d == 0 && m < 3) {
    warn("degree 0 needs at least three conditions");
    return 0;
  }
  const int dim = moduli_dim(n, d, m);
  if (conditions.total_codim() != dim) {
    warn("conditions " + describe(n, d, conditions) + " have total codim " + std::to_string(conditions.total_codim()) +
         ", expected " + std::to_string(dim));
    return 0;
  }
  const Rational value = single_vertex_closure_integral(n, d, conditions);
  if (!is_integer(value) || value < 0)
    throw VerificationError("irreducible count " + describe(n, d, conditions) + " = " + to_string(value) +
                            " is not a non-negative integer");
  return value.get_num();
}

std::vector<StratumTerm> StrataCalculus::breakdown(int n, int d, const ConditionMultiset& conditions) const {
  std::vector<StratumTerm> out;
  for (const auto& cls : labelled_classes(conditions.size(), d)) {
    if (cls.tree.vertex_count() == 1) continue;
    out.push_back({cls.tree, stratum_integral({n, cls.tree, conditions.codims()})});
  }
  return out;
}

Integer StrataCalculus::potential_coefficient(int n, int d, const std::vector<int>& m_counts) const {
  const auto conditions = ConditionMultiset::from_counts(n, m_counts, 0);
  if (d == 0) return conditions.size() < 3 ? 0 : degree_zero_integral(n, conditions);
  return full_space_integral(n, d, conditions).get_num();
}

// ---------------------------------------------------------------------------

Integer lv_closed_form(int d) {
  if (d < 1) throw DomainError("lv_closed_form needs d >= 1");
  Integer out = d;
  out *= d;
  out *= (d + 3) * (d + 2);
  out *= (d + 1) * (d - 1);
  out /= 6;
  return out;
}

namespace {

// Chain A – Z_1 – … – Z_{d-2} – B of degree 0 vertices between two degree-1
// ends, each Z_i carrying one pendant degree-1 vertex P_i.
StableTree lv_chain(int d, int a_labels, const std::vector<int>& pendant_sizes) {
  const int z = d - 2;
  std::vector<int> degrees{1};
  degrees.insert(degrees.end(), z, 0);
  degrees.insert(degrees.end(), z, 1);
  degrees.push_back(1);
  const int b = 2 * z + 1;
  std::vector<std::pair<int, int>> edges{{0, 1}};
  for (int i = 1; i < z; ++i) edges.emplace_back(i, i + 1);
  for (int i = 1; i <= z; ++i) edges.emplace_back(i, z + i);
  edges.emplace_back(z, b);

  std::vector<int> leaf_vertex(a_labels, 0);
  for (int i = 0; i < z; ++i) leaf_vertex.insert(leaf_vertex.end(), pendant_sizes[i], z + 1 + i);
  while (static_cast<int>(leaf_vertex.size()) < d + 3) leaf_vertex.push_back(b);
  return StableTree::from_edges(degrees, edges, leaf_vertex);
}

}  // namespace

StableTree lv_tree_tau1(int d) {
  if (d < 3) throw DomainError("the LV trees need d >= 3");
  std::vector<int> pendant(d - 2, 1);
  pendant[0] = 2;
  return lv_chain(d, 3, pendant);
}

StableTree lv_tree_tau2(int d) {
  if (d < 3) throw DomainError("the LV trees need d >= 3");
  std::vector<int> pendant(d - 2, 1);
  pendant[0] = 2;
  if (d >= 4) pendant[1] = 2;
  return lv_chain(d, 2, pendant);
}

Rational lv_recombination(int d, const Rational& tau1_value, const Rational& tau2_value) {
  const Rational first = Rational(binomial(d + 3, 3) * binomial(d, 2)) * tau1_value;
  const Rational second =
      make_rational(binomial(d + 3, 2) * binomial(d + 1, 2) * binomial(d - 1, 2), 6) * tau2_value;
  return first + second;
}

}  // namespace contactcount
