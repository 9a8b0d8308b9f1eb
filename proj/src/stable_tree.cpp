#include "contactcount/stable_tree.hpp"

#include "contactcount/detail/canonical_tree.hpp"
#include "contactcount/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace contactcount {

StableTree::StableTree(int marks, std::vector<int> vertex_degrees, std::vector<VertexId> flag_vertex,
                       std::vector<FlagId> flag_partner, std::vector<int> flag_label)
    : marks_(marks),
      degrees_(std::move(vertex_degrees)),
      flag_vertex_(std::move(flag_vertex)),
      partner_(std::move(flag_partner)),
      label_(std::move(flag_label)) {}

StableTree StableTree::from_edges(std::vector<int> vertex_degrees,
                                  const std::vector<std::pair<VertexId, VertexId>>& edges,
                                  const std::vector<VertexId>& leaf_vertex) {
  std::vector<VertexId> flag_vertex;
  std::vector<FlagId> partner;
  std::vector<int> label;
  for (const auto& [a, b] : edges) {
    const FlagId f = static_cast<FlagId>(flag_vertex.size());
    flag_vertex.push_back(a);
    flag_vertex.push_back(b);
    partner.push_back(f + 1);
    partner.push_back(f);
    label.push_back(0);
    label.push_back(0);
  }
  for (std::size_t i = 0; i < leaf_vertex.size(); ++i) {
    const FlagId f = static_cast<FlagId>(flag_vertex.size());
    flag_vertex.push_back(leaf_vertex[i]);
    partner.push_back(f);
    label.push_back(static_cast<int>(i) + 1);
  }
  return StableTree(static_cast<int>(leaf_vertex.size()), std::move(vertex_degrees), std::move(flag_vertex),
                    std::move(partner), std::move(label));
}

StableTree StableTree::single_vertex(int degree, int marks) {
  return from_edges({degree}, {}, std::vector<VertexId>(static_cast<std::size_t>(marks), 0));
}

int StableTree::total_degree() const { return std::accumulate(degrees_.begin(), degrees_.end(), 0); }

int StableTree::edge_count() const {
  int twice = 0;
  for (FlagId f = 0; f < flag_count(); ++f)
    if (!is_leaf(f)) ++twice;
  return twice / 2;
}

std::vector<std::pair<FlagId, FlagId>> StableTree::edges() const {
  std::vector<std::pair<FlagId, FlagId>> out;
  for (FlagId f = 0; f < flag_count(); ++f)
    if (partner_[f] > f) out.emplace_back(f, partner_[f]);
  return out;
}

std::vector<FlagId> StableTree::flags_at(VertexId v) const {
  std::vector<FlagId> out;
  for (FlagId f = 0; f < flag_count(); ++f)
    if (flag_vertex_[f] == v) out.push_back(f);
  return out;
}

int StableTree::valence(VertexId v) const {
  return static_cast<int>(std::count(flag_vertex_.begin(), flag_vertex_.end(), v));
}

int StableTree::edge_valence(VertexId v) const {
  int out = 0;
  for (FlagId f = 0; f < flag_count(); ++f)
    if (flag_vertex_[f] == v && !is_leaf(f)) ++out;
  return out;
}

std::vector<std::vector<VertexId>> StableTree::adjacency() const {
  std::vector<std::vector<VertexId>> adj(degrees_.size());
  for (const auto& [f, g] : edges()) {
    adj[flag_vertex_[f]].push_back(flag_vertex_[g]);
    adj[flag_vertex_[g]].push_back(flag_vertex_[f]);
  }
  return adj;
}

std::vector<int> StableTree::labels_at(VertexId v) const {
  std::vector<int> out;
  for (FlagId f = 0; f < flag_count(); ++f)
    if (flag_vertex_[f] == v && is_leaf(f)) out.push_back(label_[f]);
  std::sort(out.begin(), out.end());
  return out;
}

VertexId StableTree::leaf_vertex(int label) const {
  for (FlagId f = 0; f < flag_count(); ++f)
    if (is_leaf(f) && label_[f] == label) return flag_vertex_[f];
  return -1;
}

// ---------------------------------------------------------------------------
// validation

std::vector<Violation> validate(const StableTree& tree) {
  std::vector<Violation> out;
  auto report = [&](Violation::Kind kind, std::string message) { out.push_back({kind, std::move(message)}); };

  const int nv = tree.vertex_count();
  const int nf = tree.flag_count();
  if (nv == 0) {
    report(Violation::Kind::malformed, "tree has no vertices");
    return out;
  }
  for (FlagId f = 0; f < nf; ++f) {
    if (tree.flag_vertex(f) < 0 || tree.flag_vertex(f) >= nv)
      report(Violation::Kind::malformed, "flag " + std::to_string(f) + " has no vertex");
    if (tree.partner(f) < 0 || tree.partner(f) >= nf)
      report(Violation::Kind::malformed, "flag " + std::to_string(f) + " has an out-of-range partner");
  }
  if (!out.empty()) return out;

  for (FlagId f = 0; f < nf; ++f)
    if (tree.partner(tree.partner(f)) != f)
      report(Violation::Kind::involution, "j(j(" + std::to_string(f) + ")) != " + std::to_string(f));

  for (VertexId v = 0; v < nv; ++v)
    if (tree.vertex_degree(v) < 0)
      report(Violation::Kind::negative_degree, "vertex " + std::to_string(v) + " has negative degree");

  // leaf labels
  std::vector<int> seen(static_cast<std::size_t>(std::max(tree.marks(), 0)) + 1, 0);
  int leaves = 0;
  for (FlagId f = 0; f < nf; ++f) {
    if (!tree.is_leaf(f)) continue;
    ++leaves;
    const int l = tree.label(f);
    if (l < 1 || l > tree.marks()) {
      report(Violation::Kind::leaf_labels, "leaf label " + std::to_string(l) + " outside 1.." +
                                               std::to_string(tree.marks()));
    } else if (seen[l]++) {
      report(Violation::Kind::leaf_labels, "duplicate leaf label " + std::to_string(l));
    }
  }
  if (leaves != tree.marks())
    report(Violation::Kind::leaf_labels,
           std::to_string(leaves) + " leaves for m=" + std::to_string(tree.marks()));

  // connectivity over edges (only meaningful for a proper involution)
  std::vector<int> root(nv);
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](int x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  int edges = 0;
  for (FlagId f = 0; f < nf; ++f) {
    const FlagId g = tree.partner(f);
    if (g <= f || tree.partner(g) != f) continue;
    ++edges;
    root[find(tree.flag_vertex(f))] = find(tree.flag_vertex(g));
  }
  for (VertexId v = 1; v < nv; ++v) {
    if (find(v) != find(0)) {
      report(Violation::Kind::connectivity, "vertex " + std::to_string(v) + " is not connected to vertex 0");
      break;
    }
  }

  if (edges + leaves + nv != 1 + nf)
    report(Violation::Kind::tree_identity, "|E|+|L|+|V| = " + std::to_string(edges + leaves + nv) +
                                               " but 1+|F| = " + std::to_string(1 + nf));

  for (VertexId v = 0; v < nv; ++v)
    if (tree.vertex_degree(v) == 0 && tree.valence(v) < 3)
      report(Violation::Kind::stability, "vertex " + std::to_string(v) + " has degree 0 and valence " +
                                             std::to_string(tree.valence(v)));
  return out;
}

bool is_stable_tree(const StableTree& tree) { return validate(tree).empty(); }

// ---------------------------------------------------------------------------
// canonical form

namespace {

void require_stable(const StableTree& tree) {
  const auto problems = validate(tree);
  if (!problems.empty()) throw InvalidTreeError("not a stable tree: " + problems.front().message);
}

detail::LabelledTree labelled_view(const StableTree& tree) {
  detail::LabelledTree view;
  view.vertex_label.resize(tree.vertex_count());
  view.adjacency.resize(tree.vertex_count());
  for (VertexId v = 0; v < tree.vertex_count(); ++v) {
    std::string label = std::to_string(tree.vertex_degree(v)) + "[";
    const auto labels = tree.labels_at(v);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (i) label += ",";
      label += std::to_string(labels[i]);
    }
    view.vertex_label[v] = label + "]";
  }
  for (const auto& [f, g] : tree.edges()) {
    view.adjacency[tree.flag_vertex(f)].emplace_back(tree.flag_vertex(g), 0);
    view.adjacency[tree.flag_vertex(g)].emplace_back(tree.flag_vertex(f), 0);
  }
  return view;
}

}  // namespace

CanonicalKey canonical_key(const StableTree& tree) {
  require_stable(tree);
  return {detail::canonicalize(labelled_view(tree)).code};
}

std::vector<int> canonical_vertex_rank(const StableTree& tree) {
  const auto form = detail::canonicalize(labelled_view(tree));
  std::vector<int> rank(form.order.size());
  for (std::size_t i = 0; i < form.order.size(); ++i) rank[form.order[i]] = static_cast<int>(i);
  return rank;
}

StableTree canonical_representative(const StableTree& tree) {
  require_stable(tree);
  const auto rank = canonical_vertex_rank(tree);
  const int nv = tree.vertex_count();

  std::vector<int> degrees(nv);
  for (VertexId v = 0; v < nv; ++v) degrees[rank[v]] = tree.vertex_degree(v);

  // Per vertex (in canonical order): leaves by label, then edges by neighbour rank.
  struct Slot {
    int vertex;
    int kind;  // 0 leaf, 1 edge
    int key;
    FlagId old;
  };
  std::vector<Slot> slots;
  for (FlagId f = 0; f < tree.flag_count(); ++f) {
    const int v = rank[tree.flag_vertex(f)];
    if (tree.is_leaf(f))
      slots.push_back({v, 0, tree.label(f), f});
    else
      slots.push_back({v, 1, rank[tree.flag_vertex(tree.partner(f))], f});
  }
  std::sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) {
    return std::tie(a.vertex, a.kind, a.key) < std::tie(b.vertex, b.kind, b.key);
  });
  std::vector<FlagId> renumber(tree.flag_count());
  for (std::size_t i = 0; i < slots.size(); ++i) renumber[slots[i].old] = static_cast<FlagId>(i);

  const int nf = tree.flag_count();
  std::vector<VertexId> flag_vertex(nf);
  std::vector<FlagId> partner(nf);
  std::vector<int> label(nf);
  for (FlagId f = 0; f < nf; ++f) {
    flag_vertex[renumber[f]] = rank[tree.flag_vertex(f)];
    partner[renumber[f]] = renumber[tree.partner(f)];
    label[renumber[f]] = tree.label(f);
  }
  return StableTree(tree.marks(), std::move(degrees), std::move(flag_vertex), std::move(partner), std::move(label));
}

std::uint64_t automorphism_order(const StableTree& tree) {
  require_stable(tree);
  return detail::canonicalize(labelled_view(tree)).automorphisms;
}

int codimension(const StableTree& tree) {
  return static_cast<int>(std::count(tree.vertex_degrees().begin(), tree.vertex_degrees().end(), 0));
}

// ---------------------------------------------------------------------------
// edge decomposition

namespace {

struct Half {
  StableTree tree;
  int new_label = 0;
  std::vector<int> origin;
};

Half extract_half(const StableTree& tree, FlagId cut, FlagId other) {
  const auto adj = tree.adjacency();
  std::vector<char> inside(tree.vertex_count(), 0);
  std::vector<VertexId> stack{tree.flag_vertex(cut)};
  inside[stack.back()] = 1;
  const VertexId blocked = tree.flag_vertex(other);
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (VertexId w : adj[v]) {
      if (inside[w] || (v == tree.flag_vertex(cut) && w == blocked)) continue;
      inside[w] = 1;
      stack.push_back(w);
    }
  }

  std::vector<int> vertex_map(tree.vertex_count(), -1);
  std::vector<int> degrees;
  for (VertexId v = 0; v < tree.vertex_count(); ++v) {
    if (!inside[v]) continue;
    vertex_map[v] = static_cast<int>(degrees.size());
    degrees.push_back(tree.vertex_degree(v));
  }
  std::vector<int> flag_map(tree.flag_count(), -1);
  std::vector<FlagId> kept;
  for (FlagId f = 0; f < tree.flag_count(); ++f) {
    if (!inside[tree.flag_vertex(f)]) continue;
    flag_map[f] = static_cast<int>(kept.size());
    kept.push_back(f);
  }

  std::vector<int> surviving;
  for (FlagId f : kept)
    if (tree.is_leaf(f)) surviving.push_back(tree.label(f));
  std::sort(surviving.begin(), surviving.end());

  Half half;
  half.origin = surviving;
  half.origin.push_back(0);
  half.new_label = static_cast<int>(half.origin.size());

  std::vector<VertexId> flag_vertex;
  std::vector<FlagId> partner;
  std::vector<int> label;
  for (FlagId f : kept) {
    flag_vertex.push_back(vertex_map[tree.flag_vertex(f)]);
    if (f == cut) {
      partner.push_back(flag_map[f]);
      label.push_back(half.new_label);
    } else {
      partner.push_back(flag_map[tree.partner(f)]);
      if (tree.is_leaf(f)) {
        const auto pos = std::lower_bound(surviving.begin(), surviving.end(), tree.label(f)) - surviving.begin();
        label.push_back(static_cast<int>(pos) + 1);
      } else {
        label.push_back(0);
      }
    }
  }
  half.tree = StableTree(half.new_label, std::move(degrees), std::move(flag_vertex), std::move(partner),
                         std::move(label));
  return half;
}

}  // namespace

Decomposition decompose_at_edge(const StableTree& tree, EdgeId edge) {
  const auto edges = tree.edges();
  if (edge < 0 || edge >= static_cast<EdgeId>(edges.size()))
    throw DomainError("decompose_at_edge: " + std::to_string(edge) + " is not an edge identifier");
  const auto [f, g] = edges[edge];
  auto left = extract_half(tree, f, g);
  auto right = extract_half(tree, g, f);
  Decomposition out;
  out.sigma = std::move(left.tree);
  out.sigma_prime = std::move(right.tree);
  out.f_label = left.new_label;
  out.f_prime_label = right.new_label;
  out.sigma_origin = std::move(left.origin);
  out.sigma_prime_origin = std::move(right.origin);
  return out;
}

StableTree glue(const Decomposition& parts) {
  const StableTree& a = parts.sigma;
  const StableTree& b = parts.sigma_prime;
  std::vector<int> degrees = a.vertex_degrees();
  degrees.insert(degrees.end(), b.vertex_degrees().begin(), b.vertex_degrees().end());

  const int offset_v = a.vertex_count();
  const int offset_f = a.flag_count();
  const int nf = a.flag_count() + b.flag_count();
  std::vector<VertexId> flag_vertex(nf);
  std::vector<FlagId> partner(nf);
  std::vector<int> label(nf, 0);
  FlagId f_cut = -1, g_cut = -1;

  auto copy = [&](const StableTree& t, const std::vector<int>& origin, int cut_label, int vo, int fo, FlagId& cut) {
    for (FlagId f = 0; f < t.flag_count(); ++f) {
      flag_vertex[fo + f] = vo + t.flag_vertex(f);
      partner[fo + f] = fo + t.partner(f);
      if (!t.is_leaf(f)) continue;
      if (t.label(f) == cut_label)
        cut = fo + f;
      else
        label[fo + f] = origin.at(t.label(f) - 1);
    }
  };
  copy(a, parts.sigma_origin, parts.f_label, 0, 0, f_cut);
  copy(b, parts.sigma_prime_origin, parts.f_prime_label, offset_v, offset_f, g_cut);
  if (f_cut < 0 || g_cut < 0) throw DomainError("glue: cut leaves not found");
  partner[f_cut] = g_cut;
  partner[g_cut] = f_cut;
  const int marks = a.marks() + b.marks() - 2;
  return StableTree(marks, std::move(degrees), std::move(flag_vertex), std::move(partner), std::move(label));
}

}  // namespace contactcount
