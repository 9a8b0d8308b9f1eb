#include "contactcount/tree_enumeration.hpp"

#include "contactcount/detail/canonical_tree.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace contactcount {

// ---------------------------------------------------------------------------
// free trees, via level sequences

namespace {

using Layout = std::vector<int>;

bool next_rooted_tree(Layout& layout, int p = -1) {
  if (p < 0) {
    p = static_cast<int>(layout.size()) - 1;
    while (layout[p] == 1) --p;
  }
  if (p == 0) return false;
  int q = p - 1;
  while (layout[q] != layout[p] - 1) --q;
  for (std::size_t i = p; i < layout.size(); ++i) layout[i] = layout[i - p + q];
  return true;
}

std::pair<Layout, Layout> split_tree(const Layout& layout) {
  bool one_found = false;
  std::size_t m = layout.size();
  for (std::size_t i = 0; i < layout.size(); ++i) {
    if (layout[i] != 1) continue;
    if (one_found) {
      m = i;
      break;
    }
    one_found = true;
  }
  Layout left, rest{0};
  for (std::size_t i = 1; i < m; ++i) left.push_back(layout[i] - 1);
  for (std::size_t i = m; i < layout.size(); ++i) rest.push_back(layout[i]);
  return {left, rest};
}

// Moves `layout` to the next valid free-tree layout; false when exhausted.
bool next_tree(Layout& layout) {
  for (;;) {
    const auto [left, rest] = split_tree(layout);
    const int left_height = *std::max_element(left.begin(), left.end());
    const int rest_height = *std::max_element(rest.begin(), rest.end());
    bool valid = rest_height >= left_height;
    if (valid && rest_height == left_height) {
      if (left.size() > rest.size())
        valid = false;
      else if (left.size() == rest.size() && left > rest)
        valid = false;
    }
    if (valid) return true;

    const int p = static_cast<int>(left.size());
    const bool big = layout[p] > 2;
    if (!next_rooted_tree(layout, p)) return false;
    if (big) {
      const auto [new_left, new_rest] = split_tree(layout);
      const int h = *std::max_element(new_left.begin(), new_left.end());
      const std::size_t len = static_cast<std::size_t>(h) + 1;
      for (std::size_t i = 0; i < len; ++i) layout[layout.size() - len + i] = static_cast<int>(i) + 1;
    }
  }
}

EdgeList layout_edges(const Layout& layout) {
  EdgeList edges;
  std::vector<int> stack;
  for (int i = 0; i < static_cast<int>(layout.size()); ++i) {
    if (!stack.empty()) {
      while (layout[stack.back()] >= layout[i]) stack.pop_back();
      edges.emplace_back(i, stack.back());
    }
    stack.push_back(i);
  }
  return edges;
}

}  // namespace

std::vector<EdgeList> free_trees(int k) {
  if (k <= 0) return {};
  if (k == 1) return {EdgeList{}};
  if (k == 2) return {EdgeList{{0, 1}}};
  Layout layout;
  for (int i = 0; i <= k / 2; ++i) layout.push_back(i);
  for (int i = 1; i < (k + 1) / 2; ++i) layout.push_back(i);

  std::vector<EdgeList> out;
  while (next_tree(layout)) {
    out.push_back(layout_edges(layout));
    if (!next_rooted_tree(layout)) break;
  }
  return out;
}

int max_vertex_count(int m, int d) { return std::max(1, m + 2 * d - 2); }

// ---------------------------------------------------------------------------
// decorated enumeration

namespace {

void for_each_composition(int total, int parts, int lo, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> current(parts, lo);
  int remaining = total - lo * parts;
  if (remaining < 0) return;
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == parts - 1) {
      current[i] = lo + left;
      visit(current);
      return;
    }
    for (int x = left; x >= 0; --x) {
      current[i] = lo + x;
      rec(i + 1, left - x);
    }
  };
  rec(0, remaining);
}

// Leaves a degree-0 vertex still needs to become stable.
std::vector<int> stability_deficit(const std::vector<int>& degrees, const EdgeList& edges) {
  std::vector<int> valence(degrees.size(), 0);
  for (const auto& [a, b] : edges) {
    ++valence[a];
    ++valence[b];
  }
  std::vector<int> deficit(degrees.size(), 0);
  for (std::size_t v = 0; v < degrees.size(); ++v)
    if (degrees[v] == 0) deficit[v] = std::max(0, 3 - valence[v]);
  return deficit;
}

template <typename Visit>
void for_each_shape(int m, int d, bool positive_only, Visit&& visit) {
  const int kmax = positive_only ? std::max(1, d) : max_vertex_count(m, d);
  for (int k = 1; k <= kmax; ++k) {
    const auto shapes = free_trees(k);
    for (const auto& edges : shapes)
      for_each_composition(d, k, positive_only ? 1 : 0, [&](const std::vector<int>& degrees) {
        const auto deficit = stability_deficit(degrees, edges);
        int need = 0;
        for (int x : deficit) need += x;
        if (need <= m) visit(edges, degrees, deficit);
      });
  }
}

bool degenerate(int m, int d) { return d == 0 && m < 3; }

}  // namespace

std::vector<TreeClass> enumerate_stable_trees(int m, int d, bool positive_only) {
  if (m < 0 || d < 0 || degenerate(m, d)) return {};
  std::map<CanonicalKey, StableTree> found;

  for_each_shape(m, d, positive_only, [&](const EdgeList& edges, const std::vector<int>& degrees,
                                          const std::vector<int>& deficit) {
    const int k = static_cast<int>(degrees.size());
    std::vector<int> leaf_vertex(m, 0);
    std::vector<int> missing = deficit;
    int still_needed = 0;
    for (int x : missing) still_needed += x;

    std::function<void(int)> assign = [&](int label) {
      if (m - label < still_needed) return;
      if (label == m) {
        auto tree = StableTree::from_edges(degrees, edges, leaf_vertex);
        auto key = canonical_key(tree);
        if (!found.count(key)) found.emplace(std::move(key), canonical_representative(tree));
        return;
      }
      for (int v = 0; v < k; ++v) {
        leaf_vertex[label] = v;
        const bool helped = missing[v] > 0;
        if (helped) {
          --missing[v];
          --still_needed;
        }
        assign(label + 1);
        if (helped) {
          ++missing[v];
          ++still_needed;
        }
      }
    };
    assign(0);
  });

  std::vector<TreeClass> out;
  out.reserve(found.size());
  for (auto& [key, tree] : found) out.push_back({key, std::move(tree)});
  return out;
}

std::vector<TypedTreeClass> enumerate_typed_trees(const std::vector<int>& colours, int d, bool positive_only) {
  const int m = static_cast<int>(colours.size());
  if (d < 0 || degenerate(m, d)) return {};

  // distinct colours in order of first appearance, with multiplicities
  std::vector<int> palette, mult;
  for (int c : colours) {
    if (palette.empty() || palette.back() != c) {
      palette.push_back(c);
      mult.push_back(0);
    }
    ++mult.back();
  }
  Integer multinomial_top = 1;
  for (int x : mult) multinomial_top *= factorial(static_cast<unsigned>(x));

  std::map<std::string, TypedTreeClass> found;
  for_each_shape(m, d, positive_only, [&](const EdgeList& edges, const std::vector<int>& degrees,
                                          const std::vector<int>& deficit) {
    const int k = static_cast<int>(degrees.size());
    // count[v][c]: leaves of colour palette[c] at v
    std::vector<std::vector<int>> count(k, std::vector<int>(palette.size(), 0));

    auto finish = [&] {
      std::vector<int> at(k, 0);
      for (int v = 0; v < k; ++v)
        for (int x : count[v]) at[v] += x;
      for (int v = 0; v < k; ++v)
        if (at[v] < deficit[v]) return;

      detail::LabelledTree view;
      view.vertex_label.resize(k);
      view.adjacency.resize(k);
      for (int v = 0; v < k; ++v) {
        std::string label = std::to_string(degrees[v]) + "[";
        for (std::size_t c = 0; c < palette.size(); ++c)
          for (int i = 0; i < count[v][c]; ++i) label += std::to_string(palette[c]) + ",";
        view.vertex_label[v] = label + "]";
      }
      for (const auto& [a, b] : edges) {
        view.adjacency[a].emplace_back(b, 0);
        view.adjacency[b].emplace_back(a, 0);
      }
      const auto form = detail::canonicalize(view);
      if (found.count(form.code)) return;

      // labelled representative: hand out labels of each colour vertex by vertex
      std::vector<int> leaf_vertex(m, -1);
      std::vector<std::vector<int>> left = count;
      for (int label = 0; label < m; ++label) {
        const auto c = static_cast<std::size_t>(
            std::find(palette.begin(), palette.end(), colours[label]) - palette.begin());
        for (int v = 0; v < k; ++v) {
          if (left[v][c] == 0) continue;
          --left[v][c];
          leaf_vertex[label] = v;
          break;
        }
      }
      auto tree = StableTree::from_edges(degrees, edges, leaf_vertex);
      Integer denominator = form.automorphisms;
      for (int v = 0; v < k; ++v)
        for (int x : count[v]) denominator *= factorial(static_cast<unsigned>(x));
      Integer weight = multinomial_top * Integer(std::to_string(automorphism_order(tree)));
      weight /= denominator;
      found.emplace(form.code, TypedTreeClass{canonical_representative(tree), weight});
    };

    std::function<void(std::size_t)> per_colour = [&](std::size_t c) {
      if (c == palette.size()) {
        finish();
        return;
      }
      for_each_composition(mult[c], k, 0, [&](const std::vector<int>& split) {
        for (int v = 0; v < k; ++v) count[v][c] = split[v];
        per_colour(c + 1);
      });
    };
    per_colour(0);
  });

  std::vector<TypedTreeClass> out;
  out.reserve(found.size());
  for (auto& [code, cls] : found) out.push_back(std::move(cls));
  return out;
}

}  // namespace contactcount
