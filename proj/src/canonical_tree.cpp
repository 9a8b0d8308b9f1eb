#include "contactcount/detail/canonical_tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace contactcount::detail {

namespace {

struct RootedEncoding {
  std::vector<std::string> code;
  std::vector<std::vector<int>> children;  // sorted by child key
  std::vector<int> parent;
  std::uint64_t automorphisms = 1;
};

std::uint64_t small_factorial(std::size_t k) {
  std::uint64_t out = 1;
  for (std::size_t i = 2; i <= k; ++i) out *= i;
  return out;
}

RootedEncoding encode_from(const LabelledTree& tree, int root) {
  const int n = static_cast<int>(tree.vertex_label.size());
  RootedEncoding enc;
  enc.code.assign(n, {});
  enc.children.assign(n, {});
  enc.parent.assign(n, -1);
  std::vector<int> parent_edge_label(n, 0);

  std::vector<int> order;
  order.reserve(n);
  std::vector<int> stack{root};
  enc.parent[root] = root;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (const auto& [w, label] : tree.adjacency[v]) {
      if (w == enc.parent[v]) continue;
      enc.parent[w] = v;
      parent_edge_label[w] = label;
      stack.push_back(w);
    }
  }
  if (static_cast<int>(order.size()) != n) throw std::logic_error("canonicalize: tree is not connected");

  std::vector<std::string> key(n);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int v = *it;
    auto& kids = enc.children[v];
    for (const auto& [w, label] : tree.adjacency[v])
      if (w != enc.parent[v]) kids.push_back(w);
    std::sort(kids.begin(), kids.end(), [&](int a, int b) { return key[a] < key[b]; });

    std::string code = "(" + tree.vertex_label[v];
    std::size_t run = 1;
    for (std::size_t i = 0; i < kids.size(); ++i) {
      code += key[kids[i]];
      if (i + 1 < kids.size() && key[kids[i + 1]] == key[kids[i]]) {
        ++run;
      } else {
        enc.automorphisms *= small_factorial(run);
        run = 1;
      }
    }
    code += ")";
    enc.code[v] = std::move(code);
    key[v] = "|" + std::to_string(parent_edge_label[v]) + enc.code[v];
  }
  enc.parent[root] = -1;
  return enc;
}

std::vector<int> preorder(const RootedEncoding& enc, int root) {
  std::vector<int> out;
  std::vector<int> stack{root};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    out.push_back(v);
    const auto& kids = enc.children[v];
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

}  // namespace

std::vector<int> centroids(const std::vector<std::vector<std::pair<int, int>>>& adjacency) {
  const int n = static_cast<int>(adjacency.size());
  if (n == 0) return {};
  std::vector<int> parent(n, -1), order, size(n, 1);
  order.reserve(n);
  std::vector<int> stack{0};
  parent[0] = 0;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (const auto& [w, label] : adjacency[v]) {
      if (w == parent[v]) continue;
      parent[w] = v;
      stack.push_back(w);
    }
  }
  std::vector<int> worst(n, 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int v = *it;
    if (v == 0) continue;
    size[parent[v]] += size[v];
    worst[parent[v]] = std::max(worst[parent[v]], size[v]);
  }
  for (int v = 0; v < n; ++v) worst[v] = std::max(worst[v], n - size[v]);
  const int best = *std::min_element(worst.begin(), worst.end());
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (worst[v] == best) out.push_back(v);
  return out;
}

CanonicalForm canonicalize(const LabelledTree& tree) {
  const auto roots = centroids(tree.adjacency);
  if (roots.empty()) return {};

  auto best = encode_from(tree, roots[0]);
  int best_root = roots[0];
  std::uint64_t automorphisms = best.automorphisms;
  if (roots.size() == 2) {
    auto other = encode_from(tree, roots[1]);
    // Each rooted group fixes both centroids; the halves decide whether a swap exists.
    if (best.code[roots[1]] == other.code[roots[0]]) automorphisms *= 2;
    if (other.code[roots[1]] < best.code[roots[0]]) {
      best = std::move(other);
      best_root = roots[1];
    }
  }
  CanonicalForm out;
  out.code = best.code[best_root];
  out.order = preorder(best, best_root);
  out.automorphisms = automorphisms;
  return out;
}

}  // namespace contactcount::detail
