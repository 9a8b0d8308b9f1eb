#pragma once

// Line-based text format for a single stable tree:
//
//   tree m=<int> d=<int>
//   v <vertex-id> <degree>
//   e <vertex-id> <vertex-id>
//   l <label> <vertex-id>
//
// '#' starts a comment. Vertex ids are arbitrary non-negative integers.

#include "contactcount/stable_tree.hpp"

#include <string>
#include <string_view>

namespace contactcount {

/// Strict parser; throws ParseError with a line number on any problem, and
/// InvalidTreeError if the parsed tree is not stable.
StableTree parse_tree(std::string_view text);
StableTree read_tree_file(const std::string& path);

/// Emits the text format with vertex ids 0..|V|-1 and leaves sorted by label.
std::string format_tree(const StableTree& tree);

/// Graphviz rendering; leaves are drawn as small boxes.
std::string to_dot(const StableTree& tree, std::string_view name = "tree");

}  // namespace contactcount
