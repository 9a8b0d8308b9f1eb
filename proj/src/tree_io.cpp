#include "contactcount/tree_io.hpp"

#include "contactcount/errors.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace contactcount {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

int to_int(std::string_view token, int line, bool allow_negative = false) {
  int value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end || token.empty()) fail(line, "expected an integer, got '" + std::string(token) + "'");
  if (!allow_negative && value < 0) fail(line, "negative value '" + std::string(token) + "'");
  return value;
}

std::vector<std::string> split(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

int header_field(const std::string& token, std::string_view key, int line) {
  if (token.rfind(std::string(key) + "=", 0) != 0) fail(line, "expected '" + std::string(key) + "=<int>'");
  return to_int(std::string_view(token).substr(key.size() + 1), line);
}

}  // namespace

StableTree parse_tree(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  bool have_header = false;
  int m = 0, d = 0;

  std::map<int, int> vertex_index;  // file id -> dense id
  std::vector<int> degrees;
  std::vector<std::pair<int, int>> edges;
  std::map<int, int> leaf_at;  // label -> file vertex id
  std::vector<std::pair<std::pair<int, int>, int>> edge_refs, leaf_refs;  // (ids, line)

  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    const auto tok = split(raw);
    if (tok.empty()) continue;

    if (!have_header) {
      if (tok.size() != 3 || tok[0] != "tree") fail(line_no, "expected header 'tree m=<int> d=<int>'");
      m = header_field(tok[1], "m", line_no);
      d = header_field(tok[2], "d", line_no);
      have_header = true;
      continue;
    }
    if (tok[0] == "v") {
      if (tok.size() != 3) fail(line_no, "'v' takes a vertex id and a degree");
      const int id = to_int(tok[1], line_no);
      const int deg = to_int(tok[2], line_no);
      if (!vertex_index.emplace(id, static_cast<int>(degrees.size())).second)
        fail(line_no, "duplicate vertex " + tok[1]);
      degrees.push_back(deg);
    } else if (tok[0] == "e") {
      if (tok.size() != 3) fail(line_no, "'e' takes two vertex ids");
      edge_refs.push_back({{to_int(tok[1], line_no), to_int(tok[2], line_no)}, line_no});
    } else if (tok[0] == "l") {
      if (tok.size() != 3) fail(line_no, "'l' takes a label and a vertex id");
      const int label = to_int(tok[1], line_no);
      const int v = to_int(tok[2], line_no);
      if (label < 1 || label > m) fail(line_no, "label " + tok[1] + " outside 1.." + std::to_string(m));
      if (!leaf_at.emplace(label, v).second) fail(line_no, "duplicate label " + tok[1]);
      leaf_refs.push_back({{label, v}, line_no});
    } else {
      fail(line_no, "unknown directive '" + tok[0] + "'");
    }
  }
  if (!have_header) throw ParseError("empty tree description");

  auto resolve = [&](int id, int line) {
    const auto it = vertex_index.find(id);
    if (it == vertex_index.end()) fail(line, "reference to undeclared vertex " + std::to_string(id));
    return it->second;
  };
  std::set<std::pair<int, int>> seen_edges;
  for (const auto& [ids, line] : edge_refs) {
    const int a = resolve(ids.first, line);
    const int b = resolve(ids.second, line);
    if (a == b) fail(line, "loop at vertex " + std::to_string(ids.first));
    if (!seen_edges.insert(std::minmax(a, b)).second) fail(line, "repeated edge");
    edges.emplace_back(a, b);
  }
  std::vector<int> leaf_vertex(m, -1);
  for (const auto& [ids, line] : leaf_refs) leaf_vertex[ids.first - 1] = resolve(ids.second, line);
  if (static_cast<int>(leaf_refs.size()) != m)
    throw ParseError("expected " + std::to_string(m) + " leaves, found " + std::to_string(leaf_refs.size()));

  int total = 0;
  for (int deg : degrees) total += deg;
  if (total != d) throw ParseError("vertex degrees sum to " + std::to_string(total) + ", header says d=" + std::to_string(d));

  auto tree = StableTree::from_edges(std::move(degrees), edges, leaf_vertex);
  const auto problems = validate(tree);
  if (!problems.empty()) throw InvalidTreeError("not a stable tree: " + problems.front().message);
  return tree;
}

StableTree read_tree_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open tree file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_tree(buffer.str());
}

std::string format_tree(const StableTree& tree) {
  std::ostringstream out;
  out << "tree m=" << tree.marks() << " d=" << tree.total_degree() << "\n";
  for (VertexId v = 0; v < tree.vertex_count(); ++v) out << "v " << v << " " << tree.vertex_degree(v) << "\n";
  for (const auto& [f, g] : tree.edges()) out << "e " << tree.flag_vertex(f) << " " << tree.flag_vertex(g) << "\n";
  for (int label = 1; label <= tree.marks(); ++label) out << "l " << label << " " << tree.leaf_vertex(label) << "\n";
  return out.str();
}

std::string to_dot(const StableTree& tree, std::string_view name) {
  std::ostringstream out;
  out << "graph " << name << " {\n";
  for (VertexId v = 0; v < tree.vertex_count(); ++v)
    out << "  v" << v << " [label=\"" << tree.vertex_degree(v) << "\"];\n";
  for (const auto& [f, g] : tree.edges())
    out << "  v" << tree.flag_vertex(f) << " -- v" << tree.flag_vertex(g) << ";\n";
  for (int label = 1; label <= tree.marks(); ++label) {
    out << "  l" << label << " [shape=box, width=0.2, height=0.2, label=\"" << label << "\"];\n";
    out << "  v" << tree.leaf_vertex(label) << " -- l" << label << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace contactcount
