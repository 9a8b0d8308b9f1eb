#include "contactcount/projective_classes.hpp"

#include "contactcount/errors.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <numeric>

namespace contactcount {

ConditionMultiset::ConditionMultiset(int n, std::vector<int> codims) : n_(n), codims_(std::move(codims)) {
  if (n < 1 || n % 2 == 0) throw DomainError("ambient dimension must be odd and positive, got " + std::to_string(n));
  for (int c : codims_)
    if (c < 0 || c > n)
      throw DomainError("codimension " + std::to_string(c) + " outside 0.." + std::to_string(n));
  std::sort(codims_.begin(), codims_.end(), std::greater<>());
}

ConditionMultiset ConditionMultiset::from_counts(int n, const std::vector<int>& counts, int first_codim) {
  std::vector<int> codims;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] < 0) throw DomainError("negative condition count");
    codims.insert(codims.end(), counts[i], first_codim + static_cast<int>(i));
  }
  return ConditionMultiset(n, std::move(codims));
}

int ConditionMultiset::total_codim() const { return std::accumulate(codims_.begin(), codims_.end(), 0); }

int ConditionMultiset::multiplicity(int codim) const {
  return static_cast<int>(std::count(codims_.begin(), codims_.end(), codim));
}

std::vector<int> ConditionMultiset::counts() const {
  std::vector<int> out(n_ + 1, 0);
  for (int c : codims_) ++out[c];
  return out;
}

std::string ConditionMultiset::to_string() const {
  if (codims_.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < codims_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(codims_[i]);
  }
  return out;
}

namespace {

int parse_nonnegative(std::string_view token, std::string_view spec) {
  int value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc{} || ptr != end || value < 0)
    throw ParseError("malformed condition spec '" + std::string(spec) + "'");
  return value;
}

}  // namespace

ConditionMultiset parse_condition_spec(int n, std::string_view spec) {
  std::vector<int> codims;
  if (spec.empty()) throw ParseError("empty condition spec");
  std::size_t start = 0;
  while (start <= spec.size()) {
    const auto comma = spec.find(',', start);
    const auto item = spec.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    const auto caret = item.find('^');
    const int codim = parse_nonnegative(item.substr(0, caret), spec);
    const int times = caret == std::string_view::npos ? 1 : parse_nonnegative(item.substr(caret + 1), spec);
    if (codim > n) throw ParseError("codimension " + std::to_string(codim) + " exceeds n=" + std::to_string(n));
    codims.insert(codims.end(), times, codim);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return ConditionMultiset(n, std::move(codims));
}

int moduli_dim(int n, int d, int m) {
  if (d < 0 || m < 0) throw DomainError("negative degree or mark count");
  if (d == 0) {
    if (m < 3) throw DomainError("unstable: degree 0 with " + std::to_string(m) + " marks");
    return n + m - 3;
  }
  return d * (n - 1) + n + m - 2;
}

// The uniform expression; for d = 0 it agrees with n+m-3 on the single vertex.
int stratum_dim(int n, const StableTree& tree) {
  return tree.total_degree() * (n - 1) + n + tree.marks() - 2 - codimension(tree);
}

int degree_zero_integral(int n, const ConditionMultiset& conditions) {
  return conditions.size() == 3 && conditions.total_codim() == n ? 1 : 0;
}

std::vector<std::pair<int, int>> diagonal_split(int n) {
  std::vector<std::pair<int, int>> out;
  for (int j = 0; j <= n; ++j) out.emplace_back(n - j, j);
  return out;
}

}  // namespace contactcount
