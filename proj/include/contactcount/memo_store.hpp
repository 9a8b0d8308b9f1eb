#pragma once

// Persistent cache of full-space (G) and single-vertex-closure (I) integrals.
//
// File format, one record per line after the header:
//
//   contactcount-cache v1
//   G <n> <d> <c1,c2,...> <num>/<den>
//   I <n> <d> <c1,c2,...> <num>/<den>
//
// Codims are sorted descending; an empty list is written as "-".

#include "contactcount/projective_classes.hpp"
#include "contactcount/rational.hpp"

#include <compare>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

namespace contactcount {

enum class MemoKind : char { full_space = 'G', single_vertex = 'I' };

struct MemoKey {
  MemoKind kind;
  int n;
  int d;
  std::vector<int> codims;  // sorted descending

  static MemoKey make(MemoKind kind, int d, const ConditionMultiset& conditions);
  friend auto operator<=>(const MemoKey&, const MemoKey&) = default;
};

class MemoStore {
 public:
  std::optional<Rational> find(const MemoKey& key) const;
  /// Idempotent; a different value for an existing key is a VerificationError.
  void insert(const MemoKey& key, const Rational& value);
  std::size_t size() const;

  std::string serialize() const;
  /// Replaces nothing: parsed records are inserted. Throws ParseError.
  void merge_text(std::string_view text);

  /// Loads `path` if it exists; a missing file is an empty cache.
  void load(const std::string& path);
  /// Writes atomically (temporary file and rename).
  void save(const std::string& path) const;

 private:
  mutable std::shared_mutex mutex_;
  std::map<MemoKey, Rational> values_;
};

}  // namespace contactcount
