#include "contactcount/memo_store.hpp"

#include "contactcount/errors.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>

namespace contactcount {

namespace {

constexpr std::string_view header = "contactcount-cache v1";

int parse_int(std::string_view token, int line) {
  int value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc{} || ptr != end || value < 0)
    throw ParseError("cache line " + std::to_string(line) + ": bad integer '" + std::string(token) + "'");
  return value;
}

std::string codim_list(const std::vector<int>& codims) {
  if (codims.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < codims.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(codims[i]);
  }
  return out;
}

}  // namespace

MemoKey MemoKey::make(MemoKind kind, int d, const ConditionMultiset& conditions) {
  return {kind, conditions.ambient(), d, conditions.codims()};
}

std::optional<Rational> MemoStore::find(const MemoKey& key) const {
  std::shared_lock lock(mutex_);
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

void MemoStore::insert(const MemoKey& key, const Rational& value) {
  std::unique_lock lock(mutex_);
  const auto [it, fresh] = values_.emplace(key, value);
  if (!fresh && it->second != value)
    throw VerificationError(std::string("cache conflict for ") + static_cast<char>(key.kind) + " " +
                            std::to_string(key.n) + " " + std::to_string(key.d) + " " + codim_list(key.codims) +
                            ": " + to_string(it->second) + " vs " + to_string(value));
}

std::size_t MemoStore::size() const {
  std::shared_lock lock(mutex_);
  return values_.size();
}

std::string MemoStore::serialize() const {
  std::shared_lock lock(mutex_);
  std::string out(header);
  out += "\n";
  for (const auto& [key, value] : values_) {
    out += static_cast<char>(key.kind);
    out += " " + std::to_string(key.n) + " " + std::to_string(key.d) + " " + codim_list(key.codims) + " " +
           to_fraction_string(value) + "\n";
  }
  return out;
}

void MemoStore::merge_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw ParseError("cache file is empty");
  if (line != header) {
    if (line.rfind("contactcount-cache ", 0) == 0) throw ParseError("unsupported cache version '" + line + "'");
    throw ParseError("not a cache file (header '" + line + "')");
  }
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string kind, n, d, codims, value, extra;
    if (!(fields >> kind >> n >> d >> codims >> value) || (fields >> extra))
      throw ParseError("cache line " + std::to_string(line_no) + ": expected 5 fields");
    MemoKey key{};
    if (kind == "G")
      key.kind = MemoKind::full_space;
    else if (kind == "I")
      key.kind = MemoKind::single_vertex;
    else
      throw ParseError("cache line " + std::to_string(line_no) + ": unknown record kind '" + kind + "'");
    key.n = parse_int(n, line_no);
    key.d = parse_int(d, line_no);
    if (codims != "-") {
      std::size_t start = 0;
      while (true) {
        const auto comma = codims.find(',', start);
        key.codims.push_back(parse_int(std::string_view(codims).substr(start, comma - start), line_no));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
    }
    if (!std::is_sorted(key.codims.begin(), key.codims.end(), std::greater<>()))
      throw ParseError("cache line " + std::to_string(line_no) + ": codims not sorted descending");
    if (value.find('/') == std::string::npos)
      throw ParseError("cache line " + std::to_string(line_no) + ": value must be num/den");
    Rational parsed;
    try {
      parsed = parse_rational(value);
    } catch (const ParseError& e) {
      throw ParseError("cache line " + std::to_string(line_no) + ": " + e.what());
    }
    insert(key, parsed);
  }
}

void MemoStore::load(const std::string& path) {
  if (!std::filesystem::exists(path)) return;
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read cache file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  merge_text(buffer.str());
}

void MemoStore::save(const std::string& path) const {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot write cache file '" + tmp + "'");
    out << serialize();
    if (!out) throw Error("failed writing cache file '" + tmp + "'");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace contactcount
