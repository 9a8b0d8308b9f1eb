#include "contactcount/errors.hpp"
#include "contactcount/memo_store.hpp"
#include "contactcount/projective_classes.hpp"
#include "contactcount/strata.hpp"

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

using namespace contactcount;

TEST_CASE("condition multisets") {
  const ConditionMultiset c(3, {2, 3, 1, 3});
  CHECK(c.codims() == std::vector<int>{3, 3, 2, 1});
  CHECK(c.total_codim() == 9);
  CHECK(c.multiplicity(3) == 2);
  CHECK(c.counts() == std::vector<int>{0, 1, 1, 2});
  CHECK(c.to_string() == "3,3,2,1");
  CHECK(ConditionMultiset(3, {}).to_string() == "-");
  CHECK(ConditionMultiset::from_counts(5, {4, 2, 1, 0}, 2) == ConditionMultiset(5, {2, 2, 2, 2, 3, 3, 4}));
  CHECK_THROWS_AS(ConditionMultiset(4, {1}), DomainError);
  CHECK_THROWS_AS(ConditionMultiset(3, {4}), DomainError);
}

TEST_CASE("condition spec grammar") {
  CHECK(parse_condition_spec(3, "2^7") == ConditionMultiset(3, std::vector<int>(7, 2)));
  CHECK(parse_condition_spec(3, "2,3,3") == ConditionMultiset(3, {3, 3, 2}));
  CHECK(parse_condition_spec(5, "2^4,3^2,4^1") == ConditionMultiset(5, {2, 2, 2, 2, 3, 3, 4}));
  for (const char* bad : {"", "2,", ",2", "2^", "^3", "a", "2 ,3", "2^x", "9", "-1"})
    CHECK_THROWS_AS(parse_condition_spec(3, bad), ParseError);
}

TEST_CASE("dimensions") {
  CHECK(moduli_dim(3, 2, 3) == 8);
  CHECK(moduli_dim(3, 0, 3) == 3);
  CHECK(moduli_dim(5, 2, 11) == 22);
  CHECK_THROWS_AS(moduli_dim(3, 0, 2), DomainError);
  for (int m = 0; m < 6; ++m) CHECK(moduli_dim(5, 3, m + 1) == moduli_dim(5, 3, m) + 1);

  CHECK(stratum_dim(3, StableTree::single_vertex(0, 3)) == 3);
  CHECK(stratum_dim(3, StableTree::single_vertex(2, 3)) == moduli_dim(3, 2, 3));
  for (int d = 3; d <= 5; ++d) CHECK(stratum_dim(3, lv_tree_tau1(d)) == 2 * (d + 3));
}

TEST_CASE("degree-zero integral and diagonal") {
  CHECK(degree_zero_integral(3, ConditionMultiset(3, {1, 1, 1})) == 1);
  CHECK(degree_zero_integral(3, ConditionMultiset(3, {1, 1, 2})) == 0);
  CHECK(degree_zero_integral(3, ConditionMultiset(3, {2, 3, 3, 3})) == 0);
  CHECK(degree_zero_integral(3, ConditionMultiset(3, {2, 1, 0})) == 1);
  CHECK(degree_zero_integral(3, ConditionMultiset(3, {0, 2, 1})) == 1);

  CHECK(diagonal_split(1) == std::vector<std::pair<int, int>>{{1, 0}, {0, 1}});
  CHECK(diagonal_split(3) == std::vector<std::pair<int, int>>{{3, 0}, {2, 1}, {1, 2}, {0, 3}});
  for (const auto& [a, b] : diagonal_split(7)) CHECK(a + b == 7);
}

TEST_CASE("rationals") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-8/4")) == "-2");
  CHECK(to_fraction_string(Rational(5)) == "5/1");
  CHECK(make_rational(4, -6) == parse_rational("-2/3"));
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/-2"), ParseError);
  CHECK(power(Rational(2), -3) == parse_rational("1/8"));
  CHECK_THROWS_AS(power(Rational(0), -1), DegenerateWeightsError);
}

TEST_CASE("cache file round trip") {
  MemoStore store;
  store.insert({MemoKind::full_space, 3, 2, {3, 3, 2}}, 2);
  store.insert({MemoKind::single_vertex, 3, 3, {2, 2, 2, 2, 2, 2, 2}}, 1080);
  store.insert({MemoKind::single_vertex, 5, 1, {}}, make_rational(-7, 3));
  store.insert({MemoKind::full_space, 3, 2, {3, 3, 2}}, 2);  // idempotent
  CHECK(store.size() == 3);
  CHECK_THROWS_AS(store.insert({MemoKind::full_space, 3, 2, {3, 3, 2}}, 3), VerificationError);

  const auto text = store.serialize();
  CHECK(text.rfind("contactcount-cache v1\n", 0) == 0);
  CHECK(text.find("G 3 2 3,3,2 2/1\n") != std::string::npos);
  CHECK(text.find("I 5 1 - -7/3\n") != std::string::npos);

  const auto path = (std::filesystem::temp_directory_path() / "contactcount-cache-test.txt").string();
  store.save(path);
  MemoStore loaded;
  loaded.load(path);
  CHECK(loaded.serialize() == text);
  CHECK(*loaded.find({MemoKind::single_vertex, 5, 1, {}}) == make_rational(-7, 3));
  std::filesystem::remove(path);

  MemoStore missing;
  missing.load(path);  // absent file: empty cache
  CHECK(missing.size() == 0);
}

TEST_CASE("cache parser is strict") {
  MemoStore s;
  CHECK_THROWS_AS(s.merge_text("contactcount-cache v2\n"), ParseError);
  CHECK_THROWS_AS(s.merge_text("something else\n"), ParseError);
  CHECK_THROWS_AS(s.merge_text(""), ParseError);
  CHECK_THROWS_AS(s.merge_text("contactcount-cache v1\nX 3 1 2 1/1\n"), ParseError);
  CHECK_THROWS_AS(s.merge_text("contactcount-cache v1\nG 3 1 2,3 1/1\n"), ParseError);
  CHECK_THROWS_AS(s.merge_text("contactcount-cache v1\nG 3 1 3,2 1\n"), ParseError);
  CHECK_THROWS_AS(s.merge_text("contactcount-cache v1\nG 3 1 3,2 1/1 extra\n"), ParseError);
  CHECK_THROWS_AS(s.merge_text("contactcount-cache v1\nG 3 1 3,,2 1/1\n"), ParseError);
  CHECK_NOTHROW(s.merge_text("contactcount-cache v1\nG 3 1 3,2 1/1\n"));
}
