#include "contactcount/cli.hpp"

#include "contactcount/errors.hpp"
#include "contactcount/strata.hpp"
#include "contactcount/tree_io.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

namespace contactcount {

namespace {

struct ExpectedRow {
  int n, d;
  std::vector<int> a;  // a[i] conditions of codim i+2
  long long value;
  bool long_running;
};

// Copied from the published tables of irreducible contact curves in P^3
// (degrees 3..5) and of irreducible contact conics in P^5.
const std::vector<ExpectedRow>& p3_expected() {
  static const std::vector<ExpectedRow> rows{
      {3, 3, {7, 0}, 1080, false},     {3, 3, {5, 1}, 132, false},     {3, 3, {3, 2}, 18, false},
      {3, 3, {1, 3}, 3, false},        {3, 4, {9, 0}, 145664, false},  {3, 4, {7, 1}, 12800, false},
      {3, 4, {5, 2}, 1216, false},     {3, 4, {3, 3}, 128, false},     {3, 4, {1, 4}, 16, false},
      {3, 5, {11, 0}, 65619360, true}, {3, 5, {9, 1}, 4501008, true},  {3, 5, {7, 2}, 328824, true},
      {3, 5, {5, 3}, 25884, true},     {3, 5, {3, 4}, 2250, true},     {3, 5, {1, 5}, 225, true},
  };
  return rows;
}

const std::vector<ExpectedRow>& p5_conics_expected() {
  static const std::vector<ExpectedRow> rows{
      {5, 2, {11, 0, 0, 0}, 27184, false}, {5, 2, {9, 1, 0, 0}, 7554, false}, {5, 2, {8, 0, 1, 0}, 1262, false},
      {5, 2, {7, 2, 0, 0}, 2112, false},   {5, 2, {7, 0, 0, 1}, 432, false},  {5, 2, {6, 1, 1, 0}, 355, false},
      {5, 2, {5, 3, 0, 0}, 594, false},    {5, 2, {5, 1, 0, 1}, 119, false},  {5, 2, {5, 0, 2, 0}, 58, false},
      {5, 2, {4, 2, 1, 0}, 100, false},    {5, 2, {4, 0, 1, 1}, 30, false},   {5, 2, {3, 4, 0, 0}, 168, false},
      {5, 2, {3, 2, 0, 1}, 22, false},     {5, 2, {3, 1, 2, 0}, 16, false},   {5, 2, {3, 0, 0, 2}, 8, false},
      {5, 2, {2, 3, 1, 0}, 28, false},     {5, 2, {2, 1, 1, 1}, 3, false},    {5, 2, {2, 0, 3, 0}, 2, false},
      {5, 2, {1, 5, 0, 0}, 48, false},     {5, 2, {1, 3, 0, 1}, 2, false},    {5, 2, {1, 2, 2, 0}, 4, false},
      {5, 2, {1, 1, 0, 2}, 0, false},      {5, 2, {1, 0, 2, 1}, 0, false},    {5, 2, {0, 4, 1, 0}, 8, false},
      {5, 2, {0, 2, 1, 1}, 0, false},      {5, 2, {0, 1, 3, 0}, 0, false},    {5, 2, {0, 0, 1, 2}, 0, false},
  };
  return rows;
}

std::string a_vector(const std::vector<int>& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
  return s + ")";
}

// "1:2,2:3,3:3" -> codims by label; every label 1..m exactly once.
std::vector<int> parse_label_conditions(std::string_view spec, int m, int n) {
  std::vector<int> codims(m, -1);
  if (spec.empty()) throw ParseError("empty condition list");
  std::size_t start = 0;
  while (true) {
    const auto comma = spec.find(',', start);
    const auto item = spec.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected label:codim, got '" + std::string(item) + "'");
    int label = 0, codim = 0;
    auto whole = [](std::string_view t, int& v) {
      const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
      return !t.empty() && ec == std::errc{} && p == t.data() + t.size();
    };
    if (!whole(item.substr(0, colon), label) || !whole(item.substr(colon + 1), codim))
      throw ParseError("bad condition '" + std::string(item) + "'");
    if (label < 1 || label > m) throw ParseError("label " + std::to_string(label) + " is not a leaf of the tree");
    if (codim < 0 || codim > n) throw ParseError("codim " + std::to_string(codim) + " outside 0.." + std::to_string(n));
    if (codims[label - 1] != -1) throw ParseError("label " + std::to_string(label) + " given twice");
    codims[label - 1] = codim;
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  for (int i = 0; i < m; ++i)
    if (codims[i] < 0) throw ParseError("no condition for label " + std::to_string(i + 1));
  return codims;
}

struct Globals {
  std::string cache;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  bool verify = true;
  bool verbose = false;
};

class Session {
 public:
  Session(const Globals& g, std::ostream& err)
      : engine_({.seed = g.seed, .threads = g.threads, .verify = g.verify}),
        memo_(std::make_shared<MemoStore>()),
        calc_(engine_, memo_),
        cache_path_(g.cache) {
    if (!cache_path_.empty()) memo_->load(cache_path_);
    calc_.set_diagnostics([&err, verbose = g.verbose](const std::string& msg) {
      // timing lines start with G; warnings always pass
      if (verbose || msg.rfind("G", 0) != 0) err << "contact-count: " << msg << "\n";
    });
  }
  void save() const {
    if (!cache_path_.empty()) memo_->save(cache_path_);
  }
  const StrataCalculus& calc() const { return calc_; }
  const LocalizationEngine& engine() const { return engine_; }

 private:
  LocalizationEngine engine_;
  std::shared_ptr<MemoStore> memo_;
  StrataCalculus calc_;
  std::string cache_path_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact counts of rational contact curves in odd-dimensional projective space", "contact-count"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--cache", g.cache, "Persistent cache file");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
  app.add_option("--seed", g.seed, "Seed for the localization weights");
  app.add_flag("--verify-weights,!--no-verify-weights", g.verify, "Evaluate with two weight vectors and compare");
  app.add_flag("-v,--verbose", g.verbose, "Per-invariant timing on stderr");

  int m = 0, d = 0, n = 3, max_d = 3;
  bool positive = false, dot = false, breakdown = false, diff = false, long_rows = false, verify_lv = false;
  std::string out_path, cond, tree_path, which = "p3", tau1_path, tau2_path;

  auto* trees = app.add_subcommand("trees", "List the stable (m,d)-trees");
  trees->add_option("--m", m, "Number of leaves")->required()->check(CLI::NonNegativeNumber);
  trees->add_option("--d", d, "Total degree")->required()->check(CLI::NonNegativeNumber);
  trees->add_flag("--positive", positive, "Only trees with a positive-degree vertex");
  trees->add_flag("--dot", dot, "Append a DOT rendering of each tree");
  trees->add_option("--out", out_path, "Write the listing to this file");

  auto* gw = app.add_subcommand("gw", "Integral over the full moduli space");
  gw->add_option("--n", n, "Odd ambient dimension")->default_val(3);
  gw->add_option("--d", d, "Degree")->required()->check(CLI::NonNegativeNumber);
  gw->add_option("--cond", cond, "Conditions, e.g. 2^7,3")->required();

  auto* stratum = app.add_subcommand("stratum", "Integral over the closure of one stratum");
  stratum->add_option("--n", n, "Odd ambient dimension")->default_val(3);
  stratum->add_option("--tree", tree_path, "Tree file")->required();
  stratum->add_option("--cond", cond, "Conditions per leaf, label:codim,...")->required();

  auto* irreducible = app.add_subcommand("irreducible", "Count irreducible contact curves");
  irreducible->add_option("--n", n, "Odd ambient dimension")->default_val(3);
  irreducible->add_option("--d", d, "Degree")->required()->check(CLI::NonNegativeNumber);
  irreducible->add_option("--cond", cond, "Conditions, e.g. 2^7,3")->required();
  irreducible->add_flag("--breakdown", breakdown, "Also print the value of every boundary stratum");

  auto* table = app.add_subcommand("table", "Recompute the published tables");
  table->add_option("--which", which, "p3 or p5conics")->check(CLI::IsMember({"p3", "p5conics"}));
  table->add_option("--max-d", max_d, "Largest degree for p3")->check(CLI::Range(3, 5));
  table->add_flag("--diff", diff, "Compare with the published values");
  table->add_flag("--long", long_rows, "Allow the degree 5 rows of p3");

  auto* lv = app.add_subcommand("lv", "Degree-d plane contact curves through d+3 lines");
  lv->add_option("--d", d, "Degree")->required()->check(CLI::PositiveNumber);
  lv->add_flag("--verify", verify_lv, "Recompute the two stratum integrals and the recombination");
  lv->add_option("--tau1", tau1_path, "Tree file for the first family");
  lv->add_option("--tau2", tau2_path, "Tree file for the second family");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "contact-count: " << e.what() << "\n";
    return exit_usage;
  }

  try {
    if (trees->parsed()) {
      std::ostringstream listing;
      const auto classes = enumerate_stable_trees(m, d, positive);
      for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto& t = classes[i].tree;
        listing << "# class " << i + 1 << " aut=" << automorphism_order(t) << " codim=" << codimension(t) << "\n"
                << format_tree(t);
        if (dot) listing << to_dot(t, "tree" + std::to_string(i + 1));
        listing << "\n";
      }
      if (out_path.empty()) {
        out << listing.str();
      } else {
        std::ofstream file(out_path, std::ios::trunc);
        if (!file || !(file << listing.str())) {
          err << "contact-count: cannot write '" << out_path << "'\n";
          return exit_usage;
        }
      }
      out << "count " << classes.size() << "\n";
      return exit_ok;
    }

    Session session(g, err);
    const auto& calc = session.calc();

    if (gw->parsed()) {
      out << to_string(calc.full_space_integral(n, d, parse_condition_spec(n, cond))) << "\n";
    } else if (stratum->parsed()) {
      const auto tree = read_tree_file(tree_path);
      const LabeledQuery q{n, tree, parse_label_conditions(cond, tree.marks(), n)};
      out << to_string(calc.graph_count(q)) << "\n";
    } else if (irreducible->parsed()) {
      const auto conditions = parse_condition_spec(n, cond);
      out << calc.irreducible_count(d, conditions).get_str() << "\n";
      if (breakdown && conditions.total_codim() == moduli_dim(n, d, conditions.size())) {
        out << "full\t" << to_string(calc.full_space_integral(n, d, conditions)) << "\n";
        for (const auto& term : calc.breakdown(n, d, conditions))
          out << "stratum\t" << canonical_key(term.tree).code << "\t" << to_string(term.value) << "\n";
      }
    } else if (table->parsed()) {
      if (which == "p3" && max_d == 5 && !long_rows) {
        err << "contact-count: degree 5 rows need --long\n";
        return exit_usage;
      }
      const auto& rows = which == "p3" ? p3_expected() : p5_conics_expected();
      int mismatches = 0;
      for (const auto& row : rows) {
        if (row.n == 3 && row.d > max_d) continue;
        const auto start = std::chrono::steady_clock::now();
        const Integer value = calc.irreducible_count(row.n, row.d, row.a);
        out << row.d << "\t" << a_vector(row.a) << "\t" << value.get_str();
        if (diff) {
          const bool ok = value == Integer(std::to_string(row.value));
          mismatches += !ok;
          out << "\t" << row.value << "\t" << (ok ? "ok" : "MISMATCH");
        }
        out << "\n";
        if (g.verbose) {
          const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
          err << "contact-count: row d=" << row.d << " " << a_vector(row.a) << " in " << took.count() << " s\n";
        }
      }
      if (diff && mismatches) {
        err << "contact-count: " << mismatches << " mismatching rows\n";
        session.save();
        return exit_verification;
      }
    } else if (lv->parsed()) {
      const Integer closed = lv_closed_form(d);
      out << "closed_form\t" << closed.get_str() << "\n";
      if (verify_lv) {
        if (d < 3) {
          err << "contact-count: --verify needs d >= 3\n";
          return exit_usage;
        }
        const auto t1 = tau1_path.empty() ? lv_tree_tau1(d) : read_tree_file(tau1_path);
        const auto t2 = tau2_path.empty() ? lv_tree_tau2(d) : read_tree_file(tau2_path);
        for (const auto* t : {&t1, &t2})
          if (t->marks() != d + 3 || t->total_degree() != d) {
            err << "contact-count: tree file is not a (" << d + 3 << "," << d << ")-tree\n";
            return exit_usage;
          }
        const std::vector<int> lines(d + 3, 2);
        const Rational s1 = calc.graph_count({3, t1, lines});
        const Rational s2 = calc.graph_count({3, t2, lines});
        const Rational total = lv_recombination(d, s1, s2);
        out << "tau1\t" << to_string(s1) << "\n"
            << "tau2\t" << to_string(s2) << "\n"
            << "recombined\t" << to_string(total) << "\n";
        if (s1 != 4 || s2 != 8 || total != Rational(closed)) {
          err << "contact-count: expected 4, 8 and " << closed.get_str() << "\n";
          session.save();
          return exit_verification;
        }
      }
    }
    session.save();
    return exit_ok;
  } catch (const VerificationError& e) {
    err << "contact-count: verification failed: " << e.what() << "\n";
    return exit_verification;
  } catch (const DegenerateWeightsError& e) {
    err << "contact-count: verification failed: " << e.what() << "\n";
    return exit_verification;
  } catch (const Error& e) {
    err << "contact-count: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "contact-count: " << e.what() << "\n";
    return exit_usage;
  }
}

}  // namespace contactcount
