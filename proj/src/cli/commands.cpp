#include "genset/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "genset/errors.hpp"
#include "genset/kneser.hpp"
#include "genset/sampling.hpp"
#include "genset/search.hpp"
#include "genset/setfam.hpp"
#include "genset/stability.hpp"

namespace genset {

namespace {

using nlohmann::json;

constexpr int kMaxAnalyzeOrder = 64;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  // shared
  int threads = 1;
  std::string format = "json";
  std::string input;
  std::string output;
  std::string graph;
  // sizes
  int n = 6;
  int k = 2;
  // search
  bool base = false;
  bool enumerate = false;
  bool conjecture = false;
  double budget_seconds = 0;
  std::uint64_t node_limit = 0;
  std::size_t optima_cap = 10000;
  // sampling
  std::uint64_t seed = 0;
  std::uint64_t trials = 10000;
  int parts = 0;  // 0: k + 1
  int t = 1;
  int l = 1;
  int s = 1;
  std::string theta = "1/2";
  bool exact = false;
  // analyze
  std::string emit_graph;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

Rational parse_fraction(const std::string& text) {
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const long long v = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument("trailing characters");
      return Rational(v);
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    const long long p = std::stoll(num, &used);
    if (used != num.size()) throw std::invalid_argument("trailing characters");
    const long long q = std::stoll(den, &used);
    if (used != den.size() || q == 0) throw std::invalid_argument("bad denominator");
    return Rational(p, q);
  } catch (const std::exception&) {
    throw UsageError("expected a fraction like 1/3, got '" + text + "'");
  }
}

int default_threads() {
  if (const char* env = std::getenv("GENSET_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (const std::exception&) {
    }
  }
  return 1;
}

void print(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

SetFamily load_family(const Options& o) { return parse_family(read_file(o.input)); }

// Family from --input, or the canonical generator for --n/--k.
SetFamily sample_source(const Options& o, json& config) {
  if (!o.input.empty()) {
    config["input"] = o.input;
    return load_family(o);
  }
  config["n"] = o.n;
  config["k"] = o.k;
  config["family"] = "canonical";
  return canonical_generator(balanced_partition(o.n, o.k));
}

// ---------------------------------------------------------------------------

int cmd_gen(const Options& o, std::ostream& out) {
  const auto f = canonical_generator(balanced_partition(o.n, o.k));
  std::ostringstream text;
  text << "# canonical " << o.k << "-generator, n=" << o.n << ", size " << canonical_size(o.n, o.k)
       << '\n'
       << format_family(f);
  if (o.output.empty()) {
    out << text.str();
    return kExitOk;
  }
  write_file(o.output, text.str());
  print(out, {{"config", {{"subcommand", "gen"}, {"n", o.n}, {"k", o.k}, {"output", o.output}}},
              {"size", f.size()},
              {"canonical_size", canonical_size(o.n, o.k)}});
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const auto f = load_family(o);
  const int n = f.ground_n();
  const auto gen = enumerate_k_unions(f, o.k);
  const auto base = enumerate_k_overlapping_unions(f, o.k);
  json report = {
      {"config", {{"subcommand", "verify"}, {"input", o.input}, {"k", o.k}}},
      {"n", n},
      {"size", f.size()},
      {"is_k_generator", gen.all_covered()},
      {"is_k_base", base.all_covered()},
      {"covered", gen.covered_count()},
      {"base_covered", base.covered_count()},
      {"total", gen.total()},
      {"uncovered_witness", nullptr},
      {"base_uncovered_witness", nullptr},
      {"canonical_size", nullptr},
      {"counting_lower_bound", nullptr},
  };
  if (auto w = gen.first_uncovered()) report["uncovered_witness"] = format_mask(*w);
  if (auto w = base.first_uncovered()) report["base_uncovered_witness"] = format_mask(*w);
  if (o.k <= n) {
    report["canonical_size"] = canonical_size(n, o.k);
    report["counting_lower_bound"] = counting_lower_bound(n, o.k);
  }
  print(out, report);
  return gen.all_covered() ? kExitOk : kExitFalse;
}

int cmd_analyze(const Options& o, std::ostream& out) {
  const auto f = load_family(o);
  if (f.size() > kMaxAnalyzeOrder) {
    throw CapacityError("analyze supports families of at most " +
                        std::to_string(kMaxAnalyzeOrder) + " members");
  }
  const Graph h = disjointness_graph(f);
  if (!o.emit_graph.empty()) write_file(o.emit_graph, format_graph(h));

  const int max_r = std::min(o.k + 1, h.order());
  const auto counts = clique_counts(h, max_r);
  if (o.format == "csv") {
    out << "r,count,density\n";
    for (int r = 0; r <= max_r; ++r) {
      out << r << ',' << counts[r] << ','
          << to_fraction_string(clique_density(h, r).value) << '\n';
    }
    return kExitOk;
  }

  auto cliques = json::array();
  for (int r = 0; r <= max_r; ++r) {
    const auto d = clique_density(h, r);
    cliques.push_back({{"r", r},
                       {"count", counts[r].str()},
                       {"density", to_fraction_string(d.value)},
                       {"density_approx", to_double(d.value)}});
  }
  json report = {
      {"config",
       {{"subcommand", "analyze"}, {"input", o.input}, {"k", o.k}, {"format", o.format}}},
      {"family_size", f.size()},
      {"order", h.order()},
      {"edges", h.edge_count()},
      {"cliques", cliques},
      {"chromatic_number", nullptr},
      {"bipartization_distance", nullptr},
  };
  if (h.order() <= kMaxChromaticOrder) report["chromatic_number"] = chromatic_number(h);
  if (h.order() <= 24) report["bipartization_distance"] = bipartization_distance_exact(h);
  try {
    report["stability"] = to_json(extract_k_partition(h, o.k));
  } catch (const NoGoodCliqueError& e) {
    report["stability"] = {{"error", e.what()}, {"alpha", to_fraction_string(e.alpha())}};
  } catch (const std::exception& e) {
    report["stability"] = {{"error", e.what()}};
  }
  print(out, report);
  return kExitOk;
}

int cmd_search(const Options& o, std::ostream& out) {
  SearchBudget budget{o.budget_seconds, o.node_limit};
  json config = {{"subcommand", "search"},
                 {"n", o.n},
                 {"k", o.k},
                 {"mode", o.base ? "base" : "generator"},
                 {"enumerate", o.enumerate},
                 {"conjecture", o.conjecture},
                 {"budget", {{"seconds", o.budget_seconds}, {"node_limit", o.node_limit}}},
                 {"optima_cap", o.optima_cap},
                 {"seed", o.seed}};
  if (o.conjecture) {
    const auto report = verify_conjecture(o.n, o.k, budget);
    json j = to_json(report);
    j["config"] = config;
    print(out, j);
    return report.confirmed || report.inconclusive ? kExitOk : kExitFalse;
  }
  SearchOptions opts;
  opts.mode = o.base ? SearchMode::kBase : SearchMode::kGenerator;
  opts.enumerate_optima = o.enumerate;
  opts.budget = budget;
  opts.optima_cap = o.optima_cap;
  const auto result = min_generator_size(o.n, o.k, opts);
  if (!o.output.empty() && !result.optima.empty()) {
    config["output"] = o.output;
    write_file(o.output, format_family(result.optima.front()));
  }
  json j = to_json(result);
  j["config"] = config;
  print(out, j);
  return kExitOk;
}

json sample_config(const Options& o, const std::string& what) {
  return {{"subcommand", "sample"}, {"estimator", what}, {"seed", o.seed},
          {"trials", o.trials},     {"threads", o.threads}};
}

int cmd_sample_blowup(const Options& o, std::ostream& out) {
  json config = sample_config(o, "blowup");
  const auto f = sample_source(o, config);
  const int parts = o.parts > 0 ? o.parts : o.k + 1;
  config["parts"] = parts;
  config["t"] = o.t;
  const auto est = estimate_blowup_density(f, parts, o.t, o.trials, o.seed, o.threads);
  std::optional<double> exact;
  if (o.exact) {
    const BlowupSpec spec{std::vector<int>(parts, o.t)};
    exact = to_double(hom_density(blow_up(complete(parts), spec), disjointness_graph(f)));
  }
  json j = to_json(est, exact);
  j["config"] = config;
  print(out, j);
  return kExitOk;
}

int cmd_sample_oddcycle(const Options& o, std::ostream& out) {
  json config = sample_config(o, "oddcycle");
  const auto f = sample_source(o, config);
  config["l"] = o.l;
  config["t"] = o.t;
  const auto est = estimate_odd_cycle_density(f, o.l, o.t, o.trials, o.seed, o.threads);
  std::optional<double> exact;
  if (o.exact) {
    const BlowupSpec spec{std::vector<int>(2 * o.l + 1, o.t)};
    exact = to_double(hom_density(blow_up(cycle(2 * o.l + 1), spec), disjointness_graph(f)));
  }
  json j = to_json(est, exact);
  j["config"] = config;
  print(out, j);
  return kExitOk;
}

int cmd_sample_tail(const Options& o, std::ostream& out) {
  json config = sample_config(o, "tail");
  const auto f = sample_source(o, config);
  const Rational theta = parse_fraction(o.theta);
  config["t"] = o.t;
  config["theta"] = to_fraction_string(theta);
  const auto est = empirical_union_tail(f, o.t, theta, o.trials, o.seed, o.threads);
  const auto bound = analytic_tail_bound(f.ground_n(), f.size(), o.t, theta);
  json j = to_json(est);
  j["analytic_bound"] = to_fraction_string(bound.exact);
  j["analytic_bound_approx"] = bound.value;
  j["within_bound"] = est.mean - 4 * est.std_error <= bound.value;
  j["config"] = config;
  print(out, j);
  return kExitOk;
}

int cmd_sample_subset(const Options& o, std::ostream& out) {
  json config = sample_config(o, "subset");
  const auto f = sample_source(o, config);
  config["s"] = o.s;
  const auto est = odd_cycle_subset_test(f, o.s, o.trials, o.seed, o.threads);
  json j = to_json(est);
  j["config"] = config;
  print(out, j);
  return kExitOk;
}

int cmd_counterexample(const Options& o, std::ostream& out) {
  const auto f = counterexample_family(o.n);
  json config = {{"subcommand", "counterexample"}, {"n", o.n}};
  if (!o.output.empty()) {
    config["output"] = o.output;
    write_file(o.output, format_family(f));
  }
  std::vector<Mask> pairs;
  for (Mask m : f.members())
    if (std::popcount(m) == 2) pairs.push_back(m);
  const Graph two = disjointness_graph(SetFamily(o.n, pairs));
  json j = {{"config", config},
            {"family_size", f.size()},
            {"nominal_size", 15ULL << (o.n / 3)},
            {"two_element_members", pairs.size()},
            {"two_element_chromatic_number", nullptr},
            {"two_element_tripartization_distance", nullptr},
            {"kneser_blowup", nullptr}};
  if (two.order() <= kMaxChromaticOrder) {
    j["two_element_chromatic_number"] = chromatic_number(two);
  }
  if (two.order() <= 16) {
    j["two_element_tripartization_distance"] = kpartization_distance_exact(two, 3);
  }
  bool passed = true;
  if (o.n <= 12) {
    const auto report = verify_kneser_blowup(o.n);
    j["kneser_blowup"] = to_json(report);
    passed = report.passed;
  }
  print(out, j);
  return passed ? kExitOk : kExitFalse;
}

int cmd_stability(const Options& o, std::ostream& out) {
  json config = {{"subcommand", "stability"}, {"k", o.k}};
  Graph g;
  if (!o.graph.empty()) {
    config["graph"] = o.graph;
    g = parse_graph(read_file(o.graph));
  } else {
    config["input"] = o.input;
    const auto f = load_family(o);
    if (f.size() > kMaxAnalyzeOrder) {
      throw CapacityError("stability supports families of at most " +
                          std::to_string(kMaxAnalyzeOrder) + " members");
    }
    g = disjointness_graph(f);
  }
  try {
    json j = to_json(extract_k_partition(g, o.k));
    j["config"] = config;
    print(out, j);
    return kExitOk;
  } catch (const NoGoodCliqueError& e) {
    print(out, {{"config", config},
                {"error", e.what()},
                {"alpha", to_fraction_string(e.alpha())}});
    return kExitFalse;
  } catch (const EmptyDomainError& e) {
    print(out, {{"config", config}, {"error", e.what()}});
    return kExitFalse;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  o.threads = default_threads();

  CLI::App app{"Canonical k-generators, disjointness graphs and exact search", "genset"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--threads", o.threads, "worker threads (default: GENSET_THREADS or 1)")
      ->check(CLI::PositiveNumber);

  auto* gen = app.add_subcommand("gen", "write the canonical k-generator");
  gen->add_option("--n", o.n, "ground size")->required();
  gen->add_option("--k", o.k, "number of classes")->required();
  gen->add_option("--output,-o", o.output, "family file to write");

  auto* verify = app.add_subcommand("verify", "check a family file for k-generation");
  verify->add_option("--input,-i", o.input, "family file")->required();
  verify->add_option("--k", o.k, "k")->required()->check(CLI::PositiveNumber);

  auto* analyze = app.add_subcommand("analyze", "densities and stability of H[f]");
  analyze->add_option("--input,-i", o.input, "family file")->required();
  analyze->add_option("--k", o.k, "k")->check(CLI::PositiveNumber);
  analyze->add_option("--format", o.format, "json or csv (clique table)")
      ->check(CLI::IsMember({"json", "csv"}));
  analyze->add_option("--emit-graph", o.emit_graph, "write H[f] in graph format");

  auto* search = app.add_subcommand("search", "exact minimum k-generator search");
  search->add_option("--n", o.n, "ground size")->required();
  search->add_option("--k", o.k, "k")->required();
  search->add_flag("--base", o.base, "search k-bases instead of k-generators");
  search->add_flag("--enumerate", o.enumerate, "list every optimum");
  search->add_flag("--conjecture", o.conjecture, "run the uniqueness check for canonical optima");
  search->add_option("--budget-seconds", o.budget_seconds, "wall-clock budget, 0 = none")
      ->check(CLI::NonNegativeNumber);
  search->add_option("--node-limit", o.node_limit, "node budget, 0 = none");
  search->add_option("--optima-cap", o.optima_cap, "maximum optima kept when enumerating");
  search->add_option("--seed", o.seed, "recorded in the output; the search is deterministic");
  search->add_option("--output,-o", o.output, "write the first optimum as a family file");

  auto* sample = app.add_subcommand("sample", "seeded Monte-Carlo estimators");
  sample->require_subcommand(1);
  sample->fallthrough();
  auto add_sampling = [&](CLI::App* sub) {
    sub->add_option("--input,-i", o.input, "family file (default: canonical generator)");
    sub->add_option("--n", o.n, "ground size of the default family");
    sub->add_option("--k", o.k, "k of the default family");
    sub->add_option("--seed", o.seed, "64-bit seed (default 0)");
    sub->add_option("--trials", o.trials, "number of trials")->check(CLI::PositiveNumber);
  };
  auto* blowup = sample->add_subcommand("blowup", "h of a blown-up clique in H[f]");
  add_sampling(blowup);
  blowup->add_option("--parts", o.parts, "clique size (default k+1)");
  blowup->add_option("--t", o.t, "blow-up class size")->check(CLI::PositiveNumber);
  blowup->add_flag("--exact", o.exact, "also compute the exact density");
  auto* oddcycle = sample->add_subcommand("oddcycle", "h of a blown-up odd cycle in H[f]");
  add_sampling(oddcycle);
  oddcycle->add_option("--l", o.l, "cycle length 2l+1")->check(CLI::PositiveNumber);
  oddcycle->add_option("--t", o.t, "blow-up class size")->check(CLI::PositiveNumber);
  oddcycle->add_flag("--exact", o.exact, "also compute the exact density");
  auto* tail = sample->add_subcommand("tail", "small-union tail against the analytic bound");
  add_sampling(tail);
  tail->add_option("--t", o.t, "members per union")->check(CLI::PositiveNumber);
  tail->add_option("--theta", o.theta, "size threshold as a fraction of n");
  auto* subset = sample->add_subcommand("subset", "odd cycles in random (2s+1)-subsets");
  add_sampling(subset);
  subset->add_option("--s", o.s, "subset size 2s+1")->check(CLI::PositiveNumber);

  auto* counter = app.add_subcommand("counterexample", "six-block family and its Kneser blow-up");
  counter->add_option("--n", o.n, "ground size, a multiple of 6");
  counter->add_option("--output,-o", o.output, "family file to write");

  auto* stability = app.add_subcommand("stability", "k-partition extraction report");
  auto* in_opt = stability->add_option("--input,-i", o.input, "family file (uses H[f])");
  auto* graph_opt = stability->add_option("--graph,-g", o.graph, "graph file");
  in_opt->excludes(graph_opt);
  stability->add_option("--k", o.k, "k")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*stability && o.input.empty() && o.graph.empty()) {
    err << "stability needs --input or --graph\n";
    return kExitUsage;
  }

  try {
    if (*gen) return cmd_gen(o, out);
    if (*verify) return cmd_verify(o, out);
    if (*analyze) return cmd_analyze(o, out);
    if (*search) return cmd_search(o, out);
    if (*blowup) return cmd_sample_blowup(o, out);
    if (*oddcycle) return cmd_sample_oddcycle(o, out);
    if (*tail) return cmd_sample_tail(o, out);
    if (*subset) return cmd_sample_subset(o, out);
    if (*counter) return cmd_counterexample(o, out);
    if (*stability) return cmd_stability(o, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const CapacityError& e) {
    err << "capacity: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace genset
