#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <set>

#include "greedylab/chebyshev.hpp"
#include "greedylab/constants.hpp"
#include "greedylab/corpus.hpp"
#include "greedylab/examples.hpp"
#include "greedylab/greedy.hpp"
#include "greedylab/io.hpp"
#include "greedylab/report.hpp"
#include "greedylab/rng.hpp"

namespace {

using namespace greedylab;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitInputError = 2;

struct CommonOpts {
  std::string system_path;
  std::string family;
  double alpha = 1.0;
  double p = 2.0;
  int n = 8;
  std::string out_path;
  std::string format = "structured";
  std::uint64_t seed = 1;
};

void add_system_flags(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--system", opts.system_path, "system file (overrides family flags)");
  cmd->add_option("--family", opts.family, "l1_alpha | sup_norm | lp_variant");
  cmd->add_option("--alpha", opts.alpha, "family parameter alpha");
  cmd->add_option("--n", opts.n, "family ambient dimension");
  cmd->add_option("--p", opts.p, "family exponent p");
  cmd->add_option("--out", opts.out_path, "write the report here instead of stdout");
  cmd->add_option("--format", opts.format, "structured | tabular")
      ->check(CLI::IsMember({"structured", "tabular"}));
  cmd->add_option("--seed", opts.seed, "seed recorded in the report");
}

ExampleSpec example_spec_from_flags(const CommonOpts& opts) {
  nlohmann::json j;
  j["family"] = opts.family;
  j["alpha"] = opts.alpha;
  j["p"] = opts.p;
  j["n"] = opts.n;
  return example_spec_from_json(j);
}

// files override flags
MinimalSystem resolve_system(const CommonOpts& opts) {
  if (!opts.system_path.empty()) return load_system_file(opts.system_path);
  if (!opts.family.empty()) return build_example(example_spec_from_flags(opts));
  throw ParseError("no system given: use --system or --family");
}

std::optional<ExampleSpec> resolve_example_spec(const CommonOpts& opts) {
  if (!opts.system_path.empty()) {
    auto j = load_json_file(opts.system_path);
    if (j.contains("family")) return example_spec_from_json(j);
    return std::nullopt;
  }
  if (!opts.family.empty()) return example_spec_from_flags(opts);
  return std::nullopt;
}

int emit(const Report& report, const CommonOpts& opts, int code_on_success) {
  std::string body =
      opts.format == "tabular" ? to_tabular(report) : to_json(report).dump(2) + "\n";
  if (opts.out_path.empty())
    std::cout << body;
  else
    write_text_file(opts.out_path, body);
  return report.any_failure() ? kExitCheckFailure : code_on_success;
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

int cmd_validate(const CommonOpts& opts) {
  Stopwatch clock;
  MinimalSystem sys = resolve_system(opts);
  SystemValidation v = validate_system(sys);
  Report report;
  report.system_hash = system_hash(sys);
  report.seed = opts.seed;
  report.generator = Rng::generator_id();
  ReportEntry entry;
  entry.op = "validate";
  entry.status = v.ok() ? "OK" : "FAIL";
  entry.outputs = validation_to_json(v);
  if (!v.ok()) entry.witness = {{"reproducer", {{"system", system_to_json(sys)}}}};
  report.entries.push_back(entry);
  report.timings["total_ms"] = clock.ms();
  return emit(report, opts, kExitOk);
}

struct RunOpts {
  std::string algo;
  std::string x_text;
  int m = -1;
  double tau = -1.0;
  std::string support_text;
  std::string selector = "greedy";
};

int cmd_run(const CommonOpts& opts, const RunOpts& ropts) {
  Stopwatch clock;
  MinimalSystem sys = resolve_system(opts);
  CoeffVec x = parse_number_list(ropts.x_text);
  if (x.size() != static_cast<size_t>(sys.size()))
    throw ParseError("--x length must equal the system size");

  Report report;
  report.system_hash = system_hash(sys);
  report.seed = opts.seed;
  report.generator = Rng::generator_id();
  ReportEntry entry;
  entry.op = "run." + ropts.algo;
  entry.status = "OK";
  entry.inputs = {{"x", x}, {"algo", ropts.algo}};

  if (ropts.algo == "tga") {
    if (ropts.tau >= 0.0 || !ropts.support_text.empty())
      throw ParseError("tga takes neither --tau nor --support");
    if (ropts.m < 0) throw ParseError("tga requires --m");
    CoeffVec g = greedy_sum(x, ropts.m);
    CoeffVec r(x);
    for (size_t i = 0; i < r.size(); ++i) r[i] -= g[i];
    entry.inputs["m"] = ropts.m;
    entry.outputs = {{"approximant", g},
                     {"greedy_set", to_one_based(greedy_set(x, ropts.m))},
                     {"residual_norm", coeff_norm(sys, r)}};
  } else if (ropts.algo == "cga") {
    if (ropts.tau >= 0.0) throw ParseError("cga does not take --tau");
    std::vector<int> support;
    if (!ropts.support_text.empty()) {
      support = parse_index_list_one_based(ropts.support_text);
    } else {
      if (ropts.m < 0) throw ParseError("cga requires --support or --m");
      support = greedy_set(x, ropts.m);
    }
    ChebSolution sol = chebyshev_approximant(sys, x, support);
    if (ropts.m >= 0) entry.inputs["m"] = ropts.m;
    entry.inputs["support"] = to_one_based(support);
    entry.outputs = cheb_to_json(sol);
    entry.outputs["residual_norm"] = sol.error;
  } else if (ropts.algo == "branch") {
    if (ropts.tau < 0.0) throw ParseError("branch requires --tau");
    if (!ropts.support_text.empty()) throw ParseError("branch does not take --support");
    if (ropts.m < 0) throw ParseError("branch requires --m");
    const BranchSelector& sel = find_branch_selector(ropts.selector);
    CoeffVec g = branch_greedy_sum(x, ropts.tau, ropts.m, sel);
    CoeffVec r(x);
    for (size_t i = 0; i < r.size(); ++i) r[i] -= g[i];
    entry.inputs["m"] = ropts.m;
    entry.inputs["tau"] = ropts.tau;
    entry.inputs["selector"] = sel.id;
    bool zero = std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; });
    entry.outputs = {{"approximant", g}, {"residual_norm", coeff_norm(sys, r)}};
    if (!zero)
      entry.outputs["branch_ordering"] = to_one_based(branch_ordering(x, ropts.tau, sel));
  } else {
    throw ParseError("unknown --algo '" + ropts.algo + "'");
  }
  report.entries.push_back(entry);
  report.timings["total_ms"] = clock.ms();
  return emit(report, opts, kExitOk);
}

struct EstimateOpts {
  std::string constants = "K_1q,K_2q,K_d,K_sd,K_hd,K_a,K_s,K_g";
  std::string corpus_text;
  double tau = 1.0;
  std::string selector = "greedy";
};

int cmd_estimate(const CommonOpts& opts, const EstimateOpts& eopts) {
  Stopwatch clock;
  MinimalSystem sys = resolve_system(opts);
  static const std::set<std::string> kNames = {"K_1q", "K_2q", "K_d", "K_sd", "K_hd", "K_a",
                                               "K_s", "K_g", "K_ws", "K_wag", "K_bsg", "K_bag"};
  std::vector<std::string> wanted;
  {
    std::stringstream ss(eopts.constants);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      if (!kNames.count(tok)) throw ParseError("unknown constant '" + tok + "'");
      wanted.push_back(tok);
    }
  }
  if (wanted.empty()) throw ParseError("no constants requested");

  CorpusSpec cspec = eopts.corpus_text.empty() ? default_corpus_spec(sys.size())
                                               : CorpusSpec::parse(eopts.corpus_text);
  Corpus corpus = generate_corpus(sys, cspec, opts.seed);
  auto has = [&](const char* name) {
    return std::find(wanted.begin(), wanted.end(), name) != wanted.end();
  };

  std::vector<ConstantEstimate> estimates;
  if (has("K_1q") || has("K_2q")) {
    auto [k1, k2] = estimate_quasi_greedy(sys, corpus);
    if (has("K_1q")) estimates.push_back(k1);
    if (has("K_2q")) estimates.push_back(k2);
  }
  if (has("K_d") || has("K_sd") || has("K_hd")) {
    auto d = estimate_democracy_family(sys, std::min(sys.size(), 6), opts.seed);
    if (has("K_d")) estimates.push_back(d.k_d);
    if (has("K_sd")) estimates.push_back(d.k_sd);
    if (has("K_hd")) estimates.push_back(d.k_hd);
  }
  if (has("K_a")) estimates.push_back(estimate_almost_greedy(sys, corpus));
  if (has("K_s")) estimates.push_back(estimate_semi_greedy(sys, corpus));
  if (has("K_g")) estimates.push_back(estimate_greedy_constant(sys, corpus));
  if (has("K_ws") || has("K_wag")) {
    auto [ws, wag] = estimate_weak_constants(sys, corpus, eopts.tau);
    if (has("K_ws")) estimates.push_back(ws);
    if (has("K_wag")) estimates.push_back(wag);
  }
  if (has("K_bsg") || has("K_bag")) {
    auto [bsg, bag] =
        estimate_branch_constants(sys, corpus, eopts.tau, find_branch_selector(eopts.selector));
    if (has("K_bsg")) estimates.push_back(bsg);
    if (has("K_bag")) estimates.push_back(bag);
  }

  Report report;
  report.system_hash = system_hash(sys);
  report.seed = opts.seed;
  report.generator = corpus.generator_id;
  for (const auto& est : estimates) {
    ReportEntry entry;
    entry.op = "estimate." + est.name;
    entry.status = "OK";
    entry.inputs = {{"corpus", est.corpus_descriptor}};
    entry.outputs = estimate_to_json(est);
    report.entries.push_back(entry);
  }
  report.timings["total_ms"] = clock.ms();
  return emit(report, opts, kExitOk);
}

struct VerifyOpts {
  std::string theorems;
  std::string knowns_path;
  double tau = 0.5;
  int trials = 1000;
};

int cmd_verify(const CommonOpts& opts, const VerifyOpts& vopts) {
  Stopwatch clock;
  static const std::set<std::string> kTags = {"T2.2", "P2.3", "L4.1", "L4.6", "L4.9",
                                              "T5.5", "EX-L1", "EX-SUP", "EX-LP"};
  std::vector<std::string> tags;
  {
    std::stringstream ss(vopts.theorems);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      if (!kTags.count(tok)) throw ParseError("unknown theorem tag '" + tok + "'");
      tags.push_back(tok);
    }
  }
  if (tags.empty()) throw ParseError("no theorems requested");
  auto wants = [&](const char* tag) {
    return std::find(tags.begin(), tags.end(), tag) != tags.end();
  };

  std::vector<Known> knowns;
  if (!vopts.knowns_path.empty()) knowns = load_knowns_file(vopts.knowns_path);

  Report report;
  report.seed = opts.seed;
  report.generator = Rng::generator_id();

  const bool needs_system = wants("T2.2") || wants("P2.3") || wants("L4.1") || wants("L4.6") ||
                            wants("L4.9") || wants("T5.5");
  MinimalSystem sys;
  if (needs_system) {
    sys = resolve_system(opts);
    report.system_hash = system_hash(sys);
  }

  auto add_checks = [&](const std::vector<InequalityCheck>& checks, const std::string& prefix,
                        const MinimalSystem& checked_sys) {
    for (const auto& c : checks) {
      if (c.id.rfind(prefix, 0) != 0) continue;
      ReportEntry entry;
      entry.op = "check." + c.id;
      entry.status = to_string(c.status);
      entry.outputs = check_to_json(c);
      if (c.status == CheckStatus::Fail)
        entry.witness = {{"reproducer", {{"system", system_to_json(checked_sys)}}}};
      report.entries.push_back(entry);
    }
  };

  if (wants("T2.2") || wants("P2.3") || wants("L4.1") || wants("T5.5")) {
    Corpus corpus = generate_corpus(sys, default_corpus_spec(sys.size()), opts.seed);
    std::vector<ConstantEstimate> ests;
    auto [k1, k2] = estimate_quasi_greedy(sys, corpus);
    ests.push_back(k1);
    ests.push_back(k2);
    if (wants("T2.2") || wants("P2.3")) {
      auto d = estimate_democracy_family(sys, std::min(sys.size(), 6), opts.seed);
      ests.push_back(d.k_d);
      ests.push_back(d.k_sd);
      ests.push_back(d.k_hd);
    }
    if (wants("T2.2")) ests.push_back(estimate_almost_greedy(sys, corpus));
    auto checks = check_inequalities(sys, ests, knowns);
    if (wants("T2.2")) add_checks(checks, "T2.2", sys);
    if (wants("P2.3")) add_checks(checks, "P2.3", sys);
    if (wants("L4.1")) add_checks(checks, "L4.1", sys);
    if (wants("T5.5")) add_checks(checks, "T5.5", sys);
  }

  if (wants("L4.6")) {
    MinimalSystem extended = extend_with_apex(sys);
    Corpus corpus = generate_corpus(extended, default_corpus_spec(extended.size()), opts.seed);
    auto [k1, k2] = estimate_quasi_greedy(extended, corpus);
    (void)k2;
    k1.name = "K_1q(B2)";
    auto d = estimate_democracy_family(extended, std::min(extended.size(), 6), opts.seed);
    d.k_sd.name = "K_sd(B2)";
    std::vector<ConstantEstimate> ests = {k1, d.k_sd};
    add_checks(check_inequalities(extended, ests, knowns), "L4.6", extended);
  }

  if (wants("L4.9")) {
    Rng rng(opts.seed);
    const int n = sys.size();
    int violations = 0;
    int trials = std::max(1, vopts.trials);
    for (int t = 0; t < trials; ++t) {
      int support_size = rng.uniform_int(0, n);
      CoeffVec x(n, 0.0);
      auto s = rng.subset(n, support_size);
      for (int i : s) {
        int v = 0;
        while (v == 0) v = rng.uniform_int(-3, 3);
        x[i] = v;
      }
      int actual_support = 0;
      for (double v : x)
        if (v != 0.0) ++actual_support;
      int m = rng.uniform_int(0, n);
      double sm = sigma_m(sys, x, m).value;
      bool null_error = sm <= 1e-9;
      bool small_support = actual_support <= m;
      if (null_error != small_support) ++violations;
      if (small_support) {
        std::vector<int> supp;
        for (int i = 0; i < n; ++i)
          if (x[i] != 0.0) supp.push_back(i);
        CoeffVec r(x);
        for (int i : supp) r[i] = 0.0;
        if (coeff_norm(sys, r) > 1e-8) ++violations;
      }
    }
    ReportEntry entry;
    entry.op = "check.L4.9";
    entry.status = violations == 0 ? "PASS" : "FAIL";
    entry.inputs = {{"trials", trials}};
    entry.outputs = {{"violations", violations},
                     {"statement", "sigma_m(x) = 0 iff |supp(x)| <= m, and then x = P_supp(x)"}};
    if (violations > 0) entry.witness = {{"reproducer", {{"system", system_to_json(sys)}}}};
    report.entries.push_back(entry);
  }

  auto run_family = [&](const char* tag, ExampleFamily family) {
    if (!wants(tag)) return;
    auto spec = resolve_example_spec(opts);
    if (!spec || spec->family != family)
      throw ParseError(std::string(tag) + " needs matching --family flags or a family file");
    ClaimOptions copt;
    copt.trials = vopts.trials;
    copt.seed = opts.seed;
    copt.taus = {1.0, vopts.tau};
    for (const auto& claim : verify_example_claims(*spec, copt)) {
      ReportEntry entry;
      entry.op = std::string("claim.") + tag;
      entry.status = claim.status;
      entry.outputs = claim_to_json(claim);
      if (claim.status == "FAIL")
        entry.witness = {{"reproducer", {{"system", system_to_json(build_example(*spec))}}}};
      report.entries.push_back(entry);
    }
  };
  run_family("EX-L1", ExampleFamily::L1Alpha);
  run_family("EX-SUP", ExampleFamily::SupNorm);
  run_family("EX-LP", ExampleFamily::LpVariant);

  report.timings["total_ms"] = clock.ms();
  return emit(report, opts, kExitOk);
}

int cmd_report(const std::string& in_path, const CommonOpts& opts) {
  Report report = report_from_json(load_json_file(in_path));
  return emit(report, opts, kExitOk);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"greedylab: greedy approximation laboratory over finite biorthogonal systems"};
  app.require_subcommand(1);

  CommonOpts vopts_common, ropts_common, eopts_common, fopts_common, repopts_common;
  RunOpts ropts;
  EstimateOpts eopts;
  VerifyOpts vopts;
  std::string report_in;

  CLI::App* validate = app.add_subcommand("validate", "check system structural invariants");
  add_system_flags(validate, vopts_common);

  CLI::App* run = app.add_subcommand("run", "run one approximation algorithm");
  add_system_flags(run, ropts_common);
  run->add_option("--algo", ropts.algo, "tga | cga | branch")->required();
  run->add_option("--x", ropts.x_text, "coefficient vector, comma separated")->required();
  run->add_option("--m", ropts.m, "number of terms");
  run->add_option("--tau", ropts.tau, "weakness parameter (branch only)");
  run->add_option("--support", ropts.support_text, "1-based support indices (cga only)");
  run->add_option("--selector", ropts.selector, "branch selector id");

  CLI::App* estimate = app.add_subcommand("estimate", "estimate named constants with witnesses");
  add_system_flags(estimate, eopts_common);
  estimate->add_option("--constants", eopts.constants, "comma separated constant names");
  estimate->add_option("--corpus", eopts.corpus_text, "corpus spec, e.g. gaussian=200,blocks=3");
  estimate->add_option("--tau", eopts.tau, "weakness parameter for weak/branch constants");
  estimate->add_option("--selector", eopts.selector, "branch selector id");

  CLI::App* verify = app.add_subcommand("verify", "run quantitative checks and family claims");
  add_system_flags(verify, fopts_common);
  verify->add_option("--theorems", vopts.theorems, "comma separated tags")->required();
  verify->add_option("--knowns", vopts.knowns_path, "knowns file with upper bounds");
  verify->add_option("--tau", vopts.tau, "weakness parameter used by sweeps");
  verify->add_option("--trials", vopts.trials, "sweep trial count");

  CLI::App* reportc = app.add_subcommand("report", "re-emit a stored report");
  add_system_flags(reportc, repopts_common);
  reportc->add_option("--in", report_in, "stored report path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (validate->parsed()) return cmd_validate(vopts_common);
    if (run->parsed()) return cmd_run(ropts_common, ropts);
    if (estimate->parsed()) return cmd_estimate(eopts_common, eopts);
    if (verify->parsed()) return cmd_verify(fopts_common, vopts);
    if (reportc->parsed()) return cmd_report(report_in, repopts_common);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailure;
  }
  return kExitInputError;
}
