#include "hyperel/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <functional>
#include <thread>

#include "hyperel/contiguity.hpp"
#include "hyperel/errors.hpp"
#include "hyperel/hyper_core.hpp"
#include "hyperel/question_engine.hpp"
#include "hyperel/reports.hpp"

namespace hyperel {

using nlohmann::json;

namespace {

unsigned default_threads() {
  if (const char* env = std::getenv("HYPEREL_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

struct CommonOptions {
  std::string output;
  std::string format = "json";
  unsigned threads = default_threads();
};

void add_common(CLI::App* sub, CommonOptions& common) {
  sub->add_option("--output,-o", common.output, "Write the report to this file");
  sub->add_option("--format", common.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--threads", common.threads, "Worker threads (default: $HYPEREL_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
}

RunConfig make_config(Command command, const CommonOptions& common) {
  RunConfig config;
  config.command = command;
  config.output_path = common.output;
  config.format = common.format == "csv" ? ReportFormat::csv : ReportFormat::json;
  config.threads = common.threads;
  return config;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Variant to_variant(int v) { return v == 3 ? Variant::three : Variant::one; }

std::string pair_list(const std::vector<PairN>& pairs) {
  std::string s = "{";
  for (std::size_t i = 0; i < pairs.size(); ++i) s += (i ? "," : "") + to_string(pairs[i]);
  return s + "}";
}

// --- subcommands -----------------------------------------------------------

int run_eval(int variant, std::optional<long> n1, std::optional<long> n2, const std::string& a,
             const std::string& b, const std::string& c, const std::string& x, const RunConfig& config,
             std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  Report report;
  report.command = to_string(Command::eval);
  if (n1 || n2) {
    if (!n1 || !n2) throw CLI::ValidationError("eval", "--n1 and --n2 go together");
    const PairN pair(*n1, *n2);
    const SearchRecord rec = evaluate_pair(to_variant(variant), pair);
    out << "ell=" << to_string(rec.ell) << " r=" << to_string(rec.r)
        << " equal=" << (rec.equal ? "true" : "false") << " magnitude=" << to_string(rec.magnitude)
        << "\n";
    report.parameters = {{"variant", variant}, {"n1", *n1}, {"n2", *n2}};
    report.records.push_back(to_json(rec));
    report.summary = {{"equality_pairs", rec.equal ? to_json(std::vector<PairN>{pair}) : json::array()},
                      {"greater_pairs", rec.magnitude == Magnitude::ell_greater
                                            ? to_json(std::vector<PairN>{pair})
                                            : json::array()},
                      {"certificates", json::array()},
                      {"verdict", rec.equal ? "equal" : "not equal"}};
  } else {
    if (a.empty() || b.empty() || c.empty() || x.empty()) {
      throw CLI::ValidationError("eval", "give --n1/--n2 or all of --a --b --c --x");
    }
    const F21Instance inst{parse_rational(a), parse_rational(b), parse_rational(c), parse_rational(x)};
    const ExactRational value = f21(inst);
    out << "2F1(" << a << ", " << b << "; " << c << "; " << x << ") = " << to_string(value) << "\n";
    report.parameters = {{"a", a}, {"b", b}, {"c", c}, {"x", x}};
    report.records.push_back({{"value", to_string(value)}});
    report.summary = {{"equality_pairs", json::array()},
                      {"greater_pairs", json::array()},
                      {"certificates", json::array()},
                      {"verdict", "evaluated"}};
  }
  report.wall_seconds = seconds_since(start);
  write_report(report, config);
  return kExitOk;
}

int run_search_command(RunConfig config, std::optional<long> stop_after, std::ostream& out,
                       std::ostream& err) {
  config.validate();
  SearchRunOptions options;
  options.stop_after_n2 = stop_after;
  SearchRun run = run_search(config, options);
  for (const auto& w : run.warnings) err << "warning: " << w << "\n";
  if (run.resumed) out << "resumed from n2=" << run.resumed_from_n2 << "\n";
  if (!run.report) {
    out << "stopped after n2=" << *stop_after << "; checkpoint saved\n";
    return kExitOk;
  }
  const Report& report = *run.report;
  write_report(report, config);
  const json& s = report.summary;
  out << "pairs evaluated: " << s.at("pairs_evaluated").get<std::string>() << "\n";
  out << "equality pairs: " << s.at("equality_pairs").dump() << "\n";
  out << "|ell|>|r| pairs: " << s.at("greater_pairs").dump() << "\n";
  out << "verdict: " << s.at("verdict").get<std::string>() << "\n";
  const bool finding = !s.at("unexpected_pairs").empty() || !s.at("conjecture_violations").empty();
  if (finding) {
    err << "UNEXPECTED FINDING: " << s.at("unexpected_pairs").dump() << " "
        << s.at("conjecture_violations").dump() << "\n";
  }
  return finding ? kExitFinding : kExitOk;
}

int run_verify_identities(const IdentitySuiteOptions& options, const RunConfig& config, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const auto checks = run_identity_suite(options);
  Report report;
  report.command = to_string(Command::verify_identities);
  report.parameters = {{"inversion_n2_max", options.inversion_n2_max},
                       {"representation_n2_max", options.representation_n2_max},
                       {"closed_form_n2_max", options.closed_form_n2_max},
                       {"kummer_N_max", options.kummer_N_max}};
  long failures = 0;
  for (const auto& c : checks) {
    failures += static_cast<long>(c.failures.size());
    report.records.push_back({{"check", c.name}, {"checked", c.checked}, {"failures", c.failures}});
    out << c.name << ": " << c.checked << " checked, " << c.failures.size() << " failed\n";
  }
  report.summary = {{"equality_pairs", json::array()},
                    {"greater_pairs", json::array()},
                    {"certificates", json::array()},
                    {"failures", failures},
                    {"verdict", failures == 0 ? "all identities hold" : "identity failures"}};
  report.wall_seconds = seconds_since(start);
  write_report(report, config);
  out << "verdict: " << report.summary.at("verdict").get<std::string>() << "\n";
  return failures == 0 ? kExitOk : kExitFinding;
}

int run_ttr(long k, long l, long m, const std::string& a, const std::string& b, const std::string& c,
            const std::string& x, const RunConfig& config, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const ParamPoint p{parse_rational(a), parse_rational(b), parse_rational(c)};
  const ThreeTermRelation rel = three_term_QR(k, l, m, p);
  out << "Q(x) = " << to_string(rel.Q) << "\n";
  out << "R(x) = " << to_string(rel.R) << "\n";
  Report report;
  report.command = to_string(Command::ttr);
  report.parameters = {{"k", k}, {"l", l}, {"m", m}, {"a", a}, {"b", b}, {"c", c}};
  json rec{{"Q", to_string(rel.Q)}, {"R", to_string(rel.R)}, {"q", to_string(rel.q)}, {"r", to_string(rel.r)}};
  std::string verdict = "relation computed";
  int code = kExitOk;
  if (!x.empty()) {
    const ExactRational x0 = parse_rational(x);
    const ExactRational Qx = rel.Q.eval(x0);
    const ExactRational Rx = rel.R.eval(x0);
    out << "Q(" << x << ") = " << to_string(Qx) << "\nR(" << x << ") = " << to_string(Rx) << "\n";
    rec["Q_at_x"] = to_string(Qx);
    rec["R_at_x"] = to_string(Rx);
    report.parameters["x"] = x;
    try {
      const ExactRational lhs = f21({p.a + k, p.b + l, p.c + m, x0});
      const ExactRational rhs = Qx * f21({p.a + 1, p.b + 1, p.c + 1, x0}) + Rx * f21({p.a, p.b, p.c, x0});
      const bool holds = lhs == rhs;
      out << "relation at x: " << (holds ? "holds" : "FAILS") << "\n";
      rec["certified_at_x"] = holds;
      verdict = holds ? "relation certified at x" : "relation fails at x";
      if (!holds) code = kExitFinding;
    } catch (const NonTerminating&) {
      out << "relation at x: not checked (series do not terminate)\n";
    } catch (const DegenerateParameter&) {
      out << "relation at x: not checked (degenerate series)\n";
    }
  }
  report.records.push_back(std::move(rec));
  report.summary = {{"equality_pairs", json::array()},
                    {"greater_pairs", json::array()},
                    {"certificates", json::array()},
                    {"verdict", verdict}};
  report.wall_seconds = seconds_since(start);
  write_report(report, config);
  return code;
}

int run_answer_q4(RunConfig config, std::ostream& out, std::ostream& err) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const Q4Answer answer = answer_q4(config.n2_max, config.threads);
  Report report;
  report.command = to_string(Command::answer_q4);
  report.parameters = config.parameters();
  for (const auto& c : answer.checks) {
    report.records.push_back({{"n1", c.pair.n1},
                              {"n2", c.pair.n2},
                              {"abs_ell3", to_string(c.abs_ell3)},
                              {"bound", to_string(c.bound)},
                              {"abs_r3", to_string(c.abs_r3)},
                              {"equal", c.equal},
                              {"chain_holds", c.chain_holds}});
  }
  const bool ok = answer.equality_pairs.empty() && answer.all_chains_hold && answer.tail_certified;
  const std::string verdict = ok ? "no equality pairs" : "UNEXPECTED: bound chain or equality failure";
  report.summary = {{"equality_pairs", to_json(answer.equality_pairs)},
                    {"greater_pairs", json::array()},
                    {"certificates", json::array()},
                    {"pairs_checked", std::to_string(answer.checks.size())},
                    {"all_chains_hold", answer.all_chains_hold},
                    {"tail_certified", answer.tail_certified},
                    {"verdict", verdict}};
  report.wall_seconds = seconds_since(start);
  write_report(report, config);
  out << "pairs checked: " << answer.checks.size() << "\n";
  out << "all bound chains hold: " << (answer.all_chains_hold ? "yes" : "NO") << "\n";
  out << "tail 3^(2n1) > 2 certified: " << (answer.tail_certified ? "yes" : "NO") << "\n";
  out << "verdict: " << verdict << "\n";
  if (!ok) err << "UNEXPECTED FINDING in answer-q4\n";
  return ok ? kExitOk : kExitFinding;
}

int run_answer_q3(const RunConfig& config, const Prop44Options& options, std::ostream& out,
                  std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const PrimeTable table(config.sieve_limit);
  const Prop44Report r = verify_prop44(table, options);
  Report report;
  report.command = to_string(Command::answer_q3);
  report.parameters = {{"sieve_limit", std::to_string(config.sieve_limit)},
                       {"cross_check_max", std::to_string(options.cross_check_max)},
                       {"grid_max", to_string(options.grid_max)}};
  json certs = json::array();
  for (const auto& c : r.certificates) {
    json rec{{"n1", c.pair.n1},
             {"n2", c.pair.n2},
             {"lo", c.lo},
             {"hi", c.hi},
             {"witness_prime", c.witness_prime ? json(std::to_string(*c.witness_prime)) : json(nullptr)},
             {"witness_divides", c.witness_divides}};
    report.records.push_back(rec);
  }
  std::vector<std::string> grid_failures;
  for (const auto& x : r.dusart_grid_failures) grid_failures.push_back(to_string(x));
  const bool ok = r.verified();
  const std::string verdict = ok ? "no equality pair with 4n1 <= n2 other than (1,4)"
                                 : "UNEXPECTED: verification failed";
  report.summary = {
      {"equality_pairs", to_json(r.equality_pairs)},
      {"greater_pairs", json::array()},
      {"certificates", {{"pairs_swept", r.pairs_swept},
                        {"witnesses_found", r.witnesses_found},
                        {"divisibility_failures", to_json(r.divisibility_failures)},
                        {"witness_on_equality_pair", to_json(r.witness_on_equality_pair)}}},
      {"implication_holds", r.implication_holds},
      {"dusart_at_599", r.dusart_at_threshold},
      {"dusart_grid_points", r.dusart_grid_points},
      {"dusart_grid_failures", grid_failures},
      {"sieve_checked_to", std::to_string(r.sieve_checked_to)},
      {"sieve_failures", r.sieve_failures.size()},
      {"agreement_points", r.agreement_points},
      {"disagreements", r.disagreements.size()},
      {"undetermined_region", "n1 <= n2 < 4n1 is outside the prime-gap criterion; use search for exact evaluation"},
      {"verdict", verdict}};
  report.wall_seconds = seconds_since(start);
  write_report(report, config);
  out << "finite region pairs swept: " << r.pairs_swept << "\n";
  out << "equality pairs: " << pair_list(r.equality_pairs) << "\n";
  out << "witness primes found: " << r.witnesses_found << " (divisibility failures: "
      << r.divisibility_failures.size() << ")\n";
  out << "dusart gap positive at 599: " << (r.dusart_at_threshold ? "yes" : "NO") << ", grid "
      << r.dusart_grid_points << " points, failures " << r.dusart_grid_failures.size() << "\n";
  out << "sieve cross-check 599.." << r.sieve_checked_to << ": " << r.sieve_failures.size()
      << " failures\n";
  out << "verdict: " << verdict << "\n";
  if (!ok) err << "UNEXPECTED FINDING in answer-q3\n";
  return ok ? kExitOk : kExitFinding;
}

int run_szego(long b, long n, long points, const RunConfig& config, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const bool holds = szego_grid_check(b, n, points);
  Report report;
  report.command = to_string(Command::szego_check);
  report.parameters = {{"b", b}, {"n", n}, {"points", points}};
  report.records.push_back({{"holds", holds}});
  report.summary = {{"equality_pairs", json::array()},
                    {"greater_pairs", json::array()},
                    {"certificates", json::array()},
                    {"verdict", holds ? "maximum at x = 1 on the grid" : "grid point exceeds the endpoint"}};
  report.wall_seconds = seconds_since(start);
  write_report(report, config);
  out << "szego bound on " << points << " points: " << (holds ? "holds" : "FAILS") << "\n";
  return holds ? kExitOk : kExitFinding;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact evaluation and verification of hypergeometric special values", "hyperel"};
  app.require_subcommand(1);

  CommonOptions common;
  int variant = 1;
  long n2_max = 1;
  std::uint64_t sieve_limit = kDefaultSieveLimit;
  std::optional<long> n1, n2, stop_after;
  std::string a, b, c, x, checkpoint;
  long k = 0, l = 0, m = 0;
  IdentitySuiteOptions identity;
  Prop44Options prop44;
  std::string grid_max = "100000000";
  long szego_b = 4, szego_n = 2, szego_points = 101;

  auto* eval = app.add_subcommand("eval", "Evaluate l and r for a pair, or one terminating 2F1");
  eval->add_option("--variant", variant, "Variant, 1 or 3")->check(CLI::IsMember({1, 3}));
  eval->add_option("--n1", n1, "Pair index n1");
  eval->add_option("--n2", n2, "Pair index n2 (n1 <= n2)");
  eval->add_option("--a", a, "2F1 parameter a (rational, e.g. -3 or 1/2)");
  eval->add_option("--b", b, "2F1 parameter b");
  eval->add_option("--c", c, "2F1 parameter c");
  eval->add_option("--x", x, "Evaluation point");
  add_common(eval, common);

  auto* search_cmd = app.add_subcommand("search", "Evaluate l and r for all 1 <= n1 <= n2 <= n2-max");
  search_cmd->add_option("--variant", variant, "Variant, 1 or 3")->check(CLI::IsMember({1, 3}));
  search_cmd->add_option("--n2-max", n2_max, "Largest n2 to sweep")->required()->check(CLI::PositiveNumber);
  search_cmd->add_option("--sieve-limit", sieve_limit, "Prime table bound used for gap certificates");
  search_cmd->add_option("--checkpoint", checkpoint, "Resumable checkpoint file");
  search_cmd->add_option("--stop-after-n2", stop_after, "Stop after this row, leaving the checkpoint");
  add_common(search_cmd, common);

  auto* verify = app.add_subcommand("verify-identities", "Cross-check the hypergeometric identities");
  verify->add_option("--inversion-n2-max", identity.inversion_n2_max, "Range for the inversion identity");
  verify->add_option("--representation-n2-max", identity.representation_n2_max, "Range for the representation cross-check");
  verify->add_option("--closed-form-n2-max", identity.closed_form_n2_max, "Range for the closed forms");
  verify->add_option("--kummer-n-max", identity.kummer_N_max, "Range for the Kummer value at -1");
  add_common(verify, common);

  auto* ttr = app.add_subcommand("ttr", "Three-term relation coefficients Q, R for (k, l, m) at (a, b, c)");
  ttr->add_option("--k", k, "Shift of a")->required();
  ttr->add_option("--l", l, "Shift of b")->required();
  ttr->add_option("--m", m, "Shift of c")->required();
  ttr->add_option("--a", a, "Base parameter a")->required();
  ttr->add_option("--b", b, "Base parameter b")->required();
  ttr->add_option("--c", c, "Base parameter c")->required();
  ttr->add_option("--x", x, "Evaluate Q, R here and certify the relation if the series terminate");
  add_common(ttr, common);

  auto* q4 = app.add_subcommand("answer-q4", "Bound-chain verification that l3 != r3");
  q4->add_option("--n2-max", n2_max, "Largest n2 to check exactly")->required()->check(CLI::PositiveNumber);
  add_common(q4, common);

  auto* q3 = app.add_subcommand("answer-q3", "Prime-gap and Dusart verification for 4n1 <= n2");
  q3->add_option("--sieve-limit", sieve_limit, "Prime table bound");
  q3->add_option("--cross-check-max", prop44.cross_check_max, "Sieve cross-check of the gap up to this x");
  q3->add_option("--grid-max", grid_max, "Upper end of the Dusart grid");
  add_common(q3, common);

  auto* szego = app.add_subcommand("szego-check", "Check the endpoint maximum of (1+x)^b P_n^(0,b)(x)^2");
  szego->add_option("--b", szego_b, "Jacobi parameter b")->check(CLI::PositiveNumber);
  szego->add_option("--n", szego_n, "Degree n")->check(CLI::NonNegativeNumber);
  szego->add_option("--points", szego_points, "Grid points on [-1, 1]")->check(CLI::PositiveNumber);
  add_common(szego, common);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kExitUsage;
  }

  try {
    if (eval->parsed()) {
      return run_eval(variant, n1, n2, a, b, c, x, make_config(Command::eval, common), out);
    }
    if (search_cmd->parsed()) {
      RunConfig config = make_config(Command::search, common);
      config.variant = to_variant(variant);
      config.n2_max = n2_max;
      config.sieve_limit = sieve_limit;
      if (!checkpoint.empty()) config.checkpoint_path = checkpoint;
      return run_search_command(config, stop_after, out, err);
    }
    if (verify->parsed()) {
      return run_verify_identities(identity, make_config(Command::verify_identities, common), out);
    }
    if (ttr->parsed()) return run_ttr(k, l, m, a, b, c, x, make_config(Command::ttr, common), out);
    if (q4->parsed()) {
      RunConfig config = make_config(Command::answer_q4, common);
      config.variant = Variant::three;
      config.n2_max = n2_max;
      return run_answer_q4(config, out, err);
    }
    if (q3->parsed()) {
      RunConfig config = make_config(Command::answer_q3, common);
      config.sieve_limit = sieve_limit;
      prop44.grid_max = parse_rational(grid_max);
      prop44.threads = common.threads;
      return run_answer_q3(config, prop44, out, err);
    }
    if (szego->parsed()) {
      return run_szego(szego_b, szego_n, szego_points, make_config(Command::szego_check, common), out);
    }
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const CheckpointMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFinding;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace hyperel
