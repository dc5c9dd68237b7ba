// Acceptance run: one PASS/FAIL line per criterion. All comparisons are exact.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "hyperel/cli.hpp"
#include "hyperel/contiguity.hpp"
#include "hyperel/errors.hpp"
#include "hyperel/hyper_core.hpp"
#include "hyperel/question_engine.hpp"
#include "hyperel/reports.hpp"
#include "oracles.hpp"

using namespace hyperel;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

const fs::path& work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("hyperel_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string threads_arg() { return std::to_string(std::max(1U, std::thread::hardware_concurrency())); }

// Runs the CLI in-process and loads the JSON report it wrote.
std::pair<int, Report> run_cli(std::vector<std::string> args, const std::string& report_name) {
  const fs::path out = work_dir() / report_name;
  args.insert(args.begin(), "hyperel");
  args.insert(args.end(), {"--output", out.string()});
  std::ostringstream sink_out, sink_err;
  const int code = dispatch(args, sink_out, sink_err);
  if (!fs::exists(out)) return {code, Report{}};
  std::ifstream in(out);
  return {code, report_from_json(json::parse(in))};
}

std::set<std::pair<long, long>> pair_set(const json& list) {
  std::set<std::pair<long, long>> out;
  for (const auto& p : list) out.emplace(p.at(0).get<long>(), p.at(1).get<long>());
  return out;
}

// --- criteria ----------------------------------------------------------------

Report g_search_200;

Outcome equality_pairs() {
  Outcome o;
  auto [code, report] = run_cli({"search", "--variant", "1", "--n2-max", "200", "--threads", threads_arg()},
                                "search_v1_200.json");
  g_search_200 = report;
  o.require(code == kExitOk, "exit code " + std::to_string(code));
  o.require(report.records.size() == 200 * 201 / 2, "record count " + std::to_string(report.records.size()));
  const std::set<std::pair<long, long>> expected{{1, 1}, {1, 2}, {1, 4}, {3, 4}};
  o.require(pair_set(report.summary.value("equality_pairs", json::array())) == expected,
            "equality pairs " + report.summary.value("equality_pairs", json::array()).dump());
  std::set<std::pair<long, long>> from_records;
  for (const auto& rec : report.records) {
    if (rec.at("equal").get<bool>()) from_records.emplace(rec.at("n1").get<long>(), rec.at("n2").get<long>());
  }
  o.require(from_records == expected, "records disagree with summary");
  o.detail = o.pass ? "{(1,1),(1,2),(1,4),(3,4)} among 20100 pairs" : o.detail;
  return o;
}

Outcome magnitude_table() {
  Outcome o;
  const Report& report = g_search_200;
  const std::set<std::pair<long, long>> greater{{1, 3}, {2, 3}, {3, 6}, {4, 6}, {6, 9}, {8, 12}};
  o.require(pair_set(report.summary.value("greater_pairs", json::array())) == greater,
            "greater pairs " + report.summary.value("greater_pairs", json::array()).dump());
  long less = 0;
  for (const auto& rec : report.records) {
    const std::pair<long, long> p{rec.at("n1").get<long>(), rec.at("n2").get<long>()};
    const SearchRecord r = search_record_from_json(rec);
    const int cmp = mpz_cmpabs(r.ell.get_mpz_t(), r.r.get_mpz_t());
    if (r.equal) continue;
    if (greater.count(p)) {
      o.require(cmp > 0, "expected |l|>|r| at " + to_string(r.pair));
    } else {
      o.require(cmp < 0 && r.magnitude == Magnitude::ell_less, "expected |l|<|r| at " + to_string(r.pair));
      ++less;
    }
  }
  o.require(report.summary.value("conjecture_violations", json::array()).empty(), "conjecture violations");
  if (o.pass) o.detail = "6 pairs |l1|>|r1|, " + std::to_string(less) + " pairs |l1|<|r1|";
  return o;
}

Outcome question4() {
  Outcome o;
  auto [code, report] = run_cli({"answer-q4", "--n2-max", "200", "--threads", threads_arg()}, "q4_200.json");
  o.require(code == kExitOk, "exit code " + std::to_string(code));
  o.require(report.summary.value("equality_pairs", json::array()).empty(), "equality pairs present");
  o.require(report.summary.value("all_chains_hold", false), "bound chain failure");
  o.require(report.summary.value("tail_certified", false), "tail not certified");
  o.require(report.records.size() == 20100, "record count");
  for (const auto& rec : report.records) {
    if (!rec.at("chain_holds").get<bool>() || rec.at("equal").get<bool>()) {
      o.require(false, "pair (" + rec.at("n1").dump() + "," + rec.at("n2").dump() + ")");
    }
  }
  // spot-check the recorded numbers against an independent evaluation
  for (const auto& rec : report.records) {
    const long n1 = rec.at("n1").get<long>(), n2 = rec.at("n2").get<long>();
    if (n2 > 12) continue;
    const mpz_class ell = oracle::ell_definition(3, n1, n2).get_num();
    o.require(rec.at("abs_ell3").get<std::string>() == mpz_class(abs(ell)).get_str(), "abs_ell3 mismatch");
  }
  if (o.pass) o.detail = "20100 chains |l3| <= 2^(4n2)/3^(2n1) < 2^(4n2-1) hold, tail 3^(2n1) > 2 certified";
  return o;
}

Outcome identity_suite() {
  Outcome o;
  const auto checks = run_identity_suite({10, 30, 50, 25});
  std::string counts;
  for (const auto& c : checks) {
    o.require(c.failures.empty(), c.name + ": " + std::to_string(c.failures.size()) + " failures");
    o.require(c.checked > 0, c.name + ": nothing checked");
    counts += (counts.empty() ? "" : ", ") + c.name + " " + std::to_string(c.checked);
  }
  if (o.pass) o.detail = counts;
  return o;
}

Outcome contiguity() {
  Outcome o;
  std::mt19937_64 rng(20240601);
  long relations = 0;
  long triples = 0;
  for (long k = -3; k <= 3; ++k) {
    for (long l = k; l <= 3; ++l) {
      for (long m = -3; m <= 3; ++m) {
        ++triples;
        int certified = 0;
        for (long n = 4; certified < 20; ++n) {
          const ExactRational b = oracle::random_rational(rng, 60, 13);
          const ExactRational c = oracle::random_rational(rng, 60, 13);
          if (is_integer(b) || is_integer(c) || is_integer(c - b)) continue;
          const ParamPoint p{ExactRational(-n), b, c};
          ExactRational x = oracle::random_rational(rng, 30, 11);
          // Q and R may have poles at 0 and 1
          while (x == 0 || x == 1) x = oracle::random_rational(rng, 30, 11);
          const ThreeTermRelation rel = three_term_QR(k, l, m, p);
          const ExactRational lhs = f21({p.a + k, p.b + l, p.c + m, x});
          const ExactRational rhs =
              rel.Q.eval(x) * f21({p.a + 1, p.b + 1, p.c + 1, x}) + rel.R.eval(x) * f21({p.a, p.b, p.c, x});
          o.require(lhs == rhs, "relation fails for (" + std::to_string(k) + "," + std::to_string(l) + "," +
                                    std::to_string(m) + ") at " + to_string(p));
          ++certified;
          ++relations;
        }
        const ParamPoint generic{make_rational(3, 7), make_rational(-5, 11), make_rational(13, 17)};
        const StructureReport s = structure_check(ShiftTriple::make(k, l, m), generic);
        o.require(s.matches(), "structure mismatch at (" + std::to_string(k) + "," + std::to_string(l) + "," +
                                   std::to_string(m) + ")");
      }
    }
  }
  // (-1,-1,0) closed form at five generic points
  const RatFunc w(Poly{0, 1, -1});
  for (int i = 0; i < 5; ++i) {
    ParamPoint p;
    do {
      p = {oracle::random_rational(rng, 50, 9), oracle::random_rational(rng, 50, 9), oracle::random_rational(rng, 50, 9)};
    } while (!p.generic());
    const auto& [a, b, c] = p;
    const ThreeTermRelation rel = three_term_QR(-1, -1, 0, p);
    const RatFunc Q = RatFunc(ExactRational(a * b * (c + 1 - a - b) / ((c - a) * (c - b) * c))) * w;
    const RatFunc R = RatFunc(Poly{ExactRational(c - a) * (c - b), ExactRational(a * a + b * b - (a + b) * (c + 1) + a * b + c)}) /
                      RatFunc(ExactRational((c - a) * (c - b)));
    o.require(rel.Q == Q && rel.R == R, "(-1,-1,0) closed form mismatch at " + to_string(p));
  }
  const ThreeTermRelation at = three_term_QR(-1, -1, 0, {-2, -2, 1});
  o.require(at.Q.eval(-1) == ExactRational(-16, 3), "Q(-1) = " + to_string(at.Q.eval(-1)));
  o.require(at.R.eval(-1) == ExactRational(-4, 3), "R(-1) = " + to_string(at.R.eval(-1)));
  if (o.pass) {
    o.detail = std::to_string(relations) + " relations certified over " + std::to_string(triples) +
               " triples, structure tables match, Q(-1) = -16/3, R(-1) = -4/3";
  }
  return o;
}

Outcome lemma42_range() {
  Outcome o;
  long pairs = 0;
  for (long n2 = 1; n2 <= 30; ++n2) {
    for (long n1 = 1; n1 <= n2; ++n1) {
      const PairN pair(n1, n2);
      try {
        const Lemma42Data d = lemma42(pair);
        o.require(lemma42_reassembly(pair, d) == ExactRational(ell_value(Variant::one, pair)),
                  "reassembly differs at " + to_string(pair));
      } catch (const std::exception& e) {
        o.require(false, e.what());
      }
      ++pairs;
    }
  }
  if (o.pass) o.detail = std::to_string(pairs) + " pairs: Q0'', R0'' integral, three-term value and reassembly equal l1";
  return o;
}

Outcome prop44() {
  Outcome o;
  auto [code, report] = run_cli({"answer-q3", "--threads", threads_arg()}, "q3.json");
  o.require(code == kExitOk, "exit code " + std::to_string(code));
  const json& s = report.summary;
  o.require(pair_set(s.value("equality_pairs", json::array())) == std::set<std::pair<long, long>>{{1, 4}},
            "equality pairs " + s.value("equality_pairs", json::array()).dump());
  o.require(s.value("dusart_at_599", false), "Dusart gap at 599");
  o.require(s.value("sieve_checked_to", "") == "1000000", "sieve range");
  o.require(s.value("sieve_failures", 1) == 0, "sieve failures");
  o.require(s.value("implication_holds", false), "implication");
  o.require(s.contains("certificates") && s["certificates"].value("divisibility_failures", json::array({0})).empty(),
            "divisibility failures");

  // every pair of the region is present and every available witness was found
  const PrimeTable table(2000);
  long swept = 0, witnesses = 0;
  std::set<std::pair<long, long>> seen;
  for (const auto& rec : report.records) {
    const long n1 = rec.at("n1").get<long>(), n2 = rec.at("n2").get<long>();
    seen.emplace(n1, n2);
    std::optional<std::uint64_t> expected;
    for (long p = n2 + n1 + 1; p < 2 * n2 - 2 * n1; ++p) {
      if (oracle::trial_division_prime(static_cast<std::uint64_t>(p))) {
        expected = static_cast<std::uint64_t>(p);
        break;
      }
    }
    const bool has = !rec.at("witness_prime").is_null();
    if (has != expected.has_value() ||
        (has && std::stoull(rec.at("witness_prime").get<std::string>()) != *expected)) {
      o.require(false, "witness mismatch at (" + std::to_string(n1) + "," + std::to_string(n2) + ")");
    }
    if (has) {
      ++witnesses;
      o.require(rec.at("witness_divides").get<bool>(), "witness does not divide at (" + std::to_string(n1) + "," +
                                                           std::to_string(n2) + ")");
    }
  }
  for (long n1 = 1; 5 * n1 <= 599; ++n1) {
    for (long n2 = 4 * n1; n1 + n2 <= 599; ++n2) {
      ++swept;
      if (!seen.count({n1, n2})) o.require(false, "missing pair");
    }
  }
  o.require(static_cast<long>(report.records.size()) == swept, "record count");
  // the witness primes themselves divide an independently computed l1 on a sample
  for (const auto& [n1, n2] : std::vector<std::pair<long, long>>{{1, 5}, {2, 9}, {3, 20}, {5, 40}}) {
    const mpz_class ell = oracle::ell_definition(1, n1, n2).get_num();
    const auto w = prime_in_open_interval(n2 + n1, 2 * n2 - 2 * n1, table);
    o.require(w && mpz_divisible_ui_p(ell.get_mpz_t(), *w) != 0, "sample divisibility");
  }
  if (o.pass) {
    o.detail = std::to_string(swept) + " pairs (n1+n2 <= 599), equality only at (1,4), " + std::to_string(witnesses) +
               " witnesses all dividing l1, Dusart gap positive at 599, sieve gap positive on [599, 10^6]";
  }
  return o;
}

Outcome exact_and_deterministic() {
  Outcome o;
  // A second run of the same configuration with one thread must reproduce
  // the report byte for byte (timing excluded).
  auto [code, single] = run_cli({"search", "--variant", "1", "--n2-max", "200", "--threads", "1"}, "search_v1_200_t1.json");
  o.require(code == kExitOk, "exit code");
  o.require(render_json(single, false) == render_json(g_search_200, false), "reports differ across thread counts");
  std::string extended = "extended n2 < 1000 sweep not requested (set HYPEREL_ACCEPTANCE_EXTENDED=1)";
  if (const char* env = std::getenv("HYPEREL_ACCEPTANCE_EXTENDED"); env && std::string(env) == "1") {
    auto [xcode, big] = run_cli({"search", "--variant", "1", "--n2-max", "999", "--threads", threads_arg()},
                                "search_v1_999.json");
    o.require(xcode == kExitOk, "extended sweep exit code");
    o.require(pair_set(big.summary.value("equality_pairs", json::array())) ==
                  std::set<std::pair<long, long>>{{1, 1}, {1, 2}, {1, 4}, {3, 4}},
              "extended sweep equality pairs");
    extended = "extended n2 < 1000 sweep matches";
  }
  if (o.pass) o.detail = "search reports byte-identical across thread counts; " + extended;
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "equality pairs, variant 1, n2 <= 200", equality_pairs},
      {2, "magnitude table, variant 1, n2 <= 200", magnitude_table},
      {3, "no equality for variant 3, n2 <= 200", question4},
      {4, "identity suite", identity_suite},
      {5, "contiguity certification on [-3,3]^3", contiguity},
      {6, "reduced coefficient integrality and reassembly, n2 <= 30", lemma42_range},
      {7, "prime-gap region 4n1 <= n2", prop44},
      {8, "exactness and determinism", exact_and_deterministic},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(1);
    line << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << " -- " << o.detail << " ["
         << secs << " s]";
    std::cout << line.str() << std::endl;
  }
  fs::remove_all(work_dir());
  std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
