#include "hyperel/reports.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace hyperel {

using nlohmann::json;

std::string to_string(Command c) {
  switch (c) {
    case Command::eval: return "eval";
    case Command::search: return "search";
    case Command::verify_identities: return "verify-identities";
    case Command::ttr: return "ttr";
    case Command::answer_q4: return "answer-q4";
    case Command::answer_q3: return "answer-q3";
    case Command::szego_check: return "szego-check";
  }
  return "?";
}

void RunConfig::validate() const {
  if (n2_max < 1) throw std::invalid_argument("n2_max must be at least 1");
  if (threads < 1) throw std::invalid_argument("threads must be at least 1");
  if (sieve_limit < 4 * static_cast<std::uint64_t>(n2_max) + 2) {
    throw std::invalid_argument("sieve_limit must be at least 4*n2_max + 2");
  }
}

json RunConfig::parameters() const {
  return json{{"command", to_string(command)},
              {"variant", static_cast<int>(variant)},
              {"n2_max", std::to_string(n2_max)},
              {"sieve_limit", std::to_string(sieve_limit)},
              {"format", format == ReportFormat::json ? "json" : "csv"}};
}

json to_json(const PairN& p) { return json::array({p.n1, p.n2}); }

PairN pair_from_json(const json& j) { return PairN(j.at(0).get<long>(), j.at(1).get<long>()); }

json to_json(const std::vector<PairN>& pairs) {
  json out = json::array();
  for (const auto& p : pairs) out.push_back(to_json(p));
  return out;
}

json to_json(const SearchRecord& rec) {
  return json{{"variant", static_cast<int>(rec.variant)},
              {"n1", rec.pair.n1},
              {"n2", rec.pair.n2},
              {"ell", to_string(rec.ell)},
              {"r", to_string(rec.r)},
              {"equal", rec.equal},
              {"magnitude", to_string(rec.magnitude)}};
}

SearchRecord search_record_from_json(const json& j) {
  const int v = j.at("variant").get<int>();
  if (v != 1 && v != 3) throw std::invalid_argument("search record: bad variant");
  return {PairN(j.at("n1").get<long>(), j.at("n2").get<long>()),
          static_cast<Variant>(v),
          BigInt(j.at("ell").get<std::string>(), 10),
          BigInt(j.at("r").get<std::string>(), 10),
          j.at("equal").get<bool>(),
          parse_magnitude(j.at("magnitude").get<std::string>())};
}

json to_json(const Report& report) {
  json j{{"schema_version", report.schema_version},
         {"command", report.command},
         {"parameters", report.parameters},
         {"records", report.records},
         {"summary", report.summary}};
  if (report.wall_seconds) j["timing"] = json{{"wall_seconds", *report.wall_seconds}};
  return j;
}

Report report_from_json(const json& j) {
  Report r;
  r.schema_version = j.at("schema_version").get<std::string>();
  if (r.schema_version != kSchemaVersion) {
    throw std::invalid_argument("unsupported report schema_version " + r.schema_version);
  }
  r.command = j.at("command").get<std::string>();
  r.parameters = j.at("parameters");
  r.records = j.at("records").get<std::vector<json>>();
  r.summary = j.at("summary");
  if (j.contains("timing")) r.wall_seconds = j.at("timing").at("wall_seconds").get<double>();
  return r;
}

std::string render_json(const Report& report, bool include_timing) {
  Report copy = report;
  if (!include_timing) copy.wall_seconds.reset();
  return to_json(copy).dump(2) + "\n";
}

namespace {

std::string csv_cell(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

}  // namespace

std::string render_csv(const Report& report) {
  std::vector<std::string> columns;
  if (report.command == to_string(Command::search)) {
    columns = {"variant", "n1", "n2", "ell", "r", "equal", "magnitude"};
  } else {
    std::set<std::string> keys;
    for (const auto& rec : report.records) {
      for (const auto& [key, _] : rec.items()) keys.insert(key);
    }
    columns.assign(keys.begin(), keys.end());
  }
  std::ostringstream out;
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << "\n";
  for (const auto& rec : report.records) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) out << ",";
      if (rec.contains(columns[i])) out << csv_cell(rec.at(columns[i]));
    }
    out << "\n";
  }
  return out.str();
}

void write_text_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write to " + tmp + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw std::runtime_error("rename " + tmp + " -> " + path + ": " + ec.message());
}

void write_report(const Report& report, const RunConfig& config) {
  if (config.output_path.empty()) return;
  write_text_atomic(config.output_path,
                    config.format == ReportFormat::json ? render_json(report) : render_csv(report));
}

Report make_search_report(const RunConfig& config, std::vector<SearchRecord> records) {
  const SearchSummary summary = summarize(config.variant, records);
  Report report;
  report.command = to_string(Command::search);
  report.parameters = config.parameters();
  report.records.reserve(records.size());
  for (const auto& rec : records) report.records.push_back(to_json(rec));
  std::string verdict;
  if (!summary.unexpected.empty()) {
    verdict = "UNEXPECTED: new pairs found";
  } else if (!summary.conjecture_violations.empty()) {
    verdict = "UNEXPECTED: magnitude conjecture violated";
  } else if (config.variant == Variant::one) {
    verdict = "equality and magnitude pairs as known";
  } else {
    verdict = "no equality pairs";
  }
  report.summary = json{{"equality_pairs", to_json(summary.equality_pairs)},
                        {"greater_pairs", to_json(summary.greater_pairs)},
                        {"unexpected_pairs", to_json(summary.unexpected)},
                        {"conjecture_violations", to_json(summary.conjecture_violations)},
                        {"certificates", json::array()},
                        {"pairs_evaluated", std::to_string(records.size())},
                        {"verdict", verdict}};
  return report;
}

// ---------------------------------------------------------------------------

namespace {

constexpr const char* kCheckpointKind = "search-checkpoint";

struct CheckpointState {
  long completed_n2 = 0;
  std::vector<SearchRecord> records;
};

void save_checkpoint(const std::string& path, const RunConfig& config, const CheckpointState& state) {
  json records = json::array();
  for (const auto& rec : state.records) records.push_back(to_json(rec));
  const json j{{"schema_version", kSchemaVersion},
               {"kind", kCheckpointKind},
               {"parameters", config.parameters()},
               {"completed_n2", state.completed_n2},
               {"records", std::move(records)}};
  write_text_atomic(path, j.dump());
}

// nullopt for a missing or unreadable file; CheckpointMismatch for a
// readable checkpoint of another configuration.
std::optional<CheckpointState> load_checkpoint(const std::string& path, const RunConfig& config,
                                               std::vector<std::string>& warnings) {
  if (!std::filesystem::exists(path)) return std::nullopt;
  json j;
  CheckpointState state;
  try {
    std::ifstream in(path, std::ios::binary);
    j = json::parse(in);
    if (j.at("schema_version") != kSchemaVersion || j.at("kind") != kCheckpointKind) {
      throw std::invalid_argument("not a search checkpoint");
    }
    if (j.at("parameters") != config.parameters()) {
      throw CheckpointMismatch("checkpoint " + path + " was written for a different configuration");
    }
    state.completed_n2 = j.at("completed_n2").get<long>();
    for (const auto& rec : j.at("records")) state.records.push_back(search_record_from_json(rec));
    const std::size_t expected = static_cast<std::size_t>(state.completed_n2 * (state.completed_n2 + 1) / 2);
    if (state.completed_n2 < 0 || state.completed_n2 > config.n2_max || state.records.size() != expected) {
      throw std::invalid_argument("record count does not match completed_n2");
    }
  } catch (const CheckpointMismatch&) {
    throw;
  } catch (const std::exception& e) {
    warnings.push_back("ignoring corrupt checkpoint " + path + " (" + e.what() + "); restarting");
    return std::nullopt;
  }
  return state;
}

}  // namespace

SearchRun run_search(const RunConfig& config, const SearchRunOptions& options) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  SearchRun run;
  CheckpointState state;
  if (config.checkpoint_path) {
    if (auto loaded = load_checkpoint(*config.checkpoint_path, config, run.warnings)) {
      state = std::move(*loaded);
      run.resumed = true;
      run.resumed_from_n2 = state.completed_n2;
    }
  }
  const long step = std::max<long>(1, options.rows_per_checkpoint);
  while (state.completed_n2 < config.n2_max) {
    long to = std::min(config.n2_max, state.completed_n2 + step);
    if (options.stop_after_n2 && *options.stop_after_n2 > state.completed_n2) {
      to = std::min(to, *options.stop_after_n2);
    }
    auto rows = search_rows(config.variant, state.completed_n2 + 1, to, config.threads);
    std::move(rows.begin(), rows.end(), std::back_inserter(state.records));
    state.completed_n2 = to;
    if (config.checkpoint_path) save_checkpoint(*config.checkpoint_path, config, state);
    if (options.stop_after_n2 && state.completed_n2 >= *options.stop_after_n2 &&
        state.completed_n2 < config.n2_max) {
      return run;
    }
  }
  Report report = make_search_report(config, std::move(state.records));
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  run.report = std::move(report);
  return run;
}

}  // namespace hyperel
