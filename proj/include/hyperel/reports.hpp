#pragma once

// Run configuration, machine-readable reports and search checkpoints.

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperel/exact_num.hpp"
#include "hyperel/question_engine.hpp"

namespace hyperel {

inline constexpr const char* kSchemaVersion = "1";

enum class Command { eval, search, verify_identities, ttr, answer_q4, answer_q3, szego_check };

std::string to_string(Command c);

enum class ReportFormat { json, csv };

struct RunConfig {
  Command command = Command::search;
  Variant variant = Variant::one;
  long n2_max = 1;
  std::uint64_t sieve_limit = kDefaultSieveLimit;
  std::string output_path;  // empty: no report file
  ReportFormat format = ReportFormat::json;
  unsigned threads = 1;
  std::optional<std::string> checkpoint_path;

  /// n2_max >= 1, threads >= 1, sieve_limit >= 4 n2_max + 2.
  void validate() const;
  /// The parameters that determine the report content. Output paths and the
  /// thread count are left out: they do not change any result.
  nlohmann::json parameters() const;
};

struct Report {
  std::string schema_version = kSchemaVersion;
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  std::vector<nlohmann::json> records;
  nlohmann::json summary = nlohmann::json::object();
  std::optional<double> wall_seconds;

  friend bool operator==(const Report&, const Report&) = default;
};

nlohmann::json to_json(const Report& report);
Report report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SearchRecord& rec);
SearchRecord search_record_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PairN& p);
PairN pair_from_json(const nlohmann::json& j);
nlohmann::json to_json(const std::vector<PairN>& pairs);

/// Sorted keys, two-space indent, trailing newline.
std::string render_json(const Report& report, bool include_timing = true);
/// Search reports: variant,n1,n2,ell,r,equal,magnitude. Other reports: one
/// column per record key, in sorted order.
std::string render_csv(const Report& report);

/// Writes atomically (temp file, then rename). Throws std::runtime_error on
/// IO failure.
void write_text_atomic(const std::string& path, const std::string& text);
void write_report(const Report& report, const RunConfig& config);

Report make_search_report(const RunConfig& config, std::vector<SearchRecord> records);

class CheckpointMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SearchRunOptions {
  /// Stop (leaving the checkpoint behind) once this n2 row is done.
  std::optional<long> stop_after_n2;
  /// Rows evaluated between checkpoint writes.
  long rows_per_checkpoint = 8;
};

struct SearchRun {
  std::optional<Report> report;  // empty when stopped early
  bool resumed = false;
  long resumed_from_n2 = 0;
  std::vector<std::string> warnings;
};

/// Runs a search, resuming from config.checkpoint_path when present.
/// A corrupt checkpoint is discarded with a warning; one written for a
/// different configuration throws CheckpointMismatch.
SearchRun run_search(const RunConfig& config, const SearchRunOptions& options = {});

}  // namespace hyperel
