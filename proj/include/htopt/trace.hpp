#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace htopt {

// One row per iterate x_t. Rows 0 and 1 describe the initialization
// (no interpolation draw, no clipping), so q_t is -1 there.
struct TraceRow {
  long t = 0;
  double grad_norm_exact = 0.0;  // ||grad F(x_t)||, never the noisy one
  double momentum_norm = 0.0;    // ||g_t|| after the update producing x_{t+1}... see run()
  double q_t = -1.0;
  bool grad_clip_active = false;
  bool hvp_clip_active = false;
  long samples_used = 0;  // cumulative oracle samples after reaching x_t
};

struct RunTrace {
  // Resolved schedule echo, seed, config hash; written as a # key=value
  // comment block at the top of the CSV.
  std::map<std::string, std::string> meta;
  std::vector<TraceRow> rows;

  double min_grad_norm() const;
  double avg_grad_norm() const;  // average over rows 0..T-1 (all but last)
};

// Smallest t with grad_norm_exact <= target, or nullopt if never reached.
std::optional<long> iterations_to_target(const RunTrace& trace, double target);

// Deterministic CSV: metadata comment block, header row, then one line
// per trace row. Doubles printed with round-trip precision.
void emit_csv(const RunTrace& trace, const std::string& path);
std::string trace_to_csv(const RunTrace& trace);
RunTrace parse_trace_csv(const std::string& csv);

// Generic numeric table for experiment summaries.
struct Table {
  std::map<std::string, std::string> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

void emit_csv(const Table& table, const std::string& path);
std::string table_to_csv(const Table& table);

}  // namespace htopt
