#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "qfric/config.hpp"

namespace qfric {

/// One CSV row. Failed points keep their coordinates and carry NaN observables.
struct OutputRow {
  double v = 0.0, za = 0.0;
  double F_t = 0.0, F_r = 0.0, F_total = 0.0, a = 0.0;
  double Omega = 0.0, L_y = 0.0;
  std::string mode;        // ness | lte, with "-nobackaction" when the static response is used
  std::string provenance;  // full | asymptotic, with ":unconverged" or ":failed" appended when flagged
  double max_quad_err = 0.0;

  bool flagged() const;
};

/// Fixed column order of the sweep CSV.
const std::vector<std::string>& csv_columns();

/// Scientific notation with 9 significant digits.
std::string format_number(double x);

std::string write_csv(const std::vector<OutputRow>& rows);
/// Inverse of write_csv; write_csv(parse_csv(text)) == text for any emitted file.
std::vector<OutputRow> parse_csv(std::string_view text);

std::string mode_label(SolverMode mode, Backaction backaction);

/// Evaluates a single scenario into a row. Numerical failures do not throw: the row is
/// flagged ":failed" and the message goes to *error when given.
OutputRow evaluate_row(const Scenario& s, Provenance provenance, bool with_spin, std::string* error = nullptr);

struct SweepSummary {
  std::vector<OutputRow> rows;  // in sweep order
  std::size_t n_flagged = 0;
  std::vector<std::string> messages;  // one per flagged point
  double seconds = 0.0;
};

/// Evaluates every sweep point on a worker pool. Rows come back in sweep order.
/// progress, if set, is called once per finished point (from worker threads, serialised).
SweepSummary run_sweep(const SweepConfig& cfg, std::function<void(std::size_t done, std::size_t total)> progress = {});

}  // namespace qfric
