#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace tcg {

inline constexpr const char* kToolVersion = "1.0.0";

enum class PrecisionMode { Double, Extended };
enum class OutputFormat { Csv, Json };
enum class Units { G, GOver2Pi };

/// Sweep configuration; validated on construction via validate().
struct SweepConfig {
  std::vector<double> gamma_grid;          // default 0.4 .. 3.1 step 0.1
  std::vector<std::size_t> n_list{1, 2, 3, 4, 400};
  double g = 1.0;
  double tol = 1e-13;
  PrecisionMode precision_mode = PrecisionMode::Double;
  std::string output_path;                 // empty: stdout
  OutputFormat format = OutputFormat::Csv;
  Units units = Units::G;

  SweepConfig();
  void validate() const;  // throws std::invalid_argument
};

struct Row {
  double gamma;
  std::string label;     // closed1..closed4, numericN<k>, upper
  double tc_over_g;      // already unit-converted
  double lambda_max;
  double residual;
  long iterations;
};

struct RunRecord {
  SweepConfig config;
  std::vector<Row> rows;
  std::string timestamp;  // ISO 8601 UTC
  std::string tool_version = kToolVersion;
};

/// value printed with `digits` digits after the decimal point, truncated
/// toward zero rather than rounded.
std::string format_truncated(double value, int digits = 10);

std::vector<double> default_gamma_grid();

/// Prints the bounds table for a single gamma.  Throws on solver failure.
void run_bounds(std::ostream& os, double gamma, double g, std::size_t n_max,
                double tol, Units units, PrecisionMode precision);

/// Full sweep over the config's gamma grid; parallel across gammas
/// (TC_GAMMA_THREADS overrides the thread count).  Rows come back ordered
/// by (gamma, label position) regardless of completion order.
RunRecord run_sweep(const SweepConfig& config);

/// Serializes a record; enforces the lower <= upper sandwich per gamma and
/// throws std::runtime_error with a diagnostic if any row violates it.
void write_csv(std::ostream& os, const RunRecord& record);
void write_json(std::ostream& os, const RunRecord& record);
void write_record(const RunRecord& record);  // dispatches on config

/// Invariant suites: level "fast" < 30 s, "full" adds the N=400 work.
/// Prints one line per check; returns the number of failed checks.
int run_verify(std::ostream& os, bool full);

}  // namespace tcg
