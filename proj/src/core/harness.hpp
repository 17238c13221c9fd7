#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/synth.hpp"
#include "core/types.hpp"

namespace corrspec {

// Monte Carlo sweep harness.
//
// A sweep is a cross product of parameter grids; each grid cell is repeated
// for a number of independent trials.  One trial draws signals and noise,
// builds the observed correlation network, embeds it with each configured
// method, and scores the result against the standardized clean signals with
// the Procrustes-aligned (2, infinity) error.
//
// Reproducibility: every trial derives its own random stream from
// (master_seed, cell index, trial index), so results are bit-identical
// regardless of how trials are scheduled across worker threads.

/// Embedding methods the harness can score.
enum class Method { Ase, Pca, Naive };

std::string to_string(Method m);
std::string to_string(NoiseFamily f);

/// Axis/panel hints used by the plot renderer and slope reports.
struct PlotSpec {
  std::string x;                    ///< numeric field: nu, alpha, d0, d_embed, n, T
  std::vector<std::string> panels;  ///< fields that split output into panels
  bool log_x = true;
  bool log_y = true;
};

/// Full description of a sweep.  Vector-valued fields are grids; the cell
/// list is their cross product in declaration order (n outermost, family
/// innermost).  A d_embed entry of 0 means "use the structural rank of the
/// drawn signals".
struct SweepConfig {
  std::string experiment;  ///< label written into every output row
  std::vector<int> n{};
  std::vector<int> T{};
  std::vector<int> d0{};
  std::vector<int> d_embed{0};
  std::vector<double> nu{};
  std::vector<double> alpha{1.0};
  std::vector<NoiseFamily> families{NoiseFamily::Gaussian};
  std::vector<Method> methods{Method::Ase, Method::Pca, Method::Naive};
  Normalization normalization = Normalization::FrobeniusSqrtN;
  RowScaling row_scaling = RowScaling::ScaledByRowNorm;
  int trials = 1;
  std::uint64_t master_seed = 0;
  int workers = 0;  ///< 0 means one per hardware thread
  PlotSpec plot;

  /// Validates every field, including per-cell feasibility of d0 and
  /// d_embed.  Throws ConfigError with an actionable message.
  void validate() const;

  /// Parses a JSON document.  Unknown keys are rejected.
  static SweepConfig from_json(const std::string& text);
  std::string to_json() const;
};

/// One grid cell of a sweep.
struct Cell {
  std::size_t index = 0;
  int n = 0, T = 0, d0 = 0, d_embed = 0;
  double nu = 0.0, alpha = 1.0;
  NoiseFamily family = NoiseFamily::Gaussian;
};

/// One scored (trial, method) pair.
struct TrialRecord {
  std::size_t cell = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  int n = 0, T = 0, d0 = 0;
  int d_embed = 0;  ///< dimension actually embedded (auto resolved)
  double nu = 0.0, alpha = 1.0;
  NoiseFamily family = NoiseFamily::Gaussian;
  Method method = Method::Ase;
  double error_2inf = 0.0;
  double gamma = 0.0;   ///< min_i sigma*_i^2 / nu_i; +inf for noiseless cells
  double kappa = 0.0;   ///< condition number of the clean spectrum at true rank
  double lambda_d = 0.0;  ///< smallest clean signal eigenvalue at true rank
  double runtime_ms = 0.0;
  std::string warnings;  ///< semicolon-joined tokens; empty if none
};

/// All records of a sweep, in deterministic (cell, trial, method) order.
struct ResultTable {
  SweepConfig config;
  std::vector<TrialRecord> records;
};

/// Cross product of the configured grids, in deterministic order.
std::vector<Cell> enumerate_cells(const SweepConfig& config);

/// Runs a single trial: returns one record per configured method, in the
/// configured method order.  A failed attempt is retried once with a
/// derived seed (recording a warning token); a second failure propagates.
std::vector<TrialRecord> run_trial(const SweepConfig& config, const Cell& cell,
                                   int trial);

/// Runs the whole sweep on a worker pool.  Output order and every value
/// except runtime_ms are independent of the worker count.
ResultTable run_sweep(const SweepConfig& config);

/// Header line of the results CSV.
std::string csv_header();

/// Serializes the table to CSV (atomically).
void write_csv(const ResultTable& table, const std::filesystem::path& path);

/// Least-squares line through (log x, log y).
struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Fits log y = slope * log x + intercept by ordinary least squares.
/// Requires at least two points, all with positive x and y (DomainError).
SlopeFit fit_loglog_slope(const std::vector<std::pair<double, double>>& pts);

/// Per-(cell, method) aggregate of trial errors.
struct SummaryRow {
  std::size_t cell = 0;
  int n = 0, T = 0, d0 = 0, d_embed = 0;
  double nu = 0.0, alpha = 1.0;
  NoiseFamily family = NoiseFamily::Gaussian;
  Method method = Method::Ase;
  int trials = 0;
  double mean = 0.0;
  double sem = 0.0;       ///< sample standard deviation / sqrt(trials)
  bool sem_degenerate = false;  ///< true when trials < 2 (sem reported as 0)
};

/// Groups records by (cell, method) and aggregates the errors.
/// Rows come out ordered by (cell, method position in config).
std::vector<SummaryRow> summarize(const ResultTable& table);

/// Numeric value of a summary field by name (nu, alpha, d0, d_embed, n, T).
double summary_field(const SummaryRow& row, const std::string& name);

/// Summary rows grouped for plotting and slope reports: one group per
/// (panel, series) pair.  Panels come from the config's plot.panels fields;
/// series are labeled by method, plus any other field that varies across the
/// sweep without being the x axis or a panel field.
struct SeriesGroup {
  std::string panel;   ///< e.g. "d0=10"; empty when there are no panel fields
  std::string series;  ///< e.g. "ase" or "ase family=gaussian"
  std::size_t series_order = 0;  ///< stable index for color/marker choice
  std::vector<SummaryRow> rows;
};

/// Groups a summary deterministically (panels in label order, series in
/// first-appearance order).  Rows keep the summarize() ordering.
std::vector<SeriesGroup> group_series(const SweepConfig& config,
                                      const std::vector<SummaryRow>& summary);

/// The built-in experiment presets: fig1, fig2, fig3, fig4, appendix_noise,
/// appendix_dimsel.  `full` selects publication-size grids; otherwise the
/// desk-scale variant is returned.  Unknown ids raise ConfigError listing
/// the valid names.
SweepConfig preset_config(const std::string& id, bool full);

/// Names accepted by preset_config.
std::vector<std::string> preset_names();

}  // namespace corrspec
