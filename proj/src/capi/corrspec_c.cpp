#include "corrspec/corrspec.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "core/corrnet.hpp"
#include "core/embed.hpp"
#include "core/errors.hpp"
#include "core/fourier.hpp"
#include "core/harness.hpp"
#include "core/io.hpp"
#include "core/metrics.hpp"
#include "core/plot.hpp"
#include "core/synth.hpp"
#include "core/types.hpp"

using nlohmann::json;

struct cs_matrix {
  corrspec::Matrix m;
};

struct cs_table {
  corrspec::ResultTable t;
};

namespace {

thread_local std::string g_last_error;

cs_status status_of(const corrspec::Error& e) {
  using corrspec::ErrorCode;
  switch (e.code()) {
    case ErrorCode::Domain: return CS_EDOMAIN;
    case ErrorCode::Degenerate: return CS_EDEGENERATE;
    case ErrorCode::RankDeficient: return CS_ERANK;
    case ErrorCode::Numeric: return CS_ENUMERIC;
    case ErrorCode::Integrity: return CS_EINTEGRITY;
    case ErrorCode::Io: return CS_EIO;
    case ErrorCode::Config: return CS_ECONFIG;
  }
  return CS_EINTERNAL;
}

/// Runs `fn`, translating exceptions into status codes + thread-local
/// message.  On success the message is cleared.
template <typename Fn>
cs_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return CS_OK;
  } catch (const corrspec::Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CS_EINTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return CS_EINTERNAL;
  }
}

cs_status invalid(const char* msg) {
  g_last_error = msg;
  return CS_EINVAL;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

json parse_object(const char* text, const char* what) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw corrspec::ConfigError(std::string(what) + ": invalid JSON: " +
                                e.what());
  }
  if (!doc.is_object()) {
    throw corrspec::ConfigError(std::string(what) + ": expected a JSON object");
  }
  return doc;
}

void reject_unknown(const json& doc, const std::set<std::string>& known,
                    const char* what) {
  for (const auto& item : doc.items()) {
    if (!known.contains(item.key())) {
      throw corrspec::ConfigError(std::string(what) + ": unknown key '" +
                                  item.key() + "'");
    }
  }
}

corrspec::SignalSpec parse_signal_spec(const char* text) {
  const json doc = parse_object(text, "signal spec");
  reject_unknown(doc, {"n", "T", "d0", "normalization", "seed"}, "signal spec");
  corrspec::SignalSpec spec;
  try {
    spec.n = doc.at("n").get<int>();
    spec.T = doc.at("T").get<int>();
    spec.d0 = doc.at("d0").get<int>();
    spec.seed = doc.contains("seed") ? doc["seed"].get<std::uint64_t>() : 0;
    if (doc.contains("normalization")) {
      const auto s = doc["normalization"].get<std::string>();
      if (s == "frobenius_sqrt_n") {
        spec.normalization = corrspec::Normalization::FrobeniusSqrtN;
      } else if (s == "rows_standardized") {
        spec.normalization = corrspec::Normalization::RowsStandardized;
      } else {
        throw corrspec::ConfigError("signal spec: unknown normalization '" +
                                    s + "'");
      }
    }
  } catch (const json::exception& e) {
    throw corrspec::ConfigError(std::string("signal spec: malformed field: ") +
                                e.what());
  }
  return spec;
}

corrspec::NoiseSpec parse_noise_spec(const char* text) {
  const json doc = parse_object(text, "noise spec");
  reject_unknown(doc, {"family", "nu", "row_scaling", "alpha", "seed"},
                 "noise spec");
  corrspec::NoiseSpec spec;
  try {
    if (doc.contains("family")) {
      const auto s = doc["family"].get<std::string>();
      if (s == "gaussian") {
        spec.family = corrspec::NoiseFamily::Gaussian;
      } else if (s == "laplacian") {
        spec.family = corrspec::NoiseFamily::Laplacian;
      } else {
        throw corrspec::ConfigError("noise spec: unknown family '" + s + "'");
      }
    }
    spec.nu = doc.at("nu").get<double>();
    if (doc.contains("row_scaling")) {
      const auto s = doc["row_scaling"].get<std::string>();
      if (s == "scaled_by_row_norm") {
        spec.row_scaling = corrspec::RowScaling::ScaledByRowNorm;
      } else if (s == "constant") {
        spec.row_scaling = corrspec::RowScaling::Constant;
      } else {
        throw corrspec::ConfigError("noise spec: unknown row_scaling '" + s +
                                    "'");
      }
    }
    if (doc.contains("alpha")) spec.alpha = doc["alpha"].get<double>();
    spec.seed = doc.contains("seed") ? doc["seed"].get<std::uint64_t>() : 0;
  } catch (const json::exception& e) {
    throw corrspec::ConfigError(std::string("noise spec: malformed field: ") +
                                e.what());
  }
  return spec;
}

/// Numerical rank of a correlation matrix: eigenvalues above a relative
/// tolerance of the largest.
int numerical_rank(const corrspec::Matrix& R) {
  const corrspec::EigenDecomposition eig = corrspec::sym_eig(R);
  const double tol = std::max(1e-8, 1e-8 * std::abs(eig.values(0)));
  int rank = 0;
  for (corrspec::Index i = 0; i < eig.values.size(); ++i) {
    if (eig.values(i) > tol) ++rank;
  }
  return std::max(rank, 1);
}

json embedding_info(const char* method, int d, const corrspec::Embedding* e) {
  json info;
  info["method"] = method;
  info["d"] = d;
  info["warnings"] = json::array();
  if (e) {
    json vals = json::array();
    for (corrspec::Index i = 0; i < e->eigenvalues.size(); ++i) {
      vals.push_back(e->eigenvalues(i));
    }
    info["eigenvalues"] = vals;
    if (e->tie_warning) info["warnings"].push_back("eigenvalue_tie");
  }
  return info;
}

}  // namespace

extern "C" {

const char* cs_version(void) { return "1.0.0"; }

const char* cs_last_error(void) { return g_last_error.c_str(); }

void cs_string_free(char* s) { ::free(s); }

cs_status cs_matrix_create(size_t rows, size_t cols, const double* data,
                           cs_matrix** out) {
  if (!out) return invalid("cs_matrix_create: out is null");
  if (rows == 0 || cols == 0) {
    return invalid("cs_matrix_create: dimensions must be positive");
  }
  return guarded([&] {
    auto m = std::make_unique<cs_matrix>();
    m->m.resize(static_cast<corrspec::Index>(rows),
                static_cast<corrspec::Index>(cols));
    if (data) {
      for (size_t i = 0; i < rows; ++i) {
        for (size_t j = 0; j < cols; ++j) {
          m->m(static_cast<corrspec::Index>(i),
               static_cast<corrspec::Index>(j)) = data[i * cols + j];
        }
      }
    } else {
      m->m.setZero();
    }
    *out = m.release();
  });
}

void cs_matrix_destroy(cs_matrix* m) { delete m; }

size_t cs_matrix_rows(const cs_matrix* m) {
  return m ? static_cast<size_t>(m->m.rows()) : 0;
}

size_t cs_matrix_cols(const cs_matrix* m) {
  return m ? static_cast<size_t>(m->m.cols()) : 0;
}

cs_status cs_matrix_get(const cs_matrix* m, size_t row, size_t col,
                        double* out) {
  if (!m || !out) return invalid("cs_matrix_get: null argument");
  if (row >= static_cast<size_t>(m->m.rows()) ||
      col >= static_cast<size_t>(m->m.cols())) {
    return invalid("cs_matrix_get: index out of range");
  }
  *out = m->m(static_cast<corrspec::Index>(row),
              static_cast<corrspec::Index>(col));
  g_last_error.clear();
  return CS_OK;
}

cs_status cs_matrix_copy_data(const cs_matrix* m, double* buf) {
  if (!m || !buf) return invalid("cs_matrix_copy_data: null argument");
  for (corrspec::Index i = 0; i < m->m.rows(); ++i) {
    for (corrspec::Index j = 0; j < m->m.cols(); ++j) {
      buf[static_cast<size_t>(i) * static_cast<size_t>(m->m.cols()) +
          static_cast<size_t>(j)] = m->m(i, j);
    }
  }
  g_last_error.clear();
  return CS_OK;
}

cs_status cs_matrix_read(const char* path, cs_matrix** out) {
  if (!path || !out) return invalid("cs_matrix_read: null argument");
  return guarded([&] {
    auto m = std::make_unique<cs_matrix>();
    m->m = corrspec::read_matrix(path);
    *out = m.release();
  });
}

cs_status cs_matrix_write(const cs_matrix* m, const char* path, int format) {
  if (!m || !path) return invalid("cs_matrix_write: null argument");
  if (format != 0 && format != 1) {
    return invalid("cs_matrix_write: format must be 0 (CSV) or 1 (binary)");
  }
  return guarded([&] {
    corrspec::write_matrix(m->m, path,
                           format == 0 ? corrspec::MatrixFormat::Csv
                                       : corrspec::MatrixFormat::Binary);
  });
}

cs_status cs_generate(const char* signal_json, const char* noise_json,
                      cs_matrix** zstar, cs_matrix** z, char** meta_json) {
  if (!signal_json) return invalid("cs_generate: signal_json is null");
  return guarded([&] {
    const corrspec::SignalSpec sspec = parse_signal_spec(signal_json);
    corrspec::Signals sig = corrspec::generate_signals(sspec);

    corrspec::Matrix observed = sig.Z;
    json meta;
    meta["support"] = sig.support;
    meta["rank"] = sig.rank;
    meta["n"] = sspec.n;
    meta["T"] = sspec.T;
    meta["d0"] = sspec.d0;
    const corrspec::Vector power = corrspec::signal_power(sig.Z);
    meta["sigma2"] = std::vector<double>(power.data(), power.data() + power.size());
    meta["inflated_row"] = -1;
    meta["gamma"] = nullptr;

    if (noise_json) {
      const corrspec::NoiseSpec nspec = parse_noise_spec(noise_json);
      corrspec::Noise noise = corrspec::generate_noise(sig.Z, nspec);
      observed = sig.Z + noise.N;
      meta["nu"] = std::vector<double>(noise.nu_vec.data(),
                                       noise.nu_vec.data() + noise.nu_vec.size());
      meta["inflated_row"] = noise.inflated_row;
      if (nspec.nu > 0.0) {
        meta["gamma"] = corrspec::compute_gamma(power, noise.nu_vec);
      }
    }

    if (zstar) {
      auto m = std::make_unique<cs_matrix>();
      m->m = sig.Z;
      *zstar = m.release();
    }
    if (z) {
      auto m = std::make_unique<cs_matrix>();
      m->m = std::move(observed);
      *z = m.release();
    }
    if (meta_json) *meta_json = dup_string(meta.dump(2));
  });
}

cs_status cs_correlation(const cs_matrix* z, cs_matrix** r) {
  if (!z || !r) return invalid("cs_correlation: null argument");
  return guarded([&] {
    auto m = std::make_unique<cs_matrix>();
    m->m = corrspec::correlation_matrix(z->m);
    *r = m.release();
  });
}

cs_status cs_standardize(const cs_matrix* z, cs_matrix** out) {
  if (!z || !out) return invalid("cs_standardize: null argument");
  return guarded([&] {
    auto m = std::make_unique<cs_matrix>();
    m->m = corrspec::standardize(z->m);
    *out = m.release();
  });
}

cs_status cs_embed_series(const cs_matrix* z, const char* method, int d,
                          cs_matrix** x, char** info_json) {
  if (!z || !method || !x) return invalid("cs_embed_series: null argument");
  const std::string name = method;
  if (name != "ase" && name != "pca" && name != "naive") {
    return invalid("cs_embed_series: unknown method (expected ase, pca or naive)");
  }
  return guarded([&] {
    auto m = std::make_unique<cs_matrix>();
    json info;
    if (name == "ase") {
      const corrspec::Matrix R = corrspec::correlation_matrix(z->m);
      const int dd = d == 0 ? numerical_rank(R) : d;
      corrspec::Embedding e = corrspec::ase(R, dd);
      m->m = std::move(e.X);
      info = embedding_info("ase", dd, &e);
    } else if (name == "pca") {
      const int dd =
          d == 0 ? numerical_rank(corrspec::correlation_matrix(z->m)) : d;
      m->m = corrspec::pca_embed(z->m, dd);
      info = embedding_info("pca", dd, nullptr);
    } else {
      m->m = corrspec::naive_embed(z->m);
      info = embedding_info("naive", static_cast<int>(m->m.cols()), nullptr);
    }
    *x = m.release();
    if (info_json) *info_json = dup_string(info.dump(2));
  });
}

cs_status cs_embed_correlation(const cs_matrix* r, int d, cs_matrix** x,
                               char** info_json) {
  if (!r || !x) return invalid("cs_embed_correlation: null argument");
  return guarded([&] {
    const int dd = d == 0 ? numerical_rank(r->m) : d;
    corrspec::Embedding e = corrspec::ase(r->m, dd);
    auto m = std::make_unique<cs_matrix>();
    m->m = std::move(e.X);
    *x = m.release();
    if (info_json) {
      *info_json = dup_string(embedding_info("ase", dd, &e).dump(2));
    }
  });
}

cs_status cs_evaluate(const cs_matrix* estimate, const cs_matrix* truth,
                      char** metrics_json) {
  if (!estimate || !truth || !metrics_json) {
    return invalid("cs_evaluate: null argument");
  }
  return guarded([&] {
    const corrspec::Matrix target = corrspec::standardize(truth->m);
    const corrspec::Alignment a =
        corrspec::procrustes_align(estimate->m, target);
    json metrics;
    metrics["error_2inf"] = a.residual_2inf;
    metrics["error_fro"] = a.residual_fro;
    metrics["n"] = estimate->m.rows();
    metrics["d_estimate"] = estimate->m.cols();
    metrics["d_target"] = target.cols();
    // Principal-angle distance between the column spaces of the two inputs
    // as given, reported when both have the same number of full-rank columns
    // (otherwise the orthonormal frames the metric needs do not exist).
    metrics["sin_theta"] = nullptr;
    if (estimate->m.cols() == truth->m.cols()) {
      const auto frame = [](const corrspec::Matrix& M) {
        Eigen::ColPivHouseholderQR<corrspec::Matrix> qr(M);
        if (qr.rank() < M.cols()) return corrspec::Matrix();
        Eigen::HouseholderQR<corrspec::Matrix> plain(M);
        corrspec::Matrix Q = plain.householderQ() *
                             corrspec::Matrix::Identity(M.rows(), M.cols());
        return Q;
      };
      const corrspec::Matrix qe = frame(estimate->m);
      const corrspec::Matrix qt = frame(truth->m);
      if (qe.size() > 0 && qt.size() > 0) {
        metrics["sin_theta"] = corrspec::sin_theta_distance(qe, qt);
      }
    }
    *metrics_json = dup_string(metrics.dump(2));
  });
}

cs_status cs_sweep_run(const char* config_json, int workers_override,
                       cs_table** out) {
  if (!config_json || !out) return invalid("cs_sweep_run: null argument");
  return guarded([&] {
    corrspec::SweepConfig config = corrspec::SweepConfig::from_json(config_json);
    if (workers_override > 0) config.workers = workers_override;
    auto t = std::make_unique<cs_table>();
    t->t = corrspec::run_sweep(config);
    *out = t.release();
  });
}

cs_status cs_preset_config(const char* id, int full, char** config_json) {
  if (!id || !config_json) return invalid("cs_preset_config: null argument");
  return guarded([&] {
    *config_json = dup_string(corrspec::preset_config(id, full != 0).to_json());
  });
}

cs_status cs_table_csv(const cs_table* t, const char* path) {
  if (!t || !path) return invalid("cs_table_csv: null argument");
  return guarded([&] { corrspec::write_csv(t->t, path); });
}

cs_status cs_table_summary_json(const cs_table* t, char** out) {
  if (!t || !out) return invalid("cs_table_summary_json: null argument");
  return guarded([&] {
    const std::vector<corrspec::SummaryRow> summary = corrspec::summarize(t->t);
    json doc;
    doc["experiment"] = t->t.config.experiment;
    json rows = json::array();
    for (const auto& r : summary) {
      rows.push_back({{"cell", r.cell},
                      {"n", r.n},
                      {"T", r.T},
                      {"d0", r.d0},
                      {"d_embed", r.d_embed},
                      {"nu", r.nu},
                      {"alpha", r.alpha},
                      {"family", corrspec::to_string(r.family)},
                      {"method", corrspec::to_string(r.method)},
                      {"trials", r.trials},
                      {"mean", r.mean},
                      {"sem", r.sem},
                      {"sem_degenerate", r.sem_degenerate}});
    }
    doc["rows"] = rows;

    json slopes = json::array();
    const corrspec::PlotSpec& plot = t->t.config.plot;
    if (!plot.x.empty() && plot.log_x && plot.log_y) {
      for (const auto& g : corrspec::group_series(t->t.config, summary)) {
        std::vector<std::pair<double, double>> pts;
        bool positive = true;
        for (const auto& row : g.rows) {
          const double x = corrspec::summary_field(row, plot.x);
          if (!(x > 0.0) || !(row.mean > 0.0)) {
            positive = false;
            break;
          }
          pts.emplace_back(x, row.mean);
        }
        std::set<double> xs;
        for (const auto& [x, y] : pts) xs.insert(x);
        if (!positive || xs.size() < 2) continue;
        const corrspec::SlopeFit fit = corrspec::fit_loglog_slope(pts);
        slopes.push_back({{"panel", g.panel},
                          {"series", g.series},
                          {"x", plot.x},
                          {"slope", fit.slope},
                          {"intercept", fit.intercept},
                          {"r2", fit.r2}});
      }
    }
    doc["slopes"] = slopes;
    *out = dup_string(doc.dump(2));
  });
}

cs_status cs_table_render_plots(const cs_table* t, const char* out_dir,
                                char** files_json) {
  if (!t || !out_dir) return invalid("cs_table_render_plots: null argument");
  return guarded([&] {
    const auto files = corrspec::render_plots(t->t, out_dir);
    if (files_json) {
      json arr = json::array();
      for (const auto& f : files) arr.push_back(f.string());
      *files_json = dup_string(arr.dump(2));
    }
  });
}

void cs_table_destroy(cs_table* t) { delete t; }

}  // extern "C"
