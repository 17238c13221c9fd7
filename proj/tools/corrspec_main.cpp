// corrspec command line tool.
//
// Subcommands:
//   generate   draw synthetic signals + noise and write them to files
//   embed      embed a series or correlation matrix file
//   evaluate   score an embedding against clean signals
//   sweep      run a Monte Carlo sweep from a JSON config
//   reproduce  run a built-in experiment preset
//
// Exit codes: 0 success, 2 usage or configuration error, 3 I/O error,
// 4 numerical degeneracy (degenerate series, rank deficiency, failed solve).

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "corrspec/corrspec.h"

namespace {

using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 20260819ULL;

int exit_code_for(cs_status s) {
  switch (s) {
    case CS_OK: return 0;
    case CS_EINVAL:
    case CS_EDOMAIN:
    case CS_ECONFIG: return 2;
    case CS_EIO: return 3;
    default: return 4;
  }
}

/// Prints the library error and converts the status to an exit code.
int fail(cs_status s) {
  std::cerr << "error: " << cs_last_error() << "\n";
  return exit_code_for(s);
}

/// Seed fallback chain: explicit flag > CORRSPEC_SEED env var > default.
std::uint64_t resolve_seed(bool seed_given, std::uint64_t seed_flag) {
  if (seed_given) return seed_flag;
  if (const char* env = std::getenv("CORRSPEC_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw CLI::ValidationError("CORRSPEC_SEED",
                                 "must be an unsigned integer, got '" +
                                     std::string(env) + "'");
    }
  }
  return kDefaultSeed;
}

struct MatrixHandle {
  cs_matrix* m = nullptr;
  ~MatrixHandle() { cs_matrix_destroy(m); }
};

struct TableHandle {
  cs_table* t = nullptr;
  ~TableHandle() { cs_table_destroy(t); }
};

struct StringHandle {
  char* s = nullptr;
  ~StringHandle() { cs_string_free(s); }
};

int run_generate(int n, int T, int d0, double nu, double alpha,
                 const std::string& family, const std::string& row_scaling,
                 const std::string& normalization, std::uint64_t seed,
                 const std::string& out_dir, const std::string& format) {
  json sig{{"n", n},
           {"T", T},
           {"d0", d0},
           {"normalization", normalization},
           {"seed", seed}};
  json noi{{"family", family},
           {"nu", nu},
           {"row_scaling", row_scaling},
           {"alpha", alpha},
           {"seed", seed + 1}};

  MatrixHandle zstar, z;
  StringHandle meta;
  const cs_status s = cs_generate(sig.dump().c_str(), noi.dump().c_str(),
                                  &zstar.m, &z.m, &meta.s);
  if (s != CS_OK) return fail(s);

  const int fmt = format == "binary" ? 1 : 0;
  const std::string ext = fmt == 1 ? ".cnm" : ".csv";
  const std::filesystem::path dir = out_dir;
  const std::string zstar_path = (dir / ("zstar" + ext)).string();
  const std::string z_path = (dir / ("z" + ext)).string();
  const std::string meta_path = (dir / "meta.json").string();

  cs_status w = cs_matrix_write(zstar.m, zstar_path.c_str(), fmt);
  if (w != CS_OK) return fail(w);
  w = cs_matrix_write(z.m, z_path.c_str(), fmt);
  if (w != CS_OK) return fail(w);

  std::FILE* f = std::fopen((meta_path + ".tmp").c_str(), "wb");
  if (!f) {
    std::cerr << "error: cannot write " << meta_path << "\n";
    return 3;
  }
  std::fputs(meta.s, f);
  std::fputc('\n', f);
  std::fclose(f);
  std::error_code ec;
  std::filesystem::rename(meta_path + ".tmp", meta_path, ec);
  if (ec) {
    std::cerr << "error: cannot write " << meta_path << ": " << ec.message()
              << "\n";
    return 3;
  }

  std::cout << "wrote " << zstar_path << "\n"
            << "wrote " << z_path << "\n"
            << "wrote " << meta_path << "\n";
  return 0;
}

int run_embed(const std::string& input, const std::string& method, int d,
              const std::string& input_kind, const std::string& out) {
  MatrixHandle in;
  cs_status s = cs_matrix_read(input.c_str(), &in.m);
  if (s != CS_OK) return fail(s);

  bool correlation_input = input_kind == "correlation";
  if (input_kind == "auto") {
    // A correlation matrix is square with a unit diagonal.
    const size_t rows = cs_matrix_rows(in.m), cols = cs_matrix_cols(in.m);
    if (rows == cols) {
      correlation_input = true;
      for (size_t i = 0; i < rows && correlation_input; ++i) {
        double v = 0;
        cs_matrix_get(in.m, i, i, &v);
        if (std::abs(v - 1.0) > 1e-9) correlation_input = false;
      }
    }
  }

  MatrixHandle x;
  StringHandle info;
  if (correlation_input) {
    if (method != "ase") {
      std::cerr << "error: method '" << method
                << "' requires raw series input; only ase embeds a "
                   "correlation matrix\n";
      return 2;
    }
    s = cs_embed_correlation(in.m, d, &x.m, &info.s);
  } else {
    s = cs_embed_series(in.m, method.c_str(), d, &x.m, &info.s);
  }
  if (s != CS_OK) return fail(s);

  s = cs_matrix_write(x.m, out.c_str(), 0);
  if (s != CS_OK) return fail(s);
  std::cout << info.s << "\n";
  std::cout << "wrote " << out << "\n";
  return 0;
}

int run_evaluate(const std::string& estimate, const std::string& truth) {
  MatrixHandle est, tru;
  cs_status s = cs_matrix_read(estimate.c_str(), &est.m);
  if (s != CS_OK) return fail(s);
  s = cs_matrix_read(truth.c_str(), &tru.m);
  if (s != CS_OK) return fail(s);

  StringHandle metrics;
  s = cs_evaluate(est.m, tru.m, &metrics.s);
  if (s != CS_OK) return fail(s);

  const json doc = json::parse(metrics.s);
  for (const auto& [key, value] : doc.items()) {
    std::cout << key << "=" << value.dump() << "\n";
  }
  return 0;
}

/// Shared tail of sweep/reproduce: run, write CSV + plots, print summary.
int run_table(const std::string& config_json, int workers,
              const std::string& out_dir, const std::string& stem) {
  TableHandle table;
  cs_status s = cs_sweep_run(config_json.c_str(), workers, &table.t);
  if (s != CS_OK) return fail(s);

  const std::filesystem::path dir = out_dir;
  const std::string csv_path = (dir / (stem + ".csv")).string();
  s = cs_table_csv(table.t, csv_path.c_str());
  if (s != CS_OK) return fail(s);
  std::cout << "wrote " << csv_path << "\n";

  StringHandle files;
  s = cs_table_render_plots(table.t, out_dir.c_str(), &files.s);
  if (s != CS_OK) return fail(s);
  for (const auto& f : json::parse(files.s)) {
    std::cout << "wrote " << f.get<std::string>() << "\n";
  }

  StringHandle summary;
  s = cs_table_summary_json(table.t, &summary.s);
  if (s != CS_OK) return fail(s);
  const json doc = json::parse(summary.s);
  const auto& slopes = doc["slopes"];
  if (!slopes.empty()) {
    std::cout << "\nlog-log slopes (mean error vs " << slopes[0]["x"].get<std::string>()
              << "):\n";
    for (const auto& fit : slopes) {
      std::printf("  %-28s %-24s slope=%+.3f  r2=%.3f\n",
                  fit["panel"].get<std::string>().empty()
                      ? "(all)"
                      : fit["panel"].get<std::string>().c_str(),
                  fit["series"].get<std::string>().c_str(),
                  fit["slope"].get<double>(), fit["r2"].get<double>());
    }
  }
  const std::string summary_path = (dir / (stem + "_summary.json")).string();
  std::FILE* f = std::fopen((summary_path + ".tmp").c_str(), "wb");
  if (!f) {
    std::cerr << "error: cannot write " << summary_path << "\n";
    return 3;
  }
  std::fputs(summary.s, f);
  std::fputc('\n', f);
  std::fclose(f);
  std::error_code ec;
  std::filesystem::rename(summary_path + ".tmp", summary_path, ec);
  if (ec) {
    std::cerr << "error: cannot write " << summary_path << ": " << ec.message()
              << "\n";
    return 3;
  }
  std::cout << "wrote " << summary_path << "\n";
  return 0;
}

std::string read_text_file(const std::string& path, int& err) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) {
    std::cerr << "error: cannot open " << path << "\n";
    err = 3;
    return {};
  }
  std::string content;
  char buf[4096];
  size_t got;
  while ((got = std::fread(buf, 1, sizeof(buf), f)) > 0) content.append(buf, got);
  std::fclose(f);
  err = 0;
  return content;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"correlation-network spectral embedding toolkit"};
  app.require_subcommand(1);

  // --- generate ---
  auto* gen = app.add_subcommand(
      "generate", "draw synthetic signals and noisy observations");
  int g_n = 100, g_T = 200, g_d0 = 10;
  double g_nu = 1e-4, g_alpha = 1.0;
  std::string g_family = "gaussian", g_scaling = "scaled_by_row_norm";
  std::string g_norm = "frobenius_sqrt_n", g_out = ".", g_format = "csv";
  std::uint64_t g_seed = 0;
  bool g_seed_given = false;
  gen->add_option("--n", g_n, "number of series")->capture_default_str();
  gen->add_option("--T", g_T, "series length")->capture_default_str();
  gen->add_option("--d0", g_d0, "number of signal frequencies")
      ->capture_default_str();
  gen->add_option("--nu", g_nu, "noise variance (0 for none)")
      ->capture_default_str();
  gen->add_option("--alpha", g_alpha, "variance inflation for one random row")
      ->capture_default_str();
  gen->add_option("--family", g_family, "noise family: gaussian|laplacian")
      ->capture_default_str();
  gen->add_option("--row-scaling", g_scaling,
                  "noise variance rule: scaled_by_row_norm|constant")
      ->capture_default_str();
  gen->add_option("--normalization", g_norm,
                  "signal scaling: frobenius_sqrt_n|rows_standardized")
      ->capture_default_str();
  gen->add_option("--seed", g_seed, "random seed (default: CORRSPEC_SEED or " +
                                        std::to_string(kDefaultSeed) + ")")
      ->each([&](const std::string&) { g_seed_given = true; });
  gen->add_option("--out-dir", g_out, "output directory")->capture_default_str();
  gen->add_option("--format", g_format, "matrix file format: csv|binary")
      ->check(CLI::IsMember({"csv", "binary"}))
      ->capture_default_str();

  // --- embed ---
  auto* emb = app.add_subcommand("embed", "embed a series or correlation file");
  std::string e_input, e_method = "ase", e_out = "embedding.csv";
  std::string e_kind = "auto";
  int e_d = 0;
  emb->add_option("--input", e_input, "input matrix file")->required();
  emb->add_option("--method", e_method, "ase|pca|naive")
      ->check(CLI::IsMember({"ase", "pca", "naive"}))
      ->capture_default_str();
  emb->add_option("--d", e_d, "embedding dimension (0 = numerical rank)")
      ->capture_default_str();
  emb->add_option("--input-kind", e_kind,
                  "auto|series|correlation (auto detects a unit diagonal)")
      ->check(CLI::IsMember({"auto", "series", "correlation"}))
      ->capture_default_str();
  emb->add_option("--out", e_out, "output embedding CSV")->capture_default_str();

  // --- evaluate ---
  auto* eva = app.add_subcommand(
      "evaluate", "Procrustes-aligned error of an embedding vs clean series");
  std::string v_estimate, v_truth;
  eva->add_option("--estimate", v_estimate, "embedding matrix file")->required();
  eva->add_option("--truth", v_truth, "clean signal series file")->required();

  // --- sweep ---
  auto* swp = app.add_subcommand("sweep", "run a Monte Carlo sweep from JSON");
  std::string s_config, s_out = ".";
  int s_workers = 0;
  swp->add_option("--config", s_config, "sweep configuration JSON file")
      ->required();
  swp->add_option("--workers", s_workers, "worker threads (0 = all cores)")
      ->capture_default_str();
  swp->add_option("--out-dir", s_out, "output directory")->capture_default_str();

  // --- reproduce ---
  auto* rep = app.add_subcommand("reproduce", "run a built-in experiment preset");
  std::string r_id, r_out = ".";
  int r_workers = 0, r_trials = 0;
  bool r_full = false;
  std::uint64_t r_seed = 0;
  bool r_seed_given = false;
  rep->add_option("id", r_id,
                  "preset: fig1|fig2|fig3|fig4|appendix_noise|appendix_dimsel")
      ->required();
  rep->add_flag("--full", r_full, "publication-size grids (slow)");
  rep->add_option("--trials", r_trials, "override trial count");
  rep->add_option("--workers", r_workers, "worker threads (0 = all cores)")
      ->capture_default_str();
  rep->add_option("--seed", r_seed, "override master seed")
      ->each([&](const std::string&) { r_seed_given = true; });
  rep->add_option("--out-dir", r_out, "output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message
    return 2;
  }

  try {
    if (gen->parsed()) {
      const std::uint64_t seed = resolve_seed(g_seed_given, g_seed);
      return run_generate(g_n, g_T, g_d0, g_nu, g_alpha, g_family, g_scaling,
                          g_norm, seed, g_out, g_format);
    }
    if (emb->parsed()) {
      return run_embed(e_input, e_method, e_d, e_kind, e_out);
    }
    if (eva->parsed()) {
      return run_evaluate(v_estimate, v_truth);
    }
    if (swp->parsed()) {
      int err = 0;
      const std::string config = read_text_file(s_config, err);
      if (err) return err;
      // The output stem is the experiment name from the config; fall back to
      // the file stem if the config is malformed (the sweep will then fail
      // with a proper message anyway).
      std::string stem = std::filesystem::path(s_config).stem().string();
      try {
        const json doc = json::parse(config);
        if (doc.contains("experiment") && doc["experiment"].is_string()) {
          stem = doc["experiment"].get<std::string>();
        }
      } catch (const json::exception&) {
      }
      return run_table(config, s_workers, s_out, stem);
    }
    if (rep->parsed()) {
      StringHandle config;
      const cs_status s =
          cs_preset_config(r_id.c_str(), r_full ? 1 : 0, &config.s);
      if (s != CS_OK) return fail(s);
      json doc = json::parse(config.s);
      if (r_trials > 0) doc["trials"] = r_trials;
      doc["master_seed"] = resolve_seed(r_seed_given, r_seed);
      return run_table(doc.dump(), r_workers, r_out, r_id);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
