// seqrnn command-line tool. Everything numerical goes through the C API in
// seqrnn.h; this layer parses flags and writes CSV/SVG/JSON artifacts.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "artifacts.hpp"
#include "seqrnn.h"

namespace {

using nlohmann::json;

// Exit codes: 0 success, 1 validation/usage, 2 numerical, 3 I/O —
// identical to the seqrnn_status values.
struct ApiError {
  int code;
  std::string message;
};

void check(seqrnn_status s) {
  if (s != SEQRNN_OK) throw ApiError{static_cast<int>(s), seqrnn_last_error()};
}

struct DatasetDeleter {
  void operator()(seqrnn_dataset* p) const { seqrnn_dataset_destroy(p); }
};
struct ModelDeleter {
  void operator()(seqrnn_model* p) const { seqrnn_model_destroy(p); }
};
struct ReportDeleter {
  void operator()(seqrnn_report* p) const { seqrnn_report_destroy(p); }
};
using DatasetPtr = std::unique_ptr<seqrnn_dataset, DatasetDeleter>;
using ModelPtr = std::unique_ptr<seqrnn_model, ModelDeleter>;
using ReportPtr = std::unique_ptr<seqrnn_report, ReportDeleter>;

DatasetPtr make_toy_dataset(int64_t n_seq, int64_t t_len, uint64_t seed) {
  seqrnn_dataset* ds = nullptr;
  check(seqrnn_dataset_toy(n_seq, t_len, seed, &ds));
  return DatasetPtr(ds);
}

std::vector<double> report_curve(const seqrnn_report* r) {
  int64_t n = 0;
  check(seqrnn_report_epochs(r, &n));
  std::vector<double> curve(static_cast<std::size_t>(n));
  check(seqrnn_report_loss_curve(r, curve.data(), n));
  return curve;
}

void write_loss_csv(const std::string& path, const std::vector<double>& curve) {
  std::vector<double> rows(curve.size() * 2);
  for (std::size_t e = 0; e < curve.size(); ++e) {
    rows[e * 2] = static_cast<double>(e);
    rows[e * 2 + 1] = curve[e];
  }
  cli::write_csv(path, {"epoch", "loss"}, rows.data(), curve.size(), 2);
}

void dump_toy_sequences(const seqrnn_dataset* ds, const std::string& dir) {
  int64_t n = 0, t = 0, din = 0, dout = 0;
  check(seqrnn_dataset_sequence_count(ds, &n));
  check(seqrnn_dataset_sequence_shape(ds, &t, &din, &dout));
  std::vector<double> xs(t * din), ys(t * dout);
  std::vector<uint8_t> mask(t);
  for (int64_t i = 0; i < n; ++i) {
    check(seqrnn_dataset_copy_sequence(ds, i, xs.data(), ys.data(), mask.data()));
    std::vector<double> rows(t * 4);
    for (int64_t s = 0; s < t; ++s) {
      rows[s * 4 + 0] = xs[s * 2 + 0];
      rows[s * 4 + 1] = xs[s * 2 + 1];
      rows[s * 4 + 2] = ys[s];
      rows[s * 4 + 3] = mask[s] ? 1.0 : 0.0;
    }
    char name[32];
    std::snprintf(name, sizeof(name), "toy_seq_%03lld.csv", static_cast<long long>(i));
    cli::write_csv(dir + "/" + name, {"x0", "x1", "target", "mask"}, rows.data(), t, 4);
  }
  std::printf("wrote %lld sequence files under %s\n", static_cast<long long>(n),
              dir.c_str());
}

void print_banner(const char* cmd, const seqrnn_train_config& cfg) {
  std::printf("%s: cell=%s hidden=%lld epochs=%lld lr=%g clip=%g seed=%llu\n", cmd,
              cfg.cell == SEQRNN_CELL_TANH ? "tanh" : "gru",
              static_cast<long long>(cfg.hidden), static_cast<long long>(cfg.epochs),
              cfg.learning_rate, cfg.clip_threshold,
              static_cast<unsigned long long>(cfg.seed));
}

// ---- gradcheck ----------------------------------------------------

int cmd_gradcheck(const std::string& cell, int64_t d_in, int64_t hidden,
                  int64_t d_out, int64_t t_len, uint64_t seed, double eps) {
  if (eps < 1e-7 || eps > 1e-3) {
    std::fprintf(stderr,
                 "warning: eps=%g is outside the validated range [1e-7, 1e-3]\n", eps);
  }
  const int32_t kind = cell == "tanh" ? SEQRNN_CELL_TANH : SEQRNN_CELL_GRU;
  double err = 0.0;
  check(seqrnn_gradcheck(kind, d_in, hidden, d_out, t_len, seed, eps, &err));
  const bool pass = err < 1e-4;
  std::printf("gradcheck cell=%s d_in=%lld hidden=%lld d_out=%lld t_len=%lld "
              "seed=%llu eps=%g\n",
              cell.c_str(), static_cast<long long>(d_in),
              static_cast<long long>(hidden), static_cast<long long>(d_out),
              static_cast<long long>(t_len), static_cast<unsigned long long>(seed),
              eps);
  std::printf("max relative error %.6e (threshold 1e-4): %s\n", err,
              pass ? "PASS" : "FAIL");
  return pass ? 0 : 2;
}

// ---- train-toy ----------------------------------------------------

int cmd_train_toy(const std::string& cell, seqrnn_train_config cfg,
                  int64_t sequences, int64_t steps, const std::string& out_dir,
                  const std::string& checkpoint_out, bool dump_data) {
  cfg.cell = cell == "tanh" ? SEQRNN_CELL_TANH : SEQRNN_CELL_GRU;
  std::filesystem::create_directories(out_dir);
  print_banner("train-toy", cfg);
  std::printf("dataset: %lld sequences x %lld steps x 2 inputs (seed %llu)\n",
              static_cast<long long>(sequences), static_cast<long long>(steps),
              static_cast<unsigned long long>(cfg.seed));

  DatasetPtr ds = make_toy_dataset(sequences, steps, cfg.seed);
  if (dump_data) dump_toy_sequences(ds.get(), out_dir);

  seqrnn_model* model = nullptr;
  seqrnn_report* report = nullptr;
  check(seqrnn_train(ds.get(), &cfg, &model, &report));
  ModelPtr mp(model);
  ReportPtr rp(report);

  write_loss_csv(out_dir + "/loss.csv", report_curve(report));
  check(seqrnn_report_write_json(report, (out_dir + "/report.json").c_str()));
  if (!checkpoint_out.empty()) check(seqrnn_model_save(model, checkpoint_out.c_str()));

  double final_loss = 0.0;
  check(seqrnn_report_final_loss(report, &final_loss));
  std::printf("final loss %.6g; artifacts in %s\n", final_loss, out_dir.c_str());
  return 0;
}

// ---- compare-cells ------------------------------------------------

int cmd_compare_cells(seqrnn_train_config cfg, const std::string& out_dir,
                      bool dump_data) {
  std::filesystem::create_directories(out_dir);
  // reference benchmark: 100 sequences x 20 steps, 7 hidden units
  cfg.hidden = 7;
  print_banner("compare-cells", cfg);

  DatasetPtr ds = make_toy_dataset(100, 20, cfg.seed);
  if (dump_data) dump_toy_sequences(ds.get(), out_dir);

  seqrnn_report* gru = nullptr;
  seqrnn_report* tanh_rep = nullptr;
  double ratio = 0.0;
  check(seqrnn_compare_cells(ds.get(), &cfg, &gru, &tanh_rep, &ratio));
  ReportPtr gp(gru), tp(tanh_rep);

  const std::vector<double> gru_curve = report_curve(gru);
  const std::vector<double> tanh_curve = report_curve(tanh_rep);
  write_loss_csv(out_dir + "/gru_loss.csv", gru_curve);
  write_loss_csv(out_dir + "/tanh_loss.csv", tanh_curve);

  cli::write_svg_chart(out_dir + "/compare_cells.svg",
                       "Full-batch training loss, GRU vs Tanh (hidden=7)", "epoch",
                       "masked MSE",
                       {{"gru", "#1f77b4", false, 0.0, gru_curve},
                        {"tanh", "#d62728", true, 0.0, tanh_curve}});

  double final_gru = 0.0, final_tanh = 0.0;
  check(seqrnn_report_final_loss(gru, &final_gru));
  check(seqrnn_report_final_loss(tanh_rep, &final_tanh));

  json summary;
  summary["dataset"] = {{"sequences", 100}, {"steps", 20}, {"inputs", 2},
                        {"seed", cfg.seed}};
  summary["epochs"] = cfg.epochs;
  summary["learning_rate"] = cfg.learning_rate;
  summary["clip_threshold"] = cfg.clip_threshold;
  summary["hidden"] = cfg.hidden;
  summary["final_loss_gru"] = final_gru;
  summary["final_loss_tanh"] = final_tanh;
  summary["final_loss_ratio"] = ratio;
  cli::write_text_file(out_dir + "/summary.json", summary.dump(2) + "\n");

  std::printf("final losses: gru %.6g, tanh %.6g, ratio %.4g\n", final_gru, final_tanh,
              ratio);
  std::printf("artifacts in %s\n", out_dir.c_str());
  return 0;
}

// ---- train-motion -------------------------------------------------

int cmd_train_motion(const std::string& input_csv, bool synthetic, int64_t frames,
                     int64_t dims, seqrnn_train_config cfg,
                     const std::string& checkpoint_out,
                     const std::string& report_out) {
  cfg.cell = SEQRNN_CELL_GRU;
  DatasetPtr ds;
  if (synthetic) {
    seqrnn_dataset* p = nullptr;
    check(seqrnn_dataset_synthetic_motion(frames, dims, cfg.seed, &p));
    ds.reset(p);
    std::printf("train-motion: synthetic dataset %lldx%lld (seed %llu)\n",
                static_cast<long long>(frames), static_cast<long long>(dims),
                static_cast<unsigned long long>(cfg.seed));
  } else {
    seqrnn_dataset* p = nullptr;
    check(seqrnn_dataset_load_csv(input_csv.c_str(), &p));
    ds.reset(p);
    int64_t r = 0, c = 0;
    check(seqrnn_dataset_frame_shape(ds.get(), &r, &c));
    std::printf("train-motion: %s is %lldx%lld\n", input_csv.c_str(),
                static_cast<long long>(r), static_cast<long long>(c));
  }
  print_banner("train-motion", cfg);

  seqrnn_model* model = nullptr;
  seqrnn_report* report = nullptr;
  check(seqrnn_train(ds.get(), &cfg, &model, &report));
  ModelPtr mp(model);
  ReportPtr rp(report);

  check(seqrnn_model_save(model, checkpoint_out.c_str()));
  check(seqrnn_report_write_json(report, report_out.c_str()));

  double final_loss = 0.0;
  check(seqrnn_report_final_loss(report, &final_loss));
  std::printf("final loss %.6g; checkpoint %s, report %s\n", final_loss,
              checkpoint_out.c_str(), report_out.c_str());
  return 0;
}

// ---- generate -----------------------------------------------------

int cmd_generate(const std::string& checkpoint, const std::string& seed_csv,
                 bool use_training_prefix, int64_t prefix_frames, int64_t seed_frames,
                 int64_t gen_len, const std::string& out_prefix) {
  seqrnn_model* raw_model = nullptr;
  check(seqrnn_model_load(checkpoint.c_str(), &raw_model));
  ModelPtr model(raw_model);

  int64_t d_in = 0, hidden = 0, d_out = 0;
  check(seqrnn_model_dims(model.get(), &d_in, &hidden, &d_out));

  DatasetPtr source;
  if (use_training_prefix) {
    uint64_t data_seed = 0;
    check(seqrnn_model_data_seed(model.get(), &data_seed));
    seqrnn_dataset* p = nullptr;
    check(seqrnn_dataset_synthetic_motion(prefix_frames, d_in, data_seed, &p));
    source.reset(p);
    std::printf("generate: seeding from regenerated training data (seed %llu)\n",
                static_cast<unsigned long long>(data_seed));
  } else {
    seqrnn_dataset* p = nullptr;
    check(seqrnn_dataset_load_csv(seed_csv.c_str(), &p));
    source.reset(p);
  }

  int64_t rows = 0, cols = 0;
  check(seqrnn_dataset_frame_shape(source.get(), &rows, &cols));
  if (cols != d_in) {
    throw ApiError{1, "seed source has " + std::to_string(cols) +
                          " columns but the model expects " + std::to_string(d_in)};
  }
  if (rows < seed_frames) {
    throw ApiError{1, "seed source has only " + std::to_string(rows) +
                          " rows, need " + std::to_string(seed_frames)};
  }

  std::vector<double> source_data(rows * cols);
  check(seqrnn_dataset_copy_frames(source.get(), source_data.data()));

  std::vector<double> generated(gen_len * cols);
  check(seqrnn_generate(model.get(), source_data.data(), seed_frames, cols, gen_len,
                        generated.data()));

  // generated frames
  std::vector<std::string> header(cols);
  for (int64_t c = 0; c < cols; ++c) header[c] = "f" + std::to_string(c);
  cli::write_csv(out_prefix + "_generated.csv", header, generated.data(), gen_len,
                 cols);

  // seed + free-run average trace on one chart
  std::vector<double> seed_trace(seed_frames), gen_trace(gen_len);
  check(seqrnn_feature_average_trace(source_data.data(), seed_frames, cols,
                                     seed_trace.data()));
  check(seqrnn_feature_average_trace(generated.data(), gen_len, cols,
                                     gen_trace.data()));
  cli::write_svg_chart(
      out_prefix + "_generation.svg", "Seeded free-run generation (feature average)",
      "frame", "feature average",
      {{"seed frames", "#1f4e9c", false, 0.0, seed_trace},
       {"generated", "#2ca02c", true, static_cast<double>(seed_frames), gen_trace}});

  // overlay against the reference continuation when the source is longer
  // than the seed
  const int64_t ref_len = std::min<int64_t>(rows - seed_frames, gen_len);
  if (ref_len > 0) {
    std::vector<double> ref_trace(ref_len);
    check(seqrnn_feature_average_trace(source_data.data() + seed_frames * cols,
                                       ref_len, cols, ref_trace.data()));
    std::vector<double> gen_head(gen_trace.begin(), gen_trace.begin() + ref_len);
    cli::write_svg_chart(
        out_prefix + "_overlay.svg",
        "Generated vs reference continuation (feature average)", "frame",
        "feature average",
        {{"reference", "#1f4e9c", false, static_cast<double>(seed_frames), ref_trace},
         {"generated", "#2ca02c", true, static_cast<double>(seed_frames), gen_head}});
  }

  // sidecar
  json sidecar;
  sidecar["checkpoint"] = checkpoint;
  sidecar["seed_frames"] = seed_frames;
  sidecar["gen_len"] = gen_len;
  sidecar["seed_source"] = use_training_prefix ? "training-prefix" : seed_csv;
  int32_t has_norm = 0;
  check(seqrnn_model_has_norm(model.get(), &has_norm));
  if (has_norm) {
    std::vector<double> mean(d_in), sd(d_in);
    check(seqrnn_model_copy_norm(model.get(), mean.data(), sd.data()));
    sidecar["norm"] = {{"mean", mean}, {"std", sd}};
  } else {
    sidecar["norm"] = nullptr;
  }
  cli::write_text_file(out_prefix + "_run.json", sidecar.dump(2) + "\n");

  std::printf("wrote %s_generated.csv (%lldx%lld), %s_generation.svg%s, %s_run.json\n",
              out_prefix.c_str(), static_cast<long long>(gen_len),
              static_cast<long long>(cols), out_prefix.c_str(),
              ref_len > 0 ? (", " + out_prefix + "_overlay.svg").c_str() : "",
              out_prefix.c_str());
  return 0;
}

// ---- plot ---------------------------------------------------------

int cmd_plot(const std::vector<std::string>& csvs, const std::string& out,
             int64_t column, const std::string& title) {
  static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b"};
  std::vector<cli::PlotSeries> series;
  for (std::size_t i = 0; i < csvs.size(); ++i) {
    seqrnn_dataset* p = nullptr;
    check(seqrnn_dataset_load_csv(csvs[i].c_str(), &p));
    DatasetPtr ds(p);
    int64_t rows = 0, cols = 0;
    check(seqrnn_dataset_frame_shape(ds.get(), &rows, &cols));
    std::vector<double> data(rows * cols);
    check(seqrnn_dataset_copy_frames(ds.get(), data.data()));

    std::vector<double> ys(rows);
    std::string label = std::filesystem::path(csvs[i]).filename().string();
    if (column < 0) {
      check(seqrnn_feature_average_trace(data.data(), rows, cols, ys.data()));
      if (cols > 1) label += " (mean)";
    } else {
      if (column >= cols) {
        throw ApiError{1, csvs[i] + " has " + std::to_string(cols) +
                              " columns, cannot plot column " + std::to_string(column)};
      }
      for (int64_t r = 0; r < rows; ++r) ys[r] = data[r * cols + column];
      label += " [" + std::to_string(column) + "]";
    }
    series.push_back({label, kPalette[i % 6], i % 2 == 1, 0.0, std::move(ys)});
  }
  cli::write_svg_chart(out, title, "row", "value", series);
  std::printf("wrote %s\n", out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"seqrnn: GRU / Tanh recurrent sequence modeling experiments"};
  app.require_subcommand(1);

  // gradcheck
  std::string gc_cell = "gru";
  int64_t gc_din = 3, gc_hidden = 6, gc_dout = 2, gc_tlen = 7;
  uint64_t gc_seed = 42;
  double gc_eps = 1e-5;
  auto* gradcheck = app.add_subcommand(
      "gradcheck", "Compare BPTT gradients against central finite differences");
  gradcheck->add_option("--cell", gc_cell)->check(CLI::IsMember({"gru", "tanh"}));
  gradcheck->add_option("--d-in", gc_din)->check(CLI::PositiveNumber);
  gradcheck->add_option("--hidden", gc_hidden)->check(CLI::PositiveNumber);
  gradcheck->add_option("--d-out", gc_dout)->check(CLI::PositiveNumber);
  gradcheck->add_option("--t-len", gc_tlen)->check(CLI::PositiveNumber);
  gradcheck->add_option("--seed", gc_seed);
  gradcheck->add_option("--eps", gc_eps)->check(CLI::PositiveNumber);

  // shared training knobs
  seqrnn_train_config defaults;
  seqrnn_train_config_defaults(&defaults);

  // train-toy
  std::string tt_cell = "gru";
  seqrnn_train_config tt_cfg = defaults;
  int64_t tt_sequences = 100, tt_steps = 20;
  std::string tt_out = "toy_out", tt_checkpoint;
  bool tt_dump = false;
  auto* train_toy =
      app.add_subcommand("train-toy", "Train one cell on the delayed-sum benchmark");
  train_toy->add_option("--cell", tt_cell)->check(CLI::IsMember({"gru", "tanh"}));
  train_toy->add_option("--epochs", tt_cfg.epochs)->check(CLI::PositiveNumber);
  train_toy->add_option("--lr", tt_cfg.learning_rate)->check(CLI::PositiveNumber);
  train_toy->add_option("--clip", tt_cfg.clip_threshold)->check(CLI::PositiveNumber);
  train_toy->add_option("--hidden", tt_cfg.hidden)->check(CLI::PositiveNumber);
  train_toy->add_option("--seed", tt_cfg.seed);
  train_toy->add_option("--sequences", tt_sequences)->check(CLI::PositiveNumber);
  train_toy->add_option("--steps", tt_steps)->check(CLI::PositiveNumber);
  train_toy->add_option("--out-dir", tt_out);
  train_toy->add_option("--checkpoint-out", tt_checkpoint);
  train_toy->add_flag("--dump-data", tt_dump, "Write one CSV per toy sequence");

  // compare-cells
  seqrnn_train_config cc_cfg = defaults;
  std::string cc_out = "compare_out";
  bool cc_dump = false;
  auto* compare = app.add_subcommand(
      "compare-cells", "Train GRU and Tanh on the delayed-sum benchmark and compare");
  compare->add_option("--epochs", cc_cfg.epochs)->check(CLI::PositiveNumber);
  compare->add_option("--lr", cc_cfg.learning_rate)->check(CLI::PositiveNumber);
  compare->add_option("--clip", cc_cfg.clip_threshold)->check(CLI::PositiveNumber);
  compare->add_option("--seed", cc_cfg.seed);
  compare->add_option("--out-dir", cc_out);
  compare->add_flag("--dump-data", cc_dump, "Write one CSV per toy sequence");

  // train-motion
  std::string tm_input;
  bool tm_synthetic = false;
  int64_t tm_frames = 375, tm_dims = 49;
  seqrnn_train_config tm_cfg = defaults;
  tm_cfg.learning_rate = 0.005;
  tm_cfg.epochs = 3000;
  tm_cfg.hidden = 120;
  tm_cfg.log_every = 500;
  std::string tm_checkpoint = "motion_checkpoint.json";
  std::string tm_report = "motion_report.json";
  auto* train_motion = app.add_subcommand(
      "train-motion", "Train next-frame prediction on a motion time series");
  auto* tm_csv_opt = train_motion->add_option("--input-csv", tm_input,
                                              "Rectangular numeric CSV, frames x features");
  auto* tm_synth_opt = train_motion->add_flag("--synthetic", tm_synthetic,
                                              "Use the synthetic benchmark dataset");
  tm_csv_opt->excludes(tm_synth_opt);
  tm_synth_opt->excludes(tm_csv_opt);
  train_motion->add_option("--frames", tm_frames, "Synthetic dataset length")
      ->check(CLI::PositiveNumber);
  train_motion->add_option("--dims", tm_dims, "Synthetic dataset feature count")
      ->check(CLI::PositiveNumber);
  train_motion->add_option("--hidden", tm_cfg.hidden)->check(CLI::PositiveNumber);
  train_motion->add_option("--epochs", tm_cfg.epochs)->check(CLI::PositiveNumber);
  train_motion->add_option("--lr", tm_cfg.learning_rate)->check(CLI::PositiveNumber);
  train_motion->add_option("--clip", tm_cfg.clip_threshold)->check(CLI::PositiveNumber);
  train_motion->add_option("--seed", tm_cfg.seed);
  train_motion->add_option("--log-every", tm_cfg.log_every);
  train_motion->add_option("--checkpoint-out", tm_checkpoint);
  train_motion->add_option("--report-out", tm_report);

  // generate
  std::string g_checkpoint, g_seed_csv, g_prefix = "gen";
  bool g_use_prefix = false;
  int64_t g_prefix_frames = 375, g_seed_frames = 50, g_gen_len = 300;
  auto* generate = app.add_subcommand(
      "generate", "Seed a trained model and free-run it autoregressively");
  generate->add_option("--checkpoint", g_checkpoint)->required();
  auto* g_csv_opt = generate->add_option("--seed-csv", g_seed_csv,
                                         "CSV whose first rows seed the model");
  auto* g_pref_opt = generate->add_flag(
      "--use-training-prefix", g_use_prefix,
      "Regenerate the synthetic training data recorded in the checkpoint");
  g_csv_opt->excludes(g_pref_opt);
  g_pref_opt->excludes(g_csv_opt);
  generate->add_option("--frames", g_prefix_frames,
                       "Length of the regenerated training prefix source")
      ->check(CLI::PositiveNumber);
  generate->add_option("--seed-frames", g_seed_frames)->check(CLI::PositiveNumber);
  generate->add_option("--gen-len", g_gen_len)->check(CLI::PositiveNumber);
  generate->add_option("--out-prefix", g_prefix);

  // plot
  std::vector<std::string> p_csvs;
  std::string p_out = "plot.svg", p_title = "seqrnn plot";
  int64_t p_column = -1;
  auto* plot = app.add_subcommand("plot", "Render CSV columns as an SVG line chart");
  plot->add_option("--csv", p_csvs, "Input CSV (repeatable)")->required();
  plot->add_option("--out", p_out);
  plot->add_option("--column", p_column, "Column index; default plots the row mean");
  plot->add_option("--title", p_title);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gradcheck->parsed()) {
      return cmd_gradcheck(gc_cell, gc_din, gc_hidden, gc_dout, gc_tlen, gc_seed,
                           gc_eps);
    }
    if (train_toy->parsed()) {
      return cmd_train_toy(tt_cell, tt_cfg, tt_sequences, tt_steps, tt_out,
                           tt_checkpoint, tt_dump);
    }
    if (compare->parsed()) return cmd_compare_cells(cc_cfg, cc_out, cc_dump);
    if (train_motion->parsed()) {
      if (!tm_synthetic && tm_input.empty()) {
        std::fprintf(stderr, "train-motion: pass exactly one of --input-csv or "
                             "--synthetic\n");
        return 1;
      }
      return cmd_train_motion(tm_input, tm_synthetic, tm_frames, tm_dims, tm_cfg,
                              tm_checkpoint, tm_report);
    }
    if (generate->parsed()) {
      if (!g_use_prefix && g_seed_csv.empty()) {
        std::fprintf(stderr, "generate: pass exactly one of --seed-csv or "
                             "--use-training-prefix\n");
        return 1;
      }
      return cmd_generate(g_checkpoint, g_seed_csv, g_use_prefix, g_prefix_frames,
                          g_seed_frames, g_gen_len, g_prefix);
    }
    if (plot->parsed()) return cmd_plot(p_csvs, p_out, p_column, p_title);
  } catch (const ApiError& e) {
    std::fprintf(stderr, "error: %s\n", e.message.c_str());
    return e.code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 1;
}
