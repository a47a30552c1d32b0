#include "seqrnn.h"

#include <cstring>
#include <optional>
#include <string>
#include <variant>

#include "seqrnn/checkpoint.hpp"
#include "seqrnn/engine.hpp"
#include "seqrnn/errors.hpp"
#include "seqrnn/motion.hpp"
#include "seqrnn/toytask.hpp"
#include "seqrnn/training.hpp"

using namespace seqrnn;

struct seqrnn_dataset {
  // Either a supervised series set (toy) or raw frames (motion).
  std::variant<SeriesDataset, MotionDataset> data;
  std::uint64_t seed = 0;
};

struct seqrnn_model {
  CellParams params;
  std::optional<NormStats> norm;
  std::uint64_t data_seed = 0;
};

struct seqrnn_report {
  TrainReport report;
};

namespace {

thread_local std::string g_last_error = "no error";

seqrnn_status fail(seqrnn_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

// Runs fn, translating exceptions into status codes + last-error text.
template <typename Fn>
seqrnn_status guarded(Fn&& fn) {
  try {
    fn();
    return SEQRNN_OK;
  } catch (const ShapeError& e) {
    return fail(SEQRNN_ERR_INVALID, e.what());
  } catch (const NumericError& e) {
    return fail(SEQRNN_ERR_NUMERIC, e.what());
  } catch (const IoError& e) {
    return fail(SEQRNN_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(SEQRNN_ERR_INVALID, e.what());
  }
}

seqrnn_status require(bool ok, const char* message) {
  return ok ? SEQRNN_OK : fail(SEQRNN_ERR_INVALID, message);
}

TrainConfig to_config(const seqrnn_train_config& c) {
  TrainConfig cfg;
  cfg.learning_rate = c.learning_rate;
  cfg.epochs = c.epochs;
  cfg.clip_threshold = c.clip_threshold;
  cfg.seed = c.seed;
  cfg.cell = c.cell == SEQRNN_CELL_TANH ? CellKind::Tanh : CellKind::Gru;
  cfg.hidden = c.hidden;
  cfg.init_scale = c.init_scale;
  cfg.log_every = c.log_every;
  return cfg;
}

}  // namespace

extern "C" {

const char* seqrnn_last_error(void) { return g_last_error.c_str(); }

void seqrnn_train_config_defaults(seqrnn_train_config* cfg) {
  if (!cfg) return;
  TrainConfig d;
  cfg->learning_rate = d.learning_rate;
  cfg->epochs = d.epochs;
  cfg->clip_threshold = d.clip_threshold;
  cfg->seed = d.seed;
  cfg->cell = SEQRNN_CELL_GRU;
  cfg->hidden = d.hidden;
  cfg->init_scale = d.init_scale;
  cfg->log_every = d.log_every;
}

seqrnn_status seqrnn_dataset_toy(int64_t n_seq, int64_t t_len, uint64_t seed,
                                 seqrnn_dataset** out) {
  if (auto s = require(out != nullptr, "seqrnn_dataset_toy: out is NULL")) return s;
  if (auto s = require(n_seq >= 1 && t_len >= 1, "seqrnn_dataset_toy: sizes must be >= 1"))
    return s;
  return guarded([&] {
    auto* ds = new seqrnn_dataset{
        generate_toy_dataset(static_cast<std::size_t>(n_seq),
                             static_cast<std::size_t>(t_len), Rng(seed)),
        seed};
    *out = ds;
  });
}

seqrnn_status seqrnn_dataset_synthetic_motion(int64_t frames, int64_t dims,
                                              uint64_t seed, seqrnn_dataset** out) {
  if (auto s = require(out != nullptr, "seqrnn_dataset_synthetic_motion: out is NULL"))
    return s;
  if (auto s = require(frames >= 2 && dims >= 1,
                       "seqrnn_dataset_synthetic_motion: need frames >= 2, dims >= 1"))
    return s;
  return guarded([&] {
    auto* ds = new seqrnn_dataset{
        synthesize_benchmark_motion(static_cast<std::size_t>(frames),
                                    static_cast<std::size_t>(dims), Rng(seed)),
        seed};
    *out = ds;
  });
}

seqrnn_status seqrnn_dataset_load_csv(const char* path, seqrnn_dataset** out) {
  if (auto s = require(out != nullptr && path != nullptr,
                       "seqrnn_dataset_load_csv: NULL argument"))
    return s;
  return guarded([&] {
    auto* ds = new seqrnn_dataset{load_csv(path), 0};
    *out = ds;
  });
}

void seqrnn_dataset_destroy(seqrnn_dataset* ds) { delete ds; }

seqrnn_status seqrnn_dataset_sequence_count(const seqrnn_dataset* ds, int64_t* out) {
  if (auto s = require(ds && out, "seqrnn_dataset_sequence_count: NULL argument"))
    return s;
  const auto* series = std::get_if<SeriesDataset>(&ds->data);
  if (auto s = require(series != nullptr, "dataset holds frames, not sequences"))
    return s;
  *out = static_cast<int64_t>(series->sequences.size());
  return SEQRNN_OK;
}

seqrnn_status seqrnn_dataset_sequence_shape(const seqrnn_dataset* ds, int64_t* t_len,
                                            int64_t* d_in, int64_t* d_out) {
  if (auto s = require(ds != nullptr, "seqrnn_dataset_sequence_shape: ds is NULL"))
    return s;
  const auto* series = std::get_if<SeriesDataset>(&ds->data);
  if (auto s = require(series && !series->sequences.empty(),
                       "dataset holds frames, not sequences"))
    return s;
  if (t_len) *t_len = static_cast<int64_t>(series->sequences[0].inputs.rows);
  if (d_in) *d_in = static_cast<int64_t>(series->d_in());
  if (d_out) *d_out = static_cast<int64_t>(series->d_out());
  return SEQRNN_OK;
}

seqrnn_status seqrnn_dataset_copy_sequence(const seqrnn_dataset* ds, int64_t index,
                                           double* inputs, double* targets,
                                           uint8_t* mask) {
  if (auto s = require(ds != nullptr, "seqrnn_dataset_copy_sequence: ds is NULL"))
    return s;
  const auto* series = std::get_if<SeriesDataset>(&ds->data);
  if (auto s = require(series != nullptr, "dataset holds frames, not sequences"))
    return s;
  if (auto s = require(index >= 0 &&
                           index < static_cast<int64_t>(series->sequences.size()),
                       "sequence index out of range"))
    return s;
  const Sequence& seq = series->sequences[static_cast<std::size_t>(index)];
  if (inputs) {
    std::memcpy(inputs, seq.inputs.data.data(), seq.inputs.data.size() * sizeof(double));
  }
  if (targets) {
    std::memcpy(targets, seq.targets.data.data(),
                seq.targets.data.size() * sizeof(double));
  }
  if (mask) std::memcpy(mask, seq.mask.data(), seq.mask.size());
  return SEQRNN_OK;
}

seqrnn_status seqrnn_dataset_frame_shape(const seqrnn_dataset* ds, int64_t* rows,
                                         int64_t* cols) {
  if (auto s = require(ds != nullptr, "seqrnn_dataset_frame_shape: ds is NULL")) return s;
  const auto* motion = std::get_if<MotionDataset>(&ds->data);
  if (auto s = require(motion != nullptr, "dataset holds sequences, not frames"))
    return s;
  if (rows) *rows = static_cast<int64_t>(motion->frames.rows);
  if (cols) *cols = static_cast<int64_t>(motion->frames.cols);
  return SEQRNN_OK;
}

seqrnn_status seqrnn_dataset_copy_frames(const seqrnn_dataset* ds, double* buf) {
  if (auto s = require(ds && buf, "seqrnn_dataset_copy_frames: NULL argument")) return s;
  const auto* motion = std::get_if<MotionDataset>(&ds->data);
  if (auto s = require(motion != nullptr, "dataset holds sequences, not frames"))
    return s;
  std::memcpy(buf, motion->frames.data.data(),
              motion->frames.data.size() * sizeof(double));
  return SEQRNN_OK;
}

void seqrnn_model_destroy(seqrnn_model* m) { delete m; }

seqrnn_status seqrnn_model_dims(const seqrnn_model* m, int64_t* d_in, int64_t* hidden,
                                int64_t* d_out) {
  if (auto s = require(m != nullptr, "seqrnn_model_dims: model is NULL")) return s;
  const CellDims d = dims_of(m->params);
  if (d_in) *d_in = static_cast<int64_t>(d.d_in);
  if (hidden) *hidden = static_cast<int64_t>(d.hidden);
  if (d_out) *d_out = static_cast<int64_t>(d.d_out);
  return SEQRNN_OK;
}

seqrnn_status seqrnn_model_cell_kind(const seqrnn_model* m, int32_t* kind) {
  if (auto s = require(m && kind, "seqrnn_model_cell_kind: NULL argument")) return s;
  *kind = kind_of(m->params) == CellKind::Tanh ? SEQRNN_CELL_TANH : SEQRNN_CELL_GRU;
  return SEQRNN_OK;
}

seqrnn_status seqrnn_model_has_norm(const seqrnn_model* m, int32_t* has) {
  if (auto s = require(m && has, "seqrnn_model_has_norm: NULL argument")) return s;
  *has = m->norm.has_value() ? 1 : 0;
  return SEQRNN_OK;
}

seqrnn_status seqrnn_model_copy_norm(const seqrnn_model* m, double* mean,
                                     double* std_dev) {
  if (auto s = require(m && mean && std_dev, "seqrnn_model_copy_norm: NULL argument"))
    return s;
  if (auto s = require(m->norm.has_value(), "model has no normalization stats"))
    return s;
  std::memcpy(mean, m->norm->mean.data.data(), m->norm->mean.len() * sizeof(double));
  std::memcpy(std_dev, m->norm->stddev.data.data(),
              m->norm->stddev.len() * sizeof(double));
  return SEQRNN_OK;
}

seqrnn_status seqrnn_model_data_seed(const seqrnn_model* m, uint64_t* seed) {
  if (auto s = require(m && seed, "seqrnn_model_data_seed: NULL argument")) return s;
  *seed = m->data_seed;
  return SEQRNN_OK;
}

seqrnn_status seqrnn_model_save(const seqrnn_model* m, const char* path) {
  if (auto s = require(m && path, "seqrnn_model_save: NULL argument")) return s;
  return guarded([&] { save_checkpoint(m->params, m->norm, m->data_seed, path); });
}

seqrnn_status seqrnn_model_load(const char* path, seqrnn_model** out) {
  if (auto s = require(path && out, "seqrnn_model_load: NULL argument")) return s;
  return guarded([&] {
    LoadedCheckpoint ck = load_checkpoint(path);
    *out = new seqrnn_model{std::move(ck.params), std::move(ck.norm),
                            ck.seed_provenance};
  });
}

seqrnn_status seqrnn_train(const seqrnn_dataset* ds, const seqrnn_train_config* cfg,
                           seqrnn_model** out_model, seqrnn_report** out_report) {
  if (auto s = require(ds && cfg, "seqrnn_train: NULL argument")) return s;
  return guarded([&] {
    const TrainConfig config = to_config(*cfg);
    CellParams params{};
    std::optional<NormStats> norm;
    TrainReport report;
    if (const auto* series = std::get_if<SeriesDataset>(&ds->data)) {
      TrainResult r = train(*series, config);
      params = std::move(r.params);
      report = std::move(r.report);
    } else {
      MotionTrainResult r = train_motion(std::get<MotionDataset>(ds->data), config);
      params = std::move(r.params);
      norm = std::move(r.norm);
      report = std::move(r.report);
    }
    if (out_model) {
      *out_model = new seqrnn_model{std::move(params), std::move(norm), ds->seed};
    }
    if (out_report) *out_report = new seqrnn_report{std::move(report)};
  });
}

seqrnn_status seqrnn_compare_cells(const seqrnn_dataset* ds,
                                   const seqrnn_train_config* cfg,
                                   seqrnn_report** out_gru, seqrnn_report** out_tanh,
                                   double* ratio) {
  if (auto s = require(ds && cfg, "seqrnn_compare_cells: NULL argument")) return s;
  const auto* series = std::get_if<SeriesDataset>(&ds->data);
  if (auto s = require(series != nullptr,
                       "seqrnn_compare_cells: needs a supervised dataset"))
    return s;
  return guarded([&] {
    CellComparison cmp = compare_cells(*series, to_config(*cfg));
    if (out_gru) *out_gru = new seqrnn_report{std::move(cmp.gru.report)};
    if (out_tanh) *out_tanh = new seqrnn_report{std::move(cmp.tanh.report)};
    if (ratio) *ratio = cmp.final_loss_ratio;
  });
}

void seqrnn_report_destroy(seqrnn_report* r) { delete r; }

seqrnn_status seqrnn_report_epochs(const seqrnn_report* r, int64_t* out) {
  if (auto s = require(r && out, "seqrnn_report_epochs: NULL argument")) return s;
  *out = static_cast<int64_t>(r->report.loss_curve.size());
  return SEQRNN_OK;
}

seqrnn_status seqrnn_report_loss_curve(const seqrnn_report* r, double* buf,
                                       int64_t len) {
  if (auto s = require(r && buf, "seqrnn_report_loss_curve: NULL argument")) return s;
  if (auto s = require(len >= static_cast<int64_t>(r->report.loss_curve.size()),
                       "seqrnn_report_loss_curve: buffer too small"))
    return s;
  std::memcpy(buf, r->report.loss_curve.data(),
              r->report.loss_curve.size() * sizeof(double));
  return SEQRNN_OK;
}

seqrnn_status seqrnn_report_final_loss(const seqrnn_report* r, double* out) {
  if (auto s = require(r && out, "seqrnn_report_final_loss: NULL argument")) return s;
  *out = r->report.final_loss;
  return SEQRNN_OK;
}

seqrnn_status seqrnn_report_wall_time(const seqrnn_report* r, double* out) {
  if (auto s = require(r && out, "seqrnn_report_wall_time: NULL argument")) return s;
  *out = r->report.wall_time_s;
  return SEQRNN_OK;
}

seqrnn_status seqrnn_report_write_json(const seqrnn_report* r, const char* path) {
  if (auto s = require(r && path, "seqrnn_report_write_json: NULL argument")) return s;
  return guarded([&] { write_report_json(r->report, path); });
}

seqrnn_status seqrnn_gradcheck(int32_t cell, int64_t d_in, int64_t hidden,
                               int64_t d_out, int64_t t_len, uint64_t seed, double eps,
                               double* max_rel_err) {
  if (auto s = require(max_rel_err != nullptr, "seqrnn_gradcheck: out is NULL"))
    return s;
  if (auto s = require(d_in >= 1 && hidden >= 1 && d_out >= 1 && t_len >= 1,
                       "seqrnn_gradcheck: dimensions must be >= 1"))
    return s;
  if (auto s = require(eps > 0.0, "seqrnn_gradcheck: eps must be > 0")) return s;
  return guarded([&] {
    const CellKind kind = cell == SEQRNN_CELL_TANH ? CellKind::Tanh : CellKind::Gru;
    Rng rng(seed);
    CellParams params =
        init_params(kind, static_cast<std::size_t>(d_in),
                    static_cast<std::size_t>(hidden), static_cast<std::size_t>(d_out),
                    default_init_scale(static_cast<std::size_t>(hidden)), rng);
    DenseMatrix xs(static_cast<std::size_t>(t_len), static_cast<std::size_t>(d_in));
    DenseMatrix ys(static_cast<std::size_t>(t_len), static_cast<std::size_t>(d_out));
    for (double& x : xs.data) x = rng.uniform(-1.0, 1.0);
    for (double& y : ys.data) y = rng.uniform(-1.0, 1.0);
    const std::vector<std::uint8_t> mask(static_cast<std::size_t>(t_len), 1);

    ForwardTrace trace = forward_sequence(params, xs, ys, mask);
    Gradients analytic = backward_sequence(params, trace, xs, ys, mask);
    Gradients numeric = finite_difference_grads(params, xs, ys, mask, eps);

    std::vector<std::span<const double>> a, n;
    for_each_array(analytic,
                   [&](const char*, const auto& arr) { a.push_back(arr.flat()); });
    for_each_array(numeric,
                   [&](const char*, const auto& arr) { n.push_back(arr.flat()); });
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      for (std::size_t i = 0; i < a[k].size(); ++i) {
        const double denom =
            std::max(1e-8, std::fabs(a[k][i]) + std::fabs(n[k][i]));
        worst = std::max(worst, std::fabs(a[k][i] - n[k][i]) / denom);
      }
    }
    *max_rel_err = worst;
  });
}

seqrnn_status seqrnn_generate(const seqrnn_model* m, const double* seed_frames,
                              int64_t seed_rows, int64_t dims, int64_t gen_len,
                              double* out) {
  if (auto s = require(m && seed_frames && out, "seqrnn_generate: NULL argument"))
    return s;
  if (auto s = require(seed_rows >= 1 && dims >= 1 && gen_len >= 1,
                       "seqrnn_generate: sizes must be >= 1"))
    return s;
  return guarded([&] {
    DenseMatrix seed(static_cast<std::size_t>(seed_rows),
                     static_cast<std::size_t>(dims));
    std::memcpy(seed.data.data(), seed_frames, seed.data.size() * sizeof(double));

    MotionDataset block{std::move(seed), std::nullopt};
    if (m->norm) block = normalize(block, *m->norm);

    GenerationRun run =
        seed_and_generate(m->params, block.frames, static_cast<std::size_t>(gen_len));

    MotionDataset gen{std::move(run.generated), std::nullopt};
    if (m->norm) gen = denormalize(gen, *m->norm);
    std::memcpy(out, gen.frames.data.data(), gen.frames.data.size() * sizeof(double));
  });
}

seqrnn_status seqrnn_feature_average_trace(const double* frames, int64_t rows,
                                           int64_t cols, double* out) {
  if (auto s = require(frames && out, "seqrnn_feature_average_trace: NULL argument"))
    return s;
  if (auto s = require(rows >= 1 && cols >= 1,
                       "seqrnn_feature_average_trace: sizes must be >= 1"))
    return s;
  return guarded([&] {
    DenseMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    std::memcpy(m.data.data(), frames, m.data.size() * sizeof(double));
    const std::vector<double> trace = feature_average_trace(m);
    std::memcpy(out, trace.data(), trace.size() * sizeof(double));
  });
}

}  // extern "C"
