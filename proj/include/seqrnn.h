/*
 * seqrnn C API: recurrent sequence modeling (Tanh-RNN / GRU cells, full
 * backpropagation through time, SGD with global-norm gradient clipping,
 * autoregressive generation).
 *
 * All entry points return seqrnn_status; on failure seqrnn_last_error()
 * describes what went wrong (thread-local). Handles are opaque and owned
 * by the caller; destroy them with the matching *_destroy function.
 */
#ifndef SEQRNN_H
#define SEQRNN_H

#include <stdint.h>

#if defined(_WIN32)
#define SEQRNN_API __declspec(dllexport)
#else
#define SEQRNN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum seqrnn_status {
  SEQRNN_OK = 0,
  SEQRNN_ERR_INVALID = 1, /* shape/argument validation failed */
  SEQRNN_ERR_NUMERIC = 2, /* NaN/Inf or divergence */
  SEQRNN_ERR_IO = 3       /* filesystem or parse failure */
} seqrnn_status;

typedef enum seqrnn_cell_kind {
  SEQRNN_CELL_TANH = 0,
  SEQRNN_CELL_GRU = 1
} seqrnn_cell_kind;

typedef struct seqrnn_dataset seqrnn_dataset;
typedef struct seqrnn_model seqrnn_model;
typedef struct seqrnn_report seqrnn_report;

typedef struct seqrnn_train_config {
  double learning_rate;
  int64_t epochs;
  double clip_threshold;
  uint64_t seed;
  int32_t cell; /* seqrnn_cell_kind */
  int64_t hidden;
  double init_scale; /* <= 0 selects 1/sqrt(hidden) */
  int64_t log_every; /* 0 = silent */
} seqrnn_train_config;

/* Message of the most recent failure on this thread; never NULL. */
SEQRNN_API const char* seqrnn_last_error(void);

/* Fills cfg with the library defaults (lr 0.05, 2000 epochs, clip 5.0,
 * seed 42, GRU, hidden 7, auto init scale, silent logging). */
SEQRNN_API void seqrnn_train_config_defaults(seqrnn_train_config* cfg);

/* ---- datasets ---------------------------------------------------- */

/* Delayed-sum memory benchmark: n_seq sequences, t_len steps, 2 input
 * columns, scalar target x[t-3][0] + x[t-5][1], first 5 steps masked. */
SEQRNN_API seqrnn_status seqrnn_dataset_toy(int64_t n_seq, int64_t t_len,
                                            uint64_t seed, seqrnn_dataset** out);

/* Synthetic quasi-periodic motion stand-in, frames x dims. */
SEQRNN_API seqrnn_status seqrnn_dataset_synthetic_motion(int64_t frames, int64_t dims,
                                                         uint64_t seed,
                                                         seqrnn_dataset** out);

/* Rectangular numeric CSV with optional header row. */
SEQRNN_API seqrnn_status seqrnn_dataset_load_csv(const char* path,
                                                 seqrnn_dataset** out);

SEQRNN_API void seqrnn_dataset_destroy(seqrnn_dataset* ds);

/* Supervised (toy) dataset accessors. */
SEQRNN_API seqrnn_status seqrnn_dataset_sequence_count(const seqrnn_dataset* ds,
                                                       int64_t* out);
SEQRNN_API seqrnn_status seqrnn_dataset_sequence_shape(const seqrnn_dataset* ds,
                                                       int64_t* t_len, int64_t* d_in,
                                                       int64_t* d_out);
/* Any of inputs (t_len*d_in), targets (t_len*d_out), mask (t_len) may be
 * NULL to skip. Buffers are filled row-major. */
SEQRNN_API seqrnn_status seqrnn_dataset_copy_sequence(const seqrnn_dataset* ds,
                                                      int64_t index, double* inputs,
                                                      double* targets, uint8_t* mask);

/* Frame (motion) dataset accessors. */
SEQRNN_API seqrnn_status seqrnn_dataset_frame_shape(const seqrnn_dataset* ds,
                                                    int64_t* rows, int64_t* cols);
SEQRNN_API seqrnn_status seqrnn_dataset_copy_frames(const seqrnn_dataset* ds,
                                                    double* buf);

/* ---- models ------------------------------------------------------ */

SEQRNN_API void seqrnn_model_destroy(seqrnn_model* m);
SEQRNN_API seqrnn_status seqrnn_model_dims(const seqrnn_model* m, int64_t* d_in,
                                           int64_t* hidden, int64_t* d_out);
SEQRNN_API seqrnn_status seqrnn_model_cell_kind(const seqrnn_model* m, int32_t* kind);
SEQRNN_API seqrnn_status seqrnn_model_has_norm(const seqrnn_model* m, int32_t* has);
/* mean/std must hold d_in doubles each; fails if the model has no stats. */
SEQRNN_API seqrnn_status seqrnn_model_copy_norm(const seqrnn_model* m, double* mean,
                                                double* std_dev);
/* Seed of the dataset the model was trained on (provenance only). */
SEQRNN_API seqrnn_status seqrnn_model_data_seed(const seqrnn_model* m, uint64_t* seed);

/* JSON checkpoint round-trip; forward behavior is preserved bit-exactly. */
SEQRNN_API seqrnn_status seqrnn_model_save(const seqrnn_model* m, const char* path);
SEQRNN_API seqrnn_status seqrnn_model_load(const char* path, seqrnn_model** out);

/* ---- training ---------------------------------------------------- */

/* Full-batch SGD with global-norm clipping. A supervised dataset is
 * trained as-is; a frame dataset is normalized to zero mean / unit
 * variance per column and trained on next-frame prediction, with the
 * stats stored in the returned model. Either output pointer may be NULL. */
SEQRNN_API seqrnn_status seqrnn_train(const seqrnn_dataset* ds,
                                      const seqrnn_train_config* cfg,
                                      seqrnn_model** out_model,
                                      seqrnn_report** out_report);

/* Trains both cell kinds with the identical config; the configured cell
 * kind is ignored. ratio receives final_gru / final_tanh (may be NULL). */
SEQRNN_API seqrnn_status seqrnn_compare_cells(const seqrnn_dataset* ds,
                                              const seqrnn_train_config* cfg,
                                              seqrnn_report** out_gru,
                                              seqrnn_report** out_tanh,
                                              double* ratio);

SEQRNN_API void seqrnn_report_destroy(seqrnn_report* r);
SEQRNN_API seqrnn_status seqrnn_report_epochs(const seqrnn_report* r, int64_t* out);
SEQRNN_API seqrnn_status seqrnn_report_loss_curve(const seqrnn_report* r, double* buf,
                                                  int64_t len);
SEQRNN_API seqrnn_status seqrnn_report_final_loss(const seqrnn_report* r, double* out);
SEQRNN_API seqrnn_status seqrnn_report_wall_time(const seqrnn_report* r, double* out);
/* {"config": .., "loss_curve": .., "final_loss": .., "wall_time_s": ..} */
SEQRNN_API seqrnn_status seqrnn_report_write_json(const seqrnn_report* r,
                                                  const char* path);

/* ---- verification ------------------------------------------------ */

/* Compares analytic BPTT gradients against central finite differences on
 * a randomized model/sequence; writes the max symmetric relative error. */
SEQRNN_API seqrnn_status seqrnn_gradcheck(int32_t cell, int64_t d_in, int64_t hidden,
                                          int64_t d_out, int64_t t_len, uint64_t seed,
                                          double eps, double* max_rel_err);

/* ---- generation -------------------------------------------------- */

/* Teacher-forces seed_frames (seed_rows x dims, raw space), then free-runs
 * gen_len steps feeding each output back as the next input. If the model
 * carries normalization stats the loop runs in normalized space and out
 * receives denormalized frames. out must hold gen_len*dims doubles. */
SEQRNN_API seqrnn_status seqrnn_generate(const seqrnn_model* m,
                                         const double* seed_frames, int64_t seed_rows,
                                         int64_t dims, int64_t gen_len, double* out);

/* Per-row mean across columns; out must hold rows doubles. */
SEQRNN_API seqrnn_status seqrnn_feature_average_trace(const double* frames,
                                                      int64_t rows, int64_t cols,
                                                      double* out);

#ifdef __cplusplus
}
#endif

#endif /* SEQRNN_H */
