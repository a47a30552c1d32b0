// Exercises the extern-C surface the way an out-of-tree consumer would:
// only seqrnn.h, opaque handles, status codes.
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "seqrnn.h"

static int g_failures = 0;

#define CHECK(cond)                                                      \
  do {                                                                   \
    if (!(cond)) {                                                       \
      std::fprintf(stderr, "FAIL %s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++g_failures;                                                      \
    }                                                                    \
  } while (0)

static void test_toy_dataset_accessors() {
  seqrnn_dataset* ds = nullptr;
  CHECK(seqrnn_dataset_toy(4, 20, 7, &ds) == SEQRNN_OK);
  int64_t n = 0, t = 0, din = 0, dout = 0;
  CHECK(seqrnn_dataset_sequence_count(ds, &n) == SEQRNN_OK);
  CHECK(n == 4);
  CHECK(seqrnn_dataset_sequence_shape(ds, &t, &din, &dout) == SEQRNN_OK);
  CHECK(t == 20);
  CHECK(din == 2);
  CHECK(dout == 1);

  std::vector<double> xs(t * din), ys(t * dout);
  std::vector<uint8_t> mask(t);
  CHECK(seqrnn_dataset_copy_sequence(ds, 0, xs.data(), ys.data(), mask.data()) ==
        SEQRNN_OK);
  for (int i = 0; i < 5; ++i) CHECK(mask[i] == 0);
  for (int i = 5; i < 20; ++i) CHECK(mask[i] == 1);
  // delayed-sum relation holds through the C surface too
  for (int i = 5; i < 20; ++i) {
    CHECK(std::fabs(ys[i] - (xs[(i - 3) * 2 + 0] + xs[(i - 5) * 2 + 1])) < 1e-15);
  }

  CHECK(seqrnn_dataset_copy_sequence(ds, 99, xs.data(), nullptr, nullptr) ==
        SEQRNN_ERR_INVALID);
  CHECK(std::strlen(seqrnn_last_error()) > 0);

  // frame accessors reject a supervised dataset
  int64_t rows = 0, cols = 0;
  CHECK(seqrnn_dataset_frame_shape(ds, &rows, &cols) == SEQRNN_ERR_INVALID);
  seqrnn_dataset_destroy(ds);
}

static void test_train_save_load_generate() {
  seqrnn_dataset* ds = nullptr;
  CHECK(seqrnn_dataset_synthetic_motion(60, 5, 11, &ds) == SEQRNN_OK);

  seqrnn_train_config cfg;
  seqrnn_train_config_defaults(&cfg);
  CHECK(cfg.learning_rate == 0.05);
  CHECK(cfg.epochs == 2000);
  CHECK(cfg.clip_threshold == 5.0);
  cfg.epochs = 40;
  cfg.hidden = 8;
  cfg.learning_rate = 0.01;

  seqrnn_model* model = nullptr;
  seqrnn_report* report = nullptr;
  CHECK(seqrnn_train(ds, &cfg, &model, &report) == SEQRNN_OK);

  int64_t d_in = 0, hidden = 0, d_out = 0;
  CHECK(seqrnn_model_dims(model, &d_in, &hidden, &d_out) == SEQRNN_OK);
  CHECK(d_in == 5);
  CHECK(hidden == 8);
  CHECK(d_out == 5);
  int32_t kind = -1, has_norm = 0;
  CHECK(seqrnn_model_cell_kind(model, &kind) == SEQRNN_OK);
  CHECK(kind == SEQRNN_CELL_GRU);
  CHECK(seqrnn_model_has_norm(model, &has_norm) == SEQRNN_OK);
  CHECK(has_norm == 1);
  uint64_t dseed = 0;
  CHECK(seqrnn_model_data_seed(model, &dseed) == SEQRNN_OK);
  CHECK(dseed == 11);

  int64_t epochs = 0;
  CHECK(seqrnn_report_epochs(report, &epochs) == SEQRNN_OK);
  CHECK(epochs == 40);
  std::vector<double> curve(epochs);
  CHECK(seqrnn_report_loss_curve(report, curve.data(), epochs) == SEQRNN_OK);
  double final_loss = -1.0;
  CHECK(seqrnn_report_final_loss(report, &final_loss) == SEQRNN_OK);
  CHECK(final_loss == curve.back());
  CHECK(seqrnn_report_write_json(report, "/tmp/seqrnn_capi_report.json") == SEQRNN_OK);

  // checkpoint round trip through the C surface
  const char* ck = "/tmp/seqrnn_capi_ck.json";
  CHECK(seqrnn_model_save(model, ck) == SEQRNN_OK);
  seqrnn_model* loaded = nullptr;
  CHECK(seqrnn_model_load(ck, &loaded) == SEQRNN_OK);

  // generation from raw-space seed frames is identical for both handles
  std::vector<double> frames(60 * 5);
  CHECK(seqrnn_dataset_copy_frames(ds, frames.data()) == SEQRNN_OK);
  std::vector<double> out_a(10 * 5), out_b(10 * 5);
  CHECK(seqrnn_generate(model, frames.data(), 20, 5, 10, out_a.data()) == SEQRNN_OK);
  CHECK(seqrnn_generate(loaded, frames.data(), 20, 5, 10, out_b.data()) == SEQRNN_OK);
  CHECK(out_a == out_b);

  std::vector<double> trace(10);
  CHECK(seqrnn_feature_average_trace(out_a.data(), 10, 5, trace.data()) == SEQRNN_OK);
  for (double v : trace) CHECK(std::isfinite(v));

  // norm stats accessor
  std::vector<double> mean(5), sd(5);
  CHECK(seqrnn_model_copy_norm(model, mean.data(), sd.data()) == SEQRNN_OK);
  for (double s : sd) CHECK(s > 0.0);

  seqrnn_model_destroy(model);
  seqrnn_model_destroy(loaded);
  seqrnn_report_destroy(report);
  seqrnn_dataset_destroy(ds);
  std::remove(ck);
  std::remove("/tmp/seqrnn_capi_report.json");
}

static void test_compare_and_gradcheck() {
  seqrnn_dataset* ds = nullptr;
  CHECK(seqrnn_dataset_toy(10, 20, 3, &ds) == SEQRNN_OK);
  seqrnn_train_config cfg;
  seqrnn_train_config_defaults(&cfg);
  cfg.epochs = 25;
  cfg.hidden = 4;
  seqrnn_report* gru = nullptr;
  seqrnn_report* tanh_rep = nullptr;
  double ratio = 0.0;
  CHECK(seqrnn_compare_cells(ds, &cfg, &gru, &tanh_rep, &ratio) == SEQRNN_OK);
  double fg = 0, ft = 0;
  CHECK(seqrnn_report_final_loss(gru, &fg) == SEQRNN_OK);
  CHECK(seqrnn_report_final_loss(tanh_rep, &ft) == SEQRNN_OK);
  CHECK(ratio == fg / ft);
  seqrnn_report_destroy(gru);
  seqrnn_report_destroy(tanh_rep);
  seqrnn_dataset_destroy(ds);

  double err = -1.0;
  CHECK(seqrnn_gradcheck(SEQRNN_CELL_GRU, 3, 6, 2, 7, 42, 1e-5, &err) == SEQRNN_OK);
  CHECK(err >= 0.0);
  CHECK(err < 1e-4);
  CHECK(seqrnn_gradcheck(SEQRNN_CELL_TANH, 2, 5, 1, 6, 1, 1e-5, &err) == SEQRNN_OK);
  CHECK(err < 1e-4);
}

static void test_error_paths() {
  CHECK(seqrnn_dataset_load_csv("/tmp/seqrnn_no_such_file.csv", nullptr) ==
        SEQRNN_ERR_INVALID);
  seqrnn_dataset* ds = nullptr;
  CHECK(seqrnn_dataset_load_csv("/tmp/seqrnn_no_such_file.csv", &ds) == SEQRNN_ERR_IO);
  CHECK(std::strstr(seqrnn_last_error(), "seqrnn_no_such_file") != nullptr);

  seqrnn_model* m = nullptr;
  CHECK(seqrnn_model_load("/tmp/seqrnn_no_such_ck.json", &m) == SEQRNN_ERR_IO);

  double err = 0.0;
  CHECK(seqrnn_gradcheck(SEQRNN_CELL_GRU, 0, 6, 2, 7, 42, 1e-5, &err) ==
        SEQRNN_ERR_INVALID);
  CHECK(seqrnn_gradcheck(SEQRNN_CELL_GRU, 3, 6, 2, 7, 42, -1.0, &err) ==
        SEQRNN_ERR_INVALID);
}

int main() {
  test_toy_dataset_accessors();
  test_train_save_load_generate();
  test_compare_and_gradcheck();
  test_error_paths();
  if (g_failures == 0) {
    std::printf("capi_tests: all checks passed\n");
    return 0;
  }
  std::fprintf(stderr, "capi_tests: %d failures\n", g_failures);
  return 1;
}
