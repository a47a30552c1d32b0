#include "seqrnn/motion.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "seqrnn/errors.hpp"

namespace seqrnn {

namespace {

constexpr double kNoiseSigma = 0.01;
constexpr double kConstantStdFloor = 1e-12;
constexpr double kTwoPi = 6.28318530717958647692;

bool parse_cell(std::string_view text, double& out) {
  // Trim spaces and a trailing CR; from_chars is locale-independent.
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() &&
         (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  if (text.empty()) return false;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return cells;
}

void check_norm_dims(const char* op, const MotionDataset& d, const NormStats& s) {
  if (s.mean.len() != d.frames.cols || s.stddev.len() != d.frames.cols) {
    throw ShapeError(std::string(op) + ": stats cover " + std::to_string(s.mean.len()) +
                     " columns but data has " + std::to_string(d.frames.cols));
  }
}

}  // namespace

MotionDataset load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);

  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    // Ignore a trailing blank line; blank lines elsewhere are ragged rows.
    lines.push_back(line);
  }
  while (!lines.empty()) {
    std::string_view last = lines.back();
    if (!last.empty() && last != "\r") break;
    lines.pop_back();
  }
  if (lines.empty()) throw IoError("empty file: " + path);

  // Header detection: if any cell of the first row fails numeric parse,
  // the row is a header.
  std::size_t first_data = 0;
  {
    double v;
    bool numeric = true;
    for (auto cell : split_cells(lines[0])) {
      if (!parse_cell(cell, v)) {
        numeric = false;
        break;
      }
    }
    if (!numeric) first_data = 1;
  }
  if (first_data >= lines.size()) {
    throw IoError(path + ": header row but no data rows");
  }

  const std::size_t cols = split_cells(lines[first_data]).size();
  const std::size_t rows = lines.size() - first_data;
  DenseMatrix frames(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto cells = split_cells(lines[first_data + r]);
    const std::size_t file_row = first_data + r + 1;  // 1-based, header included
    if (cells.size() != cols) {
      throw IoError(path + ": row " + std::to_string(file_row) + " has " +
                    std::to_string(cells.size()) + " cells, expected " +
                    std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      double v;
      if (!parse_cell(cells[c], v)) {
        throw IoError(path + ": row " + std::to_string(file_row) + ", column " +
                      std::to_string(c + 1) + " is not numeric");
      }
      frames(r, c) = v;
    }
  }
  return MotionDataset{std::move(frames), std::nullopt};
}

NormStats fit_normalizer(const MotionDataset& d) {
  const DenseMatrix& x = d.frames;
  if (x.rows == 0 || x.cols == 0) throw ShapeError("fit_normalizer: empty data");
  NormStats s;
  s.mean = DenseVector(x.cols);
  s.stddev = DenseVector(x.cols);
  const double inv_t = 1.0 / static_cast<double>(x.rows);
  for (std::size_t c = 0; c < x.cols; ++c) {
    double sum = 0.0;
    for (std::size_t r = 0; r < x.rows; ++r) sum += x(r, c);
    s.mean[c] = sum * inv_t;
  }
  for (std::size_t c = 0; c < x.cols; ++c) {
    double sq = 0.0;
    for (std::size_t r = 0; r < x.rows; ++r) {
      const double dev = x(r, c) - s.mean[c];
      sq += dev * dev;
    }
    const double sd = std::sqrt(sq * inv_t);  // population std
    if (sd < kConstantStdFloor) {
      std::cerr << "fit_normalizer: column " << c
                << " is constant; std clamped to 1\n";
      s.stddev[c] = 1.0;
    } else {
      s.stddev[c] = sd;
    }
  }
  return s;
}

MotionDataset normalize(const MotionDataset& d, const NormStats& s) {
  check_norm_dims("normalize", d, s);
  MotionDataset out;
  out.frames = DenseMatrix(d.frames.rows, d.frames.cols);
  for (std::size_t r = 0; r < d.frames.rows; ++r) {
    for (std::size_t c = 0; c < d.frames.cols; ++c) {
      out.frames(r, c) = (d.frames(r, c) - s.mean[c]) / s.stddev[c];
    }
  }
  out.norm = s;
  return out;
}

MotionDataset denormalize(const MotionDataset& d, const NormStats& s) {
  check_norm_dims("denormalize", d, s);
  MotionDataset out;
  out.frames = DenseMatrix(d.frames.rows, d.frames.cols);
  for (std::size_t r = 0; r < d.frames.rows; ++r) {
    for (std::size_t c = 0; c < d.frames.cols; ++c) {
      out.frames(r, c) = d.frames(r, c) * s.stddev[c] + s.mean[c];
    }
  }
  return out;
}

MotionDataset synthesize_benchmark_motion(std::size_t t, std::size_t d, Rng rng) {
  if (t < 2) throw ShapeError("synthesize_benchmark_motion: t must be >= 2");
  if (d < 1) throw ShapeError("synthesize_benchmark_motion: d must be >= 1");
  MotionDataset out;
  out.frames = DenseMatrix(t, d);
  for (std::size_t c = 0; c < d; ++c) {
    Rng col = rng.stream(c);
    const double freq = static_cast<double>(col.uniform_int(1, 6));
    const double phase = col.uniform(0.0, kTwoPi);
    const double amp = col.uniform(0.5, 1.5);
    for (std::size_t r = 0; r < t; ++r) {
      const double arg = kTwoPi * freq * static_cast<double>(r) / static_cast<double>(t);
      out.frames(r, c) = amp * std::sin(arg + phase) + kNoiseSigma * col.gaussian();
    }
  }
  return out;
}

SeriesDataset next_frame_dataset(const DenseMatrix& frames) {
  if (frames.rows < 2) {
    throw ShapeError("next_frame_dataset: needs at least 2 frames, got " +
                     std::to_string(frames.rows));
  }
  Sequence seq;
  seq.inputs = frames;
  seq.targets = DenseMatrix(frames.rows, frames.cols);
  seq.mask.assign(frames.rows, 1);
  for (std::size_t t = 0; t + 1 < frames.rows; ++t) {
    for (std::size_t c = 0; c < frames.cols; ++c) seq.targets(t, c) = frames(t + 1, c);
  }
  seq.mask[frames.rows - 1] = 0;  // no next frame for the last step

  SeriesDataset ds;
  ds.sequences.push_back(std::move(seq));
  return ds;
}

GenerationRun seed_and_generate(const CellParams& p, const DenseMatrix& seed_frames,
                                std::size_t gen_len) {
  const CellDims dims = dims_of(p);
  if (dims.d_in != dims.d_out) {
    throw ShapeError("seed_and_generate: model must have d_in == d_out, got " +
                     std::to_string(dims.d_in) + " vs " + std::to_string(dims.d_out));
  }
  if (seed_frames.cols != dims.d_in) {
    throw ShapeError("seed_and_generate: seed frames have " +
                     std::to_string(seed_frames.cols) + " columns, expected " +
                     std::to_string(dims.d_in));
  }
  if (seed_frames.rows < 1) throw ShapeError("seed_and_generate: need >= 1 seed frame");
  if (gen_len < 1) throw ShapeError("seed_and_generate: gen_len must be >= 1");

  DenseVector h(dims.hidden);
  for (std::size_t t = 0; t < seed_frames.rows; ++t) {
    h = cell_step(p, h, row_vector(seed_frames, t)).h;
  }

  GenerationRun run;
  run.seed_source = seed_frames;
  run.generated = DenseMatrix(gen_len, dims.d_in);

  DenseVector y = output_project(p, h);
  for (std::size_t k = 0; k < gen_len; ++k) {
    if (k > 0) {
      h = cell_step(p, h, y).h;
      y = output_project(p, h);
    }
    if (!all_finite(y.flat())) {
      throw NumericError("seed_and_generate: non-finite value at free-run step " +
                         std::to_string(k));
    }
    for (std::size_t c = 0; c < dims.d_in; ++c) run.generated(k, c) = y[c];
  }
  return run;
}

std::vector<double> feature_average_trace(const DenseMatrix& frames) {
  if (frames.cols == 0) throw ShapeError("feature_average_trace: no columns");
  std::vector<double> trace(frames.rows, 0.0);
  const double inv_d = 1.0 / static_cast<double>(frames.cols);
  for (std::size_t r = 0; r < frames.rows; ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < frames.cols; ++c) sum += frames(r, c);
    trace[r] = sum * inv_d;
  }
  return trace;
}

MotionTrainResult train_motion(const MotionDataset& d, const TrainConfig& cfg) {
  NormStats stats = fit_normalizer(d);
  MotionDataset normed = normalize(d, stats);
  SeriesDataset series = next_frame_dataset(normed.frames);
  TrainResult result = train(series, cfg);
  return {std::move(result.params), std::move(stats), std::move(result.report)};
}

}  // namespace seqrnn
