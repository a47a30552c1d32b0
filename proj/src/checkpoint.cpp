#include "seqrnn/checkpoint.hpp"

#include <fstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "seqrnn/errors.hpp"
#include "seqrnn/training.hpp"

namespace seqrnn {

namespace {

using nlohmann::json;

json array_to_json(const DenseMatrix& m) {
  return json{{"shape", {m.rows, m.cols}}, {"data", m.data}};
}

json array_to_json(const DenseVector& v) {
  return json{{"shape", {v.len()}}, {"data", v.data}};
}

void array_from_json(const json& j, const std::string& name, DenseMatrix& m) {
  const auto& shape = j.at("shape");
  if (shape.size() != 2) {
    throw IoError("checkpoint: array " + name + " should have a 2-d shape");
  }
  const std::size_t rows = shape[0].get<std::size_t>();
  const std::size_t cols = shape[1].get<std::size_t>();
  if (rows != m.rows || cols != m.cols) {
    throw IoError("checkpoint: array " + name + " has shape " + std::to_string(rows) +
                  "x" + std::to_string(cols) + ", expected " + std::to_string(m.rows) +
                  "x" + std::to_string(m.cols));
  }
  const auto& data = j.at("data");
  if (data.size() != rows * cols) {
    throw IoError("checkpoint: array " + name + " has " + std::to_string(data.size()) +
                  " values, expected " + std::to_string(rows * cols));
  }
  m.data = data.get<std::vector<double>>();
}

void array_from_json(const json& j, const std::string& name, DenseVector& v) {
  const auto& shape = j.at("shape");
  if (shape.size() != 1) {
    throw IoError("checkpoint: array " + name + " should have a 1-d shape");
  }
  const std::size_t len = shape[0].get<std::size_t>();
  if (len != v.len()) {
    throw IoError("checkpoint: array " + name + " has length " + std::to_string(len) +
                  ", expected " + std::to_string(v.len()));
  }
  const auto& data = j.at("data");
  if (data.size() != len) {
    throw IoError("checkpoint: array " + name + " has " + std::to_string(data.size()) +
                  " values, expected " + std::to_string(len));
  }
  v.data = data.get<std::vector<double>>();
}

}  // namespace

void save_checkpoint(const CellParams& p, const std::optional<NormStats>& norm,
                     std::uint64_t seed_provenance, const std::string& path) {
  bool finite = true;
  for_each_array(p, [&](const char*, const auto& arr) {
    finite = finite && all_finite(arr.flat());
  });
  if (!finite) throw NumericError("save_checkpoint: parameters contain non-finite values");

  const CellDims dims = dims_of(p);
  json j;
  j["format_version"] = kCheckpointFormatVersion;
  j["cell"] = cell_kind_name(kind_of(p));
  j["dims"] = {{"d_in", dims.d_in}, {"hidden", dims.hidden}, {"d_out", dims.d_out}};
  json arrays = json::object();
  for_each_array(p, [&](const char* name, const auto& arr) {
    arrays[name] = array_to_json(arr);
  });
  j["arrays"] = std::move(arrays);
  if (norm) {
    j["norm"] = {{"mean", norm->mean.data}, {"std", norm->stddev.data}};
  }
  j["seed_provenance"] = seed_provenance;

  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
  if (!out) throw IoError("write failed for " + path);
}

LoadedCheckpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw IoError("checkpoint parse error in " + path + ": " + e.what());
  }

  try {
    const int version = j.at("format_version").get<int>();
    if (version != kCheckpointFormatVersion) {
      throw IoError("checkpoint " + path + ": unrecognized format_version " +
                    std::to_string(version));
    }
    const std::string cell = j.at("cell").get<std::string>();
    const auto& dims = j.at("dims");
    const std::size_t d_in = dims.at("d_in").get<std::size_t>();
    const std::size_t hidden = dims.at("hidden").get<std::size_t>();
    const std::size_t d_out = dims.at("d_out").get<std::size_t>();
    if (d_in < 1 || hidden < 1 || d_out < 1) {
      throw IoError("checkpoint " + path + ": dims must all be >= 1");
    }

    CellKind kind;
    if (cell == "tanh") {
      kind = CellKind::Tanh;
    } else if (cell == "gru") {
      kind = CellKind::Gru;
    } else {
      throw IoError("checkpoint " + path + ": unknown cell kind \"" + cell + "\"");
    }

    // Build a correctly-shaped skeleton, then fill each named array.
    Rng rng(0);
    CellParams params = init_params(kind, d_in, hidden, d_out, 1.0, rng);
    const auto& arrays = j.at("arrays");
    std::size_t expected = 0;
    for_each_array(params, [&](const char* name, auto& arr) {
      ++expected;
      auto it = arrays.find(name);
      if (it == arrays.end()) {
        throw IoError("checkpoint " + path + ": missing array " + name);
      }
      array_from_json(*it, name, arr);
    });
    if (arrays.size() != expected) {
      throw IoError("checkpoint " + path + ": has " + std::to_string(arrays.size()) +
                    " arrays, expected " + std::to_string(expected));
    }

    LoadedCheckpoint ck{std::move(params), std::nullopt, 0};
    if (j.contains("norm")) {
      NormStats s;
      s.mean.data = j["norm"].at("mean").get<std::vector<double>>();
      s.stddev.data = j["norm"].at("std").get<std::vector<double>>();
      if (s.mean.len() != d_in || s.stddev.len() != d_in) {
        throw IoError("checkpoint " + path + ": norm stats do not match d_in");
      }
      for (double sd : s.stddev.data) {
        if (!(sd > 0.0)) throw IoError("checkpoint " + path + ": norm std must be > 0");
      }
      ck.norm = std::move(s);
    }
    if (j.contains("seed_provenance")) {
      ck.seed_provenance = j["seed_provenance"].get<std::uint64_t>();
    }
    return ck;
  } catch (const json::exception& e) {
    throw IoError("checkpoint schema violation in " + path + ": " + e.what());
  }
}

}  // namespace seqrnn
