#include "gimag/json_io.hpp"

#include <fstream>

#include <fmt/format.h>

namespace gimag::io {

namespace {

json vec_to_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json mat_to_json(const Mat& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(Errc::invalid_argument, fmt::format("missing field \"{}\"", key));
  }
  return j.at(key);
}

int read_modes(const json& j) {
  const json& m = field(j, "modes");
  if (!m.is_number_integer() || m.get<long long>() < 1) {
    throw Error(Errc::invalid_argument, "\"modes\" must be a positive integer");
  }
  return m.get<int>();
}

double read_number(const json& v, const char* key) {
  if (!v.is_number()) {
    throw Error(Errc::invalid_argument, fmt::format("\"{}\" must contain only numbers", key));
  }
  return v.get<double>();
}

Vec read_vec(const json& j, const char* key, int len) {
  const json& a = field(j, key);
  if (!a.is_array() || static_cast<int>(a.size()) != len) {
    throw Error(Errc::dimension_mismatch,
                fmt::format("\"{}\" must be an array of length {}", key, len));
  }
  Vec v(len);
  for (int i = 0; i < len; ++i) v(i) = read_number(a[i], key);
  return v;
}

Mat read_mat(const json& j, const char* key, int dim) {
  const json& a = field(j, key);
  if (!a.is_array() || static_cast<int>(a.size()) != dim) {
    throw Error(Errc::dimension_mismatch,
                fmt::format("\"{}\" must have {} rows", key, dim));
  }
  Mat m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    if (!a[r].is_array() || static_cast<int>(a[r].size()) != dim) {
      throw Error(Errc::dimension_mismatch,
                  fmt::format("row {} of \"{}\" must have {} entries", r, key, dim));
    }
    for (int c = 0; c < dim; ++c) m(r, c) = read_number(a[r][c], key);
  }
  return m;
}

}  // namespace

json state_to_json(const GaussianState& state) {
  return {{"modes", state.modes()},
          {"mean", vec_to_json(state.mean())},
          {"cov", mat_to_json(state.cov())}};
}

GaussianState state_from_json(const json& j, const Tolerances& tol) {
  const int modes = read_modes(j);
  return validate_state(read_vec(j, "mean", 2 * modes), read_mat(j, "cov", 2 * modes), tol);
}

json channel_to_json(const GaussianChannel& channel) {
  return {{"modes", channel.modes()},
          {"d", vec_to_json(channel.d())},
          {"T", mat_to_json(channel.T())},
          {"N", mat_to_json(channel.N())}};
}

GaussianChannel channel_from_json(const json& j, const Tolerances& tol) {
  const int modes = read_modes(j);
  return validate_channel(read_vec(j, "d", 2 * modes), read_mat(j, "T", 2 * modes),
                          read_mat(j, "N", 2 * modes), tol);
}

json report_to_json(const MeasureReport& report, const GaussianState& state) {
  return {{"M", report.M},
          {"Mprime", report.Mprime},
          {"fidelity_conj", report.fidelity_conj},
          {"fidelity_bar", report.fidelity_bar},
          {"method", to_string(report.method)},
          {"state", state_to_json(state)}};
}

json fock_to_json(const FockMatrix& fm) {
  return {{"modes", fm.modes},
          {"cutoff", fm.cutoff},
          {"trace_deficit", fm.trace_deficit},
          {"nodes_per_axis", fm.nodes_per_axis},
          {"half_width", fm.half_width},
          {"residual", fm.residual},
          {"re", mat_to_json(fm.data.real())},
          {"im", mat_to_json(fm.data.imag())}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::invalid_argument, fmt::format("cannot open {}", path));
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::invalid_argument, fmt::format("{}: {}", path, e.what()));
  }
}

}  // namespace gimag::io
