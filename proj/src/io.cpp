#include "nhdmp/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

#include "nhdmp/errors.hpp"

namespace nhdmp::io {
namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
  return os;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open '" + path.string() + "' for reading");
  return is;
}

void finish(std::ofstream& os, const std::filesystem::path& path) {
  os.flush();
  if (!os) throw IoError("failed writing '" + path.string() + "'");
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_field(std::string_view f, std::size_t line, std::size_t col) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
  if (ec != std::errc() || ptr != f.data() + f.size() || f.empty())
    throw ParseError(line, "column " + std::to_string(col + 1) +
                               ": not a number '" + std::string(f) + "'");
  return v;
}

nlohmann::json vec_json(const Vec3& v) { return {v.x(), v.y(), v.z()}; }

nlohmann::json mat_json(const Mat3& R) {
  nlohmann::json j = nlohmann::json::array();
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) j.push_back(R(r, c));
  return j;
}

nlohmann::json forcing_json(const ForcingTerm& f) {
  return {{"centers", f.centers()}, {"widths", f.widths()}, {"weights", f.weights()}};
}

const nlohmann::json& field(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(0, std::string("model is missing field '") + key + "'");
  return j.at(key);
}

double number(const nlohmann::json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number()) throw ParseError(0, std::string("field '") + key + "' is not a number");
  return v.get<double>();
}

std::vector<double> numbers(const nlohmann::json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_array()) throw ParseError(0, std::string("field '") + key + "' is not an array");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number())
      throw ParseError(0, std::string("field '") + key + "' holds a non-number");
    out.push_back(e.get<double>());
  }
  return out;
}

Vec3 vec_from(const nlohmann::json& j, const char* key) {
  const auto v = numbers(j, key);
  if (v.size() != 3) throw ParseError(0, std::string("field '") + key + "' needs 3 entries");
  return {v[0], v[1], v[2]};
}

Mat3 mat_from(const nlohmann::json& j, const char* key) {
  const auto v = numbers(j, key);
  if (v.size() != 9) throw ParseError(0, std::string("field '") + key + "' needs 9 entries");
  Mat3 R;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) R(r, c) = v[static_cast<std::size_t>(3 * r + c)];
  return R;
}

std::array<ForcingTerm, 3> forcing_from(const nlohmann::json& j, const char* key) {
  const auto& arr = field(j, key);
  if (!arr.is_array() || arr.size() != 3)
    throw ParseError(0, std::string("field '") + key + "' needs 3 forcing terms");
  std::array<ForcingTerm, 3> out;
  for (std::size_t i = 0; i < 3; ++i) {
    try {
      out[i] = ForcingTerm(numbers(arr[i], "centers"), numbers(arr[i], "widths"),
                           numbers(arr[i], "weights"));
    } catch (const std::invalid_argument& e) {
      throw ParseError(0, std::string(key) + "[" + std::to_string(i) + "]: " + e.what());
    }
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trajectory_csv(std::ostream& os, const PoseTrajectory& traj) {
  os << kTrajectoryHeader << '\n';
  for (const auto& s : traj.samples) {
    os << format_double(s.t);
    for (int i = 0; i < 3; ++i) os << ',' << format_double(s.p(i));
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) os << ',' << format_double(s.R(r, c));
    os << '\n';
  }
}

void write_trajectory_csv(const std::filesystem::path& path,
                          const PoseTrajectory& traj) {
  auto os = open_out(path);
  write_trajectory_csv(os, traj);
  finish(os, path);
}

PoseTrajectory read_trajectory_csv(std::istream& is) {
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(is, line)) throw ParseError(1, "empty trajectory file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTrajectoryHeader)
    throw ParseError(1, std::string("expected header '") + kTrajectoryHeader + "'");

  PoseTrajectory out;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (is.peek() == std::char_traits<char>::eof()) break;
      throw ParseError(lineno, "empty row");
    }
    const auto f = split(line, ',');
    if (f.size() != 13)
      throw ParseError(lineno, "expected 13 columns, found " + std::to_string(f.size()));
    PoseSample s;
    s.t = parse_field(f[0], lineno, 0);
    for (int i = 0; i < 3; ++i) s.p(i) = parse_field(f[1 + i], lineno, 1 + i);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        s.R(r, c) = parse_field(f[4 + 3 * r + c], lineno, 4 + 3 * r + c);
    if (!so3::is_rotation(s.R))
      throw ParseError(lineno, "rotation entries are not orthonormal");
    out.samples.push_back(s);
  }
  if (out.samples.size() < 2) throw ParseError(lineno, "need at least 2 samples");
  const double h0 = out.samples[1].t - out.samples[0].t;
  if (!(h0 > 0.0)) throw ParseError(3, "timestamps must increase");
  for (std::size_t k = 2; k < out.samples.size(); ++k) {
    if (std::abs(out.samples[k].t - out.samples[k - 1].t - h0) > 1e-9)
      throw ParseError(k + 2, "timestamps are not uniformly spaced");
  }
  out.sample_rate = static_cast<double>(out.samples.size() - 1) /
                    (out.samples.back().t - out.samples.front().t);
  return out;
}

PoseTrajectory read_trajectory_csv(const std::filesystem::path& path) {
  auto is = open_in(path);
  return read_trajectory_csv(is);
}

void write_report_csv(std::ostream& os, const Rollout& r) {
  os << kReportHeader << '\n';
  for (std::size_t k = 0; k < r.diagnostics.size(); ++k) {
    const auto& d = r.diagnostics[k];
    os << format_double(r.states[k].t) << ',' << format_double(d.violation) << ','
       << format_double(d.fcon_norm) << ',' << d.opt_iters << '\n';
  }
}

void write_report_csv(const std::filesystem::path& path, const Rollout& r) {
  auto os = open_out(path);
  write_report_csv(os, r);
  finish(os, path);
}

nlohmann::json model_to_json(const DmpModel& m) {
  nlohmann::json j;
  j["format"] = "nhdmp-model";
  j["version"] = 1;
  j["gains"] = {{"tau", m.gains.tau},
                {"alpha_x", m.gains.alpha_x},
                {"beta_x", m.gains.beta_x},
                {"alpha_s", m.gains.alpha_s}};
  j["duration"] = m.duration;
  j["rbf"] = m.f_p[0].size();
  j["position"] = nlohmann::json::array();
  j["orientation"] = nlohmann::json::array();
  for (int i = 0; i < 3; ++i) {
    j["position"].push_back(forcing_json(m.f_p[static_cast<std::size_t>(i)]));
    j["orientation"].push_back(forcing_json(m.f_q[static_cast<std::size_t>(i)]));
  }
  j["start"] = {{"p", vec_json(m.p0)}, {"R", mat_json(m.R0)},
                {"v", vec_json(m.v0)}, {"w", vec_json(m.w0)}};
  j["goal"] = {{"p", vec_json(m.p_g)}, {"R", mat_json(m.R_g)}};
  return j;
}

DmpModel model_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError(0, "model must be a JSON object");
  if (j.value("format", "") != "nhdmp-model")
    throw ParseError(0, "not an nhdmp model document");
  DmpModel m;
  const auto& g = field(j, "gains");
  m.gains = {number(g, "tau"), number(g, "alpha_x"), number(g, "beta_x"),
             number(g, "alpha_s")};
  m.duration = number(j, "duration");
  m.f_p = forcing_from(j, "position");
  m.f_q = forcing_from(j, "orientation");
  const auto& st = field(j, "start");
  const auto& go = field(j, "goal");
  m.p0 = vec_from(st, "p");
  m.R0 = mat_from(st, "R");
  m.v0 = vec_from(st, "v");
  m.w0 = vec_from(st, "w");
  m.p_g = vec_from(go, "p");
  m.R_g = mat_from(go, "R");
  try {
    m.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, e.what());
  }
  return m;
}

void write_model(const std::filesystem::path& path, const DmpModel& m) {
  auto os = open_out(path);
  os << model_to_json(m).dump(2) << '\n';
  finish(os, path);
}

DmpModel read_model(const std::filesystem::path& path) {
  auto is = open_in(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(is);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, e.what());
  }
  return model_from_json(j);
}

}  // namespace nhdmp::io
