#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "nhdmp/errors.hpp"
#include "nhdmp/io.hpp"
#include "nhdmp/pipeline.hpp"

using namespace nhdmp;

namespace {

std::string header() { return std::string(io::kTrajectoryHeader) + "\n"; }

std::size_t parse_error_line(const std::string& text) {
  std::istringstream is(text);
  try {
    io::read_trajectory_csv(is);
  } catch (const ParseError& e) {
    return e.line();
  }
  return static_cast<std::size_t>(-1);
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("trajectory csv round trip is exact") {
  const PoseTrajectory d = gen_numerical_demo(0.01);
  std::stringstream ss;
  io::write_trajectory_csv(ss, d);
  const PoseTrajectory back = io::read_trajectory_csv(ss);
  REQUIRE(back.size() == d.size());
  CHECK(back.sample_rate == doctest::Approx(100.0).epsilon(1e-9));
  for (std::size_t k = 0; k < d.size(); ++k) {
    CHECK(back.samples[k].t == d.samples[k].t);
    CHECK(back.samples[k].p == d.samples[k].p);
    CHECK(back.samples[k].R == d.samples[k].R);
  }
}

TEST_CASE("doubles are written with 17 significant digits") {
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(io::format_double(1.0) == "1");
}

TEST_CASE("malformed rows name their line") {
  const std::string row = "0,0,0,0,1,0,0,0,1,0,0,0,1\n";
  const std::string row2 = "0.5,0,0,0,1,0,0,0,1,0,0,0,1\n";
  CHECK(parse_error_line("t,x\n" + row) == 1);
  CHECK(parse_error_line(header() + row + "0.5,0,0,abc,1,0,0,0,1,0,0,0,1\n") == 3);
  CHECK(parse_error_line(header() + row + "0.5,0,0,0,1,0,0\n") == 3);
  CHECK(parse_error_line(header() + row + "0.5,0,0,0,2,0,0,0,1,0,0,0,1\n") == 3);
  CHECK(parse_error_line(header() + row + row2 + "0.7,0,0,0,1,0,0,0,1,0,0,0,1\n") == 4);
  std::istringstream ok(header() + row + row2);
  CHECK(io::read_trajectory_csv(ok).size() == 2);
}

TEST_CASE("missing files raise io errors") {
  CHECK_THROWS_AS(io::read_trajectory_csv(std::filesystem::path("/nonexistent/x.csv")), IoError);
  CHECK_THROWS_AS(io::read_model("/nonexistent/m.json"), IoError);
  CHECK_THROWS_AS(io::write_model("/nonexistent/dir/m.json", train(gen_numerical_demo(0.01), 5)), IoError);
}

TEST_CASE("model json round trip is exact") {
  const DmpModel m = train(gen_numerical_demo(0.01), 12);
  const DmpModel back = io::model_from_json(nlohmann::json::parse(io::model_to_json(m).dump()));
  CHECK(back.gains.alpha_x == m.gains.alpha_x);
  CHECK(back.duration == m.duration);
  CHECK(back.p0 == m.p0);
  CHECK(back.v0 == m.v0);
  CHECK(back.p_g == m.p_g);
  CHECK(back.R0 == m.R0);
  CHECK(back.w0 == m.w0);
  CHECK(back.R_g == m.R_g);
  for (int i = 0; i < 3; ++i) {
    CHECK(back.f_p[i].weights() == m.f_p[i].weights());
    CHECK(back.f_q[i].centers() == m.f_q[i].centers());
    CHECK(back.f_q[i].widths() == m.f_q[i].widths());
  }
}

TEST_CASE("bad model documents") {
  CHECK_THROWS_AS(io::model_from_json(nlohmann::json::array()), ParseError);
  nlohmann::json j = io::model_to_json(train(gen_numerical_demo(0.01), 5));
  j.erase("goal");
  CHECK_THROWS_AS(io::model_from_json(j), ParseError);
  j = io::model_to_json(train(gen_numerical_demo(0.01), 5));
  j["format"] = "other";
  CHECK_THROWS_AS(io::model_from_json(j), ParseError);
}

}  // TEST_SUITE
