// nhdmp command-line tool: gen-demo, train, rollout.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "nhdmp/dmp.hpp"
#include "nhdmp/errors.hpp"
#include "nhdmp/io.hpp"
#include "nhdmp/pipeline.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kIo = 2, kParse = 3, kTraining = 4, kRollout = 5 };

struct GenDemoArgs {
  std::string out;
  double dt = 0.001;
  double duration = 1.0;
};

struct TrainArgs {
  std::string in, out;
  std::size_t rbf = 100;
  nhdmp::DmpGains gains;
  double cutoff_hz = 4.8;
  bool sensor = false;
  std::vector<double> offset;
};

struct RolloutArgs {
  std::string model, out, report;
  std::string mode = "nominal";
  double dt = 0.001;
  double duration = 1.0;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string vec_str(const nhdmp::Vec3& v) {
  return "[" + fmt(v(0)) + ", " + fmt(v(1)) + ", " + fmt(v(2)) + "]";
}

int cmd_gen_demo(const GenDemoArgs& a) {
  const auto traj = nhdmp::gen_numerical_demo(a.dt, a.duration);
  nhdmp::io::write_trajectory_csv(a.out, traj);
  std::cout << "wrote " << traj.size() << " samples to " << a.out << "\n";
  return kOk;
}

int cmd_train(const TrainArgs& a) {
  const auto demo = nhdmp::io::read_trajectory_csv(std::filesystem::path(a.in));
  nhdmp::PreprocessOptions opt;
  opt.cutoff_hz = a.cutoff_hz;
  if (a.sensor) opt.transform = nhdmp::sensor_to_blade();
  if (!a.offset.empty()) opt.transform.t = nhdmp::Vec3(a.offset[0], a.offset[1], a.offset[2]);

  const auto pp = nhdmp::preprocess(demo, opt);
  nhdmp::TrainingReport rep;
  const auto model = nhdmp::train(pp.trajectory, a.rbf, a.gains, &pp.initial_velocity, &rep);
  nhdmp::io::write_model(a.out, model);

  std::cout << "samples " << demo.size() << ", bases " << a.rbf << " per axis\n"
            << "initial lateral speed removed " << fmt(pp.initial_violation) << " m/s\n"
            << "forcing fit rmse position " << vec_str(rep.position_rmse)
            << " orientation " << vec_str(rep.orientation_rmse) << "\n";
  return kOk;
}

int cmd_rollout(const RolloutArgs& a) {
  const auto model = nhdmp::io::read_model(a.model);
  const auto mode = nhdmp::parse_mode(a.mode);
  const nhdmp::Rollout r = nhdmp::rollout(model, mode, {}, a.dt, a.duration);
  nhdmp::io::write_trajectory_csv(a.out, r.trajectory);
  if (!a.report.empty()) nhdmp::io::write_report_csv(a.report, r);

  const auto& last = r.trajectory.samples.back();
  const double goal_err = (last.p - model.p_g).norm();
  const double goal_rot = nhdmp::so3::angle(model.R_g * last.R.transpose());
  std::cout << "mode " << nhdmp::to_string(mode) << ", " << r.trajectory.size() << " samples\n"
            << "max |violation| " << fmt(r.max_abs_violation()) << " m/s\n"
            << "max |f_con| " << fmt(r.max_fcon_norm()) << " m/s^2\n"
            << "final goal error " << fmt(goal_err) << " m, " << fmt(goal_rot) << " rad\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pose DMPs with a no-lateral-motion blade constraint"};
  app.require_subcommand(1);

  GenDemoArgs g;
  auto* gen = app.add_subcommand("gen-demo", "Write the closed-form cutting demonstration");
  gen->add_option("out", g.out, "Output trajectory CSV")->required();
  gen->add_option("--dt", g.dt, "Sample period [s]")->check(CLI::PositiveNumber);
  gen->add_option("--duration", g.duration, "Length [s]")->check(CLI::PositiveNumber);

  TrainArgs t;
  auto* tr = app.add_subcommand("train", "Fit a model to a demonstration");
  tr->add_option("in", t.in, "Demonstration CSV")->required();
  tr->add_option("model", t.out, "Output model JSON")->required();
  tr->add_option("--rbf", t.rbf, "Basis functions per axis");
  tr->add_option("--tau", t.gains.tau)->check(CLI::PositiveNumber);
  tr->add_option("--alpha-x", t.gains.alpha_x)->check(CLI::PositiveNumber);
  tr->add_option("--beta-x", t.gains.beta_x)->check(CLI::PositiveNumber);
  tr->add_option("--alpha-s", t.gains.alpha_s)->check(CLI::PositiveNumber);
  tr->add_option("--cutoff-hz", t.cutoff_hz, "Low-pass cutoff, 0 disables");
  auto* sensor = tr->add_flag("--sensor", t.sensor,
                              "Input is the tracker pose; apply the blade offset");
  tr->add_option("--offset", t.offset, "Sensor to blade offset x y z [m]")
      ->expected(3)
      ->excludes(sensor);

  RolloutArgs r;
  auto* ro = app.add_subcommand("rollout", "Integrate a trained model");
  ro->add_option("model", r.model, "Model JSON")->required();
  ro->add_option("out", r.out, "Output trajectory CSV")->required();
  ro->add_option("--mode", r.mode)
      ->check(CLI::IsMember({"nominal", "constrained", "optimized"}));
  ro->add_option("--dt", r.dt, "Step [s]")->check(CLI::PositiveNumber);
  ro->add_option("--duration", r.duration, "Length [s]")->check(CLI::PositiveNumber);
  ro->add_option("--report", r.report, "Per-step constraint report CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) return cmd_gen_demo(g);
    if (*tr) return cmd_train(t);
    return cmd_rollout(r);
  } catch (const nhdmp::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const nhdmp::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const nhdmp::RolloutFailure& e) {
    std::cerr << "error: rollout failed at step " << e.step() << ": " << e.what() << "\n";
    return kRollout;
  } catch (const nhdmp::DegenerateBasis& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kTraining;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return *ro ? kRollout : kTraining;
  }
}
