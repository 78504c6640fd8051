#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "json.hpp"

#include "nhdmp/dmp.hpp"
#include "nhdmp/trajectory.hpp"

namespace nhdmp::io {

inline constexpr const char* kTrajectoryHeader =
    "t,px,py,pz,r11,r12,r13,r21,r22,r23,r31,r32,r33";
inline constexpr const char* kReportHeader = "t,violation,fcon_norm,opt_iters";

/// Shortest exact text form is not needed; values are written with 17
/// significant digits, which round-trips every double.
std::string format_double(double v);

void write_trajectory_csv(std::ostream& os, const PoseTrajectory& traj);
void write_trajectory_csv(const std::filesystem::path& path,
                          const PoseTrajectory& traj);

/// Throws ParseError naming the offending line.
PoseTrajectory read_trajectory_csv(std::istream& is);
PoseTrajectory read_trajectory_csv(const std::filesystem::path& path);

void write_report_csv(std::ostream& os, const Rollout& r);
void write_report_csv(const std::filesystem::path& path, const Rollout& r);

nlohmann::json model_to_json(const DmpModel& m);
/// Throws ParseError on missing or malformed fields.
DmpModel model_from_json(const nlohmann::json& j);

void write_model(const std::filesystem::path& path, const DmpModel& m);
DmpModel read_model(const std::filesystem::path& path);

}  // namespace nhdmp::io
