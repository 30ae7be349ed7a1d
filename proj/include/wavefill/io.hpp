#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wavefill/bounds.hpp"
#include "wavefill/dynamics.hpp"
#include "wavefill/oracle.hpp"
#include "wavefill/problem.hpp"
#include "wavefill/schedule.hpp"
#include "wavefill/sigmoid.hpp"
#include "wavefill/sweep.hpp"
#include "wavefill/waterfill.hpp"

namespace wavefill::io {

using Json = nlohmann::ordered_json;

// Problem files. Edges are 1-based on disk:
// {"graph": {"n": 3, "edges": [[1, 2, 1.0], ...]}, "channels": [...],
//  "objective": {...}, "T": ..., "r": ..., "x0": [...], "drift": {...}}
// Missing "x0" means zeros, missing "drift" means none. Throws ParseError.
CampaignProblem parse_problem(const std::string& text);
CampaignProblem load_problem(const std::filesystem::path& path);
Json problem_json(const CampaignProblem& problem);

// {"channels": [{"u_max": u, "on_intervals": [[start, end], ...]}, ...]}
Json schedule_json(const BangBangSchedule& schedule);
BangBangSchedule parse_schedule(const std::string& text);
BangBangSchedule load_schedule(const std::filesystem::path& path);

Json certificate_json(const Certificate& cert);
Json solution_summary_json(const WaterfillSolution& sol, double objective);
Json bounds_json(const SwitchBoundReport& report);
Json enumeration_json(const EnumerationResult& result);
Json sigmoid_log_json(const SigmoidResult& result);

/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

/// 17 significant digits, "C" locale.
std::string fmt(double x);

void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
/// t, h_1, ..., h_m on intervals + 1 uniform points.
void write_profiles_csv(std::ostream& os, const std::vector<ChannelProfile>& profiles,
                        int intervals);
/// t, g_1, ..., g_m, beta on intervals + 1 uniform points.
void write_waterline_csv(std::ostream& os, const std::vector<ThresholdSignal>& signals,
                         double beta, int intervals);
void write_bisection_csv(std::ostream& os, const std::vector<BisectionStep>& steps);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);
void write_aggregate_csv(std::ostream& os, const std::vector<SweepAggregate>& rows);

/// Writes `content` to `path`, creating parent directories.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace wavefill::io
