#include "wavefill/cli.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "wavefill/errors.hpp"
#include "wavefill/io.hpp"

namespace wavefill::cli {

namespace {

const std::vector<std::string> kCommands{"solve", "simulate", "bounds", "oracle", "sweep",
                                         "sigmoid"};

io::Json metadata(const RunConfig& c) {
  return {{"tool", "wavefill"}, {"command", c.command},
          {"input", c.input.filename().string()}};
}

bool report_findings(const CampaignProblem& p, std::ostream& log) {
  const auto findings = validate_problem(p);
  for (const auto& f : findings) log << "invalid " << f.field << ": " << f.message << '\n';
  return findings.empty();
}

WaterfillOptions waterfill_options(const RunConfig& c) {
  WaterfillOptions o;
  o.tolerance = c.tolerance;
  return o;
}

void emit(const RunConfig& c, const std::string& name, const std::string& content,
          std::ostream& log) {
  io::write_file(c.output_dir / name, content);
  log << "wrote " << (c.output_dir / name).string() << '\n';
}

template <class Writer>
std::string to_string(Writer&& w) {
  std::ostringstream os;
  w(os);
  return os.str();
}

double simulated_objective(const CampaignProblem& p, const BangBangSchedule& s, int steps) {
  return objective_value(p.objective, simulate(p, s, steps).terminal());
}

io::Json oracle_report(const CampaignProblem& p, const WaterfillSolution& sol,
                       const RunConfig& c) {
  EnumerationSpec spec;
  spec.switch_grid = c.grid;
  if (c.max_switches) spec.max_switches = std::vector<int>(p.m(), *c.max_switches);
  spec.include_interior_levels = c.interior_levels;
  const EnumerationResult best = enumerate_best(p, spec);
  const double slack = grid_slack(p, sol.profiles, c.grid);
  return {{"waterfill_gain", sol.objective_gain},
          {"oracle_value", best.value},
          {"grid_slack", slack},
          {"gap", best.value - sol.objective_gain},
          {"within_slack", sol.objective_gain >= best.value - slack},
          {"waterfill_schedule", io::schedule_json(sol.schedule)},
          {"enumeration", io::enumeration_json(best)}};
}

int cmd_solve(const RunConfig& c, const CampaignProblem& p, std::ostream& log) {
  const WaterfillSolution sol = solve(p, waterfill_options(c));
  io::Json summary = {{"metadata", metadata(c)}};
  summary.update(io::solution_summary_json(sol, simulated_objective(p, sol.schedule, c.steps)));
  emit(c, "schedule.json", io::dump(io::schedule_json(sol.schedule)), log);
  emit(c, "summary.json", io::dump(summary), log);
  if (c.emit_plot_data) {
    emit(c, "waterline.csv", to_string([&](std::ostream& os) {
           io::write_waterline_csv(os, sol.signals, sol.beta_star, c.plot_points);
         }), log);
    emit(c, "profiles.csv", to_string([&](std::ostream& os) {
           io::write_profiles_csv(os, sol.profiles, c.plot_points);
         }), log);
    emit(c, "bisection.csv",
         to_string([&](std::ostream& os) { io::write_bisection_csv(os, sol.iterates); }), log);
  }
  if (c.oracle) {
    io::Json report = {{"metadata", metadata(c)}};
    report.update(oracle_report(p, sol, c));
    emit(c, "oracle.json", io::dump(report), log);
  }
  log << "beta_star " << io::fmt(sol.beta_star) << " spend " << io::fmt(sol.spend)
      << (sol.binding ? " (binding)" : " (not binding)") << '\n';
  if (!sol.certificate.note.empty()) log << sol.certificate.note << '\n';
  return kExitOk;
}

int cmd_simulate(const RunConfig& c, const CampaignProblem& p, std::ostream& log) {
  BangBangSchedule s;
  if (c.schedule) {
    s = io::load_schedule(*c.schedule);
    if (static_cast<int>(s.channels.size()) != p.m())
      throw ValidationError("schedule has " + std::to_string(s.channels.size()) +
                            " channels, problem has " + std::to_string(p.m()));
  } else {
    for (const auto& ch : p.channels) s.channels.push_back({ch.u_max, {}});
  }
  const Trajectory traj = simulate(p, s, c.steps);
  emit(c, "trajectory.csv",
       to_string([&](std::ostream& os) { io::write_trajectory_csv(os, traj); }), log);
  return kExitOk;
}

int cmd_bounds(const RunConfig& c, const CampaignProblem& p, std::ostream& log) {
  const Spectrum spectrum = analyze(p.graph);
  io::Json report = {{"metadata", metadata(c)}};
  report.update(io::bounds_json(switch_bounds(p, spectrum.decomposition)));
  emit(c, "bounds.json", io::dump(report), log);
  return kExitOk;
}

int cmd_oracle(const RunConfig& c, const CampaignProblem& p, std::ostream& log) {
  const WaterfillSolution sol = solve(p, waterfill_options(c));
  io::Json report = {{"metadata", metadata(c)}};
  report.update(oracle_report(p, sol, c));
  emit(c, "oracle.json", io::dump(report), log);
  log << "waterfill " << io::fmt(sol.objective_gain) << " oracle "
      << io::fmt(report["oracle_value"].get<double>()) << '\n';
  return kExitOk;
}

int cmd_sweep(const RunConfig& c, std::ostream& log) {
  SweepOptions o;
  o.sizes = parse_sizes(c.sizes);
  o.instances = c.instances;
  o.seed = c.seed;
  o.radius_scale = c.radius_scale;
  const auto rows = run_sweep(o);
  emit(c, "sweep.csv", to_string([&](std::ostream& os) { io::write_sweep_csv(os, rows); }), log);
  emit(c, "sweep_aggregate.csv",
       to_string([&](std::ostream& os) { io::write_aggregate_csv(os, aggregate(rows)); }), log);
  return kExitOk;
}

int cmd_sigmoid(const RunConfig& c, const CampaignProblem& p, std::ostream& log) {
  SigmoidOptions o;
  if (c.epsilon) o.epsilon = *c.epsilon;
  o.max_iters = c.max_iters;
  o.steps = c.steps;
  o.waterfill = waterfill_options(c);
  const SigmoidResult r = solve_sigmoid(p, o);
  io::Json log_json = {{"metadata", metadata(c)}};
  log_json.update(io::sigmoid_log_json(r));
  emit(c, "sigmoid_log.json", io::dump(log_json), log);
  emit(c, "schedule.json", io::dump(io::schedule_json(r.solution.schedule)), log);
  if (!r.note.empty()) log << r.note << '\n';
  return kExitOk;
}

}  // namespace

std::vector<int> parse_sizes(const std::string& spec) {
  auto bad = [&] { return ValidationError("malformed size list \"" + spec + "\""); };
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used != s.size()) throw bad();
    return v;
  };
  std::vector<int> out;
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw bad();
    const int a = to_int(parts[0]), b = to_int(parts[1]), step = to_int(parts[2]);
    if (step <= 0 || b < a) throw bad();
    for (int v = a; v <= b; v += step) out.push_back(v);
  } else {
    std::stringstream ss(spec);
    for (std::string part; std::getline(ss, part, ',');) out.push_back(to_int(part));
  }
  if (out.empty()) throw bad();
  return out;
}

std::vector<std::string> validate_config(const RunConfig& c) {
  std::vector<std::string> out;
  if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end())
    out.push_back("unknown command \"" + c.command + "\"");
  if (c.command != "sweep") {
    if (c.input.empty())
      out.push_back("an input problem file is required");
    else if (!std::filesystem::exists(c.input))
      out.push_back("input file " + c.input.string() + " does not exist");
  }
  if (c.schedule && !std::filesystem::exists(*c.schedule))
    out.push_back("schedule file " + c.schedule->string() + " does not exist");
  if (c.steps < 64) out.push_back("steps must be at least 64");
  if (!(c.tolerance > 0.0 && c.tolerance < 1e-2)) out.push_back("tolerance must be in (0, 1e-2)");
  if (c.plot_points < 2) out.push_back("plot points must be at least 2");
  if (c.grid < 2 || c.grid > 16) out.push_back("grid must be in [2, 16]");
  if (c.max_switches && *c.max_switches < 0) out.push_back("max switches must be >= 0");
  if (c.epsilon && !(*c.epsilon > 0.0)) out.push_back("epsilon must be positive");
  if (c.max_iters < 1) out.push_back("max iterations must be at least 1");
  if (c.instances < 1) out.push_back("instances must be at least 1");
  if (!(c.radius_scale > 0.0)) out.push_back("radius scale must be positive");
  if (c.command == "sweep") {
    try {
      for (int n : parse_sizes(c.sizes))
        if (n < 2) out.push_back("sweep sizes must be at least 2");
    } catch (const ValidationError& e) {
      out.push_back(e.what());
    }
  }
  return out;
}

int run(const RunConfig& c, std::ostream& log) {
  const auto problems = validate_config(c);
  if (!problems.empty()) {
    for (const auto& m : problems) log << "error: " << m << '\n';
    return kExitValidation;
  }
  try {
    if (c.command == "sweep") return cmd_sweep(c, log);
    const CampaignProblem p = io::load_problem(c.input);
    if (!report_findings(p, log)) return kExitValidation;
    if (c.command == "solve") return cmd_solve(c, p, log);
    if (c.command == "simulate") return cmd_simulate(c, p, log);
    if (c.command == "bounds") return cmd_bounds(c, p, log);
    if (c.command == "oracle") return cmd_oracle(c, p, log);
    return cmd_sigmoid(c, p, log);
  } catch (const ParseError& e) {
    log << "parse error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ValidationError& e) {
    log << "invalid input: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ContractError& e) {
    log << "invalid request: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericalError& e) {
    log << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace wavefill::cli
