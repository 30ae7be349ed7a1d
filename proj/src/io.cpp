#include "wavefill/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "wavefill/errors.hpp"

namespace wavefill::io {

namespace {

int line_of(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k)
    if (text[k] == '\n') ++line;
  return line;
}

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    const int line = line_of(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("malformed JSON at line " + std::to_string(line) + ": " + e.what(), line, "");
  }
}

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw ParseError("field " + field + ": " + what, 0, field);
}

const Json& member(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) field_error(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) field_error(path + "/" + key, "missing");
  return *it;
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) field_error(path, "expected a number");
  return j.get<double>();
}

int integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) field_error(path, "expected an integer");
  return j.get<int>();
}

Eigen::VectorXd vector(const Json& j, const std::string& path) {
  if (!j.is_array()) field_error(path, "expected an array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k)
    v[static_cast<Eigen::Index>(k)] = number(j[k], path + "/" + std::to_string(k));
  return v;
}

Json to_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v[k]);
  return out;
}

WeightedGraph parse_graph(const Json& j) {
  WeightedGraph g;
  g.n = integer(member(j, "n", "/graph"), "/graph/n");
  const Json& edges = member(j, "edges", "/graph");
  if (!edges.is_array()) field_error("/graph/edges", "expected an array");
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const std::string path = "/graph/edges/" + std::to_string(k);
    const Json& e = edges[k];
    if (!e.is_array() || e.size() != 3) field_error(path, "expected [i, j, weight]");
    g.edges.push_back({integer(e[0], path + "/0") - 1, integer(e[1], path + "/1") - 1,
                       number(e[2], path + "/2")});
  }
  return g;
}

CostModel parse_cost(const Json& j, const std::string& path) {
  CostModel c;
  const Json& kind = member(j, "kind", path);
  if (kind == "linear")
    c.kind = CostKind::kLinear;
  else if (kind == "power")
    c.kind = CostKind::kPower;
  else
    field_error(path + "/kind", "expected \"linear\" or \"power\"");
  c.v = number(member(j, "v", path), path + "/v");
  if (j.contains("a")) c.a = number(j["a"], path + "/a");
  else if (c.kind == CostKind::kPower) field_error(path + "/a", "missing");
  return c;
}

Objective parse_objective(const Json& j) {
  Objective o;
  const Json& kind = member(j, "kind", "/objective");
  if (kind == "linear")
    o.kind = ObjectiveKind::kLinear;
  else if (kind == "sigmoid")
    o.kind = ObjectiveKind::kSigmoid;
  else
    field_error("/objective/kind", "expected \"linear\" or \"sigmoid\"");
  o.p = vector(member(j, "p", "/objective"), "/objective/p");
  if (o.kind == ObjectiveKind::kSigmoid) {
    o.alpha = vector(member(j, "alpha", "/objective"), "/objective/alpha");
    o.theta = vector(member(j, "theta", "/objective"), "/objective/theta");
  }
  return o;
}

Json interval_list(const std::vector<Interval>& on) {
  Json out = Json::array();
  for (const auto& iv : on) out.push_back(Json::array({iv.start, iv.end}));
  return out;
}

}  // namespace

CampaignProblem parse_problem(const std::string& text) {
  const Json root = parse_text(text);
  if (!root.is_object()) field_error("", "expected an object at the top level");
  CampaignProblem p;
  p.graph = parse_graph(member(root, "graph", ""));
  const Json& channels = member(root, "channels", "");
  if (!channels.is_array()) field_error("/channels", "expected an array");
  for (std::size_t k = 0; k < channels.size(); ++k) {
    const std::string path = "/channels/" + std::to_string(k);
    Channel ch;
    ch.b = vector(member(channels[k], "b", path), path + "/b");
    ch.cost = parse_cost(member(channels[k], "cost", path), path + "/cost");
    ch.u_max = number(member(channels[k], "u_max", path), path + "/u_max");
    p.channels.push_back(std::move(ch));
  }
  p.objective = parse_objective(member(root, "objective", ""));
  p.horizon = number(member(root, "T", ""), "/T");
  p.budget = number(member(root, "r", ""), "/r");
  p.x0 = root.contains("x0") ? vector(root["x0"], "/x0")
                             : Eigen::VectorXd::Zero(std::max(p.graph.n, 0));
  if (root.contains("drift")) {
    const Json& d = root["drift"];
    const Json& bps = member(d, "breakpoints", "/drift");
    const Json& vals = member(d, "values", "/drift");
    if (!bps.is_array()) field_error("/drift/breakpoints", "expected an array");
    if (!vals.is_array()) field_error("/drift/values", "expected an array");
    for (std::size_t k = 0; k < bps.size(); ++k)
      p.drift.breakpoints.push_back(number(bps[k], "/drift/breakpoints/" + std::to_string(k)));
    for (std::size_t k = 0; k < vals.size(); ++k)
      p.drift.values.push_back(vector(vals[k], "/drift/values/" + std::to_string(k)));
  }
  return p;
}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

CampaignProblem load_problem(const std::filesystem::path& path) {
  return parse_problem(read_file(path));
}

Json problem_json(const CampaignProblem& p) {
  Json edges = Json::array();
  for (const auto& e : p.graph.edges) edges.push_back(Json::array({e.i + 1, e.j + 1, e.weight}));
  Json channels = Json::array();
  for (const auto& ch : p.channels) {
    Json cost = {{"kind", ch.cost.kind == CostKind::kLinear ? "linear" : "power"},
                 {"v", ch.cost.v}};
    if (ch.cost.kind == CostKind::kPower) cost["a"] = ch.cost.a;
    channels.push_back({{"b", to_json(ch.b)}, {"cost", cost}, {"u_max", ch.u_max}});
  }
  Json objective = {{"kind", p.objective.kind == ObjectiveKind::kLinear ? "linear" : "sigmoid"},
                    {"p", to_json(p.objective.p)}};
  if (p.objective.kind == ObjectiveKind::kSigmoid) {
    objective["alpha"] = to_json(p.objective.alpha);
    objective["theta"] = to_json(p.objective.theta);
  }
  Json out = {{"graph", {{"n", p.graph.n}, {"edges", edges}}},
              {"channels", channels},
              {"objective", objective},
              {"T", p.horizon},
              {"r", p.budget},
              {"x0", to_json(p.x0)}};
  if (!p.drift.empty()) {
    Json values = Json::array();
    for (const auto& v : p.drift.values) values.push_back(to_json(v));
    out["drift"] = {{"breakpoints", p.drift.breakpoints}, {"values", values}};
  }
  return out;
}

Json schedule_json(const BangBangSchedule& s) {
  Json channels = Json::array();
  for (const auto& ch : s.channels)
    channels.push_back({{"u_max", ch.level}, {"on_intervals", interval_list(ch.on)}});
  return {{"channels", channels}};
}

BangBangSchedule parse_schedule(const std::string& text) {
  const Json root = parse_text(text);
  const Json& channels = member(root, "channels", "");
  if (!channels.is_array()) field_error("/channels", "expected an array");
  BangBangSchedule s;
  for (std::size_t k = 0; k < channels.size(); ++k) {
    const std::string path = "/channels/" + std::to_string(k);
    ChannelSchedule ch;
    ch.level = number(member(channels[k], "u_max", path), path + "/u_max");
    const Json& on = member(channels[k], "on_intervals", path);
    if (!on.is_array()) field_error(path + "/on_intervals", "expected an array");
    for (std::size_t q = 0; q < on.size(); ++q) {
      const std::string ip = path + "/on_intervals/" + std::to_string(q);
      if (!on[q].is_array() || on[q].size() != 2) field_error(ip, "expected [start, end]");
      ch.on.push_back({number(on[q][0], ip + "/0"), number(on[q][1], ip + "/1")});
    }
    s.channels.push_back(std::move(ch));
  }
  return s;
}

BangBangSchedule load_schedule(const std::filesystem::path& path) {
  return parse_schedule(read_file(path));
}

Json certificate_json(const Certificate& cert) {
  Json channels = Json::array();
  for (const auto& c : cert.channels)
    channels.push_back({{"realized_switches", c.realized_switches},
                        {"crossing_bound", c.crossing_bound},
                        {"bound_general", c.bound_general},
                        {"bound_linear_at", c.bound_linear_at},
                        {"bound_linear_sup", c.bound_linear_sup},
                        {"theorem_applicable", c.theorem_applicable},
                        {"conforms", c.conforms}});
  Json out = {{"certified", cert.certified}, {"resolution", cert.resolution},
              {"channels", channels}};
  if (!cert.note.empty()) out["note"] = cert.note;
  return out;
}

Json solution_summary_json(const WaterfillSolution& sol, double objective) {
  return {{"beta_star", sol.beta_star},
          {"spend", sol.spend},
          {"binding", sol.binding},
          {"objective_gain", sol.objective_gain},
          {"objective", objective},
          {"bisection_iterations", sol.iterates.size()},
          {"certificate", certificate_json(sol.certificate)}};
}

Json bounds_json(const SwitchBoundReport& report) {
  Json channels = Json::array();
  for (const auto& c : report.channels) {
    Json j = {{"bound_general", c.bound_general},
              {"bound_linear_unshifted", c.bound_linear_unshifted},
              {"bound_linear_sup", c.bound_linear_sup}};
    if (c.bound_linear_at) j["bound_linear_at"] = *c.bound_linear_at;
    channels.push_back(j);
  }
  return {{"channels", channels}};
}

Json enumeration_json(const EnumerationResult& r) {
  return {{"value", r.value},
          {"best_is_interior", r.best_is_interior},
          {"best_extreme_value", r.best_extreme_value},
          {"candidates", r.candidates},
          {"feasible", r.feasible},
          {"switch_caps", r.caps},
          {"best", schedule_json(r.best)},
          {"best_extreme", schedule_json(r.best_extreme)}};
}

Json sigmoid_log_json(const SigmoidResult& r) {
  Json iterations = Json::array();
  for (const auto& it : r.log) {
    std::vector<int> support, late;
    for (int j : it.costate_support) support.push_back(j + 1);
    for (int j : it.late_deciders) late.push_back(j + 1);
    iterations.push_back({{"iteration", it.iteration},
                          {"costate_support", support},
                          {"late_deciders", late},
                          {"beta_star", it.beta_star},
                          {"spend", it.spend},
                          {"objective", it.objective}});
  }
  Json out = {{"epsilon", r.epsilon},
              {"best_iteration", r.best_iteration},
              {"repeated", r.repeated},
              {"no_late_deciders", r.no_late_deciders},
              {"iterations", iterations}};
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  const Eigen::Index n = traj.states.empty() ? 0 : traj.states.front().size();
  os << "t";
  for (Eigen::Index j = 0; j < n; ++j) os << ",x_" << j + 1;
  os << ",spend\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    os << fmt(traj.times[k]);
    for (Eigen::Index j = 0; j < n; ++j) os << ',' << fmt(traj.states[k][j]);
    os << ',' << fmt(traj.spend[k]) << '\n';
  }
}

void write_profiles_csv(std::ostream& os, const std::vector<ChannelProfile>& profiles,
                        int intervals) {
  os << "t";
  for (std::size_t i = 0; i < profiles.size(); ++i) os << ",h_" << i + 1;
  os << '\n';
  if (profiles.empty()) return;
  const double T = profiles.front().horizon;
  for (int k = 0; k <= intervals; ++k) {
    const double t = T * k / intervals;
    os << fmt(t);
    for (const auto& p : profiles) os << ',' << fmt(eval_h(p, t));
    os << '\n';
  }
}

void write_waterline_csv(std::ostream& os, const std::vector<ThresholdSignal>& signals,
                         double beta, int intervals) {
  os << "t";
  for (std::size_t i = 0; i < signals.size(); ++i) os << ",g_" << i + 1;
  os << ",beta\n";
  if (signals.empty()) return;
  const double T = signals.front().horizon();
  for (int k = 0; k <= intervals; ++k) {
    const double t = T * k / intervals;
    os << fmt(t);
    for (const auto& g : signals) os << ',' << fmt(g(t));
    os << ',' << fmt(beta) << '\n';
  }
}

void write_bisection_csv(std::ostream& os, const std::vector<BisectionStep>& steps) {
  os << "beta,spend\n";
  for (const auto& s : steps) os << fmt(s.beta) << ',' << fmt(s.spend) << '\n';
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "n,instance,seed,graph_seed,radius,edges,bound_general,bound_linear_unshifted,"
        "bound_linear_sup,algebraic_connectivity\n";
  for (const auto& r : rows)
    os << r.n << ',' << r.instance << ',' << r.seed << ',' << r.graph_seed << ','
       << fmt(r.radius) << ',' << r.edges << ',' << r.bound_general << ','
       << r.bound_linear_unshifted << ',' << r.bound_linear_sup << ','
       << fmt(r.algebraic_connectivity) << '\n';
}

void write_aggregate_csv(std::ostream& os, const std::vector<SweepAggregate>& rows) {
  os << "n,count,mean_general,std_general,mean_linear_unshifted,std_linear_unshifted,"
        "mean_linear_sup,std_linear_sup\n";
  for (const auto& a : rows)
    os << a.n << ',' << a.count << ',' << fmt(a.mean_general) << ',' << fmt(a.std_general)
       << ',' << fmt(a.mean_unshifted) << ',' << fmt(a.std_unshifted) << ','
       << fmt(a.mean_sup) << ',' << fmt(a.std_sup) << '\n';
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << content;
}

}  // namespace wavefill::io
