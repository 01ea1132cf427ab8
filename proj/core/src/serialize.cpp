#include "regret/serialize.hpp"

#include <fstream>
#include <sstream>

#include "regret/error.hpp"

namespace regret {

using nlohmann::json;

namespace {

double number_at(const json& j, const char* key, ErrorKind kind) {
  if (!j.contains(key) || !j[key].is_number()) fail(kind, std::string("field '") + key + "' must be a number");
  return j[key].get<double>();
}

template <typename T>
T value_or(const json& j, const char* key, T fallback) {
  return j.contains(key) && !j[key].is_null() ? j[key].get<T>() : fallback;
}

}  // namespace

void to_json(json& j, const DecisionProblem& p) {
  j = {{"xr_norm", p.xr_norm}, {"xh_norm", p.xh_norm}, {"p_r", p.p_r}, {"money_scale", p.money_scale}};
}

void from_json(const json& j, DecisionProblem& p) {
  p.xr_norm = number_at(j, "xr_norm", ErrorKind::input);
  p.xh_norm = number_at(j, "xh_norm", ErrorKind::input);
  p.p_r = number_at(j, "p_r", ErrorKind::input);
  p.money_scale = value_or(j, "money_scale", 1.0);
}

void to_json(json& j, const WeightingSpec& w) {
  j = {{"family", to_string(w.family)}};
  if (w.family != WeightFamily::identity) j["gamma"] = w.gamma;
}

void from_json(const json& j, WeightingSpec& w) {
  const auto family = parse_weight_family(j.at("family").get<std::string>());
  if (!family) fail(ErrorKind::config, "unknown weighting family '" + j.at("family").get<std::string>() + "'");
  w.family = *family;
  w.gamma = *family == WeightFamily::identity ? 1.0 : number_at(j, "gamma", ErrorKind::config);
}

void to_json(json& j, const QCurve& q) {
  j = {{"deltas", QCurve::kDeltas}, {"values", q.values()}};
}

void to_json(json& j, const FuzzyResponse& r) {
  j = {{"mu_robot", r.mu_robot}, {"mu_equal", r.mu_equal}, {"mu_human", r.mu_human}};
  if (r.respond_ms) j["respond_ms"] = *r.respond_ms;
}

void from_json(const json& j, FuzzyResponse& r) { r = parse_response(j); }

FuzzyResponse parse_response(const json& j) {
  if (!j.is_object()) fail(ErrorKind::input, "response must be a JSON object");
  FuzzyResponse r;
  r.mu_robot = number_at(j, "mu_robot", ErrorKind::input);
  r.mu_equal = number_at(j, "mu_equal", ErrorKind::input);
  r.mu_human = number_at(j, "mu_human", ErrorKind::input);
  if (j.contains("respond_ms") && !j["respond_ms"].is_null()) {
    if (!j["respond_ms"].is_number_integer()) fail(ErrorKind::input, "respond_ms must be an integer");
    r.respond_ms = j["respond_ms"].get<std::int64_t>();
  }
  return r;
}

void to_json(json& j, const MembershipSpec& m) {
  j = {{"label", to_string(m.label)}};
  if (const auto* t = std::get_if<Triangle>(&m.shape)) {
    j["shape"] = "triangle";
    j["center"] = t->center;
    j["half_width"] = t->half_width;
  } else {
    const auto& r = std::get<Ramp>(m.shape);
    j["shape"] = "ramp";
    j["onset"] = r.onset;
    j["saturation"] = r.saturation;
  }
}

void from_json(const json& j, MembershipSpec& m) {
  const std::string label = j.at("label").get<std::string>();
  if (label == "prefer-robot") {
    m.label = Label::prefer_robot;
  } else if (label == "equally-liking") {
    m.label = Label::equally_liking;
  } else if (label == "prefer-human") {
    m.label = Label::prefer_human;
  } else {
    fail(ErrorKind::config, "unknown membership label '" + label + "'");
  }
  const std::string shape = j.at("shape").get<std::string>();
  if (shape == "triangle") {
    m.shape = Triangle{number_at(j, "center", ErrorKind::config), number_at(j, "half_width", ErrorKind::config)};
  } else if (shape == "ramp") {
    m.shape = Ramp{number_at(j, "onset", ErrorKind::config), number_at(j, "saturation", ErrorKind::config)};
  } else {
    fail(ErrorKind::config, "unknown membership shape '" + shape + "'");
  }
}

void to_json(json& j, const SubjectModel& s) {
  j = {{"w_true", s.w_true},
       {"beta", s.beta},
       {"noise_sigma", s.noise_sigma},
       {"seed", s.seed},
       {"memberships", {{"robot", s.memberships.robot}, {"equal", s.memberships.equal}, {"human", s.memberships.human}}}};
}

void from_json(const json& j, SubjectModel& s) {
  s = SubjectModel{};
  if (j.contains("w_true")) s.w_true = j["w_true"].get<WeightingSpec>();
  s.beta = value_or(j, "beta", 1.0);
  s.noise_sigma = value_or(j, "noise_sigma", 0.0);
  s.seed = value_or<std::uint64_t>(j, "seed", 0);
  if (j.contains("memberships")) {
    const json& m = j["memberships"];
    if (m.contains("robot")) s.memberships.robot = m["robot"].get<MembershipSpec>();
    if (m.contains("equal")) s.memberships.equal = m["equal"].get<MembershipSpec>();
    if (m.contains("human")) s.memberships.human = m["human"].get<MembershipSpec>();
  }
}

void to_json(json& j, const SessionConfig& c) {
  j = {{"money_scale", c.money_scale}, {"seed", c.seed}, {"practice", c.practice}};
  if (c.synthetic) j["synthetic"] = *c.synthetic;
}

void from_json(const json& j, SessionConfig& c) { c = parse_config(j); }

SessionConfig parse_config(const json& j) {
  if (!j.is_object()) fail(ErrorKind::config, "session config must be a JSON object");
  SessionConfig c;
  try {
    c.money_scale = value_or(j, "money_scale", 100.0);
    c.seed = value_or<std::uint64_t>(j, "seed", 0);
    c.practice = value_or(j, "practice", false);
    if (j.contains("synthetic") && !j["synthetic"].is_null()) c.synthetic = j["synthetic"].get<SubjectModel>();
  } catch (const json::exception& err) {
    fail(ErrorKind::config, std::string("bad session config: ") + err.what());
  }
  validate(c);
  return c;
}

void to_json(json& j, const PStarRecord& r) {
  j = {{"row", r.row_index},
       {"p_star", r.p_star},
       {"p_phase1", r.p_phase1},
       {"p_phase2", r.p_phase2},
       {"converged", r.converged}};
}

void from_json(const json& j, PStarRecord& r) {
  r.row_index = j.at("row").get<int>();
  r.p_star = j.at("p_star").get<double>();
  r.p_phase1 = j.at("p_phase1").get<double>();
  r.p_phase2 = j.at("p_phase2").get<double>();
  r.converged = j.at("converged").get<std::array<bool, 2>>();
}

void to_json(json& j, const CandidateResult& c) {
  j = {{"w", c.w}, {"feasible", c.feasible}};
  if (c.feasible) {
    j["correct"] = c.correct;
    j["accuracy"] = c.accuracy;
    j["relaxed_accuracy"] = c.relaxed_accuracy;
    j["epsilon"] = c.epsilon;
  }
}

void to_json(json& j, const FitReport& f) {
  j = {{"best_w", f.best_w},
       {"best_q", f.best_q},
       {"indifference_epsilon", f.indifference_epsilon},
       {"training_accuracy", f.training_accuracy},
       {"relaxed_training_accuracy", f.relaxed_training_accuracy},
       {"monotone_flag", f.monotone_flag},
       {"training_responses", f.training_responses},
       {"p_stars", f.p_stars},
       {"candidate_table", f.candidate_table}};
}

void to_json(json& j, const PairedT& t) { j = {{"t", t.t}, {"df", t.df}}; }

void to_json(json& j, const MetricsReport& m) {
  j = {{"revisit_accuracy", m.revisit_accuracy},
       {"averaged_prediction_accuracy", m.averaged_prediction_accuracy},
       {"consistent_prediction_accuracy", nullptr},
       {"relaxed_averaged_prediction_accuracy", m.relaxed_averaged_prediction_accuracy},
       {"validation_size", m.validation_size},
       {"consistent_count", m.consistent_count}};
  if (m.consistent_prediction_accuracy) j["consistent_prediction_accuracy"] = *m.consistent_prediction_accuracy;
  if (m.paired_t) j["paired_t"] = *m.paired_t;
}

void to_json(json& j, const CloudRow& row) {
  j = {{"e_rh", row.e_rh},
       {"mu_robot", row.mu_robot},
       {"mu_equal", row.mu_equal},
       {"mu_human", row.mu_human},
       {"dominant_label", to_string(row.dominant)}};
}

void to_json(json& j, const SessionReport& r) {
  j = {{"session_id", r.session_id}, {"fit", r.fit}, {"metrics", r.metrics}, {"membership_cloud", r.membership_cloud}};
}

void to_json(json& j, const PresentedProblem& p) {
  j = {{"seq", p.seq},
       {"module", p.module},
       {"index_in_module", p.index_in_module},
       {"kind", to_string(p.plan.kind)},
       {"practice", p.plan.kind == ModuleKind::practice},
       {"problem", p.problem}};
  if (p.plan.kind == ModuleKind::validation) {
    j["validation_pass"] = p.plan.validation_pass;
  } else {
    j["row"] = p.plan.row;
  }
}

std::string to_log_line(const Event& event) {
  return json{{"ts", event.ts}, {"type", to_string(event.type)}, {"payload", event.payload}}.dump();
}

Event parse_log_line(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& err) {
    fail(ErrorKind::data, std::string("malformed log line: ") + err.what());
  }
  if (!j.is_object() || !j.contains("ts") || !j["ts"].is_string() || !j.contains("type") || !j["type"].is_string() ||
      !j.contains("payload")) {
    fail(ErrorKind::data, "log line lacks ts, type or payload");
  }
  const auto type = parse_event_type(j["type"].get<std::string>());
  if (!type) fail(ErrorKind::data, "unknown event type '" + j["type"].get<std::string>() + "'");
  return {j["ts"].get<std::string>(), *type, j["payload"]};
}

std::vector<Event> read_event_log(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::data, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  std::vector<Event> events;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    const bool terminated = end != std::string::npos;
    const std::string line = text.substr(start, terminated ? end - start : std::string::npos);
    start = terminated ? end + 1 : text.size();
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      events.push_back(parse_log_line(line));
    } catch (const Error&) {
      if (!terminated) break;  // interrupted final write
      throw;
    }
  }
  return events;
}

void write_event_log(const std::filesystem::path& path, std::span<const Event> events) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::data, "cannot open " + tmp.string() + " for writing");
    for (const Event& event : events) out << to_log_line(event) << '\n';
    out.flush();
    if (!out) fail(ErrorKind::data, "write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(ErrorKind::data, "cannot replace " + path.string() + ": " + ec.message());
}

void append_event(const std::filesystem::path& path, const Event& event) {
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) fail(ErrorKind::data, "cannot open " + path.string() + " for append");
  out << to_log_line(event) + '\n';
  out.flush();
  if (!out) fail(ErrorKind::data, "write to " + path.string() + " failed");
}

}  // namespace regret
