#include "regret/session.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <utility>

#include "regret/error.hpp"
#include "regret/serialize.hpp"

namespace regret {

namespace {

constexpr std::array<std::pair<EventType, std::string_view>, 6> kEventNames = {{
    {EventType::session_created, "session-created"},
    {EventType::problem_presented, "problem-presented"},
    {EventType::response_recorded, "response-recorded"},
    {EventType::p_star_estimated, "p-star-estimated"},
    {EventType::model_fitted, "model-fitted"},
    {EventType::metrics_computed, "metrics-computed"},
}};

nlohmann::json created_payload(const std::string& id, const SessionConfig& config) {
  return {{"session_id", id}, {"config", config}};
}

nlohmann::json response_payload(int seq, const FuzzyResponse& response, ResponseClass cls) {
  nlohmann::json j = response;
  j["seq"] = seq;
  j["class"] = to_string(cls);
  return j;
}

}  // namespace

std::string_view to_string(EventType type) noexcept {
  for (const auto& [t, name] : kEventNames) {
    if (t == type) return name;
  }
  return "unknown";
}

std::optional<EventType> parse_event_type(std::string_view text) noexcept {
  for (const auto& [t, name] : kEventNames) {
    if (name == text) return t;
  }
  return std::nullopt;
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  const std::time_t seconds = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&seconds, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[40];
  std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(ms));
  return out;
}

void validate(const SessionConfig& config) {
  if (!(config.money_scale > 0.0) || !std::isfinite(config.money_scale)) {
    fail(ErrorKind::config, "money_scale must be a positive number of dollars");
  }
  if (config.synthetic) validate(*config.synthetic);
}

Session::Session(ReplayTag, std::string id, SessionConfig config, Clock clock)
    : id_(std::move(id)),
      config_(std::move(config)),
      clock_(std::move(clock)) {
  validate(config_);
  schedule_ = plan_session({config_.money_scale, config_.seed, config_.practice});
  begin_module();
}

Session::Session(std::string id, SessionConfig config, Clock clock)
    : Session(ReplayTag{}, std::move(id), std::move(config), std::move(clock)) {
  append(EventType::session_created, created_payload(id_, config_));
}

void Session::append(EventType type, nlohmann::json payload) {
  events_.push_back({clock_(), type, std::move(payload)});
}

void Session::begin_module() {
  index_in_module_ = 0;
  if (complete()) return;
  const ModulePlan& plan = schedule_.modules[module_index_];
  if (plan.kind != ModuleKind::validation) staircase_ = start_staircase(schedule_.per_module_budget);
}

void Session::advance_module() {
  ++module_index_;
  begin_module();
  if (complete()) finalize();
}

void Session::finalize() {
  try {
    fit_ = fit_model(training_, p_stars_);
  } catch (const Error& err) {
    fit_error_ = err.what();
    append(EventType::model_fitted, {{"error", err.what()}});
    return;
  }
  append(EventType::model_fitted, *fit_);
  metrics_ = summarize_validation(*fit_, validation_[0], validation_[1]);
  append(EventType::metrics_computed, *metrics_);
}

Progress Session::progress() const noexcept { return {answered_, schedule_.total_problem_count()}; }

const ValidationPass& Session::validation_pass(int pass) const {
  if (pass != 1 && pass != 2) fail(ErrorKind::input, "validation pass must be 1 or 2");
  return validation_[static_cast<std::size_t>(pass - 1)];
}

std::optional<PresentedProblem> Session::present_next() {
  if (outstanding_) fail(ErrorKind::conflict, "a presented problem is still awaiting its response");
  if (complete()) return std::nullopt;

  const ModulePlan& plan = schedule_.modules[module_index_];
  PresentedProblem presented;
  presented.seq = ++seq_;
  presented.module = static_cast<int>(module_index_);
  presented.index_in_module = index_in_module_;
  presented.plan = plan;
  if (plan.kind == ModuleKind::validation) {
    presented.problem = schedule_.validation_set[static_cast<std::size_t>(index_in_module_)];
  } else {
    presented.problem = training_problem(kTable2[static_cast<std::size_t>(plan.row)], next_probe(staircase_),
                                         schedule_.config.money_scale);
  }
  outstanding_ = presented;
  append(EventType::problem_presented, presented);
  return presented;
}

SubmitResult Session::submit(const FuzzyResponse& response) {
  if (!outstanding_) fail(ErrorKind::conflict, "no problem is awaiting a response");
  const ResponseClass cls = classify_response(response);  // validates

  const PresentedProblem presented = *outstanding_;
  outstanding_.reset();
  ++answered_;
  append(EventType::response_recorded, response_payload(presented.seq, response, cls));

  SubmitResult result;
  result.seq = presented.seq;
  result.response_class = cls;

  const ModulePlan& plan = presented.plan;
  if (plan.kind == ModuleKind::validation) {
    ValidationPass& pass = validation_[static_cast<std::size_t>(plan.validation_pass - 1)];
    pass.problems.push_back(presented.problem);
    pass.responses.push_back(response);
    if (++index_in_module_ == kValidationProblems) advance_module();
  } else {
    staircase_ = apply_response(staircase_, presented.problem.p_r, cls);
    ++index_in_module_;
    if (plan.kind == ModuleKind::training) {
      training_.push_back({plan.row, presented.problem, response, cls});
    }
    if (staircase_.phase == Phase::done) {
      if (plan.kind == ModuleKind::training) {
        const PStarRecord record = estimate_p_star(staircase_, plan.row);
        p_stars_.push_back(record);
        result.p_star = record;
        append(EventType::p_star_estimated, record);
      }
      advance_module();
    }
  }
  result.progress = progress();
  result.session_complete = complete();
  return result;
}

SessionReport Session::report() const {
  if (!complete()) fail(ErrorKind::conflict, "session is not complete");
  if (!fit_ || !metrics_) fail(ErrorKind::model, "model fit failed: " + fit_error_.value_or("unknown"));
  return {id_, *fit_, *metrics_, export_membership_cloud(training_, *fit_)};
}

Session Session::replay(std::span<const Event> events, Clock clock) {
  if (events.empty() || events.front().type != EventType::session_created) {
    fail(ErrorKind::data, "event log must start with session-created");
  }
  const nlohmann::json& head = events.front().payload;
  if (!head.contains("session_id") || !head["session_id"].is_string() || !head.contains("config")) {
    fail(ErrorKind::data, "session-created payload lacks session_id or config");
  }
  SessionConfig config;
  try {
    config = parse_config(head["config"]);
  } catch (const Error& err) {
    fail(ErrorKind::data, std::string("bad session config in log: ") + err.what());
  }
  Session session(ReplayTag{}, head["session_id"].get<std::string>(), config, std::move(clock));
  if (created_payload(session.id_, session.config_) != head) {
    fail(ErrorKind::data, "session-created payload does not round-trip");
  }
  session.events_.push_back(events.front());

  std::size_t cursor = 1;  // next generated event to match
  for (std::size_t i = 1; i < events.size(); ++i) {
    const Event& logged = events[i];
    if (cursor == session.events_.size()) {
      // The log must now carry a command.
      try {
        if (logged.type == EventType::problem_presented) {
          session.present_next();
        } else if (logged.type == EventType::response_recorded) {
          session.submit(parse_response(logged.payload));
        } else {
          fail(ErrorKind::data, "unexpected " + std::string(to_string(logged.type)) + " event");
        }
      } catch (const Error& err) {
        if (err.kind() == ErrorKind::data) throw;
        fail(ErrorKind::data, "event " + std::to_string(i) + " rejected: " + err.what());
      }
    }
    Event& generated = session.events_[cursor];
    if (generated.type != logged.type || generated.payload != logged.payload) {
      fail(ErrorKind::data, "event " + std::to_string(i) + " (" + std::string(to_string(logged.type)) +
                                ") does not match the replayed session");
    }
    generated.ts = logged.ts;
    ++cursor;
  }
  session.persisted_ = events.size();
  return session;
}

void run_synthetic(Session& session, SyntheticSubject& subject) {
  while (auto presented = session.present_next()) session.submit(subject.respond(presented->problem));
}

}  // namespace regret
