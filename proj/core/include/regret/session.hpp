#pragma once

// Event-sourced survey session.
//
// Every state change is recorded as an event {ts, type, payload}. Replaying
// the commands found in a log (problem presentations and responses) through a
// fresh Session regenerates the same events, which is how sessions are
// restored from disk and how the log is checked for consistency.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "regret/elicitation.hpp"
#include "regret/fitting.hpp"
#include "regret/subject.hpp"

namespace regret {

enum class EventType {
  session_created,
  problem_presented,
  response_recorded,
  p_star_estimated,
  model_fitted,
  metrics_computed,
};

std::string_view to_string(EventType type) noexcept;
std::optional<EventType> parse_event_type(std::string_view text) noexcept;

struct Event {
  std::string ts;
  EventType type = EventType::session_created;
  nlohmann::json payload;
};

struct SessionConfig {
  double money_scale = 100.0;
  std::uint64_t seed = 0;
  bool practice = false;
  std::optional<SubjectModel> synthetic;  // empty for human subjects
};

void validate(const SessionConfig& config);

struct PresentedProblem {
  int seq = 0;               // 1-based across the session
  int module = 0;            // index into the schedule
  int index_in_module = 0;
  ModulePlan plan;
  DecisionProblem problem;
};

struct Progress {
  int answered = 0;
  int total = 0;
};

struct SubmitResult {
  int seq = 0;
  ResponseClass response_class = ResponseClass::indifferent;
  Progress progress;
  std::optional<PStarRecord> p_star;  // set when the answer closed a training module
  bool session_complete = false;
};

struct SessionReport {
  std::string session_id;
  FitReport fit;
  MetricsReport metrics;
  std::vector<CloudRow> membership_cloud;
};

using Clock = std::function<std::string()>;

/// ISO-8601 UTC wall-clock time with milliseconds.
std::string utc_now();

class Session {
 public:
  Session(std::string id, SessionConfig config, Clock clock = utc_now);

  /// Rebuilds a session from a log. Events may stop after any complete event;
  /// derived events the log is missing are regenerated and reported by
  /// persisted_event_count() < events().size(). Throws ErrorKind::data when
  /// the log contradicts the engine.
  static Session replay(std::span<const Event> events, Clock clock = utc_now);

  const std::string& id() const noexcept { return id_; }
  const SessionConfig& config() const noexcept { return config_; }
  const SessionSchedule& schedule() const noexcept { return schedule_; }
  const std::vector<Event>& events() const noexcept { return events_; }
  std::size_t persisted_event_count() const noexcept { return persisted_; }
  void mark_persisted() noexcept { persisted_ = events_.size(); }

  bool complete() const noexcept { return module_index_ >= schedule_.modules.size(); }
  const std::optional<PresentedProblem>& outstanding() const noexcept { return outstanding_; }
  Progress progress() const noexcept;

  /// Presents the next problem, or returns nullopt once the session is over.
  /// Throws ErrorKind::conflict while a presented problem awaits its answer.
  std::optional<PresentedProblem> present_next();

  /// Throws ErrorKind::conflict with no outstanding problem, or the
  /// validation error of the response (state unchanged).
  SubmitResult submit(const FuzzyResponse& response);

  const std::vector<TrainingObservation>& training() const noexcept { return training_; }
  const std::vector<PStarRecord>& p_stars() const noexcept { return p_stars_; }
  const ValidationPass& validation_pass(int pass) const;
  const std::optional<FitReport>& fit() const noexcept { return fit_; }
  const std::optional<MetricsReport>& metrics() const noexcept { return metrics_; }
  const std::optional<std::string>& fit_error() const noexcept { return fit_error_; }

  /// Throws ErrorKind::conflict before completion.
  SessionReport report() const;

 private:
  struct ReplayTag {};
  Session(ReplayTag, std::string id, SessionConfig config, Clock clock);

  void append(EventType type, nlohmann::json payload);
  void begin_module();
  void advance_module();
  void finalize();

  std::string id_;
  SessionConfig config_;
  SessionSchedule schedule_;
  Clock clock_;
  std::vector<Event> events_;
  std::size_t persisted_ = 0;

  std::size_t module_index_ = 0;
  int index_in_module_ = 0;
  StaircaseState staircase_;
  int seq_ = 0;
  int answered_ = 0;
  std::optional<PresentedProblem> outstanding_;

  std::vector<TrainingObservation> training_;
  std::vector<PStarRecord> p_stars_;
  std::array<ValidationPass, 2> validation_{};
  std::optional<FitReport> fit_;
  std::optional<MetricsReport> metrics_;
  std::optional<std::string> fit_error_;
};

/// Runs a whole session with a synthetic subject answering every problem.
void run_synthetic(Session& session, SyntheticSubject& subject);

}  // namespace regret
