#pragma once

// JSON mappings for the domain types (nlohmann ADL hooks) and the event-log
// line format. Field names here are the wire format of the HTTP API and the
// on-disk session logs.

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "regret/fitting.hpp"
#include "regret/fuzzy.hpp"
#include "regret/model.hpp"
#include "regret/session.hpp"
#include "regret/subject.hpp"

namespace regret {

void to_json(nlohmann::json& j, const DecisionProblem& p);
void from_json(const nlohmann::json& j, DecisionProblem& p);
void to_json(nlohmann::json& j, const WeightingSpec& w);
void from_json(const nlohmann::json& j, WeightingSpec& w);
void to_json(nlohmann::json& j, const QCurve& q);
void to_json(nlohmann::json& j, const FuzzyResponse& r);
void from_json(const nlohmann::json& j, FuzzyResponse& r);
void to_json(nlohmann::json& j, const MembershipSpec& m);
void from_json(const nlohmann::json& j, MembershipSpec& m);
void to_json(nlohmann::json& j, const SubjectModel& s);
void from_json(const nlohmann::json& j, SubjectModel& s);
void to_json(nlohmann::json& j, const SessionConfig& c);
void from_json(const nlohmann::json& j, SessionConfig& c);
void to_json(nlohmann::json& j, const PStarRecord& r);
void from_json(const nlohmann::json& j, PStarRecord& r);
void to_json(nlohmann::json& j, const CandidateResult& c);
void to_json(nlohmann::json& j, const FitReport& f);
void to_json(nlohmann::json& j, const PairedT& t);
void to_json(nlohmann::json& j, const MetricsReport& m);
void to_json(nlohmann::json& j, const CloudRow& row);
void to_json(nlohmann::json& j, const SessionReport& r);
void to_json(nlohmann::json& j, const PresentedProblem& p);

/// Parses an API/CLI response body; unknown keys are ignored, missing
/// memberships raise ErrorKind::input.
FuzzyResponse parse_response(const nlohmann::json& j);

/// Parses a session-creation body or a logged config; raises ErrorKind::config.
SessionConfig parse_config(const nlohmann::json& j);

std::string to_log_line(const Event& event);
Event parse_log_line(const std::string& line);

/// Reads a JSON-lines log. A final line without a newline that fails to parse
/// is treated as an interrupted write and dropped; any other bad line raises
/// ErrorKind::data.
std::vector<Event> read_event_log(const std::filesystem::path& path);

/// Writes a whole log, replacing any existing file via a temporary and a rename.
void write_event_log(const std::filesystem::path& path, std::span<const Event> events);

/// Appends one event as a single write followed by a flush.
void append_event(const std::filesystem::path& path, const Event& event);

}  // namespace regret
