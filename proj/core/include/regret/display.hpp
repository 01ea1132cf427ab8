#pragma once

// Text the survey screen shows for a problem. The client renders these
// strings verbatim.

#include <cstdint>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "regret/model.hpp"

namespace regret {

/// "-$90.00", "$0.00"; no thousands separators.
std::string format_dollars(std::int64_t cents);

/// Probability as a percentage with at most two decimals: 0.1 -> "10%",
/// 0.225 -> "22.5%".
std::string format_percent(double p);

/// Outcome amount in cents for a normalized value.
std::int64_t outcome_cents(double x_norm, double money_scale);

/// Robot option (two outcomes), human option (one certain outcome), expected
/// values, and the comparison block of outcome and probability differences.
nlohmann::json display_payload(const DecisionProblem& problem);

/// The outcome assignment table as "text" (aligned columns), "csv" or "json".
/// Throws ErrorKind::input for another format.
std::string format_table2(std::string_view format);

}  // namespace regret
