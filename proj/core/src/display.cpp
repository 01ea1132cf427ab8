#include "regret/display.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "regret/elicitation.hpp"
#include "regret/error.hpp"

namespace regret {

std::string format_dollars(std::int64_t cents) {
  const std::uint64_t magnitude = cents < 0 ? 0 - static_cast<std::uint64_t>(cents) : static_cast<std::uint64_t>(cents);
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s$%llu.%02llu", cents < 0 ? "-" : "",
                static_cast<unsigned long long>(magnitude / 100), static_cast<unsigned long long>(magnitude % 100));
  return buf;
}

std::string format_percent(double p) {
  const long long hundredths = std::llround(p * 10000.0);  // of a percent
  const long long whole = std::llabs(hundredths) / 100;
  long long frac = std::llabs(hundredths) % 100;
  std::string out = hundredths < 0 ? "-" : "";
  out += std::to_string(whole);
  if (frac != 0) {
    char buf[4];
    std::snprintf(buf, sizeof buf, "%02lld", frac);
    std::string digits = buf;
    if (digits.back() == '0') digits.pop_back();
    out += "." + digits;
  }
  return out + "%";
}

std::int64_t outcome_cents(double x_norm, double money_scale) { return std::llround(x_norm * money_scale * 100.0); }

nlohmann::json display_payload(const DecisionProblem& problem) {
  validate(problem);
  const std::int64_t robot_loss = outcome_cents(problem.xr_norm, problem.money_scale);
  const std::int64_t human_loss = outcome_cents(problem.xh_norm, problem.money_scale);
  const std::int64_t ev_robot = expected_value_cents(problem, Side::robot);
  const std::int64_t ev_human = expected_value_cents(problem, Side::human);
  const double p_loss = 1.0 - problem.p_r;

  nlohmann::json robot = {
      {"outcomes",
       {{{"amount", format_dollars(0)}, {"amount_cents", 0}, {"probability", format_percent(problem.p_r)},
         {"probability_value", problem.p_r}},
        {{"amount", format_dollars(robot_loss)}, {"amount_cents", robot_loss}, {"probability", format_percent(p_loss)},
         {"probability_value", p_loss}}}},
      {"expected_value", format_dollars(ev_robot)},
      {"expected_value_cents", ev_robot}};
  nlohmann::json human = {
      {"outcomes",
       {{{"amount", format_dollars(human_loss)}, {"amount_cents", human_loss}, {"probability", format_percent(1.0)},
         {"probability_value", 1.0}}}},
      {"expected_value", format_dollars(ev_human)},
      {"expected_value_cents", ev_human}};
  // Loss amounts and loss probabilities, robot minus human.
  nlohmann::json comparison = {{"outcome_difference", format_dollars(robot_loss - human_loss)},
                               {"outcome_difference_cents", robot_loss - human_loss},
                               {"probability_difference", format_percent(p_loss - 1.0)},
                               {"expected_value_difference", format_dollars(ev_robot - ev_human)}};
  return {{"robot", robot}, {"human", human}, {"comparison", comparison}};
}

std::string format_table2(std::string_view format) {
  if (format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : kTable2) {
      rows.push_back({{"i", r.index},
                      {"delta_i", r.delta_i},
                      {"delta_next", r.delta_next},
                      {"xr_norm", r.xr_norm},
                      {"xh_norm", r.xh_norm}});
    }
    return rows.dump(2) + "\n";
  }
  if (format != "text" && format != "csv") fail(ErrorKind::input, "table format must be text, csv or json");
  const bool csv = format == "csv";
  std::string out;
  char line[96];
  std::snprintf(line, sizeof line, csv ? "%s,%s,%s,%s,%s\n" : "%-3s %8s %11s %8s %8s\n", "i", "delta_i",
                "delta_next", "xr_norm", "xh_norm");
  out += line;
  for (const auto& r : kTable2) {
    std::snprintf(line, sizeof line, csv ? "%d,%.1f,%.1f,%.1f,%.1f\n" : "%-3d %8.1f %11.1f %8.1f %8.1f\n", r.index,
                  r.delta_i, r.delta_next, r.xr_norm, r.xh_norm);
    out += line;
  }
  return out;
}

}  // namespace regret
