#include "regret/elicitation.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <tuple>

#include "regret/error.hpp"

namespace regret {

std::string_view to_string(ModuleKind kind) noexcept {
  switch (kind) {
    case ModuleKind::practice: return "practice";
    case ModuleKind::training: return "training";
    case ModuleKind::validation: return "validation";
  }
  return "training";
}

int SessionSchedule::scored_problem_count() const noexcept {
  const auto scored = std::count_if(modules.begin(), modules.end(),
                                    [](const ModulePlan& m) { return m.kind != ModuleKind::practice; });
  return static_cast<int>(scored) * per_module_budget;
}

int SessionSchedule::total_problem_count() const noexcept {
  return static_cast<int>(modules.size()) * per_module_budget;
}

namespace {

// Grid values are kept as integer hundredths until the end so equal draws
// compare equal and map onto the printed 0.05 grid exactly.
std::array<DecisionProblem, kValidationProblems> draw_validation_set(const ScheduleConfig& config) {
  std::set<std::pair<int, int>> training_pairs;
  for (const auto& row : kTable2) {
    training_pairs.emplace(static_cast<int>(std::lround(row.xr_norm * 100)),
                           static_cast<int>(std::lround(row.xh_norm * 100)));
  }

  std::mt19937_64 rng(config.seed);
  std::uniform_int_distribution<int> human_step(1, 18);  // xh in {-0.05, ..., -0.90}
  std::uniform_int_distribution<int> prob_step(2, 18);   // p in {0.10, ..., 0.90}

  std::array<DecisionProblem, kValidationProblems> out{};
  std::set<std::tuple<int, int, int>> seen;
  std::size_t filled = 0;
  while (filled < out.size()) {
    const int xh = -5 * human_step(rng);
    // Keep xr >= -1 and |xr - xh| <= 0.9 so Q is never extrapolated.
    const int max_gap_steps = std::min(90, 100 + xh) / 5;
    std::uniform_int_distribution<int> gap_step(1, max_gap_steps);
    const int xr = xh - 5 * gap_step(rng);
    const int p = 5 * prob_step(rng);
    if (training_pairs.count({xr, xh}) != 0) continue;
    if (!seen.emplace(xr, xh, p).second) continue;
    out[filled++] = DecisionProblem{xr / 100.0, xh / 100.0, p / 100.0, config.money_scale};
  }
  return out;
}

}  // namespace

SessionSchedule plan_session(const ScheduleConfig& config) {
  if (!(config.money_scale > 0.0)) {
    fail(ErrorKind::config, "money_scale must be > 0, got " + std::to_string(config.money_scale));
  }
  SessionSchedule schedule;
  schedule.config = config;
  if (config.practice) schedule.modules.push_back({ModuleKind::practice, 0, 0});
  for (int row = 0; row < 4; ++row) schedule.modules.push_back({ModuleKind::training, row, 0});
  schedule.modules.push_back({ModuleKind::validation, -1, 1});
  for (int row = 4; row < kTrainingModules; ++row) schedule.modules.push_back({ModuleKind::training, row, 0});
  schedule.modules.push_back({ModuleKind::validation, -1, 2});
  schedule.validation_set = draw_validation_set(config);
  return schedule;
}

DecisionProblem training_problem(const Table2Row& row, double p_r, double money_scale) {
  return DecisionProblem{row.xr_norm, row.xh_norm, p_r, money_scale};
}

std::string_view to_string(Direction direction) noexcept {
  return direction == Direction::descending ? "descending" : "ascending";
}

std::string_view to_string(Phase phase) noexcept {
  switch (phase) {
    case Phase::first: return "first";
    case Phase::second: return "second";
    case Phase::done: return "done";
  }
  return "done";
}

Direction StaircaseState::direction() const noexcept {
  if (phase == Phase::second) {
    return first_direction == Direction::descending ? Direction::ascending : Direction::descending;
  }
  return first_direction;
}

int StaircaseState::phase_limit() const noexcept {
  return phase == Phase::first ? (budget + 1) / 2 : budget - (budget + 1) / 2;
}

StaircaseState start_staircase(int budget, Direction first_direction) {
  if (budget < 2) fail(ErrorKind::config, "staircase budget must allow one probe per direction");
  StaircaseState state;
  state.budget = budget;
  state.first_direction = first_direction;
  return state;
}

double next_probe(const StaircaseState& state) {
  if (state.phase == Phase::done) fail(ErrorKind::state, "staircase already finished");
  if (state.phase_probes == 0) {
    return state.direction() == Direction::descending ? kDescendingAnchor : kAscendingAnchor;
  }
  return 0.5 * (state.bracket_lo + state.bracket_hi);
}

StaircaseState apply_response(const StaircaseState& state, double probe, ResponseClass response) {
  if (state.phase == Phase::done) fail(ErrorKind::state, "staircase already finished");
  if (probe != next_probe(state)) {
    fail(ErrorKind::protocol, "response is for probe " + std::to_string(probe) + " but " +
                                  std::to_string(next_probe(state)) + " was issued");
  }

  StaircaseState next = state;
  ++next.probes_used;
  ++next.phase_probes;
  if (response == ResponseClass::indifferent) next.phase_saw_indifference = true;

  // Descending looks for where robot-leaning stops; ascending for where
  // human-leaning stops. Anything else is on the far side of that boundary.
  if (state.direction() == Direction::descending) {
    if (response == ResponseClass::robot_leaning) {
      next.bracket_hi = probe;
    } else {
      next.bracket_lo = probe;
    }
  } else {
    if (response == ResponseClass::human_leaning) {
      next.bracket_lo = probe;
    } else {
      next.bracket_hi = probe;
    }
  }

  if (next.phase_probes < state.phase_limit()) return next;

  const double estimate = 0.5 * (next.bracket_lo + next.bracket_hi);
  if (state.phase == Phase::first) {
    next.p_star_phase1 = estimate;
    next.converged[0] = next.phase_saw_indifference;
    next.phase = Phase::second;
  } else {
    next.p_star_phase2 = estimate;
    next.converged[1] = next.phase_saw_indifference;
    next.phase = Phase::done;
  }
  next.bracket_lo = 0.0;
  next.bracket_hi = 1.0;
  next.phase_probes = 0;
  next.phase_saw_indifference = false;
  return next;
}

PStarRecord estimate_p_star(const StaircaseState& state, int row_index) {
  if (state.phase != Phase::done || !state.p_star_phase1 || !state.p_star_phase2) {
    fail(ErrorKind::state, "both directions must finish before estimating p*");
  }
  PStarRecord record;
  record.row_index = row_index;
  record.p_phase1 = *state.p_star_phase1;
  record.p_phase2 = *state.p_star_phase2;
  record.p_star = 0.5 * (record.p_phase1 + record.p_phase2);
  record.converged = state.converged;
  return record;
}

}  // namespace regret
