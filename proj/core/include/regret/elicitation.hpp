#pragma once

// Survey schedule and the two-direction indifference staircase.

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "regret/fuzzy.hpp"
#include "regret/model.hpp"

namespace regret {

/// One row of the outcome assignment. Consecutive rows chain the outcome
/// differences -0.5 -> -0.4 -> -0.6 -> ... -> -0.9 while xr stays near -1.
struct Table2Row {
  int index;
  double delta_i;     // = xh
  double delta_next;  // = xr - xh
  double xr_norm;
  double xh_norm;
};

inline constexpr std::array<Table2Row, 8> kTable2 = {{
    {0, -0.5, -0.4, -0.9, -0.5},
    {1, -0.4, -0.6, -1.0, -0.4},
    {2, -0.6, -0.3, -0.9, -0.6},
    {3, -0.3, -0.7, -1.0, -0.3},
    {4, -0.7, -0.2, -0.9, -0.7},
    {5, -0.2, -0.8, -1.0, -0.2},
    {6, -0.8, -0.1, -0.9, -0.8},
    {7, -0.1, -0.9, -1.0, -0.1},
}};

inline constexpr int kTrainingModules = 8;
inline constexpr int kValidationProblems = 10;
inline constexpr int kModuleBudget = 10;

enum class ModuleKind { practice, training, validation };

std::string_view to_string(ModuleKind kind) noexcept;

struct ModulePlan {
  ModuleKind kind = ModuleKind::training;
  int row = -1;              // Table 2 row for practice/training modules
  int validation_pass = 0;   // 1 or 2 for validation modules

  friend bool operator==(const ModulePlan&, const ModulePlan&) = default;
};

struct ScheduleConfig {
  double money_scale = 100.0;
  std::uint64_t seed = 0;
  bool practice = false;
};

struct SessionSchedule {
  ScheduleConfig config;
  std::vector<ModulePlan> modules;
  std::array<DecisionProblem, kValidationProblems> validation_set{};
  int per_module_budget = kModuleBudget;

  /// Problems in the scored part of the session (excludes practice).
  int scored_problem_count() const noexcept;
  int total_problem_count() const noexcept;
};

/// Training rows 0-3, validation pass 1, rows 4-7, validation pass 2; an
/// optional practice module on row 0 goes first. The validation problems are
/// a pure function of the seed.
SessionSchedule plan_session(const ScheduleConfig& config);

DecisionProblem training_problem(const Table2Row& row, double p_r, double money_scale);

enum class Direction { descending, ascending };
enum class Phase { first, second, done };

std::string_view to_string(Direction direction) noexcept;
std::string_view to_string(Phase phase) noexcept;

inline constexpr double kDescendingAnchor = 0.9;
inline constexpr double kAscendingAnchor = 0.1;

/// Staircase for one training module.
///
/// Each direction starts from its anchor probe (0.9 descending, 0.1
/// ascending) on a fresh bracket [0, 1] and bisects toward the point where
/// the subject stops leaning to the side the direction started on. The first
/// direction gets ceil(budget / 2) probes and the second the remainder. The
/// direction's estimate is the midpoint of its final bracket.
struct StaircaseState {
  Phase phase = Phase::first;
  Direction first_direction = Direction::descending;
  double bracket_lo = 0.0;
  double bracket_hi = 1.0;
  int budget = kModuleBudget;
  int probes_used = 0;
  int phase_probes = 0;
  bool phase_saw_indifference = false;
  std::optional<double> p_star_phase1;
  std::optional<double> p_star_phase2;
  std::array<bool, 2> converged{};

  Direction direction() const noexcept;
  int phase_limit() const noexcept;

  friend bool operator==(const StaircaseState&, const StaircaseState&) = default;
};

StaircaseState start_staircase(int budget = kModuleBudget,
                               Direction first_direction = Direction::descending);

/// Throws ErrorKind::state once the staircase is done.
double next_probe(const StaircaseState& state);

/// Throws ErrorKind::protocol when `probe` differs from next_probe(state).
StaircaseState apply_response(const StaircaseState& state, double probe, ResponseClass response);

struct PStarRecord {
  int row_index = 0;
  double p_star = 0.5;
  double p_phase1 = 0.5;
  double p_phase2 = 0.5;
  std::array<bool, 2> converged{};

  friend bool operator==(const PStarRecord&, const PStarRecord&) = default;
};

/// Mean of the two direction estimates. Throws ErrorKind::state until done.
PStarRecord estimate_p_star(const StaircaseState& state, int row_index);

}  // namespace regret
