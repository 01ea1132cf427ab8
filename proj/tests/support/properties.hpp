#pragma once

// Randomized invariant checks shared by the unit tests and the acceptance
// binary. Each returns how many cases ran and the first counterexample.

#include <cstdint>
#include <string>

namespace regret::testing {

struct PropertyResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string first_failure;

  bool passed() const { return failures == 0 && cases > 0; }
  void record(bool ok, const std::string& detail);
};

PropertyResult check_q_odd_symmetry(std::uint64_t seed, int cases);
PropertyResult check_choice_scale_invariance(std::uint64_t seed, int cases);
PropertyResult check_bracket_halving(std::uint64_t seed, int cases);
PropertyResult check_direction_symmetry(std::uint64_t seed, int cases);

/// `sessions` random synthetic sessions, each cut at `cuts_per_session`
/// random event boundaries; every cut counts as one case.
PropertyResult check_replay_truncation(std::uint64_t seed, int sessions, int cuts_per_session);

}  // namespace regret::testing
