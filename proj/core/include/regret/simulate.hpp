#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "regret/session.hpp"

namespace regret {

/// A group of synthetic subjects sharing one ground truth.
struct GroupSpec {
  WeightingSpec w_true;
  double beta = 1.0;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
  int subjects = 1;
  double money_scale = 100.0;
  bool practice = false;
  MembershipSet memberships;
};

/// Subject i gets schedule seed `seed + i`, noise stream seed
/// splitmix64(seed + i) and session id "sim-<seed>-<i>".
SessionConfig subject_config(const GroupSpec& spec, int index);
std::string subject_session_id(const GroupSpec& spec, int index);

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Runs every subject through a full session. Throws ErrorKind::config for a
/// bad spec.
std::vector<Session> simulate_group(const GroupSpec& spec, Clock clock = utc_now);

struct GroupSummary {
  int subjects = 0;
  int fitted = 0;  // sessions whose fit succeeded
  double mean_revisit_accuracy = 0.0;
  double mean_averaged_prediction_accuracy = 0.0;
  std::optional<double> mean_consistent_prediction_accuracy;  // over subjects that have one
  double mean_training_accuracy = 0.0;
  std::optional<PairedT> paired_t;  // averaged prediction vs revisit, per subject
  std::optional<std::string> paired_t_error;
};

GroupSummary summarize_group(std::span<const Session> sessions);

}  // namespace regret
