#include "regret/simulate.hpp"

#include "regret/error.hpp"

namespace regret {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

SessionConfig subject_config(const GroupSpec& spec, int index) {
  const std::uint64_t seed = spec.seed + static_cast<std::uint64_t>(index);
  SubjectModel subject{spec.w_true, spec.beta, spec.memberships, spec.noise_sigma, splitmix64(seed)};
  return {spec.money_scale, seed, spec.practice, subject};
}

std::string subject_session_id(const GroupSpec& spec, int index) {
  return "sim-" + std::to_string(spec.seed) + "-" + std::to_string(index);
}

std::vector<Session> simulate_group(const GroupSpec& spec, Clock clock) {
  if (spec.subjects < 1) fail(ErrorKind::config, "need at least one subject");
  std::vector<Session> sessions;
  sessions.reserve(static_cast<std::size_t>(spec.subjects));
  for (int i = 0; i < spec.subjects; ++i) {
    Session session(subject_session_id(spec, i), subject_config(spec, i), clock);
    SyntheticSubject subject(*session.config().synthetic);
    run_synthetic(session, subject);
    sessions.push_back(std::move(session));
  }
  return sessions;
}

GroupSummary summarize_group(std::span<const Session> sessions) {
  GroupSummary out;
  out.subjects = static_cast<int>(sessions.size());
  std::vector<double> averaged;
  std::vector<double> revisit;
  double consistent_sum = 0.0;
  int consistent_n = 0;
  double training_sum = 0.0;
  for (const Session& s : sessions) {
    if (!s.fit() || !s.metrics()) continue;
    const MetricsReport& m = *s.metrics();
    averaged.push_back(m.averaged_prediction_accuracy);
    revisit.push_back(m.revisit_accuracy);
    training_sum += s.fit()->training_accuracy;
    if (m.consistent_prediction_accuracy) {
      consistent_sum += *m.consistent_prediction_accuracy;
      ++consistent_n;
    }
  }
  out.fitted = static_cast<int>(averaged.size());
  if (out.fitted == 0) return out;
  const double n = out.fitted;
  for (std::size_t i = 0; i < averaged.size(); ++i) {
    out.mean_averaged_prediction_accuracy += averaged[i];
    out.mean_revisit_accuracy += revisit[i];
  }
  out.mean_averaged_prediction_accuracy /= n;
  out.mean_revisit_accuracy /= n;
  out.mean_training_accuracy = training_sum / n;
  if (consistent_n > 0) out.mean_consistent_prediction_accuracy = consistent_sum / consistent_n;
  try {
    out.paired_t = paired_t(averaged, revisit);
  } catch (const Error& err) {
    out.paired_t_error = err.what();
  }
  return out;
}

}  // namespace regret
