#pragma once

#include <cstdint>
#include <random>

#include "regret/elicitation.hpp"
#include "regret/fuzzy.hpp"
#include "regret/model.hpp"

namespace regret {

/// Ground truth for a simulated respondent.
struct SubjectModel {
  WeightingSpec w_true;
  double beta = 1.0;  // Q*(x) = sign(x) |x|^beta, beta in [1, 3]
  MembershipSet memberships;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
};

void validate(const SubjectModel& model);

/// sign(x) |x|^beta.
double power_q(double x, double beta);

/// Answers decision problems the way the ground-truth model says a person
/// would: net advantage under (w*, Q*), plus Gaussian noise on e_rh, pushed
/// through the three membership functions and snapped to the rating scale.
class SyntheticSubject {
 public:
  explicit SyntheticSubject(const SubjectModel& model);

  const SubjectModel& model() const noexcept { return model_; }

  /// Noise-free net advantage under the ground truth.
  double true_net_advantage(const DecisionProblem& problem) const;

  /// Draws from this subject's private stream when noise_sigma > 0.
  FuzzyResponse respond(const DecisionProblem& problem);

 private:
  SubjectModel model_;
  std::mt19937_64 rng_;
};

/// Maps a (possibly perturbed) net advantage to a legal response. If every
/// membership snaps to 0, the label with the largest analog membership is
/// raised to 0.25.
FuzzyResponse respond_at(const MembershipSet& memberships, double e_rh);

/// Indifference probability for a Table 2 row under the ground truth,
/// found by bisection to 1e-12. Throws ErrorKind::model when the net
/// advantage does not change sign on [0, 1].
double closed_form_p_star(const SubjectModel& model, const Table2Row& row);

}  // namespace regret
