#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "regret/elicitation.hpp"
#include "regret/fuzzy.hpp"
#include "regret/model.hpp"

namespace regret {

/// A training probe together with what the subject answered.
struct TrainingObservation {
  int row = 0;
  DecisionProblem problem;
  FuzzyResponse response;
  ResponseClass response_class = ResponseClass::indifferent;
};

Choice to_choice(ResponseClass value) noexcept;

inline constexpr double kDefaultAnchorValue = -0.5;

/// Q-chain recursion over Table 2: Q(-0.5) = anchor_value, then for each row
/// Q(delta_next) = w(p*) / (1 - w(p*)) * Q(delta_i).
///
/// Requires exactly one record per row 0..7 (any order). Throws
/// ErrorKind::input for missing or duplicate rows and ErrorKind::singular_ratio
/// when w(p*) is 0 or 1.
QCurve build_q_chain(std::span<const PStarRecord> p_stars, const WeightingSpec& w,
                     double anchor_value = kDefaultAnchorValue);

/// The two directions of a module straddle the indifference point by equal
/// net-advantage margins, so under a candidate w they are averaged in weight
/// space: p* = w^-1((w(p1) + w(p2)) / 2). For identity w this is the plain mean.
std::vector<PStarRecord> candidate_p_stars(std::span<const PStarRecord> p_stars, const WeightingSpec& w);

/// Identity plus Tversky-Kahneman and Prelec over gamma = 0.30, 0.35, ..., 1.50.
std::vector<WeightingSpec> default_candidate_grid();

struct CandidateResult {
  WeightingSpec w;
  bool feasible = true;
  int correct = 0;
  double accuracy = 0.0;
  double relaxed_accuracy = 0.0;
  double epsilon = kDefaultIndifferenceTolerance;
};

struct FitReport {
  WeightingSpec best_w;
  QCurve best_q = QCurve::identity();
  double indifference_epsilon = kDefaultIndifferenceTolerance;
  double training_accuracy = 0.0;
  double relaxed_training_accuracy = 0.0;
  bool monotone_flag = true;
  int training_responses = 0;
  std::vector<PStarRecord> p_stars;  // as used for best_q
  std::vector<CandidateResult> candidate_table;
};

struct FitOptions {
  std::vector<WeightingSpec> candidates = default_candidate_grid();
  double anchor_value = kDefaultAnchorValue;
};

/// Exhaustive search over the candidate grid. Each candidate builds its
/// Q-chain, predicts every training probe, and picks the indifference
/// tolerance that maximizes strict choice accuracy (smallest on ties).
/// The best candidate maximizes accuracy; ties go to identity, then to the
/// gamma closest to 1, then Tversky-Kahneman before Prelec.
FitReport fit_model(std::span<const TrainingObservation> training, std::span<const PStarRecord> p_stars,
                    const FitOptions& options = {});

double model_net_advantage(const FitReport& model, const DecisionProblem& problem);
Choice model_predict(const FitReport& model, const DecisionProblem& problem);

struct ValidationPass {
  std::vector<DecisionProblem> problems;
  std::vector<FuzzyResponse> responses;
};

struct PairedT {
  double t = 0.0;
  int df = 0;
};

struct MetricsReport {
  double revisit_accuracy = 0.0;
  double averaged_prediction_accuracy = 0.0;
  std::optional<double> consistent_prediction_accuracy;  // set whenever consistent_count > 0
  double relaxed_averaged_prediction_accuracy = 0.0;
  int validation_size = 0;
  int consistent_count = 0;
  std::optional<PairedT> paired_t;  // group-level reports only
};

/// Throws ErrorKind::input when the passes differ in problems or size and
/// ErrorKind::degenerate_metric when no problem was answered consistently.
MetricsReport compute_metrics(const FitReport& model, const ValidationPass& first, const ValidationPass& second);

/// As compute_metrics, but leaves consistent_prediction_accuracy empty instead
/// of throwing when no response was consistent. Sessions use this so a very
/// inconsistent subject still gets a report.
MetricsReport summarize_validation(const FitReport& model, const ValidationPass& first,
                                   const ValidationPass& second);

/// Paired-samples t statistic with df = n - 1. Throws ErrorKind::statistic
/// for n < 2, unequal lengths, or zero-variance differences.
PairedT paired_t(std::span<const double> sample_a, std::span<const double> sample_b);

struct CloudRow {
  double e_rh = 0.0;
  double mu_robot = 0.0;
  double mu_equal = 0.0;
  double mu_human = 0.0;
  Label dominant = Label::equally_liking;
};

/// Largest membership; ties favor equally-liking, then prefer-robot.
Label dominant_label(const FuzzyResponse& response) noexcept;

std::vector<CloudRow> export_membership_cloud(std::span<const TrainingObservation> training,
                                              const FitReport& model);

/// Header `e_rh,mu_robot,mu_equal,mu_human,dominant_label`, one row per line.
std::string cloud_to_csv(std::span<const CloudRow> rows);

}  // namespace regret
