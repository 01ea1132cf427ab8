#include <gtest/gtest.h>

#include <cmath>

#include "regret/error.hpp"
#include "regret/fitting.hpp"
#include "regret/subject.hpp"

using namespace regret;

namespace {

std::vector<PStarRecord> records(const std::array<double, 8>& p) {
  std::vector<PStarRecord> out;
  for (int i = 0; i < 8; ++i) {
    const double v = p[static_cast<std::size_t>(i)];
    out.push_back({i, v, v, v, {true, true}});
  }
  return out;
}

std::vector<PStarRecord> identity_p_stars() {
  std::array<double, 8> p{};
  for (const auto& row : kTable2) {
    p[static_cast<std::size_t>(row.index)] = row.delta_next / (row.delta_i + row.delta_next);
  }
  return records(p);
}

FuzzyResponse resp(double r, double e, double h) { return {r, e, h, std::nullopt}; }

const FuzzyResponse kRobot = resp(1, 0, 0);
const FuzzyResponse kHuman = resp(0, 0, 1);
const FuzzyResponse kEqual = resp(0, 1, 0);

// Training probes answered by the noiseless expected-value subject.
std::vector<TrainingObservation> identity_training() {
  SyntheticSubject subject{SubjectModel{}};
  std::vector<TrainingObservation> out;
  for (const auto& row : kTable2) {
    for (int k = 1; k <= 10; ++k) {
      const DecisionProblem problem = training_problem(row, k / 11.0, 100.0);
      const FuzzyResponse r = subject.respond(problem);
      out.push_back({row.index, problem, r, classify_response(r)});
    }
  }
  return out;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& err) {
    return err.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::data;
}

}  // namespace

TEST(BuildQChain, RatioOneEverywhere) {
  const QCurve q = build_q_chain(records({0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5}), WeightingSpec::identity());
  for (double v : q.values()) EXPECT_DOUBLE_EQ(v, -0.5);
}

TEST(BuildQChain, FirstStep) {
  const QCurve q = build_q_chain(records({4.0 / 9.0, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5}), WeightingSpec::identity());
  EXPECT_NEAR(eval_q(q, -0.4), -0.4, 1e-15);
}

TEST(BuildQChain, IdentitySubjectTelescopes) {
  const QCurve q = build_q_chain(identity_p_stars(), WeightingSpec::identity());
  for (std::size_t k = 0; k < QCurve::kPoints; ++k) EXPECT_NEAR(q.at_grid(k), QCurve::kDeltas[k], 1e-14);
}

TEST(BuildQChain, CurvedTruthRecoversRescaledPower) {
  // With the generating w and exact p*, the chain is Q* rescaled to Q(-0.5) = -0.5.
  SubjectModel model;
  model.w_true = WeightingSpec::tversky_kahneman(0.7);
  model.beta = 1.8;
  std::vector<PStarRecord> p;
  for (const auto& row : kTable2) {
    const double v = closed_form_p_star(model, row);
    p.push_back({row.index, v, v, v, {true, true}});
  }
  const QCurve q = build_q_chain(p, model.w_true);
  const double scale = -0.5 / power_q(-0.5, 1.8);
  for (std::size_t k = 0; k < QCurve::kPoints; ++k) {
    EXPECT_NEAR(q.at_grid(k), scale * power_q(QCurve::kDeltas[k], 1.8), 1e-9) << "delta " << QCurve::kDeltas[k];
  }
  // Frozen from the 40-digit oracle.
  EXPECT_NEAR(q.at_grid(0), -1.440325048534164, 1e-9);
  EXPECT_NEAR(q.at_grid(8), -0.027594593229224297, 1e-11);
}

TEST(BuildQChain, Errors) {
  auto p = identity_p_stars();
  p.pop_back();
  EXPECT_EQ(kind_of([&] { build_q_chain(p, WeightingSpec::identity()); }), ErrorKind::input);
  auto dup = identity_p_stars();
  dup[7].row_index = 6;
  EXPECT_EQ(kind_of([&] { build_q_chain(dup, WeightingSpec::identity()); }), ErrorKind::input);
  auto singular = identity_p_stars();
  singular[3].p_star = 1.0;
  EXPECT_EQ(kind_of([&] { build_q_chain(singular, WeightingSpec::identity()); }), ErrorKind::singular_ratio);
  EXPECT_EQ(kind_of([&] { build_q_chain(identity_p_stars(), WeightingSpec::identity(), 0.5); }), ErrorKind::input);
}

TEST(CandidatePStars, WeightSpaceMean) {
  std::vector<PStarRecord> p = {{0, 0.3, 0.2, 0.4, {true, true}}};
  const auto w = WeightingSpec::tversky_kahneman(0.6);
  const auto out = candidate_p_stars(p, w);
  EXPECT_NEAR(eval_weight(w, out[0].p_star), 0.5 * (eval_weight(w, 0.2) + eval_weight(w, 0.4)), 1e-12);
  EXPECT_EQ(candidate_p_stars(p, WeightingSpec::identity())[0].p_star, 0.3);
}

TEST(CandidateGrid, CoversBothFamilies) {
  const auto grid = default_candidate_grid();
  EXPECT_EQ(grid.size(), 51u);
  EXPECT_EQ(grid.front(), WeightingSpec::identity());
  EXPECT_NEAR(grid[1].gamma, 0.3, 1e-12);
  EXPECT_NEAR(grid[25].gamma, 1.5, 1e-12);
  EXPECT_EQ(grid[26].family, WeightFamily::prelec);
}

TEST(FitModel, NoiselessIdentitySubject) {
  const auto training = identity_training();
  const FitReport fit = fit_model(training, identity_p_stars());
  EXPECT_EQ(fit.best_w, WeightingSpec::identity());
  EXPECT_GE(fit.training_accuracy, 0.95);
  EXPECT_EQ(fit.training_responses, 80);
  EXPECT_EQ(fit.candidate_table.size(), 51u);
  EXPECT_TRUE(fit.monotone_flag);
}

TEST(FitModel, SingleCandidateGrid) {
  FitOptions options;
  options.candidates = {WeightingSpec::identity()};
  const FitReport fit = fit_model(identity_training(), identity_p_stars(), options);
  EXPECT_EQ(fit.candidate_table.size(), 1u);
}

TEST(FitModel, TrainingAccuracyIsAFraction) {
  const auto training = identity_training();
  const FitReport fit = fit_model(training, identity_p_stars());
  int correct = 0;
  for (const auto& obs : training) correct += model_predict(fit, obs.problem) == to_choice(obs.response_class);
  EXPECT_DOUBLE_EQ(fit.training_accuracy, static_cast<double>(correct) / 80.0);
}

TEST(FitModel, EmptyTraining) {
  EXPECT_EQ(kind_of([] { fit_model({}, identity_p_stars()); }), ErrorKind::input);
}

TEST(FitModel, EveryCandidateSingular) {
  auto p = identity_p_stars();
  p[7].p_star = p[7].p_phase1 = p[7].p_phase2 = 1.0;
  const auto training = identity_training();
  try {
    fit_model(training, p);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::singular_ratio);
  }
}

namespace {

FitReport identity_model() {
  FitReport fit;
  fit.best_w = WeightingSpec::identity();
  fit.best_q = QCurve::identity();
  fit.indifference_epsilon = 1e-9;
  return fit;
}

// Ten problems; the identity model predicts robot for the first five and
// human for the rest.
ValidationPass ten_problems() {
  ValidationPass pass;
  for (int i = 0; i < 10; ++i) pass.problems.push_back({-0.9, -0.5, i < 5 ? 0.8 : 0.2, 100.0});
  return pass;
}

}  // namespace

TEST(ComputeMetrics, PerfectCase) {
  ValidationPass a = ten_problems();
  for (int i = 0; i < 10; ++i) a.responses.push_back(i < 5 ? kRobot : kHuman);
  const MetricsReport m = compute_metrics(identity_model(), a, a);
  EXPECT_EQ(m.revisit_accuracy, 1.0);
  EXPECT_EQ(m.averaged_prediction_accuracy, 1.0);
  EXPECT_EQ(m.consistent_prediction_accuracy, 1.0);
}

TEST(ComputeMetrics, SevenConsistentOfTen) {
  ValidationPass a = ten_problems();
  ValidationPass b = ten_problems();
  for (int i = 0; i < 10; ++i) {
    a.responses.push_back(i < 5 ? kRobot : kHuman);
    b.responses.push_back(i < 7 ? a.responses.back() : kEqual);
  }
  const MetricsReport m = compute_metrics(identity_model(), a, b);
  EXPECT_EQ(m.revisit_accuracy, 0.7);
  EXPECT_EQ(m.consistent_count, 7);
  EXPECT_DOUBLE_EQ(m.averaged_prediction_accuracy, 0.85);
  EXPECT_EQ(m.consistent_prediction_accuracy, 1.0);
  EXPECT_EQ(m.relaxed_averaged_prediction_accuracy, 1.0);
}

TEST(ComputeMetrics, AllConsistentMeansEqualAccuracies) {
  ValidationPass a = ten_problems();
  for (int i = 0; i < 10; ++i) a.responses.push_back(i % 3 == 0 ? kHuman : kRobot);
  const MetricsReport m = compute_metrics(identity_model(), a, a);
  EXPECT_EQ(m.averaged_prediction_accuracy, m.consistent_prediction_accuracy);
}

TEST(ComputeMetrics, Errors) {
  ValidationPass a = ten_problems();
  ValidationPass b = ten_problems();
  for (int i = 0; i < 10; ++i) {
    a.responses.push_back(kRobot);
    b.responses.push_back(kHuman);
  }
  EXPECT_EQ(kind_of([&] { compute_metrics(identity_model(), a, b); }), ErrorKind::degenerate_metric);
  const MetricsReport lenient = summarize_validation(identity_model(), a, b);
  EXPECT_FALSE(lenient.consistent_prediction_accuracy);
  EXPECT_EQ(lenient.revisit_accuracy, 0.0);

  ValidationPass c = ten_problems();
  c.problems[3].p_r = 0.55;
  c.responses = a.responses;
  EXPECT_EQ(kind_of([&] { compute_metrics(identity_model(), a, c); }), ErrorKind::input);
}

TEST(PairedT, HandExample) {
  const std::vector<double> a = {0.9, 0.5};
  const std::vector<double> b = {0.6, 0.6};
  const PairedT t = paired_t(a, b);
  EXPECT_NEAR(t.t, 0.5, 1e-12);
  EXPECT_EQ(t.df, 1);
}

TEST(PairedT, DegenerateCases) {
  const std::vector<double> a = {0.8, 0.6, 0.7};
  const std::vector<double> b = {0.7, 0.5, 0.6};
  EXPECT_EQ(kind_of([&] { paired_t(a, b); }), ErrorKind::statistic);
  EXPECT_EQ(kind_of([&] { paired_t(a, a); }), ErrorKind::statistic);
  EXPECT_EQ(kind_of([&] { paired_t(std::vector<double>{0.5}, std::vector<double>{0.4}); }), ErrorKind::statistic);
  EXPECT_EQ(kind_of([&] { paired_t(a, std::vector<double>{0.1, 0.2}); }), ErrorKind::statistic);
}

TEST(MembershipCloud, OneRowPerTrainingResponse) {
  const auto training = identity_training();
  const FitReport fit = fit_model(training, identity_p_stars());
  const auto rows = export_membership_cloud(training, fit);
  EXPECT_EQ(rows.size(), 80u);
  for (const auto& row : rows) {
    if (row.mu_equal == 1.0) EXPECT_LE(std::abs(row.e_rh), 0.06);
  }
  EXPECT_TRUE(export_membership_cloud({}, fit).empty());
}

TEST(MembershipCloud, Csv) {
  const std::vector<CloudRow> rows = {{0.125, 0.25, 0.5, 0, Label::equally_liking},
                                      {-1e-9, 0, 1, 0, Label::equally_liking},
                                      {-0.3, 0, 0, 1, Label::prefer_human}};
  EXPECT_EQ(cloud_to_csv(rows),
            "e_rh,mu_robot,mu_equal,mu_human,dominant_label\n"
            "0.125000,0.25,0.5,0,equally-liking\n"
            "0.000000,0,1,0,equally-liking\n"
            "-0.300000,0,0,1,prefer-human\n");
}

TEST(DominantLabel, TiesFavorEqualThenRobot) {
  EXPECT_EQ(dominant_label(resp(1, 1, 0)), Label::equally_liking);
  EXPECT_EQ(dominant_label(resp(0.5, 0, 0.5)), Label::prefer_robot);
  EXPECT_EQ(dominant_label(resp(0, 0.25, 0.5)), Label::prefer_human);
}
