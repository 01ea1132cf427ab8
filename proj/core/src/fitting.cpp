#include "regret/fitting.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numeric>
#include <string>

#include "regret/error.hpp"

namespace regret {

Choice to_choice(ResponseClass value) noexcept {
  switch (value) {
    case ResponseClass::robot_leaning: return Choice::robot;
    case ResponseClass::human_leaning: return Choice::human;
    case ResponseClass::indifferent: return Choice::indifferent;
  }
  return Choice::indifferent;
}

namespace {

std::size_t grid_index(double delta) {
  return static_cast<std::size_t>(std::lround((delta - QCurve::kDeltas.front()) * 10.0));
}

std::array<const PStarRecord*, kTrainingModules> index_by_row(std::span<const PStarRecord> p_stars) {
  std::array<const PStarRecord*, kTrainingModules> by_row{};
  for (const auto& record : p_stars) {
    if (record.row_index < 0 || record.row_index >= kTrainingModules) {
      fail(ErrorKind::input, "p* record for unknown row " + std::to_string(record.row_index));
    }
    auto& slot = by_row[static_cast<std::size_t>(record.row_index)];
    if (slot != nullptr) fail(ErrorKind::input, "duplicate p* record for row " + std::to_string(record.row_index));
    slot = &record;
  }
  for (std::size_t row = 0; row < by_row.size(); ++row) {
    if (by_row[row] == nullptr) fail(ErrorKind::input, "missing p* record for row " + std::to_string(row));
  }
  return by_row;
}

bool relaxed_match(Choice predicted, Choice observed) {
  return !((predicted == Choice::robot && observed == Choice::human) ||
           (predicted == Choice::human && observed == Choice::robot));
}

struct Scored {
  int correct = 0;
  int relaxed = 0;
  double epsilon = kDefaultIndifferenceTolerance;
};

// Decision-stump search for the indifference tolerance: only thresholds
// halfway between consecutive |e| values can change the outcome.
Scored best_tolerance(const std::vector<double>& e_values, const std::vector<Choice>& observed) {
  std::vector<double> magnitudes;
  magnitudes.reserve(e_values.size());
  for (double e : e_values) magnitudes.push_back(std::abs(e));
  std::sort(magnitudes.begin(), magnitudes.end());
  magnitudes.erase(std::unique(magnitudes.begin(), magnitudes.end()), magnitudes.end());

  std::vector<double> thresholds{kDefaultIndifferenceTolerance};
  for (std::size_t k = 0; k + 1 < magnitudes.size(); ++k) {
    const double mid = 0.5 * (magnitudes[k] + magnitudes[k + 1]);
    if (mid > kDefaultIndifferenceTolerance) thresholds.push_back(mid);
  }

  Scored best;
  best.correct = -1;
  for (double eps : thresholds) {
    Scored s;
    s.epsilon = eps;
    for (std::size_t i = 0; i < e_values.size(); ++i) {
      const Choice predicted = predict_choice(e_values[i], eps);
      s.correct += predicted == observed[i] ? 1 : 0;
      s.relaxed += relaxed_match(predicted, observed[i]) ? 1 : 0;
    }
    if (s.correct > best.correct) best = s;
  }
  return best;
}

// Larger is better.
auto selection_key(const CandidateResult& c) {
  const bool is_identity = c.w.family == WeightFamily::identity;
  const double closeness = is_identity ? 0.0 : -std::abs(c.w.gamma - 1.0);
  const int family_rank = c.w.family == WeightFamily::tversky_kahneman ? 1 : 0;
  return std::tuple(c.correct, is_identity, closeness, family_rank);
}

double fraction(int part, int whole) { return whole == 0 ? 0.0 : static_cast<double>(part) / whole; }

}  // namespace

QCurve build_q_chain(std::span<const PStarRecord> p_stars, const WeightingSpec& w, double anchor_value) {
  if (!(anchor_value < 0.0)) fail(ErrorKind::input, "anchor value must be negative");
  const auto by_row = index_by_row(p_stars);

  std::array<double, QCurve::kPoints> values{};
  values[QCurve::kAnchorIndex] = anchor_value;
  for (const auto& row : kTable2) {
    const double p = by_row[static_cast<std::size_t>(row.index)]->p_star;
    const double weight = eval_weight(w, p);
    if (weight >= 1.0 || weight <= 0.0) {
      fail(ErrorKind::singular_ratio, "w(p*) = " + std::to_string(weight) + " at row " + std::to_string(row.index));
    }
    values[grid_index(row.delta_next)] = weight / (1.0 - weight) * values[grid_index(row.delta_i)];
  }
  return QCurve(values);
}

std::vector<PStarRecord> candidate_p_stars(std::span<const PStarRecord> p_stars, const WeightingSpec& w) {
  std::vector<PStarRecord> out(p_stars.begin(), p_stars.end());
  if (w.family == WeightFamily::identity) return out;
  for (auto& record : out) {
    const double mean_weight = 0.5 * (eval_weight(w, record.p_phase1) + eval_weight(w, record.p_phase2));
    record.p_star = invert_weight(w, mean_weight);
  }
  return out;
}

std::vector<WeightingSpec> default_candidate_grid() {
  std::vector<WeightingSpec> grid{WeightingSpec::identity()};
  for (auto family : {WeightFamily::tversky_kahneman, WeightFamily::prelec}) {
    for (int k = 0; k <= 24; ++k) grid.push_back({family, (30 + 5 * k) / 100.0});
  }
  return grid;
}

FitReport fit_model(std::span<const TrainingObservation> training, std::span<const PStarRecord> p_stars,
                    const FitOptions& options) {
  if (training.empty()) fail(ErrorKind::input, "no training responses to fit");
  if (options.candidates.empty()) fail(ErrorKind::input, "empty candidate grid");
  index_by_row(p_stars);

  std::vector<Choice> observed;
  observed.reserve(training.size());
  for (const auto& obs : training) observed.push_back(to_choice(obs.response_class));
  const int n = static_cast<int>(training.size());

  FitReport report;
  report.training_responses = n;
  std::optional<std::size_t> best_index;
  std::optional<QCurve> best_q;
  std::vector<PStarRecord> best_p_stars;

  for (const auto& w : options.candidates) {
    CandidateResult result;
    result.w = w;
    try {
      auto records = candidate_p_stars(p_stars, w);
      QCurve q = build_q_chain(records, w, options.anchor_value);
      std::vector<double> e_values;
      e_values.reserve(training.size());
      for (const auto& obs : training) e_values.push_back(net_advantage(obs.problem, w, q));

      const Scored scored = best_tolerance(e_values, observed);
      result.correct = scored.correct;
      result.accuracy = fraction(scored.correct, n);
      result.relaxed_accuracy = fraction(scored.relaxed, n);
      result.epsilon = scored.epsilon;
      report.candidate_table.push_back(result);

      if (!best_index || selection_key(result) > selection_key(report.candidate_table[*best_index])) {
        best_index = report.candidate_table.size() - 1;
        best_q = q;
        best_p_stars = std::move(records);
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::singular_ratio && e.kind() != ErrorKind::domain) throw;
      result.feasible = false;
      result.correct = 0;
      report.candidate_table.push_back(result);
    }
  }

  if (!best_index) fail(ErrorKind::singular_ratio, "no candidate weighting function yields a valid Q-chain");
  const auto& best = report.candidate_table[*best_index];
  report.best_w = best.w;
  report.best_q = *best_q;
  report.indifference_epsilon = best.epsilon;
  report.training_accuracy = best.accuracy;
  report.relaxed_training_accuracy = best.relaxed_accuracy;
  report.monotone_flag = best_q->is_monotone();
  report.p_stars = std::move(best_p_stars);
  return report;
}

double model_net_advantage(const FitReport& model, const DecisionProblem& problem) {
  return net_advantage(problem, model.best_w, model.best_q);
}

Choice model_predict(const FitReport& model, const DecisionProblem& problem) {
  return predict_choice(model_net_advantage(model, problem), model.indifference_epsilon);
}

MetricsReport summarize_validation(const FitReport& model, const ValidationPass& first,
                                   const ValidationPass& second) {
  if (first.problems.size() != first.responses.size() || second.problems.size() != second.responses.size()) {
    fail(ErrorKind::input, "each validation pass needs one response per problem");
  }
  if (first.problems != second.problems) {
    fail(ErrorKind::input, "validation passes must cover identical problems in identical order");
  }
  if (first.problems.empty()) fail(ErrorKind::input, "empty validation set");

  const auto size = static_cast<int>(first.problems.size());
  int same = 0;
  int correct_first = 0;
  int correct_second = 0;
  int relaxed = 0;
  int consistent_correct = 0;
  for (std::size_t i = 0; i < first.problems.size(); ++i) {
    const Choice predicted = model_predict(model, first.problems[i]);
    const Choice a = to_choice(classify_response(first.responses[i]));
    const Choice b = to_choice(classify_response(second.responses[i]));
    correct_first += predicted == a ? 1 : 0;
    correct_second += predicted == b ? 1 : 0;
    relaxed += (relaxed_match(predicted, a) ? 1 : 0) + (relaxed_match(predicted, b) ? 1 : 0);
    if (a == b) {
      ++same;
      consistent_correct += predicted == a ? 1 : 0;
    }
  }

  MetricsReport metrics;
  metrics.validation_size = size;
  metrics.consistent_count = same;
  metrics.revisit_accuracy = fraction(same, size);
  metrics.averaged_prediction_accuracy = 0.5 * (fraction(correct_first, size) + fraction(correct_second, size));
  metrics.relaxed_averaged_prediction_accuracy = fraction(relaxed, 2 * size);
  if (same > 0) metrics.consistent_prediction_accuracy = fraction(consistent_correct, same);
  return metrics;
}

MetricsReport compute_metrics(const FitReport& model, const ValidationPass& first, const ValidationPass& second) {
  auto metrics = summarize_validation(model, first, second);
  if (!metrics.consistent_prediction_accuracy) {
    fail(ErrorKind::degenerate_metric, "no consistent validation responses");
  }
  return metrics;
}

PairedT paired_t(std::span<const double> sample_a, std::span<const double> sample_b) {
  if (sample_a.size() != sample_b.size()) fail(ErrorKind::statistic, "paired samples differ in length");
  const std::size_t n = sample_a.size();
  if (n < 2) fail(ErrorKind::statistic, "paired t needs at least two pairs");

  std::vector<double> d(n);
  std::transform(sample_a.begin(), sample_a.end(), sample_b.begin(), d.begin(), std::minus<>());
  const double mean = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (double v : d) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  // Differences that agree up to rounding have no variance to speak of.
  if (sd <= 1e-12 * std::max(1.0, std::abs(mean))) {
    fail(ErrorKind::statistic, "paired differences have zero variance");
  }
  return PairedT{mean / (sd / std::sqrt(static_cast<double>(n))), static_cast<int>(n - 1)};
}

Label dominant_label(const FuzzyResponse& r) noexcept {
  if (r.mu_equal >= r.mu_robot && r.mu_equal >= r.mu_human) return Label::equally_liking;
  return r.mu_robot >= r.mu_human ? Label::prefer_robot : Label::prefer_human;
}

std::vector<CloudRow> export_membership_cloud(std::span<const TrainingObservation> training,
                                              const FitReport& model) {
  std::vector<CloudRow> rows;
  rows.reserve(training.size());
  for (const auto& obs : training) {
    rows.push_back(CloudRow{model_net_advantage(model, obs.problem), obs.response.mu_robot, obs.response.mu_equal,
                            obs.response.mu_human, dominant_label(obs.response)});
  }
  return rows;
}

namespace {

void append_number(std::string& out, double value, std::optional<int> fixed_digits) {
  std::array<char, 64> buf{};
  const auto [end, ec] = fixed_digits
                             ? std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                             std::chars_format::fixed, *fixed_digits)
                             : std::to_chars(buf.data(), buf.data() + buf.size(), value);
  out.append(buf.data(), end);
}

}  // namespace

std::string cloud_to_csv(std::span<const CloudRow> rows) {
  std::string out = "e_rh,mu_robot,mu_equal,mu_human,dominant_label\n";
  for (const auto& row : rows) {
    const double e = std::abs(row.e_rh) < 5e-7 ? 0.0 : row.e_rh;  // no "-0.000000"
    append_number(out, e, 6);
    for (double mu : {row.mu_robot, row.mu_equal, row.mu_human}) {
      out += ',';
      append_number(out, mu, std::nullopt);
    }
    out += ',';
    out += to_string(row.dominant);
    out += '\n';
  }
  return out;
}

}  // namespace regret
