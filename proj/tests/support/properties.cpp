#include "properties.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "regret/error.hpp"
#include "regret/serialize.hpp"
#include "regret/session.hpp"
#include "regret/simulate.hpp"

namespace regret::testing {

void PropertyResult::record(bool ok, const std::string& detail) {
  ++cases;
  if (ok) return;
  if (failures++ == 0) first_failure = detail;
}

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

// Non-decreasing negative curve from -0.9 to -0.1.
QCurve random_curve(Rng& rng) {
  std::array<double, QCurve::kPoints> values{};
  double v = -uniform(rng, 0.05, 5.0);
  for (std::size_t k = 0; k < values.size(); ++k) {
    values[k] = v;
    v = std::min(v + uniform(rng, 0.0, 0.5), -1e-3);
  }
  return QCurve(values);
}

WeightingSpec random_weighting(Rng& rng) {
  const int family = std::uniform_int_distribution<int>(0, 2)(rng);
  const double gamma = uniform(rng, kMinGamma, kMaxGamma);
  if (family == 0) return WeightingSpec::identity();
  return family == 1 ? WeightingSpec::tversky_kahneman(gamma) : WeightingSpec::prelec(gamma);
}

DecisionProblem random_problem(Rng& rng) {
  DecisionProblem p;
  p.xr_norm = uniform(rng, -1.0, -0.02);
  p.xh_norm = uniform(rng, p.xr_norm, 0.0);
  if (p.xh_norm <= p.xr_norm || p.xh_norm >= 0.0) p.xh_norm = 0.5 * p.xr_norm;
  p.p_r = uniform(rng, 0.0, 1.0);
  p.money_scale = uniform(rng, 1.0, 1000.0);
  return p;
}

template <typename T>
std::string describe(const char* label, const T& value) {
  std::ostringstream out;
  out.precision(17);
  out << label << '=' << value;
  return out.str();
}

// Indifferent inside [lo, hi], robot-leaning above, human-leaning below.
struct BandResponder {
  double lo;
  double hi;
  ResponseClass operator()(double p) const {
    if (p > hi) return ResponseClass::robot_leaning;
    if (p < lo) return ResponseClass::human_leaning;
    return ResponseClass::indifferent;
  }
};

}  // namespace

PropertyResult check_q_odd_symmetry(std::uint64_t seed, int cases) {
  PropertyResult result{"eval_q odd symmetry"};
  Rng rng(seed);
  for (int i = 0; i < cases; ++i) {
    const QCurve curve = random_curve(rng);
    const double d = uniform(rng, -1.0, 1.0);
    const double sum = eval_q(curve, d) + eval_q(curve, -d);
    result.record(sum == 0.0 && eval_q(curve, 0.0) == 0.0, describe("delta", d) + " " + describe("sum", sum));
  }
  return result;
}

PropertyResult check_choice_scale_invariance(std::uint64_t seed, int cases) {
  PropertyResult result{"choice invariance under positive Q scaling"};
  Rng rng(seed);
  for (int i = 0; i < cases; ++i) {
    const DecisionProblem problem = random_problem(rng);
    const WeightingSpec w = random_weighting(rng);
    const QCurve curve = random_curve(rng);
    const double k = std::pow(10.0, uniform(rng, -3.0, 3.0));
    const Choice base = predict_choice(net_advantage(problem, w, curve), 0.0);
    const Choice scaled = predict_choice(net_advantage(problem, w, curve.scaled(k)), 0.0);
    // A tolerance scales with Q as well.
    const double eps = uniform(rng, 0.0, 0.2);
    const Choice base_eps = predict_choice(net_advantage(problem, w, curve), eps);
    const Choice scaled_eps = predict_choice(net_advantage(problem, w, curve.scaled(k)), eps * k);
    result.record(base == scaled && base_eps == scaled_eps,
                  describe("k", k) + " " + describe("p_r", problem.p_r) + " " + describe("xr", problem.xr_norm));
  }
  return result;
}

PropertyResult check_bracket_halving(std::uint64_t seed, int cases) {
  PropertyResult result{"bisection bracket halving and containment"};
  Rng rng(seed);
  for (int i = 0; i < cases; ++i) {
    double a = uniform(rng, -0.2, 1.2);
    double b = uniform(rng, -0.2, 1.2);
    if (a > b) std::swap(a, b);
    const BandResponder responder{a, b};
    const int budget = std::uniform_int_distribution<int>(2, 20)(rng);
    const Direction first = rng() % 2 == 0 ? Direction::descending : Direction::ascending;

    StaircaseState state = start_staircase(budget, first);
    bool ok = true;
    std::string detail;
    while (ok && state.phase != Phase::done) {
      const double probe = next_probe(state);
      const double lo = state.bracket_lo;
      const double hi = state.bracket_hi;
      const bool anchor = state.phase_probes == 0;
      // The edge this direction is looking for, clamped into [0, 1].
      const double edge = std::clamp(state.direction() == Direction::descending ? b : a, 0.0, 1.0);
      const Phase phase_before = state.phase;
      state = apply_response(state, probe, responder(probe));
      if (state.phase != phase_before) continue;  // phase finished; bracket reset
      const double new_lo = state.bracket_lo;
      const double new_hi = state.bracket_hi;
      const bool contained = new_lo >= lo && new_hi <= hi && new_lo < new_hi;
      const bool halved = anchor || std::abs((new_hi - new_lo) - 0.5 * (hi - lo)) <= 1e-15;
      const bool holds_edge = new_lo <= edge && edge <= new_hi;
      if (!(contained && halved && holds_edge)) {
        ok = false;
        detail = describe("band_lo", a) + " " + describe("band_hi", b) + " " + describe("probe", probe);
      }
    }
    if (ok) {
      const PStarRecord record = estimate_p_star(state, 0);
      ok = record.p_star > 0.0 && record.p_star < 1.0;
      if (!ok) detail = describe("p_star", record.p_star);
    }
    result.record(ok, detail);
  }
  return result;
}

PropertyResult check_direction_symmetry(std::uint64_t seed, int cases) {
  PropertyResult result{"direction order leaves p* unchanged"};
  Rng rng(seed);
  for (int i = 0; i < cases; ++i) {
    double a = uniform(rng, 0.0, 1.0);
    double b = uniform(rng, 0.0, 1.0);
    if (a > b) std::swap(a, b);
    const BandResponder responder{a, b};
    const int budget = 2 * std::uniform_int_distribution<int>(1, 10)(rng);
    const auto run = [&](Direction first) {
      StaircaseState s = start_staircase(budget, first);
      while (s.phase != Phase::done) {
        const double probe = next_probe(s);
        s = apply_response(s, probe, responder(probe));
      }
      return estimate_p_star(s, 0).p_star;
    };
    const double down_first = run(Direction::descending);
    const double up_first = run(Direction::ascending);
    result.record(down_first == up_first, describe("down_first", down_first) + " " + describe("up_first", up_first));
  }
  return result;
}

PropertyResult check_replay_truncation(std::uint64_t seed, int sessions, int cuts_per_session) {
  PropertyResult result{"event-log replay at random truncation points"};
  Rng rng(seed);
  int tick = 0;
  const Clock clock = [&tick] { return "t" + std::to_string(tick++); };

  for (int s = 0; s < sessions; ++s) {
    GroupSpec spec;
    spec.w_true = random_weighting(rng);
    spec.beta = uniform(rng, 1.0, 2.0);
    spec.noise_sigma = uniform(rng, 0.0, 0.1);
    spec.seed = rng();
    spec.practice = rng() % 2 == 0;
    Session live("replay-" + std::to_string(s), subject_config(spec, 0), clock);
    SyntheticSubject subject(*live.config().synthetic);
    run_synthetic(live, subject);

    // Through the text format, as a crash would leave it.
    std::vector<Event> log;
    for (const Event& e : live.events()) log.push_back(parse_log_line(to_log_line(e)));
    const std::string live_report = live.fit() ? nlohmann::json(live.report()).dump() : "";

    for (int c = 0; c < cuts_per_session; ++c) {
      const auto cut = std::uniform_int_distribution<std::size_t>(1, log.size())(rng);
      std::string detail = "session " + std::to_string(s) + " cut " + std::to_string(cut);
      bool ok = true;
      try {
        Session restored = Session::replay(std::span<const Event>(log.data(), cut), clock);
        // Regenerated derived events must be the ones the live log holds.
        for (std::size_t j = 0; ok && j < restored.events().size(); ++j) {
          ok = restored.events()[j].type == log[j].type && restored.events()[j].payload == log[j].payload;
          if (!ok) detail += " regenerated event " + std::to_string(j) + " differs";
        }
        // Continue with the live session's commands; everything must line up.
        for (std::size_t j = restored.events().size(); ok && j < log.size(); ++j) {
          if (j == restored.events().size()) {
            if (log[j].type == EventType::problem_presented) {
              const auto next = restored.present_next();
              ok = next && nlohmann::json(*next) == log[j].payload;
              if (!ok) detail += " next probe differs at event " + std::to_string(j);
            } else if (log[j].type == EventType::response_recorded) {
              restored.submit(parse_response(log[j].payload));
            } else {
              ok = false;
              detail += " stalled at event " + std::to_string(j);
            }
          }
          if (ok) ok = restored.events()[j].type == log[j].type && restored.events()[j].payload == log[j].payload;
        }
        if (ok) ok = restored.events().size() == log.size() && restored.complete();
        if (ok && !live_report.empty()) ok = nlohmann::json(restored.report()).dump() == live_report;
        if (!ok && detail.find("differs") == std::string::npos) detail += " final state differs";
      } catch (const std::exception& err) {
        ok = false;
        detail += std::string(" threw: ") + err.what();
      }
      result.record(ok, detail);
    }
  }
  return result;
}

}  // namespace regret::testing
