// regret-survey: survey server, synthetic runs and offline analysis of logs.

#include <csignal>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "regret/api.hpp"
#include "regret/display.hpp"
#include "regret/elicitation.hpp"
#include "regret/error.hpp"
#include "regret/serialize.hpp"
#include "regret/simulate.hpp"
#include "regret/store.hpp"

namespace {

using nlohmann::json;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

regret::Session load_session(const std::string& file) {
  return regret::Session::replay(regret::read_event_log(file));
}

int run_serve(const std::string& bind, int port, const std::string& data_dir) {
  regret::SessionStore store{std::filesystem::path(data_dir)};
  for (const auto& problem : store.load_errors()) std::cerr << "skipped log " << problem << '\n';
  regret::Api api(store);

  httplib::Server server;
  const auto route = [&api](const httplib::Request& req, httplib::Response& res) {
    const regret::ApiResponse out = api.handle({req.method, req.path, req.body});
    res.status = out.status;
    res.set_content(out.body, "application/json");
  };
  server.Get(".*", route);
  server.Post(".*", route);
  server.Put(".*", route);
  server.Delete(".*", route);

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });

  if (!server.bind_to_port(bind, port)) {
    std::cerr << "cannot listen on " << bind << ':' << port << '\n';
    pthread_kill(waiter.native_handle(), SIGTERM);
    waiter.join();
    return kExitData;
  }
  std::cerr << "listening on " << bind << ':' << port << ", data in " << data_dir << '\n';
  server.listen_after_bind();
  if (waiter.joinable()) {
    pthread_kill(waiter.native_handle(), SIGTERM);
    waiter.join();
  }
  return 0;
}

struct SimulateArgs {
  int subjects = 1;
  std::string family = "identity";
  double gamma = 1.0;
  double beta = 1.0;
  double noise = 0.0;
  std::uint64_t seed = 7;
  double money_scale = 100.0;
  bool practice = false;
  std::string data_dir;
};

int run_simulate(const SimulateArgs& args) {
  regret::GroupSpec spec;
  const auto family = regret::parse_weight_family(args.family);
  if (!family) throw UsageError("unknown family '" + args.family + "' (identity, tk, prelec)");
  spec.w_true = {*family, *family == regret::WeightFamily::identity ? 1.0 : args.gamma};
  spec.beta = args.beta;
  spec.noise_sigma = args.noise;
  spec.seed = args.seed;
  spec.subjects = args.subjects;
  spec.money_scale = args.money_scale;
  spec.practice = args.practice;

  std::vector<regret::Session> sessions;
  try {
    sessions = regret::simulate_group(spec);
  } catch (const regret::Error& err) {
    if (err.kind() == regret::ErrorKind::parameter || err.kind() == regret::ErrorKind::config) {
      throw UsageError(err.what());
    }
    throw;
  }

  if (!args.data_dir.empty()) {
    std::filesystem::create_directories(args.data_dir);
    for (const auto& s : sessions) {
      regret::write_event_log(std::filesystem::path(args.data_dir) / (s.id() + ".jsonl"), s.events());
    }
  }

  json subjects = json::array();
  for (const auto& s : sessions) {
    json row = {{"session_id", s.id()}};
    if (s.fit()) {
      row["best_w"] = s.fit()->best_w;
      row["indifference_epsilon"] = s.fit()->indifference_epsilon;
      row["training_accuracy"] = s.fit()->training_accuracy;
      row["monotone_flag"] = s.fit()->monotone_flag;
      row["metrics"] = *s.metrics();
    } else {
      row["fit_error"] = s.fit_error().value_or("unknown");
    }
    subjects.push_back(row);
  }
  const regret::GroupSummary summary = regret::summarize_group(sessions);
  json group = {{"subjects", summary.subjects},
                {"fitted", summary.fitted},
                {"mean_revisit_accuracy", summary.mean_revisit_accuracy},
                {"mean_averaged_prediction_accuracy", summary.mean_averaged_prediction_accuracy},
                {"mean_consistent_prediction_accuracy", nullptr},
                {"mean_training_accuracy", summary.mean_training_accuracy},
                {"paired_t", nullptr}};
  if (summary.mean_consistent_prediction_accuracy) {
    group["mean_consistent_prediction_accuracy"] = *summary.mean_consistent_prediction_accuracy;
  }
  if (summary.paired_t) group["paired_t"] = *summary.paired_t;
  if (summary.paired_t_error) group["paired_t_error"] = *summary.paired_t_error;

  json spec_json = {{"w_true", spec.w_true}, {"beta", spec.beta},       {"noise_sigma", spec.noise_sigma},
                    {"seed", spec.seed},     {"subjects", spec.subjects}, {"money_scale", spec.money_scale}};
  std::cout << json{{"spec", spec_json}, {"subjects", subjects}, {"group", group}}.dump(2) << '\n';
  return 0;
}

int run_fit(const std::string& file) {
  const regret::Session session = load_session(file);
  if (session.p_stars().size() != regret::kTable2.size()) {
    throw regret::Error(regret::ErrorKind::data, "session has " + std::to_string(session.p_stars().size()) +
                                                     " of 8 training modules; nothing to fit");
  }
  const regret::FitReport fit = regret::fit_model(session.training(), session.p_stars());
  std::cout << json(fit).dump(2) << '\n';
  return 0;
}

int run_report(const std::string& file, const std::string& format) {
  const regret::Session session = load_session(file);
  if (!session.complete()) throw regret::Error(regret::ErrorKind::data, "session is not complete");
  const regret::SessionReport report = session.report();
  if (format == "csv") {
    std::cout << regret::cloud_to_csv(report.membership_cloud);
  } else {
    std::cout << json(report).dump(2) << '\n';
  }
  return 0;
}

int run_gen_table2(const std::string& format) {
  std::cout << regret::format_table2(format);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive regret-theory survey engine"};
  app.require_subcommand(1);

  std::string data_dir;
  std::string bind = "127.0.0.1";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Run the JSON HTTP API");
  serve->add_option("--port", port, "TCP port")->check(CLI::Range(1, 65535));
  serve->add_option("--bind", bind, "Bind address");
  serve->add_option("--data-dir", data_dir, "Directory of session logs")->required();

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run synthetic subjects through full sessions");
  simulate->add_option("--subjects", sim.subjects, "Number of subjects")->check(CLI::PositiveNumber);
  simulate->add_option("--family", sim.family, "Weighting family: identity, tk, prelec");
  simulate->add_option("--gamma", sim.gamma, "Weighting curvature");
  simulate->add_option("--beta", sim.beta, "Regret exponent, Q(x) = sign(x)|x|^beta");
  simulate->add_option("--noise", sim.noise, "Std. dev. of noise on the net advantage");
  simulate->add_option("--seed", sim.seed, "Base seed");
  simulate->add_option("--money-scale", sim.money_scale, "Dollars per normalized unit");
  simulate->add_flag("--practice", sim.practice, "Add the practice module");
  simulate->add_option("--data-dir", sim.data_dir, "Write one log per subject here");

  std::string session_file;
  auto* fit = app.add_subcommand("fit", "Refit the model from a session log");
  fit->add_option("--session", session_file, "Session log (.jsonl)")->required();

  std::string format = "json";
  auto* report = app.add_subcommand("report", "Print the report of a completed session");
  report->add_option("--session", session_file, "Session log (.jsonl)")->required();
  report->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  std::string table_format = "text";
  auto* table = app.add_subcommand("gen-table2", "Print the outcome assignment table");
  table->add_option("--format", table_format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*serve) return run_serve(bind, port, data_dir);
    if (*simulate) return run_simulate(sim);
    if (*fit) return run_fit(session_file);
    if (*report) return run_report(session_file, format);
    if (*table) return run_gen_table2(table_format);
  } catch (const UsageError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitUsage;
  } catch (const regret::Error& err) {
    std::cerr << "error (" << regret::to_string(err.kind()) << "): " << err.what() << '\n';
    return kExitData;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
