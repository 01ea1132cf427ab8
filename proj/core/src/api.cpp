#include "regret/api.hpp"

#include <string_view>
#include <vector>

#include "regret/display.hpp"
#include "regret/serialize.hpp"

namespace regret {

using nlohmann::json;

namespace {

// An error whose response carries extra fields next to "error".
struct DetailedError {
  int status;
  json body;
};

json progress_json(const Progress& progress) { return {{"answered", progress.answered}, {"total", progress.total}}; }

json parse_body(const std::string& body, bool allow_empty) {
  if (allow_empty && body.find_first_not_of(" \t\r\n") == std::string::npos) return json::object();
  json parsed = json::parse(body, nullptr, false);
  if (parsed.is_discarded()) fail(ErrorKind::input, "request body is not valid JSON");
  return parsed;
}

std::vector<std::string_view> split_path(std::string_view path) {
  if (const auto q = path.find('?'); q != std::string_view::npos) path = path.substr(0, q);
  std::vector<std::string_view> parts;
  while (!path.empty()) {
    const auto slash = path.find('/');
    const std::string_view part = path.substr(0, slash);
    if (!part.empty()) parts.push_back(part);
    if (slash == std::string_view::npos) break;
    path.remove_prefix(slash + 1);
  }
  return parts;
}

ApiResponse error_response(int status, std::string_view kind, std::string_view message) {
  return {status, json{{"error", {{"kind", kind}, {"message", message}}}}.dump()};
}

}  // namespace

int http_status(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::not_found:
      return 404;
    case ErrorKind::conflict:
    case ErrorKind::state:
    case ErrorKind::protocol:
      return 409;
    case ErrorKind::parameter:
    case ErrorKind::domain:
    case ErrorKind::level:
    case ErrorKind::empty_response:
    case ErrorKind::input:
    case ErrorKind::config:
      return 400;
    default:
      return 500;
  }
}

json problem_view(const PresentedProblem& presented, const Progress& progress) {
  json view = presented;
  view["display"] = display_payload(presented.problem);
  return {{"complete", false}, {"problem", view}, {"progress", progress_json(progress)}};
}

ApiResponse Api::handle(const ApiRequest& request) {
  const auto parts = split_path(request.path);
  const bool post = request.method == "POST";
  const bool get = request.method == "GET";
  try {
    if (parts.size() < 2 || parts[0] != "api" || parts[1] != "sessions") {
      return error_response(404, "not-found", "no such route");
    }
    if (parts.size() == 2) {
      if (post) return {201, create(request.body).dump()};
      if (get) return {200, list().dump()};
      return error_response(405, "method", "use GET or POST");
    }
    if (parts.size() == 4) {
      const std::string id(parts[2]);
      const std::string_view action = parts[3];
      if (action == "next") {
        if (!post) return error_response(405, "method", "fetching the next problem advances the session; use POST");
        return {200, next(id).dump()};
      }
      if (action == "responses") {
        if (!post) return error_response(405, "method", "use POST");
        return {200, respond(id, request.body).dump()};
      }
      if (action == "report") {
        if (!get) return error_response(405, "method", "use GET");
        return {200, report(id).dump()};
      }
    }
    return error_response(404, "not-found", "no such route");
  } catch (const DetailedError& err) {
    return {err.status, err.body.dump()};
  } catch (const Error& err) {
    return error_response(http_status(err.kind()), to_string(err.kind()), err.what());
  } catch (const std::exception& err) {
    return error_response(500, "internal", err.what());
  }
}

json Api::create(const std::string& body) {
  const std::string id = store_.create(parse_config(parse_body(body, true)));
  return store_.with_session(id, [](Session& s) {
    return json{{"session_id", s.id()}, {"progress", progress_json(s.progress())}};
  });
}

json Api::list() {
  json sessions = json::array();
  for (const auto& summary : store_.list()) {
    sessions.push_back(
        {{"session_id", summary.id}, {"complete", summary.complete}, {"progress", progress_json(summary.progress)}});
  }
  return {{"sessions", sessions}};
}

json Api::next(const std::string& id) {
  return store_.with_session(id, [](Session& s) {
    if (const auto& current = s.outstanding()) {
      json body = {{"error", {{"kind", "conflict"}, {"message", "a presented problem is still awaiting its response"}}}};
      body["current"] = problem_view(*current, s.progress())["problem"];
      throw DetailedError{409, body};
    }
    const auto presented = s.present_next();
    if (!presented) return json{{"complete", true}, {"progress", progress_json(s.progress())}};
    return problem_view(*presented, s.progress());
  });
}

json Api::respond(const std::string& id, const std::string& body) {
  const FuzzyResponse response = parse_response(parse_body(body, false));
  return store_.with_session(id, [&](Session& s) {
    const SubmitResult result = s.submit(response);
    json out = {{"seq", result.seq},
                {"class", to_string(result.response_class)},
                {"progress", progress_json(result.progress)},
                {"complete", result.session_complete}};
    if (result.p_star) out["p_star"] = *result.p_star;
    return out;
  });
}

json Api::report(const std::string& id) {
  return store_.with_session(id, [](Session& s) { return json(s.report()); });
}

}  // namespace regret
