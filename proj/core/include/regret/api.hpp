#pragma once

// HTTP-shaped request router over a SessionStore, independent of any server
// library.
//
//   POST /api/sessions                     create (body: session config)   201
//   GET  /api/sessions                     list                            200
//   POST /api/sessions/{id}/next           present the next problem        200 | 409
//   POST /api/sessions/{id}/responses      submit a fuzzy response         200 | 400 | 409
//   GET  /api/sessions/{id}/report         fit + metrics + cloud           200 | 409
//
// Errors carry {"error": {"kind", "message"}}; unknown ids give 404.

#include <string>

#include <nlohmann/json.hpp>

#include "regret/error.hpp"
#include "regret/store.hpp"

namespace regret {

struct ApiRequest {
  std::string method;
  std::string path;
  std::string body;
};

struct ApiResponse {
  int status = 200;
  std::string body;
};

int http_status(ErrorKind kind) noexcept;

class Api {
 public:
  explicit Api(SessionStore& store) : store_(store) {}

  ApiResponse handle(const ApiRequest& request);

 private:
  nlohmann::json create(const std::string& body);
  nlohmann::json list();
  nlohmann::json next(const std::string& id);
  nlohmann::json respond(const std::string& id, const std::string& body);
  nlohmann::json report(const std::string& id);

  SessionStore& store_;
};

/// Body of a successful fetch-next call.
nlohmann::json problem_view(const PresentedProblem& presented, const Progress& progress);

}  // namespace regret
