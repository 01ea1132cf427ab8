#include "regret/error.hpp"

namespace regret {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::parameter: return "parameter";
    case ErrorKind::domain: return "domain";
    case ErrorKind::level: return "level";
    case ErrorKind::empty_response: return "empty-response";
    case ErrorKind::state: return "state";
    case ErrorKind::protocol: return "protocol";
    case ErrorKind::input: return "input";
    case ErrorKind::singular_ratio: return "singular-ratio";
    case ErrorKind::degenerate_metric: return "degenerate-metric";
    case ErrorKind::statistic: return "statistic";
    case ErrorKind::model: return "model";
    case ErrorKind::config: return "config";
    case ErrorKind::not_found: return "not-found";
    case ErrorKind::conflict: return "conflict";
    case ErrorKind::data: return "data";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace regret
