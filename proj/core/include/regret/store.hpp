#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <string>
#include <type_traits>
#include <vector>

#include "regret/session.hpp"

namespace regret {

struct SessionSummary {
  std::string id;
  bool complete = false;
  Progress progress;
};

/// Live sessions keyed by id, each persisted to <data_dir>/<id>.jsonl.
///
/// Calls on different sessions run concurrently; calls on one session are
/// serialized by that session's mutex. Every new event is appended to the log
/// before the call returns.
class SessionStore {
 public:
  /// Without a data directory sessions live in memory only. With one, every
  /// *.jsonl file in it is replayed; files that fail to replay are skipped and
  /// listed in load_errors().
  explicit SessionStore(std::optional<std::filesystem::path> data_dir = std::nullopt, Clock clock = utc_now);

  SessionStore(const SessionStore&) = delete;
  SessionStore& operator=(const SessionStore&) = delete;

  /// Throws ErrorKind::config for an invalid config.
  std::string create(const SessionConfig& config);

  /// Runs fn with exclusive access to the session, then persists whatever
  /// events it produced. Throws ErrorKind::not_found for an unknown id.
  template <typename Fn>
  auto with_session(const std::string& id, Fn&& fn) {
    Entry& entry = find(id);
    std::lock_guard lock(entry.mutex);
    if constexpr (std::is_void_v<std::invoke_result_t<Fn, Session&>>) {
      fn(entry.session);
      persist(entry);
    } else {
      auto result = fn(entry.session);
      persist(entry);
      return result;
    }
  }

  std::vector<SessionSummary> list() const;
  const std::vector<std::string>& load_errors() const noexcept { return load_errors_; }

 private:
  struct Entry {
    explicit Entry(Session s) : session(std::move(s)) {}
    std::mutex mutex;
    Session session;
  };

  Entry& find(const std::string& id);
  void persist(Entry& entry);
  std::string fresh_id();

  std::optional<std::filesystem::path> data_dir_;
  Clock clock_;
  mutable std::shared_mutex registry_mutex_;
  std::map<std::string, std::unique_ptr<Entry>> sessions_;
  std::mt19937_64 id_rng_;
  std::vector<std::string> load_errors_;
};

}  // namespace regret
