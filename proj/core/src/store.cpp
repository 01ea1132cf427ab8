#include "regret/store.hpp"

#include <cstdio>

#include "regret/error.hpp"
#include "regret/serialize.hpp"

namespace regret {

SessionStore::SessionStore(std::optional<std::filesystem::path> data_dir, Clock clock)
    : data_dir_(std::move(data_dir)), clock_(std::move(clock)), id_rng_(std::random_device{}()) {
  if (!data_dir_) return;
  std::error_code ec;
  std::filesystem::create_directories(*data_dir_, ec);
  if (ec) fail(ErrorKind::data, "cannot create data directory " + data_dir_->string() + ": " + ec.message());

  for (const auto& item : std::filesystem::directory_iterator(*data_dir_)) {
    if (!item.is_regular_file() || item.path().extension() != ".jsonl") continue;
    try {
      const std::vector<Event> events = read_event_log(item.path());
      auto entry = std::make_unique<Entry>(Session::replay(events, clock_));
      if (entry->session.id() != item.path().stem().string()) {
        fail(ErrorKind::data, "session id does not match the file name");
      }
      persist(*entry);  // derived events a crash left out
      const std::string id = entry->session.id();
      sessions_.emplace(id, std::move(entry));
    } catch (const Error& err) {
      load_errors_.push_back(item.path().filename().string() + ": " + err.what());
    }
  }
}

std::string SessionStore::fresh_id() {
  for (;;) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(id_rng_()));
    std::string id = buf;
    if (sessions_.count(id) != 0) continue;
    if (data_dir_ && std::filesystem::exists(*data_dir_ / (id + ".jsonl"))) continue;
    return id;
  }
}

std::string SessionStore::create(const SessionConfig& config) {
  std::unique_lock lock(registry_mutex_);
  const std::string id = fresh_id();
  auto entry = std::make_unique<Entry>(Session(id, config, clock_));
  persist(*entry);
  sessions_.emplace(id, std::move(entry));
  return id;
}

SessionStore::Entry& SessionStore::find(const std::string& id) {
  std::shared_lock lock(registry_mutex_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) fail(ErrorKind::not_found, "no session '" + id + "'");
  return *it->second;
}

void SessionStore::persist(Entry& entry) {
  Session& session = entry.session;
  if (data_dir_) {
    const auto path = *data_dir_ / (session.id() + ".jsonl");
    const auto& events = session.events();
    for (std::size_t i = session.persisted_event_count(); i < events.size(); ++i) append_event(path, events[i]);
  }
  session.mark_persisted();
}

std::vector<SessionSummary> SessionStore::list() const {
  std::shared_lock lock(registry_mutex_);
  std::vector<SessionSummary> out;
  out.reserve(sessions_.size());
  for (const auto& [id, entry] : sessions_) {
    std::lock_guard session_lock(entry->mutex);
    out.push_back({id, entry->session.complete(), entry->session.progress()});
  }
  return out;
}

}  // namespace regret
