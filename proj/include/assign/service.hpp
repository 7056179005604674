#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "assign/distribution.hpp"
#include "assign/error.hpp"

namespace assign {

enum class SessionMode { simulated, manual };

/// Body of POST /api/session after parsing. dist accepts the object form
/// {"support":[...],"probs":[...]} or the preset name "dice"; rewards
/// accepts "linear", "geometric:B" or an explicit array.
struct CreateRequest {
  nlohmann::json dist = "dice";
  std::size_t n = 0;
  nlohmann::json rewards = "linear";
  SessionMode mode = SessionMode::simulated;
  std::uint64_t seed = 0;

  static CreateRequest from_json(const nlohmann::json& body);
  nlohmann::json to_json() const;
};

class Session;

/// In-memory sessions with an optional append-only journal. Each session
/// serializes its own mutations; distinct sessions never block each other.
/// Every method returns the JSON object sent back to the client and throws
/// Error on failure.
class SessionStore {
 public:
  SessionStore();
  /// Replays the journal if it exists, then appends every later mutation.
  explicit SessionStore(std::filesystem::path journal);
  ~SessionStore();

  SessionStore(const SessionStore&) = delete;
  SessionStore& operator=(const SessionStore&) = delete;

  nlohmann::json create(const CreateRequest& request);
  nlohmann::json roll(const std::string& id);
  nlohmann::json enter_roll(const std::string& id, double value);
  nlohmann::json advice(const std::string& id);
  nlohmann::json place(const std::string& id, std::size_t slot,
                       std::uint64_t expected_version);
  nlohmann::json state(const std::string& id);

  std::size_t size() const;

 private:
  std::shared_ptr<Session> find(const std::string& id) const;
  std::string fresh_id();
  void journal(const nlohmann::json& entry);
  void replay(const std::filesystem::path& path);

  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t id_key_;
  std::uint64_t next_id_ = 0;
  std::mutex journal_mutex_;
  std::optional<std::ofstream> journal_;
};

/// HTTP status for a library error code.
int http_status(ErrorCode code) noexcept;

/// JSON routes under /api plus static files under / when static_dir is set.
class HttpServer {
 public:
  explicit HttpServer(SessionStore& store, std::string static_dir = {});
  ~HttpServer();

  /// Binds an OS-chosen port and returns it, or -1.
  int bind_any_port(const std::string& host = "127.0.0.1");
  bool bind(const std::string& host, int port);
  /// Blocks until stop().
  bool listen_after_bind();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace assign
