#include "assign/service.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <httplib.h>

#include "assign/policy_engine.hpp"
#include "assign/rng.hpp"
#include "assign/simulator.hpp"

namespace assign {

using nlohmann::json;

namespace {

// Sessions up to this many slots keep every threshold row they will need.
constexpr std::size_t kRetainAllSlots = 4096;

std::string_view to_string(SessionMode mode) {
  return mode == SessionMode::simulated ? "simulated" : "manual";
}

SessionMode parse_mode(const std::string& text) {
  if (text == "simulated") return SessionMode::simulated;
  if (text == "manual") return SessionMode::manual;
  throw Error(ErrorCode::InvalidArgument, "mode must be simulated or manual");
}

DiscreteDistribution dist_from_request(const json& spec) {
  if (spec.is_string()) {
    if (spec.get<std::string>() == "dice") return DiscreteDistribution::fair_die();
    throw Error(ErrorCode::InvalidArgument,
                "unknown distribution preset '" + spec.get<std::string>() + "'");
  }
  return distribution_from_json(spec.dump());
}

std::vector<double> rewards_from_request(const json& spec, std::size_t n) {
  if (spec.is_string()) {
    const auto text = spec.get<std::string>();
    if (text != "linear" && !text.starts_with("geometric:")) {
      throw Error(ErrorCode::InvalidArgument,
                  "rewards must be \"linear\", \"geometric:B\" or an array");
    }
    return make_rewards(text, n);
  }
  if (!spec.is_array()) {
    throw Error(ErrorCode::ParseError, "rewards must be a string or an array");
  }
  std::vector<double> rewards;
  for (const auto& v : spec) {
    if (!v.is_number()) throw Error(ErrorCode::ParseError, "non-numeric reward");
    rewards.push_back(v.get<double>());
  }
  if (rewards.size() != n) {
    throw Error(ErrorCode::LengthMismatch, "rewards array must have n entries");
  }
  check_rewards(rewards);
  return rewards;
}

template <typename T>
T field(const json& body, const char* key, T fallback) {
  if (!body.contains(key)) return fallback;
  try {
    return body.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::ParseError, std::string("field \"") + key + "\" has the wrong type");
  }
}

}  // namespace

CreateRequest CreateRequest::from_json(const json& body) {
  if (!body.is_object()) throw Error(ErrorCode::ParseError, "request body must be an object");
  CreateRequest req;
  if (body.contains("dist")) req.dist = body["dist"];
  if (!body.contains("n")) throw Error(ErrorCode::InvalidArgument, "missing field \"n\"");
  const auto n = field<long long>(body, "n", 0);
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  req.n = static_cast<std::size_t>(n);
  if (body.contains("rewards")) req.rewards = body["rewards"];
  req.mode = parse_mode(field<std::string>(body, "mode", "simulated"));
  req.seed = field<std::uint64_t>(body, "seed", 0);
  return req;
}

json CreateRequest::to_json() const {
  return {{"dist", dist}, {"n", n}, {"rewards", rewards},
          {"mode", std::string(to_string(mode))}, {"seed", seed}};
}

class Session {
 public:
  Session(std::string session_id, const CreateRequest& req)
      : id(std::move(session_id)),
        request(req),
        dist(dist_from_request(req.dist)),
        rewards(rewards_from_request(req.rewards, req.n)),
        mode(req.mode),
        seed(req.seed),
        rng(req.seed) {
    remaining.resize(rewards.size());
    for (std::size_t s = 0; s < remaining.size(); ++s) remaining[s] = s + 1;
    board.assign(rewards.size(), std::nullopt);
    if (rewards.size() <= kRetainAllSlots) {
      table = std::make_shared<const ThresholdTable>(dist, rewards.size() + 1, Retention::all);
    }
  }

  bool finished() const { return remaining.empty(); }

  ThresholdRow row(std::size_t horizon) const {
    if (table) return table->row(horizon);
    return build_table(dist, horizon, Retention::last).last();
  }

  std::vector<double> remaining_rewards() const {
    std::vector<double> out;
    out.reserve(remaining.size());
    for (std::size_t slot : remaining) out.push_back(rewards[slot - 1]);
    return out;
  }

  double roll() {
    if (finished()) throw Error(ErrorCode::GameFinished, "every slot is filled");
    if (mode != SessionMode::simulated) {
      throw Error(ErrorCode::WrongMode, "manual sessions take enter-roll, not roll");
    }
    if (pending) throw Error(ErrorCode::PendingRollExists, "place the pending roll first");
    const double x = dist.support()[sample_index(dist, rng)];
    pending = x;
    ++version;
    return x;
  }

  void enter_roll(double x) {
    if (finished()) throw Error(ErrorCode::GameFinished, "every slot is filled");
    if (mode != SessionMode::manual) {
      throw Error(ErrorCode::WrongMode, "simulated sessions take roll, not enter-roll");
    }
    if (pending) throw Error(ErrorCode::PendingRollExists, "place the pending roll first");
    if (dist.index_of(x) == 0) {
      throw Error(ErrorCode::ValueNotInSupport, "value is not a support point");
    }
    pending = x;
    ++version;
  }

  void place(std::size_t slot, std::uint64_t expected_version) {
    if (expected_version != version) {
      throw Error(ErrorCode::VersionConflict,
                  "expected version " + std::to_string(expected_version) +
                      " but session is at " + std::to_string(version));
    }
    if (!pending) throw Error(ErrorCode::NoPendingRoll, "roll before placing");
    const auto it = std::lower_bound(remaining.begin(), remaining.end(), slot);
    if (it == remaining.end() || *it != slot) {
      throw Error(ErrorCode::SlotOccupiedOrUnknown,
                  "slot " + std::to_string(slot) + " is occupied or does not exist");
    }
    remaining.erase(it);
    board[slot - 1] = *pending;
    history.emplace_back(*pending, slot);
    banked += *pending * rewards[slot - 1];
    pending.reset();
    ++version;
  }

  json advice() const {
    if (!pending) throw Error(ErrorCode::NoPendingRoll, "no pending roll to advise on");
    const std::size_t m = remaining.size();
    const auto rest = remaining_rewards();
    const ThresholdRow row_m = row(m);
    const Advice adv = advise(dist, row_m, rest, *pending);

    json options = json::array();
    for (std::size_t j = 0; j < m; ++j) {
      options.push_back({{"slot", remaining[j]},
                         {"rank", j + 1},
                         {"reward", rest[j]},
                         {"whatif", banked + adv.whatif[j]}});
    }
    json thresholds = json::array();
    const std::size_t lo = adv.slot_rank > 3 ? adv.slot_rank - 3 : 1;
    const std::size_t hi = std::min(m > 0 ? m - 1 : 0, adv.slot_rank + 3);
    for (std::size_t n = lo; n <= hi; ++n) {
      thresholds.push_back({{"rank", n}, {"a", row_m.at(n)}});
    }
    return {{"id", id},
            {"version", version},
            {"pending_roll", *pending},
            {"banked", banked},
            {"recommended_slot", remaining[adv.slot_rank - 1]},
            {"recommended_rank", adv.slot_rank},
            {"recommended_whatif", banked + adv.whatif[adv.slot_rank - 1]},
            {"whatif", options},
            {"thresholds", thresholds}};
  }

  json snapshot() const {
    json slots = json::array();
    for (std::size_t s = 0; s < board.size(); ++s) {
      slots.push_back({{"slot", s + 1},
                       {"reward", rewards[s]},
                       {"value", board[s] ? json(*board[s]) : json(nullptr)}});
    }
    json hist = json::array();
    for (const auto& [x, slot] : history) hist.push_back({{"roll", x}, {"slot", slot}});

    const auto rest = remaining_rewards();
    const double optimal_rest = remaining_value(row(rest.size() + 1), rest);
    json out = {{"id", id},
                {"n", rewards.size()},
                {"mode", std::string(to_string(mode))},
                {"seed", seed},
                {"version", version},
                {"support", std::vector<double>(dist.support().begin(), dist.support().end())},
                {"probs", std::vector<double>(dist.probs().begin(), dist.probs().end())},
                {"rewards", rewards},
                {"board", slots},
                {"remaining", remaining},
                {"history", hist},
                {"pending_roll", pending ? json(*pending) : json(nullptr)},
                {"banked", banked},
                {"optimal_remaining_value", optimal_rest},
                {"expected_final_total", banked + optimal_rest},
                {"finished", finished()}};
    if (finished()) out["total_reward"] = banked;
    return out;
  }

  std::mutex mutex;
  const std::string id;
  const CreateRequest request;
  const DiscreteDistribution dist;
  const std::vector<double> rewards;
  const SessionMode mode;
  const std::uint64_t seed;
  std::shared_ptr<const ThresholdTable> table;

  CounterRng rng;
  std::vector<std::size_t> remaining;
  std::vector<std::optional<double>> board;
  std::vector<std::pair<double, std::size_t>> history;
  std::optional<double> pending;
  std::uint64_t version = 0;
  double banked = 0.0;
};

SessionStore::SessionStore() : id_key_(std::random_device{}()) {
  id_key_ = (id_key_ << 32) ^ std::random_device{}();
}

SessionStore::SessionStore(std::filesystem::path journal) : SessionStore() {
  if (std::filesystem::exists(journal)) replay(journal);
  journal_.emplace(journal, std::ios::app);
  if (!*journal_) throw Error(ErrorCode::ParseError, "cannot open journal " + journal.string());
}

SessionStore::~SessionStore() = default;

std::size_t SessionStore::size() const {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

std::shared_ptr<Session> SessionStore::find(const std::string& id) const {
  std::lock_guard lock(mutex_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::UnknownSession, "no session '" + id + "'");
  return it->second;
}

std::string SessionStore::fresh_id() {
  std::ostringstream out;
  out << std::hex << mix64(id_key_ ^ mix64(++next_id_ + kGolden));
  return out.str();
}

void SessionStore::journal(const json& entry) {
  std::lock_guard lock(journal_mutex_);
  if (!journal_) return;
  *journal_ << entry.dump() << '\n';
  journal_->flush();
}

json SessionStore::create(const CreateRequest& request) {
  std::shared_ptr<Session> session;
  {
    std::lock_guard lock(mutex_);
    std::string id;
    do {
      id = fresh_id();
    } while (sessions_.count(id));
    session = std::make_shared<Session>(id, request);
    sessions_.emplace(id, session);
  }
  journal({{"op", "create"}, {"id", session->id}, {"request", request.to_json()}});
  std::lock_guard lock(session->mutex);
  return session->snapshot();
}

json SessionStore::roll(const std::string& id) {
  auto session = find(id);
  std::lock_guard lock(session->mutex);
  const double x = session->roll();
  journal({{"op", "roll"}, {"id", id}, {"value", x}});
  return {{"id", id}, {"value", x}, {"version", session->version}};
}

json SessionStore::enter_roll(const std::string& id, double value) {
  auto session = find(id);
  std::lock_guard lock(session->mutex);
  session->enter_roll(value);
  journal({{"op", "enter_roll"}, {"id", id}, {"value", value}});
  return {{"id", id}, {"value", value}, {"version", session->version}};
}

json SessionStore::advice(const std::string& id) {
  auto session = find(id);
  std::lock_guard lock(session->mutex);
  return session->advice();
}

json SessionStore::place(const std::string& id, std::size_t slot,
                         std::uint64_t expected_version) {
  auto session = find(id);
  std::lock_guard lock(session->mutex);
  session->place(slot, expected_version);
  journal({{"op", "place"}, {"id", id}, {"slot", slot}});
  return session->snapshot();
}

json SessionStore::state(const std::string& id) {
  auto session = find(id);
  std::lock_guard lock(session->mutex);
  return session->snapshot();
}

void SessionStore::replay(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto where = path.string() + ":" + std::to_string(line_no);
    json entry;
    try {
      entry = json::parse(line);
    } catch (const json::parse_error&) {
      // a torn final write is the only expected corruption
      if (in.peek() == EOF) break;
      throw Error(ErrorCode::ParseError, "corrupt journal entry at " + where);
    }
    const auto op = entry.value("op", "");
    const auto id = entry.value("id", "");
    if (op == "create") {
      auto session = std::make_shared<Session>(id, CreateRequest::from_json(entry["request"]));
      std::lock_guard lock(mutex_);
      sessions_[id] = std::move(session);
      continue;
    }
    auto session = find(id);
    if (op == "roll") {
      if (session->roll() != entry.at("value").get<double>()) {
        throw Error(ErrorCode::ParseError, "journal diverged from the roll stream at " + where);
      }
    } else if (op == "enter_roll") {
      session->enter_roll(entry.at("value").get<double>());
    } else if (op == "place") {
      session->place(entry.at("slot").get<std::size_t>(), session->version);
    } else {
      throw Error(ErrorCode::ParseError, "unknown journal op at " + where);
    }
  }
}

int http_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnknownSession:
      return 404;
    case ErrorCode::PendingRollExists:
    case ErrorCode::NoPendingRoll:
    case ErrorCode::GameFinished:
    case ErrorCode::WrongMode:
    case ErrorCode::VersionConflict:
      return 409;
    default:
      return 400;
  }
}

struct HttpServer::Impl {
  SessionStore& store;
  httplib::Server server;

  explicit Impl(SessionStore& s) : store(s) {}
};

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, ErrorCode code, const std::string& message) {
  send_json(res, http_status(code),
            {{"code", std::string(to_string(code))}, {"message", message}});
}

json parse_body(const httplib::Request& req) {
  try {
    return json::parse(req.body.empty() ? "{}" : req.body);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid JSON body: ") + e.what());
  }
}

template <typename Handler>
httplib::Server::Handler guarded(Handler handler) {
  return [handler](const httplib::Request& req, httplib::Response& res) {
    try {
      send_json(res, 200, handler(req));
    } catch (const Error& e) {
      send_error(res, e.code(), e.what());
    } catch (const json::exception& e) {
      send_error(res, ErrorCode::ParseError, e.what());
    }
  };
}

}  // namespace

HttpServer::HttpServer(SessionStore& store, std::string static_dir)
    : impl_(std::make_unique<Impl>(store)) {
  auto& server = impl_->server;
  SessionStore* s = &store;

  server.Post("/api/session", guarded([s](const httplib::Request& req) {
                return s->create(CreateRequest::from_json(parse_body(req)));
              }));
  server.Post("/api/session/:id/roll", guarded([s](const httplib::Request& req) {
                return s->roll(req.path_params.at("id"));
              }));
  server.Post("/api/session/:id/enter-roll", guarded([s](const httplib::Request& req) {
                const auto body = parse_body(req);
                if (!body.contains("value") || !body["value"].is_number()) {
                  throw Error(ErrorCode::ParseError, "body needs a numeric \"value\"");
                }
                return s->enter_roll(req.path_params.at("id"), body["value"].get<double>());
              }));
  server.Get("/api/session/:id/advice", guarded([s](const httplib::Request& req) {
               return s->advice(req.path_params.at("id"));
             }));
  server.Post("/api/session/:id/place", guarded([s](const httplib::Request& req) {
                const auto body = parse_body(req);
                if (!body.contains("slot") || !body["slot"].is_number_unsigned() ||
                    !body.contains("version") || !body["version"].is_number_unsigned()) {
                  throw Error(ErrorCode::ParseError,
                              "body needs non-negative integer \"slot\" and \"version\"");
                }
                return s->place(req.path_params.at("id"), body["slot"].get<std::size_t>(),
                                body["version"].get<std::uint64_t>());
              }));
  server.Get("/api/session/:id", guarded([s](const httplib::Request& req) {
               return s->state(req.path_params.at("id"));
             }));

  if (!static_dir.empty()) server.set_mount_point("/", static_dir);
}

HttpServer::~HttpServer() = default;

int HttpServer::bind_any_port(const std::string& host) {
  return impl_->server.bind_to_any_port(host);
}

bool HttpServer::bind(const std::string& host, int port) {
  return impl_->server.bind_to_port(host, port);
}

bool HttpServer::listen_after_bind() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace assign
