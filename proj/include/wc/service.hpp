#pragma once

#include <condition_variable>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "wc/game.hpp"
#include "wc/transcript_io.hpp"

namespace httplib {
class Server;
}

namespace wc {

struct ServiceOptions {
  // Append-only event logs, one file per session, when non-empty.
  std::string event_log_dir;
  Vertex max_n = 60;
  int max_wait_ms = 30000;
};

struct ApiResponse {
  int status = 200;
  Json body;
};

enum class Role { Client, Waiter };

struct Session {
  std::string id;
  Role human = Role::Client;
  GameState state;
  std::unique_ptr<WaiterStrategy> waiter;  // machine side when human is Client
  std::unique_ptr<ClientStrategy> client;  // machine side when human is Waiter
  std::string machine_name;
  std::uint64_t seed = 0;
  std::optional<Offer> pending;
  std::optional<Forfeit> forfeit;
  bool finished = false;
  std::vector<Json> events;

  std::mutex mu;
  std::condition_variable cv;

  Session(std::string id, Role human, GameState s) : id(std::move(id)), human(human), state(std::move(s)) {}
};

// The session API without transport. Every body is canonical JSON.
class SessionManager {
 public:
  explicit SessionManager(ServiceOptions opts = {});

  ApiResponse create(const std::string& body);
  ApiResponse state(const std::string& id);
  ApiResponse offer(const std::string& id, const std::string& body);
  ApiResponse choice(const std::string& id, const std::string& body);
  // Events with seq > since; waits up to wait_ms for the first one.
  ApiResponse events(const std::string& id, std::uint64_t since, int wait_ms);
  ApiResponse transcript(const std::string& id);
  ApiResponse analysis(const std::string& id);

  // For push streaming: blocks until events past `since` exist or the
  // timeout passes. Returns false for an unknown session.
  bool next_events(const std::string& id, std::uint64_t since, int wait_ms, std::vector<Json>& out,
                   bool& done);

  std::shared_ptr<Session> find(const std::string& id);

 private:
  void emit(Session& s, const std::string& type, Json data);
  void machine_moves(Session& s);
  Json snapshot(const Session& s) const;
  Transcript session_transcript(const Session& s) const;
  void finish(Session& s);

  ServiceOptions opts_;
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t next_id_ = 1;
};

Json api_error(const std::string& code, const std::string& message);

void install_routes(httplib::Server& server, SessionManager& manager);

// Serves until the process is stopped.
int serve(const std::string& host, int port, ServiceOptions opts = {});

}  // namespace wc
