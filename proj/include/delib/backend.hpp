#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "delib/condition.hpp"
#include "delib/rng.hpp"
#include "delib/state.hpp"

namespace delib {

enum class CallPurpose { turn, repair, ballot, ballot_repair, clerk };

struct WindowEntry {
  std::string label;  // role name or "Agent N"
  std::string text;
};

struct StateTableRow {
  int agent_index = 0;
  std::string label;
  std::optional<PreferenceState> state;  // nullopt until the first parse
};

// Everything one agent call sees. Text fields are what a remote model
// receives; the structured fields mirror them so deterministic local
// backends do not have to re-parse their own prompt.
struct PromptBundle {
  CallPurpose purpose = CallPurpose::turn;
  int round = 0;
  int agent_index = 0;
  Role role = Role::None;
  std::string system_text;
  std::string scenario_text;
  std::vector<WindowEntry> window;
  std::string state_table_text;
  std::vector<StateTableRow> state_table;
  std::string instruction;   // repair / ballot / clerk text, empty for turns
  std::string prior_reply;   // the failed reply, present on repair calls

  // Single user-message rendering used by chat-style backends.
  std::string render_user_text() const;
};

enum class BackendFailureClass { timeout, rate_limit, server_error };

class BackendError : public std::runtime_error {
 public:
  BackendError(BackendFailureClass cls, const std::string& what)
      : std::runtime_error(what), class_(cls) {}
  BackendFailureClass failure_class() const { return class_; }

 private:
  BackendFailureClass class_;
};

// One committee seat's implementation. Scripted and synthetic backends are
// pure functions of (prompt, rng_stream state); the remote adapter is
// explicitly non-deterministic.
class AgentBackend {
 public:
  virtual ~AgentBackend() = default;
  virtual std::string respond(const PromptBundle& prompt, double temperature,
                              RngStream& rng_stream) = 0;
  virtual std::string descriptor() const = 0;
};

using BackendPtr = std::shared_ptr<AgentBackend>;

}  // namespace delib
