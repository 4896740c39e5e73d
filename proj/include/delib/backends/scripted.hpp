#pragma once

#include <map>
#include <string>
#include <vector>

#include "delib/backend.hpp"

namespace delib {

// Replays canned replies. The reply chosen depends only on (round, purpose),
// so repeated calls are identical and repair paths can be scripted
// explicitly per round.
class ScriptedBackend : public AgentBackend {
 public:
  ScriptedBackend() = default;
  explicit ScriptedBackend(std::vector<std::string> round_replies,
                           std::string descriptor = "scripted")
      : round_replies_(std::move(round_replies)), descriptor_(std::move(descriptor)) {}

  std::string respond(const PromptBundle& prompt, double temperature,
                      RngStream& rng_stream) override;
  std::string descriptor() const override { return descriptor_; }

  void set_repair_reply(int round, std::string reply) { repair_replies_[round] = std::move(reply); }
  void set_ballot_reply(std::string reply) { ballot_reply_ = std::move(reply); }
  void set_ballot_repair_reply(std::string reply) { ballot_repair_reply_ = std::move(reply); }
  void set_clerk_reply(std::string reply) { clerk_reply_ = std::move(reply); }

  int call_count() const { return call_count_; }

  // Script of `rounds` valid replies (argument stub + STATE line) drawn from
  // `seed`, with a matching ballot. Used by replay fixtures and smoke runs.
  static std::shared_ptr<ScriptedBackend> random_valid(std::uint64_t seed, int rounds,
                                                       std::string descriptor = "scripted");

 private:
  std::vector<std::string> round_replies_;
  std::map<int, std::string> repair_replies_;
  std::string ballot_reply_ = R"({"decision": "A", "confidence": 50})";
  std::string ballot_repair_reply_;
  std::string clerk_reply_;
  std::string descriptor_ = "scripted";
  int call_count_ = 0;
};

}  // namespace delib
