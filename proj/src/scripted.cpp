#include "delib/backends/scripted.hpp"

namespace delib {

std::string ScriptedBackend::respond(const PromptBundle& prompt, double /*temperature*/,
                                     RngStream& /*rng_stream*/) {
  ++call_count_;
  switch (prompt.purpose) {
    case CallPurpose::turn: {
      if (prompt.round < 1 || std::size_t(prompt.round) > round_replies_.size())
        throw BackendError(BackendFailureClass::server_error,
                           "scripted backend: no reply for round " + std::to_string(prompt.round));
      return round_replies_[std::size_t(prompt.round) - 1];
    }
    case CallPurpose::repair: {
      auto it = repair_replies_.find(prompt.round);
      return it == repair_replies_.end() ? std::string() : it->second;
    }
    case CallPurpose::ballot:
      return ballot_reply_;
    case CallPurpose::ballot_repair:
      return ballot_repair_reply_;
    case CallPurpose::clerk:
      return clerk_reply_;
  }
  return {};
}

std::shared_ptr<ScriptedBackend> ScriptedBackend::random_valid(std::uint64_t seed, int rounds,
                                                               std::string descriptor) {
  static const char* kTagPool[] = {"cost",   "fairness", "risk",  "rights",
                                   "safety", "equity",   "trust", "precedent"};
  RngStream rng(seed);
  std::vector<std::string> replies;
  replies.reserve(std::size_t(rounds));
  PreferenceState last;
  for (int r = 1; r <= rounds; ++r) {
    Vec3 raw(rng.uniform01() + 1e-3, rng.uniform01() + 1e-3, rng.uniform01() + 1e-3);
    PreferenceState s;
    s.pref = raw / raw.sum();
    s.conf = int(rng.uniform_below(101));
    s.tags = {kTagPool[rng.uniform_below(8)], kTagPool[rng.uniform_below(8)]};
    last = s;
    replies.push_back("Round " + std::to_string(r) + ": position held with scripted rationale.\n" +
                      format_state_line(s));
  }
  auto backend = std::make_shared<ScriptedBackend>(std::move(replies), std::move(descriptor));
  char decision = char('A' + argmax_option(last.pref));
  backend->set_ballot_reply(std::string("{\"decision\": \"") + decision +
                            "\", \"confidence\": " + std::to_string(last.conf) + "}");
  return backend;
}

}  // namespace delib
