#include "delib/engine.hpp"

#include <cstdio>
#include <regex>

#include <nlohmann/json.hpp>

#include "delib/errors.hpp"
#include "delib/prompts.hpp"

namespace delib {

std::string PromptBundle::render_user_text() const {
  std::string text = scenario_text;
  if (!window.empty()) {
    text += "\n\nRECENT ARGUMENTS (most recent last):";
    for (const auto& entry : window) {
      text += "\n[" + entry.label + "] " + entry.text;
    }
  }
  text += "\n\nCOMMITTEE STATE TABLE:\n" + state_table_text;
  if (!instruction.empty()) {
    text += "\n\n" + instruction;
  } else {
    text += "\n\nIt is round " + std::to_string(round) +
            ". Provide your argument and end with your STATE line.";
  }
  return text;
}

std::vector<RoleMandate> build_mandates(const Condition& condition) {
  std::vector<RoleMandate> mandates;
  mandates.reserve(std::size_t(condition.committee_size));
  for (int i = 0; i < condition.committee_size; ++i) {
    Role role = condition.slot_role(i);
    mandates.push_back({role, std::string(prompts::mandate(role))});
  }
  if (condition.ablation_target) return apply_ablation(std::move(mandates), *condition.ablation_target);
  return mandates;
}

std::vector<RoleMandate> apply_ablation(std::vector<RoleMandate> mandates, Role target) {
  if (target == Role::None) throw ConfigError("ablation: target must name one of the five roles");
  bool found = false;
  for (auto& mandate : mandates) {
    if (mandate.role_name == target) {
      mandate.mandate_text.clear();
      found = true;
    }
  }
  if (!found) throw ConfigError("ablation: role not present in committee");
  return mandates;
}

std::vector<WindowEntry> select_window(const std::vector<TranscriptEntry>& transcript, int k) {
  std::size_t take = std::min(std::size_t(std::max(k, 0)), transcript.size());
  std::vector<WindowEntry> window;
  window.reserve(take);
  for (std::size_t i = transcript.size() - take; i < transcript.size(); ++i)
    window.push_back({transcript[i].label, transcript[i].text});
  return window;
}

std::string render_state_table(const std::vector<StateTableRow>& rows) {
  std::string table = "role | p_A | p_B | p_C | conf | tags";
  for (const auto& row : rows) {
    table += '\n';
    if (row.state) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "%s | %.6f | %.6f | %.6f | %d | ", row.label.c_str(),
                    row.state->pref[0], row.state->pref[1], row.state->pref[2], row.state->conf);
      table += buf;
      table += "[\"" + row.state->tags[0] + "\",\"" + row.state->tags[1] + "\"]";
    } else {
      table += row.label + " | — | — | — | — | —";
    }
  }
  return table;
}

CommitteeDecision clerk_aggregate(const std::vector<Ballot>& ballots) {
  int counts[3] = {0, 0, 0};
  for (const auto& b : ballots) counts[int(b.decision)]++;
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (counts[i] > counts[best]) best = i;
  bool tie = false;
  for (int i = 0; i < 3; ++i)
    if (i != best && counts[i] == counts[best]) tie = true;

  CommitteeDecision decision;
  decision.decision = option_from_index(best);
  decision.majority_count = counts[best];
  decision.total = int(ballots.size());
  decision.strict_majority = counts[best] >= (int(ballots.size()) + 2) / 2;
  decision.tie_break = tie;
  return decision;
}

namespace {

// Flat {...} spans, tried in order; ballots and clerk objects are not
// nested so this is sufficient and keeps the last-match policy cheap.
const std::regex& json_object_regex() {
  static const std::regex re(R"(\{[^{}]*\})");
  return re;
}

template <typename Fn>
auto last_valid_json(std::string_view text, Fn&& validate)
    -> decltype(validate(nlohmann::json{})) {
  using Result = decltype(validate(nlohmann::json{}));
  Result best{};
  auto begin = std::cregex_iterator(text.data(), text.data() + text.size(), json_object_regex());
  for (auto it = begin; it != std::cregex_iterator(); ++it) {
    nlohmann::json j = nlohmann::json::parse(it->str(), nullptr, false);
    if (j.is_discarded()) continue;
    if (auto candidate = validate(j)) best = candidate;
  }
  return best;
}

}  // namespace

std::optional<Ballot> parse_ballot_reply(std::string_view text, int agent_index) {
  return last_valid_json(text, [&](const nlohmann::json& j) -> std::optional<Ballot> {
    if (!j.is_object() || !j.contains("decision") || !j.contains("confidence"))
      return std::nullopt;
    if (!j["decision"].is_string() || j["decision"].get<std::string>().size() != 1)
      return std::nullopt;
    auto option = option_from_char(j["decision"].get<std::string>()[0]);
    if (!option) return std::nullopt;
    if (!j["confidence"].is_number_integer()) return std::nullopt;
    int conf = j["confidence"].get<int>();
    if (conf < 0 || conf > 100) return std::nullopt;
    return Ballot{agent_index, *option, conf};
  });
}

std::optional<CommitteeDecision> parse_clerk_reply(std::string_view text) {
  return last_valid_json(text, [&](const nlohmann::json& j) -> std::optional<CommitteeDecision> {
    if (!j.is_object() || !j.contains("decision") || !j.contains("majority_count") ||
        !j.contains("total"))
      return std::nullopt;
    if (!j["decision"].is_string() || j["decision"].get<std::string>().size() != 1)
      return std::nullopt;
    auto option = option_from_char(j["decision"].get<std::string>()[0]);
    if (!option) return std::nullopt;
    if (!j["majority_count"].is_number_integer() || !j["total"].is_number_integer())
      return std::nullopt;
    CommitteeDecision d;
    d.decision = *option;
    d.majority_count = j["majority_count"].get<int>();
    d.total = j["total"].get<int>();
    return d;
  });
}

Session::Session(Condition condition, std::vector<BackendPtr> backends, std::uint64_t seed,
                 std::string scenario_text, EngineOptions options)
    : condition_(std::move(condition)),
      backends_(std::move(backends)),
      seed_(seed),
      scenario_text_(std::move(scenario_text)),
      options_(std::move(options)) {
  condition_.validate();
  if (int(backends_.size()) != condition_.committee_size)
    throw ConfigError("session: one backend per committee seat required");
  if (options_.use_llm_clerk && !options_.clerk_backend)
    throw ConfigError("session: llm clerk mode requires a clerk backend");

  mandates_ = build_mandates(condition_);

  RngStream order_rng(derive_seed(seed_, "agent-order"));
  agent_order_ = order_rng.permutation(condition_.committee_size);

  agent_rngs_.reserve(std::size_t(condition_.committee_size));
  for (int i = 0; i < condition_.committee_size; ++i)
    agent_rngs_.emplace_back(derive_seed(seed_, "agent-stream-" + std::to_string(i)));

  state_table_.reserve(std::size_t(condition_.committee_size));
  for (int i = 0; i < condition_.committee_size; ++i)
    state_table_.push_back({i, condition_.slot_label(i), std::nullopt});
}

void Session::preload_prefix(const RunRecord& base, int branch_round) {
  if (base.excluded) throw ConfigError("continuation: base run is excluded");
  if (branch_round < 1 || branch_round >= condition_.rounds)
    throw ConfigError("continuation: branch_round must be in [1, rounds)");
  agent_order_ = base.agent_order;
  for (const auto& turn : base.turns) {
    if (turn.round > branch_round) continue;
    transcript_.push_back(
        {turn.round, turn.agent_index, condition_.slot_label(turn.agent_index), turn.argument_text});
    if (turn.parse.state) state_table_[std::size_t(turn.agent_index)].state = turn.parse.state;
  }
  first_round_ = branch_round + 1;
}

std::string Session::system_text_for(int agent_index) const {
  const auto& mandate = mandates_[std::size_t(agent_index)];
  std::string text(prompts::kPreamble);
  if (!mandate.mandate_text.empty()) {
    text += "\n\n";
    text += mandate.mandate_text;
  }
  return text;
}

PromptBundle Session::assemble_context(int agent_index, CallPurpose purpose, int round) const {
  PromptBundle bundle;
  bundle.purpose = purpose;
  bundle.round = round;
  bundle.agent_index = agent_index;
  bundle.role = mandates_[std::size_t(agent_index)].role_name;
  bundle.system_text = system_text_for(agent_index);
  bundle.scenario_text = scenario_text_;
  bundle.window = select_window(transcript_, condition_.memory_window);
  bundle.state_table = state_table_;
  bundle.state_table_text = render_state_table(state_table_);
  if (purpose == CallPurpose::ballot) bundle.instruction = std::string(prompts::kBallot);
  return bundle;
}

void Session::exclude(ExclusionReason reason) {
  excluded_ = true;
  reason_ = reason;
}

namespace {

ExclusionReason reason_for(const BackendError& error) {
  switch (error.failure_class()) {
    case BackendFailureClass::timeout: return ExclusionReason::backend_timeout;
    case BackendFailureClass::rate_limit: return ExclusionReason::backend_rate_limit;
    case BackendFailureClass::server_error: return ExclusionReason::backend_server_error;
  }
  return ExclusionReason::backend_server_error;
}

}  // namespace

bool Session::handle_turn(int round_index, int agent_index) {
  auto& backend = *backends_[std::size_t(agent_index)];
  auto& rng = agent_rngs_[std::size_t(agent_index)];

  PromptBundle bundle = assemble_context(agent_index, CallPurpose::turn, round_index);
  std::string reply;
  try {
    reply = backend.respond(bundle, condition_.temperature, rng);
  } catch (const BackendError& error) {
    exclude(reason_for(error));
    return false;
  }

  ParseOutcome outcome = parse_state_line(reply, options_.parse);
  if (!outcome.ok()) {
    PromptBundle repair = bundle;
    repair.purpose = CallPurpose::repair;
    repair.instruction = std::string(repair_prompt());
    repair.prior_reply = reply;
    std::string repaired_reply;
    try {
      repaired_reply = backend.respond(repair, condition_.temperature, rng);
    } catch (const BackendError& error) {
      exclude(reason_for(error));
      return false;
    }
    ParseOutcome second = parse_state_line(repaired_reply, options_.parse);
    if (second.ok()) {
      outcome = second;
      outcome.repaired = true;
    } else {
      outcome = second;  // terminal failure kind from the repair attempt
    }
  }

  TurnRecord turn;
  turn.round = round_index;
  turn.agent_index = agent_index;
  turn.role = mandates_[std::size_t(agent_index)].role_name;
  turn.model = backend.descriptor();
  turn.argument_text = reply;
  turn.parse = outcome;
  turns_.push_back(turn);

  if (!outcome.ok()) {
    exclude(ExclusionReason::parse_failure);
    return false;
  }

  state_table_[std::size_t(agent_index)].state = outcome.state;
  transcript_.push_back({round_index, agent_index, condition_.slot_label(agent_index), reply});
  return true;
}

bool Session::execute_round(int round_index) {
  if (excluded_) return false;
  for (int agent_index : agent_order_) {
    if (!handle_turn(round_index, agent_index)) return false;
  }
  return true;
}

bool Session::collect_ballots() {
  if (excluded_) return false;
  for (int i = 0; i < condition_.committee_size; ++i) {
    auto& backend = *backends_[std::size_t(i)];
    auto& rng = agent_rngs_[std::size_t(i)];
    PromptBundle bundle = assemble_context(i, CallPurpose::ballot, condition_.rounds);
    std::string reply;
    try {
      reply = backend.respond(bundle, condition_.temperature, rng);
    } catch (const BackendError& error) {
      exclude(reason_for(error));
      return false;
    }
    auto ballot = parse_ballot_reply(reply, i);
    if (!ballot) {
      PromptBundle repair = bundle;
      repair.purpose = CallPurpose::ballot_repair;
      repair.instruction = std::string(prompts::kBallotRepair);
      repair.prior_reply = reply;
      try {
        reply = backend.respond(repair, condition_.temperature, rng);
      } catch (const BackendError& error) {
        exclude(reason_for(error));
        return false;
      }
      ballot = parse_ballot_reply(reply, i);
    }
    if (!ballot) {
      exclude(ExclusionReason::ballot_failure);
      return false;
    }
    ballots_.push_back(*ballot);
  }
  return true;
}

RunRecord Session::finish(const std::string& run_id, int replicate_index,
                          std::optional<BranchInfo> branch) {
  RunRecord record;
  record.started_at = iso8601_now();

  for (int round = first_round_; round <= condition_.rounds && !excluded_; ++round)
    execute_round(round);
  if (!excluded_) collect_ballots();

  if (!excluded_) {
    if (options_.use_llm_clerk) {
      std::string rendered;
      for (const auto& ballot : ballots_) {
        rendered += condition_.slot_label(ballot.agent_index) + ": {\"decision\": \"" +
                    to_char(ballot.decision) + "\", \"confidence\": " +
                    std::to_string(ballot.confidence) + "}\n";
      }
      PromptBundle bundle;
      bundle.purpose = CallPurpose::clerk;
      bundle.round = condition_.rounds;
      bundle.scenario_text = scenario_text_;
      bundle.system_text = prompts::clerk_prompt(rendered);
      bundle.instruction = bundle.system_text;
      RngStream clerk_rng(derive_seed(seed_, "clerk"));
      std::optional<CommitteeDecision> decision;
      try {
        std::string reply = options_.clerk_backend->respond(bundle, condition_.temperature, clerk_rng);
        decision = parse_clerk_reply(reply);
      } catch (const BackendError& error) {
        exclude(reason_for(error));
      }
      if (!excluded_) {
        if (decision) {
          // strictness and ties are always derived from the ballots
          CommitteeDecision tally = clerk_aggregate(ballots_);
          decision->strict_majority = tally.strict_majority;
          decision->tie_break = tally.tie_break;
          clerk_ = decision;
        } else {
          exclude(ExclusionReason::ballot_failure);
        }
      }
    } else {
      clerk_ = clerk_aggregate(ballots_);
    }
  }

  record.run_id = run_id;
  record.condition = condition_;
  record.replicate_index = replicate_index;
  record.seed = seed_;
  record.agent_order = agent_order_;
  record.turns = turns_;
  record.ballots = ballots_;
  record.clerk = clerk_;
  record.excluded = excluded_;
  record.exclusion_reason = reason_;
  record.branch = std::move(branch);
  record.finished_at = iso8601_now();
  return record;
}

RunRecord run_deliberation(const Condition& condition, std::vector<BackendPtr> backends,
                           std::uint64_t seed, const std::string& scenario_text,
                           const RunLabel& label, const EngineOptions& options) {
  Session session(condition, std::move(backends), seed, scenario_text, options);
  std::string run_id =
      label.run_id.empty() ? condition.key() + "#r" + std::to_string(label.replicate_index)
                           : label.run_id;
  return session.finish(run_id, label.replicate_index, label.branch);
}

RunRecord run_continuation(const Condition& condition, std::vector<BackendPtr> backends,
                           std::uint64_t seed, const std::string& scenario_text,
                           const RunRecord& base, int branch_round, int branch_index,
                           const EngineOptions& options) {
  Session session(condition, std::move(backends), seed, scenario_text, options);
  session.preload_prefix(base, branch_round);
  BranchInfo info{base.run_id, branch_index, branch_round};
  std::string run_id = base.run_id + "/branch-" + std::to_string(branch_index);
  return session.finish(run_id, base.replicate_index, info);
}

}  // namespace delib
