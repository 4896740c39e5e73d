#pragma once

#include <optional>
#include <string>
#include <vector>

#include "delib/backend.hpp"
#include "delib/condition.hpp"
#include "delib/record.hpp"

namespace delib {

struct TranscriptEntry {
  int round = 0;
  int agent_index = 0;
  std::string label;
  std::string text;
};

struct EngineOptions {
  ParseOptions parse;
  // When set, the final committee decision comes from an extra clerk call
  // against clerk_backend instead of the deterministic tally.
  bool use_llm_clerk = false;
  BackendPtr clerk_backend;
};

// Committee mandates for a condition: per-slot role plus mandate text,
// already reflecting roles_enabled and any ablation.
std::vector<RoleMandate> build_mandates(const Condition& condition);

// Blanks the target's mandate text while keeping the seat, so committee
// size is preserved. Idempotent. Throws ConfigError on an unknown target.
std::vector<RoleMandate> apply_ablation(std::vector<RoleMandate> mandates, Role target);

// The most recent min(k, len) transcript entries, chronological.
std::vector<WindowEntry> select_window(const std::vector<TranscriptEntry>& transcript, int k);

// Fixed text rendering of the committee state table
// (columns: role, p_A, p_B, p_C, conf, tags; unknown rows as em-dashes).
std::string render_state_table(const std::vector<StateTableRow>& rows);

// Deterministic majority tally. Ties on the top count break by the fixed
// A < B < C option order and set tie_break; strict_majority means
// count >= ceil((N+1)/2).
CommitteeDecision clerk_aggregate(const std::vector<Ballot>& ballots);

// Last syntactically valid ballot object embedded in `text`, or nullopt.
std::optional<Ballot> parse_ballot_reply(std::string_view text, int agent_index);

// Last valid clerk object {"decision","majority_count","total"} in `text`.
std::optional<CommitteeDecision> parse_clerk_reply(std::string_view text);

// One deliberation in progress. Strictly sequential; a session owns its
// state exclusively.
class Session {
 public:
  Session(Condition condition, std::vector<BackendPtr> backends, std::uint64_t seed,
          std::string scenario_text, EngineOptions options = {});

  // Seeds transcript, state table and speaking order from a base run's
  // rounds 1..branch_round; the session then continues at branch_round+1.
  void preload_prefix(const RunRecord& base, int branch_round);

  // Calls every agent once in the fixed order. Returns false when the run
  // became excluded (remaining agents are skipped).
  bool execute_round(int round_index);

  // Post-round private ballots, one agent at a time.
  bool collect_ballots();

  PromptBundle assemble_context(int agent_index, CallPurpose purpose, int round) const;

  const std::vector<TranscriptEntry>& transcript() const { return transcript_; }
  const std::vector<StateTableRow>& state_table() const { return state_table_; }
  const std::vector<int>& agent_order() const { return agent_order_; }
  bool excluded() const { return excluded_; }

  // Runs all remaining rounds, ballots and clerk, then assembles the record.
  RunRecord finish(const std::string& run_id, int replicate_index,
                   std::optional<BranchInfo> branch = std::nullopt);

 private:
  void exclude(ExclusionReason reason);
  bool handle_turn(int round_index, int agent_index);
  std::string system_text_for(int agent_index) const;

  Condition condition_;
  std::vector<BackendPtr> backends_;
  std::uint64_t seed_;
  std::string scenario_text_;
  EngineOptions options_;
  std::vector<RoleMandate> mandates_;
  std::vector<int> agent_order_;
  std::vector<RngStream> agent_rngs_;
  std::vector<TranscriptEntry> transcript_;
  std::vector<StateTableRow> state_table_;
  std::vector<TurnRecord> turns_;
  std::vector<Ballot> ballots_;
  std::optional<CommitteeDecision> clerk_;
  bool excluded_ = false;
  ExclusionReason reason_ = ExclusionReason::none;
  int first_round_ = 1;
};

struct RunLabel {
  std::string run_id;
  int replicate_index = 0;
  std::optional<BranchInfo> branch;
};

// Executes a full deliberation: `rounds` rounds, private ballots, clerk
// aggregation. Identical (condition, scripted backends, seed) produce an
// identical record modulo timestamps.
RunRecord run_deliberation(const Condition& condition, std::vector<BackendPtr> backends,
                           std::uint64_t seed, const std::string& scenario_text,
                           const RunLabel& label = {}, const EngineOptions& options = {});

// Continuation of `base` from branch_round: transcript prefix and state
// table are reconstructed, rounds branch_round+1..rounds run under a fresh
// seed. Throws ConfigError when base is excluded or branch_round is out of
// range.
RunRecord run_continuation(const Condition& condition, std::vector<BackendPtr> backends,
                           std::uint64_t seed, const std::string& scenario_text,
                           const RunRecord& base, int branch_round, int branch_index,
                           const EngineOptions& options = {});

}  // namespace delib
