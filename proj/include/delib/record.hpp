#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "delib/condition.hpp"
#include "delib/state.hpp"

namespace delib {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

enum class Option { A = 0, B = 1, C = 2 };

char to_char(Option o);
std::optional<Option> option_from_char(char c);
Option option_from_index(int i);

struct Ballot {
  int agent_index = 0;
  Option decision = Option::A;
  int confidence = 0;
};

struct CommitteeDecision {
  Option decision = Option::A;
  int majority_count = 0;
  int total = 0;
  bool strict_majority = false;
  bool tie_break = false;  // top count was shared and option order decided
};

struct TurnRecord {
  int round = 0;       // 1-based
  int agent_index = 0; // committee slot
  Role role = Role::None;
  std::string model;
  std::string argument_text;  // raw reply, STATE line included
  ParseOutcome parse;
  // parse.state is present iff the turn parsed, directly or after repair
};

enum class ExclusionReason {
  none,
  parse_failure,
  ballot_failure,
  backend_timeout,
  backend_rate_limit,
  backend_server_error,
  interrupted,
};

std::string_view to_string(ExclusionReason r);
std::optional<ExclusionReason> exclusion_from_string(std::string_view name);

struct BranchInfo {
  std::string base_run_id;
  int branch_index = 0;
  int branch_round = 0;
};

// One replicate, complete and self-describing. Serialized as a single JSON
// line; field names and nesting are frozen per docs/run_schema.md and
// stamped with schema_version.
struct RunRecord {
  std::string run_id;
  Condition condition;
  int replicate_index = 0;
  std::uint64_t seed = 0;
  std::vector<int> agent_order;  // the per-run fixed speaking order
  std::vector<TurnRecord> turns;
  std::vector<Ballot> ballots;
  std::optional<CommitteeDecision> clerk;
  bool excluded = false;
  ExclusionReason exclusion_reason = ExclusionReason::none;
  std::optional<BranchInfo> branch;
  std::string started_at;   // ISO 8601 UTC; excluded from replay comparisons
  std::string finished_at;

  bool usable() const { return !excluded; }
};

Json to_json(const Condition& c);
Condition condition_from_json(const Json& j);

Json to_json(const RunRecord& r);
RunRecord run_record_from_json(const Json& j);

// One-line serialization used for JSONL persistence (no trailing newline).
std::string serialize_run(const RunRecord& r);
RunRecord parse_run(std::string_view line);

std::string iso8601_now();

}  // namespace delib
