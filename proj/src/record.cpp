#include "delib/record.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>

#include "delib/errors.hpp"

namespace delib {

char to_char(Option o) { return char('A' + int(o)); }

std::optional<Option> option_from_char(char c) {
  if (c < 'A' || c > 'C') return std::nullopt;
  return Option(c - 'A');
}

Option option_from_index(int i) { return Option(i); }

std::string_view to_string(ExclusionReason r) {
  switch (r) {
    case ExclusionReason::none: return "none";
    case ExclusionReason::parse_failure: return "parse_failure";
    case ExclusionReason::ballot_failure: return "ballot_failure";
    case ExclusionReason::backend_timeout: return "backend_timeout";
    case ExclusionReason::backend_rate_limit: return "backend_rate_limit";
    case ExclusionReason::backend_server_error: return "backend_server_error";
    case ExclusionReason::interrupted: return "interrupted";
  }
  return "none";
}

std::optional<ExclusionReason> exclusion_from_string(std::string_view name) {
  for (ExclusionReason r :
       {ExclusionReason::none, ExclusionReason::parse_failure, ExclusionReason::ballot_failure,
        ExclusionReason::backend_timeout, ExclusionReason::backend_rate_limit,
        ExclusionReason::backend_server_error, ExclusionReason::interrupted}) {
    if (to_string(r) == name) return r;
  }
  return std::nullopt;
}

namespace {

Json to_json(const PreferenceState& s) {
  return Json{{"pref", {s.pref[0], s.pref[1], s.pref[2]}},
              {"conf", s.conf},
              {"tags", {s.tags[0], s.tags[1]}}};
}

PreferenceState state_from_json(const Json& j) {
  PreferenceState s;
  const auto& pref = j.at("pref");
  s.pref = Vec3(pref.at(0).get<double>(), pref.at(1).get<double>(), pref.at(2).get<double>());
  s.conf = j.at("conf").get<int>();
  s.tags = {j.at("tags").at(0).get<std::string>(), j.at("tags").at(1).get<std::string>()};
  return s;
}

Json to_json(const TurnRecord& t) {
  Json j{{"round", t.round},
         {"agent_index", t.agent_index},
         {"role", to_string(t.role)},
         {"model", t.model},
         {"argument_text", t.argument_text},
         {"parse",
          {{"failure_kind", to_string(t.parse.failure_kind)}, {"repaired", t.parse.repaired}}}};
  if (t.parse.state)
    j["state"] = to_json(*t.parse.state);
  else
    j["state"] = nullptr;
  return j;
}

TurnRecord turn_from_json(const Json& j) {
  TurnRecord t;
  t.round = j.at("round").get<int>();
  t.agent_index = j.at("agent_index").get<int>();
  t.role = role_from_string(j.at("role").get<std::string>()).value_or(Role::None);
  t.model = j.at("model").get<std::string>();
  t.argument_text = j.at("argument_text").get<std::string>();
  const auto& p = j.at("parse");
  std::string kind = p.at("failure_kind").get<std::string>();
  t.parse.failure_kind = ParseFailure::none;
  for (ParseFailure f : {ParseFailure::none, ParseFailure::no_state_line,
                         ParseFailure::malformed_numbers, ParseFailure::simplex_violation,
                         ParseFailure::tag_violation}) {
    if (to_string(f) == kind) t.parse.failure_kind = f;
  }
  t.parse.repaired = p.at("repaired").get<bool>();
  if (!j.at("state").is_null()) t.parse.state = state_from_json(j.at("state"));
  return t;
}

}  // namespace

Json to_json(const Condition& c) {
  Json j{{"scenario_id", c.scenario_id},
         {"temperature", c.temperature},
         {"committee_size", c.committee_size},
         {"roles_enabled", c.roles_enabled},
         {"composition", to_string(c.composition)},
         {"models", c.models},
         {"memory_window", c.memory_window},
         {"ablation_target", nullptr},
         {"rounds", c.rounds},
         {"target_replicates", c.target_replicates}};
  if (c.ablation_target) j["ablation_target"] = to_string(*c.ablation_target);
  return j;
}

Condition condition_from_json(const Json& j) {
  Condition c;
  c.scenario_id = j.at("scenario_id").get<std::string>();
  c.temperature = j.at("temperature").get<double>();
  c.committee_size = j.at("committee_size").get<int>();
  c.roles_enabled = j.at("roles_enabled").get<bool>();
  auto comp = composition_from_string(j.at("composition").get<std::string>());
  if (!comp) throw ConfigError("condition: unknown composition");
  c.composition = *comp;
  c.models = j.at("models").get<std::vector<std::string>>();
  c.memory_window = j.at("memory_window").get<int>();
  if (!j.at("ablation_target").is_null()) {
    auto role = role_from_string(j.at("ablation_target").get<std::string>());
    if (!role) throw ConfigError("condition: unknown ablation_target role");
    c.ablation_target = *role;
  }
  c.rounds = j.at("rounds").get<int>();
  c.target_replicates = j.at("target_replicates").get<int>();
  return c;
}

Json to_json(const RunRecord& r) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["run_id"] = r.run_id;
  j["condition"] = to_json(r.condition);
  j["replicate_index"] = r.replicate_index;
  j["seed"] = r.seed;
  j["agent_order"] = r.agent_order;
  Json turns = Json::array();
  for (const auto& t : r.turns) turns.push_back(to_json(t));
  j["turns"] = std::move(turns);
  Json ballots = Json::array();
  for (const auto& b : r.ballots) {
    ballots.push_back(Json{{"agent_index", b.agent_index},
                           {"decision", std::string(1, to_char(b.decision))},
                           {"confidence", b.confidence}});
  }
  j["ballots"] = std::move(ballots);
  if (r.clerk) {
    j["clerk"] = Json{{"decision", std::string(1, to_char(r.clerk->decision))},
                      {"majority_count", r.clerk->majority_count},
                      {"total", r.clerk->total},
                      {"strict_majority", r.clerk->strict_majority},
                      {"tie_break", r.clerk->tie_break}};
  } else {
    j["clerk"] = nullptr;
  }
  j["excluded"] = r.excluded;
  j["exclusion_reason"] = std::string(to_string(r.exclusion_reason));
  if (r.branch) {
    j["branch"] = Json{{"base_run_id", r.branch->base_run_id},
                       {"branch_index", r.branch->branch_index},
                       {"branch_round", r.branch->branch_round}};
  } else {
    j["branch"] = nullptr;
  }
  j["timestamps"] = Json{{"started_at", r.started_at}, {"finished_at", r.finished_at}};
  return j;
}

RunRecord run_record_from_json(const Json& j) {
  int version = j.at("schema_version").get<int>();
  if (version != kSchemaVersion)
    throw IoError("run record: unsupported schema_version " + std::to_string(version));
  RunRecord r;
  r.run_id = j.at("run_id").get<std::string>();
  r.condition = condition_from_json(j.at("condition"));
  r.replicate_index = j.at("replicate_index").get<int>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.agent_order = j.at("agent_order").get<std::vector<int>>();
  for (const auto& t : j.at("turns")) r.turns.push_back(turn_from_json(t));
  for (const auto& b : j.at("ballots")) {
    Ballot ballot;
    ballot.agent_index = b.at("agent_index").get<int>();
    auto opt = option_from_char(b.at("decision").get<std::string>().at(0));
    if (!opt) throw IoError("run record: ballot decision outside A..C");
    ballot.decision = *opt;
    ballot.confidence = b.at("confidence").get<int>();
    r.ballots.push_back(ballot);
  }
  if (!j.at("clerk").is_null()) {
    const auto& c = j.at("clerk");
    CommitteeDecision d;
    auto opt = option_from_char(c.at("decision").get<std::string>().at(0));
    if (!opt) throw IoError("run record: clerk decision outside A..C");
    d.decision = *opt;
    d.majority_count = c.at("majority_count").get<int>();
    d.total = c.at("total").get<int>();
    d.strict_majority = c.at("strict_majority").get<bool>();
    d.tie_break = c.at("tie_break").get<bool>();
    r.clerk = d;
  }
  r.excluded = j.at("excluded").get<bool>();
  auto reason = exclusion_from_string(j.at("exclusion_reason").get<std::string>());
  if (!reason) throw IoError("run record: unknown exclusion_reason");
  r.exclusion_reason = *reason;
  if (!j.at("branch").is_null()) {
    const auto& b = j.at("branch");
    r.branch = BranchInfo{b.at("base_run_id").get<std::string>(),
                          b.at("branch_index").get<int>(), b.at("branch_round").get<int>()};
  }
  const auto& ts = j.at("timestamps");
  r.started_at = ts.at("started_at").get<std::string>();
  r.finished_at = ts.at("finished_at").get<std::string>();
  return r;
}

std::string serialize_run(const RunRecord& r) { return to_json(r).dump(); }

RunRecord parse_run(std::string_view line) {
  Json j = Json::parse(line, nullptr, true);
  return run_record_from_json(j);
}

std::string iso8601_now() {
  using namespace std::chrono;
  auto now = system_clock::now();
  std::time_t t = system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  auto millis = duration_cast<milliseconds>(now.time_since_epoch()) % 1000;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec, int(millis.count()));
  return buf;
}

}  // namespace delib
