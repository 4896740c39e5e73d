#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "delib/prompts.hpp"

namespace delib {

std::string_view to_string(Role role);
std::optional<Role> role_from_string(std::string_view name);

// Committee slot order when roles are enabled. Slot i of a five-member
// committee carries kRoleOrder[i]; with roles disabled every slot is
// Role::None.
inline constexpr std::array<Role, 5> kRoleOrder = {
    Role::Chair, Role::Welfare, Role::Rights, Role::Equity, Role::Security};

struct RoleMandate {
  Role role_name = Role::None;
  std::string mandate_text;  // empty when ablated or roles are off
};

enum class Composition { uniform, mixed };

std::string_view to_string(Composition c);
std::optional<Composition> composition_from_string(std::string_view name);

// One experimental cell.
struct Condition {
  std::string scenario_id;
  double temperature = 0.0;
  int committee_size = 5;
  bool roles_enabled = false;
  Composition composition = Composition::uniform;
  std::vector<std::string> models;  // one model identifier per agent slot
  int memory_window = 15;
  std::optional<Role> ablation_target;
  int rounds = 20;
  int target_replicates = 20;

  // Throws ConfigError on invariant violations (memory_window >= 1,
  // rounds >= 2, ablation implies roles, model list matches N).
  void validate() const;

  // Canonical string covering every field that defines the cell; used for
  // grouping, run ids and seed derivation.
  std::string key() const;

  // Role carried by a committee slot (None when roles are off).
  Role slot_role(int agent_index) const;

  // Human-readable transcript label for a slot: the role name, or
  // "Agent N" when roles are off.
  std::string slot_label(int agent_index) const;
};

// Temperature rendered with the minimal decimal form used in artifact
// filenames: 0 -> "0.0", 0.7 -> "0.7", 1e-5 -> "1e-05".
std::string format_temperature(double t);

// `{scenario}__T{t}__N{N}__roles{True|False}[__multimodel][__ablate-{Role}].jsonl`
std::string condition_filename(const Condition& c);

}  // namespace delib
