#include "delib/condition.hpp"

#include <charconv>
#include <cstdio>

#include "delib/errors.hpp"

namespace delib {

std::string_view to_string(Role role) {
  switch (role) {
    case Role::Chair: return "Chair";
    case Role::Welfare: return "Welfare";
    case Role::Rights: return "Rights";
    case Role::Equity: return "Equity";
    case Role::Security: return "Security";
    case Role::None: return "None";
  }
  return "None";
}

std::optional<Role> role_from_string(std::string_view name) {
  if (name == "Chair") return Role::Chair;
  if (name == "Welfare") return Role::Welfare;
  if (name == "Rights") return Role::Rights;
  if (name == "Equity") return Role::Equity;
  if (name == "Security") return Role::Security;
  if (name == "None") return Role::None;
  return std::nullopt;
}

std::string_view to_string(Composition c) {
  return c == Composition::uniform ? "uniform" : "mixed";
}

std::optional<Composition> composition_from_string(std::string_view name) {
  if (name == "uniform") return Composition::uniform;
  if (name == "mixed") return Composition::mixed;
  return std::nullopt;
}

void Condition::validate() const {
  if (scenario_id.empty()) throw ConfigError("condition: scenario_id is empty");
  if (temperature < 0.0) throw ConfigError("condition: temperature must be >= 0");
  if (committee_size < 1) throw ConfigError("condition: committee_size must be >= 1");
  if (memory_window < 1) throw ConfigError("condition: memory_window must be >= 1");
  if (rounds < 2) throw ConfigError("condition: rounds must be >= 2");
  if (target_replicates < 1) throw ConfigError("condition: target_replicates must be >= 1");
  if (ablation_target && !roles_enabled)
    throw ConfigError("condition: ablation_target requires roles_enabled");
  if (ablation_target && *ablation_target == Role::None)
    throw ConfigError("condition: ablation_target must name one of the five roles");
  if (roles_enabled && committee_size != int(kRoleOrder.size()))
    throw ConfigError("condition: roles_enabled requires committee_size 5");
  if (!models.empty() && int(models.size()) != committee_size)
    throw ConfigError("condition: models list must have one entry per agent slot");
}

std::string Condition::key() const {
  std::string key = scenario_id;
  key += "|T=";
  key += format_temperature(temperature);
  key += "|N=" + std::to_string(committee_size);
  key += roles_enabled ? "|roles=on" : "|roles=off";
  key += "|comp=";
  key += to_string(composition);
  key += "|k=" + std::to_string(memory_window);
  key += "|ablate=";
  key += ablation_target ? to_string(*ablation_target) : "none";
  key += "|rounds=" + std::to_string(rounds);
  return key;
}

Role Condition::slot_role(int agent_index) const {
  if (!roles_enabled) return Role::None;
  return kRoleOrder[std::size_t(agent_index) % kRoleOrder.size()];
}

std::string Condition::slot_label(int agent_index) const {
  if (roles_enabled) return std::string(to_string(slot_role(agent_index)));
  return "Agent " + std::to_string(agent_index + 1);
}

std::string format_temperature(double t) {
  if (t == 0.0) return "0.0";
  // Shortest round-trip digits via scientific to_chars, then re-rendered
  // with the minimal-decimal rule: plain decimal for exponents in [-4, 16),
  // otherwise mantissa e+/-XX with a two-digit exponent.
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), t, std::chars_format::scientific);
  std::string sci(buf, ptr);
  std::size_t epos = sci.find('e');
  std::string mantissa = sci.substr(0, epos);
  int exp10 = 0;
  std::from_chars(sci.data() + epos + 1, sci.data() + sci.size(), exp10);
  std::string digits;
  for (char c : mantissa)
    if (c != '.') digits += c;

  if (exp10 < -4 || exp10 >= 16) {
    std::string out(1, digits[0]);
    if (digits.size() > 1) out += "." + digits.substr(1);
    char tail[8];
    std::snprintf(tail, sizeof(tail), "e%+03d", exp10);
    return out + tail;
  }
  if (exp10 < 0) {
    std::string out = "0.";
    out.append(std::size_t(-exp10 - 1), '0');
    return out + digits;
  }
  if (std::size_t(exp10) >= digits.size() - 1) {
    std::string out = digits;
    out.append(std::size_t(exp10) - (digits.size() - 1), '0');
    return out + ".0";
  }
  return digits.substr(0, std::size_t(exp10) + 1) + "." + digits.substr(std::size_t(exp10) + 1);
}

std::string condition_filename(const Condition& c) {
  std::string name = c.scenario_id;
  name += "__T";
  name += format_temperature(c.temperature);
  name += "__N" + std::to_string(c.committee_size);
  name += c.roles_enabled ? "__rolesTrue" : "__rolesFalse";
  if (c.composition == Composition::mixed) name += "__multimodel";
  if (c.ablation_target) {
    name += "__ablate-";
    name += to_string(*c.ablation_target);
  }
  name += ".jsonl";
  return name;
}

}  // namespace delib
