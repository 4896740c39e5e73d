#pragma once

#include <string>
#include <string_view>

namespace delib {

enum class Role { Chair, Welfare, Rights, Equity, Security, None };

namespace prompts {

// Shared system-prompt preamble every committee member receives.
extern const std::string_view kPreamble;

// Role-specific mandate appended to the preamble when roles are enabled.
// Role::None (and ablated roles) map to an empty mandate.
std::string_view mandate(Role role);

// Repair instruction sent once after a failed STATE parse.
extern const std::string_view kRepair;

// Private-ballot request sent to each agent after the final round.
extern const std::string_view kBallot;

// Repair instruction for an unparsable ballot reply.
extern const std::string_view kBallotRepair;

// Vote-aggregator instruction for the optional LLM-clerk mode;
// `rendered_ballots` replaces the ballot-list placeholder.
std::string clerk_prompt(const std::string& rendered_ballots);

}  // namespace prompts
}  // namespace delib
