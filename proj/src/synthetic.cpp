#include "delib/backends/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "delib/errors.hpp"

namespace delib {

namespace {

// Own row if parsed, else nullopt.
std::optional<Vec3> own_pref(const PromptBundle& prompt) {
  for (const auto& row : prompt.state_table)
    if (row.agent_index == prompt.agent_index && row.state) return row.state->pref;
  return std::nullopt;
}

// Mean over the known rows of the committee table.
std::optional<Vec3> table_mean(const PromptBundle& prompt) {
  Vec3 sum = Vec3::Zero();
  int known = 0;
  for (const auto& row : prompt.state_table) {
    if (row.state) {
      sum += row.state->pref;
      ++known;
    }
  }
  if (known == 0) return std::nullopt;
  return Vec3(sum / known);
}

std::string ballot_for(const Vec3& pref, int conf) {
  char decision = char('A' + argmax_option(pref));
  return std::string("{\"decision\": \"") + decision +
         "\", \"confidence\": " + std::to_string(conf) + "}";
}

int conf_for(const Vec3& pref) {
  return std::clamp(int(std::lround(100.0 * pref.maxCoeff())), 0, 100);
}

}  // namespace

void ConsensusDynamicsParams::validate() const {
  if (self_weight < 0 || coupling < 0 || noise_scale < 0)
    throw ConfigError("consensus dynamics: weights must be >= 0");
  if (sharpness <= 0) throw ConfigError("consensus dynamics: sharpness must be > 0");
  if (!bias.allFinite()) throw ConfigError("consensus dynamics: bias must be finite");
  if (init_spread < 0) throw ConfigError("consensus dynamics: init_spread must be >= 0");
}

ConsensusDynamicsBackend::ConsensusDynamicsBackend(ConsensusDynamicsParams params,
                                                   std::string descriptor)
    : params_(params), descriptor_(std::move(descriptor)) {
  params_.validate();
}

Vec3 ConsensusDynamicsBackend::step(const ConsensusDynamicsParams& params, const Vec3& own,
                                    const Vec3& committee_mean, const Vec3& noise) {
  Vec3 logits = params.self_weight * floored_log(own) +
                params.coupling * floored_log(committee_mean) + params.bias +
                params.noise_scale * noise;
  return softmax(params.sharpness * logits);
}

std::string ConsensusDynamicsBackend::respond(const PromptBundle& prompt, double /*temperature*/,
                                              RngStream& rng_stream) {
  auto own = own_pref(prompt);
  if (!own) {
    // round-1 state: biased uniform plus seeded jitter, fixed draw order
    Vec3 jitter(rng_stream.normal(), rng_stream.normal(), rng_stream.normal());
    own = softmax(params_.bias + params_.init_spread * jitter);
  }

  if (prompt.purpose == CallPurpose::ballot || prompt.purpose == CallPurpose::ballot_repair)
    return ballot_for(*own, conf_for(*own));

  Vec3 noise(rng_stream.normal(), rng_stream.normal(), rng_stream.normal());
  Vec3 mean = table_mean(prompt).value_or(*own);
  Vec3 next = step(params_, *own, mean, noise);

  PreferenceState state;
  state.pref = next;
  state.conf = conf_for(next);
  state.tags = {"consensus", "update"};
  if (prompt.purpose == CallPurpose::repair) return format_state_line(state);
  return "Round " + std::to_string(prompt.round) +
         ": weighing the committee position against my own reading.\n" + format_state_line(state);
}

void LogisticDriverParams::validate() const {
  if (growth <= 0 || growth > 4.0) throw ConfigError("logistic driver: growth must be in (0, 4]");
  if (x0 <= 0.0 || x0 >= 1.0) throw ConfigError("logistic driver: x0 must be in (0, 1)");
}

LogisticDriverBackend::LogisticDriverBackend(LogisticDriverParams params, std::string descriptor)
    : params_(params), descriptor_(std::move(descriptor)) {
  params_.validate();
}

double logistic_iterate(double growth, double x0, int steps) {
  double x = x0;
  for (int i = 0; i < steps; ++i) {
    x = growth * x * (1.0 - x);
    // keep iterates off the absorbing boundary that rounding can reach
    x = std::clamp(x, 1e-12, 1.0 - 1e-12);
  }
  return x;
}

std::string LogisticDriverBackend::respond(const PromptBundle& prompt, double /*temperature*/,
                                           RngStream& /*rng_stream*/) {
  int round = std::max(prompt.round, 1);
  double x = logistic_iterate(params_.growth, params_.x0, round);

  PreferenceState state;
  state.pref = logistic_embed(x);
  state.conf = 75;
  state.tags = {"driver", "trajectory"};

  if (prompt.purpose == CallPurpose::ballot || prompt.purpose == CallPurpose::ballot_repair)
    return ballot_for(state.pref, state.conf);
  if (prompt.purpose == CallPurpose::repair) return format_state_line(state);
  return "Round " + std::to_string(prompt.round) + ": tracking the driver value.\n" +
         format_state_line(state);
}

}  // namespace delib
