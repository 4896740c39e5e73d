#pragma once

#include "delib/backend.hpp"
#include "delib/simplex.hpp"

namespace delib {

// Linear update in log-preference space, mapped back to the simplex through
// a sharpened softmax:
//   logits' = self_weight * log(own) + coupling * log(mean) + bias + noise
//   state'  = softmax(sharpness * logits')
// With self_weight + coupling < 1 the committee contracts toward the
// uniform point; > 1 plus noise gives an expanding ensemble.
struct ConsensusDynamicsParams {
  double self_weight = 0.6;   // alpha
  double coupling = 0.3;      // beta, toward the committee mean
  double noise_scale = 0.0;   // gamma
  double sharpness = 1.0;
  Vec3 bias = Vec3::Zero();   // per-agent directional pull, in logit space
  double init_spread = 0.25;  // logit-space sd of the round-1 state draw

  void validate() const;
};

class ConsensusDynamicsBackend : public AgentBackend {
 public:
  explicit ConsensusDynamicsBackend(ConsensusDynamicsParams params,
                                    std::string descriptor = "consensus-dynamics");

  std::string respond(const PromptBundle& prompt, double temperature,
                      RngStream& rng_stream) override;
  std::string descriptor() const override { return descriptor_; }

  // One update step; exposed for direct dynamics checks.
  static Vec3 step(const ConsensusDynamicsParams& params, const Vec3& own,
                   const Vec3& committee_mean, const Vec3& noise);

 private:
  ConsensusDynamicsParams params_;
  std::string descriptor_;
};

// Scalar logistic map x' = r x (1 - x) embedded on the simplex as
// (x, (1-x)/2, (1-x)/2). All agents driven by the same instance emit the
// same state, so the committee mean traces the map exactly.
struct LogisticDriverParams {
  double growth = 4.0;  // r in (0, 4]
  double x0 = 0.3;      // in (0, 1)

  void validate() const;
};

class LogisticDriverBackend : public AgentBackend {
 public:
  explicit LogisticDriverBackend(LogisticDriverParams params,
                                 std::string descriptor = "logistic-driver");

  std::string respond(const PromptBundle& prompt, double temperature,
                      RngStream& rng_stream) override;
  std::string descriptor() const override { return descriptor_; }

 private:
  LogisticDriverParams params_;
  std::string descriptor_;
};

// `steps` applications of the map with a rounding guard keeping iterates
// inside (0, 1).
double logistic_iterate(double growth, double x0, int steps);

inline Vec3 logistic_embed(double x) { return Vec3(x, (1.0 - x) / 2.0, (1.0 - x) / 2.0); }

}  // namespace delib
