#pragma once

#include <cstdint>

#include "ivote/axioms.hpp"
#include "ivote/profile.hpp"
#include "ivote/rules.hpp"

namespace ivote {

enum class WitnessCase { weight_at_least_threshold = 1, threshold_above_weight = 2 };

/// A robustness failure of an incompatible threshold rule, built from voters on [x_i, x_{i+2}].
///
/// `start` has w1 voters on [x_i, x_{i+2}] (ids 1..w1) and w2 voters (ids w1+1..) on {x_m} in
/// case 1 or on {x_i} in case 2. Walking the w1 voters (and in case 2 also the w2 voters) over to
/// x_{i+1} one endpoint at a time must break robustness somewhere; `violation` is the first such
/// single step, stated on the larger profile of the pair.
struct IncompatibilityWitness {
  int index = 1;
  WitnessCase which = WitnessCase::weight_at_least_threshold;
  std::int64_t w1 = 0;
  std::int64_t w2 = 0;
  Profile start;
  axioms::Violation violation;
};

/// Throws no-witness when (alpha, theta) is compatible, and no-witness as well if the voter
/// count needed would exceed max_voters.
IncompatibilityWitness incompatibility_witness(const WeightVector& alpha, const ThresholdVector& theta,
                                               std::int64_t max_voters = 1'000'000);

}  // namespace ivote
