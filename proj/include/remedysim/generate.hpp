#pragma once

#include <random>

#include "remedysim/simulator.hpp"

namespace remedysim {

// One good "g", 2-5 agents with integer valuations in [0, 100], at least one
// supplier and one consumer. One round, no events, default policies.
Scenario random_single_good(std::mt19937_64& rng);

// Two or three levels of goods with suppliers, producers and consumers,
// random policies, 1-3 rounds and a handful of perturbations. Always passes
// validate_scenario.
Scenario random_multilevel(std::mt19937_64& rng);

}  // namespace remedysim
