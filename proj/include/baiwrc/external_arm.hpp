#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "baiwrc/instance.hpp"
#include "baiwrc/rng.hpp"

namespace baiwrc {

// An arm backed by a real program: each pull runs the command once, parses
// the reward from the last line of its standard output, and charges measured
// wall time (scaled into [0,1]) as the single resource consumption.
struct ExternalArmSpec {
    std::vector<std::string> command;  // argv, executed directly (no shell)
    double timeout_s = 60.0;
    double budget_scale = 1.0;  // seconds of wall time per consumption unit
};

// Non-zero exit or unparsable output; aborts the trial with a diagnostic.
struct ExternalArmError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExternalPull {
    Outcome outcome;       // reward in [0,1]; consumption = min(1, elapsed/budget_scale)
    bool timed_out = false;    // timeout yields (reward 0; consumption 1)
    bool reward_clamped = false;  // parsed value fell outside [0,1]
};

// Runs the command once and converts the result into an Outcome. The rng
// parameter keeps the sampler signature uniform; subprocess pulls draw no
// randomness from it.
ExternalPull pull_external(const ExternalArmSpec& arm, Rng& rng);

}  // namespace baiwrc
