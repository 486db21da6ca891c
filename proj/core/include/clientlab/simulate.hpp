#pragma once

#include <cstdint>
#include <optional>

#include "clientlab/dataset.hpp"
#include "clientlab/game.hpp"

namespace clientlab {

struct EffectSizes {
    double participation_client = 0.15;  // true LPM effect of being a client
    double days_client = 6.0;            // true effect on days worked
};

struct SimulateConfig {
    int villages = 36;
    int households = 100;  // ignored when game_params is set (n governs)
    EffectSizes effects;
    // When set, every village network is the constructed clientelism
    // equilibrium at these params; otherwise a survey-style random network
    // is drawn per village.
    std::optional<game::GameParams> game_params;
    std::uint64_t seed = 1;
};

// Draws one synthetic survey: per-village networks, the index columns
// computed through the real pipeline (z-scores pooled over the whole run),
// household covariates, village characteristics, and the two outcomes
// generated from the index columns with the configured true effects. Days
// worked pass through truncate_days. Fully determined by cfg.seed.
Dataset simulate_survey(const SimulateConfig& cfg);

}  // namespace clientlab
