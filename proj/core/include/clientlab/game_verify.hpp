#pragma once

#include <compare>
#include <cstdint>
#include <string_view>

#include "clientlab/game.hpp"

namespace clientlab::game {

// A deviation gain above this counts as a violation. Exact ties (for
// instance theta*b + s_k - b = 0 at the voting threshold) accumulate
// ~1e-16 of float noise and must keep passing; ties are equilibrium
// consistent. Shared by verify_spne and brute_force_equilibria so the two
// can never disagree on what "profitable" means.
inline constexpr double deviation_gain_tol = 1e-9;

enum class Stage { Consent, Link, Vote };

std::string_view to_token(Stage s);

struct Deviation {
    Stage stage = Stage::Vote;
    int agent = 0;  // poor id, or elite index 0..2 at the consent stage
    std::string description;
    double gain = 0.0;
    bool ok = true;
};

struct DeviationReport {
    std::vector<Deviation> deviations;  // best deviation found per (stage, agent)
    bool pass = true;
    double max_gain = 0.0;
    const Deviation* worst() const;
};

// Backward-induction audit of a profile. Vote stage: every linked poor
// against flipping between patron and N. Link stage: every poor against
// relinking to each consenting elite or to nobody, with best-response
// voting after the move. Consent stage: every elite against admitting one
// more poor (who switches only if strictly better off) or expelling one
// current client (who re-optimizes among the remaining offers).
DeviationReport verify_spne(const GameParams& p, const StrategyProfile& profile);

struct OutcomePartition {
    std::array<std::vector<int>, 3> clients;
    std::array<int, 3> elite_votes{};
    int nonnative_votes = 0;

    auto operator<=>(const OutcomePartition&) const = default;
};

OutcomePartition outcome_partition(const StrategyProfile& profile);

struct BruteForceResult {
    std::vector<OutcomePartition> partitions;      // distinct, sorted
    std::vector<StrategyProfile> witnesses;        // one witness per partition
    std::uint64_t profiles_scanned = 0;
    std::uint64_t equilibria_found = 0;
};

// Exhaustive scan of the pruned strategy space with consent sets frozen at
// P_0 = Pi_0, P_1 = P_2 = Pi_1. Per poor: stay unlinked and vote N, or take
// a consenting elite and vote for it or for N. A profile is kept iff
// verify_spne would pass it. Refuses n > max_n and inadmissible params.
BruteForceResult brute_force_equilibria(const GameParams& p, int max_n = 8);

struct SweepGrid {
    std::vector<double> b_values;      // empty: keep the base value
    std::vector<double> theta_values;
    std::vector<double> c_values;
};

struct SweepRow {
    GameParams params;
    bool admissible = false;
    std::string failed;  // names of failed restrictions, comma separated
    int client_count = 0;
    double client_work = 0.0;
    double nonclient_work = 0.0;
    double work_gap = 0.0;
};

// Cartesian sweep over b/theta/c, ascending in each dimension. Points that
// fail the restrictions are kept in the table but marked inadmissible.
std::vector<SweepRow> comparative_statics(const GameParams& base, const SweepGrid& grid);

}  // namespace clientlab::game
