#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "clientlab/network.hpp"

namespace clientlab::game {

// Two-period election game. Elite 0 holds both resources, elites 1 and 2
// hold one each, a non-native challenger N runs against them, and n poor
// agents k = 3..n+2 carry evenly spaced search costs s_k = (k-2)/n. Links
// to 1 and 2 are free, a link to 0 costs c once. Every vote shifts the
// winner lottery by 1/n. Elected elites deliver theta*b of public work to
// their own clients; N delivers b to everybody.
struct GameParams {
    int n = 10;
    double b = 3.0;
    double theta = 0.7;
    double c = 1.1;
    double R = 100.0;
    double e = 0.1;
};

inline constexpr int first_poor_id = 3;

// Comparisons against the partition thresholds are snapped by this much:
// s_k and b(1-theta) that are equal on paper can differ by ~1e-16 in
// floating point, and membership must follow the exact arithmetic.
inline constexpr double threshold_tol = 1e-12;

class RestrictionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

std::vector<double> search_costs(int n);
double search_cost(const GameParams& p, int agent_id);

struct RestrictionCheck {
    std::string name;  // "a1", "a2", "a3", "r_bound"
    bool pass = false;
    double slack = 0.0;  // margin left in the binding direction
    std::string detail;
};

struct RestrictionReport {
    std::vector<RestrictionCheck> checks;
    bool all_pass() const;
    const RestrictionCheck* find(std::string_view name) const;
    std::string failed_names() const;  // comma separated
};

// a1: b >= 3. a2: 1 < c < min{2b(1-theta), 2}. a3 (strict):
// 1/n < min{1, b(1-theta)} - max{c/2, b(1-theta)/2}. r_bound:
// R >= 2*n*e*(theta*b), which makes a voting client always worth keeping.
// Structurally invalid params (n <= 0, theta outside (0,1), nonpositive
// b or c) throw instead of failing a check.
RestrictionReport check_restrictions(const GameParams& p);

struct PoorPartition {
    std::vector<int> pi0;  // s_k >= b(1-theta)/2: would-be clients of elite 0
    std::vector<int> pi1;  // s_k >= b(1-theta): also consented by elites 1 and 2
    std::vector<int> piU;  // the rest, unlinked in equilibrium
};

PoorPartition partition_sets(const GameParams& p);

// Minimum s_k at which a client keeps voting for the patron: b(1-theta)/2
// under elite 0 (who can punish on both resources), b(1-theta) under 1 or 2.
double voting_threshold(const GameParams& p, int patron);

// (votes/n) * (R - e * clients * theta * b)
double elite_expected_payoff(const GameParams& p, int votes, int clients);

inline constexpr int unlinked = -1;      // link slot for "no patron"
inline constexpr int vote_nonnative = 3; // vote slot for the challenger

struct WinProbs {
    std::array<double, 3> elite{0.0, 0.0, 0.0};
    double nonnative = 0.0;
};

// Lifetime payoff of one poor agent under given win probabilities (own
// vote already folded into the beliefs). Linked to 0: alpha0*theta*b +
// (1-alpha0)*(-2 s_k) + beta*b - c. Linked to 1 or 2: the single-resource
// analogue with +beta*b and the standing cost 2 s_k of the missing
// resource. Unlinked: -4 s_k + beta*b.
double poor_expected_payoff(const GameParams& p, int agent_id, int link, int vote,
                            const WinProbs& w);

struct StrategyProfile {
    std::array<std::vector<int>, 3> consent;  // sorted poor ids per elite
    std::vector<int> link;  // per poor (index agent_id - 3): 0, 1, 2 or unlinked
    std::vector<int> vote;  // per poor: 0, 1, 2 or vote_nonnative
};

// Domain checks: sizes match n, consent ids are valid and sorted, links
// point at consenting elites only, linked agents vote for their patron or
// N, unlinked agents vote N. Violations throw std::invalid_argument.
void validate_profile(const GameParams& p, const StrategyProfile& profile);

struct EquilibriumOutcome {
    PoorPartition partition;
    WinProbs win;
    std::array<int, 3> elite_votes{};
    int nonnative_votes = 0;
    std::array<int, 3> elite_clients{};
    std::array<double, 3> elite_payoff{};
    std::vector<double> poor_payoff;           // per poor, lifetime
    std::vector<double> expected_public_work;  // per poor, period 2
};

// Payoffs, vote shares and expected public work induced by a profile.
EquilibriumOutcome evaluate_profile(const GameParams& p, const StrategyProfile& profile);

struct SolveResult {
    StrategyProfile profile;
    EquilibriumOutcome outcome;
};

// The clientelism equilibrium: elite 0 consents to Pi_0, elites 1 and 2 to
// Pi_1, Pi_0 links to 0 and votes 0, Pi_U stays unlinked and votes N.
// Refuses (RestrictionError) when check_restrictions fails.
SolveResult construct_clientelism_equilibrium(const GameParams& p);

// Election-free benchmark. With the one-link cap each poor takes a single
// costless single-resource elite, assigned round robin over the 2*replicas
// providers, and buys the other resource at market (payoff -2 s_k).
// Without the cap each poor links to one replica of each type (payoff 0).
// Nobody links to elite 0.
struct BenchmarkResult {
    VillageNetwork network;
    std::vector<std::vector<std::string>> providers_of;  // per poor
    std::vector<double> poor_payoff;
    int replicas = 1;
    bool one_link_cap = true;
};

BenchmarkResult construct_benchmark(const GameParams& p, int replicas, bool one_link_cap);

// Renders a strategy profile as a synthetic village: every client of elite
// 0 receives two unreciprocated services (credit for r_1, welfare access
// for r_2); clients of 1 or 2 receive the matching single service.
VillageNetwork equilibrium_to_network(const GameParams& p, const StrategyProfile& profile);

}  // namespace clientlab::game
