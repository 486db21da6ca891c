#include <doctest.h>

#include <algorithm>
#include <array>
#include <set>
#include <vector>

#include "clientlab/game.hpp"
#include "clientlab/game_verify.hpp"

using namespace clientlab::game;

namespace {

const GameParams small{6, 3.0, 0.7, 1.1, 100.0, 0.1};

// expected scan count: unlinked-only agents contribute a factor 1, members
// of Pi_0 add (0,0)/(0,N), members of Pi_1 add the four elite-1/2 options
std::uint64_t expected_scans(const GameParams& p) {
    PoorPartition part = partition_sets(p);
    std::vector<int> menu(static_cast<std::size_t>(p.n), 1);
    for (int id : part.pi0) menu[static_cast<std::size_t>(id - first_poor_id)] += 2;
    for (int id : part.pi1) menu[static_cast<std::size_t>(id - first_poor_id)] += 4;
    std::uint64_t total = 1;
    for (int m : menu) total *= static_cast<std::uint64_t>(m);
    return total;
}

}  // namespace

TEST_CASE("guards: size cap and admissibility") {
    GameParams p = small;
    p.n = 10;
    CHECK_THROWS_AS(brute_force_equilibria(p, 8), std::invalid_argument);
    CHECK_NOTHROW(brute_force_equilibria(p, 10));

    p = small;
    p.b = 2.0;
    CHECK_THROWS_AS(brute_force_equilibria(p), RestrictionError);
}

TEST_CASE("scan count follows the pruned menu sizes") {
    // Pi_0 = {5,6,7,8}, Pi_1 = {8}: menus 1,1,3,3,3,7
    CHECK(expected_scans(small) == 189);
    BruteForceResult result = brute_force_equilibria(small);
    CHECK(result.profiles_scanned == 189);

    GameParams alt{6, 5.0, 0.8, 1.1, 100.0, 0.1};
    CHECK(brute_force_equilibria(alt).profiles_scanned == expected_scans(alt));
}

TEST_CASE("the clientelism outcome is found and is unique at the small point") {
    BruteForceResult result = brute_force_equilibria(small);
    REQUIRE(result.partitions.size() == 1);
    REQUIRE(result.witnesses.size() == 1);
    CHECK(result.equilibria_found >= 1);

    SolveResult sol = construct_clientelism_equilibrium(small);
    CHECK(result.partitions[0] == outcome_partition(sol.profile));

    DeviationReport report = verify_spne(small, result.witnesses[0]);
    CHECK(report.pass);
}

TEST_CASE("every witness really is an equilibrium") {
    for (GameParams p : {small, GameParams{6, 5.0, 0.8, 1.1, 100.0, 0.1},
                         GameParams{8, 3.5, 0.75, 1.2, 100.0, 0.1}}) {
        if (!check_restrictions(p).all_pass()) continue;
        BruteForceResult result = brute_force_equilibria(p);
        REQUIRE(result.partitions.size() == result.witnesses.size());
        for (std::size_t i = 0; i < result.witnesses.size(); ++i) {
            CHECK(verify_spne(p, result.witnesses[i]).pass);
            CHECK(outcome_partition(result.witnesses[i]) == result.partitions[i]);
        }
        CHECK(std::is_sorted(result.partitions.begin(), result.partitions.end()));
    }
}

// ---------------------------------------------------------------------------
// Full-space cross-check. The pruned scan hard-codes two behavioural facts:
// linked agents vote for their patron or for N, unlinked agents vote N. The
// enumerator below drops both and lets every agent cast any of the four
// votes, with payoffs and all three stage checks recomputed from scratch.
// If the pruning were wrong, the sets of equilibrium outcomes would differ.

namespace full {

struct Profile {
    std::vector<int> link;  // -1, 0, 1, 2
    std::vector<int> vote;  // 0, 1, 2, 3 (= N), unrestricted
};

struct Point {
    GameParams p;
    std::array<std::vector<char>, 3> consent;  // frozen at the partition sets
    std::vector<double> s;
};

Point make_point(const GameParams& p) {
    Point pt;
    pt.p = p;
    pt.s = search_costs(p.n);
    PoorPartition part = partition_sets(p);
    for (auto& mask : pt.consent) mask.assign(static_cast<std::size_t>(p.n), 0);
    for (int id : part.pi0) pt.consent[0][static_cast<std::size_t>(id - first_poor_id)] = 1;
    for (int id : part.pi1) {
        pt.consent[1][static_cast<std::size_t>(id - first_poor_id)] = 1;
        pt.consent[2][static_cast<std::size_t>(id - first_poor_id)] = 1;
    }
    return pt;
}

std::array<int, 4> tally(const Profile& prof) {
    std::array<int, 4> v{};
    for (int w : prof.vote) ++v[static_cast<std::size_t>(w)];
    return v;
}

double poor_payoff(const Point& pt, int i, int link, const std::array<int, 4>& v) {
    double beta = static_cast<double>(v[3]) / pt.p.n;
    double tb = pt.p.theta * pt.p.b;
    double s = pt.s[static_cast<std::size_t>(i)];
    if (link == -1) return -4.0 * s + beta * pt.p.b;
    double alpha = static_cast<double>(v[static_cast<std::size_t>(link)]) / pt.p.n;
    if (link == 0) return alpha * tb - (1.0 - alpha) * 2.0 * s + beta * pt.p.b - pt.p.c;
    return alpha * tb - (1.0 - alpha) * s + beta * pt.p.b - 2.0 * s;
}

double elite_payoff(const Point& pt, int votes, int clients) {
    return (static_cast<double>(votes) / pt.p.n) *
           (pt.p.R - pt.p.e * clients * (pt.p.theta * pt.p.b));
}

constexpr double tol = 1e-9;

// best payoff over all four votes for a fixed link, tallies given without
// agent i's vote
double best_free_vote(const Point& pt, int i, int link, std::array<int, 4> without,
                      int* vote_out = nullptr) {
    double best = -1e300;
    for (int v = 0; v < 4; ++v) {
        std::array<int, 4> moved = without;
        ++moved[static_cast<std::size_t>(v)];
        double pay = poor_payoff(pt, i, link, moved);
        if (pay > best) {
            best = pay;
            if (vote_out) *vote_out = v;
        }
    }
    return best;
}

bool is_equilibrium(const Point& pt, const Profile& prof) {
    const int n = pt.p.n;
    std::array<int, 4> votes = tally(prof);

    // vote stage: any single vote change
    for (int i = 0; i < n; ++i) {
        std::array<int, 4> without = votes;
        --without[static_cast<std::size_t>(prof.vote[static_cast<std::size_t>(i)])];
        double current = poor_payoff(pt, i, prof.link[static_cast<std::size_t>(i)], votes);
        if (best_free_vote(pt, i, prof.link[static_cast<std::size_t>(i)], without) >
            current + tol)
            return false;
    }

    // link stage: any relink (or unlink) with a freely chosen vote after it
    for (int i = 0; i < n; ++i) {
        int link = prof.link[static_cast<std::size_t>(i)];
        double current = poor_payoff(pt, i, link, votes);
        std::array<int, 4> without = votes;
        --without[static_cast<std::size_t>(prof.vote[static_cast<std::size_t>(i)])];
        for (int alt = -1; alt < 3; ++alt) {
            if (alt == link) continue;
            if (alt >= 0 && !pt.consent[static_cast<std::size_t>(alt)][static_cast<std::size_t>(i)])
                continue;
            if (best_free_vote(pt, i, alt, without) > current + tol) return false;
        }
    }

    // consent stage: each elite expels one client or admits one outsider
    for (int l = 0; l < 3; ++l) {
        int my_votes = votes[static_cast<std::size_t>(l)];
        int my_clients = 0;
        for (int w : prof.link)
            if (w == l) ++my_clients;
        double current = elite_payoff(pt, my_votes, my_clients);

        for (int k = 0; k < n; ++k) {
            std::array<int, 4> without = votes;
            --without[static_cast<std::size_t>(prof.vote[static_cast<std::size_t>(k)])];

            if (prof.link[static_cast<std::size_t>(k)] == l) {
                // expel k; it re-optimizes among the remaining offers
                double best = -1e300;
                int best_link = -1, best_vote = 3;
                for (int alt = -1; alt < 3; ++alt) {
                    if (alt == l) continue;
                    if (alt >= 0 &&
                        !pt.consent[static_cast<std::size_t>(alt)][static_cast<std::size_t>(k)])
                        continue;
                    int v = 3;
                    double pay = best_free_vote(pt, k, alt, without, &v);
                    if (pay > best) {
                        best = pay;
                        best_link = alt;
                        best_vote = v;
                    }
                }
                (void)best_link;
                std::array<int, 4> moved = without;
                ++moved[static_cast<std::size_t>(best_vote)];
                double after = elite_payoff(pt, moved[static_cast<std::size_t>(l)], my_clients - 1);
                if (after > current + tol) return false;
            } else if (!pt.consent[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)]) {
                // admit k; it moves only for a strict improvement
                double stay = poor_payoff(pt, k, prof.link[static_cast<std::size_t>(k)], votes);
                int v = 3;
                double joined = best_free_vote(pt, k, l, without, &v);
                if (joined > stay + tol) {
                    std::array<int, 4> moved = without;
                    ++moved[static_cast<std::size_t>(v)];
                    double after =
                        elite_payoff(pt, moved[static_cast<std::size_t>(l)], my_clients + 1);
                    if (after > current + tol) return false;
                }
            }
        }
    }
    return true;
}

// every (link, vote) combination, links limited to consenting elites
std::vector<Profile> enumerate_equilibria(const Point& pt) {
    const int n = pt.p.n;
    std::vector<std::vector<int>> link_options(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        link_options[static_cast<std::size_t>(i)].push_back(-1);
        for (int l = 0; l < 3; ++l)
            if (pt.consent[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)])
                link_options[static_cast<std::size_t>(i)].push_back(l);
    }

    std::vector<Profile> found;
    Profile prof;
    prof.link.assign(static_cast<std::size_t>(n), -1);
    prof.vote.assign(static_cast<std::size_t>(n), 0);
    std::vector<std::size_t> link_idx(static_cast<std::size_t>(n), 0);

    while (true) {
        if (is_equilibrium(pt, prof)) found.push_back(prof);

        // odometer over (vote, link) per agent
        int pos = 0;
        for (; pos < n; ++pos) {
            std::size_t up = static_cast<std::size_t>(pos);
            if (prof.vote[up] < 3) {
                ++prof.vote[up];
                break;
            }
            prof.vote[up] = 0;
            if (++link_idx[up] < link_options[up].size()) {
                prof.link[up] = link_options[up][link_idx[up]];
                break;
            }
            link_idx[up] = 0;
            prof.link[up] = link_options[up][0];
        }
        if (pos == n) break;
    }
    return found;
}

OutcomePartition partition_of(const Profile& prof) {
    OutcomePartition part;
    for (int i = 0; i < static_cast<int>(prof.link.size()); ++i) {
        int l = prof.link[static_cast<std::size_t>(i)];
        if (l >= 0) part.clients[static_cast<std::size_t>(l)].push_back(first_poor_id + i);
    }
    std::array<int, 4> v{};
    for (int w : prof.vote) ++v[static_cast<std::size_t>(w)];
    part.elite_votes = {v[0], v[1], v[2]};
    part.nonnative_votes = v[3];
    return part;
}

}  // namespace full

TEST_CASE("full vote-space enumeration finds the same outcomes as the pruned scan") {
    for (GameParams p : {GameParams{4, 5.0, 0.8, 1.1, 100.0, 0.1},
                         GameParams{4, 3.0, 0.7, 1.1, 100.0, 0.1},
                         GameParams{5, 3.0, 0.7, 1.2, 100.0, 0.1}}) {
        REQUIRE(check_restrictions(p).all_pass());
        full::Point pt = full::make_point(p);
        std::vector<full::Profile> wide = full::enumerate_equilibria(pt);
        INFO("n=", p.n, " b=", p.b, " theta=", p.theta);
        REQUIRE(!wide.empty());

        // no equilibrium uses a dominated vote: linked agents back their
        // patron or N, unlinked agents back N
        std::set<OutcomePartition> wide_partitions;
        for (const full::Profile& prof : wide) {
            for (std::size_t i = 0; i < prof.link.size(); ++i) {
                if (prof.link[i] == -1)
                    CHECK(prof.vote[i] == 3);
                else
                    CHECK((prof.vote[i] == prof.link[i] || prof.vote[i] == 3));
            }
            wide_partitions.insert(full::partition_of(prof));
        }

        BruteForceResult pruned = brute_force_equilibria(p);
        std::set<OutcomePartition> pruned_partitions(pruned.partitions.begin(),
                                                     pruned.partitions.end());
        CHECK(wide_partitions == pruned_partitions);
    }
}

TEST_CASE("uniqueness holds where the elite-1/2 band is thin") {
    // with b(1-theta) >= 6/7 and n <= 8 the scan should land on exactly the
    // constructed partition
    for (GameParams p : {GameParams{7, 3.0, 0.7, 1.1, 100.0, 0.1},
                         GameParams{8, 3.0, 0.7, 1.3, 100.0, 0.1},
                         GameParams{8, 6.0, 0.8, 1.15, 100.0, 0.1},
                         GameParams{5, 5.0, 0.8, 1.4, 100.0, 0.1}}) {
        REQUIRE(check_restrictions(p).all_pass());
        REQUIRE(p.b * (1.0 - p.theta) >= 6.0 / 7.0 - 1e-12);
        BruteForceResult result = brute_force_equilibria(p);
        INFO("n=", p.n, " b=", p.b, " theta=", p.theta, " c=", p.c);
        REQUIRE(result.partitions.size() == 1);
        CHECK(result.partitions[0] ==
              outcome_partition(construct_clientelism_equilibrium(p).profile));
    }
}
