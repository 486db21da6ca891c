#include "clientlab/game_verify.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace clientlab::game {

namespace {

// Everything the stage checks need, with consent as index masks so the hot
// loops never touch strings or maps.
struct Table {
    GameParams p;
    int n = 0;
    double tb = 0.0;
    std::vector<double> s;
    std::array<std::vector<char>, 3> consent;
};

Table make_table(const GameParams& p, const StrategyProfile& profile) {
    Table t;
    t.p = p;
    t.n = p.n;
    t.tb = p.theta * p.b;
    t.s = search_costs(p.n);
    for (int l = 0; l < 3; ++l) {
        t.consent[l].assign(static_cast<std::size_t>(p.n), 0);
        for (int id : profile.consent[l]) t.consent[l][static_cast<std::size_t>(id - first_poor_id)] = 1;
    }
    return t;
}

// vote tallies; slots 0..2 elites, 3 the non-native candidate
using Votes = std::array<int, 4>;

Votes tally(const StrategyProfile& profile) {
    Votes v{};
    for (int w : profile.vote) ++v[static_cast<std::size_t>(w)];
    return v;
}

double poor_payoff(const Table& t, int i, int link, const Votes& v) {
    double beta = static_cast<double>(v[3]) / t.n;
    double s = t.s[static_cast<std::size_t>(i)];
    if (link == unlinked) return -4.0 * s + beta * t.p.b;
    double alpha = static_cast<double>(v[static_cast<std::size_t>(link)]) / t.n;
    if (link == 0) return alpha * t.tb - (1.0 - alpha) * 2.0 * s + beta * t.p.b - t.p.c;
    return alpha * t.tb - (1.0 - alpha) * s + beta * t.p.b - 2.0 * s;
}

double elite_payoff(const Table& t, int votes, int clients) {
    return (static_cast<double>(votes) / t.n) * (t.p.R - t.p.e * clients * t.tb);
}

struct Option {
    int link = unlinked;
    int vote = vote_nonnative;
};

// Link alternatives open to poor i, current choice excluded. Deterministic
// order: unlink first, then consenting elites ascending.
void link_alternatives(const Table& t, int i, int current_link, std::vector<Option>& out) {
    out.clear();
    if (current_link != unlinked) out.push_back({unlinked, vote_nonnative});
    for (int l = 0; l < 3; ++l) {
        if (l == current_link || !t.consent[l][static_cast<std::size_t>(i)]) continue;
        out.push_back({l, l});  // best-response vote resolved at evaluation
    }
}

// Payoff of taking `link` with the better of the two admissible votes,
// given the tallies with i's own vote removed.
double best_vote_payoff(const Table& t, int i, int link, Votes votes_wo, int* vote_out) {
    if (link == unlinked) {
        ++votes_wo[3];
        if (vote_out) *vote_out = vote_nonnative;
        return poor_payoff(t, i, unlinked, votes_wo);
    }
    Votes for_patron = votes_wo;
    ++for_patron[static_cast<std::size_t>(link)];
    double p_patron = poor_payoff(t, i, link, for_patron);
    Votes for_n = votes_wo;
    ++for_n[3];
    double p_n = poor_payoff(t, i, link, for_n);
    if (p_patron >= p_n) {
        if (vote_out) *vote_out = link;
        return p_patron;
    }
    if (vote_out) *vote_out = vote_nonnative;
    return p_n;
}

struct StageResult {
    double gain = 0.0;      // best deviation gain found for this player
    std::string description;
};

// ---- vote stage -----------------------------------------------------------

bool check_votes(const Table& t, const StrategyProfile& profile, const Votes& votes,
                 DeviationReport* report) {
    bool ok = true;
    for (int i = 0; i < t.n; ++i) {
        int link = profile.link[static_cast<std::size_t>(i)];
        if (link == unlinked) continue;  // voting N is dominant off the patron tie
        int vote = profile.vote[static_cast<std::size_t>(i)];
        int alt = vote == link ? vote_nonnative : link;
        Votes moved = votes;
        --moved[static_cast<std::size_t>(vote)];
        ++moved[static_cast<std::size_t>(alt)];
        double gain = poor_payoff(t, i, link, moved) - poor_payoff(t, i, link, votes);
        bool pass = gain <= deviation_gain_tol;
        if (!pass) ok = false;
        if (report) {
            Deviation d;
            d.stage = Stage::Vote;
            d.agent = first_poor_id + i;
            d.description = std::string("flip vote to ") +
                            (alt == vote_nonnative ? "N" : std::to_string(alt));
            d.gain = gain;
            d.ok = pass;
            report->deviations.push_back(std::move(d));
        } else if (!pass) {
            return false;
        }
    }
    return ok;
}

// ---- link stage -----------------------------------------------------------

bool check_links(const Table& t, const StrategyProfile& profile, const Votes& votes,
                 DeviationReport* report) {
    bool ok = true;
    std::vector<Option> alts;
    for (int i = 0; i < t.n; ++i) {
        int link = profile.link[static_cast<std::size_t>(i)];
        int vote = profile.vote[static_cast<std::size_t>(i)];
        link_alternatives(t, i, link, alts);
        if (alts.empty()) continue;

        double current = poor_payoff(t, i, link, votes);
        Votes votes_wo = votes;
        --votes_wo[static_cast<std::size_t>(vote)];

        StageResult best;
        best.gain = -1e300;
        for (const Option& alt : alts) {
            int chosen_vote = vote_nonnative;
            double payoff = best_vote_payoff(t, i, alt.link, votes_wo, &chosen_vote);
            double gain = payoff - current;
            if (gain > best.gain) {
                best.gain = gain;
                best.description =
                    alt.link == unlinked
                        ? "unlink"
                        : "relink to elite " + std::to_string(alt.link) + " voting " +
                              (chosen_vote == vote_nonnative ? "N" : std::to_string(chosen_vote));
            }
        }
        bool pass = best.gain <= deviation_gain_tol;
        if (!pass) ok = false;
        if (report) {
            Deviation d;
            d.stage = Stage::Link;
            d.agent = first_poor_id + i;
            d.description = best.description;
            d.gain = best.gain;
            d.ok = pass;
            report->deviations.push_back(std::move(d));
        } else if (!pass) {
            return false;
        }
    }
    return ok;
}

// ---- consent stage ---------------------------------------------------------

// Marginal client moves for each elite: expel one current client (who then
// re-optimizes among the remaining offers) or admit one more poor (who
// switches only when strictly better off). Justified by the r_bound
// inequality: a voting client is always worth keeping, so single-client
// deviations are the binding ones.
bool check_consent(const Table& t, const StrategyProfile& profile, const Votes& votes,
                   DeviationReport* report) {
    bool ok = true;
    std::array<int, 3> clients{};
    for (int link : profile.link)
        if (link != unlinked) ++clients[static_cast<std::size_t>(link)];

    std::vector<Option> alts;
    for (int l = 0; l < 3; ++l) {
        double current = elite_payoff(t, votes[static_cast<std::size_t>(l)],
                                      clients[static_cast<std::size_t>(l)]);
        StageResult best;  // gain 0: doing nothing is always available
        for (int i = 0; i < t.n; ++i) {
            int link = profile.link[static_cast<std::size_t>(i)];
            int vote = profile.vote[static_cast<std::size_t>(i)];
            bool consented = t.consent[l][static_cast<std::size_t>(i)] != 0;
            double gain = 0.0;
            std::string what;
            if (consented && link == l) {
                // expel: the client re-chooses among everything except l
                alts.clear();
                alts.push_back({unlinked, vote_nonnative});
                for (int l2 = 0; l2 < 3; ++l2)
                    if (l2 != l && t.consent[l2][static_cast<std::size_t>(i)]) alts.push_back({l2, l2});
                Votes votes_wo = votes;
                --votes_wo[static_cast<std::size_t>(vote)];
                double best_payoff = -1e300;
                Option chosen;
                int chosen_vote = vote_nonnative;
                for (const Option& a : alts) {
                    int v_out = vote_nonnative;
                    double payoff = best_vote_payoff(t, i, a.link, votes_wo, &v_out);
                    if (payoff > best_payoff) {
                        best_payoff = payoff;
                        chosen = a;
                        chosen_vote = v_out;
                    }
                }
                Votes after = votes_wo;
                ++after[static_cast<std::size_t>(chosen_vote)];
                gain = elite_payoff(t, after[static_cast<std::size_t>(l)],
                                    clients[static_cast<std::size_t>(l)] - 1) -
                       current;
                what = "expel poor " + std::to_string(first_poor_id + i);
            } else if (!consented) {
                // admit: i weighs the new offer against the payoff it holds now
                double current_poor = poor_payoff(t, i, link, votes);
                Votes votes_wo = votes;
                --votes_wo[static_cast<std::size_t>(vote)];
                int v_out = vote_nonnative;
                double offer = best_vote_payoff(t, i, l, votes_wo, &v_out);
                if (offer > current_poor + deviation_gain_tol) {
                    Votes after = votes_wo;
                    ++after[static_cast<std::size_t>(v_out)];
                    gain = elite_payoff(t, after[static_cast<std::size_t>(l)],
                                        clients[static_cast<std::size_t>(l)] + 1) -
                           current;
                    what = "admit poor " + std::to_string(first_poor_id + i);
                } else {
                    continue;  // offer declined, nothing changes
                }
            } else {
                continue;  // consented but linked elsewhere: expulsion is moot
            }
            if (gain > best.gain) {
                best.gain = gain;
                best.description = what;
            }
        }
        bool pass = best.gain <= deviation_gain_tol;
        if (!pass) ok = false;
        if (report) {
            Deviation d;
            d.stage = Stage::Consent;
            d.agent = l;
            d.description = best.description.empty() ? "keep consent set" : best.description;
            d.gain = best.gain;
            d.ok = pass;
            report->deviations.push_back(std::move(d));
        } else if (!pass) {
            return false;
        }
    }
    return ok;
}

bool check_equilibrium(const Table& t, const StrategyProfile& profile, DeviationReport* report) {
    Votes votes = tally(profile);
    bool ok = check_votes(t, profile, votes, report);
    if (!ok && !report) return false;
    ok = check_links(t, profile, votes, report) && ok;
    if (!ok && !report) return false;
    ok = check_consent(t, profile, votes, report) && ok;
    return ok;
}

}  // namespace

std::string_view to_token(Stage s) {
    switch (s) {
        case Stage::Consent: return "consent";
        case Stage::Link: return "link";
        case Stage::Vote: return "vote";
    }
    return "";
}

const Deviation* DeviationReport::worst() const {
    const Deviation* w = nullptr;
    for (const Deviation& d : deviations)
        if (!w || d.gain > w->gain) w = &d;
    return w;
}

DeviationReport verify_spne(const GameParams& p, const StrategyProfile& profile) {
    validate_profile(p, profile);
    Table t = make_table(p, profile);
    DeviationReport report;
    report.pass = check_equilibrium(t, profile, &report);
    report.max_gain = 0.0;
    for (const Deviation& d : report.deviations) report.max_gain = std::max(report.max_gain, d.gain);
    return report;
}

OutcomePartition outcome_partition(const StrategyProfile& profile) {
    OutcomePartition part;
    for (std::size_t i = 0; i < profile.link.size(); ++i) {
        int link = profile.link[i];
        if (link != unlinked)
            part.clients[static_cast<std::size_t>(link)].push_back(first_poor_id +
                                                                   static_cast<int>(i));
        int vote = profile.vote[i];
        if (vote == vote_nonnative)
            ++part.nonnative_votes;
        else
            ++part.elite_votes[static_cast<std::size_t>(vote)];
    }
    return part;
}

BruteForceResult brute_force_equilibria(const GameParams& p, int max_n) {
    if (p.n > max_n)
        throw std::invalid_argument("brute_force_equilibria: n=" + std::to_string(p.n) +
                                    " exceeds max_n=" + std::to_string(max_n));
    RestrictionReport restrictions = check_restrictions(p);
    if (!restrictions.all_pass())
        throw RestrictionError("parameter restrictions fail: " + restrictions.failed_names());

    PoorPartition part = partition_sets(p);
    StrategyProfile profile;
    profile.consent[0] = part.pi0;
    profile.consent[1] = part.pi1;
    profile.consent[2] = part.pi1;
    profile.link.assign(static_cast<std::size_t>(p.n), unlinked);
    profile.vote.assign(static_cast<std::size_t>(p.n), vote_nonnative);

    Table t = make_table(p, profile);

    // per-poor strategy menu under the dominance pruning
    std::vector<std::vector<Option>> menu(static_cast<std::size_t>(p.n));
    for (int i = 0; i < p.n; ++i) {
        auto& m = menu[static_cast<std::size_t>(i)];
        m.push_back({unlinked, vote_nonnative});
        if (t.consent[0][static_cast<std::size_t>(i)]) {
            m.push_back({0, 0});
            m.push_back({0, vote_nonnative});
        }
        if (t.consent[1][static_cast<std::size_t>(i)]) {
            m.push_back({1, 1});
            m.push_back({1, vote_nonnative});
            m.push_back({2, 2});
            m.push_back({2, vote_nonnative});
        }
    }

    BruteForceResult result;
    std::map<OutcomePartition, StrategyProfile> found;
    std::vector<std::size_t> idx(static_cast<std::size_t>(p.n), 0);
    while (true) {
        for (int i = 0; i < p.n; ++i) {
            const Option& o = menu[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]];
            profile.link[static_cast<std::size_t>(i)] = o.link;
            profile.vote[static_cast<std::size_t>(i)] = o.vote;
        }
        ++result.profiles_scanned;
        if (check_equilibrium(t, profile, nullptr)) {
            ++result.equilibria_found;
            found.try_emplace(outcome_partition(profile), profile);
        }
        // odometer
        int pos = 0;
        for (; pos < p.n; ++pos) {
            std::size_t u = static_cast<std::size_t>(pos);
            if (++idx[u] < menu[u].size()) break;
            idx[u] = 0;
        }
        if (pos == p.n) break;
    }

    for (auto& [partition, witness] : found) {
        result.partitions.push_back(partition);
        result.witnesses.push_back(witness);
    }
    return result;
}

std::vector<SweepRow> comparative_statics(const GameParams& base, const SweepGrid& grid) {
    auto axis = [](std::vector<double> values, double fallback) {
        if (values.empty()) values.push_back(fallback);
        std::sort(values.begin(), values.end());
        return values;
    };
    std::vector<double> bs = axis(grid.b_values, base.b);
    std::vector<double> thetas = axis(grid.theta_values, base.theta);
    std::vector<double> cs = axis(grid.c_values, base.c);

    std::vector<SweepRow> rows;
    for (double b : bs) {
        for (double theta : thetas) {
            for (double c : cs) {
                GameParams p = base;
                p.b = b;
                p.theta = theta;
                p.c = c;
                SweepRow row;
                row.params = p;
                RestrictionReport rep = check_restrictions(p);
                row.admissible = rep.all_pass();
                row.failed = rep.failed_names();
                if (row.admissible) {
                    SolveResult sr = construct_clientelism_equilibrium(p);
                    row.client_count = sr.outcome.elite_clients[0];
                    double tb = p.theta * p.b;
                    row.client_work = sr.outcome.win.elite[0] * tb + sr.outcome.win.nonnative * p.b;
                    row.nonclient_work = sr.outcome.win.nonnative * p.b;
                    row.work_gap = row.client_work - row.nonclient_work;
                }
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

}  // namespace clientlab::game
