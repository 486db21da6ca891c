#include "clientlab/game.hpp"

#include <algorithm>
#include <cmath>

namespace clientlab::game {

namespace {

void require_valid_params(const GameParams& p) {
    if (p.n <= 0) throw std::invalid_argument("game: n must be positive");
    if (!(p.theta > 0.0 && p.theta < 1.0))
        throw std::invalid_argument("game: theta must lie in (0,1)");
    if (p.b <= 0.0 || p.c <= 0.0) throw std::invalid_argument("game: b and c must be positive");
    if (p.e < 0.0 || p.R < 0.0) throw std::invalid_argument("game: R and e must be nonnegative");
}

std::string poor_name(int agent_id) { return "poor_" + std::to_string(agent_id); }

}  // namespace

std::vector<double> search_costs(int n) {
    if (n <= 0) throw std::invalid_argument("search_costs: n must be positive");
    std::vector<double> s(n);
    for (int i = 0; i < n; ++i) s[i] = static_cast<double>(i + 1) / n;
    return s;
}

double search_cost(const GameParams& p, int agent_id) {
    if (agent_id < first_poor_id || agent_id >= first_poor_id + p.n)
        throw std::out_of_range("search_cost: agent " + std::to_string(agent_id) +
                                " is not a poor agent for n=" + std::to_string(p.n));
    return static_cast<double>(agent_id - 2) / p.n;
}

bool RestrictionReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const RestrictionCheck& c) { return c.pass; });
}

const RestrictionCheck* RestrictionReport::find(std::string_view name) const {
    for (const RestrictionCheck& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

std::string RestrictionReport::failed_names() const {
    std::string out;
    for (const RestrictionCheck& c : checks) {
        if (c.pass) continue;
        if (!out.empty()) out += ',';
        out += c.name;
    }
    return out;
}

RestrictionReport check_restrictions(const GameParams& p) {
    require_valid_params(p);
    RestrictionReport report;
    double bt = p.b * (1.0 - p.theta);

    RestrictionCheck a1{"a1", p.b >= 3.0, p.b - 3.0, "b >= 3"};
    report.checks.push_back(a1);

    double a2_upper = std::min(2.0 * bt, 2.0);
    RestrictionCheck a2{"a2", p.c > 1.0 && p.c < a2_upper,
                        std::min(p.c - 1.0, a2_upper - p.c),
                        "1 < c < min{2b(1-theta), 2}"};
    report.checks.push_back(a2);

    double a3_rhs = std::min(1.0, bt) - std::max(p.c / 2.0, bt / 2.0);
    RestrictionCheck a3{"a3", 1.0 / p.n < a3_rhs, a3_rhs - 1.0 / p.n,
                        "1/n < min{1, b(1-theta)} - max{c/2, b(1-theta)/2}"};
    report.checks.push_back(a3);

    double r_need = 2.0 * p.n * p.e * (p.theta * p.b);
    RestrictionCheck rb{"r_bound", p.R >= r_need, p.R - r_need, "R >= 2ne(theta b)"};
    report.checks.push_back(rb);

    return report;
}

PoorPartition partition_sets(const GameParams& p) {
    require_valid_params(p);
    PoorPartition part;
    double t0 = p.b * (1.0 - p.theta) / 2.0;
    double t1 = p.b * (1.0 - p.theta);
    for (int i = 0; i < p.n; ++i) {
        int id = first_poor_id + i;
        double s = static_cast<double>(i + 1) / p.n;
        if (s >= t0 - threshold_tol)
            part.pi0.push_back(id);
        else
            part.piU.push_back(id);
        if (s >= t1 - threshold_tol) part.pi1.push_back(id);
    }
    return part;
}

double voting_threshold(const GameParams& p, int patron) {
    if (p.n <= 0 || p.b <= 0.0) throw std::invalid_argument("voting_threshold: invalid params");
    double bt = p.b * (1.0 - p.theta);
    if (patron == 0) return bt / 2.0;
    if (patron == 1 || patron == 2) return bt;
    throw std::invalid_argument("voting_threshold: patron must be 0, 1 or 2");
}

double elite_expected_payoff(const GameParams& p, int votes, int clients) {
    require_valid_params(p);
    if (votes < 0 || votes > p.n)
        throw std::out_of_range("elite_expected_payoff: votes outside 0..n");
    if (clients < 0 || clients > p.n)
        throw std::out_of_range("elite_expected_payoff: clients outside 0..n");
    return (static_cast<double>(votes) / p.n) * (p.R - p.e * clients * (p.theta * p.b));
}

double poor_expected_payoff(const GameParams& p, int agent_id, int link, int vote,
                            const WinProbs& w) {
    double s = search_cost(p, agent_id);
    if (link != unlinked && link != 0 && link != 1 && link != 2)
        throw std::invalid_argument("poor_expected_payoff: bad link value");
    if (link == unlinked && vote != vote_nonnative)
        throw std::invalid_argument("poor_expected_payoff: unlinked agents vote for N");
    if (link != unlinked && vote != link && vote != vote_nonnative)
        throw std::invalid_argument("poor_expected_payoff: linked agents vote patron or N");

    double total = w.elite[0] + w.elite[1] + w.elite[2] + w.nonnative;
    for (double v : {w.elite[0], w.elite[1], w.elite[2], w.nonnative})
        if (v < -1e-9 || v > 1.0 + 1e-9)
            throw std::invalid_argument("poor_expected_payoff: win probability outside [0,1]");
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("poor_expected_payoff: win probabilities must sum to 1");

    double tb = p.theta * p.b;
    if (link == unlinked) return -4.0 * s + w.nonnative * p.b;
    if (link == 0) return w.elite[0] * tb - (1.0 - w.elite[0]) * 2.0 * s + w.nonnative * p.b - p.c;
    return w.elite[link] * tb - (1.0 - w.elite[link]) * s + w.nonnative * p.b - 2.0 * s;
}

void validate_profile(const GameParams& p, const StrategyProfile& profile) {
    require_valid_params(p);
    std::size_t n = static_cast<std::size_t>(p.n);
    if (profile.link.size() != n || profile.vote.size() != n)
        throw std::invalid_argument("profile: link/vote arrays must have n entries");
    std::array<std::vector<char>, 3> consent_mask;
    for (int l = 0; l < 3; ++l) {
        consent_mask[l].assign(n, 0);
        int prev = -1;
        for (int id : profile.consent[l]) {
            if (id < first_poor_id || id >= first_poor_id + p.n)
                throw std::invalid_argument("profile: consent id " + std::to_string(id) +
                                            " is not a poor agent");
            if (id <= prev)
                throw std::invalid_argument("profile: consent ids must be strictly increasing");
            prev = id;
            consent_mask[l][static_cast<std::size_t>(id - first_poor_id)] = 1;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        int link = profile.link[i];
        int vote = profile.vote[i];
        int id = first_poor_id + static_cast<int>(i);
        if (link != unlinked && link != 0 && link != 1 && link != 2)
            throw std::invalid_argument("profile: bad link for agent " + std::to_string(id));
        if (link == unlinked) {
            if (vote != vote_nonnative)
                throw std::invalid_argument("profile: unlinked agent " + std::to_string(id) +
                                            " must vote N");
        } else {
            if (!consent_mask[link][i])
                throw std::invalid_argument("profile: agent " + std::to_string(id) +
                                            " links elite " + std::to_string(link) +
                                            " without consent");
            if (vote != link && vote != vote_nonnative)
                throw std::invalid_argument("profile: agent " + std::to_string(id) +
                                            " must vote for its patron or N");
        }
    }
}

EquilibriumOutcome evaluate_profile(const GameParams& p, const StrategyProfile& profile) {
    validate_profile(p, profile);
    EquilibriumOutcome out;
    out.partition = partition_sets(p);

    for (std::size_t i = 0; i < profile.vote.size(); ++i) {
        int v = profile.vote[i];
        if (v == vote_nonnative)
            ++out.nonnative_votes;
        else
            ++out.elite_votes[v];
        int link = profile.link[i];
        if (link != unlinked) ++out.elite_clients[link];
    }
    for (int l = 0; l < 3; ++l) out.win.elite[l] = static_cast<double>(out.elite_votes[l]) / p.n;
    out.win.nonnative = static_cast<double>(out.nonnative_votes) / p.n;

    double tb = p.theta * p.b;
    out.poor_payoff.resize(profile.link.size());
    out.expected_public_work.resize(profile.link.size());
    for (std::size_t i = 0; i < profile.link.size(); ++i) {
        int id = first_poor_id + static_cast<int>(i);
        int link = profile.link[i];
        out.poor_payoff[i] = poor_expected_payoff(p, id, link, profile.vote[i], out.win);
        double work = out.win.nonnative * p.b;
        if (link != unlinked) work += out.win.elite[link] * tb;
        out.expected_public_work[i] = work;
    }
    for (int l = 0; l < 3; ++l)
        out.elite_payoff[l] = elite_expected_payoff(p, out.elite_votes[l], out.elite_clients[l]);
    return out;
}

SolveResult construct_clientelism_equilibrium(const GameParams& p) {
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
    for (int id : part.pi0) {
        profile.link[static_cast<std::size_t>(id - first_poor_id)] = 0;
        profile.vote[static_cast<std::size_t>(id - first_poor_id)] = 0;
    }
    SolveResult result;
    result.outcome = evaluate_profile(p, profile);
    result.profile = std::move(profile);
    return result;
}

BenchmarkResult construct_benchmark(const GameParams& p, int replicas, bool one_link_cap) {
    RestrictionReport restrictions = check_restrictions(p);
    if (!restrictions.all_pass())
        throw RestrictionError("parameter restrictions fail: " + restrictions.failed_names());
    if (replicas < 1) throw std::invalid_argument("construct_benchmark: replicas must be >= 1");

    BenchmarkResult result;
    result.replicas = replicas;
    result.one_link_cap = one_link_cap;
    result.network.village_id = "benchmark";

    auto provider_name = [](int type, int replica) {
        return "elite_" + std::to_string(type) + "_r" + std::to_string(replica + 1);
    };

    for (int i = 0; i < p.n; ++i) {
        int id = first_poor_id + i;
        std::string hh = poor_name(id);
        result.network.sampled_households.insert(hh);
        std::vector<std::string> providers;
        if (one_link_cap) {
            // one free single-resource link, round robin over all 2*replicas
            // providers; the other resource comes from the market
            int slot = i % (2 * replicas);
            int type = slot < replicas ? 1 : 2;
            int replica = slot % replicas;
            std::string prov = provider_name(type, replica);
            result.network.external_providers.insert(prov);
            result.network.edges.insert(
                {hh, prov,
                 type == 1 ? ServiceCategory::Credit : ServiceCategory::WelfareAccess});
            providers.push_back(prov);
            result.poor_payoff.push_back(-2.0 * search_cost(p, id));
        } else {
            for (int type : {1, 2}) {
                std::string prov = provider_name(type, i % replicas);
                result.network.external_providers.insert(prov);
                result.network.edges.insert(
                    {hh, prov,
                     type == 1 ? ServiceCategory::Credit : ServiceCategory::WelfareAccess});
                providers.push_back(prov);
            }
            result.poor_payoff.push_back(0.0);
        }
        result.providers_of.push_back(std::move(providers));
    }
    return result;
}

VillageNetwork equilibrium_to_network(const GameParams& p, const StrategyProfile& profile) {
    validate_profile(p, profile);
    VillageNetwork net;
    net.village_id = "game";
    for (std::size_t i = 0; i < profile.link.size(); ++i) {
        int id = first_poor_id + static_cast<int>(i);
        std::string hh = poor_name(id);
        net.sampled_households.insert(hh);
        int link = profile.link[i];
        if (link == unlinked) continue;
        std::string elite = "elite_" + std::to_string(link);
        net.external_providers.insert(elite);
        if (link == 0) {
            // both resources flow through the patron
            net.edges.insert({hh, elite, ServiceCategory::Credit});
            net.edges.insert({hh, elite, ServiceCategory::WelfareAccess});
        } else if (link == 1) {
            net.edges.insert({hh, elite, ServiceCategory::Credit});
        } else {
            net.edges.insert({hh, elite, ServiceCategory::WelfareAccess});
        }
    }
    return net;
}

}  // namespace clientlab::game
