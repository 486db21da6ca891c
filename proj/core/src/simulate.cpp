#include "clientlab/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "clientlab/indices.hpp"
#include "clientlab/rng.hpp"

namespace clientlab {

namespace {

constexpr std::array<double, 4> caste_probs = {0.30, 0.40, 0.20, 0.10};
const std::vector<std::string> caste_labels = {"general", "obc", "sc", "st"};

std::string zero_pad(int value, int width) {
    std::string s = std::to_string(value);
    while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
    return s;
}

std::string village_name(int index, int total) {
    int width = std::max(2, static_cast<int>(std::to_string(total).size()));
    return "v" + zero_pad(index + 1, width);
}

int poisson(Rng& rng, double lambda) {
    double limit = std::exp(-lambda);
    int k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= rng.uniform();
    } while (p > limit);
    return k - 1;
}

// first `count` entries of a partial Fisher-Yates over 0..domain-1
std::vector<int> pick_distinct(Rng& rng, int count, int domain) {
    std::vector<int> idx(static_cast<std::size_t>(domain));
    std::iota(idx.begin(), idx.end(), 0);
    for (int i = 0; i < count; ++i)
        std::swap(idx[static_cast<std::size_t>(i)],
                  idx[static_cast<std::size_t>(rng.uniform_int(i, domain - 1))]);
    idx.resize(static_cast<std::size_t>(count));
    return idx;
}

struct VillageDraw {
    VillageNetwork net;
    std::map<std::string, bool> provider_political;  // external providers
    std::map<std::string, bool> provider_business;
    int pradhan_caste = 0;
    double town_distance_km = 0.0;
    double prop_agriculture = 0.0;
    double rainfall_mm = 0.0;
    double irrigated_fraction = 0.0;
};

// Survey-style village: three provider hubs that serve many households,
// roughly 45/10/45 shares of non-receivers, reciprocal pairs and
// unidirectional receivers, and a fifth of households ending up as clients.
void draw_random_network(Rng& rng, int households, VillageNetwork& net) {
    int width = std::max(3, static_cast<int>(std::to_string(households).size()));
    std::vector<std::string> ids;
    ids.reserve(static_cast<std::size_t>(households));
    for (int i = 0; i < households; ++i) ids.push_back("h" + zero_pad(i + 1, width));
    for (const std::string& id : ids) net.sampled_households.insert(id);

    std::vector<int> order(static_cast<std::size_t>(households));
    std::iota(order.begin(), order.end(), 0);
    for (int i = 0; i < households - 1; ++i)
        std::swap(order[static_cast<std::size_t>(i)],
                  order[static_cast<std::size_t>(rng.uniform_int(i, households - 1))]);

    std::array<int, 3> hubs = {order[0], order[1], order[2]};
    std::vector<int> others(order.begin() + 3, order.end());

    int n_recip = static_cast<int>(0.10 * households + 0.5) & ~1;
    int n_uni = static_cast<int>(0.45 * households + 0.5);
    n_uni = std::min<int>(n_uni, static_cast<int>(others.size()) - n_recip);

    for (int i = 0; i + 1 < n_recip; i += 2) {
        const std::string& a = ids[static_cast<std::size_t>(others[static_cast<std::size_t>(i)])];
        const std::string& b = ids[static_cast<std::size_t>(others[static_cast<std::size_t>(i + 1)])];
        net.edges.insert({a, b, all_service_categories[static_cast<std::size_t>(rng.uniform_int(0, 9))]});
        net.edges.insert({b, a, all_service_categories[static_cast<std::size_t>(rng.uniform_int(0, 9))]});
    }

    std::vector<int> pool(others.begin() + n_recip + n_uni, others.end());
    const std::array<double, 3> depth_w = {0.6, 0.3, 0.1};
    const std::array<double, 3> span_w = {0.7, 0.2, 0.1};
    for (int i = n_recip; i < n_recip + n_uni; ++i) {
        const std::string& receiver = ids[static_cast<std::size_t>(others[static_cast<std::size_t>(i)])];
        int depth = rng.categorical(depth_w) + 1;
        std::set<std::string> taken;
        for (int d = 0; d < depth; ++d) {
            std::string provider;
            for (int attempt = 0; attempt < 10; ++attempt) {
                if (rng.bernoulli(0.4)) {
                    provider = ids[static_cast<std::size_t>(hubs[static_cast<std::size_t>(rng.uniform_int(0, 2))])];
                } else if (rng.bernoulli(0.15) || pool.empty()) {
                    provider = "x" + std::to_string(rng.uniform_int(1, 5));
                } else {
                    provider = ids[static_cast<std::size_t>(
                        pool[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(pool.size()) - 1))])];
                }
                if (provider != receiver && taken.insert(provider).second) break;
                provider.clear();
            }
            if (provider.empty()) continue;
            if (provider[0] == 'x') net.external_providers.insert(provider);
            int span = rng.categorical(span_w) + 1;
            for (int cat : pick_distinct(rng, span, 10))
                net.edges.insert({receiver, provider, all_service_categories[static_cast<std::size_t>(cat)]});
        }
    }
}

struct Covariates {
    std::vector<int> caste;
    std::vector<double> low_skilled, education, stable_occupation, remittance, land_acres,
        asset_score, political_member, mediates_disputes, visited_institutions;
};

}  // namespace

Dataset simulate_survey(const SimulateConfig& cfg) {
    if (cfg.villages < 2) throw std::invalid_argument("simulate: need at least two villages");
    if (!cfg.game_params && cfg.households < 10)
        throw std::invalid_argument("simulate: need at least 10 households per village");

    std::optional<game::SolveResult> solved;
    if (cfg.game_params) solved = game::construct_clientelism_equilibrium(*cfg.game_params);

    std::vector<VillageDraw> draws(static_cast<std::size_t>(cfg.villages));
    std::vector<VillageNetwork> nets;
    for (int v = 0; v < cfg.villages; ++v) {
        Rng rng(Rng::mix(cfg.seed, 2ull * static_cast<std::uint64_t>(v)));
        VillageDraw& d = draws[static_cast<std::size_t>(v)];
        d.town_distance_km = 1.0 + 24.0 * rng.uniform();
        d.prop_agriculture = 0.3 + 0.6 * rng.uniform();
        d.rainfall_mm = rng.normal(950.0, 180.0);
        d.irrigated_fraction = 0.1 + 0.7 * rng.uniform();
        d.pradhan_caste = rng.categorical(caste_probs);
        d.net.village_id = village_name(v, cfg.villages);
        if (solved) {
            VillageNetwork game_net = game::equilibrium_to_network(*cfg.game_params, solved->profile);
            d.net.sampled_households = std::move(game_net.sampled_households);
            d.net.external_providers = game_net.external_providers;
            d.net.edges = std::move(game_net.edges);
            for (const std::string& elite : game_net.external_providers) {
                d.provider_political[elite] = rng.bernoulli(0.5);
                d.provider_business[elite] = rng.bernoulli(0.5);
            }
        } else {
            draw_random_network(rng, cfg.households, d.net);
        }
        nets.push_back(d.net);
    }

    std::vector<VillageIndices> indices = compute_indices(nets);

    Dataset data;
    std::vector<double> household_vals;
    std::vector<std::string> household_labels;
    std::map<std::string, std::size_t> household_index;
    std::vector<double> lt_recip, lt_uni, deg_recip, deg_uni, conc, conc_z, wconc, wconc_z, client,
        is_patron, uni_not_client, cl_pol, cl_nonpol, cl_bus, cl_nonbus, cl_same, cl_diff;
    Covariates cov;
    std::vector<double> town, prop_agri, rain, irrig, cl_score, participation, days;

    for (int v = 0; v < cfg.villages; ++v) {
        const VillageDraw& d = draws[static_cast<std::size_t>(v)];
        const std::vector<HouseholdIndexRecord>& records = indices[static_cast<std::size_t>(v)].households;
        double village_score = indices[static_cast<std::size_t>(v)].patrons.clientelism_score;

        Rng rng(Rng::mix(cfg.seed, 2ull * static_cast<std::uint64_t>(v) + 1));
        double u_participation = rng.normal(0.0, 0.05);
        double u_days = rng.normal(0.0, 3.0);

        // covariates first, so patron households have theirs before clients
        // look them up
        std::map<std::string, std::size_t> local;
        std::size_t base = cov.caste.size();
        for (const HouseholdIndexRecord& rec : records) {
            local[rec.household_id] = cov.caste.size() - base;
            cov.caste.push_back(rng.categorical(caste_probs));
            cov.low_skilled.push_back(rng.bernoulli(0.55) ? 1.0 : 0.0);
            double edu = std::round(std::clamp(rng.normal(4.5, 3.5), 0.0, 15.0));
            cov.education.push_back(edu);
            cov.stable_occupation.push_back(rng.bernoulli(0.45) ? 1.0 : 0.0);
            cov.remittance.push_back(rng.bernoulli(0.12) ? 1.0 : 0.0);
            cov.land_acres.push_back(std::max(0.0, rng.normal(1.8, 2.2)));
            cov.asset_score.push_back(rng.normal(0.0, 1.0));
            cov.political_member.push_back(rng.bernoulli(0.08) ? 1.0 : 0.0);
            cov.mediates_disputes.push_back(rng.bernoulli(0.10) ? 1.0 : 0.0);
            cov.visited_institutions.push_back(static_cast<double>(poisson(rng, 1.8)));
        }

        for (std::size_t r = 0; r < records.size(); ++r) {
            const HouseholdIndexRecord& rec = records[r];
            std::size_t row = base + r;
            data.village.push_back(d.net.village_id);

            auto [it, fresh] = household_index.try_emplace(rec.household_id, household_labels.size());
            if (fresh) household_labels.push_back(rec.household_id);
            household_vals.push_back(static_cast<double>(it->second));

            bool cl = rec.is_client;
            bool uni = rec.link_class == LinkClass::Unidirectional;
            lt_recip.push_back(rec.link_class == LinkClass::ReciprocalOnly ? 1.0 : 0.0);
            lt_uni.push_back(uni ? 1.0 : 0.0);
            deg_recip.push_back(rec.degree_reciprocal);
            deg_uni.push_back(rec.degree_unidirectional);
            conc.push_back(rec.concentration_raw);
            conc_z.push_back(rec.concentration_z);
            wconc.push_back(rec.weighted_raw);
            wconc_z.push_back(rec.weighted_z);
            client.push_back(cl ? 1.0 : 0.0);
            is_patron.push_back(rec.is_patron ? 1.0 : 0.0);
            uni_not_client.push_back(uni && !cl ? 1.0 : 0.0);

            bool political = false, business = false;
            for (const std::string& patron : rec.patron_ids) {
                if (d.net.is_sampled(patron)) {
                    std::size_t p = local.at(patron);
                    political = political || cov.political_member[base + p] == 1.0;
                    business = business || cov.asset_score[base + p] > 0.0;
                } else {
                    auto pit = d.provider_political.find(patron);
                    if (pit != d.provider_political.end() && pit->second) political = true;
                    auto bit = d.provider_business.find(patron);
                    if (bit != d.provider_business.end() && bit->second) business = true;
                }
            }
            cl_pol.push_back(cl && political ? 1.0 : 0.0);
            cl_nonpol.push_back(cl && !political ? 1.0 : 0.0);
            cl_bus.push_back(cl && business ? 1.0 : 0.0);
            cl_nonbus.push_back(cl && !business ? 1.0 : 0.0);
            bool same = cov.caste[row] == d.pradhan_caste;
            cl_same.push_back(cl && same ? 1.0 : 0.0);
            cl_diff.push_back(cl && !same ? 1.0 : 0.0);

            town.push_back(d.town_distance_km);
            prop_agri.push_back(d.prop_agriculture);
            rain.push_back(d.rainfall_mm);
            irrig.push_back(d.irrigated_fraction);
            cl_score.push_back(village_score);
        }

        static const std::array<double, 4> caste_shift = {0.0, -0.02, 0.03, 0.04};
        for (std::size_t r = 0; r < records.size(); ++r) {
            std::size_t row = base + r;
            double p = 0.35 + cfg.effects.participation_client * client[row] -
                       0.05 * cov.low_skilled[row] + 0.01 * cov.education[row] +
                       0.04 * cov.stable_occupation[row] + 0.02 * cov.asset_score[row] +
                       0.015 * cov.land_acres[row] + 0.03 * cov.political_member[row] +
                       caste_shift[static_cast<std::size_t>(cov.caste[row])] + u_participation;
            p = std::clamp(p, 0.02, 0.98);
            participation.push_back(rng.bernoulli(p) ? 1.0 : 0.0);

            double base_days = 28.0 + cfg.effects.days_client * client[row] +
                               2.0 * cov.stable_occupation[row] + 1.0 * cov.asset_score[row] +
                               0.5 * cov.land_acres[row] - 1.5 * cov.low_skilled[row] +
                               0.2 * cov.education[row] + u_days + rng.normal(0.0, 12.0);
            days.push_back(truncate_days(std::max(0.0, base_days)));
        }
    }

    auto add = [&data](const std::string& name, ColumnKind kind, std::vector<double> values,
                       std::vector<std::string> labels = {}) {
        Column c;
        c.name = name;
        c.kind = kind;
        c.values = std::move(values);
        c.labels = std::move(labels);
        data.add(std::move(c));
    };

    std::vector<double> caste_vals(cov.caste.begin(), cov.caste.end());
    add("household", ColumnKind::Categorical, std::move(household_vals), household_labels);
    add("linktype_reciprocal", ColumnKind::Binary, std::move(lt_recip));
    add("linktype_unidirectional", ColumnKind::Binary, std::move(lt_uni));
    add("degree_reciprocal", ColumnKind::Count, std::move(deg_recip));
    add("degree_unidirectional", ColumnKind::Count, std::move(deg_uni));
    add("concentration", ColumnKind::Continuous, std::move(conc));
    add("concentration_z", ColumnKind::Continuous, std::move(conc_z));
    add("weighted_concentration", ColumnKind::Continuous, std::move(wconc));
    add("weighted_concentration_z", ColumnKind::Continuous, std::move(wconc_z));
    add("client", ColumnKind::Binary, std::move(client));
    add("is_patron", ColumnKind::Binary, std::move(is_patron));
    add("unidir_not_client", ColumnKind::Binary, std::move(uni_not_client));
    add("client_political_patron", ColumnKind::Binary, std::move(cl_pol));
    add("client_nonpolitical_patron", ColumnKind::Binary, std::move(cl_nonpol));
    add("client_business_patron", ColumnKind::Binary, std::move(cl_bus));
    add("client_nonbusiness_patron", ColumnKind::Binary, std::move(cl_nonbus));
    add("client_pradhan_caste_same", ColumnKind::Binary, std::move(cl_same));
    add("client_pradhan_caste_diff", ColumnKind::Binary, std::move(cl_diff));
    add("caste", ColumnKind::Categorical, std::move(caste_vals), caste_labels);
    add("low_skilled", ColumnKind::Binary, std::move(cov.low_skilled));
    add("education", ColumnKind::Count, std::move(cov.education));
    add("stable_occupation", ColumnKind::Binary, std::move(cov.stable_occupation));
    add("remittance", ColumnKind::Binary, std::move(cov.remittance));
    add("land_acres", ColumnKind::Continuous, std::move(cov.land_acres));
    add("asset_score", ColumnKind::Continuous, std::move(cov.asset_score));
    add("political_member", ColumnKind::Binary, std::move(cov.political_member));
    add("mediates_disputes", ColumnKind::Binary, std::move(cov.mediates_disputes));
    add("visited_institutions", ColumnKind::Count, std::move(cov.visited_institutions));
    add("town_distance_km", ColumnKind::Continuous, std::move(town));
    add("prop_agriculture", ColumnKind::Continuous, std::move(prop_agri));
    add("rainfall_mm", ColumnKind::Continuous, std::move(rain));
    add("irrigated_fraction", ColumnKind::Continuous, std::move(irrig));
    add("clientelism_score", ColumnKind::Continuous, std::move(cl_score));
    add("participation", ColumnKind::Binary, std::move(participation));
    add("days_worked", ColumnKind::Continuous, std::move(days));
    return data;
}

}  // namespace clientlab
