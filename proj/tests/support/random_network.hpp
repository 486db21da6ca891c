#pragma once

// Random village generator for property tests. Uses std::mt19937 so the
// draws owe nothing to the library Rng.

#include <random>
#include <string>

#include "clientlab/network.hpp"

namespace testsupport {

inline clientlab::VillageNetwork random_village(std::mt19937& gen, int max_households = 20,
                                                int max_edges = 60) {
    using clientlab::ServiceEdge;
    using clientlab::VillageNetwork;

    VillageNetwork net;
    net.village_id = "rv";

    std::uniform_int_distribution<int> n_hh_dist(1, max_households);
    std::uniform_int_distribution<int> n_ext_dist(0, 5);
    int n_hh = n_hh_dist(gen);
    int n_ext = n_ext_dist(gen);
    for (int i = 0; i < n_hh; ++i) net.sampled_households.insert("h" + std::to_string(i));
    for (int i = 0; i < n_ext; ++i) net.external_providers.insert("x" + std::to_string(i));

    std::vector<std::string> entities(net.sampled_households.begin(),
                                      net.sampled_households.end());
    entities.insert(entities.end(), net.external_providers.begin(),
                    net.external_providers.end());

    std::uniform_int_distribution<int> n_edge_dist(0, max_edges);
    std::uniform_int_distribution<std::size_t> pick(0, entities.size() - 1);
    std::uniform_int_distribution<int> cat(0, 9);
    int attempts = n_edge_dist(gen);
    for (int i = 0; i < attempts; ++i) {
        const std::string& a = entities[pick(gen)];
        const std::string& b = entities[pick(gen)];
        if (a == b) continue;
        // every edge needs a sampled respondent on at least one end
        if (!net.is_sampled(a) && !net.is_sampled(b)) continue;
        net.edges.insert(ServiceEdge{a, b, clientlab::all_service_categories[cat(gen)]});
    }
    return net;
}

}  // namespace testsupport
