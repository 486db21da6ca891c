#pragma once

#include <compare>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "clientlab/service.hpp"

namespace clientlab {

class LookupError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Directed service flow: `provider` renders `category` to `receiver`.
// Either endpoint may be an external (unsampled) entity, but at least one
// endpoint of every edge must be a sampled household, since all edges are
// reported by sampled respondents.
struct ServiceEdge {
    std::string receiver;
    std::string provider;
    ServiceCategory category;

    auto operator<=>(const ServiceEdge&) const = default;
};

struct VillageNetwork {
    std::string village_id;
    std::set<std::string> sampled_households;
    std::set<std::string> external_providers;
    std::set<ServiceEdge> edges;

    bool is_sampled(const std::string& id) const { return sampled_households.count(id) > 0; }
    bool has_entity(const std::string& id) const {
        return sampled_households.count(id) > 0 || external_providers.count(id) > 0;
    }

    bool operator==(const VillageNetwork&) const = default;
};

// Pairwise relation X--K seen from household X's side.
// d is the unreciprocated service count: |received| unless any reverse
// service exists, in which case the pair nets out to 0.
// w counts the distinct spheres among the services received.
struct RelationSummary {
    std::string household;
    std::string counterpart;
    std::set<ServiceCategory> services_received;
    std::set<ServiceCategory> services_provided;
    bool reciprocal = false;
    int unidirectional_count = 0;
    int sphere_count = 0;
};

// `household` must be sampled; `counterpart` must be a known entity.
// A pair with no edges in either direction yields an all-empty summary.
RelationSummary relation_between(const VillageNetwork& net, const std::string& household,
                                 const std::string& counterpart);

// Entities adjacent to `household` through at least one edge, sorted.
std::vector<std::string> counterparts_of(const VillageNetwork& net, const std::string& household);

struct ValidationReport {
    std::vector<std::string> issues;
    bool clean() const { return issues.empty(); }
};

// Reports invariant violations (overlapping entity sets, dangling edge
// endpoints, self edges, edges no sampled household could have reported)
// without throwing.
ValidationReport validate_network(const VillageNetwork& net);

}  // namespace clientlab
