#include "clientlab/network.hpp"

#include <set>

namespace clientlab {

RelationSummary relation_between(const VillageNetwork& net, const std::string& household,
                                 const std::string& counterpart) {
    if (!net.is_sampled(household))
        throw LookupError("relation_between: '" + household + "' is not a sampled household in " +
                          net.village_id);
    if (!net.has_entity(counterpart))
        throw LookupError("relation_between: unknown entity '" + counterpart + "' in " +
                          net.village_id);
    if (household == counterpart)
        throw LookupError("relation_between: household and counterpart are the same entity");

    RelationSummary rel;
    rel.household = household;
    rel.counterpart = counterpart;
    for (const ServiceEdge& e : net.edges) {
        if (e.receiver == household && e.provider == counterpart)
            rel.services_received.insert(e.category);
        else if (e.receiver == counterpart && e.provider == household)
            rel.services_provided.insert(e.category);
    }
    rel.reciprocal = !rel.services_received.empty() && !rel.services_provided.empty();
    rel.unidirectional_count =
        rel.reciprocal ? 0 : static_cast<int>(rel.services_received.size());
    std::set<Sphere> spheres;
    for (ServiceCategory c : rel.services_received) spheres.insert(sphere_of(c));
    rel.sphere_count = static_cast<int>(spheres.size());
    return rel;
}

std::vector<std::string> counterparts_of(const VillageNetwork& net, const std::string& household) {
    std::set<std::string> ids;
    for (const ServiceEdge& e : net.edges) {
        if (e.receiver == household) ids.insert(e.provider);
        if (e.provider == household) ids.insert(e.receiver);
    }
    return {ids.begin(), ids.end()};
}

ValidationReport validate_network(const VillageNetwork& net) {
    ValidationReport report;
    if (net.village_id.empty()) report.issues.push_back("village_id is empty");

    for (const std::string& id : net.sampled_households) {
        if (net.external_providers.count(id))
            report.issues.push_back("entity '" + id + "' is both sampled and external");
    }

    for (const ServiceEdge& e : net.edges) {
        std::string label = e.receiver + "<-" + e.provider + ":" + std::string(to_token(e.category));
        if (e.receiver == e.provider) {
            report.issues.push_back("self edge " + label);
            continue;
        }
        bool r_known = net.has_entity(e.receiver);
        bool p_known = net.has_entity(e.provider);
        if (!r_known) report.issues.push_back("dangling receiver in edge " + label);
        if (!p_known) report.issues.push_back("dangling provider in edge " + label);
        if (r_known && p_known && !net.is_sampled(e.receiver) && !net.is_sampled(e.provider))
            report.issues.push_back("edge " + label + " touches no sampled household");
    }
    return report;
}

}  // namespace clientlab
