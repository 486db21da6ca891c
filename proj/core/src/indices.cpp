#include "clientlab/indices.hpp"

#include <cmath>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "clientlab/io_util.hpp"

namespace clientlab {

using ordered_json = nlohmann::ordered_json;

std::string_view to_token(LinkClass c) {
    switch (c) {
        case LinkClass::NonReceiver: return "non_receiver";
        case LinkClass::ReciprocalOnly: return "reciprocal_only";
        case LinkClass::Unidirectional: return "unidirectional";
    }
    return "";
}

LinkClass classify_household(const VillageNetwork& net, const std::string& household) {
    if (!net.is_sampled(household))
        throw LookupError("classify_household: '" + household + "' is not sampled");
    bool receives = false;
    for (const std::string& k : counterparts_of(net, household)) {
        RelationSummary rel = relation_between(net, household, k);
        if (rel.services_received.empty()) continue;
        receives = true;
        if (!rel.reciprocal) return LinkClass::Unidirectional;
    }
    return receives ? LinkClass::ReciprocalOnly : LinkClass::NonReceiver;
}

Degrees compute_degrees(const VillageNetwork& net, const std::string& household) {
    if (!net.is_sampled(household))
        throw LookupError("compute_degrees: '" + household + "' is not sampled");
    Degrees d;
    for (const std::string& k : counterparts_of(net, household)) {
        RelationSummary rel = relation_between(net, household, k);
        if (rel.reciprocal)
            ++d.reciprocal;
        else if (rel.unidirectional_count > 0)
            ++d.unidirectional;
        // provide-only counterparts count toward neither degree
    }
    return d;
}

double concentration(const VillageNetwork& net, const std::string& household, bool weighted) {
    if (!net.is_sampled(household))
        throw LookupError("concentration: '" + household + "' is not sampled");
    double total = 0.0;
    for (const std::string& k : counterparts_of(net, household)) {
        RelationSummary rel = relation_between(net, household, k);
        if (rel.reciprocal || rel.unidirectional_count == 0) continue;
        double d = rel.unidirectional_count;
        total += (weighted ? rel.sphere_count : 1.0) * d * d;
    }
    return total;
}

std::vector<double> zscore_pool(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("zscore_pool: empty pool");
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(values.size());
    double sd = std::sqrt(var);
    std::vector<double> z(values.size(), 0.0);
    if (sd == 0.0) return z;
    for (std::size_t i = 0; i < values.size(); ++i) z[i] = (values[i] - mean) / sd;
    return z;
}

PatronReport detect_patrons(const VillageNetwork& net) {
    PatronReport report;
    report.village_id = net.village_id;
    std::size_t n_sampled = net.sampled_households.size();
    // ceil(0.05 * N) without float round-off
    report.threshold_count = static_cast<int>((5 * n_sampled + 99) / 100);

    std::map<std::string, PatronInfo> providers;
    for (const std::string& hh : net.sampled_households) {
        for (const std::string& k : counterparts_of(net, hh)) {
            RelationSummary rel = relation_between(net, hh, k);
            if (rel.reciprocal || rel.unidirectional_count == 0) continue;
            PatronInfo& info = providers[k];
            info.id = k;
            info.client_count += 1;
            info.link_count += rel.unidirectional_count;
        }
    }
    for (auto& [id, info] : providers) {
        if (info.client_count >= report.threshold_count) report.patrons.push_back(info);
    }
    for (const PatronInfo& pi : report.patrons)
        report.clientelism_score += static_cast<double>(pi.client_count) * pi.link_count;
    return report;
}

std::map<std::string, ClientFlags> classify_clients(const VillageNetwork& net,
                                                    const PatronReport& report) {
    if (report.village_id != net.village_id)
        throw std::invalid_argument("classify_clients: report for '" + report.village_id +
                                    "' does not match village '" + net.village_id + "'");
    std::set<std::string> patron_ids;
    for (const PatronInfo& pi : report.patrons) patron_ids.insert(pi.id);

    std::map<std::string, ClientFlags> flags;
    for (const std::string& hh : net.sampled_households) {
        ClientFlags& f = flags[hh];
        f.is_patron_household = patron_ids.count(hh) > 0;
        for (const std::string& k : counterparts_of(net, hh)) {
            if (!patron_ids.count(k)) continue;
            RelationSummary rel = relation_between(net, hh, k);
            if (!rel.reciprocal && rel.unidirectional_count > 0) f.patron_ids.push_back(k);
        }
        f.is_client = !f.patron_ids.empty();
    }
    return flags;
}

VillageIndices compute_village_indices(const VillageNetwork& net) {
    VillageIndices out;
    out.patrons = detect_patrons(net);
    std::map<std::string, ClientFlags> flags = classify_clients(net, out.patrons);
    for (const std::string& hh : net.sampled_households) {
        HouseholdIndexRecord rec;
        rec.village_id = net.village_id;
        rec.household_id = hh;
        rec.link_class = classify_household(net, hh);
        Degrees d = compute_degrees(net, hh);
        rec.degree_reciprocal = d.reciprocal;
        rec.degree_unidirectional = d.unidirectional;
        rec.concentration_raw = concentration(net, hh, false);
        rec.weighted_raw = concentration(net, hh, true);
        const ClientFlags& f = flags.at(hh);
        rec.is_client = f.is_client;
        rec.is_patron = f.is_patron_household;
        rec.patron_ids = f.patron_ids;
        out.households.push_back(std::move(rec));
    }
    return out;
}

void apply_pooled_zscores(std::vector<VillageIndices>& villages) {
    std::vector<double> raw, weighted;
    for (const VillageIndices& v : villages) {
        for (const HouseholdIndexRecord& rec : v.households) {
            raw.push_back(rec.concentration_raw);
            weighted.push_back(rec.weighted_raw);
        }
    }
    if (raw.empty()) return;
    std::vector<double> zr = zscore_pool(raw);
    std::vector<double> zw = zscore_pool(weighted);
    std::size_t i = 0;
    for (VillageIndices& v : villages) {
        for (HouseholdIndexRecord& rec : v.households) {
            rec.concentration_z = zr[i];
            rec.weighted_z = zw[i];
            ++i;
        }
    }
}

std::vector<VillageIndices> compute_indices(const std::vector<VillageNetwork>& nets) {
    std::vector<VillageIndices> out;
    out.reserve(nets.size());
    for (const VillageNetwork& net : nets) out.push_back(compute_village_indices(net));
    apply_pooled_zscores(out);
    return out;
}

void write_household_csv(const std::vector<VillageIndices>& villages, std::ostream& out) {
    out << "village_id,household_id,link_class,degree_reciprocal,degree_unidirectional,"
           "concentration_raw,concentration_z,weighted_raw,weighted_z,is_client,is_patron,"
           "patron_ids\n";
    for (const VillageIndices& v : villages) {
        for (const HouseholdIndexRecord& r : v.households) {
            out << r.village_id << ',' << r.household_id << ',' << to_token(r.link_class) << ','
                << r.degree_reciprocal << ',' << r.degree_unidirectional << ','
                << format_double(r.concentration_raw) << ',' << format_double(r.concentration_z)
                << ',' << format_double(r.weighted_raw) << ',' << format_double(r.weighted_z)
                << ',' << (r.is_client ? 1 : 0) << ',' << (r.is_patron ? 1 : 0) << ','
                << join(r.patron_ids, ';') << '\n';
        }
    }
}

namespace {

ordered_json patron_report_node(const PatronReport& report) {
    ordered_json patrons = ordered_json::array();
    for (const PatronInfo& pi : report.patrons)
        patrons.push_back({{"id", pi.id}, {"c", pi.client_count}, {"n", pi.link_count}});
    return ordered_json{{"village_id", report.village_id},
                        {"threshold_count", report.threshold_count},
                        {"patrons", patrons},
                        {"clientelism_score", report.clientelism_score}};
}

}  // namespace

std::string patron_report_json(const PatronReport& report) {
    return patron_report_node(report).dump(2) + "\n";
}

std::string patron_reports_json(const std::vector<VillageIndices>& villages) {
    ordered_json arr = ordered_json::array();
    for (const VillageIndices& v : villages) arr.push_back(patron_report_node(v.patrons));
    return arr.dump(2) + "\n";
}

}  // namespace clientlab
