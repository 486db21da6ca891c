#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "clientlab/network.hpp"

namespace clientlab {

enum class LinkClass { NonReceiver, ReciprocalOnly, Unidirectional };

std::string_view to_token(LinkClass c);

// NonReceiver: receives nothing from anyone. ReciprocalOnly: every
// counterpart it receives from also gets something back. Unidirectional:
// at least one counterpart serves it with nothing in return.
LinkClass classify_household(const VillageNetwork& net, const std::string& household);

struct Degrees {
    int reciprocal = 0;
    int unidirectional = 0;
};

Degrees compute_degrees(const VillageNetwork& net, const std::string& household);

// Sum over unreciprocated counterparts of d^2 (plain) or w*d^2 (weighted,
// w = distinct spheres received from that counterpart).
double concentration(const VillageNetwork& net, const std::string& household, bool weighted);

// (x - mean) / sd with the population sd. A zero-variance pool maps to all
// zeros; an empty pool is an error.
std::vector<double> zscore_pool(const std::vector<double>& values);

struct PatronInfo {
    std::string id;
    int client_count = 0;  // c_j: distinct sampled households served unreciprocated
    int link_count = 0;    // n_j: unreciprocated links delivered to those households
};

struct PatronReport {
    std::string village_id;
    int threshold_count = 0;  // ceil(0.05 * sampled households), exact arithmetic
    std::vector<PatronInfo> patrons;  // sorted by id
    double clientelism_score = 0.0;   // sum over patrons of c_j * n_j
};

PatronReport detect_patrons(const VillageNetwork& net);

struct ClientFlags {
    bool is_client = false;
    bool is_patron_household = false;  // sampled household that is itself a patron
    std::vector<std::string> patron_ids;
};

// Flags every sampled household against the detected patrons. The report
// must come from the same village.
std::map<std::string, ClientFlags> classify_clients(const VillageNetwork& net,
                                                    const PatronReport& report);

struct HouseholdIndexRecord {
    std::string village_id;
    std::string household_id;
    LinkClass link_class = LinkClass::NonReceiver;
    int degree_reciprocal = 0;
    int degree_unidirectional = 0;
    double concentration_raw = 0.0;
    double concentration_z = 0.0;
    double weighted_raw = 0.0;
    double weighted_z = 0.0;
    bool is_client = false;
    bool is_patron = false;
    std::vector<std::string> patron_ids;
};

struct VillageIndices {
    std::vector<HouseholdIndexRecord> households;  // sorted by household_id
    PatronReport patrons;
};

// Per-village records with z columns left at zero.
VillageIndices compute_village_indices(const VillageNetwork& net);

// Z-scores are pooled over every sampled household in the run, not per
// village.
void apply_pooled_zscores(std::vector<VillageIndices>& villages);

// Full pipeline: per-village indices plus pooled z-scores.
std::vector<VillageIndices> compute_indices(const std::vector<VillageNetwork>& nets);

void write_household_csv(const std::vector<VillageIndices>& villages, std::ostream& out);
std::string patron_report_json(const PatronReport& report);
std::string patron_reports_json(const std::vector<VillageIndices>& villages);

}  // namespace clientlab
