#pragma once

// Reference implementations of every network index, computed by brute
// edge scans over the raw edge set. Nothing here is shared with the
// library: the sphere table is a local copy, the patron threshold uses a
// different integer formula, and each quantity is recomputed from scratch
// for every household. Slow on purpose.

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "clientlab/network.hpp"

namespace naive {

// 0 economic, 1 political, 2 social
inline int sphere_id(clientlab::ServiceCategory c) {
    using SC = clientlab::ServiceCategory;
    switch (c) {
        case SC::InputPurchase:
        case SC::LandTenancy:
        case SC::OutputSale:
        case SC::Labour:
        case SC::Credit:
            return 0;
        case SC::WelfareAccess:
        case SC::PoliticalGuidance:
        case SC::EmploymentDispute:
            return 1;
        case SC::ReligiousGuidance:
        case SC::FamilyDispute:
            return 2;
    }
    return -1;
}

struct PairScan {
    int received = 0;
    int provided = 0;
    std::set<int> spheres_received;
};

inline PairScan scan_pair(const clientlab::VillageNetwork& net, const std::string& x,
                          const std::string& k) {
    PairScan p;
    for (const auto& e : net.edges) {
        if (e.receiver == x && e.provider == k) {
            p.received += 1;
            p.spheres_received.insert(sphere_id(e.category));
        }
        if (e.receiver == k && e.provider == x) p.provided += 1;
    }
    return p;
}

inline std::set<std::string> counterparts(const clientlab::VillageNetwork& net,
                                          const std::string& x) {
    std::set<std::string> out;
    for (const auto& e : net.edges) {
        if (e.receiver == x) out.insert(e.provider);
        if (e.provider == x) out.insert(e.receiver);
    }
    return out;
}

// 0 non-receiver, 1 reciprocal-only, 2 unidirectional
inline int classify(const clientlab::VillageNetwork& net, const std::string& x) {
    bool receives_any = false;
    bool any_unreciprocated = false;
    for (const auto& k : counterparts(net, x)) {
        PairScan p = scan_pair(net, x, k);
        if (p.received > 0) {
            receives_any = true;
            if (p.provided == 0) any_unreciprocated = true;
        }
    }
    if (!receives_any) return 0;
    return any_unreciprocated ? 2 : 1;
}

struct NaiveDegrees {
    int reciprocal = 0;
    int unidirectional = 0;
};

inline NaiveDegrees degrees(const clientlab::VillageNetwork& net, const std::string& x) {
    NaiveDegrees d;
    for (const auto& k : counterparts(net, x)) {
        PairScan p = scan_pair(net, x, k);
        if (p.received > 0 && p.provided > 0) d.reciprocal += 1;
        if (p.received > 0 && p.provided == 0) d.unidirectional += 1;
    }
    return d;
}

inline double concentration(const clientlab::VillageNetwork& net, const std::string& x,
                            bool weighted) {
    double total = 0.0;
    for (const auto& k : counterparts(net, x)) {
        PairScan p = scan_pair(net, x, k);
        if (p.received > 0 && p.provided == 0) {
            double d2 = static_cast<double>(p.received) * p.received;
            total += weighted ? static_cast<double>(p.spheres_received.size()) * d2 : d2;
        }
    }
    return total;
}

// ceil(0.05 * n) = ceil(n / 20), kept in integers
inline int patron_threshold(int n_sampled) {
    return n_sampled / 20 + (n_sampled % 20 != 0 ? 1 : 0);
}

struct NaivePatron {
    int client_count = 0;
    int link_count = 0;
};

// Every entity that serves at least threshold distinct sampled households
// without anything back from them.
inline std::map<std::string, NaivePatron> patrons(const clientlab::VillageNetwork& net) {
    std::set<std::string> providers;
    for (const auto& e : net.edges) providers.insert(e.provider);

    std::map<std::string, NaivePatron> out;
    int threshold = patron_threshold(static_cast<int>(net.sampled_households.size()));
    for (const auto& j : providers) {
        NaivePatron cand;
        for (const auto& x : net.sampled_households) {
            if (x == j) continue;
            PairScan p = scan_pair(net, x, j);
            if (p.received > 0 && p.provided == 0) {
                cand.client_count += 1;
                cand.link_count += p.received;
            }
        }
        if (cand.client_count >= threshold) out[j] = cand;
    }
    return out;
}

inline double clientelism_score(const clientlab::VillageNetwork& net) {
    double score = 0.0;
    for (const auto& [id, p] : patrons(net))
        score += static_cast<double>(p.client_count) * p.link_count;
    return score;
}

inline std::set<std::string> clients(const clientlab::VillageNetwork& net) {
    auto pats = patrons(net);
    std::set<std::string> out;
    for (const auto& x : net.sampled_households) {
        for (const auto& [j, info] : pats) {
            if (x == j) continue;
            PairScan p = scan_pair(net, x, j);
            if (p.received > 0 && p.provided == 0) {
                out.insert(x);
                break;
            }
        }
    }
    return out;
}

// two-pass population z-scores; zero variance maps to zeros
inline std::vector<double> zscores(const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    var /= static_cast<double>(v.size());
    std::vector<double> out(v.size(), 0.0);
    if (var > 0.0) {
        double sd = std::sqrt(var);
        for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - mean) / sd;
    }
    return out;
}

}  // namespace naive
