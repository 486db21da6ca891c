#pragma once

// Hand-built villages used across several test binaries.

#include <string>

#include "clientlab/network.hpp"

namespace testsupport {

// Four sampled households, one external moneylender K.
//   A <- K: credit, political_guidance   (one-way, two spheres)
//   B <- K: credit; K <- B: religious_guidance   (reciprocal pair)
//   C <- D: labour; D <- C: credit               (reciprocal pair)
inline clientlab::VillageNetwork v1_village() {
    using SC = clientlab::ServiceCategory;
    clientlab::VillageNetwork net;
    net.village_id = "V1";
    net.sampled_households = {"A", "B", "C", "D"};
    net.external_providers = {"K"};
    net.edges = {
        {"A", "K", SC::Credit},
        {"A", "K", SC::PoliticalGuidance},
        {"B", "K", SC::Credit},
        {"K", "B", SC::ReligiousGuidance},
        {"C", "D", SC::Labour},
        {"D", "C", SC::Credit},
    };
    return net;
}

inline std::string v1_csv() {
    return "village_id,receiver_id,provider_id,service,receiver_sampled,provider_sampled\n"
           "V1,A,K,credit,1,0\n"
           "V1,A,K,political_guidance,1,0\n"
           "V1,B,K,credit,1,0\n"
           "V1,K,B,religious_guidance,0,1\n"
           "V1,C,D,labour,1,1\n"
           "V1,D,C,credit,1,1\n";
}

// 100 sampled households, two external patrons. P1 serves five households
// through eight links (four to h001, one each to h002..h005); P2 serves
// six households through one link each. Threshold is ceil(0.05 * 100) = 5,
// so both qualify and the score is 5*8 + 6*6 = 76.
inline clientlab::VillageNetwork two_patron_village() {
    using SC = clientlab::ServiceCategory;
    clientlab::VillageNetwork net;
    net.village_id = "V2";
    for (int i = 1; i <= 100; ++i) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "h%03d", i);
        net.sampled_households.insert(buf);
    }
    net.external_providers = {"P1", "P2"};
    net.edges.insert({"h001", "P1", SC::Credit});
    net.edges.insert({"h001", "P1", SC::LandTenancy});
    net.edges.insert({"h001", "P1", SC::WelfareAccess});
    net.edges.insert({"h001", "P1", SC::FamilyDispute});
    net.edges.insert({"h002", "P1", SC::Credit});
    net.edges.insert({"h003", "P1", SC::Credit});
    net.edges.insert({"h004", "P1", SC::Credit});
    net.edges.insert({"h005", "P1", SC::Credit});
    for (int i = 6; i <= 11; ++i) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "h%03d", i);
        net.edges.insert({buf, "P2", SC::WelfareAccess});
    }
    return net;
}

}  // namespace testsupport
