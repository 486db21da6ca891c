#include "clientlab/service.hpp"

namespace clientlab {

Sphere sphere_of(ServiceCategory c) {
    switch (c) {
        case ServiceCategory::InputPurchase:
        case ServiceCategory::LandTenancy:
        case ServiceCategory::OutputSale:
        case ServiceCategory::Labour:
        case ServiceCategory::Credit:
            return Sphere::Economic;
        case ServiceCategory::WelfareAccess:
        case ServiceCategory::PoliticalGuidance:
        case ServiceCategory::EmploymentDispute:
            return Sphere::Political;
        case ServiceCategory::ReligiousGuidance:
        case ServiceCategory::FamilyDispute:
            return Sphere::Social;
    }
    return Sphere::Social;  // unreachable
}

std::string_view to_token(ServiceCategory c) {
    switch (c) {
        case ServiceCategory::InputPurchase: return "input_purchase";
        case ServiceCategory::LandTenancy: return "land_tenancy";
        case ServiceCategory::OutputSale: return "output_sale";
        case ServiceCategory::Labour: return "labour";
        case ServiceCategory::Credit: return "credit";
        case ServiceCategory::WelfareAccess: return "welfare_access";
        case ServiceCategory::PoliticalGuidance: return "political_guidance";
        case ServiceCategory::EmploymentDispute: return "employment_dispute";
        case ServiceCategory::ReligiousGuidance: return "religious_guidance";
        case ServiceCategory::FamilyDispute: return "family_dispute";
    }
    return "";
}

std::string_view to_token(Sphere s) {
    switch (s) {
        case Sphere::Economic: return "economic";
        case Sphere::Political: return "political";
        case Sphere::Social: return "social";
    }
    return "";
}

std::optional<ServiceCategory> service_from_token(std::string_view token) {
    for (ServiceCategory c : all_service_categories) {
        if (to_token(c) == token) return c;
    }
    return std::nullopt;
}

}  // namespace clientlab
