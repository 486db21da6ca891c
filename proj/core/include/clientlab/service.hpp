#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace clientlab {

// Service categories a household can receive from or provide to another
// entity. Tokens (snake_case) are the on-disk CSV vocabulary.
enum class ServiceCategory {
    InputPurchase,
    LandTenancy,
    OutputSale,
    Labour,
    Credit,
    WelfareAccess,
    PoliticalGuidance,
    EmploymentDispute,
    ReligiousGuidance,
    FamilyDispute,
};

enum class Sphere { Economic, Political, Social };

inline constexpr std::array<ServiceCategory, 10> all_service_categories{
    ServiceCategory::InputPurchase,    ServiceCategory::LandTenancy,
    ServiceCategory::OutputSale,       ServiceCategory::Labour,
    ServiceCategory::Credit,           ServiceCategory::WelfareAccess,
    ServiceCategory::PoliticalGuidance, ServiceCategory::EmploymentDispute,
    ServiceCategory::ReligiousGuidance, ServiceCategory::FamilyDispute,
};

// Sphere is a pure function of the category.
Sphere sphere_of(ServiceCategory c);

std::string_view to_token(ServiceCategory c);
std::string_view to_token(Sphere s);
std::optional<ServiceCategory> service_from_token(std::string_view token);

}  // namespace clientlab
