#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "clientlab/dataset.hpp"

namespace clientlab {

class CollinearityError : public std::runtime_error {
  public:
    CollinearityError(const std::string& what, std::vector<std::string> columns);
    const std::vector<std::string>& columns() const { return columns_; }

  private:
    std::vector<std::string> columns_;
};

struct ModelSpec {
    std::string name;                  // "model1".."model9"
    std::string outcome;
    std::vector<std::string> focal;    // reported regressors
    std::vector<std::string> controls; // categoricals expand to dummies, first label is the reference
    bool village_fixed_effects = false;
    bool village_characteristics = false;  // mutually exclusive with fixed effects
    std::vector<std::string> village_columns;
};

struct FitResult {
    std::string model;
    std::string variant;  // "fe" or "village_chars"
    std::string outcome;
    std::vector<std::string> names;
    std::vector<double> coef;
    std::vector<double> se;
    std::vector<double> vcov;  // row major, k_params x k_params
    int n_obs = 0;
    int n_clusters = 0;
    int k_params = 0;  // columns of the solved design matrix

    double coef_of(const std::string& name) const;
    double se_of(const std::string& name) const;
};

// Least squares through column-pivoted QR (rank deficiencies are reported
// with the offending column names, never silently dropped), village-
// clustered sandwich covariance with the CR1 small-sample factor
// (G/(G-1)) * ((N-1)/(N-K)). The FE variant absorbs villages by within
// demeaning; the village-characteristics variant adds an intercept and the
// village columns instead. Needs at least two clusters.
FitResult ols_cluster_fit(const Dataset& data, const ModelSpec& spec);

// The nine-specification suite over asymmetric-network exposure: link-type
// dummies, degrees, concentration and weighted-concentration z-scores, the
// client dummy, the three-way received-link split, and the client splits
// by patron political role, patron business standing, and Pradhan caste
// match. Models 3-9 control for the reciprocal degree.
std::vector<ModelSpec> build_model_suite(const std::string& outcome, bool village_fixed_effects);

// Every model x {fe, village_chars} x outcome present in the data
// ("participation", "days_worked"). Specifications whose columns are
// missing or degenerate on this data (rank deficient) are left out.
std::vector<FitResult> run_model_suite(const Dataset& data);

std::string fit_results_json(const std::vector<FitResult>& results);
std::string fit_results_csv(const std::vector<FitResult>& results);

}  // namespace clientlab
