#include "clientlab/regression.hpp"

#include <cmath>
#include <map>
#include <utility>

#include <Eigen/Dense>
#include <json.hpp>

#include "clientlab/io_util.hpp"

namespace clientlab {

namespace {

using json = nlohmann::ordered_json;

struct DesignBuild {
    std::vector<std::string> names;
    std::vector<std::vector<double>> cols;
};

// Categorical columns expand to one dummy per label, first label left out
// as the reference.
void append_column(const Dataset& data, const std::string& name, DesignBuild& out) {
    const Column& c = data.col(name);
    if (c.kind == ColumnKind::Categorical) {
        for (std::size_t k = 1; k < c.labels.size(); ++k) {
            std::vector<double> v(data.rows(), 0.0);
            for (std::size_t r = 0; r < data.rows(); ++r)
                v[r] = c.values[r] == static_cast<double>(k) ? 1.0 : 0.0;
            out.names.push_back(c.name + "_" + c.labels[k]);
            out.cols.push_back(std::move(v));
        }
    } else {
        out.names.push_back(name);
        out.cols.push_back(c.values);
    }
}

}  // namespace

CollinearityError::CollinearityError(const std::string& what, std::vector<std::string> columns)
    : std::runtime_error(what), columns_(std::move(columns)) {}

double FitResult::coef_of(const std::string& name) const {
    for (std::size_t j = 0; j < names.size(); ++j)
        if (names[j] == name) return coef[j];
    throw LookupError("fit: no term \"" + name + "\"");
}

double FitResult::se_of(const std::string& name) const {
    for (std::size_t j = 0; j < names.size(); ++j)
        if (names[j] == name) return se[j];
    throw LookupError("fit: no term \"" + name + "\"");
}

FitResult ols_cluster_fit(const Dataset& data, const ModelSpec& spec) {
    if (spec.village_fixed_effects && spec.village_characteristics)
        throw std::invalid_argument("ols_cluster_fit: fixed effects and village characteristics "
                                    "are mutually exclusive");

    const Column& yc = data.col(spec.outcome);
    if (yc.kind == ColumnKind::Categorical)
        throw std::invalid_argument("ols_cluster_fit: categorical outcome \"" + spec.outcome + "\"");

    DesignBuild db;
    if (spec.village_characteristics) {
        db.names.push_back("(intercept)");
        db.cols.emplace_back(data.rows(), 1.0);
    }
    for (const std::string& name : spec.focal) append_column(data, name, db);
    for (const std::string& name : spec.controls) append_column(data, name, db);
    if (spec.village_characteristics)
        for (const std::string& name : spec.village_columns) append_column(data, name, db);

    const Eigen::Index N = static_cast<Eigen::Index>(data.rows());
    const Eigen::Index k = static_cast<Eigen::Index>(db.cols.size());
    if (k == 0) throw std::invalid_argument("ols_cluster_fit: empty design");
    if (N <= k) throw std::invalid_argument("ols_cluster_fit: more parameters than rows");

    Eigen::MatrixXd X(N, k);
    Eigen::VectorXd y(N);
    for (Eigen::Index j = 0; j < k; ++j)
        for (Eigen::Index r = 0; r < N; ++r) X(r, j) = db.cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)];
    for (Eigen::Index r = 0; r < N; ++r) y(r) = yc.values[static_cast<std::size_t>(r)];

    // cluster rows by village, in order of first appearance
    std::map<std::string, std::vector<Eigen::Index>> cluster_map;
    for (Eigen::Index r = 0; r < N; ++r) cluster_map[data.village[static_cast<std::size_t>(r)]].push_back(r);
    const int G = static_cast<int>(cluster_map.size());
    if (G < 2) throw std::invalid_argument("ols_cluster_fit: need at least two clusters, have " +
                                           std::to_string(G));

    if (spec.village_fixed_effects) {
        for (const auto& [village, rows] : cluster_map) {
            double inv = 1.0 / static_cast<double>(rows.size());
            Eigen::RowVectorXd mx = Eigen::RowVectorXd::Zero(k);
            double my = 0.0;
            for (Eigen::Index r : rows) {
                mx += X.row(r);
                my += y(r);
            }
            mx *= inv;
            my *= inv;
            for (Eigen::Index r : rows) {
                X.row(r) -= mx;
                y(r) -= my;
            }
        }
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() < k) {
        const auto& perm = qr.colsPermutation().indices();
        std::vector<std::string> dropped;
        for (Eigen::Index j = qr.rank(); j < k; ++j)
            dropped.push_back(db.names[static_cast<std::size_t>(perm(j))]);
        std::string msg =
            "ols_cluster_fit: design is rank deficient, offending columns: " + join(dropped, ',');
        throw CollinearityError(msg, std::move(dropped));
    }

    Eigen::VectorXd beta = qr.solve(y);
    Eigen::VectorXd u = y - X * beta;

    Eigen::MatrixXd bread =
        (X.transpose() * X).ldlt().solve(Eigen::MatrixXd::Identity(k, k));
    Eigen::MatrixXd meat = Eigen::MatrixXd::Zero(k, k);
    for (const auto& [village, rows] : cluster_map) {
        Eigen::VectorXd h = Eigen::VectorXd::Zero(k);
        for (Eigen::Index r : rows) h += X.row(r).transpose() * u(r);
        meat += h * h.transpose();
    }

    double cr1 = (static_cast<double>(G) / (G - 1.0)) *
                 ((static_cast<double>(N) - 1.0) / (static_cast<double>(N) - static_cast<double>(k)));
    Eigen::MatrixXd vcov = cr1 * bread * meat * bread;

    FitResult fit;
    fit.model = spec.name;
    fit.variant = spec.village_fixed_effects ? "fe"
                : spec.village_characteristics ? "village_chars"
                                               : "pooled";
    fit.outcome = spec.outcome;
    fit.names = db.names;
    fit.coef.assign(beta.data(), beta.data() + k);
    fit.se.resize(static_cast<std::size_t>(k));
    fit.vcov.resize(static_cast<std::size_t>(k * k));
    for (Eigen::Index i = 0; i < k; ++i) {
        fit.se[static_cast<std::size_t>(i)] = std::sqrt(vcov(i, i));
        for (Eigen::Index j = 0; j < k; ++j)
            fit.vcov[static_cast<std::size_t>(i * k + j)] = vcov(i, j);
    }
    fit.n_obs = static_cast<int>(N);
    fit.n_clusters = G;
    fit.k_params = static_cast<int>(k);
    return fit;
}

std::vector<ModelSpec> build_model_suite(const std::string& outcome, bool village_fixed_effects) {
    const std::vector<std::string> base_controls = {
        "caste",          "low_skilled",      "education",
        "stable_occupation", "remittance",    "land_acres",
        "asset_score",    "political_member", "mediates_disputes",
        "visited_institutions"};
    const std::vector<std::string> village_columns = {
        "town_distance_km", "prop_agriculture", "rainfall_mm", "irrigated_fraction",
        "clientelism_score"};

    auto make = [&](std::string name, std::vector<std::string> focal, bool add_recip_degree) {
        ModelSpec spec;
        spec.name = std::move(name);
        spec.outcome = outcome;
        spec.focal = std::move(focal);
        spec.controls = base_controls;
        if (add_recip_degree) spec.controls.push_back("degree_reciprocal");
        spec.village_fixed_effects = village_fixed_effects;
        spec.village_characteristics = !village_fixed_effects;
        if (spec.village_characteristics) spec.village_columns = village_columns;
        return spec;
    };

    std::vector<ModelSpec> suite;
    suite.push_back(make("model1", {"linktype_reciprocal", "linktype_unidirectional"}, false));
    suite.push_back(make("model2", {"degree_reciprocal", "degree_unidirectional"}, false));
    suite.push_back(make("model3", {"concentration_z"}, true));
    suite.push_back(make("model4", {"weighted_concentration_z"}, true));
    suite.push_back(make("model5", {"client"}, true));
    suite.push_back(make("model6", {"unidir_not_client", "client"}, true));
    suite.push_back(make("model7", {"client_nonpolitical_patron", "client_political_patron"}, true));
    suite.push_back(make("model8", {"client_nonbusiness_patron", "client_business_patron"}, true));
    suite.push_back(make("model9", {"client_pradhan_caste_same", "client_pradhan_caste_diff"}, true));
    return suite;
}

std::vector<FitResult> run_model_suite(const Dataset& data) {
    std::vector<FitResult> results;
    for (const char* outcome : {"participation", "days_worked"}) {
        if (!data.has(outcome)) continue;
        for (bool fe : {true, false}) {
            for (const ModelSpec& spec : build_model_suite(outcome, fe)) {
                bool runnable = true;
                for (const std::string& name : spec.focal)
                    if (!data.has(name)) runnable = false;
                for (const std::string& name : spec.controls)
                    if (!data.has(name)) runnable = false;
                for (const std::string& name : spec.village_columns)
                    if (!data.has(name)) runnable = false;
                if (!runnable) continue;
                try {
                    results.push_back(ols_cluster_fit(data, spec));
                } catch (const CollinearityError&) {
                    // a degenerate split (all-zero dummy, constant village
                    // column) rules the specification out for this data
                }
            }
        }
    }
    return results;
}

std::string fit_results_json(const std::vector<FitResult>& results) {
    json arr = json::array();
    for (const FitResult& fit : results) {
        json node;
        node["model"] = fit.model;
        node["variant"] = fit.variant;
        node["outcome"] = fit.outcome;
        json coef;
        for (std::size_t j = 0; j < fit.names.size(); ++j) {
            json term;
            term["est"] = fit.coef[j];
            term["se"] = fit.se[j];
            coef[fit.names[j]] = std::move(term);
        }
        node["coef"] = std::move(coef);
        node["N"] = fit.n_obs;
        node["G"] = fit.n_clusters;
        arr.push_back(std::move(node));
    }
    json j;
    j["results"] = std::move(arr);
    return j.dump(2) + "\n";
}

std::string fit_results_csv(const std::vector<FitResult>& results) {
    std::string out = "model,variant,outcome,term,coef,se,n_obs,n_clusters,k_params\n";
    for (const FitResult& fit : results) {
        for (std::size_t j = 0; j < fit.names.size(); ++j) {
            out += fit.model;
            out += ',';
            out += fit.variant;
            out += ',';
            out += fit.outcome;
            out += ',';
            out += fit.names[j];
            out += ',';
            out += format_double(fit.coef[j]);
            out += ',';
            out += format_double(fit.se[j]);
            out += ',';
            out += std::to_string(fit.n_obs);
            out += ',';
            out += std::to_string(fit.n_clusters);
            out += ',';
            out += std::to_string(fit.k_params);
            out += '\n';
        }
    }
    return out;
}

}  // namespace clientlab
