#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "clientlab/game_io.hpp"
#include "clientlab/game_verify.hpp"
#include "clientlab/indices.hpp"
#include "clientlab/io_util.hpp"
#include "clientlab/network_csv.hpp"
#include "clientlab/regression.hpp"
#include "clientlab/simulate.hpp"

namespace {

using namespace clientlab;

int g_exit = 0;  // set by callbacks that succeed operationally but report failure

void emit(const std::string& text, const std::string& output) {
    if (output.empty() || output == "-")
        std::cout << text;
    else
        write_file_atomic(output, text);
}

struct ParamArgs {
    game::GameParams values;
    std::string params_file;
    CLI::App* cmd = nullptr;

    void attach(CLI::App* sub) {
        cmd = sub;
        sub->add_option("--n", values.n, "number of poor agents")->capture_default_str();
        sub->add_option("--b", values.b, "public work budget b")->capture_default_str();
        sub->add_option("--theta", values.theta, "elite delivery share theta")->capture_default_str();
        sub->add_option("--c", values.c, "cost of linking to elite 0")->capture_default_str();
        sub->add_option("--R", values.R, "office rent R")->capture_default_str();
        sub->add_option("--e", values.e, "per-client effort price e")->capture_default_str();
        sub->add_option("--params", params_file, "JSON file with game parameters");
    }

    // file values fill every field the user did not set on the command line
    void overlay(const game::GameParams& file_values) {
        if (!cmd->count("--n")) values.n = file_values.n;
        if (!cmd->count("--b")) values.b = file_values.b;
        if (!cmd->count("--theta")) values.theta = file_values.theta;
        if (!cmd->count("--c")) values.c = file_values.c;
        if (!cmd->count("--R")) values.R = file_values.R;
        if (!cmd->count("--e")) values.e = file_values.e;
    }

    game::GameParams resolve() {
        if (!params_file.empty()) overlay(game::params_from_json_file(params_file));
        return values;
    }
};

void run_indices(const std::string& input, const std::string& output, const std::string& format) {
    ParseResult parsed = parse_villages_csv_file(input);
    if (parsed.duplicate_rows > 0)
        std::cerr << "note: dropped " << parsed.duplicate_rows << " duplicate rows\n";
    std::vector<VillageIndices> villages = compute_indices(parsed.villages);
    if (format == "json") {
        emit(patron_reports_json(villages), output);
    } else {
        std::ostringstream csv;
        write_household_csv(villages, csv);
        emit(csv.str(), output);
    }
}

void run_solve(ParamArgs& args, const std::string& output, bool check_only) {
    game::GameParams p = args.resolve();
    if (check_only) {
        game::RestrictionReport report = game::check_restrictions(p);
        emit(game::restrictions_json(report), output);
        if (!report.all_pass()) g_exit = 1;
        return;
    }
    game::SolveResult result = game::construct_clientelism_equilibrium(p);
    emit(game::solve_json(p, result), output);
}

void run_verify(ParamArgs& args, const std::string& input, const std::string& output) {
    std::string text = read_file(input);
    if (args.params_file.empty()) {
        // a solve output carries its own params; explicit flags still win
        auto probe = text.find("\"params\"");
        if (probe != std::string::npos) args.overlay(game::params_from_json(text));
    }
    game::GameParams p = args.resolve();
    game::StrategyProfile profile = game::profile_from_json(text, p);
    game::DeviationReport report = game::verify_spne(p, profile);
    emit(game::verify_json(p, report), output);
    if (!report.pass) g_exit = 1;
}

void run_bruteforce(ParamArgs& args, int max_n, const std::string& output) {
    game::GameParams p = args.resolve();
    game::BruteForceResult result = game::brute_force_equilibria(p, max_n);
    emit(game::bruteforce_json(p, result), output);
}

void run_sweep(ParamArgs& args, const std::string& grid_file, const std::string& output,
               const std::string& format) {
    game::GameParams base = args.resolve();
    game::SweepGrid grid;
    if (!grid_file.empty()) grid = game::sweep_grid_from_json(read_file(grid_file));
    std::vector<game::SweepRow> rows = game::comparative_statics(base, grid);
    emit(format == "json" ? game::sweep_json(rows) : game::sweep_csv(rows), output);
}

void run_export_net(ParamArgs& args, const std::string& output, bool benchmark, int replicas,
                    bool uncapped) {
    game::GameParams p = args.resolve();
    VillageNetwork net;
    if (benchmark) {
        net = game::construct_benchmark(p, replicas, !uncapped).network;
    } else {
        game::SolveResult solved = game::construct_clientelism_equilibrium(p);
        net = game::equilibrium_to_network(p, solved.profile);
        std::cerr << "note: households without links are not representable in the edge-list "
                     "CSV and will be absent\n";
    }
    if (output.empty() || output == "-") {
        write_villages_csv({net}, std::cout);
    } else {
        write_villages_csv_file({net}, output);
    }
}

void run_simulate(ParamArgs& args, const std::string& source, int villages, int households,
                  double effect_participation, double effect_days, std::uint64_t seed,
                  const std::string& output) {
    SimulateConfig cfg;
    cfg.villages = villages;
    cfg.households = households;
    cfg.effects.participation_client = effect_participation;
    cfg.effects.days_client = effect_days;
    cfg.seed = seed;
    if (source == "game") cfg.game_params = args.resolve();
    Dataset data = simulate_survey(cfg);
    if (output.empty() || output == "-")
        throw std::invalid_argument("simulate: --output is required (a sidecar file is written)");
    write_dataset_file(data, output);
    std::cerr << "wrote " << data.rows() << " rows to " << output << "\n";
}

void run_regress(const std::string& input, const std::string& output, const std::string& format,
                 const std::string& model, const std::string& variant) {
    Dataset data = read_dataset_file(input);
    std::vector<FitResult> results = run_model_suite(data);
    if (!model.empty() || !variant.empty()) {
        std::vector<FitResult> kept;
        for (FitResult& fit : results) {
            if (!model.empty() && fit.model != model) continue;
            if (!variant.empty() && fit.variant != variant) continue;
            kept.push_back(std::move(fit));
        }
        results = std::move(kept);
    }
    if (results.empty()) throw std::runtime_error("regress: no specification matched the data");
    emit(format == "json" ? fit_results_json(results) : fit_results_csv(results), output);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"relational networks and the clientelism game"};
    app.require_subcommand(1);

    std::string input, output;
    std::string format = "csv";
    std::uint64_t seed = 1;

    auto* indices_cmd = app.add_subcommand("indices", "household network indices from a villages CSV");
    indices_cmd->add_option("--input", input, "villages CSV")->required();
    indices_cmd->add_option("--output", output, "destination (default stdout)");
    indices_cmd->add_option("--format", format, "csv (household indices) or json (patron reports)")
        ->check(CLI::IsMember({"csv", "json"}));
    indices_cmd->callback([&] { run_indices(input, output, format); });

    ParamArgs solve_params;
    bool check_only = false;
    auto* solve_cmd = app.add_subcommand("solve", "construct the clientelism equilibrium");
    solve_params.attach(solve_cmd);
    solve_cmd->add_option("--output", output, "destination (default stdout)");
    solve_cmd->add_flag("--check", check_only, "only report the parameter restrictions");
    solve_cmd->callback([&] { run_solve(solve_params, output, check_only); });

    ParamArgs verify_params;
    auto* verify_cmd = app.add_subcommand("verify", "audit a strategy profile for deviations");
    verify_params.attach(verify_cmd);
    verify_cmd->add_option("--input,--profile", input, "profile JSON (bare or solve output)")
        ->required();
    verify_cmd->add_option("--output", output, "destination (default stdout)");
    verify_cmd->callback([&] { run_verify(verify_params, input, output); });

    ParamArgs brute_params;
    int max_n = 8;
    auto* brute_cmd = app.add_subcommand("bruteforce", "enumerate equilibria of the pruned game");
    brute_params.attach(brute_cmd);
    brute_cmd->add_option("--max-n", max_n, "refuse larger n")->capture_default_str();
    brute_cmd->add_option("--output", output, "destination (default stdout)");
    brute_cmd->callback([&] { run_bruteforce(brute_params, max_n, output); });

    ParamArgs sweep_params;
    std::string grid_file;
    auto* sweep_cmd = app.add_subcommand("sweep", "comparative statics over a parameter grid");
    sweep_params.attach(sweep_cmd);
    sweep_cmd->add_option("--grid", grid_file, "JSON file with b/theta/c value lists");
    sweep_cmd->add_option("--output", output, "destination (default stdout)");
    sweep_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sweep_cmd->callback([&] { run_sweep(sweep_params, grid_file, output, format); });

    ParamArgs export_params;
    bool benchmark = false, uncapped = false;
    int replicas = 1;
    auto* export_cmd = app.add_subcommand("export-net", "equilibrium or benchmark network as CSV");
    export_params.attach(export_cmd);
    export_cmd->add_option("--output", output, "destination (default stdout)");
    export_cmd->add_flag("--benchmark", benchmark, "election-free benchmark instead");
    export_cmd->add_option("--replicas", replicas, "benchmark providers per type")->capture_default_str();
    export_cmd->add_flag("--uncapped", uncapped, "drop the one-link cap in the benchmark");
    export_cmd->callback(
        [&] { run_export_net(export_params, output, benchmark, replicas, uncapped); });

    ParamArgs sim_params;
    std::string source = "random";
    int villages = 36, households = 100;
    double effect_participation = 0.15, effect_days = 6.0;
    auto* sim_cmd = app.add_subcommand("simulate", "draw a synthetic survey dataset");
    sim_params.attach(sim_cmd);
    sim_cmd->add_option("--source", source, "random or game networks")
        ->check(CLI::IsMember({"random", "game"}));
    sim_cmd->add_option("--villages", villages, "")->capture_default_str();
    sim_cmd->add_option("--households", households, "per village (random source)")->capture_default_str();
    sim_cmd->add_option("--effect-participation", effect_participation, "true client effect")
        ->capture_default_str();
    sim_cmd->add_option("--effect-days", effect_days, "true client effect on days")
        ->capture_default_str();
    sim_cmd->add_option("--seed", seed, "")->capture_default_str();
    sim_cmd->add_option("--output", output, "dataset CSV path")->required();
    sim_cmd->callback([&] {
        run_simulate(sim_params, source, villages, households, effect_participation, effect_days,
                     seed, output);
    });

    std::string model, variant;
    auto* regress_cmd = app.add_subcommand("regress", "run the model suite on a dataset");
    regress_cmd->add_option("--input", input, "dataset CSV")->required();
    regress_cmd->add_option("--output", output, "destination (default stdout)");
    regress_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    regress_cmd->add_option("--model", model, "restrict to one model, e.g. model5");
    regress_cmd->add_option("--variant", variant, "fe or village_chars")
        ->check(CLI::IsMember({"fe", "village_chars"}));
    regress_cmd->callback([&] { run_regress(input, output, format, model, variant); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return g_exit;
}
