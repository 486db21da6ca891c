#pragma once

#include <string>

#include "clientlab/game.hpp"
#include "clientlab/game_verify.hpp"

namespace clientlab::game {

// JSON wire formats. All emitters produce stable key order and shortest
// round-trip numbers, so identical inputs serialize to identical bytes.

std::string params_json(const GameParams& p);
GameParams params_from_json(const std::string& text);
GameParams params_from_json_file(const std::string& path);

std::string profile_json(const StrategyProfile& profile);
// Accepts either a bare profile object or a solve output with a "profile"
// field. Sizes are validated against p.
StrategyProfile profile_from_json(const std::string& text, const GameParams& p);
StrategyProfile profile_from_json_file(const std::string& path, const GameParams& p);

std::string restrictions_json(const RestrictionReport& report);
std::string solve_json(const GameParams& p, const SolveResult& result);
std::string verify_json(const GameParams& p, const DeviationReport& report);
std::string bruteforce_json(const GameParams& p, const BruteForceResult& result);
std::string benchmark_json(const GameParams& p, const BenchmarkResult& result);

SweepGrid sweep_grid_from_json(const std::string& text);
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string sweep_json(const std::vector<SweepRow>& rows);

}  // namespace clientlab::game
