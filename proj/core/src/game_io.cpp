#include "clientlab/game_io.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "clientlab/io_util.hpp"

namespace clientlab::game {

namespace {

using json = nlohmann::ordered_json;

std::string link_token(int link) {
    return link == unlinked ? "none" : std::to_string(link);
}

std::string vote_token(int vote) {
    return vote == vote_nonnative ? "N" : std::to_string(vote);
}

int link_from_token(const std::string& tok) {
    if (tok == "none") return unlinked;
    if (tok == "0") return 0;
    if (tok == "1") return 1;
    if (tok == "2") return 2;
    throw std::invalid_argument("unknown link token: \"" + tok + "\"");
}

int vote_from_token(const std::string& tok) {
    if (tok == "N") return vote_nonnative;
    if (tok == "0") return 0;
    if (tok == "1") return 1;
    if (tok == "2") return 2;
    throw std::invalid_argument("unknown vote token: \"" + tok + "\"");
}

json params_node(const GameParams& p) {
    json j;
    j["n"] = p.n;
    j["b"] = p.b;
    j["theta"] = p.theta;
    j["c"] = p.c;
    j["R"] = p.R;
    j["e"] = p.e;
    return j;
}

json profile_node(const StrategyProfile& profile) {
    json j;
    json consent;
    for (int l = 0; l < 3; ++l) consent["elite_" + std::to_string(l)] = profile.consent[static_cast<std::size_t>(l)];
    j["consent"] = std::move(consent);
    json agents = json::array();
    for (std::size_t i = 0; i < profile.link.size(); ++i) {
        json a;
        a["id"] = first_poor_id + static_cast<int>(i);
        a["link"] = link_token(profile.link[i]);
        a["vote"] = vote_token(profile.vote[i]);
        agents.push_back(std::move(a));
    }
    j["agents"] = std::move(agents);
    return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string params_json(const GameParams& p) { return dump(params_node(p)); }

GameParams params_from_json(const std::string& text) {
    json j = json::parse(text);
    if (j.is_object() && j.contains("params")) j = j["params"];
    if (!j.is_object()) throw std::invalid_argument("params: expected a JSON object");
    GameParams p;
    for (const auto& [key, value] : j.items()) {
        if (key == "n")
            p.n = value.get<int>();
        else if (key == "b")
            p.b = value.get<double>();
        else if (key == "theta")
            p.theta = value.get<double>();
        else if (key == "c")
            p.c = value.get<double>();
        else if (key == "R")
            p.R = value.get<double>();
        else if (key == "e")
            p.e = value.get<double>();
        else
            throw std::invalid_argument("params: unknown key \"" + key + "\"");
    }
    return p;
}

GameParams params_from_json_file(const std::string& path) {
    return params_from_json(read_file(path));
}

std::string profile_json(const StrategyProfile& profile) { return dump(profile_node(profile)); }

StrategyProfile profile_from_json(const std::string& text, const GameParams& p) {
    json j = json::parse(text);
    if (j.is_object() && j.contains("profile")) j = j["profile"];
    if (!j.is_object() || !j.contains("consent") || !j.contains("agents"))
        throw std::invalid_argument("profile: expected an object with consent and agents");

    StrategyProfile profile;
    const json& consent = j.at("consent");
    for (int l = 0; l < 3; ++l) {
        std::string key = "elite_" + std::to_string(l);
        if (!consent.contains(key)) throw std::invalid_argument("profile: consent missing " + key);
        profile.consent[static_cast<std::size_t>(l)] = consent.at(key).get<std::vector<int>>();
    }

    std::size_t n = static_cast<std::size_t>(p.n);
    profile.link.assign(n, unlinked);
    profile.vote.assign(n, vote_nonnative);
    std::vector<char> seen(n, 0);
    for (const json& a : j.at("agents")) {
        int id = a.at("id").get<int>();
        if (id < first_poor_id || id >= first_poor_id + p.n)
            throw std::invalid_argument("profile: agent id " + std::to_string(id) + " out of range");
        std::size_t i = static_cast<std::size_t>(id - first_poor_id);
        if (seen[i]) throw std::invalid_argument("profile: duplicate agent id " + std::to_string(id));
        seen[i] = 1;
        profile.link[i] = link_from_token(a.at("link").get<std::string>());
        profile.vote[i] = vote_from_token(a.at("vote").get<std::string>());
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!seen[i])
            throw std::invalid_argument("profile: missing agent id " +
                                        std::to_string(first_poor_id + static_cast<int>(i)));
    validate_profile(p, profile);
    return profile;
}

StrategyProfile profile_from_json_file(const std::string& path, const GameParams& p) {
    return profile_from_json(read_file(path), p);
}

std::string restrictions_json(const RestrictionReport& report) {
    json j;
    j["all_pass"] = report.all_pass();
    json checks = json::array();
    for (const RestrictionCheck& c : report.checks) {
        json node;
        node["name"] = c.name;
        node["pass"] = c.pass;
        node["slack"] = c.slack;
        node["detail"] = c.detail;
        checks.push_back(std::move(node));
    }
    j["checks"] = std::move(checks);
    return dump(j);
}

std::string solve_json(const GameParams& p, const SolveResult& result) {
    const EquilibriumOutcome& out = result.outcome;
    json j;
    j["params"] = params_node(p);
    json part;
    part["pi_0"] = out.partition.pi0;
    part["pi_1"] = out.partition.pi1;
    part["pi_u"] = out.partition.piU;
    j["partition"] = std::move(part);
    j["profile"] = profile_node(result.profile);

    json o;
    json win;
    for (int l = 0; l < 3; ++l) win["elite_" + std::to_string(l)] = out.win.elite[static_cast<std::size_t>(l)];
    win["nonnative"] = out.win.nonnative;
    o["win_probabilities"] = std::move(win);
    json votes;
    for (int l = 0; l < 3; ++l) votes["elite_" + std::to_string(l)] = out.elite_votes[static_cast<std::size_t>(l)];
    votes["nonnative"] = out.nonnative_votes;
    o["votes"] = std::move(votes);
    json clients;
    for (int l = 0; l < 3; ++l)
        clients["elite_" + std::to_string(l)] = out.elite_clients[static_cast<std::size_t>(l)];
    o["clients"] = std::move(clients);
    json epay;
    for (int l = 0; l < 3; ++l)
        epay["elite_" + std::to_string(l)] = out.elite_payoff[static_cast<std::size_t>(l)];
    o["elite_payoffs"] = std::move(epay);
    json poor = json::array();
    for (std::size_t i = 0; i < out.poor_payoff.size(); ++i) {
        json a;
        a["id"] = first_poor_id + static_cast<int>(i);
        a["link"] = link_token(result.profile.link[i]);
        a["vote"] = vote_token(result.profile.vote[i]);
        a["payoff"] = out.poor_payoff[i];
        a["expected_public_work"] = out.expected_public_work[i];
        poor.push_back(std::move(a));
    }
    o["poor"] = std::move(poor);
    j["outcome"] = std::move(o);
    return dump(j);
}

std::string verify_json(const GameParams& p, const DeviationReport& report) {
    json j;
    j["params"] = params_node(p);
    j["pass"] = report.pass;
    j["max_gain"] = report.max_gain;
    json devs = json::array();
    for (const Deviation& d : report.deviations) {
        json node;
        node["stage"] = std::string(to_token(d.stage));
        node["agent"] = d.agent;
        node["description"] = d.description;
        node["gain"] = d.gain;
        node["ok"] = d.ok;
        devs.push_back(std::move(node));
    }
    j["deviations"] = std::move(devs);
    return dump(j);
}

std::string bruteforce_json(const GameParams& p, const BruteForceResult& result) {
    json j;
    j["params"] = params_node(p);
    j["profiles_scanned"] = result.profiles_scanned;
    j["equilibria_found"] = result.equilibria_found;
    j["distinct_outcomes"] = result.partitions.size();
    json outcomes = json::array();
    for (std::size_t k = 0; k < result.partitions.size(); ++k) {
        const OutcomePartition& part = result.partitions[k];
        json node;
        json clients;
        for (int l = 0; l < 3; ++l)
            clients["elite_" + std::to_string(l)] = part.clients[static_cast<std::size_t>(l)];
        node["clients"] = std::move(clients);
        json votes;
        for (int l = 0; l < 3; ++l)
            votes["elite_" + std::to_string(l)] = part.elite_votes[static_cast<std::size_t>(l)];
        votes["nonnative"] = part.nonnative_votes;
        node["votes"] = std::move(votes);
        node["witness"] = profile_node(result.witnesses[k]);
        outcomes.push_back(std::move(node));
    }
    j["outcomes"] = std::move(outcomes);
    return dump(j);
}

std::string benchmark_json(const GameParams& p, const BenchmarkResult& result) {
    json j;
    j["params"] = params_node(p);
    j["replicas"] = result.replicas;
    j["one_link_cap"] = result.one_link_cap;
    json poor = json::array();
    for (std::size_t i = 0; i < result.poor_payoff.size(); ++i) {
        json a;
        a["id"] = first_poor_id + static_cast<int>(i);
        a["providers"] = result.providers_of[i];
        a["payoff"] = result.poor_payoff[i];
        poor.push_back(std::move(a));
    }
    j["poor"] = std::move(poor);
    j["village_id"] = result.network.village_id;
    j["edges"] = result.network.edges.size();
    return dump(j);
}

SweepGrid sweep_grid_from_json(const std::string& text) {
    json j = json::parse(text);
    if (!j.is_object()) throw std::invalid_argument("grid: expected a JSON object");
    SweepGrid grid;
    for (const auto& [key, value] : j.items()) {
        if (key == "b")
            grid.b_values = value.get<std::vector<double>>();
        else if (key == "theta")
            grid.theta_values = value.get<std::vector<double>>();
        else if (key == "c")
            grid.c_values = value.get<std::vector<double>>();
        else
            throw std::invalid_argument("grid: unknown key \"" + key + "\" (want b, theta, c)");
    }
    return grid;
}

namespace {

std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string quoted = "\"";
    for (char ch : value) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    quoted += '"';
    return quoted;
}

}  // namespace

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "n,b,theta,c,R,e,admissible,failed,client_count,client_work,nonclient_work,work_gap\n";
    for (const SweepRow& r : rows) {
        out += std::to_string(r.params.n);
        out += ',';
        out += format_double(r.params.b);
        out += ',';
        out += format_double(r.params.theta);
        out += ',';
        out += format_double(r.params.c);
        out += ',';
        out += format_double(r.params.R);
        out += ',';
        out += format_double(r.params.e);
        out += ',';
        out += r.admissible ? "1" : "0";
        out += ',';
        out += csv_field(r.failed);
        if (r.admissible) {
            out += ',';
            out += std::to_string(r.client_count);
            out += ',';
            out += format_double(r.client_work);
            out += ',';
            out += format_double(r.nonclient_work);
            out += ',';
            out += format_double(r.work_gap);
        } else {
            out += ",,,,";
        }
        out += '\n';
    }
    return out;
}

std::string sweep_json(const std::vector<SweepRow>& rows) {
    json arr = json::array();
    for (const SweepRow& r : rows) {
        json node = params_node(r.params);
        node["admissible"] = r.admissible;
        node["failed"] = r.failed;
        if (r.admissible) {
            node["client_count"] = r.client_count;
            node["client_work"] = r.client_work;
            node["nonclient_work"] = r.nonclient_work;
            node["work_gap"] = r.work_gap;
        }
        arr.push_back(std::move(node));
    }
    json j;
    j["rows"] = std::move(arr);
    return dump(j);
}

}  // namespace clientlab::game
