#include "clientlab/network_csv.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "clientlab/io_util.hpp"

namespace clientlab {

namespace {

constexpr std::string_view kHeader =
    "village_id,receiver_id,provider_id,service,receiver_sampled,provider_sampled";

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

bool parse_flag(const std::string& s, std::size_t line, const char* what) {
    if (s == "1") return true;
    if (s == "0") return false;
    throw ParseError(line, std::string(what) + " must be 1 or 0, got '" + s + "'");
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

ParseResult parse_villages_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(1, "empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kHeader)
        throw ParseError(1, "unexpected header '" + line + "', want '" + std::string(kHeader) + "'");

    ParseResult result;
    std::map<std::string, std::size_t> village_slot;
    // sampled status must be consistent everywhere an id shows up
    std::map<std::pair<std::string, std::string>, bool> sampled_flag;

    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::vector<std::string> f = split_row(line);
        if (f.size() != 6)
            throw ParseError(lineno, "expected 6 fields, got " + std::to_string(f.size()));
        const std::string& vid = f[0];
        const std::string& receiver = f[1];
        const std::string& provider = f[2];
        if (vid.empty()) throw ParseError(lineno, "empty village_id");
        if (receiver.empty() || provider.empty()) throw ParseError(lineno, "empty entity id");
        if (receiver == provider)
            throw ParseError(lineno, "self edge: '" + receiver + "' serves itself");

        auto category = service_from_token(f[3]);
        if (!category) throw ParseError(lineno, "unknown service token '" + f[3] + "'");
        bool r_sampled = parse_flag(f[4], lineno, "receiver_sampled");
        bool p_sampled = parse_flag(f[5], lineno, "provider_sampled");

        for (auto [id, flag] : {std::pair{receiver, r_sampled}, std::pair{provider, p_sampled}}) {
            auto [it, inserted] = sampled_flag.try_emplace({vid, id}, flag);
            if (!inserted && it->second != flag)
                throw ParseError(lineno, "entity '" + id + "' in village '" + vid +
                                             "' has contradictory sampled flags");
        }
        if (!r_sampled && !p_sampled)
            throw ParseError(lineno, "edge reported by no sampled household");

        auto [slot_it, fresh] = village_slot.try_emplace(vid, result.villages.size());
        if (fresh) {
            result.villages.emplace_back();
            result.villages.back().village_id = vid;
        }
        VillageNetwork& net = result.villages[slot_it->second];
        (r_sampled ? net.sampled_households : net.external_providers).insert(receiver);
        (p_sampled ? net.sampled_households : net.external_providers).insert(provider);

        bool added = net.edges.insert({receiver, provider, *category}).second;
        if (!added) ++result.duplicate_rows;
    }

    if (result.villages.empty()) throw ParseError(lineno, "no data rows");
    return result;
}

ParseResult parse_villages_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return parse_villages_csv(in);
}

VillageNetwork parse_village_file(const std::string& path) {
    ParseResult result = parse_villages_csv_file(path);
    if (result.villages.size() != 1)
        throw std::runtime_error("'" + path + "' holds " + std::to_string(result.villages.size()) +
                                 " villages, expected exactly one");
    return std::move(result.villages.front());
}

void write_villages_csv(const std::vector<VillageNetwork>& villages, std::ostream& out) {
    out << kHeader << '\n';
    for (const VillageNetwork& net : villages) {
        for (const ServiceEdge& e : net.edges) {
            out << net.village_id << ',' << e.receiver << ',' << e.provider << ','
                << to_token(e.category) << ',' << (net.is_sampled(e.receiver) ? '1' : '0') << ','
                << (net.is_sampled(e.provider) ? '1' : '0') << '\n';
        }
    }
}

void write_villages_csv_file(const std::vector<VillageNetwork>& villages, const std::string& path) {
    std::ostringstream out;
    write_villages_csv(villages, out);
    write_file_atomic(path, out.str());
}

}  // namespace clientlab
