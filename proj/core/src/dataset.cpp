#include "clientlab/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "clientlab/io_util.hpp"

namespace clientlab {

namespace {

using json = nlohmann::ordered_json;

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

// Splits one CSV record, honoring double-quoted fields with "" escapes.
std::vector<std::string> split_record(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

bool parse_number(const std::string& text, double* out) {
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, *out);
    return ec == std::errc() && ptr == end && !text.empty();
}

}  // namespace

std::string_view to_token(ColumnKind k) {
    switch (k) {
        case ColumnKind::Binary: return "binary";
        case ColumnKind::Count: return "count";
        case ColumnKind::Continuous: return "continuous";
        case ColumnKind::Categorical: return "categorical";
    }
    return "";
}

ColumnKind column_kind_from_token(std::string_view token) {
    if (token == "binary") return ColumnKind::Binary;
    if (token == "count") return ColumnKind::Count;
    if (token == "continuous") return ColumnKind::Continuous;
    if (token == "categorical") return ColumnKind::Categorical;
    throw std::invalid_argument("unknown column kind: \"" + std::string(token) + "\"");
}

bool Dataset::has(const std::string& name) const {
    for (const Column& c : columns)
        if (c.name == name) return true;
    return false;
}

const Column& Dataset::col(const std::string& name) const {
    for (const Column& c : columns)
        if (c.name == name) return c;
    throw LookupError("dataset: no column \"" + name + "\"");
}

Column& Dataset::col(const std::string& name) {
    for (Column& c : columns)
        if (c.name == name) return c;
    throw LookupError("dataset: no column \"" + name + "\"");
}

void Dataset::add(Column c) {
    if (c.values.size() != rows())
        throw std::invalid_argument("dataset: column \"" + c.name + "\" has " +
                                    std::to_string(c.values.size()) + " values, expected " +
                                    std::to_string(rows()));
    if (has(c.name)) throw std::invalid_argument("dataset: duplicate column \"" + c.name + "\"");
    columns.push_back(std::move(c));
}

Dataset within_demean(const Dataset& data, const std::vector<std::string>& group,
                      GroupMeans* means) {
    if (group.size() != data.rows())
        throw std::invalid_argument("within_demean: group key size mismatch");

    Dataset out;
    out.village = data.village;
    if (means) {
        means->names.clear();
        means->by_group.clear();
    }

    // accumulate sums per group for every numeric column in one pass
    std::map<std::string, std::vector<double>> sums;
    std::map<std::string, std::size_t> counts;
    std::vector<const Column*> numeric;
    for (const Column& c : data.columns)
        if (c.kind != ColumnKind::Categorical) numeric.push_back(&c);
    for (std::size_t r = 0; r < data.rows(); ++r) {
        auto [it, fresh] = sums.try_emplace(group[r], std::vector<double>(numeric.size(), 0.0));
        if (fresh) counts[group[r]] = 0;
        ++counts[group[r]];
        for (std::size_t j = 0; j < numeric.size(); ++j) it->second[j] += numeric[j]->values[r];
    }
    for (auto& [g, sum] : sums) {
        double inv = 1.0 / static_cast<double>(counts[g]);
        for (double& v : sum) v *= inv;
    }

    if (means) {
        for (const Column* c : numeric) means->names.push_back(c->name);
        means->by_group = sums;
    }

    std::size_t j = 0;
    for (const Column& c : data.columns) {
        Column copy = c;
        if (c.kind != ColumnKind::Categorical) {
            for (std::size_t r = 0; r < data.rows(); ++r)
                copy.values[r] = c.values[r] - sums.at(group[r])[j];
            copy.kind = ColumnKind::Continuous;  // demeaned values are no longer 0/1 or counts
            ++j;
        }
        out.columns.push_back(std::move(copy));
    }
    return out;
}

double truncate_days(double v) {
    if (v < 0.0) throw std::invalid_argument("truncate_days: negative value");
    return std::min(v, 100.0);
}

void write_dataset_csv(const Dataset& data, std::ostream& out) {
    out << "village";
    for (const Column& c : data.columns) out << ',' << csv_field(c.name);
    out << '\n';
    for (std::size_t r = 0; r < data.rows(); ++r) {
        out << csv_field(data.village[r]);
        for (const Column& c : data.columns) {
            out << ',';
            if (c.kind == ColumnKind::Categorical) {
                std::size_t idx = static_cast<std::size_t>(c.values[r]);
                if (idx >= c.labels.size())
                    throw std::out_of_range("dataset: bad label index in \"" + c.name + "\"");
                out << csv_field(c.labels[idx]);
            } else {
                out << format_double(c.values[r]);
            }
        }
        out << '\n';
    }
}

std::string dataset_meta_json(const Dataset& data) {
    json j;
    j["rows"] = data.rows();
    json cols = json::array();
    for (const Column& c : data.columns) {
        json node;
        node["name"] = c.name;
        node["kind"] = std::string(to_token(c.kind));
        if (c.kind == ColumnKind::Categorical) node["labels"] = c.labels;
        cols.push_back(std::move(node));
    }
    j["columns"] = std::move(cols);
    return j.dump(2) + "\n";
}

void write_dataset_file(const Dataset& data, const std::string& path) {
    std::ostringstream csv;
    write_dataset_csv(data, csv);
    write_file_atomic(path, csv.str());
    write_file_atomic(path + ".meta.json", dataset_meta_json(data));
}

Dataset read_dataset_file(const std::string& path) {
    std::string text = read_file(path);

    // sidecar metadata is optional; without it kinds are inferred
    std::map<std::string, ColumnKind> kinds;
    std::map<std::string, std::vector<std::string>> labels;
    bool have_meta = false;
    try {
        json meta = json::parse(read_file(path + ".meta.json"));
        for (const json& node : meta.at("columns")) {
            std::string name = node.at("name").get<std::string>();
            kinds[name] = column_kind_from_token(node.at("kind").get<std::string>());
            if (node.contains("labels")) labels[name] = node.at("labels").get<std::vector<std::string>>();
        }
        have_meta = true;
    } catch (const std::runtime_error&) {
        // no sidecar, fall through
    }

    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("dataset: empty file " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> header = split_record(line);
    if (header.empty() || header[0] != "village")
        throw std::invalid_argument("dataset: first column must be village");

    Dataset data;
    std::vector<std::vector<std::string>> cells(header.size() - 1);
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields = split_record(line);
        if (fields.size() != header.size())
            throw std::invalid_argument("dataset: row with " + std::to_string(fields.size()) +
                                        " fields, expected " + std::to_string(header.size()));
        data.village.push_back(fields[0]);
        for (std::size_t j = 1; j < fields.size(); ++j) cells[j - 1].push_back(std::move(fields[j]));
    }
    if (data.village.empty()) throw std::invalid_argument("dataset: no rows in " + path);

    for (std::size_t j = 0; j < cells.size(); ++j) {
        Column c;
        c.name = header[j + 1];
        bool numeric = true;
        std::vector<double> parsed(cells[j].size(), 0.0);
        for (std::size_t r = 0; r < cells[j].size(); ++r)
            if (!parse_number(cells[j][r], &parsed[r])) {
                numeric = false;
                break;
            }

        ColumnKind kind;
        if (have_meta) {
            auto it = kinds.find(c.name);
            if (it == kinds.end())
                throw std::invalid_argument("dataset: column \"" + c.name + "\" missing from metadata");
            kind = it->second;
        } else if (!numeric) {
            kind = ColumnKind::Categorical;
        } else {
            bool all01 = true, integral = true;
            for (double v : parsed) {
                if (v != 0.0 && v != 1.0) all01 = false;
                if (v != std::floor(v) || v < 0.0) integral = false;
            }
            kind = all01 ? ColumnKind::Binary : integral ? ColumnKind::Count : ColumnKind::Continuous;
        }

        c.kind = kind;
        if (kind == ColumnKind::Categorical) {
            auto lit = labels.find(c.name);
            if (lit != labels.end()) c.labels = lit->second;
            std::map<std::string, std::size_t> index;
            for (std::size_t k = 0; k < c.labels.size(); ++k) index[c.labels[k]] = k;
            for (const std::string& cell : cells[j]) {
                auto it = index.find(cell);
                if (it == index.end()) {
                    if (lit != labels.end())
                        throw std::invalid_argument("dataset: label \"" + cell +
                                                    "\" not in metadata for \"" + c.name + "\"");
                    index[cell] = c.labels.size();
                    it = index.find(cell);
                    c.labels.push_back(cell);
                }
                c.values.push_back(static_cast<double>(it->second));
            }
        } else {
            if (!numeric)
                throw std::invalid_argument("dataset: non-numeric cell in column \"" + c.name + "\"");
            c.values = std::move(parsed);
        }
        data.columns.push_back(std::move(c));
    }
    return data;
}

}  // namespace clientlab
