#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "clientlab/network.hpp"  // LookupError

namespace clientlab {

enum class ColumnKind { Binary, Count, Continuous, Categorical };

std::string_view to_token(ColumnKind k);
ColumnKind column_kind_from_token(std::string_view token);

struct Column {
    std::string name;
    ColumnKind kind = ColumnKind::Continuous;
    std::vector<double> values;        // categorical: index into labels
    std::vector<std::string> labels;   // categorical only
};

// Column-major household table. `village` carries the cluster and
// fixed-effect group of each row. Rows are listwise complete by
// construction: every column spans every row.
struct Dataset {
    std::vector<std::string> village;
    std::vector<Column> columns;

    std::size_t rows() const { return village.size(); }
    bool has(const std::string& name) const;
    const Column& col(const std::string& name) const;  // LookupError if absent
    Column& col(const std::string& name);
    void add(Column c);  // rejects size mismatches and duplicate names
};

struct GroupMeans {
    std::vector<std::string> names;  // demeaned columns, in dataset order
    std::map<std::string, std::vector<double>> by_group;
};

// Demeans every non-categorical column within `group` (categorical columns
// pass through untouched). Groups with a single row become all zeros.
Dataset within_demean(const Dataset& data, const std::vector<std::string>& group,
                      GroupMeans* means = nullptr);

// Survey recall window: days are capped at 100. Negative input is an error.
double truncate_days(double v);

void write_dataset_csv(const Dataset& data, std::ostream& out);
std::string dataset_meta_json(const Dataset& data);
// CSV plus a <path>.meta.json sidecar carrying column kinds and labels.
void write_dataset_file(const Dataset& data, const std::string& path);
Dataset read_dataset_file(const std::string& path);

}  // namespace clientlab
