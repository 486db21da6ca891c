#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "clientlab/network.hpp"

namespace clientlab {

class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

  private:
    std::size_t line_ = 0;
};

struct ParseResult {
    std::vector<VillageNetwork> villages;  // in order of first appearance
    std::size_t duplicate_rows = 0;        // repeated (receiver, provider, category) rows dropped
};

// Expected header:
//   village_id,receiver_id,provider_id,service,receiver_sampled,provider_sampled
// with *_sampled in {1,0}. One file may carry several villages; rows are
// grouped by village_id. Malformed rows, self edges, unknown service tokens
// and contradictory sampled flags raise ParseError with the line number.
ParseResult parse_villages_csv(std::istream& in);
ParseResult parse_villages_csv_file(const std::string& path);

// Convenience for single-village files; throws if the file holds more than
// one village.
VillageNetwork parse_village_file(const std::string& path);

void write_villages_csv(const std::vector<VillageNetwork>& villages, std::ostream& out);
// Atomic: writes to a temp file in the same directory, then renames.
void write_villages_csv_file(const std::vector<VillageNetwork>& villages, const std::string& path);

}  // namespace clientlab
