#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

// Table output: CSV with a '#'-prefixed metadata header, or a single JSON
// object {metadata, rows}. CSV floats carry 12 significant digits so
// regression diffs stay meaningful; JSON floats serialize with full
// round-trip precision.

namespace anyon {

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

struct RunMetadata {
    std::string version;
    std::string command;
    std::vector<std::pair<std::string, std::string>> params;  // emitted in order
};

std::string format_double(double value);  // %.12g

void write_csv(std::ostream& out, const RunMetadata& meta, const Table& table);
void write_json(std::ostream& out, const RunMetadata& meta, const Table& table);

}  // namespace anyon
