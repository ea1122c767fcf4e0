#include "anyon/output.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

namespace anyon {

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

namespace {

std::string cell_csv(const Cell& cell) {
    if (std::holds_alternative<std::int64_t>(cell)) {
        return std::to_string(std::get<std::int64_t>(cell));
    }
    if (std::holds_alternative<double>(cell)) {
        return format_double(std::get<double>(cell));
    }
    return std::get<std::string>(cell);
}

nlohmann::json cell_json(const Cell& cell) {
    if (std::holds_alternative<std::int64_t>(cell)) return std::get<std::int64_t>(cell);
    if (std::holds_alternative<double>(cell)) return std::get<double>(cell);
    return std::get<std::string>(cell);
}

}  // namespace

void write_csv(std::ostream& out, const RunMetadata& meta, const Table& table) {
    out << "# version=" << meta.version << "\n";
    out << "# command=" << meta.command << "\n";
    for (const auto& [key, value] : meta.params) out << "# " << key << "=" << value << "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out << (c ? "," : "") << table.columns[c];
    }
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << cell_csv(row[c]);
        out << "\n";
    }
}

void write_json(std::ostream& out, const RunMetadata& meta, const Table& table) {
    nlohmann::json j;
    j["metadata"]["version"] = meta.version;
    j["metadata"]["command"] = meta.command;
    auto& params = j["metadata"]["parameters"];
    params = nlohmann::json::object();
    for (const auto& [key, value] : meta.params) params[key] = value;

    auto rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t c = 0; c < row.size(); ++c) obj[table.columns[c]] = cell_json(row[c]);
        rows.push_back(std::move(obj));
    }
    j["columns"] = table.columns;
    j["rows"] = std::move(rows);
    out << j.dump(2) << "\n";
}

}  // namespace anyon
