#include "restime/report.hpp"

#include <fmt/format.h>
#include <json.hpp>

namespace restime {
namespace {

std::string cell_text(const Cell& cell) {
    struct Visitor {
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(double v) const { return format_number(v); }
        std::string operator()(const std::string& v) const { return v; }
    };
    return std::visit(Visitor{}, cell);
}

nlohmann::ordered_json cell_json(const Cell& cell) {
    struct Visitor {
        nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
        nlohmann::ordered_json operator()(double v) const { return v; }
        nlohmann::ordered_json operator()(const std::string& v) const { return v; }
    };
    return std::visit(Visitor{}, cell);
}

}  // namespace

std::string_view version() { return RESTIME_VERSION; }

Table& Table::with(std::string key, std::string value) {
    for (auto& [k, v] : meta) {
        if (k == key) {
            v = std::move(value);
            return *this;
        }
    }
    meta.emplace_back(std::move(key), std::move(value));
    return *this;
}

Table& Table::with(std::string key, double value) {
    return with(std::move(key), format_number(value));
}

Table& Table::with(std::string key, std::int64_t value) {
    return with(std::move(key), std::to_string(value));
}

std::string format_number(double value) { return fmt::format("{:.17g}", value); }

std::string to_csv(const Table& table) {
    std::string out = "#";
    for (const auto& [key, value] : table.meta) out += fmt::format(" {}={}", key, value);
    out += '\n';
    out += fmt::format("{}\n", fmt::join(table.columns, ","));
    for (const auto& row : table.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k > 0) out += ',';
            out += cell_text(row[k]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& table) {
    nlohmann::ordered_json j;
    j["meta"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : table.meta) j["meta"][key] = value;
    j["columns"] = table.columns;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (const Cell& c : row) r.push_back(cell_json(c));
        j["rows"].push_back(std::move(r));
    }
    return j.dump(2) + "\n";
}

Table lane_table(const LaneSolution& solution, const LengthSpec& length) {
    Table t;
    t.with("version", std::string(version()))
        .with("L", length.boundary_index)
        .with("convention", std::string(to_string(length.given)))
        .with("c", solution.visits.current)
        .with("gamma", solution.residence.gamma);
    t.columns = {"site", "N1i", "P_RE", "local_residence"};
    const auto n = solution.visits.visits.size();
    for (std::size_t k = 0; k < n; ++k) {
        t.rows.push_back({static_cast<std::int64_t>(k + 1), solution.visits.visits[k],
                          solution.exits.right[k], solution.residence.local[k]});
    }
    return t;
}

}  // namespace restime
