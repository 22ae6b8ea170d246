#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "restime/exact.hpp"
#include "restime/lane.hpp"

namespace restime {

std::string_view version();

using Cell = std::variant<std::int64_t, double, std::string>;

/// Column-oriented result with an ordered metadata echo. CSV output starts
/// with one `# key=value ...` line; JSON output is
/// `{"meta": {...}, "columns": [...], "rows": [[...], ...]}`.
/// Doubles are printed with 17 significant digits so output is byte-stable.
struct Table {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    /// Appends a metadata entry, or overwrites an existing one in place.
    Table& with(std::string key, std::string value);
    Table& with(std::string key, double value);
    Table& with(std::string key, std::int64_t value);
    Table& with(std::string key, int value) { return with(std::move(key), std::int64_t{value}); }
};

std::string format_number(double value);

std::string to_csv(const Table& table);
std::string to_json(const Table& table);

/// `site,N1i,P_RE,local_residence`, with L, convention, c and Gamma in the
/// metadata.
Table lane_table(const LaneSolution& solution, const LengthSpec& length);

}  // namespace restime
