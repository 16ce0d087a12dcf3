#pragma once

#include <nlohmann/json.hpp>

#include <cmath>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "../errors.hpp"

namespace edm_emu::harness {

using json = nlohmann::json;

/// Column-named records plus a metadata block. Cells are JSON scalars
/// (number, string, bool or null). The trailing `flag` column marks rows whose
/// numbers could not be produced; it is empty for clean rows.
class ResultTable {
public:
    ResultTable() = default;
    explicit ResultTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    [[nodiscard]] const std::vector<std::string>& columns() const { return columns_; }
    [[nodiscard]] const std::vector<std::vector<json>>& rows() const { return rows_; }
    [[nodiscard]] const std::vector<std::string>& flags() const { return flags_; }
    [[nodiscard]] std::size_t size() const { return rows_.size(); }
    json& metadata() { return metadata_; }
    [[nodiscard]] const json& metadata() const { return metadata_; }

    /// Non-finite numbers become null and add a `non_finite:<column>` flag.
    void add_row(std::vector<json> cells, std::string flag = {})
    {
        if (cells.size() != columns_.size()) {
            throw ValidationError("ResultTable: row has " + std::to_string(cells.size()) + " cells, expected " +
                                  std::to_string(columns_.size()));
        }
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (cells[i].is_number_float() && !std::isfinite(cells[i].get<double>())) {
                cells[i] = nullptr;
                append_flag(flag, "non_finite:" + columns_[i]);
            }
        }
        rows_.push_back(std::move(cells));
        flags_.push_back(std::move(flag));
    }

    [[nodiscard]] std::size_t column_index(const std::string& name) const
    {
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            if (columns_[i] == name) {
                return i;
            }
        }
        throw ValidationError("ResultTable: no column '" + name + "'");
    }

    [[nodiscard]] std::vector<json> column(const std::string& name) const
    {
        const std::size_t k = column_index(name);
        std::vector<json> out;
        out.reserve(rows_.size());
        for (const auto& r : rows_) {
            out.push_back(r[k]);
        }
        return out;
    }

    /// Numeric column; null cells read as NaN.
    [[nodiscard]] std::vector<double> numbers(const std::string& name) const
    {
        std::vector<double> out;
        for (const json& c : column(name)) {
            out.push_back(c.is_number() ? c.get<double>() : std::nan(""));
        }
        return out;
    }

    static void append_flag(std::string& flag, const std::string& item)
    {
        if (!flag.empty()) {
            flag += ';';
        }
        flag += item;
    }

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<json>> rows_;
    std::vector<std::string> flags_;
    json metadata_ = json::object();
};

namespace detail {

inline std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

inline std::string csv_cell(const json& cell)
{
    if (cell.is_null()) {
        return {};
    }
    if (cell.is_string()) {
        return csv_field(cell.get<std::string>());
    }
    return csv_field(cell.dump());
}

} // namespace detail

/// First line `# metadata: <json>`, then the header row, then records.
inline void write_csv(std::ostream& out, const ResultTable& t)
{
    out << "# metadata: " << t.metadata().dump() << '\n';
    for (std::size_t i = 0; i < t.columns().size(); ++i) {
        out << detail::csv_field(t.columns()[i]) << ',';
    }
    out << "flag\n";
    for (std::size_t r = 0; r < t.size(); ++r) {
        for (const json& cell : t.rows()[r]) {
            out << detail::csv_cell(cell) << ',';
        }
        out << detail::csv_field(t.flags()[r]) << '\n';
    }
}

inline json to_json(const ResultTable& t)
{
    json cols = t.columns();
    cols.push_back("flag");
    json records = json::array();
    for (std::size_t r = 0; r < t.size(); ++r) {
        json rec = json::object();
        for (std::size_t i = 0; i < t.columns().size(); ++i) {
            rec[t.columns()[i]] = t.rows()[r][i];
        }
        rec["flag"] = t.flags()[r];
        records.push_back(std::move(rec));
    }
    return json{{"metadata", t.metadata()}, {"columns", cols}, {"records", records}};
}

inline void write_json(std::ostream& out, const ResultTable& t) { out << to_json(t).dump(2) << '\n'; }

inline void write_table(std::ostream& out, const ResultTable& t, const std::string& format)
{
    if (format == "csv") {
        write_csv(out, t);
    } else if (format == "json") {
        write_json(out, t);
    } else {
        throw ConfigError("output format must be 'csv' or 'json', got '" + format + "'");
    }
}

} // namespace edm_emu::harness
