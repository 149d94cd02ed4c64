#pragma once

#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"

namespace karamata {

using json = nlohmann::json;

// A numeric table written as CSV. Rows keep insertion order, which the runners make
// canonical (sorted by their grid key).
struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add(std::vector<double> row) {
        if (row.size() != columns.size()) throw input_error("table '" + name + "': row width mismatch");
        rows.push_back(std::move(row));
    }
};

struct Report {
    std::string name;
    std::string operation;
    int criterion = 0;
    bool pass = false;
    json metrics = json::object();
    std::vector<Table> tables;
};

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

// 17 significant digits
inline std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

inline std::string csv_text(const Table& t) {
    std::string s;
    for (std::size_t i = 0; i < t.columns.size(); ++i) s += (i ? "," : "") + t.columns[i];
    s += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + format_number(row[i]);
        s += '\n';
    }
    return s;
}

inline std::string csv_file_name(const Report& r, const Table& t) { return r.name + "." + t.name + ".csv"; }

inline json report_json(const Report& r) {
    json j;
    j["name"] = r.name;
    j["operation"] = r.operation;
    j["criterion"] = r.criterion;
    j["verdict"] = r.pass ? "PASS" : "FAIL";
    j["metrics"] = r.metrics;
    json files = json::array();
    for (const auto& t : r.tables) files.push_back(csv_file_name(r, t));
    j["tables"] = files;
    return j;
}

// Writes <name>.json and one <name>.<table>.csv per table; returns the paths written.
inline std::vector<std::filesystem::path> write_report(const Report& r, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> out;
    auto put = [&](const std::filesystem::path& p, const std::string& text) {
        std::ofstream f(p, std::ios::binary);
        if (!f) throw input_error("cannot write " + p.string());
        f << text;
        out.push_back(p);
    };
    put(dir / (r.name + ".json"), report_json(r).dump(2) + "\n");
    for (const auto& t : r.tables) put(dir / csv_file_name(r, t), csv_text(t));
    return out;
}

}  // namespace karamata
