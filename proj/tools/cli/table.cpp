#include "table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "cshrink/errors.hpp"

namespace cshrink::cli {
namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + '"';
}

struct CsvCell {
    std::string operator()(const std::string& s) const { return csv_field(s); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_number(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
};

struct JsonCell {
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
    nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
    nlohmann::ordered_json operator()(double v) const {
        if (!std::isfinite(v)) return nullptr;
        return std::stod(format_number(v));
    }
    nlohmann::ordered_json operator()(bool v) const { return v; }
};

}  // namespace

std::string format_number(double x) {
    if (!std::isfinite(x)) return "NA";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string to_csv(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + csv_field(t.columns[i]);
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += std::visit(CsvCell{}, row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& t) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = std::visit(JsonCell{}, row[i]);
        rows.push_back(std::move(obj));
    }
    return rows.dump(2) + "\n";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << text;
    if (!out) throw DataError("error writing " + path.string());
}

std::filesystem::path write_table(const Table& t, const RunConfig& config, const std::string& stem) {
    std::filesystem::create_directories(config.out_dir);
    const auto path = config.out_dir / (stem + extension(config.format));
    write_text(path, config.format == OutputFormat::Csv ? to_csv(t) : to_json(t));
    return path;
}

}  // namespace cshrink::cli
