#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "config.hpp"

namespace cshrink::cli {

using Cell = std::variant<std::string, std::int64_t, double, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

// Six significant digits; non-finite values print as NA.
std::string format_number(double x);

// Every double is rounded through format_number, so both encodings of a
// table parse back to identical values. Non-finite values are NA / null.
std::string to_csv(const Table& t);
std::string to_json(const Table& t);

void write_text(const std::filesystem::path& path, const std::string& text);

// Writes <out_dir>/<stem>.<csv|json> and returns the path.
std::filesystem::path write_table(const Table& t, const RunConfig& config, const std::string& stem);

}  // namespace cshrink::cli
