#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace photatom {

using ordered_json = nlohmann::ordered_json;

// 12-significant-digit decimal text for a double; the shared formatting
// choke point for every serialization path.
std::string format12(double x);

// Rounds a double through its 12-digit text form, so CSV and JSON emit
// bit-identical values for the same quantity.
double round12(double x);

// One named columnar result block.  Cells are JSON values: numbers for
// data, strings for tags/diagnostic messages.
struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<ordered_json>> rows;
};

// A complete run artifact: effective configuration, result tables, and
// free-form diagnostics.
struct Document {
    ordered_json config;
    std::vector<Table> tables;
    ordered_json diagnostics;
};

// '#'-prefixed metadata lines, one header row and comma-separated data
// rows per table, LF endings.  Strings containing separators are quoted.
std::string to_csv(const Document& doc);

// Single top-level object with config / results / diagnostics keys.
std::string to_json(const Document& doc);

}  // namespace photatom
