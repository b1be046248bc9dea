#include "photatom/output.hpp"

#include <cstdio>
#include <cstdlib>

#include "photatom/params.hpp"

namespace photatom {

namespace {

// Recursively round every float in a JSON value through 12-digit text.
ordered_json sanitize(const ordered_json& value) {
    if (value.is_number_float()) {
        return round12(value.get<double>());
    }
    if (value.is_object()) {
        ordered_json out = ordered_json::object();
        for (const auto& [key, item] : value.items()) {
            out[key] = sanitize(item);
        }
        return out;
    }
    if (value.is_array()) {
        ordered_json out = ordered_json::array();
        for (const auto& item : value) out.push_back(sanitize(item));
        return out;
    }
    return value;
}

std::string csv_escape(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string quoted = "\"";
    for (char c : text) {
        if (c == '"') quoted += "\"\"";
        else quoted += c;
    }
    quoted += "\"";
    return quoted;
}

std::string csv_cell(const ordered_json& cell) {
    if (cell.is_number_float()) return format12(cell.get<double>());
    if (cell.is_string()) return csv_escape(cell.get<std::string>());
    return cell.dump();  // integers, booleans, null
}

}  // namespace

std::string format12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

double round12(double x) {
    return std::strtod(format12(x).c_str(), nullptr);
}

std::string to_csv(const Document& doc) {
    std::string out;
    out += std::string("# photatom ") + kVersion + "\n";
    out += "# config " + sanitize(doc.config).dump() + "\n";
    if (!doc.diagnostics.is_null()) {
        out += "# diagnostics " + sanitize(doc.diagnostics).dump() + "\n";
    }
    for (const Table& table : doc.tables) {
        out += "# table " + table.name + "\n";
        for (size_t c = 0; c < table.columns.size(); ++c) {
            if (c) out += ",";
            out += csv_escape(table.columns[c]);
        }
        out += "\n";
        for (const auto& row : table.rows) {
            for (size_t c = 0; c < row.size(); ++c) {
                if (c) out += ",";
                out += csv_cell(row[c]);
            }
            out += "\n";
        }
    }
    return out;
}

std::string to_json(const Document& doc) {
    ordered_json root = ordered_json::object();
    root["tool"] = "photatom";
    root["version"] = kVersion;
    root["config"] = sanitize(doc.config);
    ordered_json results = ordered_json::object();
    for (const Table& table : doc.tables) {
        ordered_json block = ordered_json::object();
        block["columns"] = table.columns;
        ordered_json rows = ordered_json::array();
        for (const auto& row : table.rows) {
            ordered_json line = ordered_json::array();
            for (const auto& cell : row) line.push_back(sanitize(cell));
            rows.push_back(std::move(line));
        }
        block["rows"] = std::move(rows);
        results[table.name] = std::move(block);
    }
    root["results"] = std::move(results);
    root["diagnostics"] = sanitize(doc.diagnostics);
    return root.dump(2) + "\n";
}

}  // namespace photatom
