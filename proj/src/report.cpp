#include "amenent/report.hpp"

#include <cmath>
#include <iomanip>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace amenent {

OutputFormat format_from_string(const std::string& s) {
    if (s == "json") return OutputFormat::json;
    if (s == "csv") return OutputFormat::csv;
    if (s == "human") return OutputFormat::human;
    throw ConfigError("unknown output format '" + s + "'");
}

double log_scale(LogBase base) { return base == LogBase::two ? 1.0 / std::log(2.0) : 1.0; }

double round12(double v) {
    if (!std::isfinite(v)) return v;
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::strtod(buf, nullptr);
}

Report make_report(ordered_json config_echo) {
    Report r;
    r.payload["tool"] = "amenent";
    r.payload["version"] = AMENENT_VERSION;
    r.payload["config"] = std::move(config_echo);
    return r;
}

namespace {

std::string float_text(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    std::string s = buf;
    // keep floats visually distinct from integers in reports
    if (s.find_first_of(".eE") == std::string::npos && std::isfinite(v)) s += ".0";
    return s;
}

// JSON writer with 12-significant-digit floats (nlohmann's dump would emit
// shortest-roundtrip representations with up to 17 digits)
void dump_value(std::ostringstream& os, const ordered_json& v, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string closing(static_cast<std::size_t>(indent * depth), ' ');
    if (v.is_object()) {
        if (v.empty()) {
            os << "{}";
            return;
        }
        os << "{\n";
        bool first = true;
        for (const auto& [key, value] : v.items()) {
            if (!first) os << ",\n";
            first = false;
            os << pad << ordered_json(key).dump() << ": ";
            dump_value(os, value, indent, depth + 1);
        }
        os << "\n" << closing << "}";
    } else if (v.is_array()) {
        if (v.empty()) {
            os << "[]";
            return;
        }
        os << "[\n";
        bool first = true;
        for (const auto& item : v) {
            if (!first) os << ",\n";
            first = false;
            os << pad;
            dump_value(os, item, indent, depth + 1);
        }
        os << "\n" << closing << "]";
    } else if (v.is_number_float()) {
        os << float_text(v.get<double>());
    } else {
        os << v.dump();
    }
}

std::string cell_text(const ordered_json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return float_text(v.get<double>());
    return v.dump();
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string emit_csv(const Report& report) {
    std::ostringstream os;
    bool first = true;
    for (const auto& block : report.tables) {
        if (!first) os << "\n";
        first = false;
        if (report.tables.size() > 1) os << "# " << block.name << "\n";
        for (std::size_t c = 0; c < block.columns.size(); ++c) {
            if (c) os << ",";
            os << csv_escape(block.columns[c]);
        }
        os << "\n";
        for (const auto& row : block.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) os << ",";
                os << csv_escape(cell_text(row[c]));
            }
            os << "\n";
        }
    }
    if (report.tables.empty()) os << "\n";
    return os.str();
}

std::string emit_human(const Report& report) {
    std::ostringstream os;
    const auto& p = report.payload;
    os << p.value("tool", "amenent") << " " << p.value("version", "") << "\n";
    if (p.contains("result")) {
        for (const auto& [key, value] : p.at("result").items()) {
            if (value.is_array() || value.is_object()) continue;
            os << "  " << key << ": " << cell_text(value) << "\n";
        }
    }
    for (const auto& block : report.tables) {
        os << "\n[" << block.name << "]\n";
        std::vector<std::size_t> width(block.columns.size());
        for (std::size_t c = 0; c < block.columns.size(); ++c)
            width[c] = block.columns[c].size();
        std::vector<std::vector<std::string>> cells;
        for (const auto& row : block.rows) {
            std::vector<std::string> line;
            for (std::size_t c = 0; c < row.size(); ++c) {
                line.push_back(cell_text(row[c]));
                width[c] = std::max(width[c], line.back().size());
            }
            cells.push_back(std::move(line));
        }
        for (std::size_t c = 0; c < block.columns.size(); ++c)
            os << (c ? "  " : "") << block.columns[c]
               << std::string(width[c] - block.columns[c].size(), ' ');
        os << "\n";
        for (const auto& line : cells) {
            for (std::size_t c = 0; c < line.size(); ++c)
                os << (c ? "  " : "") << line[c] << std::string(width[c] - line[c].size(), ' ');
            os << "\n";
        }
    }
    return os.str();
}

} // namespace

std::string emit(const Report& report, OutputFormat format) {
    switch (format) {
        case OutputFormat::json: {
            std::ostringstream os;
            dump_value(os, report.payload, 2, 0);
            os << "\n";
            return os.str();
        }
        case OutputFormat::csv: return emit_csv(report);
        case OutputFormat::human: return emit_human(report);
    }
    return {};
}

} // namespace amenent
