#pragma once

#include <string>
#include <vector>

#include "amenent/config_io.hpp"

namespace amenent {

enum class OutputFormat { json, csv, human };
enum class LogBase { natural, two };

OutputFormat format_from_string(const std::string& s);
double log_scale(LogBase base); // multiply natural-log values by this

/// Round to 12 significant digits so serialized payloads are byte-stable.
double round12(double v);

/// Flat table carried alongside the payload for csv/human output.
struct CsvBlock {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<ordered_json>> rows;
};

struct Report {
    ordered_json payload; // tool, version, config echo, result, exactness flags
    std::vector<CsvBlock> tables;
    int exit_code = 0; // 0 success, 1 check failure
};

Report make_report(ordered_json config_echo);

std::string emit(const Report& report, OutputFormat format);

} // namespace amenent
