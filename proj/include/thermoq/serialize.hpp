#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "thermoq/analysis.hpp"

namespace thermoq {

// 17 significant digits: enough to reproduce any double bit-exactly.
std::string format_double(double v);

// Header row of column names, comma separator, '\n' line endings.
std::string to_csv(const CurveTable& table);
CurveTable table_from_csv(const std::string& text, std::string label = {});

// {"label", "columns": [{"name", "values"}...], "meta"} — column order is
// preserved, so a round trip reproduces the table bit-exactly.
std::string to_json(const CurveTable& table);
std::string to_json(const std::vector<CurveTable>& tables);
CurveTable table_from_json(const std::string& text);
std::vector<CurveTable> tables_from_json(const std::string& text);

// Write via a temporary file in the same directory plus rename, so readers
// never observe a half-written file. IoError on failure.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

} // namespace thermoq
