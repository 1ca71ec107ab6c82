#include "thermoq/serialize.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"

namespace thermoq {

namespace {

double parse_double(const std::string& cell) {
    const char* begin = cell.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin)
        throw DomainError("unparseable numeric cell: '" + cell + "'");
    return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ','))
        cells.push_back(cell);
    if (!line.empty() && line.back() == ',')
        cells.emplace_back();
    return cells;
}

nlohmann::ordered_json table_to_json_value(const CurveTable& table) {
    table.validate();
    nlohmann::ordered_json j;
    j["label"] = table.label;
    nlohmann::ordered_json cols = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        nlohmann::ordered_json col;
        col["name"] = table.column_names[c];
        col["values"] = table.columns[c];
        cols.push_back(std::move(col));
    }
    j["columns"] = std::move(cols);
    j["meta"] = table.meta;
    return j;
}

CurveTable table_from_json_value(const nlohmann::ordered_json& j) {
    CurveTable t;
    t.label = j.at("label").get<std::string>();
    for (const auto& col : j.at("columns")) {
        t.column_names.push_back(col.at("name").get<std::string>());
        t.columns.push_back(col.at("values").get<std::vector<double>>());
    }
    if (j.contains("meta"))
        t.meta = j.at("meta").get<std::map<std::string, std::string>>();
    t.validate();
    return t;
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string to_csv(const CurveTable& table) {
    table.validate();
    std::string out;
    for (std::size_t c = 0; c < table.column_names.size(); ++c) {
        if (c > 0)
            out += ',';
        out += table.column_names[c];
    }
    out += '\n';
    const std::size_t rows = table.n_rows();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            if (c > 0)
                out += ',';
            out += format_double(table.columns[c][r]);
        }
        out += '\n';
    }
    return out;
}

CurveTable table_from_csv(const std::string& text, std::string label) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw DomainError("empty CSV input");
    CurveTable t;
    t.label = label.empty() ? "csv" : std::move(label);
    t.column_names = split_csv_line(line);
    t.columns.assign(t.column_names.size(), {});
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != t.column_names.size())
            throw DomainError("CSV row width does not match the header");
        for (std::size_t c = 0; c < cells.size(); ++c)
            t.columns[c].push_back(parse_double(cells[c]));
    }
    t.validate();
    return t;
}

std::string to_json(const CurveTable& table) {
    return table_to_json_value(table).dump(2) + "\n";
}

std::string to_json(const std::vector<CurveTable>& tables) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& t : tables)
        arr.push_back(table_to_json_value(t));
    return arr.dump(2) + "\n";
}

CurveTable table_from_json(const std::string& text) {
    return table_from_json_value(nlohmann::ordered_json::parse(text));
}

std::vector<CurveTable> tables_from_json(const std::string& text) {
    const auto arr = nlohmann::ordered_json::parse(text);
    if (!arr.is_array())
        throw DomainError("expected a JSON array of tables");
    std::vector<CurveTable> out;
    out.reserve(arr.size());
    for (const auto& j : arr)
        out.push_back(table_from_json_value(j));
    return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    const std::filesystem::path dir = path.parent_path();
    if (!dir.empty()) {
        std::error_code ec;
        if (!std::filesystem::exists(dir, ec))
            throw IoError("output directory does not exist: " + dir.string());
    }
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot open temporary file: " + tmp.string());
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw IoError("failed writing temporary file: " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::error_code ec2;
        std::filesystem::remove(tmp, ec2);
        throw IoError("failed to move " + tmp.string() + " into place: " + ec.message());
    }
}

} // namespace thermoq
