#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "zswkb/types.hpp"

namespace zswkb {

using json = nlohmann::ordered_json;

/// Printed with %.12g so repeated runs are byte-identical.
std::string fmt_double(double v);

std::string csv_escape(const std::string& s);

/// One output document: JSON-lines plus a CSV mirror with a fixed column set.
struct OutputTable {
    std::vector<std::string> columns;
    std::vector<json> rows;

    void add(const json& row) { rows.push_back(row); }
    std::string to_jsonl() const;
    std::string to_csv() const;
};

void write_file(const std::string& path, const std::string& content);

/// FNV-1a hash of the canonical config dump; stamped on every output row.
std::string config_hash(const json& config);

}  // namespace zswkb
