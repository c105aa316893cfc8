#pragma once

#include <istream>
#include <string>
#include <vector>

#include "pqa/core/json_io.hpp"
#include "pqa/core/types.hpp"

namespace pqa::service {

struct LineError {
    std::size_t line = 0;  // 1-based
    std::string message;
};

/// records_read == records_indexed + duplicates + errors.size().
struct IngestReport {
    std::size_t records_read = 0;
    std::size_t records_indexed = 0;
    std::size_t duplicates = 0;
    std::vector<LineError> errors;
};

void to_json(Json& j, const IngestReport& r);

struct ParsedCatalog {
    IngestReport report;
    std::vector<ProductRecord> records;
};

/// JSONL product records. Bad lines and name collisions are reported per line;
/// a repeated product_id counts as a duplicate and the first one wins.
ParsedCatalog parse_catalog(std::istream& in);

/// Throws IoError when the file cannot be opened.
ParsedCatalog parse_catalog_file(const std::string& path);

}  // namespace pqa::service
