#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "lnhom/statistics.hpp"
#include "lnhom/sweep.hpp"

namespace lnhom {

/// Column order of the record tables.
const std::vector<std::string>& record_columns();

/// CSV with a header row; numbers in shortest round-trip form.
void write_records_csv(std::ostream& out, const std::vector<ObservableRecord>& records);
/// One JSON object per line, same keys as the CSV header.
void write_records_jsonl(std::ostream& out, const std::vector<ObservableRecord>& records);
/// Inverse of write_records_csv. Throws Io on malformed input.
std::vector<ObservableRecord> read_records_csv(std::istream& in);

/// RFC 4180 field quoting: quotes when the field holds a comma, quote or line break.
std::string csv_quote(const std::string& field);
/// Splits one CSV line, honouring quoted fields.
std::vector<std::string> csv_split(const std::string& line);

/// Opens for writing or throws Io.
void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace lnhom
