#include "lnhom/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "lnhom/error.hpp"
#include "lnhom/format.hpp"

namespace lnhom {
namespace {

std::vector<std::string> record_fields(const ObservableRecord& r) {
  return {std::to_string(r.j),
          format_double(r.eps),
          std::to_string(r.replicate),
          std::to_string(r.seed),
          format_double(r.err_u_probe),
          format_double(r.err_du_probe),
          format_double(r.err_twoscale_h1),
          format_double(r.I),
          format_double(r.J_uv),
          format_double(r.J_psi),
          format_double(r.K),
          format_double(r.runtime_ms)};
}

template <class T>
T parse_number(const std::string& text, std::size_t line) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end)
    throw Error(ErrorCode::Io, "records csv line " + std::to_string(line) + ": bad number '" +
                                   text + "'");
  return value;
}

}  // namespace

const std::vector<std::string>& record_columns() {
  static const std::vector<std::string> columns{
      "j",   "eps",  "replicate", "seed", "err_u_L2probe", "err_du_probe", "err_twoscale_H1",
      "I",   "J_uv", "J_psi",     "K",    "runtime_ms"};
  return columns;
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  return fields;
}

void write_records_csv(std::ostream& out, const std::vector<ObservableRecord>& records) {
  const auto& cols = record_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << csv_quote(cols[i]);
  out << "\r\n";
  for (const auto& r : records) {
    const auto fields = record_fields(r);
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << csv_quote(fields[i]);
    out << "\r\n";
  }
}

void write_records_jsonl(std::ostream& out, const std::vector<ObservableRecord>& records) {
  const auto& cols = record_columns();
  for (const auto& r : records) {
    const auto fields = record_fields(r);
    out << '{';
    // Values are emitted as their CSV text so both formats carry the same digits.
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const bool finite_number = fields[i] != "nan" && fields[i] != "inf" && fields[i] != "-inf";
      out << (i ? "," : "") << nlohmann::json(cols[i]).dump() << ':'
          << (finite_number ? fields[i] : nlohmann::json(fields[i]).dump());
    }
    out << "}\n";
  }
}

std::vector<ObservableRecord> read_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::Io, "records csv: empty input");
  if (csv_split(line) != record_columns())
    throw Error(ErrorCode::Io, "records csv: unexpected header");
  std::vector<ObservableRecord> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto f = csv_split(line);
    if (f.size() != record_columns().size())
      throw Error(ErrorCode::Io, "records csv line " + std::to_string(lineno) +
                                     ": wrong number of fields");
    ObservableRecord r;
    r.j = parse_number<int>(f[0], lineno);
    r.eps = parse_number<double>(f[1], lineno);
    r.replicate = parse_number<std::size_t>(f[2], lineno);
    r.seed = parse_number<std::uint64_t>(f[3], lineno);
    r.err_u_probe = parse_number<double>(f[4], lineno);
    r.err_du_probe = parse_number<double>(f[5], lineno);
    r.err_twoscale_h1 = parse_number<double>(f[6], lineno);
    r.I = parse_number<double>(f[7], lineno);
    r.J_uv = parse_number<double>(f[8], lineno);
    r.J_psi = parse_number<double>(f[9], lineno);
    r.K = parse_number<double>(f[10], lineno);
    r.runtime_ms = parse_number<double>(f[11], lineno);
    out.push_back(r);
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw Error(ErrorCode::Io, "write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace lnhom
