#include "lnhom/config.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "lnhom/error.hpp"
#include "lnhom/format.hpp"
#include "lnhom/io.hpp"

namespace lnhom {
namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"model", {"family", "sigma0", "ell", "beta"}},
      {"functions", {"f", "g", "psi"}},
      {"sweep", {"eps_exponents", "replicates", "base_seed", "probe"}},
      {"grid", {"points_per_corrlen"}},
      {"sampler", {"psd_tolerance", "max_pad_factor"}},
      {"output", {"directory", "formats", "runtime"}},
  };
  return keys;
}

template <class T>
T parse_value(const std::string& key, std::string text) {
  boost::algorithm::trim(text);
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty())
    throw Error(ErrorCode::Config, "config key '" + key + "': cannot parse '" + text + "'");
  return value;
}

bool parse_bool(const std::string& key, std::string text) {
  boost::algorithm::trim(text);
  boost::algorithm::to_lower(text);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw Error(ErrorCode::Config, "config key '" + key + "': expected a boolean");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  boost::algorithm::split(parts, text, boost::algorithm::is_any_of(","));
  for (auto& p : parts) boost::algorithm::trim(p);
  return parts;
}

SourceFunction parse_function(const std::string& key, const std::string& text) {
  try {
    return SourceFunction::parse(boost::algorithm::trim_copy(text));
  } catch (const Error& e) {
    throw Error(ErrorCode::Config, "config key '" + key + "': " + e.what());
  }
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorCode::Config, std::string("config syntax: ") + e.what());
  }

  ExperimentConfig cfg;
  SweepConfig& s = cfg.sweep;
  for (const auto& [section, body] : tree) {
    const auto known = known_keys().find(section);
    if (known == known_keys().end() || body.empty())
      throw Error(ErrorCode::Config, "unknown config section or top-level key '" + section + "'");
    for (const auto& [key, node] : body) {
      if (!known->second.count(key))
        throw Error(ErrorCode::Config, "unknown config key '" + section + "." + key + "'");
      const std::string value = node.data();
      const std::string name = section + "." + key;
      if (name == "model.family") {
        s.model.family = parse_family(boost::algorithm::trim_copy(value));
      } else if (name == "model.sigma0") {
        s.model.sigma0 = parse_value<double>(name, value);
      } else if (name == "model.ell") {
        s.model.ell = parse_value<double>(name, value);
      } else if (name == "model.beta") {
        s.model.beta = parse_value<double>(name, value);
      } else if (name == "functions.f") {
        s.f = parse_function(name, value);
      } else if (name == "functions.g") {
        s.g = parse_function(name, value);
      } else if (name == "functions.psi") {
        s.psi = parse_function(name, value);
      } else if (name == "sweep.eps_exponents") {
        s.eps_exponents.clear();
        for (const auto& part : split_list(value)) s.eps_exponents.push_back(parse_value<int>(name, part));
      } else if (name == "sweep.replicates") {
        s.replicates = parse_value<std::size_t>(name, value);
      } else if (name == "sweep.base_seed") {
        s.base_seed = parse_value<std::uint64_t>(name, value);
      } else if (name == "sweep.probe") {
        s.probe = parse_value<double>(name, value);
      } else if (name == "grid.points_per_corrlen") {
        s.points_per_corrlen = parse_value<int>(name, value);
      } else if (name == "sampler.psd_tolerance") {
        s.sampler.psd_tolerance = parse_value<double>(name, value);
      } else if (name == "sampler.max_pad_factor") {
        s.sampler.max_pad_factor = parse_value<int>(name, value);
      } else if (name == "output.directory") {
        cfg.output_directory = boost::algorithm::trim_copy(value);
      } else if (name == "output.formats") {
        cfg.formats = split_list(value);
      } else if (name == "output.runtime") {
        cfg.record_runtime = parse_bool(name, value);
      }
    }
  }
  validate(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_text_file(path));
}

void validate(const ExperimentConfig& config) {
  validate(config.sweep);
  if (!(config.sweep.sampler.psd_tolerance >= 0.0))
    throw Error(ErrorCode::Config, "sampler.psd_tolerance must be >= 0");
  if (config.sweep.sampler.max_pad_factor < 1)
    throw Error(ErrorCode::Config, "sampler.max_pad_factor must be >= 1");
  if (config.output_directory.empty()) throw Error(ErrorCode::Config, "output.directory is empty");
  if (config.formats.empty()) throw Error(ErrorCode::Config, "output.formats is empty");
  for (const auto& f : config.formats)
    if (f != "csv" && f != "jsonl")
      throw Error(ErrorCode::Config, "output.formats: unknown format '" + f + "'");
}

std::string serialize_config(const ExperimentConfig& config) {
  const SweepConfig& s = config.sweep;
  std::ostringstream out;
  out << "[model]\n"
      << "family = " << to_string(s.model.family) << "\n"
      << "sigma0 = " << format_double(s.model.sigma0) << "\n"
      << "ell = " << format_double(s.model.ell) << "\n"
      << "beta = " << format_double(s.model.beta) << "\n\n"
      << "[functions]\n"
      << "f = " << s.f.to_string() << "\n"
      << "g = " << s.g.to_string() << "\n"
      << "psi = " << s.psi.to_string() << "\n\n"
      << "[sweep]\n"
      << "eps_exponents = ";
  for (std::size_t i = 0; i < s.eps_exponents.size(); ++i)
    out << (i ? "," : "") << s.eps_exponents[i];
  out << "\n"
      << "replicates = " << s.replicates << "\n"
      << "base_seed = " << s.base_seed << "\n"
      << "probe = " << format_double(s.probe) << "\n\n"
      << "[grid]\n"
      << "points_per_corrlen = " << s.points_per_corrlen << "\n\n"
      << "[sampler]\n"
      << "psd_tolerance = " << format_double(s.sampler.psd_tolerance) << "\n"
      << "max_pad_factor = " << s.sampler.max_pad_factor << "\n\n"
      << "[output]\n"
      << "directory = " << config.output_directory << "\n"
      << "formats = ";
  for (std::size_t i = 0; i < config.formats.size(); ++i) out << (i ? "," : "") << config.formats[i];
  out << "\n"
      << "runtime = " << (config.record_runtime ? "true" : "false") << "\n";
  return out.str();
}

std::string config_hash(const ExperimentConfig& config) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize_config(config)) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace lnhom
