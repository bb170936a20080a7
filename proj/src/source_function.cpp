#include "lnhom/source_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lnhom/error.hpp"
#include "lnhom/format.hpp"

namespace lnhom {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<double> parse_numbers(std::string_view body, std::string_view original) {
  std::vector<double> values;
  std::string token;
  std::istringstream in{std::string(body)};
  while (std::getline(in, token, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(token, &used));
      if (token.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw Error(ErrorCode::Config, "bad number '" + token + "' in function '" +
                                         std::string(original) + "'");
    }
  }
  if (values.empty())
    throw Error(ErrorCode::Config, "function '" + std::string(original) + "' has no parameters");
  return values;
}

}  // namespace

SourceFunction::SourceFunction(Polynomial p) : kind_(std::move(p)) {
  auto& c = std::get<Polynomial>(kind_).coefficients;
  if (c.empty()) c.push_back(0.0);
}

SourceFunction SourceFunction::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw Error(ErrorCode::Config, "function '" + std::string(text) + "' missing 'kind:' prefix");
  const auto kind = text.substr(0, colon);
  const auto values = parse_numbers(text.substr(colon + 1), text);
  if (kind == "poly") return Polynomial{values};
  if (kind == "sin") {
    if (values.size() != 2)
      throw Error(ErrorCode::Config, "sin function needs 'sin:frequency,amplitude'");
    return Sine{values[0], values[1]};
  }
  throw Error(ErrorCode::Config, "unknown function kind '" + std::string(kind) + "'");
}

std::string SourceFunction::to_string() const {
  return std::visit(overloaded{[](const Polynomial& p) {
                                 std::string s = "poly:";
                                 for (std::size_t i = 0; i < p.coefficients.size(); ++i) {
                                   if (i) s += ',';
                                   s += format_double(p.coefficients[i]);
                                 }
                                 return s;
                               },
                               [](const Sine& s) {
                                 return "sin:" + format_double(s.frequency) + "," +
                                        format_double(s.amplitude);
                               }},
                    kind_);
}

double SourceFunction::operator()(double x) const {
  return std::visit(overloaded{[x](const Polynomial& p) {
                                 double acc = 0.0;
                                 for (auto it = p.coefficients.rbegin();
                                      it != p.coefficients.rend(); ++it)
                                   acc = acc * x + *it;
                                 return acc;
                               },
                               [x](const Sine& s) {
                                 return s.amplitude * std::sin(2.0 * M_PI * s.frequency * x);
                               }},
                    kind_);
}

double SourceFunction::derivative(double x) const {
  return std::visit(
      overloaded{[x](const Polynomial& p) {
                   double acc = 0.0;
                   for (std::size_t k = p.coefficients.size(); k-- > 1;)
                     acc = acc * x + static_cast<double>(k) * p.coefficients[k];
                   return acc;
                 },
                 [x](const Sine& s) {
                   const double w = 2.0 * M_PI * s.frequency;
                   return s.amplitude * w * std::cos(w * x);
                 }},
      kind_);
}

double SourceFunction::primitive(double x) const {
  return std::visit(
      overloaded{[x](const Polynomial& p) {
                   double acc = 0.0;
                   for (std::size_t k = p.coefficients.size(); k-- > 0;)
                     acc = acc * x + p.coefficients[k] / static_cast<double>(k + 1);
                   return acc * x;
                 },
                 [x](const Sine& s) {
                   const double w = 2.0 * M_PI * s.frequency;
                   if (w == 0.0) return 0.0;
                   return s.amplitude * (1.0 - std::cos(w * x)) / w;
                 }},
      kind_);
}

bool SourceFunction::is_constant() const {
  return std::visit(overloaded{[](const Polynomial& p) {
                                 return std::all_of(p.coefficients.begin() + 1,
                                                    p.coefficients.end(),
                                                    [](double c) { return c == 0.0; });
                               },
                               [](const Sine& s) {
                                 return s.amplitude == 0.0 || s.frequency == 0.0;
                               }},
                    kind_);
}

double SourceFunction::sup_norm() const {
  double m = 0.0;
  constexpr int kSamples = 4096;
  for (int i = 0; i <= kSamples; ++i) m = std::max(m, std::abs((*this)(double(i) / kSamples)));
  return m;
}

}  // namespace lnhom
