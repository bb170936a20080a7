#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace lnhom {

/// c0 + c1 x + c2 x^2 + ...
struct Polynomial {
  std::vector<double> coefficients;
  friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

/// amplitude * sin(2 pi frequency x)
struct Sine {
  double frequency = 1.0;
  double amplitude = 1.0;
  friend bool operator==(const Sine&, const Sine&) = default;
};

/// Closed-form C^1 function on [0,1] used for forcing terms and test functions.
class SourceFunction {
 public:
  SourceFunction() : kind_(Polynomial{{0.0}}) {}
  SourceFunction(Polynomial p);
  SourceFunction(Sine s) : kind_(s) {}

  static SourceFunction constant(double c) { return Polynomial{{c}}; }
  static SourceFunction identity() { return Polynomial{{0.0, 1.0}}; }

  /// "poly:c0,c1,..." or "sin:frequency,amplitude".
  static SourceFunction parse(std::string_view text);
  [[nodiscard]] std::string to_string() const;

  [[nodiscard]] double operator()(double x) const;
  [[nodiscard]] double derivative(double x) const;
  /// Antiderivative vanishing at 0.
  [[nodiscard]] double primitive(double x) const;
  /// Integral over [0,1].
  [[nodiscard]] double mean() const { return primitive(1.0); }
  /// True when the function is constant on [0,1].
  [[nodiscard]] bool is_constant() const;
  /// max |f| on [0,1], sampled on a fine grid.
  [[nodiscard]] double sup_norm() const;

  friend bool operator==(const SourceFunction&, const SourceFunction&) = default;

 private:
  std::variant<Polynomial, Sine> kind_;
};

}  // namespace lnhom
