#include "lnhom/estimate.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <system_error>

#include "lnhom/error.hpp"
#include "lnhom/format.hpp"

namespace lnhom {

MCEstimate estimate_mean(std::span<const double> draws) {
  if (draws.size() < 2) throw Error(ErrorCode::InvalidArgument, "estimate_mean: need n >= 2");
  const auto n = static_cast<double>(draws.size());
  double mean = 0.0;
  for (double x : draws) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : draws) ss += (x - mean) * (x - mean);
  const double variance = ss / (n - 1.0);
  return {mean, variance, std::sqrt(variance / n), draws.size()};
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw Error(ErrorCode::Io, "format_double: conversion failed");
  return {buf.data(), ptr};
}

}  // namespace lnhom
