#pragma once

#include <cstdint>

namespace lnhom {

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of replicate `replicate` in stream `stream` (the sweep uses the
/// epsilon exponent j as stream). Pure, so any task order yields the same seeds.
constexpr std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t stream,
                                    std::uint64_t replicate) noexcept {
  return splitmix64(splitmix64(splitmix64(base_seed) ^ stream) + replicate);
}

}  // namespace lnhom
