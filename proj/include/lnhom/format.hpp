#pragma once

#include <string>

namespace lnhom {

/// Shortest round-trip decimal representation; identical bits give identical text.
std::string format_double(double value);

}  // namespace lnhom
