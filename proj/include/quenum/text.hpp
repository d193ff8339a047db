#pragma once

#include <string>

namespace quenum {

/// Shortest round-trippable decimal form; deterministic across runs.
std::string format_double(double v);

std::string format_complex(double re, double im);

}  // namespace quenum
