#pragma once

#include <string>

namespace a52 {

// Float64 realization of the scalar interface used by the generic formulas.
inline bool is_zero(double v) { return v == 0.0; }
inline double to_double(double v) { return v; }

/// Shortest round-trip decimal in scientific notation, e.g. "1.25e-01".
std::string format_float(double v);

}  // namespace a52
