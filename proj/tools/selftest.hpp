#pragma once

#include <iosfwd>

#include "yamada/diagram.hpp"

namespace yamada::cli {

/// Prints one PASS/FAIL line per item and a summary; returns the failure count.
int run_selftest(std::ostream& out, SmoothingConvention convention);

}  // namespace yamada::cli
