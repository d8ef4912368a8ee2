#pragma once

#include "tempest/series.hpp"

#include <string>

namespace tempest {

/// Reads a rectangular numeric CSV (row = time index, column = dimension)
/// into a TimeSeries. Errors name the offending physical line: ragged rows,
/// non-numeric cells, NaN/Inf values. `has_header` skips the first line.
TimeSeries load_csv(const std::string& path, bool has_header = false);

/// Writes a TimeSeries as comma-separated values ('.' decimal, shortest
/// round-trip formatting), one row per time index, optional header
/// "c0,c1,...".
void save_csv(const std::string& path, const TimeSeries& series,
              bool with_header = false);

/// Shortest decimal representation that round-trips the double exactly.
std::string format_double(double value);

}  // namespace tempest
