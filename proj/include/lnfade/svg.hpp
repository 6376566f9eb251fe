#pragma once

#include <iosfwd>
#include <string>

#include "lnfade/csv.hpp"

namespace lnfade {

/// Static line plot of column y against column x, one polyline per series.
/// Rows are grouped into series by whichever of `scheme`, `policy`, `a1`
/// the table has.
void write_svg_plot(std::ostream& os, const CsvTable& table, const std::string& x_col,
                    const std::string& y_col);

}  // namespace lnfade
