#ifndef FGC_IO_HPP
#define FGC_IO_HPP

#include <string>
#include <vector>

#include "fgc/types.hpp"

namespace fgc {

/// Raw parsed form of a curve file: row 1 is the grid, every following row
/// one curve in time order.
struct CurveTable {
    std::vector<double> header;
    std::vector<std::vector<double>> rows;
    std::string label;
};

/// Parses a delimited curve file. delimiter '\0' sniffs the header line
/// (tab when present, comma otherwise). Errors name the offending row and
/// column, with the header counted as row 1.
CurveTable read_table(const std::string& path, char delimiter = '\0');

/// read_table plus validation into a series: strictly increasing grid of at
/// least 3 points and at least 4 curve rows. The label is the file stem.
CurveSeries read_curves(const std::string& path, char delimiter = '\0');

/// Writes the standard format with 17 significant digits (lossless
/// round-trip). The file is written to a temporary name and renamed.
void write_curves(const CurveSeries& series, const std::string& path,
                  char delimiter = ',');

std::string render_curves(const CurveSeries& series, char delimiter = ',');

/// Per curve, the differences of log prices between consecutive grid points:
/// r(u_i) = ln q(u_{i+1}) - ln q(u_i), i = 1..m-1. The result sits on the
/// first m-1 grid points by default; midpoint_grid relabels them to interval
/// midpoints (only relative distances enter the semi-metric downstream).
CurveSeries log_returns(const CurveSeries& prices, bool midpoint_grid = false);

/// Pointwise (price / cpi) * 100 with matching shapes.
CurveSeries cpi_normalize(const CurveSeries& prices, const CurveSeries& cpi);

/// Writes via a temporary file in the same directory plus rename, so readers
/// never observe a partial file.
void atomic_write_file(const std::string& path, const std::string& content);

} // namespace fgc

#endif // FGC_IO_HPP
