#ifndef IFM_IO_HPP
#define IFM_IO_HPP

#include <string>
#include <vector>

namespace ifm {

// %.{precision}g; the one formatting path for every numeric cell, so a
// run's output is byte-stable across repeats (no locale, no streams).
std::string format_double(double v, int precision);

// v rounded to what format_double prints: JSON output carries the same
// digits as CSV.
double rounded(double v, int precision);

// Cells joined with ',' and terminated with '\n'.  Cells are written as
// given; numeric cells go through format_double first.
std::string csv_line(const std::vector<std::string>& cells);

// Whole-file write; throws std::runtime_error on failure.
void write_file(const std::string& path, const std::string& text);

} // namespace ifm

#endif // IFM_IO_HPP
