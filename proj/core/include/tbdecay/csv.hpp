#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace tbdecay::io {

// Fixed 12-significant-digit rendering used for every emitted number, so that
// identical runs produce byte-identical files.
std::string format_number(double value);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const;
};

void write_csv(std::ostream& out, const CsvTable& table);
CsvTable read_csv(std::istream& in);

// Dense map with an axis row and an axis column:
//   corner, col_0, col_1, ...
//   row_0,  v00,   v01,   ...
void write_matrix(std::ostream& out, const std::string& corner, std::span<const double> column_axis,
                  std::span<const double> row_axis, std::span<const double> values);

}  // namespace tbdecay::io
