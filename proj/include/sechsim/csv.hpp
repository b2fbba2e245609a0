#pragma once
#include <string>
#include <vector>

namespace sechsim {

// %.12e via to_chars: locale-proof, so identical runs give identical bytes.
std::string format_sci(double v);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// Matrix layout: top-left cell names the axes ("row_axis\col_axis"), first row
// is the column axis, first column the row axis.
void write_csv_matrix(const std::string& path, const std::string& corner,
                      const std::vector<double>& col_axis,
                      const std::vector<double>& row_axis,
                      const std::vector<std::vector<double>>& values);

} // namespace sechsim
