#pragma once

#include <string>
#include <vector>

namespace mpsddg {

/// %.17g, with "nan", "inf" and "-inf" for non-finite values.
std::string format_double(double v);

/// Header line plus one comma-separated row per entry, '\n' line endings.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace mpsddg
