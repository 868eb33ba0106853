#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "majorant_lab/error.hpp"
#include "majorant_lab/randsets.hpp"

namespace majorant_lab {

void write_frequency_set(std::ostream& os, const FrequencySet& set) {
  for (const auto& n : set.freqs()) {
    for (std::size_t i = 0; i < n.size(); ++i) {
      if (i > 0) os << ',';
      os << n[i];
    }
    os << '\n';
  }
}

std::string format_frequency_set(const FrequencySet& set) {
  std::ostringstream os;
  write_frequency_set(os, set);
  return os.str();
}

FrequencySet read_frequency_set(std::istream& is) {
  std::vector<Frequency> freqs;
  std::size_t dim = 0;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(is, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;

    Frequency n;
    std::istringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) {
      std::size_t used = 0;
      long long value = 0;
      try {
        value = std::stoll(field, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || field.find_first_not_of(" \t", used) != std::string::npos) {
        throw ValidationError("set_file", "line " + std::to_string(line_number) +
                                              ": not an integer: '" + field + "'");
      }
      n.push_back(value);
    }
    if (dim == 0) dim = n.size();
    if (n.size() != dim) {
      throw ValidationError("set_file", "line " + std::to_string(line_number) +
                                            ": expected " + std::to_string(dim) + " coordinates");
    }
    freqs.push_back(std::move(n));
  }
  return FrequencySet::from_points(dim == 0 ? 1 : dim, std::move(freqs));
}

}  // namespace majorant_lab
