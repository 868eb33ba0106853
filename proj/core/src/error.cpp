#include "majorant_lab/error.hpp"

#include <sstream>

namespace majorant_lab {

namespace {
std::string format_pair(double previous, double last) {
  std::ostringstream os;
  os.precision(17);
  os << " (previous=" << previous << ", last=" << last << ")";
  return os.str();
}
}  // namespace

ValidationError::ValidationError(std::string parameter, const std::string& message)
    : Error(parameter + ": " + message), parameter_(std::move(parameter)) {}

ConvergenceError::ConvergenceError(const std::string& message, double previous,
                                   double last)
    : Error(message + format_pair(previous, last)), previous_(previous), last_(last) {}

}  // namespace majorant_lab
