#include "qdual/report.hpp"

namespace qdual {

std::string Report::summary() const {
  std::string s;
  for (const auto& c : checks) {
    s += (c.pass ? "PASS " : "FAIL ") + c.name + "\n";
    for (const auto& r : c.residuals) s += "    " + r + "\n";
  }
  return s;
}

}  // namespace qdual
