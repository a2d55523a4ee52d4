#include "pgst/format.hpp"

#include <cstdio>
#include <cstdlib>

namespace pgst {

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  std::string s(buf);
  if (s == "-0") s = "0";
  return s;
}

double rounded_number(double x) { return std::strtod(format_number(x).c_str(), nullptr); }

}  // namespace pgst
