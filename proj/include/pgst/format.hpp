#pragma once

#include <string>

namespace pgst {

/// Fixed output formatting shared by CSV and JSON writers: 12 significant
/// digits, "-0" folded to "0". Identical inputs give byte-identical text.
std::string format_number(double x);

/// format_number(x) parsed back, so JSON serialisation prints the same digits.
double rounded_number(double x);

}  // namespace pgst
