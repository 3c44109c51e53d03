#pragma once

#include <string>
#include <vector>

#include "hyplab/complex_core.hpp"

namespace hyplab::cli {

// Reals accept decimal, exponent and p/q forms: "0.25", "1e-3", "1/32", "-3/4".
double parse_real(const std::string& text);
// Complex literals in a+bi form: "1+1i", "-0.4i", "i", "0.3-0.5i", "2".
cplx parse_complex(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);
std::vector<cplx> parse_complex_list(const std::string& text);

// 17 significant digits, "nan" / "inf" / "-inf" for non-finite values.
std::string format_number(double x);

}  // namespace hyplab::cli
