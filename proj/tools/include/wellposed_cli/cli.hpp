#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace wellposed::cli {

// Exit codes: 0 well-posed (or simulation done), 2 not certified or
// exploratory, 1 input error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// "1,2,1+1i,-0.5i" -> complex values. Throws std::invalid_argument.
std::vector<std::complex<double>> parse_complex_list(const std::string& text);

}  // namespace wellposed::cli
