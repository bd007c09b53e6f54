#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fracdiff::cli {

// Process exit codes.
inline constexpr int kOk = 0;
inline constexpr int kVerifyFailed = 1;
inline constexpr int kUsage = 2;
inline constexpr int kNumerical = 3;

struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    int count = 0;

    // "min:max:count", count >= 2.  Throws std::invalid_argument.
    static GridSpec parse(const std::string& text);
    std::vector<double> points() const;
};

// "a..b" or a single integer.  Throws std::invalid_argument.
std::pair<int, int> parse_int_range(const std::string& text);

// args excludes the program name.  Results go to `out` unless --out names a
// file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace fracdiff::cli
