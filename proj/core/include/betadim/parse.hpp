#ifndef BETADIM_PARSE_HPP
#define BETADIM_PARSE_HPP

#include "betadim/real_alg.hpp"

#include <string>
#include <vector>

namespace betadim {

/// Run-wide configuration shared by the CLI and the library defaults.
struct run_config {
    int precision_bits = 128;
    int max_precision_bits = 1024;
    int max_depth = 256;
    mpq_class tol = mpq_class(1, 1000000000000L);  // 1e-12
    enum class fmt { json, csv } output = fmt::json;

    precision_policy precision() const { return {precision_bits, max_precision_bits}; }
    void validate() const;
};

/// Exact rational from "p/q", an integer literal, or a decimal literal
/// (optionally with exponent); decimals convert exactly, so "3.6" is 18/5.
mpq_class parse_rational(const std::string& text);

/// Real-number grammar shared by beta and x inputs:
///   p/q | integer | decimal | poly:[c0,c1,...,cn]@[lo,hi]
/// A polynomial spec must isolate exactly one root in [lo,hi]; an interval
/// isolating a rational root yields that rational.
real_alg parse_real(const std::string& text);

/// Strictly increasing non-negative digits, e.g. "0,1,3".
std::vector<int> parse_theta(const std::string& text);

/// key=value configuration file; unknown keys are rejected.
void load_config_file(const std::string& path, run_config& cfg);
/// Applies the BETADIM_PREC environment variable if present.
void apply_env(run_config& cfg);

} // namespace betadim

#endif
