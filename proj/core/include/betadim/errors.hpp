#ifndef BETADIM_ERRORS_HPP
#define BETADIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace betadim {

/// Classified failure modes. The CLI maps these onto its exit-code table.
enum class errc {
    parse_error,        // malformed beta / x / theta / config input
    ambiguous_floor,    // floor undecidable within the precision cap
    depth_exhausted,    // lexicographic comparison undecided within stored digits
    simplicity_undecided,
    not_simple,         // automaton construction requires a finite expansion of 1
    reducible_matrix,
    no_convergence,
    out_of_range,
    not_in_q,
    invalid_marker_word,
    digit_not_in_theta,
    tol_unreachable,
    precondition,
    internal,
};

class error : public std::runtime_error {
  public:
    error(errc kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    errc kind() const noexcept { return kind_; }

  private:
    errc kind_;
};

[[noreturn]] inline void raise(errc kind, const std::string& what) { throw error(kind, what); }

} // namespace betadim

#endif
