#ifndef BETADIM_COVERS_HPP
#define BETADIM_COVERS_HPP

#include "betadim/cantor_dim.hpp"

namespace betadim {

/// Closed interval with exact endpoints.
struct exact_interval {
    real_alg lo, hi;
};

/// Canonical cover interval of a restricted word: from the value of the
/// minimal continuation to (an outer bound of) the supremum of admissible
/// continuations. `sup_exact` marks certified suprema (periodic greedy
/// continuation); otherwise the upper endpoint carries the tail padding
/// beta^-(k+cont_depth) * beta/(beta-1).
struct cover_item {
    digit_word word;
    exact_interval iv;
    bool sup_exact = false;
};

struct cover_level {
    int k = 0;
    std::vector<cover_item> items;
};

cover_level make_cover_level(const one_expansion& one, const digit_set& theta, int k,
                             int cont_depth);

/// Enclosure of sum |I|^s over the cover.
high_real premeasure_sum(const cover_level& cover, const high_real& s, int prec = 128);

/// Box-count style table: s_k = log N_k / (k log beta) with the theoretical
/// band around the pipeline dimension.
struct box_row {
    int k = 0;
    mpz_class count;
    high_real s_k;
    high_real band;  // upper bound on s_k - s
    bool within = false;
};
struct box_table {
    std::vector<box_row> rows;
    high_real s;
    high_real alpha;
};
box_table box_dimension_estimate(const one_expansion& one, const digit_set& theta, int k_max,
                                 const pipeline_options& opts = {});

/// Separation test for the maps f_i(x) = (x + theta_i)/beta on level-k outer
/// approximations. `separated` comes with a certified positive gap;
/// `violated` is certified through an exact common point that lies in the
/// restricted set; everything else stays undecided.
enum class separation_verdict { separated, violated, undecided_at_depth };
struct separation_result {
    separation_verdict verdict = separation_verdict::undecided_at_depth;
    high_real gap;             // certified lower bound when separated
    std::pair<int, int> bad{-1, -1};  // digit indices when violated
};
separation_result separation_check(const one_expansion& one, const digit_set& theta, int k,
                                   int cont_depth, int prec = 128);

} // namespace betadim

#endif
