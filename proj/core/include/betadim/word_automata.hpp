#ifndef BETADIM_WORD_AUTOMATA_HPP
#define BETADIM_WORD_AUTOMATA_HPP

#include "betadim/beta_core.hpp"

#include <vector>

namespace betadim {

/// Tracker for the longest suffix of the word built so far that matches a
/// prefix of the quasi-greedy stream e. That suffix carries the binding
/// admissibility constraint on the next digit; shorter matching suffixes are
/// dominated because every shift of e is lexicographically at most e.
class suffix_tracker {
  public:
    /// need_depth digits of e must be available (periodic streams unroll).
    suffix_tracker(const one_expansion& one, int need_depth);

    int max_digit() const { return max_digit_; }
    int usable_depth() const { return static_cast<int>(e_.size()); }
    int e_at(int i) const { return e_[i - 1]; }  // 1-based, i <= usable_depth

    /// State transition on appending digit d; -1 when the word becomes
    /// inadmissible. States are match lengths 0..usable_depth-1.
    int step(int state, int d) const;
    /// Zero-padding acceptance for a word ending in `state`: true when the
    /// padded tail falls strictly below e. Raises depth_exhausted when the
    /// stored stream cannot decide (non-simple beta only).
    bool word_end_ok(int state) const;
    /// Compares the constant continuation (c, c, ...) against e shifted by
    /// `state`: +1 strictly below, 0 equal for ever (periodic streams only),
    /// -1 above. Raises depth_exhausted when undecidable.
    int settle_constant(int state, int c) const;

    bool periodic() const { return period_ > 0; }
    int period() const { return period_; }

  private:
    std::vector<int> e_;     // unrolled quasi-greedy digits e_1..e_D
    std::vector<int> fail_;  // KMP failure function over e_
    int max_digit_;
    int period_;  // 0 for non-simple beta
};

/// Exact number of admissible words of the given length, computed by a
/// dynamic program over suffix states (no word is materialized).
mpz_class count_admissible(const one_expansion& one, int k);

/// Same count over a restricted digit alphabet.
mpz_class count_restricted(const one_expansion& one, const std::vector<int>& theta, int k);

/// All admissible length-k words over the restricted alphabet, in
/// lexicographic order, by explicit depth-first search.
std::vector<digit_word> enumerate_restricted(const one_expansion& one,
                                             const std::vector<int>& theta, int k);
/// Depth-first walk that only counts (an independent check of the DP).
mpz_class enumerate_restricted_count(const one_expansion& one, const std::vector<int>& theta,
                                     int k);

/// Follower-set automaton of a simple beta: states are the lengths of the
/// longest suffix matching a proper prefix of the greedy expansion of 1, and
/// entry (i,j) counts the digits leading from state i to state j.
struct counting_automaton {
    std::vector<std::vector<long>> matrix;
    int states() const { return static_cast<int>(matrix.size()); }
};

counting_automaton build_automaton(const one_expansion& one);

/// Number of length-k paths out of the start state (the empty-word state).
mpz_class automaton_path_count(const counting_automaton& a, int k);
mpz_class matrix_path_count(const std::vector<std::vector<long>>& m, int k);

/// Certified enclosure of the Perron-Frobenius eigenvalue of an irreducible
/// non-negative integer matrix, via power iteration with Collatz-Wielandt
/// quotient bounds (iteration runs on M + I so periodic matrices converge).
high_real perron_eigenvalue(const std::vector<std::vector<long>>& m, const mpq_class& tol,
                            int prec = 128, int max_iter = 100000);

/// Solves rho(M) * r^(s*block_len) = 1 for s, with enclosure propagation.
high_real dimension_from_matrix(const std::vector<std::vector<long>>& m, const high_real& r,
                                int block_len, const mpq_class& tol, int prec = 128);

/// Length -> exact admissible-word count, with the growth bounds
/// beta^k <= N_k <= beta^(k+1)/(beta-1) evaluated as certified enclosures.
struct word_count_row {
    int k = 0;
    mpz_class count;
    high_real lower_bound;
    high_real upper_bound;
    bool within_bounds = false;
};
std::vector<word_count_row> word_count_table(const one_expansion& one, int k_max,
                                             const std::vector<int>* theta = nullptr,
                                             int prec = 128);

} // namespace betadim

#endif
