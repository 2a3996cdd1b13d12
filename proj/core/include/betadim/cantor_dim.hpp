#ifndef BETADIM_CANTOR_DIM_HPP
#define BETADIM_CANTOR_DIM_HPP

#include "betadim/word_automata.hpp"

#include <optional>
#include <string>
#include <vector>

namespace betadim {

/// Strictly increasing digit set theta_0 < ... < theta_{q-1}.
struct digit_set {
    std::vector<int> thetas;
    explicit digit_set(std::vector<int> t);
    int q() const { return static_cast<int>(thetas.size()); }
    int min() const { return thetas.front(); }
    int max() const { return thetas.back(); }
    /// Index j with thetas[j] == d, or -1.
    int index_of(int d) const;
    /// Validity against a concrete beta: theta_{q-1} <= floor(beta).
    void check_against(const one_expansion& one) const;
};

struct period_info {
    int preperiod = 0;
    int period = 0;
    bool certified = false;  // certified via suffix-state recurrence
};

/// Greedy maximal digit sequence of the restricted shift, with enclosure of
/// its value. The digit chosen at each position is the largest theta whose
/// theta_0-repetition continuation stays inside the beta-shift closure.
struct max_sequence {
    digit_word z;
    high_real value;
    int certified_depth = 0;
    std::optional<period_info> period;
};

max_sequence compute_max_sequence(const one_expansion& one, const digit_set& theta, int depth,
                                  int prec = 128);

/// Greedy maximal admissible digits over theta from an arbitrary suffix
/// state. When the quasi-greedy stream is periodic, a recurring suffix state
/// certifies eventual periodicity of the output.
struct greedy_continuation {
    digit_word digits;
    std::optional<period_info> period;
};
greedy_continuation greedy_max_digits(const suffix_tracker& tracker, const digit_set& theta,
                                      int start_state, int count);

/// Positionwise recoding z_i = theta_j  =>  omega_i = j.
struct omega_sequence {
    std::vector<int> omega;
    int q = 0;
    std::optional<period_info> period;
};

omega_sequence recode_omega(const max_sequence& z, const digit_set& theta);

struct alpha_result {
    high_real alpha;
    high_real residual;
    int truncation = 0;
    bool degenerate = false;
};

/// Solves 1 = sum omega_i alpha^-i by bisection with rigorous lower/upper
/// tail completions; a detected period refines the enclosure through the
/// associated polynomial equation but never replaces the truncation bracket.
alpha_result solve_alpha(const omega_sequence& omega, const mpq_class& tol, int prec = 128);

struct dimension_result {
    high_real s;
    alpha_result alpha;
    high_real beta_enclosure;
    digit_word z_prefix;
    std::vector<int> omega_prefix;
    std::optional<period_info> period;
    bool degenerate = false;
};

struct pipeline_options {
    mpq_class tol = mpq_class(1, 10000000000L);  // 1e-10
    int prec = 128;
    int initial_depth = 64;
    int max_depth = 512;
    precision_policy pp{};
};

/// Full pipeline: expansion of 1 -> maximal sequence -> recoding -> alpha ->
/// s = log(alpha)/log(beta) with outward rounding. Degenerate digit sets
/// yield s = 0 with the degenerate flag set.
dimension_result hausdorff_dimension(const real_alg& beta, const digit_set& theta,
                                     const pipeline_options& opts = {});

/// Inverse construction: finds beta with a prescribed alpha by mapping the
/// quasi-greedy digits of 1 in base alpha through the digit set and solving
/// 1 = sum theta_{e_i} beta^-i.
high_real inverse_beta_for_alpha(const real_alg& alpha, const digit_set& theta,
                                 const mpq_class& tol, const pipeline_options& opts = {});

/// Plateau of constant alpha for the digit set {0,1,3}: endpoints from the
/// marker word's two defining equations, alpha from the recoded one.
struct plateau_interval {
    digit_word word;
    high_real beta_l;
    high_real beta_r;
    high_real alpha;
};

plateau_interval plateau_from_word(const digit_word& word, const mpq_class& tol, int prec = 128);

/// Classifier for the exceptional set of {0,1,3}: membership holds when the
/// digits of the expansion of 1 avoid 2 (or end with a single final 2).
enum class v_verdict { in_v, not_in_v, undecided_at_depth };
struct v_result {
    v_verdict verdict;
    int witness_pos = 0;  // position of the offending digit 2 for not_in_v
};

v_result classify_v_013(const one_expansion& one, int depth);

struct curve_row {
    mpq_class beta;
    bool ok = false;
    std::string error;
    std::optional<dimension_result> dim;
    bool plateau = false;
};

struct curve_result {
    std::vector<curve_row> rows;
    /// True when no certified violation of alpha-monotonicity was found.
    bool alpha_nondecreasing = true;
};

/// Uniform beta-grid evaluation of the pipeline; errors are recorded per row.
/// Maximal runs of overlapping alpha enclosures are flagged as plateaus.
curve_result dimension_curve(const digit_set& theta, const mpq_class& lo, const mpq_class& hi,
                             int samples, const pipeline_options& opts = {}, int jobs = 1);

} // namespace betadim

#endif
