#ifndef BETADIM_BETA_CORE_HPP
#define BETADIM_BETA_CORE_HPP

#include "betadim/high_real.hpp"
#include "betadim/real_alg.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace betadim {

/// Finite digit block; digit i of a word w is w[i-1].
using digit_word = std::vector<int>;

/// One application of the beta-transformation x -> beta*x - floor(beta*x).
struct t_step_result {
    int digit;
    real_alg next;
    bool exact_hit;  // beta*x landed exactly on an integer
};
t_step_result t_beta_step(const real_alg& beta, const real_alg& x,
                          const precision_policy& pp = {});

/// First n greedy digits of x in base beta; requires 0 <= x < 1, beta > 1.
digit_word expand(const real_alg& beta, const real_alg& x, int n,
                  const precision_policy& pp = {});

/// Exact value of the finite word: sum of w_i * beta^-i.
real_alg evaluate_exact(const real_alg& beta, std::span<const int> w);
/// Enclosure of the same sum at the given working precision.
high_real evaluate(const real_alg& beta, std::span<const int> w, int prec = 128);
/// Exact value of the eventually periodic sequence pre . (per)^inf.
real_alg eventually_periodic_value(const real_alg& beta, std::span<const int> pre,
                                   std::span<const int> per);

/// Greedy expansion of 1 together with the quasi-greedy digit stream used by
/// the admissibility criterion. Simplicity is certified through the exact
/// backend, so the status is never guessed from a small residual.
class one_expansion {
  public:
    one_expansion(const real_alg& beta, int depth, const precision_policy& pp = {});

    const real_alg& beta() const { return beta_; }
    int floor_beta() const { return floor_beta_; }
    int depth() const { return depth_; }
    bool simple() const { return simple_n_.has_value(); }
    /// Position of the last nonzero greedy digit when the expansion is finite.
    int simple_n() const;

    /// Greedy digits to the stored depth (zeros after a finite expansion end).
    const digit_word& eps() const { return eps_; }
    /// Greedy digit at 1-based position i (i <= depth()).
    int eps_at(int i) const;

    /// Quasi-greedy digit e_i, 1-based. For a simple beta the stream is the
    /// purely periodic word (eps_1..eps_{n-1}, eps_n - 1) and is available at
    /// every depth; otherwise it equals the greedy digits and positions past
    /// the stored depth raise depth_exhausted.
    int e(int i) const;
    /// Largest index usable with e(); INT_MAX when the stream is periodic.
    int e_depth() const;
    /// Period of the quasi-greedy stream (simple beta only).
    int e_period() const;

  private:
    real_alg beta_;
    int floor_beta_ = 0;
    int depth_ = 0;
    digit_word eps_;
    std::optional<int> simple_n_;
};

one_expansion expansion_of_one(const real_alg& beta, int depth, const precision_policy& pp = {});

/// Infinite digit stream view for lexicographic comparison.
struct digit_view {
    std::function<int(int)> at;  // 1-based; may raise depth_exhausted
    static digit_view of_word_zero_padded(std::span<const int> w);
    static digit_view of_quasi_greedy(const one_expansion& one);
    static digit_view of_periodic(digit_word preperiod, digit_word period);
};

enum class lex_result { less, greater, equal_to_depth };
lex_result lex_compare(const digit_view& a, const digit_view& b, int depth);

/// Parry admissibility of a finite word under the zero-padding convention:
/// every tail of (w, 0, 0, ...) must be lexicographically below the
/// quasi-greedy stream. Undecidable comparisons raise depth_exhausted rather
/// than defaulting to true.
bool is_admissible(const one_expansion& one, std::span<const int> w);

} // namespace betadim

#endif
