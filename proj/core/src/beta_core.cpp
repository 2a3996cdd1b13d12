#include "betadim/beta_core.hpp"

#include "betadim/errors.hpp"

#include <climits>

namespace betadim {

t_step_result t_beta_step(const real_alg& beta, const real_alg& x, const precision_policy& pp) {
    if (x.sign() < 0 || x >= real_alg(1)) raise(errc::precondition, "t_beta_step requires 0 <= x < 1");
    real_alg y = beta * x;
    mpz_class d = y.floor(pp);
    if (d < 0 || !d.fits_sint_p()) raise(errc::internal, "digit out of range");
    real_alg next = y - real_alg(mpq_class(d));
    return {static_cast<int>(d.get_si()), next, next.is_zero() && !x.is_zero()};
}

digit_word expand(const real_alg& beta, const real_alg& x, int n, const precision_policy& pp) {
    if (n < 1) raise(errc::precondition, "expand requires n >= 1");
    if (!(real_alg(1) < beta)) raise(errc::precondition, "expand requires beta > 1");
    if (x.sign() < 0 || x >= real_alg(1)) raise(errc::precondition, "expand requires 0 <= x < 1");
    digit_word w;
    w.reserve(n);
    real_alg cur = x;
    for (int i = 0; i < n; ++i) {
        try {
            auto [d, next, hit] = t_beta_step(beta, cur, pp);
            w.push_back(d);
            cur = std::move(next);
        } catch (const error& e) {
            if (e.kind() == errc::ambiguous_floor)
                raise(errc::ambiguous_floor,
                      "digit " + std::to_string(i + 1) + ": " + e.what());
            throw;
        }
    }
    return w;
}

real_alg evaluate_exact(const real_alg& beta, std::span<const int> w) {
    real_alg inv = beta.inverse();
    real_alg acc(0);
    for (size_t i = w.size(); i-- > 0;) acc = (acc + real_alg(static_cast<long>(w[i]))) * inv;
    return acc;
}

high_real evaluate(const real_alg& beta, std::span<const int> w, int prec) {
    return evaluate_exact(beta, w).enclosure(prec);
}

real_alg eventually_periodic_value(const real_alg& beta, std::span<const int> pre,
                                   std::span<const int> per) {
    if (per.empty()) raise(errc::precondition, "empty period");
    real_alg invp = beta.inverse().pow_ui(pre.size());
    real_alg inv_per = beta.inverse().pow_ui(per.size());
    real_alg per_value = evaluate_exact(beta, per) / (real_alg(1) - inv_per);
    return evaluate_exact(beta, pre) + invp * per_value;
}

one_expansion::one_expansion(const real_alg& beta, int depth, const precision_policy& pp)
    : beta_(beta), depth_(depth) {
    if (depth < 1) raise(errc::precondition, "expansion depth must be >= 1");
    if (!(real_alg(1) < beta)) raise(errc::precondition, "expansion of 1 requires beta > 1");

    mpz_class fb = beta.floor(pp);
    if (!fb.fits_sint_p()) raise(errc::precondition, "beta too large");
    floor_beta_ = static_cast<int>(fb.get_si());

    eps_.assign(depth, 0);
    eps_[0] = floor_beta_;
    real_alg residual = beta - real_alg(mpq_class(fb));
    if (residual.is_zero()) {
        simple_n_ = 1;
        return;
    }
    for (int i = 2; i <= depth; ++i) {
        auto [d, next, hit] = t_beta_step(beta_, residual, pp);
        eps_[i - 1] = d;
        residual = std::move(next);
        if (residual.is_zero()) {
            simple_n_ = i;  // the final digit is nonzero: beta*x = d > 0 here
            return;
        }
    }
}

int one_expansion::simple_n() const {
    if (!simple_n_) raise(errc::not_simple, "expansion of 1 is not finite within stored depth");
    return *simple_n_;
}

int one_expansion::eps_at(int i) const {
    if (i < 1 || i > depth_) raise(errc::depth_exhausted, "greedy digit index beyond stored depth");
    return eps_[i - 1];
}

int one_expansion::e(int i) const {
    if (i < 1) raise(errc::precondition, "digit index must be >= 1");
    if (simple_n_) {
        int n = *simple_n_;
        int r = (i - 1) % n;  // offset within the periodic block
        if (r == n - 1) return eps_[n - 1] - 1;
        return eps_[r];
    }
    if (i > depth_)
        raise(errc::depth_exhausted,
              "quasi-greedy digit " + std::to_string(i) + " beyond stored depth " +
                  std::to_string(depth_));
    return eps_[i - 1];
}

int one_expansion::e_depth() const { return simple_n_ ? INT_MAX : depth_; }

int one_expansion::e_period() const {
    if (!simple_n_) raise(errc::not_simple, "quasi-greedy stream is not periodic");
    return *simple_n_;
}

one_expansion expansion_of_one(const real_alg& beta, int depth, const precision_policy& pp) {
    return one_expansion(beta, depth, pp);
}

digit_view digit_view::of_word_zero_padded(std::span<const int> w) {
    digit_word copy(w.begin(), w.end());
    return {[copy](int i) -> int {
        if (i < 1) raise(errc::precondition, "digit index must be >= 1");
        return i <= static_cast<int>(copy.size()) ? copy[i - 1] : 0;
    }};
}

digit_view digit_view::of_quasi_greedy(const one_expansion& one) {
    return {[&one](int i) { return one.e(i); }};
}

digit_view digit_view::of_periodic(digit_word preperiod, digit_word period) {
    if (period.empty()) raise(errc::precondition, "empty period");
    return {[pre = std::move(preperiod), per = std::move(period)](int i) -> int {
        if (i < 1) raise(errc::precondition, "digit index must be >= 1");
        int idx = i - 1;
        if (idx < static_cast<int>(pre.size())) return pre[idx];
        return per[(idx - pre.size()) % per.size()];
    }};
}

lex_result lex_compare(const digit_view& a, const digit_view& b, int depth) {
    for (int i = 1; i <= depth; ++i) {
        int da = a.at(i), db = b.at(i);
        if (da < db) return lex_result::less;
        if (da > db) return lex_result::greater;
    }
    return lex_result::equal_to_depth;
}

bool is_admissible(const one_expansion& one, std::span<const int> w) {
    int k = static_cast<int>(w.size());
    for (int i = 0; i < k; ++i)
        if (w[i] < 0 || w[i] > one.floor_beta())
            raise(errc::precondition, "word digit outside 0..floor(beta)");

    int e_periodic_bound = one.simple() ? one.e_period() : 0;
    for (int p = 1; p <= k; ++p) {
        // Compare (w_p, ..., w_k, 0, 0, ...) against the quasi-greedy stream.
        bool decided = false;
        int limit = one.simple() ? (k - p + 1) + e_periodic_bound + 1 : one.e_depth();
        for (int i = 1; i <= limit; ++i) {
            int wi = (p + i - 1 <= k) ? w[p + i - 2] : 0;
            int ei = one.e(i);
            if (wi < ei) {
                decided = true;
                break;
            }
            if (wi > ei) return false;
        }
        if (!decided) {
            if (one.simple())
                // Every period window of e contains a nonzero digit, so zero
                // padding always resolves within one period past the word.
                raise(errc::internal, "periodic comparison failed to decide");
            raise(errc::depth_exhausted,
                  "admissibility of tail at position " + std::to_string(p) +
                      " undecided within stored quasi-greedy prefix");
        }
    }
    return true;
}

} // namespace betadim
