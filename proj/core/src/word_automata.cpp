#include "betadim/word_automata.hpp"

#include "betadim/errors.hpp"

#include <algorithm>

namespace betadim {

suffix_tracker::suffix_tracker(const one_expansion& one, int need_depth) {
    max_digit_ = one.floor_beta();
    period_ = one.simple() ? one.e_period() : 0;
    int depth = need_depth;
    if (!one.simple()) {
        if (need_depth > one.e_depth())
            raise(errc::depth_exhausted,
                  "needed " + std::to_string(need_depth) + " quasi-greedy digits, stored " +
                      std::to_string(one.e_depth()));
        depth = one.e_depth();  // keep the full guard available for lookahead
    } else {
        // Unroll at least two periods past the requested depth so constant
        // continuations always resolve inside the stored window.
        depth = need_depth + 2 * period_ + 2;
    }
    e_.resize(depth);
    for (int i = 1; i <= depth; ++i) e_[i - 1] = one.e(i);

    fail_.assign(depth + 1, 0);
    for (int L = 2; L <= depth; ++L) {
        int m = fail_[L - 1];
        while (m > 0 && e_[m] != e_[L - 1]) m = fail_[m];
        fail_[L] = (e_[m] == e_[L - 1]) ? m + 1 : 0;
    }
}

int suffix_tracker::step(int state, int d) const {
    if (state + 1 > static_cast<int>(e_.size()))
        raise(errc::depth_exhausted, "suffix state outran the stored quasi-greedy prefix");
    int bound = e_[state];  // e_{state+1}
    if (d > bound) return -1;
    if (d == bound) return state + 1;
    int m = fail_[state];
    while (m > 0 && e_[m] != d) m = fail_[m];
    return (e_[m] == d) ? m + 1 : 0;
}

bool suffix_tracker::word_end_ok(int state) const {
    // Padding with zeros: the tail equals e_1..e_state so far and continues
    // with zeros; it stays below e iff some later e digit is positive.
    for (int i = state; i < static_cast<int>(e_.size()); ++i) {
        if (e_[i] > 0) return true;
    }
    if (periodic()) raise(errc::internal, "periodic stream without nonzero digit");
    raise(errc::depth_exhausted, "zero-padded tail undecided within stored quasi-greedy prefix");
}

int suffix_tracker::settle_constant(int state, int c) const {
    for (int i = state; i < static_cast<int>(e_.size()); ++i) {
        if (e_[i] > c) return 1;
        if (e_[i] < c) return -1;
        if (periodic() && i - state + 1 >= period_) return 0;  // full period equal
    }
    if (periodic()) return 0;
    raise(errc::depth_exhausted, "constant continuation undecided within stored prefix");
}

namespace {

std::vector<mpz_class> dp_counts(const suffix_tracker& t, const std::vector<int>& alphabet,
                                 int k) {
    // counts[L] = number of admissible length-j words whose longest
    // e-matching suffix has length L.
    std::vector<mpz_class> cnt(static_cast<size_t>(k) + 2, mpz_class(0));
    cnt[0] = 1;
    for (int j = 0; j < k; ++j) {
        std::vector<mpz_class> next(cnt.size(), mpz_class(0));
        for (int L = 0; L <= j; ++L) {
            if (cnt[L] == 0) continue;
            for (int d : alphabet) {
                int M = t.step(L, d);
                if (M >= 0) next[M] += cnt[L];
            }
        }
        cnt = std::move(next);
    }
    return cnt;
}

mpz_class finish_counts(const suffix_tracker& t, std::vector<mpz_class> cnt) {
    mpz_class total(0);
    for (size_t L = 0; L < cnt.size(); ++L) {
        if (cnt[L] == 0) continue;
        if (!t.word_end_ok(static_cast<int>(L)))
            raise(errc::internal, "unreachable: end state rejected");
        total += cnt[L];
    }
    return total;
}

std::vector<int> full_alphabet(const one_expansion& one) {
    std::vector<int> a(static_cast<size_t>(one.floor_beta()) + 1);
    for (size_t i = 0; i < a.size(); ++i) a[i] = static_cast<int>(i);
    return a;
}

void check_theta(const one_expansion& one, const std::vector<int>& theta) {
    if (theta.empty()) raise(errc::precondition, "empty digit set");
    for (size_t i = 0; i < theta.size(); ++i) {
        if (theta[i] < 0 || theta[i] > one.floor_beta())
            raise(errc::precondition, "digit set member outside 0..floor(beta)");
        if (i > 0 && theta[i] <= theta[i - 1])
            raise(errc::precondition, "digit set must be strictly increasing");
    }
}

} // namespace

mpz_class count_admissible(const one_expansion& one, int k) {
    if (k < 0) raise(errc::precondition, "negative word length");
    if (k == 0) return 1;
    suffix_tracker t(one, k + 1);
    return finish_counts(t, dp_counts(t, full_alphabet(one), k));
}

mpz_class count_restricted(const one_expansion& one, const std::vector<int>& theta, int k) {
    check_theta(one, theta);
    if (k == 0) return 1;
    suffix_tracker t(one, k + 1);
    return finish_counts(t, dp_counts(t, theta, k));
}

namespace {

template <typename Visit>
void dfs_restricted(const suffix_tracker& t, const std::vector<int>& theta, int k,
                    digit_word& stack, int state, Visit&& visit) {
    if (static_cast<int>(stack.size()) == k) {
        if (!t.word_end_ok(state)) raise(errc::internal, "unreachable: end state rejected");
        visit(stack);
        return;
    }
    for (int d : theta) {  // ascending digits give lexicographic output order
        int M = t.step(state, d);
        if (M < 0) continue;
        stack.push_back(d);
        dfs_restricted(t, theta, k, stack, M, visit);
        stack.pop_back();
    }
}

} // namespace

std::vector<digit_word> enumerate_restricted(const one_expansion& one,
                                             const std::vector<int>& theta, int k) {
    check_theta(one, theta);
    std::vector<digit_word> out;
    if (k == 0) return out;
    suffix_tracker t(one, k + 1);
    digit_word stack;
    dfs_restricted(t, theta, k, stack, 0, [&](const digit_word& w) { out.push_back(w); });
    return out;
}

mpz_class enumerate_restricted_count(const one_expansion& one, const std::vector<int>& theta,
                                     int k) {
    check_theta(one, theta);
    if (k == 0) return 1;
    suffix_tracker t(one, k + 1);
    digit_word stack;
    mpz_class n(0);
    dfs_restricted(t, theta, k, stack, 0, [&](const digit_word&) { ++n; });
    return n;
}

counting_automaton build_automaton(const one_expansion& one) {
    int n = one.simple_n();  // raises not_simple otherwise
    const digit_word& eps = one.eps();

    // Failure function over the proper prefixes of the greedy word.
    std::vector<int> fail(static_cast<size_t>(n) + 1, 0);
    for (int L = 2; L <= n; ++L) {
        int m = fail[L - 1];
        while (m > 0 && eps[m] != eps[L - 1]) m = fail[m];
        fail[L] = (eps[m] == eps[L - 1]) ? m + 1 : 0;
    }

    counting_automaton a;
    a.matrix.assign(n, std::vector<long>(n, 0));
    for (int L = 0; L < n; ++L) {
        for (int d = 0; d <= one.floor_beta(); ++d) {
            int target;
            if (d == eps[L]) {
                if (L + 1 == n) continue;  // completing the greedy word is forbidden
                target = L + 1;
            } else if (d < eps[L]) {
                int m = fail[L];
                while (m > 0 && eps[m] != d) m = fail[m];
                target = (eps[m] == d) ? m + 1 : 0;
            } else {
                continue;
            }
            ++a.matrix[L][target];
        }
    }
    return a;
}

mpz_class matrix_path_count(const std::vector<std::vector<long>>& m, int k) {
    size_t n = m.size();
    std::vector<mpz_class> v(n, mpz_class(0));
    v[0] = 1;
    for (int step = 0; step < k; ++step) {
        std::vector<mpz_class> w(n, mpz_class(0));
        for (size_t i = 0; i < n; ++i) {
            if (v[i] == 0) continue;
            for (size_t j = 0; j < n; ++j)
                if (m[i][j]) w[j] += v[i] * m[i][j];
        }
        v = std::move(w);
    }
    mpz_class total(0);
    for (const auto& x : v) total += x;
    return total;
}

mpz_class automaton_path_count(const counting_automaton& a, int k) {
    return matrix_path_count(a.matrix, k);
}

namespace {

void check_square_nonneg(const std::vector<std::vector<long>>& m) {
    if (m.empty()) raise(errc::precondition, "empty matrix");
    for (const auto& row : m) {
        if (row.size() != m.size()) raise(errc::precondition, "matrix is not square");
        for (long v : row)
            if (v < 0) raise(errc::precondition, "matrix has a negative entry");
    }
}

bool irreducible(const std::vector<std::vector<long>>& m) {
    size_t n = m.size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) reach[i][j] = m[i][j] > 0;
    for (size_t k = 0; k < n; ++k)
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (!reach[i][j]) return false;
    return true;
}

} // namespace

high_real perron_eigenvalue(const std::vector<std::vector<long>>& m, const mpq_class& tol,
                            int prec, int max_iter) {
    check_square_nonneg(m);
    size_t n = m.size();
    if (n == 1) return high_real(m[0][0], prec);
    if (!irreducible(m)) raise(errc::reducible_matrix, "matrix is reducible");
    if (tol <= 0) raise(errc::precondition, "tolerance must be positive");

    // Collatz-Wielandt quotients of M' = M + I bracket rho(M) + 1; the shift
    // makes the iteration primitive so the quotients converge.
    std::vector<mpq_class> v(n, mpq_class(1));
    for (int it = 0; it < max_iter; ++it) {
        std::vector<mpq_class> w(n, mpq_class(0));
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < n; ++j)
                if (m[i][j]) w[i] += mpq_class(m[i][j]) * v[j];
            w[i] += v[i];
        }
        mpq_class lo = w[0] / v[0], hi = lo;
        for (size_t i = 1; i < n; ++i) {
            mpq_class q = w[i] / v[i];
            if (q < lo) lo = q;
            if (q > hi) hi = q;
        }
        if (hi - lo <= tol)
            return high_real::from_endpoints(lo - 1, hi - 1, prec);
        // Normalize to keep numerators small; midpoint rounding keeps the
        // iteration exact in rational arithmetic.
        mpq_class scale = w[0];
        for (auto& x : w) x /= scale;
        // Round each coordinate to 2*prec bits to stop denominator blowup.
        mpz_class denom = mpz_class(1) << (2 * prec);
        for (auto& x : w) {
            mpz_class num = x.get_num() * denom / x.get_den();
            if (num == 0) num = 1;
            x = mpq_class(num, denom);
            x.canonicalize();
        }
        v = std::move(w);
    }
    raise(errc::no_convergence, "Perron iteration did not reach the requested tolerance");
}

high_real dimension_from_matrix(const std::vector<std::vector<long>>& m, const high_real& r,
                                int block_len, const mpq_class& tol, int prec) {
    if (block_len < 1) raise(errc::precondition, "block length must be >= 1");
    if (!r.certainly_positive() || !r.certainly_less(high_real(1, r.prec())))
        raise(errc::precondition, "contraction ratio must satisfy 0 < r < 1");
    high_real rho = perron_eigenvalue(m, tol, prec);
    high_real denom = -(r.log()) * high_real(block_len, prec);
    return rho.log() / denom;
}

std::vector<word_count_row> word_count_table(const one_expansion& one, int k_max,
                                             const std::vector<int>* theta, int prec) {
    std::vector<word_count_row> rows;
    high_real beta = one.beta().enclosure(prec);
    high_real bm1 = beta - high_real(1, prec);
    for (int k = 1; k <= k_max; ++k) {
        word_count_row row;
        row.k = k;
        row.count = theta ? count_restricted(one, *theta, k) : count_admissible(one, k);
        row.lower_bound = beta.pow_si(k);
        row.upper_bound = beta.pow_si(k + 1) / bm1;
        // Certified sandwich check against the outer enclosure endpoints.
        mpq_class n(row.count);
        row.within_bounds = row.lower_bound.upper() <= n && n <= row.upper_bound.lower();
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace betadim
