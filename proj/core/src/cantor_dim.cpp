#include "betadim/cantor_dim.hpp"

#include "betadim/errors.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <map>
#include <sstream>

namespace betadim {

digit_set::digit_set(std::vector<int> t) : thetas(std::move(t)) {
    if (thetas.size() < 2) raise(errc::precondition, "digit set needs at least two digits");
    if (thetas.front() < 0) raise(errc::precondition, "digits must be non-negative");
    for (size_t i = 1; i < thetas.size(); ++i)
        if (thetas[i] <= thetas[i - 1])
            raise(errc::precondition, "digit set must be strictly increasing");
}

int digit_set::index_of(int d) const {
    auto it = std::lower_bound(thetas.begin(), thetas.end(), d);
    if (it == thetas.end() || *it != d) return -1;
    return static_cast<int>(it - thetas.begin());
}

void digit_set::check_against(const one_expansion& one) const {
    if (max() > one.floor_beta())
        raise(errc::precondition, "largest digit exceeds floor(beta)");
}

// ---------------------------------------------------------------------------
// Maximal sequence

namespace {

struct greedy_machine {
    const suffix_tracker& t;
    const digit_set& theta;

    // Greedy digit at the given suffix state; -1 only if nothing passes,
    // which cannot happen for a state reached along a valid prefix.
    std::pair<int, int> choose(int state) const {
        for (auto it = theta.thetas.rbegin(); it != theta.thetas.rend(); ++it) {
            int d = *it;
            int M = t.step(state, d);
            if (M < 0) continue;
            if (M == 0 || t.settle_constant(M, theta.min()) >= 0) return {d, M};
        }
        return {-1, -1};
    }
};

} // namespace

greedy_continuation greedy_max_digits(const suffix_tracker& tracker, const digit_set& theta,
                                      int start_state, int count) {
    greedy_machine gm{tracker, theta};
    greedy_continuation out;
    std::vector<int> states;
    out.digits.reserve(count);
    states.reserve(count + 1);
    states.push_back(start_state);
    for (int j = 0; j < count; ++j) {
        auto [d, M] = gm.choose(states.back());
        if (d < 0) raise(errc::internal, "greedy step found no admissible digit");
        out.digits.push_back(d);
        states.push_back(M);
    }

    if (tracker.periodic()) {
        // The greedy digit is a function of the suffix state alone, so a
        // repeated state makes the tail provably periodic.
        std::map<int, int> seen;
        for (int j = 0; j <= count; ++j) {
            auto [it, fresh] = seen.emplace(states[j], j);
            if (!fresh) {
                out.period = period_info{it->second, j - it->second, true};
                return out;
            }
        }
        // States that grow by one at every step mean the output tracks the
        // quasi-greedy stream; a run covering every phase of its period
        // certifies that the tracking continues for ever.
        int n = tracker.period();
        int run = 0;
        for (int j = count; j >= 1 && states[j] == states[j - 1] + 1; --j) ++run;
        if (run >= 2 * n + 2) out.period = period_info{count - run, n, true};
    }
    return out;
}

max_sequence compute_max_sequence(const one_expansion& one, const digit_set& theta, int depth,
                                  int prec) {
    if (depth < 1) raise(errc::precondition, "depth must be >= 1");
    theta.check_against(one);

    int ext = std::min(depth, 64);  // extra digits used to re-verify a detected period
    int total = depth + ext;
    suffix_tracker tracker(one, total + 2);
    greedy_continuation g = greedy_max_digits(tracker, theta, 0, total);
    const digit_word& z = g.digits;

    max_sequence out;
    out.z.assign(z.begin(), z.begin() + depth);
    out.certified_depth = depth;

    // Plain period detection: self-overlap on the stored prefix, re-verified
    // on the extension beyond it.
    auto matches = [&](int pre, int p) {
        for (int i = pre; i + p < total; ++i)
            if (z[i] != z[i + p]) return false;
        return true;
    };
    for (int p = 1; p <= depth / 2 && !out.period; ++p)
        for (int pre : {0, 1, 2, 3, 4, 6, 8, 12, 16}) {
            if (pre + 2 * p > depth) break;
            if (matches(pre, p)) {
                out.period = period_info{pre, p, false};
                break;
            }
        }

    if (g.period) {
        if (out.period && g.period->period % out.period->period == 0 &&
            g.period->preperiod + g.period->period + out.period->period <= total)
            out.period->certified = true;
        else
            out.period = g.period;
    }

    // Value enclosure: exact prefix value plus exact tail bounds.
    const real_alg& beta = one.beta();
    real_alg invp = beta.inverse().pow_ui(static_cast<unsigned long>(depth));
    real_alg denom = beta - real_alg(1);
    real_alg prefix = evaluate_exact(beta, out.z);
    real_alg lo = prefix + real_alg(static_cast<long>(theta.min())) * invp / denom;
    real_alg hi = prefix + real_alg(static_cast<long>(theta.max())) * invp / denom;
    out.value = high_real::hull(lo.enclosure(prec), hi.enclosure(prec));
    return out;
}

omega_sequence recode_omega(const max_sequence& z, const digit_set& theta) {
    omega_sequence out;
    out.q = theta.q();
    out.period = z.period;
    out.omega.reserve(z.z.size());
    for (size_t i = 0; i < z.z.size(); ++i) {
        int j = theta.index_of(z.z[i]);
        if (j < 0)
            raise(errc::digit_not_in_theta,
                  "digit " + std::to_string(z.z[i]) + " at position " + std::to_string(i + 1) +
                      " is not in the digit set");
        out.omega.push_back(j);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Root solving with exact rational sign evaluation

namespace {

mpq_class mpq_pow(mpq_class base, unsigned long e) {
    mpq_class acc(1);
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

mpq_class power_sum(const std::vector<int>& w, const mpq_class& a) {
    mpq_class acc(0);
    for (auto it = w.rbegin(); it != w.rend(); ++it) acc = (acc + *it) / a;
    return acc;
}

// Root bracket of a strictly decreasing function with sign_f(lo) >= 0 >= sign_f(hi).
std::pair<mpq_class, mpq_class> bisect_decreasing(const std::function<int(const mpq_class&)>& sign_f,
                                                  mpq_class lo, mpq_class hi,
                                                  const mpq_class& tol) {
    int slo = sign_f(lo);
    if (slo == 0) return {lo, lo};
    if (slo < 0) raise(errc::internal, "bisect_decreasing: no root above lower bracket");
    int shi = sign_f(hi);
    if (shi == 0) return {hi, hi};
    if (shi > 0) raise(errc::internal, "bisect_decreasing: no root below upper bracket");
    while (hi - lo > tol) {
        mpq_class m = (lo + hi) / 2;
        int sm = sign_f(m);
        if (sm == 0) return {m, m};
        if (sm > 0)
            lo = m;
        else
            hi = m;
    }
    return {lo, hi};
}

std::optional<std::pair<mpq_class, mpq_class>> bisect_sign_change(const polyq& p, mpq_class lo,
                                                                  mpq_class hi,
                                                                  const mpq_class& tol) {
    int slo = p.sign_at(lo), shi = p.sign_at(hi);
    if (slo == 0) return std::make_pair(lo, lo);
    if (shi == 0) return std::make_pair(hi, hi);
    if (slo == shi) return std::nullopt;
    while (hi - lo > tol) {
        mpq_class m = (lo + hi) / 2;
        int sm = p.sign_at(m);
        if (sm == 0) return std::make_pair(m, m);
        if (sm == slo)
            lo = m;
        else
            hi = m;
    }
    return std::make_pair(lo, hi);
}

} // namespace

alpha_result solve_alpha(const omega_sequence& omega, const mpq_class& tol, int prec) {
    if (tol <= 0) raise(errc::precondition, "tolerance must be positive");
    const auto& w = omega.omega;
    int q = omega.q;
    if (q < 2) raise(errc::precondition, "q must be >= 2");
    int n = static_cast<int>(w.size());
    if (n < 1) raise(errc::precondition, "empty omega prefix");

    alpha_result out;
    out.truncation = n;
    if (std::all_of(w.begin(), w.end(), [](int x) { return x == 0; })) {
        out.degenerate = true;
        out.alpha = high_real(0, prec);
        out.residual = high_real(1, prec);
        return out;
    }

    // Lower completion: continue with zeros. Upper completion: continue with
    // digit q-1, i.e. add the exact tail (q-1) a^-n / (a-1).
    auto sign_min = [&](const mpq_class& a) { return sgn(power_sum(w, a) - 1); };
    auto sign_max = [&](const mpq_class& a) {
        mpq_class tail = mpq_class(q - 1) / (mpq_pow(a, static_cast<unsigned long>(n)) * (a - 1));
        return sgn(power_sum(w, a) + tail - 1);
    };

    mpq_class bis_tol = tol / 4;
    auto rmin = bisect_decreasing(sign_min, mpq_class(1), mpq_class(q), bis_tol);
    mpq_class eps(1, 1 << 20);
    auto rmax = bisect_decreasing(sign_max, mpq_class(1) + eps, mpq_class(q), bis_tol);

    mpq_class lo = rmin.first, hi = rmax.second;
    if (hi < lo) std::swap(lo, hi);  // guards rounding of the two brackets

    if (omega.period) {
        // Periodic tail: alpha satisfies (a^p - 1) A(a) = C(a) with
        // A = a^r - sum_{i<=r} w_i a^(r-i), C = sum_{i<=p} w_{r+i} a^(p-i).
        int r = omega.period->preperiod, p = omega.period->period;
        if (r + p <= n) {
            std::vector<mpq_class> ac(static_cast<size_t>(r) + 1, mpq_class(0));
            ac[r] = 1;
            for (int i = 1; i <= r; ++i) ac[r - i] = mpq_class(-w[i - 1]);
            polyq A{std::move(ac)};
            std::vector<mpq_class> bc(static_cast<size_t>(p) + 1, mpq_class(0));
            bc[0] = -1;
            bc[p] = 1;
            polyq B{std::move(bc)};
            std::vector<mpq_class> cc(static_cast<size_t>(p), mpq_class(0));
            for (int i = 1; i <= p; ++i) cc[p - i] = mpq_class(w[r + i - 1]);
            polyq C{std::move(cc)};
            polyq P = A * B - C;
            mpq_class slack = (hi - lo) + tol;
            if (auto tighter = bisect_sign_change(P, lo - slack, hi + slack, tol / 64)) {
                mpq_class tlo = std::max(lo, tighter->first);
                mpq_class thi = std::min(hi, tighter->second);
                if (tlo <= thi) {
                    lo = tlo;
                    hi = thi;
                }
            }
        }
    }

    if (hi - lo > tol)
        raise(errc::tol_unreachable,
              "alpha enclosure width exceeds the tolerance; extend the omega prefix");
    out.alpha = high_real::from_endpoints(lo, hi, prec);

    // Residual of the truncated series over the returned enclosure.
    high_real acc(0, prec);
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        acc = (acc + high_real(*it, prec)) / out.alpha;
    out.residual = high_real(1, prec) - acc;
    return out;
}

// ---------------------------------------------------------------------------
// Full pipeline

dimension_result hausdorff_dimension(const real_alg& beta, const digit_set& theta,
                                     const pipeline_options& opts) {
    if (!(real_alg(static_cast<long>(theta.max())) < beta))
        raise(errc::precondition, "beta must exceed the largest digit");
    if (!(real_alg(1) < beta)) raise(errc::precondition, "beta must exceed 1");

    int zd = opts.initial_depth;
    int ed = 2 * zd + 64;
    const int ed_cap = 8 * opts.max_depth + 64;
    for (;;) {
        try {
            one_expansion one(beta, ed, opts.pp);
            theta.check_against(one);
            max_sequence z = compute_max_sequence(one, theta, zd, opts.prec);
            omega_sequence om = recode_omega(z, theta);
            alpha_result ar = solve_alpha(om, opts.tol, opts.prec);

            dimension_result res;
            res.alpha = ar;
            res.degenerate = ar.degenerate;
            res.beta_enclosure = beta.enclosure(opts.prec);
            res.z_prefix = z.z;
            res.omega_prefix = om.omega;
            res.period = om.period;
            if (ar.degenerate) {
                res.s = high_real(0, opts.prec);
            } else {
                high_real s = ar.alpha.log() / res.beta_enclosure.log();
                // The restricted shift embeds in the full shift, so s in [0,1].
                mpq_class slo = std::max(mpq_class(0), s.lower());
                mpq_class shi = std::min(mpq_class(1), s.upper());
                if (slo > shi) raise(errc::internal, "dimension enclosure left [0,1]");
                res.s = high_real::from_endpoints(slo, shi, opts.prec);
            }
            return res;
        } catch (const error& e) {
            if (e.kind() == errc::depth_exhausted && ed < ed_cap) {
                ed *= 2;
                continue;
            }
            if (e.kind() == errc::tol_unreachable && zd < opts.max_depth) {
                zd = std::min(2 * zd, opts.max_depth);
                ed = std::max(ed, 2 * zd + 64);
                continue;
            }
            throw;
        }
    }
}

high_real inverse_beta_for_alpha(const real_alg& alpha, const digit_set& theta,
                                 const mpq_class& tol, const pipeline_options& opts) {
    int q = theta.q();
    if (!(real_alg(static_cast<long>(q - 1)) < alpha) || !(alpha <= real_alg(static_cast<long>(q))))
        raise(errc::precondition, "alpha must lie in (q-1, q]");
    if (tol <= 0) raise(errc::precondition, "tolerance must be positive");

    int theta_max = theta.max();
    for (int n = std::max(24, opts.initial_depth);; n *= 2) {
        one_expansion one_a(alpha, n + 2, opts.pp);
        std::vector<int> digits(n);
        for (int i = 1; i <= n; ++i) {
            int d = one_a.e(i);
            if (d < 0 || d > q - 1)
                raise(errc::internal, "quasi-greedy digit outside 0..q-1");
            digits[i - 1] = theta.thetas[d];
        }

        auto tail_sign = [&](const mpq_class& b, int digit) {
            mpq_class tail =
                mpq_class(digit) / (mpq_pow(b, static_cast<unsigned long>(n)) * (b - 1));
            return sgn(power_sum(digits, b) + tail - 1);
        };
        auto sign_min = [&](const mpq_class& b) {
            if (theta.min() == 0) return sgn(power_sum(digits, b) - 1);
            return tail_sign(b, theta.min());
        };
        auto sign_max = [&](const mpq_class& b) { return tail_sign(b, theta_max); };

        // The first mapped digit is theta_max, so both completions exceed 1 at
        // b = theta_max; tail terms divide by b-1, which only degenerates for
        // theta_max == 1 (then the digit-0 completion has no tail at all).
        mpq_class blo(theta_max);
        mpq_class eps(1, 1 << 20);
        mpq_class lo_min = (theta.min() == 0 || blo > 1) ? blo : blo + eps;
        mpq_class lo_max = (blo > 1) ? blo : blo + eps;
        mpq_class bhi = mpq_class(theta_max) + 1;

        auto rmin = bisect_decreasing(sign_min, lo_min, bhi, tol / 4);
        auto rmax = bisect_decreasing(sign_max, lo_max, bhi, tol / 4);
        mpq_class lo = std::min(rmin.first, rmax.first);
        mpq_class hi = std::max(rmin.second, rmax.second);
        if (hi - lo <= tol) return high_real::from_endpoints(lo, hi, opts.prec);
        if (n > 4 * opts.max_depth)
            raise(errc::tol_unreachable, "inverse construction failed to reach the tolerance");
    }
}

plateau_interval plateau_from_word(const digit_word& word, const mpq_class& tol, int prec) {
    for (int d : word)
        if (d != 0 && d != 1 && d != 3)
            raise(errc::invalid_marker_word, "marker digits must lie in {0,1,3}");
    int m = static_cast<int>(word.size()) + 1;

    // Shift constraint on the closing word (3, a_2..a_m, 3): every proper
    // zero-padded tail must stay strictly below the word itself.
    digit_word closing;
    closing.push_back(3);
    closing.insert(closing.end(), word.begin(), word.end());
    closing.push_back(3);
    for (int p = 2; p <= m + 1; ++p) {
        bool less = false;
        for (int i = 0; i <= m + 2; ++i) {
            int a = (p - 1 + i < static_cast<int>(closing.size())) ? closing[p - 1 + i] : 0;
            int b = (i < static_cast<int>(closing.size())) ? closing[i] : 0;
            if (a < b) {
                less = true;
                break;
            }
            if (a > b)
                raise(errc::invalid_marker_word,
                      "tail at position " + std::to_string(p) + " exceeds the marker word");
        }
        if (!less)
            raise(errc::invalid_marker_word,
                  "tail at position " + std::to_string(p) + " equals the marker word");
    }

    auto solve_digits = [&](const digit_word& digits, mpq_class lo, mpq_class hi) {
        auto sign_f = [&](const mpq_class& x) { return sgn(power_sum(digits, x) - 1); };
        auto r = bisect_decreasing(sign_f, lo, hi, tol / 2);
        return high_real::from_endpoints(r.first, r.second, prec);
    };

    digit_word dl = closing, dr = closing;
    dl.back() = 2;  // left endpoint ends with digit 2, right with 3
    digit_word da;
    da.push_back(2);
    for (int d : word) da.push_back(d == 3 ? 2 : d);
    da.push_back(2);

    plateau_interval out;
    out.word = word;
    out.beta_l = solve_digits(dl, mpq_class(3), mpq_class(4));
    out.beta_r = solve_digits(dr, mpq_class(3), mpq_class(4));
    out.alpha = solve_digits(da, mpq_class(2), mpq_class(3));
    if (!out.beta_l.certainly_less(out.beta_r))
        raise(errc::internal, "plateau endpoints out of order");
    return out;
}

v_result classify_v_013(const one_expansion& one, int depth) {
    const real_alg& beta = one.beta();
    if (!(real_alg(3) < beta) || !(beta <= real_alg(4)))
        raise(errc::out_of_range, "classifier requires beta in (3,4]");

    auto ok_digit = [](int d) { return d == 0 || d == 1 || d == 3; };

    if (one.simple()) {
        int n = one.simple_n();
        bool head_ok = true;
        for (int i = 1; i < n; ++i)
            if (!ok_digit(one.eps_at(i))) head_ok = false;
        if (head_ok && one.eps_at(n) == 2) return {v_verdict::in_v, 0};
        bool quasi_ok = true;
        int witness = 0;
        for (int i = 1; i <= n; ++i) {
            if (!ok_digit(one.e(i))) {
                quasi_ok = false;
                if (witness == 0 && one.e(i) == 2) witness = i;
            }
        }
        if (quasi_ok) return {v_verdict::in_v, 0};
        // The periodic stream always has a nonzero digit after any position.
        return {v_verdict::not_in_v, witness};
    }

    int limit = std::min(depth, one.depth());
    int first_two = 0;
    for (int i = 1; i <= limit; ++i) {
        int d = one.eps_at(i);
        if (first_two && d != 0) return {v_verdict::not_in_v, first_two};
        if (!first_two && d == 2) first_two = i;
    }
    if (first_two) return {v_verdict::undecided_at_depth, first_two};
    return {v_verdict::in_v, 0};
}

// ---------------------------------------------------------------------------
// Dimension curve

curve_result dimension_curve(const digit_set& theta, const mpq_class& lo, const mpq_class& hi,
                             int samples, const pipeline_options& opts, int jobs) {
    if (samples < 1) raise(errc::precondition, "samples must be >= 1");
    if (lo > hi) raise(errc::precondition, "grid bounds out of order");
    if (!(mpq_class(theta.max()) < lo))
        raise(errc::precondition, "grid must start above the largest digit");

    std::vector<mpq_class> grid;
    grid.reserve(samples);
    if (samples == 1)
        grid.push_back(lo);
    else
        for (int i = 0; i < samples; ++i)
            grid.push_back(lo + (hi - lo) * i / (samples - 1));

    curve_result out;
    out.rows.resize(grid.size());
    auto work = [&](size_t i) {
        curve_row& row = out.rows[i];
        row.beta = grid[i];
        try {
            row.dim = hausdorff_dimension(real_alg(grid[i]), theta, opts);
            row.ok = true;
        } catch (const error& e) {
            row.error = e.what();
        }
    };

    if (jobs <= 1) {
        for (size_t i = 0; i < grid.size(); ++i) work(i);
    } else {
        std::atomic<size_t> next{0};
        auto worker = [&] {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= grid.size()) return;
                work(i);
            }
        };
        std::vector<std::future<void>> pool;
        for (int t = 0; t < jobs; ++t) pool.push_back(std::async(std::launch::async, worker));
        for (auto& f : pool) f.get();
    }

    // Plateau flags: maximal runs of pairwise-overlapping alpha enclosures.
    auto overlap = [](const high_real& a, const high_real& b) {
        return !(a.upper() < b.lower()) && !(b.upper() < a.lower());
    };
    size_t i = 0;
    while (i < out.rows.size()) {
        if (!out.rows[i].ok || out.rows[i].dim->degenerate) {
            ++i;
            continue;
        }
        size_t j = i;
        while (j + 1 < out.rows.size() && out.rows[j + 1].ok && !out.rows[j + 1].dim->degenerate &&
               overlap(out.rows[j].dim->alpha.alpha, out.rows[j + 1].dim->alpha.alpha))
            ++j;
        if (j > i)
            for (size_t k = i; k <= j; ++k) out.rows[k].plateau = true;
        i = j + 1;
    }

    for (size_t k = 0; k + 1 < out.rows.size(); ++k) {
        if (!out.rows[k].ok || !out.rows[k + 1].ok) continue;
        if (out.rows[k].dim->degenerate || out.rows[k + 1].dim->degenerate) continue;
        if (out.rows[k].dim->alpha.alpha.lower() > out.rows[k + 1].dim->alpha.alpha.upper())
            out.alpha_nondecreasing = false;
    }
    return out;
}

} // namespace betadim
