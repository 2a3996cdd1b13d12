#include "betadim/covers.hpp"

#include "betadim/errors.hpp"

#include <algorithm>

namespace betadim {

cover_level make_cover_level(const one_expansion& one, const digit_set& theta, int k,
                             int cont_depth) {
    if (k < 1 || cont_depth < 1) raise(errc::precondition, "cover level needs k, contDepth >= 1");
    theta.check_against(one);

    const real_alg& beta = one.beta();
    real_alg invb = beta.inverse();
    real_alg invb_k = invb.pow_ui(static_cast<unsigned long>(k));
    real_alg min_tail =
        real_alg(static_cast<long>(theta.min())) * invb_k / (beta - real_alg(1));
    real_alg pad = invb.pow_ui(static_cast<unsigned long>(k + cont_depth)) * beta /
                   (beta - real_alg(1));

    suffix_tracker tracker(one, k + cont_depth + 16);
    cover_level out;
    out.k = k;
    for (digit_word& w : enumerate_restricted(one, theta.thetas, k)) {
        int state = 0;
        for (int d : w) {
            state = tracker.step(state, d);
            if (state < 0) raise(errc::internal, "enumerated word became inadmissible");
        }
        cover_item item;
        item.iv.lo = evaluate_exact(beta, w) + min_tail;

        greedy_continuation cont = greedy_max_digits(tracker, theta, state, cont_depth);
        if (cont.period) {
            digit_word pre(cont.digits.begin(), cont.digits.begin() + cont.period->preperiod);
            digit_word per(cont.digits.begin() + cont.period->preperiod,
                           cont.digits.begin() + cont.period->preperiod + cont.period->period);
            item.iv.hi =
                evaluate_exact(beta, w) + invb_k * eventually_periodic_value(beta, pre, per);
            item.sup_exact = true;
        } else {
            digit_word ext = w;
            ext.insert(ext.end(), cont.digits.begin(), cont.digits.end());
            item.iv.hi = evaluate_exact(beta, ext) + pad;
        }
        item.word = std::move(w);
        out.items.push_back(std::move(item));
    }
    return out;
}

high_real premeasure_sum(const cover_level& cover, const high_real& s, int prec) {
    high_real total(0, prec);
    for (const auto& item : cover.items) {
        high_real len = (item.iv.hi - item.iv.lo).enclosure(prec);
        // Outer enclosures can dip below zero by the padding; clamp.
        mpq_class lo = std::max(mpq_class(0), len.lower());
        mpq_class hi = std::max(lo, len.upper());
        len = high_real::from_endpoints(lo, hi, prec);
        total = total + high_real::pow(len, s);
    }
    return total;
}

box_table box_dimension_estimate(const one_expansion& one, const digit_set& theta, int k_max,
                                 const pipeline_options& opts) {
    if (k_max < 1) raise(errc::precondition, "k_max must be >= 1");
    box_table out;
    dimension_result dim = hausdorff_dimension(one.beta(), theta, opts);
    if (dim.degenerate)
        raise(errc::precondition, "box estimate undefined for a degenerate digit set");
    out.s = dim.s;
    out.alpha = dim.alpha.alpha;

    int prec = opts.prec;
    high_real log_beta = one.beta().enclosure(prec).log();
    high_real band_num = out.alpha.log() - (out.alpha - high_real(1, prec)).log();

    for (int k = 1; k <= k_max; ++k) {
        box_row row;
        row.k = k;
        row.count = count_restricted(one, theta.thetas, k);
        high_real n = high_real::from_mpz(row.count, prec);
        row.s_k = n.log() / (high_real(k, prec) * log_beta);
        row.band = band_num / (high_real(k, prec) * log_beta);
        high_real upper = out.s + row.band;
        row.within = out.s.upper() <= row.s_k.lower() && row.s_k.upper() <= upper.lower();
        out.rows.push_back(std::move(row));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Separation

namespace {

struct ep_digits {
    digit_word pre, per;  // eventually periodic digit sequence pre.(per)^inf
    int at(int i) const {  // 1-based
        int idx = i - 1;
        if (idx < static_cast<int>(pre.size())) return pre[idx];
        return per[(idx - pre.size()) % per.size()];
    }
};

// Decides seq <= e, where seq is eventually periodic. Returns false when the
// comparison cannot be certified within the tracker's stored digits.
bool tail_le_stream(const ep_digits& s, const suffix_tracker& t) {
    int limit = t.usable_depth();
    int settle = static_cast<int>(s.pre.size()) +
                 static_cast<int>(s.per.size()) * std::max(1, t.period()) + 4;
    for (int i = 1; i <= limit; ++i) {
        int a = s.at(i), b = t.e_at(i);
        if (a < b) return true;
        if (a > b) return false;
        if (t.periodic() && i >= settle) return true;  // both periodic and equal so far
    }
    return false;  // undecided within the stored stream
}

// Membership of an eventually periodic theta-sequence in the shift closure:
// every tail must be lexicographically at most the quasi-greedy stream.
bool in_shift_closure(const ep_digits& s, const suffix_tracker& t) {
    int starts = static_cast<int>(s.pre.size() + s.per.size());
    for (int p = 0; p < starts; ++p) {
        ep_digits shifted;
        if (p < static_cast<int>(s.pre.size())) {
            shifted.pre.assign(s.pre.begin() + p, s.pre.end());
            shifted.per = s.per;
        } else {
            int off = p - static_cast<int>(s.pre.size());
            shifted.per.assign(s.per.begin() + off, s.per.end());
            shifted.per.insert(shifted.per.end(), s.per.begin(), s.per.begin() + off);
        }
        if (shifted.per.empty()) shifted.per = s.per;
        if (!tail_le_stream(shifted, t)) return false;
    }
    return true;
}

} // namespace

separation_result separation_check(const one_expansion& one, const digit_set& theta, int k,
                                   int cont_depth, int prec) {
    cover_level cover = make_cover_level(one, theta, k, cont_depth);
    const real_alg& beta = one.beta();
    real_alg invb = beta.inverse();
    int q = theta.q();

    // Outer approximation of the restricted set as a merged interval list.
    std::vector<exact_interval> base;
    for (const auto& item : cover.items) base.push_back(item.iv);
    std::sort(base.begin(), base.end(),
              [](const exact_interval& a, const exact_interval& b) { return a.lo < b.lo; });
    std::vector<exact_interval> merged;
    for (auto& iv : base) {
        if (!merged.empty() && !(merged.back().hi < iv.lo)) {
            if (merged.back().hi < iv.hi) merged.back().hi = iv.hi;
        } else
            merged.push_back(iv);
    }

    auto image = [&](int digit) {
        std::vector<exact_interval> out;
        real_alg t(static_cast<long>(digit));
        for (const auto& iv : merged) out.push_back({(iv.lo + t) * invb, (iv.hi + t) * invb});
        return out;
    };
    std::vector<std::vector<exact_interval>> images;
    for (int i = 0; i < q; ++i) images.push_back(image(theta.thetas[i]));

    // Pairwise gaps between the outer approximations of the map images.
    bool all_separated = true;
    std::optional<real_alg> min_gap;
    std::vector<std::pair<int, int>> touching;
    for (int i = 0; i < q; ++i)
        for (int j = i + 1; j < q; ++j) {
            std::optional<real_alg> gap;
            for (const auto& a : images[i])
                for (const auto& b : images[j]) {
                    real_alg d = (a.hi < b.lo)   ? b.lo - a.hi
                                 : (b.hi < a.lo) ? a.lo - b.hi
                                                 : real_alg(0);
                    if (!gap || d < *gap) gap = d;
                }
            if (!gap) continue;
            if (gap->sign() <= 0) {
                all_separated = false;
                touching.emplace_back(i, j);
            } else if (!min_gap || *gap < *min_gap)
                min_gap = gap;
        }

    separation_result res;
    if (all_separated && min_gap) {
        res.verdict = separation_verdict::separated;
        res.gap = min_gap->enclosure(prec);
        return res;
    }

    // Try to certify a genuine violation: an exact point p = f_i(x) = f_j(y)
    // with x, y and p all in the restricted set.
    suffix_tracker tracker(one, k + cont_depth + 16);
    std::vector<ep_digits> witnesses;
    for (const auto& item : cover.items) {
        ep_digits w;
        w.pre = item.word;
        w.per = {theta.min()};
        witnesses.push_back(std::move(w));
    }
    {
        // The greedy maximal sequence, when provably periodic, is the sup.
        greedy_continuation g = greedy_max_digits(tracker, theta, 0, k + cont_depth);
        if (g.period) {
            ep_digits w;
            w.pre.assign(g.digits.begin(), g.digits.begin() + g.period->preperiod);
            w.per.assign(g.digits.begin() + g.period->preperiod,
                         g.digits.begin() + g.period->preperiod + g.period->period);
            witnesses.push_back(std::move(w));
        }
    }

    std::vector<real_alg> values;
    values.reserve(witnesses.size());
    for (const auto& w : witnesses)
        values.push_back(eventually_periodic_value(beta, w.pre, w.per));

    for (auto [i, j] : touching) {
        real_alg ti(static_cast<long>(theta.thetas[i]));
        real_alg tj(static_cast<long>(theta.thetas[j]));
        for (size_t a = 0; a < witnesses.size(); ++a)
            for (size_t b = 0; b < witnesses.size(); ++b) {
                if (!((values[a] + ti) == (values[b] + tj))) continue;
                // Common image point; require it to lie in the set itself.
                auto prepend = [](int d, const ep_digits& s) {
                    ep_digits out = s;
                    out.pre.insert(out.pre.begin(), d);
                    return out;
                };
                if (in_shift_closure(prepend(theta.thetas[i], witnesses[a]), tracker) ||
                    in_shift_closure(prepend(theta.thetas[j], witnesses[b]), tracker)) {
                    res.verdict = separation_verdict::violated;
                    res.bad = {theta.thetas[i], theta.thetas[j]};
                    res.gap = high_real(0, prec);
                    return res;
                }
            }
    }

    res.verdict = separation_verdict::undecided_at_depth;
    res.gap = high_real(0, prec);
    return res;
}

} // namespace betadim
