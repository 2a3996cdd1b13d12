#include "betadim/local_ifs.hpp"

#include "betadim/errors.hpp"

#include <algorithm>

namespace betadim {

namespace {

void check_beta_range(const real_alg& beta) {
    if (!(real_alg(2) < beta) || !(beta <= real_alg(3)))
        raise(errc::out_of_range, "beta must lie in (2,3]");
}

} // namespace

interval_union::interval_union(std::vector<exact_interval> parts) : parts_(std::move(parts)) {
    for (const auto& iv : parts_)
        if (iv.hi < iv.lo) raise(errc::precondition, "interval with hi < lo");
    std::sort(parts_.begin(), parts_.end(),
              [](const exact_interval& a, const exact_interval& b) { return a.lo < b.lo; });
    std::vector<exact_interval> merged;
    for (auto& iv : parts_) {
        if (!merged.empty() && !(merged.back().hi < iv.lo)) {
            if (merged.back().hi < iv.hi) merged.back().hi = iv.hi;
        } else
            merged.push_back(std::move(iv));
    }
    parts_ = std::move(merged);
}

interval_union interval_union::unit() {
    return interval_union({exact_interval{real_alg(0), real_alg(1)}});
}

bool interval_union::contains(const real_alg& x) const {
    for (const auto& iv : parts_)
        if (iv.lo <= x && x <= iv.hi) return true;
    return false;
}

real_alg interval_union::sup() const {
    if (parts_.empty()) raise(errc::precondition, "sup of empty union");
    return parts_.back().hi;
}

real_alg interval_union::inf() const {
    if (parts_.empty()) raise(errc::precondition, "inf of empty union");
    return parts_.front().lo;
}

real_alg interval_union::distance(const real_alg& x) const {
    if (parts_.empty()) raise(errc::precondition, "distance to empty union");
    std::optional<real_alg> best;
    for (const auto& iv : parts_) {
        real_alg d;
        if (x < iv.lo)
            d = iv.lo - x;
        else if (iv.hi < x)
            d = x - iv.hi;
        else
            return real_alg(0);
        if (!best || d < *best) best = d;
    }
    return *best;
}

bool interval_union::subset_of(const interval_union& other) const {
    for (const auto& iv : parts_) {
        bool inside = false;
        for (const auto& o : other.parts_)
            if (o.lo <= iv.lo && iv.hi <= o.hi) {
                inside = true;
                break;
            }
        if (!inside) return false;
    }
    return true;
}

interval_union interval_union::scaled_translated(const real_alg& scale,
                                                 const real_alg& offset) const {
    std::vector<exact_interval> out;
    out.reserve(parts_.size());
    for (const auto& iv : parts_)
        out.push_back({iv.lo * scale + offset, iv.hi * scale + offset});
    return interval_union(std::move(out));
}

interval_union interval_union::clipped(const real_alg& lo, const real_alg& hi) const {
    std::vector<exact_interval> out;
    for (const auto& iv : parts_) {
        real_alg a = iv.lo < lo ? lo : iv.lo;
        real_alg b = hi < iv.hi ? hi : iv.hi;
        if (!(b < a)) out.push_back({a, b});
    }
    return interval_union(std::move(out));
}

interval_union interval_union::merge(const interval_union& a, const interval_union& b) {
    std::vector<exact_interval> out = a.parts_;
    out.insert(out.end(), b.parts_.begin(), b.parts_.end());
    return interval_union(std::move(out));
}

namespace {

// One-sided Hausdorff deviation sup_{x in a} dist(x, b). The supremum over a
// part is attained at an endpoint or at the midpoint of a gap of b.
real_alg deviation(const interval_union& a, const interval_union& b) {
    real_alg best(0);
    const auto& bp = b.parts();
    for (const auto& iv : a.parts()) {
        for (const real_alg& end : {iv.lo, iv.hi}) {
            real_alg d = b.distance(end);
            if (best < d) best = d;
        }
        for (size_t g = 0; g + 1 < bp.size(); ++g) {
            const real_alg& g1 = bp[g].hi;
            const real_alg& g2 = bp[g + 1].lo;
            real_alg c = (g1 + g2) / real_alg(2);
            if (iv.lo <= c && c <= iv.hi) {
                real_alg d = c - g1;  // = g2 - c at the gap center
                if (best < d) best = d;
            }
        }
    }
    return best;
}

} // namespace

real_alg hausdorff_distance_exact(const interval_union& a, const interval_union& b) {
    if (a.empty() || b.empty()) raise(errc::precondition, "Hausdorff distance of empty union");
    real_alg d1 = deviation(a, b);
    real_alg d2 = deviation(b, a);
    return d1 < d2 ? d2 : d1;
}

high_real hausdorff_distance(const interval_union& a, const interval_union& b, int prec) {
    return hausdorff_distance_exact(a, b).enclosure(prec);
}

removal_result build_b(const real_alg& beta, int n) {
    check_beta_range(beta);
    if (n < 1) raise(errc::precondition, "depth must be >= 1");

    removal_result res;
    real_alg invb = beta.inverse();
    std::vector<exact_interval> pieces = interval_union::unit().parts();
    real_alg step(1);
    for (int j = 1; j <= n; ++j) {
        step = step * invb;  // beta^-j
        std::vector<exact_interval> next;
        for (const auto& piece : pieces) {
            real_alg len = piece.hi - piece.lo;
            int cmp = (len - step).sign();
            if (cmp <= 0) {
                if (cmp == 0) ++res.tie_skips;  // strict trigger: equality skips
                next.push_back(piece);
                continue;
            }
            real_alg a = piece.lo + step;
            real_alg b = piece.lo + step + step;
            next.push_back({piece.lo, a});
            // The removed interval is open, so a clipped right end survives
            // only when it reaches b.
            if (!(piece.hi < b)) next.push_back({b, piece.hi});
        }
        pieces = std::move(next);
    }
    res.set = interval_union(std::move(pieces));
    return res;
}

interval_union build_c_approx(const one_expansion& one, int k, int cont_depth) {
    check_beta_range(one.beta());
    digit_set theta({0, 2});
    cover_level cover = make_cover_level(one, theta, k, cont_depth);
    std::vector<exact_interval> parts;
    parts.reserve(cover.items.size());
    for (auto& item : cover.items) parts.push_back(item.iv);
    return interval_union(std::move(parts));
}

high_real invariance_check(const interval_union& a, const real_alg& beta, int prec) {
    check_beta_range(beta);
    real_alg invb = beta.inverse();
    interval_union img0 = a.scaled_translated(invb, real_alg(0));
    interval_union clipped = a.clipped(real_alg(0), beta - real_alg(2));
    interval_union image = img0;
    if (!clipped.empty()) {
        interval_union img2 = clipped.scaled_translated(invb, real_alg(2) * invb);
        image = interval_union::merge(img0, img2);
    }
    return hausdorff_distance(a, image, prec);
}

q_status member_q(const one_expansion& one) {
    const real_alg& beta = one.beta();
    if (!(real_alg(2) < beta) || !(beta <= real_alg(3)))
        raise(errc::out_of_range, "membership test requires beta in (2,3]");

    q_status out{q_status::verdict::undecided_at_depth, {}, 0, -1};
    int limit = one.simple() ? one.simple_n() : one.depth();
    for (int i = 1; i <= limit; ++i) {
        int d = one.eps_at(i);
        if (d != 0 && d != 2) {
            out.v = q_status::verdict::not_in_q;
            out.pos = i;
            out.digit = d;
            return out;
        }
    }
    if (one.simple()) {
        out.v = q_status::verdict::in_q;
        out.eps.assign(one.eps().begin(), one.eps().begin() + one.simple_n());
        return out;
    }
    out.pos = one.depth();
    return out;
}

std::vector<real_alg> difference_points(const one_expansion& one, int k) {
    q_status q = member_q(one);
    if (q.v != q_status::verdict::in_q)
        raise(errc::not_in_q, "difference points exist only for parameters in Q");
    if (k < 1) raise(errc::precondition, "depth must be >= 1");

    const real_alg& beta = one.beta();
    std::vector<real_alg> points;
    digit_set theta({0, 2});
    for (int m = 0; m < k; ++m) {
        std::vector<digit_word> words =
            m == 0 ? std::vector<digit_word>{digit_word{}} : enumerate_restricted(one, theta.thetas, m);
        for (auto& w : words) {
            digit_word closed = w;
            closed.push_back(1);
            if (!is_admissible(one, closed)) continue;
            points.push_back(evaluate_exact(beta, closed));
        }
    }
    points.push_back(real_alg(1));
    return points;
}

interval_union extended_ifs_attractor(const real_alg& beta, int n) {
    check_beta_range(beta);
    if (n < 1) raise(errc::precondition, "depth must be >= 1");
    real_alg invb = beta.inverse();
    real_alg cut = beta - real_alg(2);
    interval_union s = interval_union::unit();
    for (int j = 0; j < n; ++j) {
        interval_union img0 = s.scaled_translated(invb, real_alg(0));
        interval_union clipped = s.clipped(real_alg(0), cut);
        interval_union next = img0;
        if (!clipped.empty())
            next = interval_union::merge(next, clipped.scaled_translated(invb, real_alg(2) * invb));
        // The clamp sends everything above beta-2 to the fixed point 1.
        bool clamps = false;
        for (const auto& iv : s.parts())
            if (cut < iv.hi) {
                clamps = true;
                break;
            }
        if (clamps)
            next = interval_union::merge(next,
                                         interval_union({exact_interval{real_alg(1), real_alg(1)}}));
        s = std::move(next);
    }
    return s;
}

} // namespace betadim
