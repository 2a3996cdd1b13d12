#include "betadim/high_real.hpp"

#include "betadim/errors.hpp"

#include <algorithm>
#include <cstdlib>

namespace betadim {

namespace {

constexpr mpfr_prec_t radius_prec = 32;

// Scratch endpoint pair at a given precision.
struct scratch {
    mpfr_t lo, hi;
    explicit scratch(int prec) {
        mpfr_init2(lo, prec);
        mpfr_init2(hi, prec);
    }
    ~scratch() {
        mpfr_clear(lo);
        mpfr_clear(hi);
    }
    scratch(const scratch&) = delete;
    scratch& operator=(const scratch&) = delete;
};

int join_prec(const high_real& a, const high_real& b) { return std::max(a.prec(), b.prec()); }

} // namespace

high_real::high_real() : high_real(default_prec, raw_t{}) {}

high_real::high_real(int prec, raw_t) : prec_(prec) {
    if (prec < MPFR_PREC_MIN) raise(errc::precondition, "precision too small");
    mpfr_init2(mid_, prec_);
    mpfr_init2(rad_, radius_prec);
    mpfr_set_zero(mid_, 1);
    mpfr_set_zero(rad_, 1);
}

high_real::high_real(long value, int prec) : high_real(prec, raw_t{}) {
    mpfr_set_si(mid_, value, MPFR_RNDN);
}

high_real::high_real(const high_real& o) : prec_(o.prec_) {
    mpfr_init2(mid_, prec_);
    mpfr_init2(rad_, radius_prec);
    mpfr_set(mid_, o.mid_, MPFR_RNDN);
    mpfr_set(rad_, o.rad_, MPFR_RNDU);
}

high_real::high_real(high_real&& o) noexcept : prec_(o.prec_) {
    mpfr_init2(mid_, MPFR_PREC_MIN);
    mpfr_init2(rad_, MPFR_PREC_MIN);
    mpfr_swap(mid_, o.mid_);
    mpfr_swap(rad_, o.rad_);
}

high_real& high_real::operator=(const high_real& o) {
    if (this != &o) {
        mpfr_set_prec(mid_, o.prec_);
        mpfr_set(mid_, o.mid_, MPFR_RNDN);
        mpfr_set(rad_, o.rad_, MPFR_RNDU);
        prec_ = o.prec_;
    }
    return *this;
}

high_real& high_real::operator=(high_real&& o) noexcept {
    mpfr_swap(mid_, o.mid_);
    mpfr_swap(rad_, o.rad_);
    std::swap(prec_, o.prec_);
    return *this;
}

high_real::~high_real() {
    mpfr_clear(mid_);
    mpfr_clear(rad_);
}

void high_real::set_endpoints(mpfr_srcptr lo, mpfr_srcptr hi) {
    // mid = (lo+hi)/2 rounded to nearest, rad = outward-rounded max deviation.
    mpfr_add(mid_, lo, hi, MPFR_RNDN);
    mpfr_div_2ui(mid_, mid_, 1, MPFR_RNDN);
    scratch d(prec_ + 8);
    mpfr_sub(d.lo, mid_, lo, MPFR_RNDU);
    mpfr_sub(d.hi, hi, mid_, MPFR_RNDU);
    if (mpfr_cmp(d.lo, d.hi) >= 0)
        mpfr_set(rad_, d.lo, MPFR_RNDU);
    else
        mpfr_set(rad_, d.hi, MPFR_RNDU);
    if (mpfr_sgn(rad_) < 0) mpfr_set_zero(rad_, 1);
}

void high_real::get_endpoints(mpfr_ptr lo, mpfr_ptr hi) const {
    mpfr_sub(lo, mid_, rad_, MPFR_RNDD);
    mpfr_add(hi, mid_, rad_, MPFR_RNDU);
}

high_real high_real::from_mpq(const mpq_class& q, int prec) {
    high_real r(prec, high_real::raw_t{});
    scratch s(prec);
    mpfr_set_q(s.lo, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(s.hi, q.get_mpq_t(), MPFR_RNDU);
    r.set_endpoints(s.lo, s.hi);
    return r;
}

high_real high_real::from_mpz(const mpz_class& z, int prec) {
    high_real r(prec, high_real::raw_t{});
    scratch s(prec);
    mpfr_set_z(s.lo, z.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(s.hi, z.get_mpz_t(), MPFR_RNDU);
    r.set_endpoints(s.lo, s.hi);
    return r;
}

high_real high_real::from_endpoints(const mpq_class& lo, const mpq_class& hi, int prec) {
    if (lo > hi) raise(errc::precondition, "from_endpoints: lo > hi");
    high_real r(prec, high_real::raw_t{});
    scratch s(prec);
    mpfr_set_q(s.lo, lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(s.hi, hi.get_mpq_t(), MPFR_RNDU);
    r.set_endpoints(s.lo, s.hi);
    return r;
}

high_real high_real::hull(const high_real& a, const high_real& b) {
    int prec = join_prec(a, b);
    scratch sa(prec), sb(prec);
    a.get_endpoints(sa.lo, sa.hi);
    b.get_endpoints(sb.lo, sb.hi);
    if (mpfr_cmp(sb.lo, sa.lo) < 0) mpfr_set(sa.lo, sb.lo, MPFR_RNDD);
    if (mpfr_cmp(sb.hi, sa.hi) > 0) mpfr_set(sa.hi, sb.hi, MPFR_RNDU);
    high_real r(prec, high_real::raw_t{});
    r.set_endpoints(sa.lo, sa.hi);
    return r;
}

bool high_real::is_exact() const { return mpfr_zero_p(rad_); }

bool high_real::contains_zero() const {
    scratch s(prec_);
    get_endpoints(s.lo, s.hi);
    return mpfr_sgn(s.lo) <= 0 && mpfr_sgn(s.hi) >= 0;
}

std::optional<int> high_real::certain_sign() const {
    scratch s(prec_);
    get_endpoints(s.lo, s.hi);
    if (mpfr_sgn(s.lo) > 0) return 1;
    if (mpfr_sgn(s.hi) < 0) return -1;
    if (mpfr_zero_p(s.lo) && mpfr_zero_p(s.hi)) return 0;
    return std::nullopt;
}

bool high_real::certainly_positive() const {
    auto s = certain_sign();
    return s && *s > 0;
}

bool high_real::certainly_less(const high_real& other) const {
    scratch a(prec_), b(other.prec_);
    get_endpoints(a.lo, a.hi);
    other.get_endpoints(b.lo, b.hi);
    return mpfr_cmp(a.hi, b.lo) < 0;
}

mpq_class high_real::lower() const {
    scratch s(prec_);
    get_endpoints(s.lo, s.hi);
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), s.lo);
    return q;
}

mpq_class high_real::upper() const {
    scratch s(prec_);
    get_endpoints(s.lo, s.hi);
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), s.hi);
    return q;
}

mpq_class high_real::midpoint() const {
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), mid_);
    return q;
}

double high_real::radius_d() const { return mpfr_get_d(rad_, MPFR_RNDU); }

std::optional<mpz_class> high_real::unique_floor() const {
    scratch s(prec_);
    get_endpoints(s.lo, s.hi);
    mpfr_floor(s.lo, s.lo);
    mpfr_floor(s.hi, s.hi);
    if (!mpfr_equal_p(s.lo, s.hi)) return std::nullopt;
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), s.lo, MPFR_RNDN);
    return z;
}

high_real high_real::operator-() const {
    high_real r(prec_, raw_t{});
    mpfr_neg(r.mid_, mid_, MPFR_RNDN);
    mpfr_set(r.rad_, rad_, MPFR_RNDU);
    return r;
}

high_real high_real::abs() const {
    scratch s(prec_);
    get_endpoints(s.lo, s.hi);
    high_real r(prec_, raw_t{});
    if (mpfr_sgn(s.lo) >= 0) return *this;
    if (mpfr_sgn(s.hi) <= 0) return -*this;
    // straddles zero: [0, max(|lo|, hi)]
    mpfr_neg(s.lo, s.lo, MPFR_RNDU);
    if (mpfr_cmp(s.lo, s.hi) > 0) mpfr_set(s.hi, s.lo, MPFR_RNDU);
    mpfr_set_zero(s.lo, 1);
    r.set_endpoints(s.lo, s.hi);
    return r;
}

high_real operator+(const high_real& a, const high_real& b) {
    int prec = join_prec(a, b);
    scratch sa(prec), sb(prec), out(prec);
    a.get_endpoints(sa.lo, sa.hi);
    b.get_endpoints(sb.lo, sb.hi);
    mpfr_add(out.lo, sa.lo, sb.lo, MPFR_RNDD);
    mpfr_add(out.hi, sa.hi, sb.hi, MPFR_RNDU);
    high_real r(prec, high_real::raw_t{});
    r.set_endpoints(out.lo, out.hi);
    return r;
}

high_real operator-(const high_real& a, const high_real& b) {
    int prec = join_prec(a, b);
    scratch sa(prec), sb(prec), out(prec);
    a.get_endpoints(sa.lo, sa.hi);
    b.get_endpoints(sb.lo, sb.hi);
    mpfr_sub(out.lo, sa.lo, sb.hi, MPFR_RNDD);
    mpfr_sub(out.hi, sa.hi, sb.lo, MPFR_RNDU);
    high_real r(prec, high_real::raw_t{});
    r.set_endpoints(out.lo, out.hi);
    return r;
}

high_real operator*(const high_real& a, const high_real& b) {
    int prec = join_prec(a, b);
    scratch sa(prec), sb(prec), out(prec);
    a.get_endpoints(sa.lo, sa.hi);
    b.get_endpoints(sb.lo, sb.hi);

    mpfr_t p;
    mpfr_init2(p, prec);
    const mpfr_srcptr xs[2] = {sa.lo, sa.hi};
    const mpfr_srcptr ys[2] = {sb.lo, sb.hi};
    bool first = true;
    for (auto x : xs)
        for (auto y : ys) {
            mpfr_mul(p, x, y, MPFR_RNDD);
            if (first || mpfr_cmp(p, out.lo) < 0) mpfr_set(out.lo, p, MPFR_RNDD);
            mpfr_mul(p, x, y, MPFR_RNDU);
            if (first || mpfr_cmp(p, out.hi) > 0) mpfr_set(out.hi, p, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(p);
    high_real r(prec, high_real::raw_t{});
    r.set_endpoints(out.lo, out.hi);
    return r;
}

high_real operator/(const high_real& a, const high_real& b) {
    if (b.contains_zero()) raise(errc::precondition, "interval division by zero-containing interval");
    int prec = join_prec(a, b);
    scratch sa(prec), sb(prec), out(prec);
    a.get_endpoints(sa.lo, sa.hi);
    b.get_endpoints(sb.lo, sb.hi);

    mpfr_t p;
    mpfr_init2(p, prec);
    const mpfr_srcptr xs[2] = {sa.lo, sa.hi};
    const mpfr_srcptr ys[2] = {sb.lo, sb.hi};
    bool first = true;
    for (auto x : xs)
        for (auto y : ys) {
            mpfr_div(p, x, y, MPFR_RNDD);
            if (first || mpfr_cmp(p, out.lo) < 0) mpfr_set(out.lo, p, MPFR_RNDD);
            mpfr_div(p, x, y, MPFR_RNDU);
            if (first || mpfr_cmp(p, out.hi) > 0) mpfr_set(out.hi, p, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(p);
    high_real r(prec, high_real::raw_t{});
    r.set_endpoints(out.lo, out.hi);
    return r;
}

high_real high_real::log() const {
    if (!certainly_positive()) raise(errc::precondition, "log of non-positive enclosure");
    scratch s(prec_), out(prec_);
    get_endpoints(s.lo, s.hi);
    mpfr_log(out.lo, s.lo, MPFR_RNDD);
    mpfr_log(out.hi, s.hi, MPFR_RNDU);
    high_real r(prec_, raw_t{});
    r.set_endpoints(out.lo, out.hi);
    return r;
}

high_real high_real::sqrt() const {
    scratch s(prec_), out(prec_);
    get_endpoints(s.lo, s.hi);
    if (mpfr_sgn(s.lo) < 0) raise(errc::precondition, "sqrt of negative enclosure");
    mpfr_sqrt(out.lo, s.lo, MPFR_RNDD);
    mpfr_sqrt(out.hi, s.hi, MPFR_RNDU);
    high_real r(prec_, raw_t{});
    r.set_endpoints(out.lo, out.hi);
    return r;
}

high_real high_real::pow_si(long e) const {
    if (e == 0) return high_real(1, prec_);
    scratch s(prec_), out(prec_);
    get_endpoints(s.lo, s.hi);
    if (mpfr_sgn(s.lo) < 0)
        raise(errc::precondition, "pow_si implemented for non-negative enclosures only");
    if (e > 0) {
        mpfr_pow_si(out.lo, s.lo, e, MPFR_RNDD);
        mpfr_pow_si(out.hi, s.hi, e, MPFR_RNDU);
    } else {
        if (mpfr_sgn(s.lo) <= 0) raise(errc::precondition, "negative power of zero-containing enclosure");
        mpfr_pow_si(out.lo, s.hi, e, MPFR_RNDD);
        mpfr_pow_si(out.hi, s.lo, e, MPFR_RNDU);
    }
    high_real r(prec_, raw_t{});
    r.set_endpoints(out.lo, out.hi);
    return r;
}

high_real high_real::pow(const high_real& x, const high_real& s) {
    int prec = std::max(x.prec(), s.prec());
    scratch sx(prec), ss(prec), out(prec);
    x.get_endpoints(sx.lo, sx.hi);
    s.get_endpoints(ss.lo, ss.hi);
    if (mpfr_sgn(sx.lo) < 0) raise(errc::precondition, "pow: negative base");
    if (mpfr_sgn(ss.lo) < 0) raise(errc::precondition, "pow: negative exponent");

    // x^s is monotone in each argument over x,s >= 0, so corner evaluation
    // brackets the range.
    mpfr_t p;
    mpfr_init2(p, prec);
    const mpfr_srcptr xs[2] = {sx.lo, sx.hi};
    const mpfr_srcptr es[2] = {ss.lo, ss.hi};
    bool first = true;
    for (auto xe : xs)
        for (auto se : es) {
            mpfr_pow(p, xe, se, MPFR_RNDD);
            if (first || mpfr_cmp(p, out.lo) < 0) mpfr_set(out.lo, p, MPFR_RNDD);
            mpfr_pow(p, xe, se, MPFR_RNDU);
            if (first || mpfr_cmp(p, out.hi) > 0) mpfr_set(out.hi, p, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(p);
    high_real r(prec, high_real::raw_t{});
    r.set_endpoints(out.lo, out.hi);
    return r;
}

std::string high_real::str(int digits) const {
    if (digits <= 0) digits = static_cast<int>(prec_ * 0.30103) + 2;
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, mid_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

std::string high_real::radius_str() const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.3Rg", rad_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

} // namespace betadim
