#include "betadim/real_alg.hpp"

#include "betadim/errors.hpp"

#include <sstream>

namespace betadim {

// ---------------------------------------------------------------------------
// number_field

number_field::number_field(polyq p, mpq_class lo, mpq_class hi)
    : p_(std::move(p)), lo_(std::move(lo)), hi_(std::move(hi)) {}

std::optional<mpq_class> number_field::rational_root(const polyq& p, const mpq_class& lo,
                                                     const mpq_class& hi) {
    polyq sf = p.squarefree_part();
    for (const auto& r : sf.rational_roots())
        if (lo <= r && r <= hi) return r;
    return std::nullopt;
}

std::shared_ptr<const number_field> number_field::make(const polyq& p, const mpq_class& lo,
                                                       const mpq_class& hi) {
    if (p.degree() < 1) raise(errc::parse_error, "defining polynomial must be non-constant");
    if (!(lo < hi)) raise(errc::parse_error, "isolating interval is empty");
    polyq sf = p.squarefree_part();

    if (auto r = rational_root(p, lo, hi))
        raise(errc::parse_error,
              "isolating interval contains the rational root " + r->get_str() +
                  "; pass it as a rational instead");

    if (sf.sign_at(lo) == 0 || sf.sign_at(hi) == 0)
        raise(errc::parse_error, "isolating interval endpoint is a root");
    auto chain = polyq::sturm_chain(sf);
    int n = polyq::count_roots(chain, lo, hi);
    if (n == 0) raise(errc::parse_error, "no root of the polynomial in the given interval");
    if (n > 1)
        raise(errc::parse_error, "interval contains " + std::to_string(n) +
                                     " roots; it must isolate exactly one");
    // Bisect once up front so the stored endpoints straddle a sign change of
    // the squarefree part (Sturm guarantees a root; sign change may need zoom).
    mpq_class a = lo, b = hi;
    while (sf.sign_at(a) == sf.sign_at(b)) {
        mpq_class m = (a + b) / 2;
        int sm = sf.sign_at(m);
        if (sm == 0) raise(errc::internal, "unexpected rational root during isolation");
        if (polyq::count_roots(chain, a, m) == 1)
            b = m;
        else
            a = m;
    }
    return std::shared_ptr<const number_field>(new number_field(std::move(sf), a, b));
}

std::pair<mpq_class, mpq_class> number_field::isolating(int bits) const {
    std::lock_guard<std::mutex> lock(m_);
    mpq_class width = hi_ - lo_;
    mpq_class target = mpq_class(1) / (mpz_class(1) << bits);
    int slo = p_.sign_at(lo_);
    while (width > target) {
        mpq_class m = (lo_ + hi_) / 2;
        int sm = p_.sign_at(m);
        if (sm == 0) raise(errc::internal, "rational root hit during refinement");
        if (sm == slo)
            lo_ = m;
        else
            hi_ = m;
        width = hi_ - lo_;
    }
    return {lo_, hi_};
}

high_real number_field::enclosure(int prec) const {
    auto [lo, hi] = isolating(prec + 8);
    return high_real::from_endpoints(lo, hi, prec);
}

std::string number_field::str() const {
    std::lock_guard<std::mutex> lock(m_);
    return "root of " + p_.str() + " in [" + lo_.get_str() + ", " + hi_.get_str() + "]";
}

// ---------------------------------------------------------------------------
// real_alg

real_alg::real_alg(std::shared_ptr<const number_field> fld, polyq rep)
    : fld_(std::move(fld)), rep_(std::move(rep)) {
    if (fld_ && rep_.degree() >= fld_->degree()) rep_ = rep_.mod(fld_->modulus());
    if (fld_ && rep_.degree() < 1) fld_.reset();  // collapsed to a rational
}

real_alg real_alg::generator(std::shared_ptr<const number_field> fld) {
    if (!fld) raise(errc::precondition, "generator of null field");
    return real_alg(std::move(fld), polyq::identity());
}

mpq_class real_alg::as_rational() const {
    if (!is_rational()) raise(errc::precondition, "value is not rational");
    if (rep_.is_zero()) return mpq_class(0);
    return rep_.coeff(0);
}

void real_alg::align(const real_alg& a, const real_alg& b,
                     std::shared_ptr<const number_field>& fld) {
    if (a.fld_ && b.fld_ && a.fld_ != b.fld_)
        raise(errc::precondition, "mixing elements of different number fields");
    fld = a.fld_ ? a.fld_ : b.fld_;
}

real_alg operator+(const real_alg& a, const real_alg& b) {
    std::shared_ptr<const number_field> fld;
    real_alg::align(a, b, fld);
    return real_alg(fld, a.rep_ + b.rep_);
}

real_alg operator-(const real_alg& a, const real_alg& b) {
    std::shared_ptr<const number_field> fld;
    real_alg::align(a, b, fld);
    return real_alg(fld, a.rep_ - b.rep_);
}

real_alg operator*(const real_alg& a, const real_alg& b) {
    std::shared_ptr<const number_field> fld;
    real_alg::align(a, b, fld);
    polyq prod = a.rep_ * b.rep_;
    if (fld) prod = prod.mod(fld->modulus());
    return real_alg(fld, std::move(prod));
}

real_alg operator/(const real_alg& a, const real_alg& b) { return a * b.inverse(); }

real_alg real_alg::operator-() const { return real_alg(fld_, rep_.scaled(-1)); }

real_alg real_alg::inverse() const {
    if (is_zero()) raise(errc::precondition, "inverse of zero");
    if (is_rational()) return real_alg(1 / as_rational());
    // Extended Euclid: u*rep + v*modulus = g. The gcd g is a unit in the
    // quotient unless rep shares a factor with the modulus; in that case the
    // value lives in a proper factor and g(beta) may vanish, so fall back to
    // dividing out the common factor first.
    polyq r0 = fld_->modulus(), r1 = rep_;
    polyq s0 = polyq(), s1 = polyq::constant(mpq_class(1));
    while (!r1.is_zero() && r1.degree() > 0) {
        polyq q, r;
        polyq::divmod(r0, r1, q, r);
        polyq s = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r1.is_zero()) raise(errc::internal, "inverse: representative shares a factor with the modulus");
    // r1 is a nonzero constant: inv = s1 / r1.
    polyq inv = s1.scaled(1 / r1.coeff(0));
    return real_alg(fld_, inv.mod(fld_->modulus()));
}

real_alg real_alg::pow_ui(unsigned long e) const {
    real_alg acc(mpq_class(1));
    real_alg base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

bool real_alg::is_zero() const {
    if (rep_.is_zero()) return true;
    if (is_rational()) return rep_.coeff(0) == 0;
    // Nonzero representative may still vanish at beta when the modulus is
    // reducible: beta is a root of rep iff it is a root of gcd(modulus, rep).
    polyq g = polyq::gcd(fld_->modulus(), rep_);
    if (g.degree() == 0) return false;
    auto [lo, hi] = fld_->isolating(8);
    if (g.sign_at(lo) == 0 || g.sign_at(hi) == 0)
        raise(errc::internal, "is_zero: isolating endpoint is a root of the gcd");
    auto chain = polyq::sturm_chain(g.squarefree_part());
    return polyq::count_roots(chain, lo, hi) > 0;
}

int real_alg::sign() const {
    if (is_zero()) return 0;
    if (is_rational()) return sgn(rep_.coeff(0));
    for (int prec = 64;; prec *= 2) {
        if (auto s = enclosure(prec).certain_sign()) return *s;
        if (prec > (1 << 22)) raise(errc::internal, "sign: failed to separate from zero");
    }
}

mpz_class real_alg::floor(const precision_policy& pp) const {
    if (is_rational()) {
        mpq_class q = as_rational();
        mpz_class z;
        mpz_fdiv_q(z.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
        return z;
    }
    for (int prec = pp.bits;; prec *= 2) {
        high_real e = enclosure(prec);
        if (auto f = e.unique_floor()) return *f;
        // The enclosure straddles an integer boundary: decide exactly.
        mpq_class lo = e.lower();
        mpz_class cand;
        mpz_fdiv_q(cand.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
        mpq_class hi = e.upper();
        mpz_class top;
        mpz_fdiv_q(top.get_mpz_t(), hi.get_num().get_mpz_t(), hi.get_den().get_mpz_t());
        for (mpz_class m = cand + 1; m <= top; ++m) {
            real_alg diff = *this - real_alg(mpq_class(m));
            if (diff.is_zero()) return m;  // exact hit at a branch point
        }
        if (prec >= pp.cap)
            raise(errc::ambiguous_floor,
                  "floor undecided at precision cap " + std::to_string(pp.cap));
    }
}

high_real real_alg::enclosure(int prec) const {
    if (is_rational()) return high_real::from_mpq(rep_.is_zero() ? mpq_class(0) : rep_.coeff(0), prec);
    high_real b = fld_->enclosure(prec + 16);
    high_real acc(0, prec + 16);
    for (int i = rep_.degree(); i >= 0; --i)
        acc = acc * b + high_real::from_mpq(rep_.coeff(i), prec + 16);
    return acc;
}

std::string real_alg::str() const {
    if (is_rational()) return as_rational().get_str();
    std::ostringstream os;
    os << "(" << rep_.str() << " at t = " << fld_->str() << ")";
    return os.str();
}

} // namespace betadim
