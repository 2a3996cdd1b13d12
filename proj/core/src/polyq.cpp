#include "betadim/polyq.hpp"

#include "betadim/errors.hpp"

#include <algorithm>
#include <sstream>

namespace betadim {

polyq::polyq(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) { normalize(); }

polyq polyq::constant(const mpq_class& c) { return polyq({c}); }

polyq polyq::identity() { return polyq({mpq_class(0), mpq_class(1)}); }

void polyq::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const mpq_class& polyq::coeff(int i) const {
    static const mpq_class zero(0);
    if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
    return c_[i];
}

mpq_class polyq::eval(const mpq_class& x) const {
    mpq_class acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

int polyq::sign_at(const mpq_class& x) const { return sgn(eval(x)); }

polyq polyq::derivative() const {
    if (c_.size() <= 1) return polyq();
    std::vector<mpq_class> d(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
    return polyq(std::move(d));
}

polyq polyq::monic() const {
    if (is_zero()) return *this;
    return scaled(1 / c_.back());
}

polyq operator+(const polyq& a, const polyq& b) {
    std::vector<mpq_class> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    return polyq(std::move(c));
}

polyq operator-(const polyq& a, const polyq& b) {
    std::vector<mpq_class> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
    return polyq(std::move(c));
}

polyq operator*(const polyq& a, const polyq& b) {
    if (a.is_zero() || b.is_zero()) return polyq();
    std::vector<mpq_class> c(a.c_.size() + b.c_.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return polyq(std::move(c));
}

polyq polyq::scaled(const mpq_class& k) const {
    std::vector<mpq_class> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] * k;
    return polyq(std::move(c));
}

void polyq::divmod(const polyq& a, const polyq& b, polyq& q, polyq& r) {
    if (b.is_zero()) raise(errc::precondition, "polynomial division by zero");
    std::vector<mpq_class> rem = a.c_;
    int db = b.degree();
    std::vector<mpq_class> quot;
    if (a.degree() >= db) quot.assign(a.degree() - db + 1, mpq_class(0));
    const mpq_class& lead = b.c_.back();
    for (int d = a.degree(); d >= db; --d) {
        mpq_class f = rem[d] / lead;
        if (f != 0) {
            quot[d - db] = f;
            for (int i = 0; i <= db; ++i) rem[d - db + i] -= f * b.c_[i];
        }
        rem[d] = 0;
    }
    q = polyq(std::move(quot));
    r = polyq(std::move(rem));
}

polyq polyq::mod(const polyq& b) const {
    polyq q, r;
    divmod(*this, b, q, r);
    return r;
}

polyq polyq::gcd(polyq a, polyq b) {
    while (!b.is_zero()) {
        polyq r = a.mod(b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

polyq polyq::squarefree_part() const {
    if (degree() <= 1) return monic();
    polyq g = gcd(*this, derivative());
    if (g.degree() == 0) return monic();
    polyq q, r;
    divmod(*this, g, q, r);
    return q.monic();
}

std::vector<polyq> polyq::sturm_chain(const polyq& p) {
    std::vector<polyq> chain;
    chain.push_back(p);
    chain.push_back(p.derivative());
    while (!chain.back().is_zero() && chain.back().degree() > 0) {
        polyq r = chain[chain.size() - 2].mod(chain.back());
        if (r.is_zero()) break;
        chain.push_back(r.scaled(-1));
    }
    return chain;
}

int polyq::sign_variations(const std::vector<polyq>& chain, const mpq_class& x) {
    int vars = 0, prev = 0;
    for (const auto& p : chain) {
        int s = p.sign_at(x);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++vars;
        prev = s;
    }
    return vars;
}

int polyq::count_roots(const std::vector<polyq>& chain, const mpq_class& a, const mpq_class& b) {
    if (!(a < b)) raise(errc::precondition, "count_roots: empty interval");
    return sign_variations(chain, a) - sign_variations(chain, b);
}

namespace {

void push_divisors(const mpz_class& n, std::vector<mpz_class>& out, unsigned long cap) {
    mpz_class a = ::abs(n);
    if (a == 0) return;
    for (mpz_class d = 1; d * d <= a; ++d) {
        if (a % d == 0) {
            out.push_back(d);
            out.push_back(a / d);
            if (out.size() > cap) return;
        }
    }
}

} // namespace

std::vector<mpq_class> polyq::rational_roots(unsigned long divisor_cap) const {
    std::vector<mpq_class> roots;
    if (degree() < 1) return roots;

    // Integerize: multiply by the lcm of coefficient denominators.
    mpz_class l(1);
    for (const auto& q : c_) {
        mpz_class den = q.get_den();
        l = l / ::gcd(l, den) * den;
    }
    std::vector<mpz_class> ic(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) {
        mpq_class v = c_[i] * mpq_class(l);
        ic[i] = v.get_num();
    }
    // Strip powers of t: 0 is a root when the constant term vanishes.
    size_t low = 0;
    while (low < ic.size() && ic[low] == 0) ++low;
    if (low > 0) roots.push_back(mpq_class(0));
    if (low >= ic.size() - 1) return roots;

    // Divisor enumeration is only feasible for modest leading/constant terms.
    const mpz_class bound = mpz_class(1) << 64;
    if (::abs(ic[low]) > bound || ::abs(ic.back()) > bound) return roots;

    std::vector<mpz_class> ps, qs;
    push_divisors(ic[low], ps, divisor_cap);
    push_divisors(ic.back(), qs, divisor_cap);
    if (ps.size() > divisor_cap || qs.size() > divisor_cap) return roots;

    for (const auto& p : ps)
        for (const auto& q : qs)
            for (int s : {1, -1}) {
                mpq_class cand(p * s, q);
                cand.canonicalize();
                if (eval(cand) == 0 && std::find(roots.begin(), roots.end(), cand) == roots.end())
                    roots.push_back(cand);
            }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::string polyq::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const mpq_class& c = coeff(i);
        if (c == 0) continue;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        mpq_class a = ::abs(c);
        if (a != 1 || i == 0) os << a.get_str();
        if (i >= 1) {
            if (a != 1) os << "*";
            os << "t";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

} // namespace betadim
