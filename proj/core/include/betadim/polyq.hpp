#ifndef BETADIM_POLYQ_HPP
#define BETADIM_POLYQ_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

namespace betadim {

/// Univariate polynomial over the rationals, coefficients in ascending order.
class polyq {
  public:
    polyq() = default;
    explicit polyq(std::vector<mpq_class> coeffs);
    static polyq constant(const mpq_class& c);
    static polyq identity();  // the polynomial t

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const mpq_class& coeff(int i) const;
    const std::vector<mpq_class>& coeffs() const { return c_; }

    mpq_class eval(const mpq_class& x) const;
    int sign_at(const mpq_class& x) const;
    polyq derivative() const;
    polyq monic() const;

    friend polyq operator+(const polyq&, const polyq&);
    friend polyq operator-(const polyq&, const polyq&);
    friend polyq operator*(const polyq&, const polyq&);
    polyq scaled(const mpq_class& k) const;
    bool operator==(const polyq&) const = default;

    /// Euclidean division: a = q*b + r with deg r < deg b.
    static void divmod(const polyq& a, const polyq& b, polyq& q, polyq& r);
    polyq mod(const polyq& b) const;
    static polyq gcd(polyq a, polyq b);  // monic gcd
    polyq squarefree_part() const;

    /// Sturm chain of a squarefree polynomial.
    static std::vector<polyq> sturm_chain(const polyq& p);
    static int sign_variations(const std::vector<polyq>& chain, const mpq_class& x);
    /// Number of distinct real roots in (a, b]; requires a < b.
    static int count_roots(const std::vector<polyq>& chain, const mpq_class& a,
                           const mpq_class& b);

    /// All rational roots (via the rational root theorem on the integerized
    /// polynomial). Returns an empty list when the search space is too large.
    std::vector<mpq_class> rational_roots(unsigned long divisor_cap = 1u << 20) const;

    std::string str() const;

  private:
    void normalize();
    std::vector<mpq_class> c_;
};

} // namespace betadim

#endif
