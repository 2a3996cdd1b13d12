#ifndef BETADIM_REAL_ALG_HPP
#define BETADIM_REAL_ALG_HPP

#include "betadim/high_real.hpp"
#include "betadim/polyq.hpp"

#include <memory>
#include <mutex>
#include <string>

namespace betadim {

/// Working-precision policy: start at `bits`, double on demand up to `cap`.
struct precision_policy {
    int bits = 128;
    int cap = 1024;
};

/// A real algebraic number presented as the unique root of a squarefree
/// rational polynomial inside an isolating interval with rational endpoints.
/// The isolating interval refines on demand; refinement is thread safe.
class number_field {
  public:
    /// Validates the input: takes the squarefree part, rejects intervals
    /// containing zero or several roots. A rational root inside the interval
    /// is reported through `rational_root` instead of constructing a field.
    static std::shared_ptr<const number_field> make(const polyq& p, const mpq_class& lo,
                                                    const mpq_class& hi);
    static std::optional<mpq_class> rational_root(const polyq& p, const mpq_class& lo,
                                                  const mpq_class& hi);

    const polyq& modulus() const { return p_; }
    int degree() const { return p_.degree(); }

    /// Current isolating interval, refined so that hi - lo <= 2^-bits.
    std::pair<mpq_class, mpq_class> isolating(int bits) const;
    high_real enclosure(int prec) const;

    std::string str() const;

  private:
    number_field(polyq p, mpq_class lo, mpq_class hi);

    polyq p_;  // squarefree, monic
    mutable std::mutex m_;
    mutable mpq_class lo_, hi_;  // sign(p(lo)) != sign(p(hi)), both nonzero
};

/// Exact real scalar: a rational number or an element of ℚ(β) for an
/// algebraic β. All arithmetic and comparisons are exact.
class real_alg {
  public:
    real_alg() : rep_(polyq()) {}
    real_alg(const mpq_class& q) : rep_(polyq::constant(q)) {}
    real_alg(long v) : rep_(polyq::constant(mpq_class(v))) {}
    static real_alg generator(std::shared_ptr<const number_field> fld);

    bool is_rational() const { return fld_ == nullptr; }
    mpq_class as_rational() const;
    const std::shared_ptr<const number_field>& field() const { return fld_; }
    const polyq& rep() const { return rep_; }

    friend real_alg operator+(const real_alg&, const real_alg&);
    friend real_alg operator-(const real_alg&, const real_alg&);
    friend real_alg operator*(const real_alg&, const real_alg&);
    friend real_alg operator/(const real_alg&, const real_alg&);
    real_alg operator-() const;
    real_alg inverse() const;
    real_alg pow_ui(unsigned long e) const;

    bool is_zero() const;   // exact
    int sign() const;       // exact
    bool operator==(const real_alg& o) const { return (*this - o).is_zero(); }
    bool operator!=(const real_alg& o) const { return !(*this == o); }
    bool operator<(const real_alg& o) const { return (*this - o).sign() < 0; }
    bool operator<=(const real_alg& o) const { return (*this - o).sign() <= 0; }
    bool operator>(const real_alg& o) const { return (*this - o).sign() > 0; }
    bool operator>=(const real_alg& o) const { return (*this - o).sign() >= 0; }

    /// Exact floor. Resolves near-integer values through the exact zero test;
    /// raises ambiguous_floor only when the precision cap is exhausted first.
    mpz_class floor(const precision_policy& pp = {}) const;

    high_real enclosure(int prec) const;
    std::string str() const;  // exact rendering ("p/q" or polynomial in beta)

  private:
    real_alg(std::shared_ptr<const number_field> fld, polyq rep);
    static void align(const real_alg& a, const real_alg& b,
                      std::shared_ptr<const number_field>& fld);

    std::shared_ptr<const number_field> fld_;  // null => rational
    polyq rep_;                                // degree < deg(modulus); constant if rational
};

} // namespace betadim

#endif
