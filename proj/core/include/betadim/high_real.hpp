#ifndef BETADIM_HIGH_REAL_HPP
#define BETADIM_HIGH_REAL_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <optional>
#include <string>
#include <utility>

namespace betadim {

/// Midpoint-radius enclosure scalar backed by MPFR.
///
/// Every operation rounds outward: the result interval contains the exact
/// mathematical result whenever the operands' intervals contain theirs.
/// The radius is kept at a small fixed precision and always rounded up.
class high_real {
  public:
    static constexpr int default_prec = 128;

    high_real();                            // exact 0 at default precision
    explicit high_real(long value, int prec = default_prec);
    high_real(const high_real&);
    high_real(high_real&&) noexcept;
    high_real& operator=(const high_real&);
    high_real& operator=(high_real&&) noexcept;
    ~high_real();

    static high_real from_mpq(const mpq_class& q, int prec = default_prec);
    static high_real from_mpz(const mpz_class& z, int prec = default_prec);
    /// Enclosure built from exact rational endpoints lo <= hi.
    static high_real from_endpoints(const mpq_class& lo, const mpq_class& hi,
                                    int prec = default_prec);
    /// Smallest enclosure containing both arguments.
    static high_real hull(const high_real& a, const high_real& b);

    int prec() const { return prec_; }
    bool is_exact() const;           // radius exactly zero
    bool contains_zero() const;
    std::optional<int> certain_sign() const;  // -1 / +1 when the enclosure excludes 0, 0 when exactly zero
    bool certainly_positive() const;
    bool certainly_less(const high_real& other) const;  // upper(this) < lower(other)

    /// Exact dyadic endpoints of the enclosure.
    mpq_class lower() const;
    mpq_class upper() const;
    mpq_class midpoint() const;
    double radius_d() const;  // radius rounded up to double

    /// Floor shared by every point of the enclosure, if well defined.
    std::optional<mpz_class> unique_floor() const;

    high_real operator-() const;
    high_real abs() const;
    friend high_real operator+(const high_real&, const high_real&);
    friend high_real operator-(const high_real&, const high_real&);
    friend high_real operator*(const high_real&, const high_real&);
    friend high_real operator/(const high_real&, const high_real&);

    high_real log() const;          // requires certainly positive
    high_real sqrt() const;         // requires certainly non-negative
    high_real pow_si(long e) const; // integer power
    /// x^s for x >= 0 and s > 0, both intervals.
    static high_real pow(const high_real& x, const high_real& s);

    /// Decimal rendering of the midpoint; digits defaults to the precision's
    /// full decimal resolution. Deterministic for equal values.
    std::string str(int digits = 0) const;
    std::string radius_str() const;

  private:
    struct raw_t {};
    high_real(int prec, raw_t);
    void set_endpoints(mpfr_srcptr lo, mpfr_srcptr hi);
    void get_endpoints(mpfr_ptr lo, mpfr_ptr hi) const;

    mpfr_t mid_;
    mpfr_t rad_;
    int prec_;
};

} // namespace betadim

#endif
