#ifndef ABMOD_SERIES_HPP
#define ABMOD_SERIES_HPP

#include <string>
#include <vector>

#include "abmod/rational.hpp"

namespace abmod {

// Distinguished valuation for "zero at working precision".
constexpr int kValInfinity = 1 << 28;

/// Truncated formal power series in b over the rationals.
///
/// A Series knows its coefficients c_0 .. c_{N-1} and its truncation order
/// N (the working precision in powers of b).  Arithmetic results carry the
/// minimum truncation of the operands; the formal derivative drops one
/// order; multiplication by b^m gains m orders.
class Series {
  public:
    explicit Series(int trunc);
    Series(Rational constant, int trunc);

    static Series zero(int trunc) { return Series(trunc); }
    static Series one(int trunc) { return Series(Rational(1), trunc); }
    // c * b^power
    static Series monomial(Rational c, int power, int trunc);

    int trunc() const { return static_cast<int>(coeffs_.size()); }

    // coeff(i) for i >= trunc() is unknown, not zero; asserting callers
    // must stay below the truncation.
    const Rational& coeff(int i) const { return coeffs_.at(i); }
    void set_coeff(int i, Rational value) { coeffs_.at(i) = std::move(value); }

    bool is_zero() const;  // zero at working precision

    // Index of the first nonzero coefficient, kValInfinity if none below N.
    int valuation() const;

    Series operator-() const;
    Series operator+(const Series& other) const;
    Series operator-(const Series& other) const;
    Series operator*(const Series& other) const;
    Series operator*(const Rational& scalar) const;

    // Multiplicative inverse at the same precision.  Throws NotAUnit when
    // the constant term vanishes.
    Series inverse() const;

    // Formal d/db; precision drops by one order.
    Series derivative() const;

    // Multiply by b^m (m >= 0); precision grows by m.
    Series shifted_up(int m) const;

    // Exact division by b^m; requires valuation >= m (throws Error
    // otherwise).  Precision drops by m.
    Series shifted_down(int m) const;

    // b -> -b substitution.
    Series negated_variable() const;

    // Truncate or zero-pad to the given order.  Padding is only meaningful
    // for series known to be exact polynomials (module defining data).
    Series with_trunc(int n) const;

    // Equality at shared precision (compares min-trunc prefixes).
    bool operator==(const Series& other) const;
    bool operator!=(const Series& other) const { return !(*this == other); }

    // Canonical text form "c0 + c1*b + c2*b^2 + ...", "0" for zero.
    std::string to_string() const;

  private:
    std::vector<Rational> coeffs_;
};

inline Series operator*(const Rational& scalar, const Series& s) { return s * scalar; }

// Parser for the canonical text form; round-trips bit-exactly with
// to_string.  `line` seeds error positions.
Series parse_series(const std::string& text, int trunc, int line = 0);

}  // namespace abmod

#endif
