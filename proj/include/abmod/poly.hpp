#ifndef ABMOD_POLY_HPP
#define ABMOD_POLY_HPP

#include <string>
#include <utility>
#include <vector>

#include "abmod/rational.hpp"

namespace abmod {

/// Exact univariate polynomial over the rationals, dense in ascending order.
class RationalPolynomial {
  public:
    RationalPolynomial() : coeffs_{Rational(0)} {}
    explicit RationalPolynomial(std::vector<Rational> coeffs);

    static RationalPolynomial constant(Rational c);
    // z - root
    static RationalPolynomial linear_from_root(const Rational& root);

    bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Rational& coeff(int i) const;
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    const Rational& leading() const { return coeffs_.back(); }

    RationalPolynomial operator+(const RationalPolynomial&) const;
    RationalPolynomial operator-(const RationalPolynomial&) const;
    RationalPolynomial operator*(const RationalPolynomial&) const;
    RationalPolynomial operator*(const Rational&) const;
    bool operator==(const RationalPolynomial&) const;
    bool operator!=(const RationalPolynomial& o) const { return !(*this == o); }

    // quotient/remainder; divisor must be nonzero.
    std::pair<RationalPolynomial, RationalPolynomial> divmod(const RationalPolynomial&) const;
    bool divides(const RationalPolynomial& divisor) const;  // divisor | *this

    RationalPolynomial derivative() const;
    RationalPolynomial monic() const;
    Rational evaluate(const Rational& z) const;

    // p(alpha*z + beta)
    RationalPolynomial compose_affine(const Rational& alpha, const Rational& beta) const;

    std::string to_string(const std::string& var = "z") const;

  private:
    void normalize();
    std::vector<Rational> coeffs_;
};

// Monic gcd.
RationalPolynomial poly_gcd(RationalPolynomial a, RationalPolynomial b);
RationalPolynomial poly_lcm(const RationalPolynomial& a, const RationalPolynomial& b);

// Yun's algorithm: p = lc * prod s_i^i with s_i squarefree, pairwise coprime,
// monic.  Returns (s_i, i) pairs for nontrivial s_i.
std::vector<std::pair<RationalPolynomial, int>> squarefree_decomposition(const RationalPolynomial& p);

// All rational roots with multiplicities (rational root theorem on the
// primitive integer model).
std::vector<std::pair<Rational, int>> rational_roots(const RationalPolynomial& p);

struct Factorization {
    // (monic irreducible factor, multiplicity); product * unit == input.
    std::vector<std::pair<RationalPolynomial, int>> factors;
    // Set when a rational-root-free factor exceeded the factoring budget and
    // is reported unsplit.
    bool complete = true;
};

// Irreducible factorization over Q.  Linear factors come from the rational
// root theorem; higher degrees use Kronecker interpolation with a budget.
Factorization factor(const RationalPolynomial& p);

}  // namespace abmod

#endif
