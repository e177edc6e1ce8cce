#ifndef ABMOD_QMATRIX_HPP
#define ABMOD_QMATRIX_HPP

#include <optional>
#include <vector>

#include "abmod/poly.hpp"
#include "abmod/rational.hpp"

namespace abmod {

/// Dense matrix over the rationals.
class QMatrix {
  public:
    QMatrix() : rows_(0), cols_(0) {}
    QMatrix(int rows, int cols)
        : rows_(rows), cols_(cols),
          data_(static_cast<size_t>(rows) * cols, Rational(0)) {}

    static QMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Rational& at(int r, int c) const { return data_[index(r, c)]; }
    Rational& at(int r, int c) { return data_[index(r, c)]; }

    QMatrix operator+(const QMatrix&) const;
    QMatrix operator-(const QMatrix&) const;
    QMatrix operator*(const QMatrix&) const;
    QMatrix operator*(const Rational&) const;
    QMatrix operator-() const;
    bool operator==(const QMatrix&) const;

    std::vector<Rational> apply(const std::vector<Rational>& v) const;
    QMatrix transposed() const;
    bool is_zero() const;

    int rank() const;

  private:
    size_t index(int r, int c) const {
        return static_cast<size_t>(r) * cols_ + c;
    }
    int rows_, cols_;
    std::vector<Rational> data_;
};

inline bool vec_is_zero_rat(const std::vector<Rational>& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

// Basis of the right kernel {v : M v = 0}.
std::vector<std::vector<Rational>> kernel_basis(const QMatrix& m);

// One solution of M x = rhs if consistent.
std::optional<std::vector<Rational>> solve_linear(const QMatrix& m,
                                                  const std::vector<Rational>& rhs);

// Monic exact minimal polynomial (lcm of Krylov local minimal polynomials,
// verified by evaluation).
RationalPolynomial minimal_polynomial(const QMatrix& m);

RationalPolynomial characteristic_polynomial(const QMatrix& m);

// p(M)
QMatrix evaluate_poly_at(const RationalPolynomial& p, const QMatrix& m);

}  // namespace abmod

#endif
