#ifndef ABMOD_SERIES_MATRIX_HPP
#define ABMOD_SERIES_MATRIX_HPP

#include <vector>

#include "abmod/qmatrix.hpp"
#include "abmod/series.hpp"

namespace abmod {

using SeriesVector = std::vector<Series>;

/// Dense matrix of truncated series, uniform truncation across entries.
class SeriesMatrix {
  public:
    SeriesMatrix() : rows_(0), cols_(0), trunc_(1) {}
    SeriesMatrix(int rows, int cols, int trunc);

    static SeriesMatrix identity(int n, int trunc);
    static SeriesMatrix from_columns(int rows, const std::vector<SeriesVector>& cols, int trunc);
    static SeriesMatrix from_rational(const QMatrix& m, int trunc);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int trunc() const { return trunc_; }

    const Series& at(int r, int c) const { return data_[index(r, c)]; }
    void set(int r, int c, const Series& s);

    SeriesVector column(int c) const;
    void append_column(const SeriesVector& v);

    SeriesMatrix operator+(const SeriesMatrix&) const;
    SeriesMatrix operator-(const SeriesMatrix&) const;
    SeriesMatrix operator*(const SeriesMatrix&) const;
    SeriesMatrix operator-() const;
    bool operator==(const SeriesMatrix&) const;

    SeriesVector apply(const SeriesVector& v) const;

    SeriesMatrix scaled(const Series& s) const;
    SeriesMatrix shifted_up(int m) const;          // entrywise * b^m
    SeriesMatrix derivative() const;               // entrywise d/db
    SeriesMatrix negated_variable() const;         // b -> -b
    SeriesMatrix transposed() const;
    SeriesMatrix with_trunc(int n) const;

    // Constant-term matrix A(0).
    QMatrix constant_term() const;

    // Minimum valuation over all entries (kValInfinity if zero matrix).
    int min_valuation() const;

    bool is_zero() const;

  private:
    size_t index(int r, int c) const { return static_cast<size_t>(r) * cols_ + c; }
    int rows_, cols_, trunc_;
    std::vector<Series> data_;
};

// Vector helpers (uniform trunc is the min across entries where it matters).
SeriesVector vec_add(const SeriesVector& a, const SeriesVector& b);
SeriesVector vec_sub(const SeriesVector& a, const SeriesVector& b);
SeriesVector vec_scale(const SeriesVector& a, const Series& s);
SeriesVector vec_shift_up(const SeriesVector& a, int m);
SeriesVector vec_with_trunc(const SeriesVector& a, int n);
bool vec_is_zero(const SeriesVector& a);
int vec_min_valuation(const SeriesVector& a);
int vec_trunc(const SeriesVector& a);

}  // namespace abmod

#endif
