#include "abmod/series_matrix.hpp"

#include <algorithm>

#include "abmod/errors.hpp"

namespace abmod {

SeriesMatrix::SeriesMatrix(int rows, int cols, int trunc)
    : rows_(rows), cols_(cols), trunc_(trunc),
      data_(static_cast<size_t>(rows) * cols, Series(trunc)) {}

SeriesMatrix SeriesMatrix::identity(int n, int trunc) {
    SeriesMatrix m(n, n, trunc);
    for (int i = 0; i < n; ++i) m.set(i, i, Series::one(trunc));
    return m;
}

SeriesMatrix SeriesMatrix::from_columns(int rows, const std::vector<SeriesVector>& cols,
                                        int trunc) {
    SeriesMatrix m(rows, static_cast<int>(cols.size()), trunc);
    for (size_t j = 0; j < cols.size(); ++j)
        for (int i = 0; i < rows; ++i)
            m.set(i, static_cast<int>(j), cols[j][static_cast<size_t>(i)]);
    return m;
}

SeriesMatrix SeriesMatrix::from_rational(const QMatrix& q, int trunc) {
    SeriesMatrix m(q.rows(), q.cols(), trunc);
    for (int i = 0; i < q.rows(); ++i)
        for (int j = 0; j < q.cols(); ++j)
            m.set(i, j, Series(q.at(i, j), trunc));
    return m;
}

void SeriesMatrix::set(int r, int c, const Series& s) {
    data_[index(r, c)] = s.with_trunc(trunc_);
}

SeriesVector SeriesMatrix::column(int c) const {
    SeriesVector v;
    v.reserve(static_cast<size_t>(rows_));
    for (int i = 0; i < rows_; ++i) v.push_back(at(i, c));
    return v;
}

void SeriesMatrix::append_column(const SeriesVector& v) {
    SeriesMatrix next(rows_, cols_ + 1, trunc_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) next.set(i, j, at(i, j));
        next.set(i, cols_, v[static_cast<size_t>(i)]);
    }
    *this = std::move(next);
}

SeriesMatrix SeriesMatrix::operator+(const SeriesMatrix& o) const {
    SeriesMatrix r(rows_, cols_, std::min(trunc_, o.trunc_));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.set(i, j, at(i, j) + o.at(i, j));
    return r;
}

SeriesMatrix SeriesMatrix::operator-(const SeriesMatrix& o) const {
    SeriesMatrix r(rows_, cols_, std::min(trunc_, o.trunc_));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.set(i, j, at(i, j) - o.at(i, j));
    return r;
}

SeriesMatrix SeriesMatrix::operator*(const SeriesMatrix& o) const {
    SeriesMatrix r(rows_, o.cols_, std::min(trunc_, o.trunc_));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < o.cols_; ++j) {
            Series acc(r.trunc());
            for (int k = 0; k < cols_; ++k) {
                if (at(i, k).is_zero() || o.at(k, j).is_zero()) continue;
                acc = acc + at(i, k) * o.at(k, j);
            }
            r.set(i, j, acc);
        }
    return r;
}

SeriesMatrix SeriesMatrix::operator-() const {
    SeriesMatrix r(rows_, cols_, trunc_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.set(i, j, -at(i, j));
    return r;
}

bool SeriesMatrix::operator==(const SeriesMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != o.at(i, j)) return false;
    return true;
}

SeriesVector SeriesMatrix::apply(const SeriesVector& v) const {
    int t = std::min(trunc_, vec_trunc(v));
    SeriesVector out(static_cast<size_t>(rows_), Series(t));
    for (int i = 0; i < rows_; ++i) {
        Series acc(t);
        for (int j = 0; j < cols_; ++j) {
            if (at(i, j).is_zero() || v[static_cast<size_t>(j)].is_zero()) continue;
            acc = acc + at(i, j) * v[static_cast<size_t>(j)];
        }
        out[static_cast<size_t>(i)] = acc;
    }
    return out;
}

SeriesMatrix SeriesMatrix::scaled(const Series& s) const {
    SeriesMatrix r(rows_, cols_, std::min(trunc_, s.trunc()));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.set(i, j, at(i, j) * s);
    return r;
}

SeriesMatrix SeriesMatrix::shifted_up(int m) const {
    SeriesMatrix r(rows_, cols_, trunc_ + m);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.set(i, j, at(i, j).shifted_up(m));
    return r;
}

SeriesMatrix SeriesMatrix::derivative() const {
    SeriesMatrix r(rows_, cols_, trunc_ - 1);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.set(i, j, at(i, j).derivative());
    return r;
}

SeriesMatrix SeriesMatrix::negated_variable() const {
    SeriesMatrix r(rows_, cols_, trunc_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.set(i, j, at(i, j).negated_variable());
    return r;
}

SeriesMatrix SeriesMatrix::transposed() const {
    SeriesMatrix r(cols_, rows_, trunc_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
    return r;
}

SeriesMatrix SeriesMatrix::with_trunc(int n) const {
    SeriesMatrix r(rows_, cols_, n);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.set(i, j, at(i, j).with_trunc(n));
    return r;
}

QMatrix SeriesMatrix::constant_term() const {
    QMatrix q(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) q.at(i, j) = at(i, j).coeff(0);
    return q;
}

int SeriesMatrix::min_valuation() const {
    int v = kValInfinity;
    for (const auto& s : data_) v = std::min(v, s.valuation());
    return v;
}

bool SeriesMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const Series& s) { return s.is_zero(); });
}

SeriesVector vec_add(const SeriesVector& a, const SeriesVector& b) {
    SeriesVector out;
    out.reserve(a.size());
    for (size_t i = 0; i < a.size(); ++i) out.push_back(a[i] + b[i]);
    return out;
}

SeriesVector vec_sub(const SeriesVector& a, const SeriesVector& b) {
    SeriesVector out;
    out.reserve(a.size());
    for (size_t i = 0; i < a.size(); ++i) out.push_back(a[i] - b[i]);
    return out;
}

SeriesVector vec_scale(const SeriesVector& a, const Series& s) {
    SeriesVector out;
    out.reserve(a.size());
    for (const auto& x : a) out.push_back(x * s);
    return out;
}

SeriesVector vec_shift_up(const SeriesVector& a, int m) {
    SeriesVector out;
    out.reserve(a.size());
    for (const auto& x : a) out.push_back(x.shifted_up(m));
    return out;
}

SeriesVector vec_with_trunc(const SeriesVector& a, int n) {
    SeriesVector out;
    out.reserve(a.size());
    for (const auto& x : a) out.push_back(x.with_trunc(n));
    return out;
}

bool vec_is_zero(const SeriesVector& a) {
    return std::all_of(a.begin(), a.end(), [](const Series& s) { return s.is_zero(); });
}

int vec_min_valuation(const SeriesVector& a) {
    int v = kValInfinity;
    for (const auto& x : a) v = std::min(v, x.valuation());
    return v;
}

int vec_trunc(const SeriesVector& a) {
    int t = a.empty() ? 1 : a.front().trunc();
    for (const auto& x : a) t = std::min(t, x.trunc());
    return t;
}

}  // namespace abmod
