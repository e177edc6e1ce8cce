#include "abmod/qmatrix.hpp"

#include <algorithm>

#include "abmod/errors.hpp"

namespace abmod {

QMatrix QMatrix::identity(int n) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
    QMatrix r(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
    return r;
}

QMatrix QMatrix::operator-(const QMatrix& o) const {
    QMatrix r(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
    return r;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
    QMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rational& a = at(i, k);
            if (a == 0) continue;
            for (int j = 0; j < o.cols_; ++j) {
                if (o.at(k, j) == 0) continue;
                r.at(i, j) += a * o.at(k, j);
            }
        }
    return r;
}

QMatrix QMatrix::operator*(const Rational& s) const {
    QMatrix r(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] * s;
    return r;
}

QMatrix QMatrix::operator-() const {
    QMatrix r(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = -data_[i];
    return r;
}

bool QMatrix::operator==(const QMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

std::vector<Rational> QMatrix::apply(const std::vector<Rational>& v) const {
    std::vector<Rational> out(static_cast<size_t>(rows_), Rational(0));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            if (at(i, j) == 0 || v[static_cast<size_t>(j)] == 0) continue;
            out[static_cast<size_t>(i)] += at(i, j) * v[static_cast<size_t>(j)];
        }
    return out;
}

QMatrix QMatrix::transposed() const {
    QMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool QMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const Rational& c) { return c == 0; });
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<int> rref(QMatrix& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int piv = -1;
        for (int r = row; r < m.rows(); ++r)
            if (m.at(r, col) != 0) { piv = r; break; }
        if (piv < 0) continue;
        if (piv != row)
            for (int c = 0; c < m.cols(); ++c) std::swap(m.at(piv, c), m.at(row, c));
        Rational inv = Rational(1) / m.at(row, col);
        for (int c = col; c < m.cols(); ++c) m.at(row, c) *= inv;
        for (int r = 0; r < m.rows(); ++r) {
            if (r == row || m.at(r, col) == 0) continue;
            Rational f = m.at(r, col);
            for (int c = col; c < m.cols(); ++c) m.at(r, c) -= f * m.at(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

int QMatrix::rank() const {
    QMatrix m = *this;
    return static_cast<int>(rref(m).size());
}

std::vector<std::vector<Rational>> kernel_basis(const QMatrix& m) {
    QMatrix r = m;
    std::vector<int> pivots = rref(r);
    std::vector<bool> is_pivot(static_cast<size_t>(m.cols()), false);
    for (int p : pivots) is_pivot[static_cast<size_t>(p)] = true;
    std::vector<std::vector<Rational>> basis;
    for (int free = 0; free < m.cols(); ++free) {
        if (is_pivot[static_cast<size_t>(free)]) continue;
        std::vector<Rational> v(static_cast<size_t>(m.cols()), Rational(0));
        v[static_cast<size_t>(free)] = 1;
        for (size_t i = 0; i < pivots.size(); ++i)
            v[static_cast<size_t>(pivots[i])] = -r.at(static_cast<int>(i), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Rational>> solve_linear(const QMatrix& m,
                                                  const std::vector<Rational>& rhs) {
    QMatrix aug(m.rows(), m.cols() + 1);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = rhs[static_cast<size_t>(i)];
    }
    std::vector<int> pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    std::vector<Rational> x(static_cast<size_t>(m.cols()), Rational(0));
    for (size_t i = 0; i < pivots.size(); ++i)
        x[static_cast<size_t>(pivots[i])] = aug.at(static_cast<int>(i), m.cols());
    return x;
}

RationalPolynomial minimal_polynomial(const QMatrix& m) {
    if (m.rows() != m.cols()) throw Error("minimal_polynomial: matrix not square");
    int n = m.rows();
    if (n == 0) return RationalPolynomial::constant(Rational(1));
    RationalPolynomial result = RationalPolynomial::constant(Rational(1));
    for (int start = 0; start < n; ++start) {
        // Krylov sequence from e_start; first linear dependence gives the
        // local minimal polynomial.
        std::vector<std::vector<Rational>> krylov;
        std::vector<Rational> v(static_cast<size_t>(n), Rational(0));
        v[static_cast<size_t>(start)] = 1;
        krylov.push_back(v);
        for (int step = 1; step <= n; ++step)
            krylov.push_back(m.apply(krylov.back()));
        RationalPolynomial local;
        for (int len = 1; len <= n; ++len) {
            // does krylov[len] lie in span(krylov[0..len-1])?
            QMatrix sys(n, len);
            for (int j = 0; j < len; ++j)
                for (int i = 0; i < n; ++i)
                    sys.at(i, j) = krylov[static_cast<size_t>(j)][static_cast<size_t>(i)];
            auto sol = solve_linear(sys, krylov[static_cast<size_t>(len)]);
            if (!sol) continue;
            std::vector<Rational> c(static_cast<size_t>(len) + 1, Rational(0));
            for (int j = 0; j < len; ++j) c[static_cast<size_t>(j)] = -(*sol)[static_cast<size_t>(j)];
            c[static_cast<size_t>(len)] = 1;
            local = RationalPolynomial(std::move(c));
            break;
        }
        result = poly_lcm(result, local);
        if (result.degree() == n) break;
    }
    if (!evaluate_poly_at(result, m).is_zero())
        throw Error("minimal_polynomial: verification failed");
    return result.monic();
}

RationalPolynomial characteristic_polynomial(const QMatrix& m) {
    // Faddeev-LeVerrier; exact over Q.
    int n = m.rows();
    std::vector<Rational> c(static_cast<size_t>(n) + 1, Rational(0));
    c[static_cast<size_t>(n)] = 1;
    QMatrix mk = QMatrix::identity(n);
    for (int k = 1; k <= n; ++k) {
        mk = m * mk;
        Rational tr(0);
        for (int i = 0; i < n; ++i) tr += mk.at(i, i);
        Rational ck = -tr / k;
        c[static_cast<size_t>(n - k)] = ck;
        for (int i = 0; i < n; ++i) mk.at(i, i) += ck;
    }
    return RationalPolynomial(std::move(c));
}

QMatrix evaluate_poly_at(const RationalPolynomial& p, const QMatrix& m) {
    int n = m.rows();
    QMatrix acc(n, n);
    for (int i = p.degree(); i >= 0; --i) {
        acc = m * acc;
        for (int d = 0; d < n; ++d) acc.at(d, d) += p.coeff(i);
    }
    return acc;
}

}  // namespace abmod
