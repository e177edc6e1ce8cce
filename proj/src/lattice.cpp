#include "abmod/lattice.hpp"

#include <algorithm>

#include "abmod/errors.hpp"

namespace abmod {

namespace {

// Terms of order < v.
Series low_part(const Series& s, int v) {
    Series r(s.trunc());
    for (int i = 0; i < std::min(v, s.trunc()); ++i) r.set_coeff(i, s.coeff(i));
    return r;
}

// q * col where q was obtained by shifting a pivot-row entry down v orders.
// Entries divisible by b^v keep full precision via (q * (col_i / b^v)) * b^v;
// the rest take the honest precision of a plain product.
SeriesVector scaled_pivot_multiple(const SeriesVector& col, const Series& q, int v) {
    SeriesVector out;
    out.reserve(col.size());
    for (const auto& e : col) {
        if (e.valuation() >= v && e.trunc() > v)
            out.push_back((q * e.shifted_down(v)).shifted_up(v));
        else
            out.push_back(q * e);
    }
    return out;
}

struct EchelonResult {
    std::vector<SeriesVector> columns;  // pivot columns in processing order
    std::vector<int> pivot_rows;
    std::vector<int> pivot_vals;
    std::vector<SeriesVector> residual;  // columns that reduced to zero in the
                                         // pivot window (bottom parts intact)
};

// Greedy valuation-pivot column echelon.  Pivots are restricted to rows
// [0, pivot_rows_limit); full columns (all rows) are updated.  Used both for
// lattice canonicalization (limit == rank) and for the stacked kernel solve.
EchelonResult echelon(std::vector<SeriesVector> cols, int pivot_rows_limit) {
    EchelonResult out;
    std::vector<bool> row_used(cols.empty() ? 0 : cols[0].size(), false);
    while (true) {
        int best_val = kValInfinity, best_row = -1;
        size_t best_col = 0;
        for (size_t j = 0; j < cols.size(); ++j) {
            for (int i = 0; i < pivot_rows_limit; ++i) {
                if (row_used[static_cast<size_t>(i)]) continue;
                const Series& e = cols[j][static_cast<size_t>(i)];
                int v = e.valuation();
                if (v >= e.trunc()) continue;
                if (v < best_val || (v == best_val && (i < best_row))) {
                    best_val = v;
                    best_row = i;
                    best_col = j;
                }
            }
        }
        if (best_row < 0) break;
        SeriesVector piv = std::move(cols[best_col]);
        cols.erase(cols.begin() + static_cast<long>(best_col));
        // normalize: divide the column by the unit part of the pivot entry
        Series unit = piv[static_cast<size_t>(best_row)].shifted_down(best_val);
        Series unit_inv = unit.inverse();
        for (auto& e : piv) e = e * unit_inv;
        // pivot entry is exactly b^v now; clear the pivot row elsewhere
        for (auto& col : cols) {
            Series& f = col[static_cast<size_t>(best_row)];
            if (f.is_zero()) continue;
            if (f.valuation() < best_val)
                throw Error("echelon: pivot row entry below pivot valuation");
            Series q = f.shifted_down(best_val);
            col = vec_sub(col, scaled_pivot_multiple(piv, q, best_val));
        }
        row_used[static_cast<size_t>(best_row)] = true;
        out.columns.push_back(std::move(piv));
        out.pivot_rows.push_back(best_row);
        out.pivot_vals.push_back(best_val);
    }
    for (auto& c : cols)
        out.residual.push_back(std::move(c));
    return out;
}

}  // namespace

Lattice Lattice::standard(int rank, int trunc) {
    Lattice l;
    l.rank_ = rank;
    l.shift_ = 0;
    l.gens_ = SeriesMatrix::identity(rank, trunc);
    for (int i = 0; i < rank; ++i) {
        l.pivot_rows_.push_back(i);
        l.pivot_vals_.push_back(0);
    }
    l.canonical_ = true;
    return l;
}

Lattice Lattice::from_generators(int rank, std::vector<SeriesVector> gens, int trunc,
                                 int shift) {
    int t = trunc;
    for (const auto& g : gens) t = std::min(t, vec_trunc(g));
    Lattice l;
    l.rank_ = rank;
    l.shift_ = shift;
    l.gens_ = SeriesMatrix::from_columns(rank, gens, t);
    l.canonical_ = false;
    return l;
}

Lattice Lattice::from_matrix(SeriesMatrix gens, int shift) {
    Lattice l;
    l.rank_ = gens.rows();
    l.shift_ = shift;
    l.gens_ = std::move(gens);
    l.canonical_ = false;
    return l;
}

Lattice Lattice::canonicalized() const {
    if (canonical_) return *this;
    if (prec() < 1) throw PrecisionExhausted("lattice canonicalization at zero precision");
    std::vector<SeriesVector> cols;
    for (int j = 0; j < gens_.cols(); ++j) cols.push_back(gens_.column(j));
    EchelonResult ech = echelon(std::move(cols), rank_);
    // final reduction pass: entries of earlier columns at pivot row j,
    // reduced mod b^{v_j}
    for (size_t j = 0; j < ech.columns.size(); ++j) {
        int row = ech.pivot_rows[j];
        int val = ech.pivot_vals[j];
        for (size_t l = 0; l < j; ++l) {
            Series& f = ech.columns[l][static_cast<size_t>(row)];
            Series rem = low_part(f, val);
            Series high = f - rem;
            if (high.is_zero()) continue;
            Series q = high.shifted_down(val);
            ech.columns[l] =
                vec_sub(ech.columns[l], scaled_pivot_multiple(ech.columns[j], q, val));
        }
    }
    Lattice out;
    out.rank_ = rank_;
    out.shift_ = shift_;
    out.pivot_rows_ = ech.pivot_rows;
    out.pivot_vals_ = ech.pivot_vals;
    // shift normalization: the first pivot valuation is the global minimum
    if (!ech.columns.empty() && ech.pivot_vals.front() > 0) {
        int t = ech.pivot_vals.front();
        for (auto& col : ech.columns)
            for (auto& e : col) e = e.shifted_down(t);
        for (auto& v : out.pivot_vals_) v -= t;
        out.shift_ += t;
    }
    if (ech.columns.empty()) out.shift_ = 0;
    int t = prec();
    for (const auto& c : ech.columns) t = std::min(t, vec_trunc(c));
    out.gens_ = SeriesMatrix::from_columns(rank_, ech.columns, t);
    out.canonical_ = true;
    return out;
}

bool Lattice::operator==(const Lattice& other) const {
    Lattice a = canonicalized();
    Lattice b = other.canonicalized();
    if (a.rank_ != b.rank_ || a.shift_ != b.shift_) return false;
    if (a.pivot_rows_ != b.pivot_rows_ || a.pivot_vals_ != b.pivot_vals_) return false;
    return a.gens_ == b.gens_;  // series equality compares shared precision
}

std::optional<SeriesVector> Lattice::coordinates(const SeriesVector& v, int vshift) const {
    Lattice c = canonicalized();
    int d = vshift - c.shift_;
    SeriesVector w;
    if (d >= 0) {
        w = vec_shift_up(v, d);
    } else {
        w.reserve(v.size());
        for (const auto& e : v) {
            if (e.valuation() < -d && e.valuation() < e.trunc()) return std::nullopt;
            if (e.is_zero())
                w.push_back(Series(std::max(1, e.trunc() + d)));
            else
                w.push_back(e.shifted_down(-d));
        }
    }
    SeriesVector coeffs;
    for (int j = 0; j < c.gens_.cols(); ++j) {
        int row = c.pivot_rows_[static_cast<size_t>(j)];
        int val = c.pivot_vals_[static_cast<size_t>(j)];
        const Series& e = w[static_cast<size_t>(row)];
        if (e.is_zero()) {
            coeffs.push_back(Series(std::max(1, e.trunc() - val)));
            continue;
        }
        if (e.valuation() < val) return std::nullopt;
        Series q = e.shifted_down(val);
        SeriesVector gcol = c.gens_.column(j);
        w = vec_sub(w, scaled_pivot_multiple(gcol, q, val));
        coeffs.push_back(std::move(q));
    }
    if (!vec_is_zero(w)) return std::nullopt;
    return coeffs;
}

bool Lattice::contains(const SeriesVector& v, int vshift) const {
    return coordinates(v, vshift).has_value();
}

bool Lattice::contains_lattice(const Lattice& other) const {
    Lattice o = other.canonicalized();
    for (int j = 0; j < o.generators().cols(); ++j)
        if (!contains(o.generators().column(j), o.shift())) return false;
    return true;
}

Lattice Lattice::sum(const Lattice& other) const {
    if (rank_ != other.rank_) throw Error("lattice_sum: ambient rank mismatch");
    int s = std::min(shift_, other.shift_);
    std::vector<SeriesVector> cols;
    for (int j = 0; j < gens_.cols(); ++j)
        cols.push_back(vec_shift_up(gens_.column(j), shift_ - s));
    for (int j = 0; j < other.gens_.cols(); ++j)
        cols.push_back(vec_shift_up(other.gens_.column(j), other.shift_ - s));
    int t = std::min(prec(), other.prec());
    return from_generators(rank_, std::move(cols), t, s).canonicalized();
}

Lattice Lattice::scaled_by_b(int m) const {
    Lattice l = *this;
    l.shift_ += m;
    return l;
}

Lattice Lattice::with_prec(int n) const {
    Lattice l = *this;
    l.gens_ = gens_.with_trunc(n);
    return l;
}

Lattice::QuotientModB Lattice::quotient_mod_b() const {
    Lattice c = canonicalized();
    return {c.gens_.cols(), c.gens_};
}

Lattice lattice_sum(const Lattice& a, const Lattice& b) { return a.sum(b); }

Lattice column_solution_lattice(const SeriesMatrix& w, const SeriesMatrix& h) {
    int k = w.rows();
    int r = w.cols();
    int t = std::min(w.trunc(), h.trunc());
    std::vector<SeriesVector> stacked;
    for (int j = 0; j < r; ++j) {
        SeriesVector col = vec_with_trunc(w.column(j), t);
        for (int i = 0; i < r; ++i)
            col.push_back(i == j ? Series::one(t) : Series::zero(t));
        stacked.push_back(std::move(col));
    }
    for (int j = 0; j < h.cols(); ++j) {
        SeriesVector col = vec_with_trunc(h.column(j), t);
        for (int i = 0; i < r; ++i) col.push_back(Series::zero(t));
        stacked.push_back(std::move(col));
    }
    EchelonResult ech = echelon(std::move(stacked), k);
    std::vector<SeriesVector> kernel;
    auto bottom = [&](const SeriesVector& col) {
        return SeriesVector(col.begin() + k, col.end());
    };
    for (const auto& col : ech.residual) {
        SeriesVector c = bottom(col);
        if (!vec_is_zero(c)) kernel.push_back(std::move(c));
    }
    // torsion solutions: b^{prec - v} times a pivot column kills its pivot at
    // working precision; they are absorbed once the genuine preimage pivots
    // certify below prec - v
    for (size_t j = 0; j < ech.columns.size(); ++j) {
        int v = ech.pivot_vals[j];
        SeriesVector c = bottom(ech.columns[j]);
        int ct = vec_trunc(c);
        if (v <= 0 || v >= ct) continue;
        SeriesVector lifted;
        for (const auto& e : c) lifted.push_back(e.shifted_up(ct - v).with_trunc(ct));
        if (!vec_is_zero(lifted)) kernel.push_back(std::move(lifted));
    }
    return Lattice::from_generators(r, std::move(kernel), t).canonicalized();
}

Lattice preimage(const SeriesMatrix& m, const Lattice& l, const Lattice& lp) {
    if (m.cols() != l.rank() || m.rows() != lp.rank())
        throw Error("preimage: dimension mismatch");
    Lattice lc = l.canonicalized();
    Lattice lpc = lp.canonicalized();
    SeriesMatrix w = m * lc.generators();
    SeriesMatrix h = lpc.generators();
    int d = lc.shift() - lpc.shift();
    if (d >= 0)
        w = w.shifted_up(d).with_trunc(std::min(w.trunc(), h.trunc()));
    else
        h = h.shifted_up(-d).with_trunc(std::min(w.trunc(), h.trunc()));
    Lattice coeffs = column_solution_lattice(w, h);
    if (coeffs.shift() < 0) throw Error("preimage: fractional coefficient lattice");
    std::vector<SeriesVector> gens;
    for (int j = 0; j < coeffs.generators().cols(); ++j) {
        SeriesVector c = vec_shift_up(coeffs.generators().column(j), coeffs.shift());
        gens.push_back(lc.generators().apply(c));
    }
    int t = std::min(lc.prec(), coeffs.prec());
    return Lattice::from_generators(l.rank(), std::move(gens), t, lc.shift())
        .canonicalized();
}

}  // namespace abmod
