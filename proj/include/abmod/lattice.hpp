#ifndef ABMOD_LATTICE_HPP
#define ABMOD_LATTICE_HPP

#include <optional>
#include <vector>

#include "abmod/series_matrix.hpp"

namespace abmod {

/// Finitely generated sub-module of b^shift * C[[b]]^rank over the truncated
/// series ring.  The lattice is b^shift * colspan(generators); after
/// canonicalization the generator columns have distinct pivot rows with pivot
/// entries exactly b^v, later columns vanish at earlier pivot rows, pivot-row
/// entries of earlier columns are reduced mod b^v, and the shift is
/// normalized so that some generator has a unit coordinate.
///
/// Two lattices are equal at the working precision iff their canonical forms
/// are identical.
class Lattice {
  public:
    static Lattice standard(int rank, int trunc);
    static Lattice from_generators(int rank, std::vector<SeriesVector> gens,
                                   int trunc, int shift = 0);
    static Lattice from_matrix(SeriesMatrix gens, int shift = 0);

    int rank() const { return rank_; }
    int shift() const { return shift_; }
    int prec() const { return gens_.trunc(); }
    int num_generators() const { return gens_.cols(); }
    const SeriesMatrix& generators() const { return gens_; }
    bool is_canonical() const { return canonical_; }

    // pivot data, valid on canonical lattices
    const std::vector<int>& pivot_rows() const { return pivot_rows_; }
    const std::vector<int>& pivot_vals() const { return pivot_vals_; }

    Lattice canonicalized() const;

    // Lattice equality at shared precision (canonical-form comparison).
    bool operator==(const Lattice& other) const;
    bool operator!=(const Lattice& other) const { return !(*this == other); }

    // Membership of b^vshift * v at working precision.
    bool contains(const SeriesVector& v, int vshift = 0) const;

    // Coefficients c with b^shift * G * c = b^vshift * v, if they exist.
    std::optional<SeriesVector> coordinates(const SeriesVector& v, int vshift = 0) const;

    bool contains_lattice(const Lattice& other) const;

    Lattice sum(const Lattice& other) const;

    // b^m * L (m may be negative).
    Lattice scaled_by_b(int m) const;

    Lattice with_prec(int n) const;

    struct QuotientModB {
        int dimension;
        SeriesMatrix basis;  // canonical generator columns, representing L/bL
    };
    QuotientModB quotient_mod_b() const;

  private:
    Lattice() : rank_(0), shift_(0) {}
    int rank_;
    int shift_;
    SeriesMatrix gens_;
    std::vector<int> pivot_rows_;
    std::vector<int> pivot_vals_;
    bool canonical_ = false;
};

Lattice lattice_sum(const Lattice& a, const Lattice& b);

// {x in L : M x in Lp} at working precision.
Lattice preimage(const SeriesMatrix& m, const Lattice& l, const Lattice& lp);

// Coefficient lattice {c in R^r : W c in span(H)}; W is k x r, H is k x r'.
// Used by preimage and by the fixed point iterations, which need W columns
// that are images of lattice generators under the (non-linear) a-action.
Lattice column_solution_lattice(const SeriesMatrix& w, const SeriesMatrix& h);

}  // namespace abmod

#endif
