#ifndef ABMOD_ABMODULE_HPP
#define ABMOD_ABMODULE_HPP

#include <string>
#include <vector>

#include "abmod/lattice.hpp"
#include "abmod/poly.hpp"
#include "abmod/qmatrix.hpp"

namespace abmod {

// Default working precision for a module of the given rank.
int default_trunc(int rank);

/// Free finite-rank module over C[[b]] with an a-action satisfying
/// a.b - b.a = b^2.  Column j of the a-matrix gives a.e_j; the action on
/// general elements extends by a(f(b)x) = f(b) a(x) + b^2 f'(b) x.
class AbModule {
  public:
    explicit AbModule(SeriesMatrix a_matrix);

    int rank() const { return a_.rows(); }
    int trunc() const { return a_.trunc(); }
    const SeriesMatrix& a_matrix() const { return a_; }

    // Re-truncate the defining data (exact polynomials, so padding is sound).
    AbModule with_trunc(int n) const { return AbModule(a_.with_trunc(n)); }

    SeriesVector apply_a(const SeriesVector& x) const;

    // a on shifted coordinates: the element b^s u maps to b^s (a(u) + s b u).
    SeriesVector apply_a_shifted(const SeriesVector& u, int s) const;

    // a E subset of b E, i.e. A(0) = 0.
    bool is_simple_pole() const;

    // Matrix of b^{-1} a on E/bE; requires a simple pole.
    QMatrix residue_endomorphism() const;

    bool operator==(const AbModule& o) const { return a_ == o.a_; }

  private:
    SeriesMatrix a_;
};

struct SubModuleResult {
    AbModule module;        // intrinsic a-matrix on the new basis
    SeriesMatrix inclusion; // new basis in ambient coordinates ...
    int inclusion_shift;    // ... scaled by b^inclusion_shift
    int iterations;         // lattice-growth / shrink steps until stable
    bool full_rank = true;
};

struct BernsteinPoly {
    RationalPolynomial poly;  // monic
    std::vector<std::pair<RationalPolynomial, int>> factorization;
    std::vector<std::pair<Rational, int>> rational_roots;
    bool factorization_complete = true;
};

BernsteinPoly make_bernstein(const RationalPolynomial& p);

struct FixedPointOptions {
    int iteration_cap = 0;   // 0: use 2*rank + 4
    int max_doublings = 3;   // precision retries for the polynomial pipeline
};

// Smallest simple-pole module containing E inside E[1/b]: fixed point of
// L <- L + b^{-1} a(L) from the standard lattice.  Throws NotRegular at the
// iteration cap.
SubModuleResult saturate(const AbModule& e, const FixedPointOptions& opt = {});

// Largest sub-module with a F subset of b F: decreasing fixed point of
// F <- {x in F : a(x) in b F} from the standard lattice.
SubModuleResult biggest_simple_pole_sub(const AbModule& e,
                                        const FixedPointOptions& opt = {});

// Saturation / biggest-simple-pole lattices without the intrinsic basis.
Lattice saturation_lattice(const AbModule& e, int iteration_cap, int* iterations);

// Intrinsic a-matrix of an a-stable lattice inside an ambient module: the
// canonical generators become the new basis.
SubModuleResult intrinsic_result(const AbModule& ambient, const Lattice& lattice,
                                 int iterations);

// Minimal polynomial of -b^{-1}a on (saturation)/b(saturation).
BernsteinPoly bernstein(const AbModule& e, const FixedPointOptions& opt = {});

// Minimal polynomial of -b^{-1}a on F/bF.
BernsteinPoly dual_bernstein(const AbModule& e, const FixedPointOptions& opt = {});

struct RationalSpectralClass {
    Rational class_rep;                            // representative in [0,1)
    std::vector<std::pair<Rational, int>> roots;   // ascending with mult
    const Rational& smallest() const { return roots.front().first; }
    const Rational& biggest() const { return roots.back().first; }
};

struct SymbolicSpectralClass {
    // Irreducible factors of degree > 1 equivalent under integer shifts;
    // no total order on their roots is claimed.
    std::vector<std::pair<RationalPolynomial, int>> factors;
};

struct SpectralClasses {
    std::vector<RationalSpectralClass> rational;   // ordered by class_rep
    std::vector<SymbolicSpectralClass> symbolic;
    bool factorization_complete = true;
};

// shift_bound 0 selects degree * coefficient-height automatically.
SpectralClasses spectral_classes(const BernsteinPoly& p, long shift_bound = 0);

struct PolePrediction {
    Rational class_rep;
    Rational alpha;              // smallest root of b_E in the class
    int multiplicity;            // of alpha in the minimal polynomial
    Rational pole_location;      // -n - alpha
    int pole_order_lower_bound;  // = multiplicity
};

struct PolePredictionReport {
    int n;
    std::vector<PolePrediction> predictions;
    int symbolic_class_count = 0;  // flagged, no numeric prediction emitted
    BernsteinPoly bernstein;
};

PolePredictionReport pole_prediction(const AbModule& e, int n,
                                     const FixedPointOptions& opt = {});

// Jordan chain e_1..e_d in a simple-pole module with
// a e_j = beta b e_j + b e_{j-1}, e_0 = 0.  Requires beta minimal in its
// class mod Z among the eigenvalues and a Jordan block of size >= d.
std::vector<SeriesVector> jordan_chain_lift(const AbModule& f, const Rational& beta,
                                            int d);

// Residuals a e_j - beta b e_j - b e_{j-1} of a chain; all-zero certifies it.
std::vector<SeriesVector> jordan_chain_residuals(const AbModule& f, const Rational& beta,
                                                 const std::vector<SeriesVector>& chain);

// True iff saturation stabilizes within the cap at this precision.
bool is_regular(const AbModule& e, const FixedPointOptions& opt = {});

}  // namespace abmod

#endif
