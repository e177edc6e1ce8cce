#ifndef ABMOD_DUALITY_HPP
#define ABMOD_DUALITY_HPP

#include <optional>
#include <string>
#include <vector>

#include "abmod/abmodule.hpp"

namespace abmod {

// Rank-one module with a.e = delta b e.
AbModule e_delta(const Rational& delta, int trunc);

// Same module with a and b acting as -a and -b: the a-matrix becomes -A(-b).
// Involutive.
AbModule twist(const AbModule& e);

// Hom_{a,b}(E, F) on the row-major matrix-unit basis phi_{ij} (phi maps
// e_j to f_i; basis index i*rank(E)+j).  The a-action sends the matrix Phi
// of a morphism to A_F Phi - Phi A_E.
AbModule hom_ab(const AbModule& e, const AbModule& f);

// Row-major basis index helpers for hom_ab.
inline int hom_index(const AbModule& e, int i, int j) { return i * e.rank() + j; }

// The matrix of a Hom-module element (coordinates in the matrix-unit basis)
// as an actual rank(F) x rank(E) series matrix, and back.
SeriesMatrix hom_element_matrix(const AbModule& e, const AbModule& f,
                                const SeriesVector& coords);
SeriesVector hom_matrix_coords(const AbModule& e, const AbModule& f,
                               const SeriesMatrix& phi);

struct MorphismSpace {
    const AbModule* source;
    const AbModule* target;
    std::vector<SeriesMatrix> basis;  // (a,b)-linear maps at working precision
    int certified_dim = 0;
    bool precision_caveat = false;
};

struct MorphismSpaceOptions {
    // Parameters born within this many orders of the truncation are not
    // certified (their constraints may lie beyond the working precision).
    int tail_guard = 6;
};

// Rational basis of {Phi : A_F Phi + b^2 Phi' = Phi A_E}, solved order by
// order in b with parameter elimination.
MorphismSpace morphism_space(const AbModule& e, const AbModule& f,
                             const MorphismSpaceOptions& opt = {});

struct IsomorphismCheck {
    bool a_linear = false;       // zero residual A_F Phi + b^2 Phi' - Phi A_E
    bool unit_determinant = false;
    bool ok() const { return a_linear && unit_determinant; }
};

IsomorphismCheck verify_isomorphism(const SeriesMatrix& phi, const AbModule& e,
                                    const AbModule& f);

// Lemma: the canonical evaluation map tau : E -> Hom(Hom(E,E_delta),E_delta),
// tau(x)[phi] = phi(x), is an (a,b)-isomorphism; also checks Bernstein
// invariance of the double Hom.
bool verify_bidual(const AbModule& e, const Rational& delta,
                   const FixedPointOptions& opt = {});

// Lemma: twist(Hom(E,F)) and Hom(twist(E),twist(F)) carry identical
// a-matrices under the identity identification of bases.
bool verify_twist_hom(const AbModule& e, const AbModule& f);

struct DualityCertificate {
    Rational delta;
    SeriesMatrix kappa;  // matrix of an isomorphism twist(E) -> Hom(E, E_delta)
    IsomorphismCheck checks;
};

struct SelfDualitySearchOptions {
    int sweep_height = 2;        // deterministic integer combinations first
    int random_tries = 200;
    unsigned long seed = 1;
    MorphismSpaceOptions morphisms;
};

// Searches morphism_space(twist(E), hom_ab(E, E_delta)) for a unit-determinant
// element.  NotFound is reported as nullopt and always means
// "not found at this precision", not a proof of non-existence.
std::optional<DualityCertificate> find_self_duality(
    const AbModule& e, const Rational& delta,
    const SelfDualitySearchOptions& opt = {});

struct PropDualReport {
    bool kappa_prime_found = false;   // twist(saturation) ~ Hom(F, E_delta)
    bool kappa_second_found = false;  // twist(F) ~ Hom(saturation, E_delta)
    bool reflection_holds = false;    // b*_E(z) = +/- b_E(-delta-z)
    BernsteinPoly bernstein;
    BernsteinPoly dual;
};

PropDualReport verify_prop_dual(const AbModule& e, const Rational& delta,
                                const DualityCertificate& cert,
                                const SelfDualitySearchOptions& opt = {});

// b*(z) = (-1)^r b(-delta - z) as exact polynomials, both sides re-monicized.
bool reflection_check(const BernsteinPoly& b, const BernsteinPoly& b_star,
                      const Rational& delta);

}  // namespace abmod

#endif
