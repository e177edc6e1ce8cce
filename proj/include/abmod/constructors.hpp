#ifndef ABMOD_CONSTRUCTORS_HPP
#define ABMOD_CONSTRUCTORS_HPP

#include <vector>

#include "abmod/abmodule.hpp"
#include "abmod/duality.hpp"

namespace abmod {

// Rank-one module with a.e = lambda b e (alias of e_delta).
inline AbModule e_lambda(const Rational& lambda, int trunc) {
    return e_delta(lambda, trunc);
}

// Rank-d simple-pole module with a e_j = beta b e_j + b e_{j-1}, e_0 = 0.
// trunc 0 selects the rank default.
AbModule jordan_module(const Rational& beta, int d, int trunc = 0);

// Quasi-homogeneous diagonal model for x_1^{a_1} + ... + x_n^{a_n}: one
// basis vector per monomial x^alpha with 0 <= alpha_i <= a_i - 2, and
// a e_alpha = sigma(alpha) b e_alpha with sigma(alpha) = sum (alpha_i+1)/a_i.
struct PhamSpec {
    std::vector<int> exponents;  // each >= 2
    int n() const { return static_cast<int>(exponents.size()); }
    long milnor() const;
};

AbModule pham(const PhamSpec& spec, int trunc = 0);

// Spectral values in the basis order used by pham().
std::vector<Rational> pham_spectrum(const PhamSpec& spec);

// Smallest b-stable, a-stable lattice containing the given elements of E,
// as the fixed point of L <- L + a(L); returned with its intrinsic a-matrix.
// full_rank is false when the closure spans fewer than rank(E) directions.
SubModuleResult submodule_closure(const AbModule& e,
                                  const std::vector<SeriesVector>& gens,
                                  const FixedPointOptions& opt = {});

// Block-diagonal direct sum; operands are re-truncated to the shared minimum.
AbModule direct_sum(const AbModule& a, const AbModule& b);

struct RandomProfile {
    long height = 5;      // coefficient numerators drawn from [-height, height]
    int max_retries = 8;  // full-rank retries before GenerationFailed
};

// Deterministic-from-seed simple-pole module: rational diagonal (entries
// lambda_i b) plus a b-divisible strictly upper triangular part.
AbModule random_simple_pole(int k, unsigned long seed, int trunc = 0,
                            const RandomProfile& profile = {});

// Deterministic-from-seed regular module: submodule closure of k random
// elements of a random simple-pole module.  Throws GenerationFailed when no
// full-rank closure appears within the retry budget.
AbModule random_regular(int k, unsigned long seed, int trunc = 0,
                        const RandomProfile& profile = {});

}  // namespace abmod

#endif
