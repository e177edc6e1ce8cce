#include "abmod/constructors.hpp"

#include <algorithm>
#include <random>

#include "abmod/errors.hpp"

namespace abmod {

AbModule jordan_module(const Rational& beta, int d, int trunc) {
    if (d < 1) throw Error("jordan_module: d must be positive");
    if (trunc <= 0) trunc = default_trunc(d);
    SeriesMatrix a(d, d, trunc);
    for (int j = 0; j < d; ++j) {
        a.set(j, j, Series::monomial(beta, 1, trunc));
        if (j > 0) a.set(j - 1, j, Series::monomial(Rational(1), 1, trunc));
    }
    return AbModule(a);
}

long PhamSpec::milnor() const {
    long mu = 1;
    for (int e : exponents) mu *= e - 1;
    return mu;
}

std::vector<Rational> pham_spectrum(const PhamSpec& spec) {
    for (int e : spec.exponents)
        if (e < 2) throw Error("pham: exponents must be >= 2");
    if (spec.exponents.empty()) throw Error("pham: at least one exponent required");
    std::vector<Rational> spectrum;
    std::vector<int> alpha(spec.exponents.size(), 0);
    while (true) {
        Rational sigma(0);
        for (size_t i = 0; i < alpha.size(); ++i)
            sigma += Rational(alpha[i] + 1) / spec.exponents[static_cast<size_t>(i)];
        spectrum.push_back(sigma);
        size_t i = 0;
        while (i < alpha.size() && ++alpha[i] > spec.exponents[i] - 2) {
            alpha[i] = 0;
            ++i;
        }
        if (i == alpha.size()) break;
    }
    return spectrum;
}

AbModule pham(const PhamSpec& spec, int trunc) {
    std::vector<Rational> spectrum = pham_spectrum(spec);
    int mu = static_cast<int>(spectrum.size());
    if (trunc <= 0) trunc = default_trunc(mu);
    SeriesMatrix a(mu, mu, trunc);
    for (int i = 0; i < mu; ++i)
        a.set(i, i, Series::monomial(spectrum[static_cast<size_t>(i)], 1, trunc));
    return AbModule(a);
}

SubModuleResult submodule_closure(const AbModule& e,
                                  const std::vector<SeriesVector>& gens,
                                  const FixedPointOptions& opt) {
    if (gens.empty()) throw Error("submodule_closure: no generators");
    int cap = opt.iteration_cap > 0 ? opt.iteration_cap : 2 * e.rank() + 4;
    Lattice current = Lattice::from_generators(e.rank(), gens, e.trunc());
    int steps = 0;
    while (true) {
        Lattice c = current.canonicalized();
        std::vector<SeriesVector> images;
        for (int j = 0; j < c.num_generators(); ++j)
            images.push_back(e.apply_a_shifted(c.generators().column(j), c.shift()));
        Lattice a_image =
            Lattice::from_generators(e.rank(), std::move(images), c.prec(), c.shift());
        Lattice next = c.sum(a_image);
        if (next == c) {
            current = std::move(c);
            break;
        }
        current = std::move(next);
        if (++steps > cap) throw IterationCap("submodule closure");
    }
    return intrinsic_result(e, current, steps);
}

AbModule direct_sum(const AbModule& a, const AbModule& b) {
    int t = std::min(a.trunc(), b.trunc());
    int n = a.rank() + b.rank();
    SeriesMatrix m(n, n, t);
    for (int i = 0; i < a.rank(); ++i)
        for (int j = 0; j < a.rank(); ++j) m.set(i, j, a.a_matrix().at(i, j));
    for (int i = 0; i < b.rank(); ++i)
        for (int j = 0; j < b.rank(); ++j)
            m.set(a.rank() + i, a.rank() + j, b.a_matrix().at(i, j));
    return AbModule(m);
}

namespace {

Rational random_rational(std::mt19937_64& rng, long height) {
    long num = static_cast<long>(rng() % static_cast<unsigned long>(2 * height + 1)) - height;
    long den = static_cast<long>(rng() % 4) + 1;
    return make_rational(num, den);
}

}  // namespace

AbModule random_simple_pole(int k, unsigned long seed, int trunc,
                            const RandomProfile& profile) {
    if (k < 1) throw Error("random_simple_pole: rank must be positive");
    if (trunc <= 0) trunc = default_trunc(k);
    std::mt19937_64 rng(seed);
    SeriesMatrix a(k, k, trunc);
    for (int i = 0; i < k; ++i) {
        // diagonal lambda_i b with lambda_i in (0, height]
        long num = static_cast<long>(rng() % static_cast<unsigned long>(profile.height)) + 1;
        long den = static_cast<long>(rng() % 4) + 1;
        a.set(i, i, Series::monomial(make_rational(num, den), 1, trunc));
    }
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            Rational c = random_rational(rng, profile.height);
            int power = 1 + static_cast<int>(rng() % 2);
            if (c != 0 && rng() % 2 == 0)
                a.set(i, j, Series::monomial(c, power, trunc));
        }
    return AbModule(a);
}

AbModule random_regular(int k, unsigned long seed, int trunc,
                        const RandomProfile& profile) {
    if (k < 1) throw Error("random_regular: rank must be positive");
    if (trunc <= 0) trunc = default_trunc(k);
    for (int attempt = 0; attempt <= profile.max_retries; ++attempt) {
        unsigned long s = seed + 1000003ul * static_cast<unsigned long>(attempt);
        AbModule base = random_simple_pole(k, s, trunc, profile);
        std::mt19937_64 rng(s ^ 0x9e3779b97f4a7c15ul);
        std::vector<SeriesVector> gens;
        for (int g = 0; g < k; ++g) {
            SeriesVector v(static_cast<size_t>(k), Series(trunc));
            bool nonzero = false;
            for (int i = 0; i < k; ++i) {
                Series s_i(trunc);
                for (int deg = 0; deg <= 2; ++deg)
                    if (rng() % 3 == 0) {
                        Rational c = random_rational(rng, profile.height);
                        s_i.set_coeff(deg, c);
                        if (c != 0) nonzero = true;
                    }
                v[static_cast<size_t>(i)] = s_i;
            }
            if (!nonzero) v[static_cast<size_t>(g % k)] = Series::one(trunc);
            gens.push_back(std::move(v));
        }
        try {
            SubModuleResult closure = submodule_closure(base, gens);
            if (closure.full_rank) return closure.module;
        } catch (const IterationCap&) {
        }
    }
    throw GenerationFailed("no full-rank closure within the retry budget");
}

}  // namespace abmod
