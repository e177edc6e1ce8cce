#include "abmod/abmodule.hpp"

#include <algorithm>
#include <map>

#include "abmod/errors.hpp"

namespace abmod {

int default_trunc(int rank) { return 4 * rank + 10; }

AbModule::AbModule(SeriesMatrix a_matrix) : a_(std::move(a_matrix)) {
    if (a_.rows() != a_.cols()) throw Error("AbModule: a-matrix must be square");
}

SeriesVector AbModule::apply_a(const SeriesVector& x) const {
    if (static_cast<int>(x.size()) != rank()) throw Error("apply_a: dimension mismatch");
    SeriesVector out = a_.apply(x);
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero() || x[i].trunc() < 2) continue;
        out[i] = out[i] + x[i].derivative().shifted_up(2);
    }
    return out;
}

SeriesVector AbModule::apply_a_shifted(const SeriesVector& u, int s) const {
    SeriesVector out = apply_a(u);
    if (s == 0) return out;
    Series sb = Series::monomial(Rational(s), 1, trunc());
    for (size_t i = 0; i < u.size(); ++i) out[i] = out[i] + u[i] * sb;
    return out;
}

bool AbModule::is_simple_pole() const { return a_.min_valuation() >= 1; }

QMatrix AbModule::residue_endomorphism() const {
    if (!is_simple_pole()) throw NotSimplePole();
    QMatrix c0(rank(), rank());
    for (int i = 0; i < rank(); ++i)
        for (int j = 0; j < rank(); ++j) c0.at(i, j) = a_.at(i, j).coeff(1);
    return c0;
}

namespace {

int cap_or_default(const FixedPointOptions& opt, int rank) {
    return opt.iteration_cap > 0 ? opt.iteration_cap : 2 * rank + 4;
}

}  // namespace

SubModuleResult intrinsic_result(const AbModule& ambient, const Lattice& lattice,
                                 int iterations) {
    Lattice c = lattice.canonicalized();
    int r = c.num_generators();
    std::vector<SeriesVector> columns;
    int t = c.prec();
    for (int j = 0; j < r; ++j) {
        SeriesVector image = ambient.apply_a_shifted(c.generators().column(j), c.shift());
        auto coords = c.coordinates(image, c.shift());
        if (!coords)
            throw Error("intrinsic_result: lattice is not a-stable");
        t = std::min(t, vec_trunc(*coords));
        columns.push_back(std::move(*coords));
    }
    SeriesMatrix intrinsic = SeriesMatrix::from_columns(r, columns, std::max(1, t));
    return SubModuleResult{AbModule(intrinsic), c.generators(), c.shift(), iterations,
                           r == ambient.rank()};
}

Lattice saturation_lattice(const AbModule& e, int iteration_cap, int* iterations) {
    Lattice current = Lattice::standard(e.rank(), e.trunc());
    int steps = 0;
    while (true) {
        // b^{-1} a(L): images of the generators, shifted one order down
        std::vector<SeriesVector> images;
        for (int j = 0; j < current.num_generators(); ++j)
            images.push_back(
                e.apply_a_shifted(current.generators().column(j), current.shift()));
        Lattice a_image = Lattice::from_generators(e.rank(), std::move(images),
                                                   current.prec(), current.shift() - 1);
        Lattice next = current.sum(a_image);
        if (next == current) break;
        current = std::move(next);
        if (++steps > iteration_cap) throw NotRegular(steps);
    }
    if (iterations) *iterations = steps;
    return current;
}

SubModuleResult saturate(const AbModule& e, const FixedPointOptions& opt) {
    if (e.rank() == 0)
        return SubModuleResult{e, SeriesMatrix(0, 0, e.trunc()), 0, 0, true};
    int steps = 0;
    Lattice sat = saturation_lattice(e, cap_or_default(opt, e.rank()), &steps);
    SubModuleResult result = intrinsic_result(e, sat, steps);
    if (!result.module.is_simple_pole())
        throw Error("saturate: fixed point is not a simple pole module");
    return result;
}

namespace {

template <typename F>
auto with_precision_retry(const AbModule& e, const FixedPointOptions& opt, F&& f) {
    int n = e.trunc();
    for (int attempt = 0;; ++attempt) {
        try {
            return f(attempt == 0 ? e : e.with_trunc(n));
        } catch (const PrecisionExhausted&) {
            if (attempt >= opt.max_doublings) throw;
            n *= 2;
        }
    }
}

// One pass of the decreasing fixed point at the module's own precision.  The
// stacked solves trade precision for pivot valuations, so the inclusion can
// come out much shorter than the input; below the floor the result is useless
// and the caller retries at doubled precision.
SubModuleResult biggest_simple_pole_sub_once(const AbModule& e, const FixedPointOptions& opt) {
    int cap = cap_or_default(opt, e.rank());
    Lattice current = Lattice::standard(e.rank(), e.trunc());
    int steps = 0;
    while (true) {
        Lattice c = current.canonicalized();
        std::vector<SeriesVector> images;
        for (int j = 0; j < c.num_generators(); ++j)
            images.push_back(e.apply_a_shifted(c.generators().column(j), c.shift()));
        SeriesMatrix w = SeriesMatrix::from_columns(
            e.rank(), images,
            images.empty() ? c.prec() : vec_trunc(images.front()));
        Lattice target = c.scaled_by_b(1);  // b F
        int d = c.shift() - target.shift();  // = -1
        SeriesMatrix h = target.generators().shifted_up(-d);
        Lattice coeffs = column_solution_lattice(w.with_trunc(std::min(w.trunc(), h.trunc())),
                                                 h.with_trunc(std::min(w.trunc(), h.trunc())));
        std::vector<SeriesVector> gens;
        for (int j = 0; j < coeffs.num_generators(); ++j) {
            SeriesVector cv = vec_shift_up(coeffs.generators().column(j), coeffs.shift());
            gens.push_back(c.generators().apply(cv));
        }
        Lattice next = Lattice::from_generators(e.rank(), std::move(gens),
                                                std::min(c.prec(), coeffs.prec()), c.shift())
                           .canonicalized();
        if (next == c) {
            current = std::move(c);
            break;
        }
        current = std::move(next);
        if (++steps > cap) throw IterationCap("biggest_simple_pole_sub");
    }
    SubModuleResult result = intrinsic_result(e, current, steps);
    int floor = std::max(2, e.trunc() / 4);
    if (std::min(result.inclusion.trunc(), result.module.trunc()) < floor)
        throw PrecisionExhausted("biggest simple-pole iteration lost working precision");
    if (result.full_rank && !result.module.is_simple_pole())
        throw Error("biggest_simple_pole_sub: fixed point is not simple pole");
    return result;
}

}  // namespace

SubModuleResult biggest_simple_pole_sub(const AbModule& e, const FixedPointOptions& opt) {
    if (e.rank() == 0)
        return SubModuleResult{e, SeriesMatrix(0, 0, e.trunc()), 0, 0, true};
    return with_precision_retry(
        e, opt, [&](const AbModule& m) { return biggest_simple_pole_sub_once(m, opt); });
}

BernsteinPoly make_bernstein(const RationalPolynomial& p) {
    BernsteinPoly b;
    b.poly = p.monic();
    Factorization f = factor(b.poly);
    b.factorization = f.factors;
    b.factorization_complete = f.complete;
    for (const auto& [fac, mult] : f.factors)
        if (fac.degree() == 1)
            b.rational_roots.emplace_back(-fac.coeff(0), mult);
    std::sort(b.rational_roots.begin(), b.rational_roots.end(),
              [](const auto& a, const auto& c) { return a.first < c.first; });
    return b;
}

BernsteinPoly bernstein(const AbModule& e, const FixedPointOptions& opt) {
    if (e.rank() == 0) return make_bernstein(RationalPolynomial::constant(Rational(1)));
    return with_precision_retry(e, opt, [&](const AbModule& m) {
        QMatrix t = saturate(m, opt).module.residue_endomorphism();
        return make_bernstein(minimal_polynomial(-t));
    });
}

BernsteinPoly dual_bernstein(const AbModule& e, const FixedPointOptions& opt) {
    if (e.rank() == 0) return make_bernstein(RationalPolynomial::constant(Rational(1)));
    return with_precision_retry(e, opt, [&](const AbModule& m) {
        SubModuleResult f = biggest_simple_pole_sub(m, opt);
        QMatrix t = f.module.residue_endomorphism();
        return make_bernstein(minimal_polynomial(-t));
    });
}

SpectralClasses spectral_classes(const BernsteinPoly& p, long shift_bound) {
    SpectralClasses out;
    out.factorization_complete = p.factorization_complete;
    std::map<Rational, std::vector<std::pair<Rational, int>>> by_class;
    for (const auto& [root, mult] : p.rational_roots)
        by_class[frac_part(root)].emplace_back(root, mult);
    for (auto& [rep, roots] : by_class) {
        std::sort(roots.begin(), roots.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        out.rational.push_back(RationalSpectralClass{rep, roots});
    }
    // nonlinear irreducible factors: group under z -> z - m for bounded |m|
    std::vector<std::pair<RationalPolynomial, int>> pending;
    for (const auto& f : p.factorization)
        if (f.first.degree() > 1) pending.push_back(f);
    while (!pending.empty()) {
        SymbolicSpectralClass cls;
        cls.factors.push_back(pending.front());
        RationalPolynomial rep = pending.front().first;
        pending.erase(pending.begin());
        long bound = shift_bound;
        if (bound == 0) {
            mpz_class height(1);
            for (const auto& c : rep.coeffs()) {
                mpz_class h = abs(c.get_num());
                if (h > height) height = h;
                if (abs(c.get_den()) > height) height = abs(c.get_den());
            }
            bound = rep.degree() *
                    (height.fits_slong_p() ? height.get_si() : 1000);
        }
        for (auto it = pending.begin(); it != pending.end();) {
            bool matched = false;
            for (long m = -bound; m <= bound && !matched; ++m) {
                if (it->first.compose_affine(Rational(1), Rational(-m)) == rep)
                    matched = true;
            }
            if (matched) {
                cls.factors.push_back(*it);
                it = pending.erase(it);
            } else {
                ++it;
            }
        }
        out.symbolic.push_back(std::move(cls));
    }
    return out;
}

PolePredictionReport pole_prediction(const AbModule& e, int n,
                                     const FixedPointOptions& opt) {
    PolePredictionReport report;
    report.n = n;
    report.bernstein = bernstein(e, opt);
    SpectralClasses classes = spectral_classes(report.bernstein);
    for (const auto& cls : classes.rational) {
        PolePrediction p;
        p.class_rep = cls.class_rep;
        p.alpha = cls.smallest();
        p.multiplicity = cls.roots.front().second;
        p.pole_location = Rational(-n) - p.alpha;
        p.pole_order_lower_bound = p.multiplicity;
        report.predictions.push_back(std::move(p));
    }
    report.symbolic_class_count = static_cast<int>(classes.symbolic.size());
    return report;
}

std::vector<SeriesVector> jordan_chain_lift(const AbModule& f, const Rational& beta,
                                            int d) {
    if (!f.is_simple_pole()) throw NotSimplePole();
    if (d < 1) throw Error("jordan_chain_lift: d must be >= 1");
    int k = f.rank();
    QMatrix t = f.residue_endomorphism();
    RationalPolynomial charpoly = characteristic_polynomial(t);
    // minimality in the class mod Z: no eigenvalue beta - m with m >= 1
    for (const auto& [root, mult] : rational_roots(charpoly)) {
        Rational diff = beta - root;
        if (is_integer(diff) && diff >= 1)
            throw NotMinimalInClass("eigenvalue " + rat_to_string(root) +
                                    " below beta = " + rat_to_string(beta));
    }
    // Jordan block of size >= d at beta:
    // rank (T-beta)^{d-1} - rank (T-beta)^d >= 1, plus beta an eigenvalue
    QMatrix shifted = t;
    for (int i = 0; i < k; ++i) shifted.at(i, i) -= beta;
    std::vector<QMatrix> powers;  // (T-beta)^j, j = 0..d
    powers.push_back(QMatrix::identity(k));
    for (int j = 1; j <= d; ++j) powers.push_back(shifted * powers.back());
    if (powers[1].rank() == k)
        throw NoSuchBlock("beta = " + rat_to_string(beta) + " is not an eigenvalue");
    int blocks_ge_d = powers[static_cast<size_t>(d - 1)].rank() -
                      powers[static_cast<size_t>(d)].rank();
    if (blocks_ge_d < 1)
        throw NoSuchBlock("largest Jordan block at beta = " + rat_to_string(beta) +
                          " is smaller than " + std::to_string(d));
    // chain seed: v in ker (T-beta)^d, v not in ker (T-beta)^{d-1};
    // u_j = (T-beta)^{d-j} v
    std::vector<Rational> seed;
    {
        auto ker = kernel_basis(powers[static_cast<size_t>(d)]);
        for (const auto& v : ker) {
            if (!vec_is_zero_rat(powers[static_cast<size_t>(d - 1)].apply(v))) {
                seed = v;
                break;
            }
        }
        if (seed.empty()) throw NoSuchBlock("no chain seed found");
    }
    std::vector<std::vector<std::vector<Rational>>> u(
        static_cast<size_t>(d) + 1);  // u[j][m], j = 0..d
    int orders = f.trunc() - 1;  // C(b) carries trunc - 1 coefficient orders
    for (int j = 0; j <= d; ++j)
        u[static_cast<size_t>(j)].assign(static_cast<size_t>(orders),
                                         std::vector<Rational>(static_cast<size_t>(k),
                                                               Rational(0)));
    for (int j = 1; j <= d; ++j)
        u[static_cast<size_t>(j)][0] = powers[static_cast<size_t>(d - j)].apply(seed);
    // order-by-order correction: (T + m - beta) u_j^{(m)} =
    //     u_{j-1}^{(m)} - sum_{p=1}^{m} C_p u_j^{(m-p)}
    std::vector<QMatrix> cp(static_cast<size_t>(orders), QMatrix(k, k));
    for (int p = 0; p < orders; ++p)
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                cp[static_cast<size_t>(p)].at(i, j) = f.a_matrix().at(i, j).coeff(p + 1);
    for (int m = 1; m < orders; ++m) {
        QMatrix op = t;
        for (int i = 0; i < k; ++i) op.at(i, i) += Rational(m) - beta;
        for (int j = 1; j <= d; ++j) {
            std::vector<Rational> rhs = u[static_cast<size_t>(j - 1)][static_cast<size_t>(m)];
            for (int p = 1; p <= m; ++p) {
                auto contrib = cp[static_cast<size_t>(p)].apply(
                    u[static_cast<size_t>(j)][static_cast<size_t>(m - p)]);
                for (int i = 0; i < k; ++i)
                    rhs[static_cast<size_t>(i)] -= contrib[static_cast<size_t>(i)];
            }
            auto sol = solve_linear(op, rhs);
            if (!sol)
                throw Error("jordan_chain_lift: obstruction operator unexpectedly singular");
            u[static_cast<size_t>(j)][static_cast<size_t>(m)] = std::move(*sol);
        }
    }
    std::vector<SeriesVector> chain;
    for (int j = 1; j <= d; ++j) {
        SeriesVector e;
        for (int i = 0; i < k; ++i) {
            Series s(f.trunc());
            for (int m = 0; m < orders; ++m)
                s.set_coeff(m, u[static_cast<size_t>(j)][static_cast<size_t>(m)]
                                 [static_cast<size_t>(i)]);
            e.push_back(std::move(s));
        }
        chain.push_back(std::move(e));
    }
    return chain;
}

std::vector<SeriesVector> jordan_chain_residuals(const AbModule& f, const Rational& beta,
                                                 const std::vector<SeriesVector>& chain) {
    std::vector<SeriesVector> out;
    Series bb = Series::monomial(Rational(1), 1, f.trunc());
    for (size_t j = 0; j < chain.size(); ++j) {
        SeriesVector res = f.apply_a(chain[j]);
        SeriesVector term = vec_scale(chain[j], bb * Series(beta, f.trunc()));
        res = vec_sub(res, term);
        if (j > 0) res = vec_sub(res, vec_scale(chain[j - 1], bb));
        out.push_back(std::move(res));
    }
    return out;
}

bool is_regular(const AbModule& e, const FixedPointOptions& opt) {
    try {
        saturate(e, opt);
        return true;
    } catch (const NotRegular&) {
        return false;
    }
}

}  // namespace abmod
