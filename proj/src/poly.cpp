#include "abmod/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "abmod/errors.hpp"

namespace abmod {

RationalPolynomial::RationalPolynomial(std::vector<Rational> coeffs)
    : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(Rational(0));
    normalize();
}

void RationalPolynomial::normalize() {
    while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
}

RationalPolynomial RationalPolynomial::constant(Rational c) {
    return RationalPolynomial({std::move(c)});
}

RationalPolynomial RationalPolynomial::linear_from_root(const Rational& root) {
    return RationalPolynomial({-root, Rational(1)});
}

const Rational& RationalPolynomial::coeff(int i) const {
    static const Rational zero(0);
    if (i < 0 || i >= static_cast<int>(coeffs_.size())) return zero;
    return coeffs_[i];
}

RationalPolynomial RationalPolynomial::operator+(const RationalPolynomial& o) const {
    std::vector<Rational> c(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
    for (size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
    for (size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
    return RationalPolynomial(std::move(c));
}

RationalPolynomial RationalPolynomial::operator-(const RationalPolynomial& o) const {
    std::vector<Rational> c(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
    for (size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
    for (size_t i = 0; i < o.coeffs_.size(); ++i) c[i] -= o.coeffs_[i];
    return RationalPolynomial(std::move(c));
}

RationalPolynomial RationalPolynomial::operator*(const RationalPolynomial& o) const {
    if (is_zero() || o.is_zero()) return RationalPolynomial();
    std::vector<Rational> c(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (size_t j = 0; j < o.coeffs_.size(); ++j)
            c[i + j] += coeffs_[i] * o.coeffs_[j];
    }
    return RationalPolynomial(std::move(c));
}

RationalPolynomial RationalPolynomial::operator*(const Rational& s) const {
    std::vector<Rational> c(coeffs_);
    for (auto& x : c) x *= s;
    return RationalPolynomial(std::move(c));
}

bool RationalPolynomial::operator==(const RationalPolynomial& o) const {
    return coeffs_ == o.coeffs_;
}

std::pair<RationalPolynomial, RationalPolynomial>
RationalPolynomial::divmod(const RationalPolynomial& d) const {
    if (d.is_zero()) throw Error("polynomial division by zero");
    std::vector<Rational> rem(coeffs_);
    int dd = d.degree();
    int qd = degree() - dd;
    if (qd < 0) return {RationalPolynomial(), *this};
    std::vector<Rational> quot(static_cast<size_t>(qd) + 1, Rational(0));
    for (int i = qd; i >= 0; --i) {
        Rational q = rem[static_cast<size_t>(i + dd)] / d.leading();
        quot[static_cast<size_t>(i)] = q;
        if (q == 0) continue;
        for (int j = 0; j <= dd; ++j)
            rem[static_cast<size_t>(i + j)] -= q * d.coeffs_[static_cast<size_t>(j)];
    }
    return {RationalPolynomial(std::move(quot)), RationalPolynomial(std::move(rem))};
}

bool RationalPolynomial::divides(const RationalPolynomial& divisor) const {
    return divmod(divisor).second.is_zero();
}

RationalPolynomial RationalPolynomial::derivative() const {
    if (degree() == 0) return RationalPolynomial();
    std::vector<Rational> c(coeffs_.size() - 1);
    for (size_t i = 1; i < coeffs_.size(); ++i) c[i - 1] = coeffs_[i] * static_cast<long>(i);
    return RationalPolynomial(std::move(c));
}

RationalPolynomial RationalPolynomial::monic() const {
    if (is_zero()) return *this;
    return *this * (Rational(1) / leading());
}

Rational RationalPolynomial::evaluate(const Rational& z) const {
    Rational acc(0);
    for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * z + coeffs_[i];
    return acc;
}

RationalPolynomial RationalPolynomial::compose_affine(const Rational& alpha,
                                                      const Rational& beta) const {
    RationalPolynomial arg({beta, alpha});
    RationalPolynomial acc;
    for (size_t i = coeffs_.size(); i-- > 0;)
        acc = acc * arg + RationalPolynomial::constant(coeffs_[i]);
    return acc;
}

std::string RationalPolynomial::to_string(const std::string& var) const {
    std::ostringstream out;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rational& c = coeff(i);
        if (c == 0 && !(first && i == 0)) continue;
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        Rational a = abs(c);
        if (i == 0) {
            out << rat_to_string(a);
        } else {
            if (a != 1) out << rat_to_string(a) << "*";
            out << var;
            if (i > 1) out << "^" << i;
        }
    }
    return out.str();
}

RationalPolynomial poly_gcd(RationalPolynomial a, RationalPolynomial b) {
    while (!b.is_zero()) {
        RationalPolynomial r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

RationalPolynomial poly_lcm(const RationalPolynomial& a, const RationalPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return RationalPolynomial();
    RationalPolynomial g = poly_gcd(a, b);
    return (a * b).divmod(g).first.monic();
}

std::vector<std::pair<RationalPolynomial, int>>
squarefree_decomposition(const RationalPolynomial& p) {
    std::vector<std::pair<RationalPolynomial, int>> out;
    if (p.degree() < 1) return out;
    RationalPolynomial f = p.monic();
    RationalPolynomial g = poly_gcd(f, f.derivative());
    RationalPolynomial w = f.divmod(g).first;  // product of distinct factors
    int i = 1;
    while (w.degree() > 0) {
        RationalPolynomial y = poly_gcd(w, g);
        RationalPolynomial s = w.divmod(y).first;
        if (s.degree() > 0) out.emplace_back(s.monic(), i);
        w = std::move(y);
        g = g.divmod(w).first;
        ++i;
    }
    return out;
}

namespace {

// Clear denominators: smallest positive integer multiple with integer coeffs,
// divided by content.
std::vector<mpz_class> primitive_integer_model(const RationalPolynomial& p) {
    mpz_class den(1);
    for (const auto& c : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<mpz_class> out;
    out.reserve(p.coeffs().size());
    mpz_class content(0);
    for (const auto& c : p.coeffs()) {
        mpz_class v = c.get_num() * (den / c.get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
        out.push_back(std::move(v));
    }
    if (content != 0)
        for (auto& v : out) v /= content;
    return out;
}

mpz_class pollard_rho(const mpz_class& n) {
    // n odd composite, no factor below the trial-division bound
    for (unsigned long c = 1;; ++c) {
        mpz_class x(2), y(2), d(1);
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            mpz_class diff = x - y;
            if (diff == 0) break;  // cycle without factor: retry with next c
            d = gcd(abs(diff), n);
        }
        if (d > 1 && d < n) return d;
    }
}

void factor_integer(mpz_class a, std::map<mpz_class, int>& out) {
    for (unsigned long p = 2; p < 100000 && a > 1; p = (p == 2 ? 3 : p + 2)) {
        if (mpz_class(p) * p > a) break;
        while (mpz_divisible_ui_p(a.get_mpz_t(), p)) {
            ++out[mpz_class(p)];
            a /= static_cast<long>(p);
        }
    }
    if (a == 1) return;
    if (mpz_probab_prime_p(a.get_mpz_t(), 40)) {
        ++out[a];
        return;
    }
    mpz_class d = pollard_rho(a);
    factor_integer(d, out);
    factor_integer(a / d, out);
}

std::vector<mpz_class> divisors_of(const mpz_class& n, size_t cap) {
    mpz_class a = abs(n);
    if (a == 0) return {};  // caller avoids evaluation points with value 0
    std::map<mpz_class, int> primes;
    factor_integer(a, primes);
    std::vector<mpz_class> out = {mpz_class(1)};
    for (const auto& [p, e] : primes) {
        size_t base = out.size();
        if (base * (static_cast<size_t>(e) + 1) > cap) return {};
        mpz_class pw(1);
        for (int i = 1; i <= e; ++i) {
            pw *= p;
            for (size_t j = 0; j < base; ++j) out.push_back(out[j] * pw);
        }
    }
    return out;
}

}  // namespace

std::vector<std::pair<Rational, int>> rational_roots(const RationalPolynomial& p) {
    std::vector<std::pair<Rational, int>> out;
    if (p.degree() < 1) return out;
    std::vector<mpz_class> z = primitive_integer_model(p);
    // strip trailing zero constant: root 0
    RationalPolynomial work = p.monic();
    int zero_mult = 0;
    while (work.coeff(0) == 0 && work.degree() > 0) {
        work = work.divmod(RationalPolynomial({Rational(0), Rational(1)})).first;
        ++zero_mult;
    }
    if (zero_mult > 0) out.emplace_back(Rational(0), zero_mult);
    if (work.degree() < 1) return out;
    z = primitive_integer_model(work);
    const mpz_class& a0 = z.front();
    const mpz_class& an = z.back();
    auto ps = divisors_of(a0, 4096);
    auto qs = divisors_of(an, 4096);
    std::vector<Rational> candidates;
    for (const auto& pn : ps)
        for (const auto& qn : qs) {
            Rational r(pn, qn);
            r.canonicalize();
            candidates.push_back(r);
            candidates.push_back(-r);
        }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const auto& cand : candidates) {
        if (work.evaluate(cand) != 0) continue;
        int mult = 0;
        RationalPolynomial lin = RationalPolynomial::linear_from_root(cand);
        while (work.evaluate(cand) == 0 && work.degree() > 0) {
            work = work.divmod(lin).first;
            ++mult;
        }
        out.emplace_back(cand, mult);
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

namespace {

// Kronecker factor search on a squarefree integer polynomial with no rational
// roots.  Returns a proper monic rational factor, or nothing.
bool kronecker_split(const RationalPolynomial& f, RationalPolynomial& factor_out,
                     bool& budget_ok) {
    std::vector<mpz_class> zc = primitive_integer_model(f);
    RationalPolynomial zf(([&] {
        std::vector<Rational> c;
        for (auto& v : zc) c.emplace_back(v);
        return c;
    })());
    int n = zf.degree();
    for (int d = 2; d <= n / 2; ++d) {
        // evaluation points 0, 1, -1, 2, -2, ...
        std::vector<Rational> pts;
        for (int i = 0; static_cast<int>(pts.size()) <= d; ++i) {
            int ncand = i == 0 ? 1 : 2;  // +0 and -0 coincide
            Rational candidates[2] = {Rational(i), Rational(-i)};
            for (int c = 0; c < ncand; ++c) {
                const Rational& x = candidates[c];
                if (static_cast<int>(pts.size()) > d) break;
                if (zf.evaluate(x) == 0) continue;  // no rational roots expected anyway
                pts.push_back(x);
            }
        }
        std::vector<std::vector<mpz_class>> divs;
        size_t combos = 1;
        bool feasible = true;
        for (const auto& x : pts) {
            auto dv = divisors_of(mpz_class(zf.evaluate(x).get_num()), 48);
            if (dv.empty()) { feasible = false; break; }
            combos *= dv.size() * 2;
            if (combos > 200000) { feasible = false; break; }
            divs.push_back(std::move(dv));
        }
        if (!feasible) { budget_ok = false; continue; }
        // enumerate signed divisor tuples, Lagrange-interpolate, test division
        std::vector<size_t> idx(pts.size(), 0);
        std::vector<int> sign(pts.size(), 1);
        auto advance = [&]() -> bool {
            for (size_t i = 0; i < pts.size(); ++i) {
                if (sign[i] == 1) { sign[i] = -1; return true; }
                sign[i] = 1;
                if (++idx[i] < divs[i].size()) return true;
                idx[i] = 0;
            }
            return false;
        };
        do {
            // Lagrange interpolation through (pts[i], sign[i]*divs[i][idx[i]])
            RationalPolynomial cand;
            for (size_t i = 0; i < pts.size(); ++i) {
                RationalPolynomial basis = RationalPolynomial::constant(
                    Rational(sign[i]) * Rational(divs[i][idx[i]]));
                for (size_t j = 0; j < pts.size(); ++j) {
                    if (i == j) continue;
                    basis = basis * RationalPolynomial({-pts[j], Rational(1)}) *
                            (Rational(1) / (pts[i] - pts[j]));
                }
                cand = cand + basis;
            }
            if (cand.degree() != d) continue;
            RationalPolynomial m = cand.monic();
            if (zf.divides(m)) {
                factor_out = m;
                return true;
            }
        } while (advance());
    }
    return false;
}

void factor_squarefree(const RationalPolynomial& f, int mult, Factorization& out) {
    RationalPolynomial work = f.monic();
    for (const auto& [root, m] : rational_roots(work)) {
        RationalPolynomial lin = RationalPolynomial::linear_from_root(root);
        out.factors.emplace_back(lin, mult);  // m == 1 for squarefree input
        for (int i = 0; i < m; ++i) work = work.divmod(lin).first;
    }
    while (work.degree() >= 2) {
        RationalPolynomial piece;
        bool budget_ok = true;
        if (work.degree() >= 4 && kronecker_split(work, piece, budget_ok)) {
            out.factors.emplace_back(piece, mult);
            work = work.divmod(piece).first.monic();
            continue;
        }
        if (!budget_ok) out.complete = false;
        out.factors.emplace_back(work, mult);
        break;
    }
}

}  // namespace

Factorization factor(const RationalPolynomial& p) {
    Factorization out;
    if (p.degree() < 1) return out;
    for (const auto& [sf, mult] : squarefree_decomposition(p))
        factor_squarefree(sf, mult, out);
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        return a.first.coeffs() < b.first.coeffs();
    });
    return out;
}

}  // namespace abmod
