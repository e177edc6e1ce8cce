// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "abmod/constructors.hpp"
#include "abmod/duality.hpp"
#include "abmod/errors.hpp"
#include "abmod/io.hpp"
#include "saturation_oracle.hpp"

using namespace abmod;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& what) {
    std::cout << "criterion " << criterion << ": " << (ok ? "PASS" : "FAIL") << " - "
              << what << std::endl;
    if (!ok) ++failures;
}

RationalPolynomial poly(std::initializer_list<long> coeffs) {
    std::vector<Rational> c;
    for (long v : coeffs) c.emplace_back(v);
    return RationalPolynomial(std::move(c));
}

AbModule make_e2(int trunc = 18) {
    SeriesMatrix a(2, 2, trunc);
    a.set(0, 1, Series::monomial(Rational(1), 2, trunc));
    a.set(1, 0, Series::one(trunc));
    return AbModule(a);
}

// Nondecreasing exponent tuples with 2 <= a_i <= 25, n <= 4, milnor <= 24.
std::vector<PhamSpec> pham_sweep() {
    std::vector<PhamSpec> out;
    std::vector<int> cur;
    auto milnor = [](const std::vector<int>& e) {
        long m = 1;
        for (int x : e) m *= x - 1;
        return m;
    };
    std::function<void(int)> rec = [&](int lo) {
        if (!cur.empty()) out.push_back(PhamSpec{cur});
        if (cur.size() == 4) return;
        for (int a = lo; a <= 25; ++a) {
            cur.push_back(a);
            if (milnor(cur) <= 24)
                rec(a);
            cur.pop_back();
            if (milnor({a}) > 24) break;
        }
    };
    rec(2);
    return out;
}

bool identity_inclusion(const SubModuleResult& r, int rank) {
    if (r.inclusion_shift != 0 || !r.full_rank) return false;
    Lattice l = Lattice::from_matrix(r.inclusion, r.inclusion_shift);
    return l == Lattice::standard(rank, l.prec());
}

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& cmd) {
    std::string full = cmd + " 2>&1";
    FILE* pipe = popen(full.c_str(), "r");
    if (!pipe) return {127, ""};
    std::string out;
    std::array<char, 4096> buf{};
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli = argc > 1 ? argv[1] : "";

    // 1: quasi-homogeneous exactness on the three small Pham-Brieskorn modules
    {
        auto t0 = std::chrono::steady_clock::now();
        bool ok = bernstein(pham(PhamSpec{{2, 2}})).poly == poly({1, 1});
        ok = ok && bernstein(pham(PhamSpec{{2, 3}})).poly ==
                       poly({5, 6}).monic() * poly({7, 6}).monic();
        ok = ok && bernstein(pham(PhamSpec{{3, 3}})).poly ==
                       poly({2, 3}).monic() * poly({1, 1}) * poly({4, 3}).monic();
        auto dt = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        ok = ok && dt < 3000;
        report(1, ok, "pham(2,2)/(2,3)/(3,3) Bernstein polynomials exact (" +
                          std::to_string(dt) + " ms)");
    }

    std::vector<PhamSpec> sweep = pham_sweep();
    struct SweepData {
        PhamSpec spec;
        AbModule module;
        BernsteinPoly b;
        BernsteinPoly bs;
    };
    std::vector<SweepData> sd;
    auto sweep_t0 = std::chrono::steady_clock::now();
    for (const PhamSpec& spec : sweep) {
        AbModule p = pham(spec);
        sd.push_back(SweepData{spec, p, bernstein(p), dual_bernstein(p)});
    }
    auto sweep_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - sweep_t0)
                        .count();

    // 2: F = E = saturation and bernstein = dual_bernstein across the sweep
    {
        bool ok = !sd.empty() && sweep_ms < 400000;
        for (const SweepData& d : sd) {
            SubModuleResult sat = saturate(d.module);
            SubModuleResult f = biggest_simple_pole_sub(d.module);
            ok = ok && identity_inclusion(sat, d.module.rank()) &&
                 identity_inclusion(f, d.module.rank()) && d.b.poly == d.bs.poly;
            if (!ok) break;
        }
        report(2, ok, "F = E = saturation on " + std::to_string(sd.size()) +
                          " quasi-homogeneous modules with rank <= 24 (" +
                          std::to_string(sweep_ms) + " ms for both polynomials)");
    }

    // 3: all Bernstein roots strictly inside (-n, 0)
    {
        bool ok = true;
        for (const SweepData& d : sd)
            for (const auto& [root, mult] : d.b.rational_roots)
                ok = ok && root > Rational(-d.spec.n()) && root < 0;
        report(3, ok, "all rational Bernstein roots lie strictly in (-n, 0)");
    }

    // 4: reflection formula with delta = n on the sweep and delta = 0 on the
    //    rank-2 synthetic module, whose polynomials are reproduced against the
    //    flat linear-algebra oracle at two precisions
    {
        bool ok = true;
        for (const SweepData& d : sd)
            ok = ok && reflection_check(d.b, d.bs, Rational(d.spec.n()));
        for (int n : {20, 40}) {
            AbModule e2 = make_e2(n);
            abmod_test::OracleResult oracle = abmod_test::oracle_bernstein(e2, 4);
            ok = ok && oracle.bernstein == poly({-1, -1, 1});
            ok = ok && bernstein(e2).poly == oracle.bernstein;
            ok = ok && dual_bernstein(e2).poly == poly({-1, 1, 1});
        }
        ok = ok && reflection_check(bernstein(make_e2()), dual_bernstein(make_e2()),
                                    Rational(0));
        report(4, ok, "reflection formula (delta = n on the sweep, delta = 0 on the "
                      "oracle-verified rank-2 module)");
    }

    // 5: Hom of simple poles is a simple pole, 200 seeded random pairs
    {
        auto t0 = std::chrono::steady_clock::now();
        bool ok = true;
        for (int c = 0; c < 200; ++c) {
            unsigned long s = 1000 + 13ul * static_cast<unsigned long>(c);
            int re = 1 + static_cast<int>(s % 3);
            int rf = 1 + static_cast<int>((s / 5) % 3);
            int t = default_trunc(3);
            AbModule e = random_simple_pole(re, s, t);
            AbModule f = random_simple_pole(rf, s + 7, t);
            ok = ok && hom_ab(e, f).is_simple_pole();
        }
        auto dt = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        ok = ok && dt < 60000;
        report(5, ok, "200 random simple-pole pairs: Hom has A(0) = 0 (" +
                          std::to_string(dt) + " ms)");
    }

    // 6: bidual isomorphism on 50 seeded random regular modules, delta 0..2
    {
        bool ok = true;
        for (int c = 0; c < 50 && ok; ++c) {
            unsigned long s = 5000 + 17ul * static_cast<unsigned long>(c);
            int k = 1 + static_cast<int>(s % 3);
            AbModule e = random_regular(k, s);
            for (int delta = 0; delta <= 2; ++delta)
                ok = ok && verify_bidual(e, Rational(delta));
        }
        report(6, ok, "bidual isomorphism and Bernstein invariance on 50 random "
                      "regular modules, delta in {0,1,2}");
    }

    // 7: sandwich F within E within saturation, and idempotence, 200 modules
    {
        bool ok = true;
        for (int c = 0; c < 200 && ok; ++c) {
            unsigned long s = 9000 + 29ul * static_cast<unsigned long>(c);
            int k = 1 + static_cast<int>(s % 4);
            AbModule e = random_regular(k, s);
            SubModuleResult f = biggest_simple_pole_sub(e);
            SubModuleResult sat = saturate(e);
            Lattice lf = Lattice::from_matrix(f.inclusion, f.inclusion_shift);
            Lattice ls = Lattice::from_matrix(sat.inclusion, sat.inclusion_shift);
            int prec = std::min(lf.prec(), ls.prec());
            Lattice le = Lattice::standard(e.rank(), prec);
            ok = ok && le.contains_lattice(lf.with_prec(prec));
            ok = ok && ls.with_prec(prec).contains_lattice(le);
            SubModuleResult sat2 = saturate(sat.module);
            ok = ok && sat2.iterations == 0 && sat2.module == sat.module;
            SubModuleResult f2 = biggest_simple_pole_sub(f.module);
            ok = ok && f2.module == f.module;
        }
        report(7, ok, "sandwich and idempotence on 200 random regular modules of "
                      "rank <= 4");
    }

    // 8: predicted pole -delta - alpha equals the biggest dual-Bernstein root
    //    in its class, on certified self-dual instances
    {
        bool ok = true;
        auto class_check = [&](const BernsteinPoly& b, const BernsteinPoly& bs,
                               const Rational& delta) {
            if (!reflection_check(b, bs, delta)) return false;
            SpectralClasses cb = spectral_classes(b);
            SpectralClasses cs = spectral_classes(bs);
            for (const auto& cls : cb.rational) {
                Rational alpha = cls.smallest();
                Rational pole = -delta - alpha;
                bool matched = false;
                for (const auto& dcls : cs.rational)
                    if (dcls.class_rep == frac_part(pole))
                        matched = dcls.biggest() == pole;
                if (!matched) return false;
            }
            return true;
        };
        // full search certification where the Hom rank is small, reflection
        // certification across the rest of the sweep
        for (const SweepData& d : sd) {
            Rational delta(d.spec.n());
            if (d.module.rank() <= 3) {
                auto cert = find_self_duality(d.module, delta);
                ok = ok && cert.has_value() && cert->checks.ok();
            }
            ok = ok && class_check(d.b, d.bs, delta);
        }
        AbModule e2 = make_e2(16);
        auto cert = find_self_duality(e2, Rational(0));
        ok = ok && cert.has_value();
        ok = ok && class_check(bernstein(e2), dual_bernstein(e2), Rational(0));
        report(8, ok, "pole location -delta-alpha matches the biggest dual root per "
                      "class on all certified self-dual instances");
    }

    // 9: Jordan chain lifting on jordan modules, perturbations, minimality
    {
        bool ok = true;
        std::vector<Rational> betas = {make_rational(1, 2), make_rational(-3, 4),
                                       Rational(1)};
        std::mt19937_64 rng(77);
        for (const Rational& beta : betas) {
            for (int d = 1; d <= 3 && ok; ++d) {
                AbModule j = jordan_module(beta, d);
                auto check_chain = [&](const AbModule& m) {
                    auto chain = jordan_chain_lift(m, beta, d);
                    if (static_cast<int>(chain.size()) != d) return false;
                    for (const auto& r : jordan_chain_residuals(m, beta, chain))
                        if (!vec_is_zero(r)) return false;
                    return true;
                };
                ok = ok && check_chain(j);
                for (int p = 0; p < 10 && ok; ++p) {
                    SeriesMatrix a = j.a_matrix();
                    for (int i = 0; i < d; ++i)
                        for (int jj = 0; jj < d; ++jj)
                            if (rng() % 2 == 0) {
                                long c = static_cast<long>(rng() % 5) - 2;
                                int pw = 2 + static_cast<int>(rng() % 2);
                                a.set(i, jj,
                                      a.at(i, jj) +
                                          Series::monomial(Rational(c), pw, a.trunc()));
                            }
                    ok = ok && check_chain(AbModule(a));
                }
                // a perturbation that injects the eigenvalue beta - 1
                AbModule badsum =
                    direct_sum(j, e_lambda(beta - 1, j.trunc()));
                bool threw = false;
                try {
                    jordan_chain_lift(badsum, beta, d);
                } catch (const NotMinimalInClass&) {
                    threw = true;
                }
                ok = ok && threw;
            }
        }
        report(9, ok, "chains lift with exactly zero residuals on 9 Jordan modules "
                      "and 90 perturbations; minimality violations raise");
    }

    // 10: determinism of reports and 1000 description round trips
    {
        bool ok = true;
        for (int c = 0; c < 1000; ++c) {
            unsigned long s = 100000 + static_cast<unsigned long>(c);
            int k = 1 + static_cast<int>(s % 3);
            AbModule m = random_simple_pole(k, s, 10);
            ModuleDescription d =
                ModuleDescription::from_module(m, "case" + std::to_string(c));
            std::string text = print_module_description(d);
            ModuleDescription back = parse_module_description(text);
            ok = ok && print_module_description(back) == text &&
                 back.to_module() == m;
        }
        std::string detail = "1000 parse/print round trips";
        if (!cli.empty()) {
            std::string dir = "acceptance_tmp";
            run("mkdir -p " + dir);
            run(cli + " gen --pham 3,3 -o " + dir + "/p33.abmod");
            std::ofstream(dir + "/e2.abmod")
                << "abmod/1\nrank: 2\ntruncation: 18\nname: E2\na_matrix:\n"
                   "0 ; b^2\n1 ; 0\n";
            std::vector<std::string> cmds = {
                cli + " info " + dir + "/e2.abmod",
                cli + " bernstein " + dir + "/e2.abmod",
                cli + " bernstein " + dir + "/e2.abmod --dual",
                cli + " bernstein " + dir + "/p33.abmod",
                cli + " poles " + dir + "/p33.abmod --n 2",
                cli + " check " + dir + "/e2.abmod --suite all",
                cli + " check --random 3 5 20 --suite lemma32",
                cli + " gen --jordan 1/2,2",
            };
            for (const auto& cmd : cmds) {
                RunResult a = run(cmd);
                RunResult b = run(cmd);
                ok = ok && a.output == b.output && a.exit_code == b.exit_code;
            }
            detail += " and byte-identical reports across repeated runs of every "
                      "command";
        }
        report(10, ok, detail);
    }

    std::cout << (failures == 0 ? "acceptance: ALL PASS" : "acceptance: FAILURES")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
