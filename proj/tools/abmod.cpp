// Command-line surface for the (a,b)-module library: parse module
// descriptions, run the computations, and emit deterministic reports.
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "abmod/constructors.hpp"
#include "abmod/duality.hpp"
#include "abmod/errors.hpp"
#include "abmod/io.hpp"

namespace {

using namespace abmod;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInconclusive = 2;

// Deterministic key/value report: identical inputs and flags produce
// byte-identical output.
struct Report {
    std::ostringstream out;
    explicit Report(const std::string& command) {
        out << "abmod-report/1\n";
        add("command", command);
    }
    void add(const std::string& key, const std::string& value) {
        out << key << ": " << value << "\n";
    }
    void add(const std::string& key, long value) { add(key, std::to_string(value)); }
    void add(const std::string& key, int value) { add(key, static_cast<long>(value)); }
    void add(const std::string& key, bool value) {
        add(key, std::string(value ? "true" : "false"));
    }
    void emit() const { std::cout << out.str(); }
};

struct CommonOptions {
    int trunc = 0;     // 0: rank default
    int max_iter = 0;  // 0: rank default
    FixedPointOptions fixed_point() const {
        FixedPointOptions opt;
        opt.iteration_cap = max_iter;
        return opt;
    }
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--trunc", opts.trunc, "working precision in powers of b (0: 4*rank+10)");
    cmd->add_option("--max-iter", opts.max_iter, "fixed-point iteration cap (0: 2*rank+4)");
}

struct LoadedModule {
    AbModule module;
    std::string digest;
    std::string name;
};

LoadedModule load(const std::string& path, const CommonOptions& opts) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw Error("cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << probe.rdbuf();
    std::string bytes = buf.str();
    ModuleDescription d = parse_module_description(bytes);
    AbModule m = d.to_module();
    if (opts.trunc > 0) m = m.with_trunc(opts.trunc);
    return {std::move(m), content_digest(bytes), d.name};
}

void add_module_header(Report& rep, const LoadedModule& lm, const CommonOptions& opts) {
    rep.add("input_digest", lm.digest);
    if (!lm.name.empty()) rep.add("name", lm.name);
    rep.add("rank", lm.module.rank());
    rep.add("precision", lm.module.trunc());
    rep.add("iteration_cap",
            opts.max_iter > 0 ? opts.max_iter : 2 * lm.module.rank() + 4);
}

std::string poly_coeff_list(const RationalPolynomial& p) {
    std::string s = "[";
    for (int i = 0; i <= p.degree(); ++i) {
        if (i) s += ", ";
        s += rat_to_string(p.coeff(i));
    }
    return s + "]";
}

void add_bernstein(Report& rep, const std::string& prefix, const BernsteinPoly& b) {
    rep.add(prefix, b.poly.to_string());
    rep.add(prefix + "_coeffs", poly_coeff_list(b.poly));
    for (size_t i = 0; i < b.factorization.size(); ++i)
        rep.add(prefix + "_factor_" + std::to_string(i),
                "(" + b.factorization[i].first.to_string() + ")^" +
                    std::to_string(b.factorization[i].second));
    for (size_t i = 0; i < b.rational_roots.size(); ++i)
        rep.add(prefix + "_root_" + std::to_string(i),
                rat_to_string(b.rational_roots[i].first) + " (mult " +
                    std::to_string(b.rational_roots[i].second) + ")");
    if (!b.factorization_complete)
        rep.add(prefix + "_caveat", std::string("factorization_budget_exhausted"));
}

// delta for which the reflection z -> -delta - z can map the roots of b onto
// the roots of b*: fixed by the degree-(r-1) coefficients.
std::optional<Rational> discover_delta(const BernsteinPoly& b, const BernsteinPoly& bs) {
    int r = b.poly.degree();
    if (r < 1 || bs.poly.degree() != r) return std::nullopt;
    return (b.poly.coeff(r - 1) + bs.poly.coeff(r - 1)) / r;
}

int cmd_info(const std::string& file, const CommonOptions& opts) {
    LoadedModule lm = load(file, opts);
    Report rep("info");
    add_module_header(rep, lm, opts);
    rep.add("simple_pole", lm.module.is_simple_pole());
    rep.add("regular", is_regular(lm.module, opts.fixed_point()));
    rep.emit();
    return kExitOk;
}

int cmd_bernstein(const std::string& file, bool dual, const CommonOptions& opts) {
    LoadedModule lm = load(file, opts);
    Report rep("bernstein");
    add_module_header(rep, lm, opts);
    rep.add("dual", dual);
    BernsteinPoly b = dual ? dual_bernstein(lm.module, opts.fixed_point())
                           : bernstein(lm.module, opts.fixed_point());
    add_bernstein(rep, "polynomial", b);
    rep.emit();
    return kExitOk;
}

int cmd_poles(const std::string& file, int n, const CommonOptions& opts) {
    LoadedModule lm = load(file, opts);
    Report rep("poles");
    add_module_header(rep, lm, opts);
    rep.add("n", n);
    PolePredictionReport pr = pole_prediction(lm.module, n, opts.fixed_point());
    add_bernstein(rep, "bernstein", pr.bernstein);
    rep.add("prediction_count", static_cast<long>(pr.predictions.size()));
    for (size_t i = 0; i < pr.predictions.size(); ++i) {
        const PolePrediction& p = pr.predictions[i];
        rep.add("prediction_" + std::to_string(i),
                "class " + rat_to_string(p.class_rep) + ": alpha " +
                    rat_to_string(p.alpha) + ", pole " +
                    rat_to_string(p.pole_location) + ", order >= " +
                    std::to_string(p.pole_order_lower_bound));
    }
    rep.add("symbolic_class_count", pr.symbolic_class_count);
    if (pr.symbolic_class_count > 0)
        rep.add("caveat", std::string("symbolic_classes_without_numeric_prediction"));
    rep.emit();
    return kExitOk;
}

int cmd_gen(const std::string& pham_arg, const std::string& jordan_arg,
            const std::string& elambda_arg, const std::string& random_arg,
            const std::string& output, const CommonOptions& opts) {
    std::optional<AbModule> m;
    std::string name;
    if (!pham_arg.empty()) {
        PhamSpec spec;
        std::stringstream ss(pham_arg);
        std::string tok;
        while (std::getline(ss, tok, ','))
            spec.exponents.push_back(std::stoi(tok));
        m = pham(spec, opts.trunc);
        name = "pham(" + pham_arg + ")";
    } else if (!jordan_arg.empty()) {
        std::stringstream ss(jordan_arg);
        std::string beta_s, d_s;
        if (!std::getline(ss, beta_s, ',') || !std::getline(ss, d_s, ','))
            throw Error("--jordan expects beta,d");
        int d = std::stoi(d_s);
        m = jordan_module(rat_from_string(beta_s), d, opts.trunc);
        name = "jordan(" + beta_s + "," + d_s + ")";
    } else if (!elambda_arg.empty()) {
        Rational lambda = rat_from_string(elambda_arg);
        m = e_lambda(lambda, opts.trunc > 0 ? opts.trunc : default_trunc(1));
        name = "elambda(" + elambda_arg + ")";
    } else if (!random_arg.empty()) {
        std::stringstream ss(random_arg);
        std::string k_s, seed_s;
        if (!std::getline(ss, k_s, ',') || !std::getline(ss, seed_s, ','))
            throw Error("--random expects k,seed");
        m = random_regular(std::stoi(k_s), std::stoul(seed_s), opts.trunc);
        name = "random(" + k_s + "," + seed_s + ")";
    } else {
        throw Error("gen: one of --pham/--jordan/--elambda/--random is required");
    }
    ModuleDescription d = ModuleDescription::from_module(*m, name);
    std::string text = print_module_description(d);
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output, std::ios::binary);
        if (!out) throw Error("cannot write file '" + output + "'");
        out << text;
    }
    return kExitOk;
}

int cmd_jordan(const std::string& file, const std::string& beta_s, int d,
               const CommonOptions& opts) {
    LoadedModule lm = load(file, opts);
    Rational beta = rat_from_string(beta_s);
    Report rep("jordan");
    add_module_header(rep, lm, opts);
    rep.add("beta", rat_to_string(beta));
    rep.add("d", d);
    SubModuleResult f = biggest_simple_pole_sub(lm.module, opts.fixed_point());
    rep.add("sub_rank", f.module.rank());
    std::vector<SeriesVector> chain = jordan_chain_lift(f.module, beta, d);
    for (size_t j = 0; j < chain.size(); ++j) {
        std::string s = "(";
        for (size_t i = 0; i < chain[j].size(); ++i) {
            if (i) s += " ; ";
            s += chain[j][i].to_string();
        }
        rep.add("chain_" + std::to_string(j + 1), s + ")");
    }
    std::vector<SeriesVector> res = jordan_chain_residuals(f.module, beta, chain);
    bool zero = true;
    for (const auto& v : res)
        if (!vec_is_zero(v)) zero = false;
    rep.add("residuals_zero", zero);
    rep.add("certified_precision", chain.empty() ? 0 : vec_trunc(chain.front()));
    rep.emit();
    return zero ? kExitOk : kExitError;
}

struct SuiteTally {
    int pass = 0, fail = 0, inconclusive = 0;
};

void run_pair_suite(const std::string& suite, const AbModule& e, const AbModule& f,
                    SuiteTally& tally) {
    if (suite == "lemma32") {
        hom_ab(e, f).is_simple_pole() ? ++tally.pass : ++tally.fail;
    } else if (suite == "twist") {
        verify_twist_hom(e, f) ? ++tally.pass : ++tally.fail;
    }
}

void run_single_suite(const std::string& suite, const AbModule& e,
                      const FixedPointOptions& fp, SuiteTally& tally, Report& rep,
                      const std::string& label) {
    if (suite == "bidual") {
        bool ok = true;
        for (int delta = 0; delta <= 2; ++delta)
            ok = ok && verify_bidual(e, Rational(delta), fp);
        ok ? ++tally.pass : ++tally.fail;
        rep.add(label, ok);
        return;
    }
    BernsteinPoly b = bernstein(e, fp);
    BernsteinPoly bs = dual_bernstein(e, fp);
    std::optional<Rational> delta = discover_delta(b, bs);
    if (suite == "reflection") {
        if (!delta) {
            ++tally.inconclusive;
            rep.add(label, std::string("inconclusive (no delta candidate)"));
            return;
        }
        auto cert = find_self_duality(e, *delta);
        if (!cert) {
            ++tally.inconclusive;
            rep.add(label, std::string("inconclusive (no self-duality at delta " +
                                       rat_to_string(*delta) + ")"));
            return;
        }
        bool ok = reflection_check(b, bs, *delta);
        ok ? ++tally.pass : ++tally.fail;
        rep.add(label, std::string(ok ? "pass" : "fail") + " (delta " +
                           rat_to_string(*delta) + ")");
        return;
    }
    if (suite == "propdual") {
        if (!delta) {
            ++tally.inconclusive;
            rep.add(label, std::string("inconclusive (no delta candidate)"));
            return;
        }
        auto cert = find_self_duality(e, *delta);
        if (!cert) {
            ++tally.inconclusive;
            rep.add(label, std::string("inconclusive (self-duality not found at delta " +
                                       rat_to_string(*delta) + ")"));
            return;
        }
        PropDualReport pr = verify_prop_dual(e, *delta, *cert);
        bool ok = pr.kappa_prime_found && pr.kappa_second_found && pr.reflection_holds;
        ok ? ++tally.pass : ++tally.fail;
        rep.add(label, std::string(ok ? "pass" : "fail") + " (delta " +
                           rat_to_string(*delta) + ")");
    }
}

int cmd_check(const std::string& file, const std::vector<long>& random_args,
              const std::string& suite, const CommonOptions& opts) {
    std::vector<std::string> suites;
    if (suite == "all") {
        suites = {"lemma32", "twist", "bidual", "reflection", "propdual"};
    } else {
        suites = {suite};
    }
    Report rep("check");
    rep.add("suite", suite);
    SuiteTally tally;
    FixedPointOptions fp = opts.fixed_point();
    if (!file.empty()) {
        LoadedModule lm = load(file, opts);
        add_module_header(rep, lm, opts);
        for (const std::string& s : suites) {
            if (s == "lemma32" || s == "twist") {
                // pair suites on a single input use the module against itself
                run_pair_suite(s, lm.module, lm.module, tally);
                rep.add(s, tally.fail == 0);
            } else {
                run_single_suite(s, lm.module, fp, tally, rep, s);
            }
        }
    } else {
        if (random_args.size() != 3)
            throw Error("check: provide a file or --random k seed count");
        int k = static_cast<int>(random_args[0]);
        unsigned long seed = static_cast<unsigned long>(random_args[1]);
        int count = static_cast<int>(random_args[2]);
        rep.add("random_rank_bound", k);
        rep.add("random_seed", static_cast<long>(seed));
        rep.add("random_count", count);
        rep.add("iteration_cap", opts.max_iter > 0 ? std::to_string(opts.max_iter)
                                                   : std::string("per-rank default"));
        for (int c = 0; c < count; ++c) {
            unsigned long s = seed + 7919ul * static_cast<unsigned long>(c);
            int rank_e = 1 + static_cast<int>(s % static_cast<unsigned long>(k));
            int rank_f = 1 + static_cast<int>((s / 7) % static_cast<unsigned long>(k));
            for (const std::string& sn : suites) {
                if (sn == "lemma32" || sn == "twist") {
                    int t = opts.trunc > 0 ? opts.trunc
                                           : default_trunc(std::max(rank_e, rank_f));
                    AbModule e = random_simple_pole(rank_e, s, t);
                    AbModule f = random_simple_pole(rank_f, s + 1, t);
                    run_pair_suite(sn, e, f, tally);
                } else {
                    AbModule e = random_regular(rank_e, s, opts.trunc);
                    std::string label =
                        "case_" + std::to_string(c) + "_" + sn;
                    run_single_suite(sn, e, fp, tally, rep, label);
                }
            }
        }
    }
    rep.add("pass", tally.pass);
    rep.add("fail", tally.fail);
    rep.add("inconclusive", tally.inconclusive);
    rep.emit();
    if (tally.fail > 0) return kExitError;
    if (tally.inconclusive > 0) return kExitInconclusive;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations with regular (a,b)-modules: saturation, "
                 "Bernstein polynomials, duality certificates, pole predictions"};
    app.require_subcommand(1);

    CommonOptions info_opts, bern_opts, poles_opts, check_opts, gen_opts, jordan_opts;
    std::string info_file, bern_file, poles_file, check_file, jordan_file;
    bool bern_dual = false;
    int poles_n = 1;
    std::vector<long> check_random;
    std::string check_suite = "all";
    std::string gen_pham, gen_jordan, gen_elambda, gen_random, gen_output;
    std::string jordan_beta = "0";
    int jordan_d = 1;

    auto* info = app.add_subcommand("info", "rank, pole type, regularity verdict");
    info->add_option("file", info_file, "module description file")->required();
    add_common(info, info_opts);

    auto* bern = app.add_subcommand("bernstein", "Bernstein polynomial of the saturation");
    bern->add_option("file", bern_file, "module description file")->required();
    bern->add_flag("--dual", bern_dual, "polynomial of the biggest simple-pole submodule");
    add_common(bern, bern_opts);

    auto* poles = app.add_subcommand("poles", "predicted poles of the meromorphic extension");
    poles->add_option("file", poles_file, "module description file")->required();
    poles->add_option("--n", poles_n, "ambient dimension")->required()
        ->check(CLI::PositiveNumber);
    add_common(poles, poles_opts);

    auto* check = app.add_subcommand("check", "verification suites");
    check->add_option("file", check_file, "module description file");
    check->add_option("--random", check_random,
                      "k seed count: run on seeded random modules")
        ->expected(3);
    check->add_option("--suite", check_suite,
                      "lemma32|bidual|twist|propdual|reflection|all")
        ->check(CLI::IsMember({"lemma32", "bidual", "twist", "propdual",
                               "reflection", "all"}));
    add_common(check, check_opts);

    auto* gen = app.add_subcommand("gen", "generate module descriptions");
    gen->add_option("--pham", gen_pham, "comma-separated exponents a1,..,an");
    gen->add_option("--jordan", gen_jordan, "beta,d");
    gen->add_option("--elambda", gen_elambda, "rational lambda");
    gen->add_option("--random", gen_random, "k,seed");
    gen->add_option("-o,--output", gen_output, "output file (default: stdout)");
    add_common(gen, gen_opts);

    auto* jordan = app.add_subcommand("jordan", "lift a Jordan chain in the biggest "
                                                "simple-pole submodule");
    jordan->add_option("file", jordan_file, "module description file")->required();
    jordan->add_option("--beta", jordan_beta, "spectral value")->required();
    jordan->add_option("--d", jordan_d, "chain length")->required()
        ->check(CLI::PositiveNumber);
    add_common(jordan, jordan_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (info->parsed()) return cmd_info(info_file, info_opts);
        if (bern->parsed()) return cmd_bernstein(bern_file, bern_dual, bern_opts);
        if (poles->parsed()) return cmd_poles(poles_file, poles_n, poles_opts);
        if (check->parsed())
            return cmd_check(check_file, check_random, check_suite, check_opts);
        if (gen->parsed())
            return cmd_gen(gen_pham, gen_jordan, gen_elambda, gen_random, gen_output,
                           gen_opts);
        if (jordan->parsed())
            return cmd_jordan(jordan_file, jordan_beta, jordan_d, jordan_opts);
    } catch (const abmod::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
