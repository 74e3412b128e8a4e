#include "CLI11.hpp"

#include "mfcat/dolbeault/harness.hpp"
#include "mfcat/homology.hpp"
#include "mfcat/parse.hpp"
#include "mfcat/problemfile.hpp"
#include "mfcat/support.hpp"
#include "mfcat/twocat.hpp"

#include <iostream>
#include <set>

using namespace mfcat;
using namespace mfcat::dolb;

namespace {

// ring deduced from identifier occurrence order in the expression texts
RingPtr deduce_ring(const std::vector<std::string>& exprs) {
    std::vector<Variable> vars;
    std::set<std::string> seen;
    for (auto& text : exprs) {
        std::string cur;
        for (size_t i = 0; i <= text.size(); ++i) {
            char c = i < text.size() ? text[i] : ' ';
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'') {
                cur += c;
            } else {
                if (!cur.empty() && !std::isdigit(static_cast<unsigned char>(cur[0])) &&
                    cur != "i" && !seen.count(cur)) {
                    seen.insert(cur);
                    vars.push_back({cur, 0});
                }
                cur.clear();
            }
        }
    }
    return Ring::make(std::move(vars));
}

ConventionRegistry load_or_calibrate(const std::string& path, bool quiet = false) {
    if (!path.empty()) {
        auto reg = ConventionRegistry::from_json_file(path);
        if (reg) {
            if (!quiet) std::cout << "registry: " << reg->str() << " (loaded)\n";
            return *reg;
        }
    }
    ConventionRegistry reg = calibrate_registry(1);
    calibrate_xi_normalization(reg);
    calibrate_zeta2_normalization(reg);
    if (!path.empty()) reg.save_json_file(path);
    if (!quiet) std::cout << "registry: " << reg.str() << " (calibrated)\n";
    return reg;
}

void print_report(const Report& rep, bool json) {
    if (json)
        std::cout << rep.json() << "\n";
    else
        std::cout << rep.str();
}

int dims_exit(const Report& rep) { return rep.all_pass() ? 0 : 3; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computer algebra for matrix factorization categories"};
    app.require_subcommand(1);
    app.fallthrough();
    bool json = false;
    unsigned seed = 1;
    std::string registry_path;
    app.add_flag("--json", json, "machine-readable reports");
    app.add_option("--seed", seed, "deterministic seed");
    app.add_option("--registry", registry_path, "convention registry file");

    // ---- run: problem files
    std::string file;
    auto* run = app.add_subcommand("run", "execute a problem file");
    run->add_option("file", file, "problem file")->required();

    // ---- mf
    auto* mf = app.add_subcommand("mf", "matrix factorization operations");
    mf->require_subcommand(1);
    std::vector<std::string> plist, qlist;
    std::string wexpr;
    int kpow = 2;
    auto* mfc = mf->add_subcommand("construct", "build and print a Koszul factorization");
    mfc->add_option("--p", plist)->required();
    mfc->add_option("--q", qlist)->required();
    auto* mfe = mf->add_subcommand("ext", "Ext dimensions of K(p;q) with itself");
    mfe->add_option("--p", plist)->required();
    mfe->add_option("--q", qlist)->required();
    auto* mfk = mf->add_subcommand("knorrer", "Knorrer double and its Ext dimensions");
    mfk->add_option("--p", plist)->required();
    mfk->add_option("--q", qlist)->required();
    auto* mfd = mf->add_subcommand("dual", "dual of a Koszul factorization");
    mfd->add_option("--p", plist)->required();
    mfd->add_option("--q", qlist)->required();
    auto* mfx = mf->add_subcommand("exclude", "tensor with the identity kernel, then exclude");
    mfx->add_option("--p", plist)->required();
    mfx->add_option("--q", qlist)->required();
    mfx->add_option("--w", wexpr)->required();
    auto* mfa = mf->add_subcommand("end-algebra", "endomorphism algebra of the a*y^k factorization");
    mfa->add_option("--k", kpow, "power k in W = a*y^k")->check(CLI::PositiveNumber);

    // ---- twocat
    auto* tc = app.add_subcommand("twocat", "2-category operations");
    tc->require_subcommand(1);
    std::string w1expr{"0"}, w2expr{"x^2"};
    auto* tcl = tc->add_subcommand("legendre", "Legendre transform preserves probe Ext dims");
    tcl->add_option("--w1", w1expr);
    tcl->add_option("--w2", w2expr);
    auto* tci = tc->add_subcommand("identity", "identity correspondence preserves probe Ext dims");
    tci->add_option("--w1", w1expr);
    tci->add_option("--w2", w2expr);
    auto* tcc = tc->add_subcommand("compose", "compose identity kernels over the middle copy");
    tcc->add_option("--w1", w1expr);

    // ---- support
    auto* sp = app.add_subcommand("support", "critical locus and correspondence images");
    sp->require_subcommand(1);
    std::string poly_arg;
    auto* spm = sp->add_subcommand("milnor", "Milnor number of W");
    spm->add_option("poly", poly_arg)->required();
    auto* spc = sp->add_subcommand("crit", "critical ideal of W");
    spc->add_option("poly", poly_arg)->required();
    auto* spg = sp->add_subcommand("graph", "graph ideal of dW");
    spg->add_option("poly", poly_arg)->required();
    auto* spi = sp->add_subcommand("image", "Legendre-dual image of the graph of d(x^2)");

    // ---- dolb
    auto* db = app.add_subcommand("dolb", "deformation verification harnesses");
    db->require_subcommand(1);
    int nseeds = 20, level = 2;
    size_t dim = 2;
    auto* dbm = db->add_subcommand("verify-mc", "Maurer-Cartan residuals for seeded elements");
    dbm->add_option("--seeds", nseeds);
    auto* dbc = db->add_subcommand("verify-corrections", "universal correction identities");
    dbc->add_option("--seeds", nseeds);
    dbc->add_option("--dim", dim);
    auto* dbn = db->add_subcommand("verify-monoidal", "monoidal deformation checks");
    dbn->add_option("--n", level, "order (1 or 2)");
    dbn->add_option("--seeds", nseeds);
    auto* dbf = db->add_subcommand("first-order", "first-order composition harness");
    dbf->add_option("--seeds", nseeds);

    auto* cal = app.add_subcommand("calibrate", "freeze the convention registry");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            RunResult rr = run_problem_file(file, seed);
            std::cout << (json ? rr.json_report() + "\n" : rr.text_report());
            return rr.exit_code;
        }

        if (*mf) {
            auto build = [&](const std::vector<std::string>& ps,
                             const std::vector<std::string>& qs) {
                std::vector<std::string> all = ps;
                all.insert(all.end(), qs.begin(), qs.end());
                RingPtr ring = deduce_ring(all);
                std::vector<Poly> p, q;
                for (auto& t : ps) p.push_back(parse_poly(t, ring));
                for (auto& t : qs) q.push_back(parse_poly(t, ring));
                return koszul_factorization(p, q, ring);
            };
            if (*mfc) {
                std::cout << build(plist, qlist).str();
                return 0;
            }
            if (*mfe) {
                MatFact m = build(plist, qlist);
                ExtResult e = ext(m, m);
                std::cout << "ext = (" << e.dim_even << ", " << e.dim_odd << ")\n";
                return 0;
            }
            if (*mfk) {
                MatFact m = build(plist, qlist);
                MatFact k = knorrer(m, "knr1", "knr2");
                ExtResult e0 = ext(m, m), e1 = ext(k, k);
                std::cout << "ext = (" << e0.dim_even << ", " << e0.dim_odd << ")\n";
                std::cout << "ext_knorrer = (" << e1.dim_even << ", " << e1.dim_odd << ")\n";
                return e0.dim_even == e1.dim_even && e0.dim_odd == e1.dim_odd ? 0 : 3;
            }
            if (*mfd) {
                std::cout << dual_mf(build(plist, qlist)).str();
                return 0;
            }
            if (*mfx) {
                RingPtr ring = deduce_ring({wexpr});
                Poly W = parse_poly(wexpr, ring);
                MatFact m = build(plist, qlist);
                std::vector<std::string> xs;
                for (auto& v : ring->vars()) xs.push_back(v.name);
                MatFact id = identity_mf(xs, W);
                RingPtr u = ring_union(m.ring(), id.ring());
                MatFact t = tensor_mf(m.extended_to(u), id.extended_to(u));
                MatFact r = exclude_variables_greedy(t, xs);
                std::cout << r.str();
                return 0;
            }
            if (*mfa) {
                auto ring = Ring::make({{"y", 0}, {"a", 2}});
                MatFact m = koszul_factorization({parse_poly("y^" + std::to_string(kpow), ring)},
                                                 {parse_poly("a", ring)}, ring);
                EndAlgebra alg = end_algebra(m);
                std::cout << "dim = " << alg.dim << "\nunital = " << alg.unital
                          << "\nassociative = " << alg.associative << "\n";
                for (size_t i = 0; i < alg.dim; ++i)
                    for (size_t j = 0; j < alg.dim; ++j) {
                        std::cout << alg.basis[i] << "*" << alg.basis[j] << " =";
                        for (size_t k = 0; k < alg.dim; ++k)
                            if (!alg.table[i][j][k].is_zero())
                                std::cout << " " << alg.table[i][j][k].str() << "*" << alg.basis[k];
                        bool allz = true;
                        for (size_t k = 0; k < alg.dim; ++k) allz &= alg.table[i][j][k].is_zero();
                        if (allz) std::cout << " 0";
                        std::cout << "\n";
                    }
                return 0;
            }
        }

        if (*tc) {
            RingPtr rx = deduce_ring({w1expr, w2expr, "x"});
            LGObject o1 = make_lg_object({rx->var(rx->size() - 1).name}, {},
                                         parse_poly(w1expr, rx));
            // keep it simple: single base variable named by the curvings
            std::vector<std::string> base;
            for (auto& v : rx->vars()) base.push_back(v.name);
            LGObject a = make_lg_object(base, {}, parse_poly(w1expr, rx));
            LGObject b = make_lg_object(base, {}, parse_poly(w2expr, rx));
            MatFact probe = hom_generator(a, b);
            ExtResult before = ext(probe, probe);
            if (*tcl || *tci) {
                Correspondence corr;
                if (*tcl) {
                    std::vector<std::string> target;
                    for (auto& v : base) target.push_back(v + "_L");
                    corr = legendre_correspondence(base, target, +1);
                } else {
                    corr = identity_correspondence(base);
                }
                auto res = morphism_image(probe, corr, a, b, "_s", "_t");
                ExtResult after = ext(res.image, res.image);
                std::cout << "probe ext = (" << before.dim_even << ", " << before.dim_odd
                          << ")\nimage ext = (" << after.dim_even << ", " << after.dim_odd
                          << ")\n";
                return before.dim_even == after.dim_even && before.dim_odd == after.dim_odd ? 0 : 3;
            }
            if (*tcc) {
                MatFact i1 = identity_mf(base, parse_poly(w1expr, rx));
                std::vector<std::string> primed;
                for (auto& v : base) primed.push_back(v + "'");
                RingPtr rp = ring_without(i1.ring(), base);
                MatFact i2 = identity_mf(primed, parse_poly(w1expr, rx).renamed(
                                                     [&](const std::string& n) { return n + "'"; },
                                                     rp));
                MatFact c = compose_1morphisms(i1, i2, primed);
                std::cout << c.str();
                return 0;
            }
        }

        if (*sp) {
            if (*spi) {
                auto rx = Ring::of_names({"x"});
                auto src = graph_ideal(parse_poly("x^2", rx), {"p_x"});
                auto rxy = Ring::of_names({"x", "y"});
                auto corr = graph_ideal(parse_poly("x*y", rxy));
                auto img = correspondence_image(corr, src, true);
                std::cout << "image = " << img.ideal.str() << "\n";
                return 0;
            }
            RingPtr ring = deduce_ring({poly_arg});
            Poly W = parse_poly(poly_arg, ring);
            if (*spm) {
                long m = milnor_number(W);
                std::cout << (m < 0 ? std::string("INFINITE") : std::to_string(m)) << "\n";
                return 0;
            }
            if (*spc) {
                std::cout << critical_ideal(W).str() << "\n";
                return 0;
            }
            if (*spg) {
                std::cout << graph_ideal(W).ideal.str() << "\n";
                return 0;
            }
        }

        if (*cal) {
            std::string path = registry_path.empty() ? "mfcat-registry.json" : registry_path;
            ConventionRegistry reg = calibrate_registry(1);
            bool a = calibrate_xi_normalization(reg);
            bool b = calibrate_zeta2_normalization(reg);
            reg.save_json_file(path);
            std::cout << "registry: " << reg.str() << "\nwritten: " << path << "\n";
            return a && b ? 0 : 1;
        }

        if (*db) {
            ConventionRegistry reg = load_or_calibrate(registry_path, json);
            if (*dbm) {
                Report rep;
                for (int k = 0; k < nseeds; ++k) {
                    auto inst = make_correction_instance(seed + k, 2, true, reg);
                    std::string tag = "_seed_" + std::to_string(seed + k);
                    rep.add_residual("mc_beta_closed" + tag, inst.beta.dbar());
                    rep.add_residual(
                        "mc_gamma_equation" + tag,
                        inst.gamma.dbar() + poisson_bracket(reg, inst.beta, inst.beta)
                                                .scaled(Scalar::of_fraction(1, 2)));
                    // constant-coefficient elements satisfy the full equation
                    auto gi = make_gamma_only_instance(seed + k, 2, reg);
                    rep.add_residual("mc_constant_kappa" + tag, mc_residual(reg, gi.gamma));
                }
                print_report(rep, json);
                return dims_exit(rep);
            }
            if (*dbc) {
                Report all;
                for (int k = 0; k < nseeds; ++k) {
                    auto inst = make_correction_instance(seed + k, dim, k % 4 == 0, reg);
                    Report rep = verify_corrections(inst);
                    all.add("corrections_seed_" + std::to_string(seed + k), rep.all_pass());
                }
                Report cors = verify_correction_corollaries(seed, reg);
                for (auto& l : cors.lines) all.lines.push_back(l);
                print_report(all, json);
                return dims_exit(all);
            }
            if (*dbn) {
                Report rep = verify_monoidal_suite(seed, nseeds, 2, reg);
                print_report(rep, json);
                // FALSIFIED with passing structure checks is a valid verification outcome
                bool structure = false;
                for (auto& l : rep.lines)
                    if (l.name == "structure_checks") structure = l.pass;
                (void)level;
                return structure ? 0 : 3;
            }
            if (*dbf) {
                Report all;
                for (int k = 0; k < nseeds; ++k) {
                    auto inst = make_first_order_instance(seed + k, 2, k == 0, reg);
                    Report rep = first_order_harness(inst);
                    all.add("first_order_seed_" + std::to_string(seed + k), rep.all_pass());
                }
                print_report(all, json);
                return dims_exit(all);
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
