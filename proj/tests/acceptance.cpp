// Acceptance suite: one pass/fail line per criterion, each with its stated
// tolerance (exact arithmetic throughout) and a wall-clock stamp.

#include "mfcat/dolbeault/harness.hpp"
#include "mfcat/homology.hpp"
#include "mfcat/parse.hpp"
#include "mfcat/support.hpp"
#include "mfcat/twocat.hpp"

#include <chrono>
#include <iostream>
#include <vector>

using namespace mfcat;
using namespace mfcat::dolb;

namespace {

int failures = 0;

struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void line(const std::string& name, bool pass, double secs, const std::string& note = "") {
    std::cout << name << ": " << (pass ? "PASS" : "FAIL") << "  (" << secs << " s)";
    if (!note.empty()) std::cout << "  " << note;
    std::cout << "\n";
    std::cout.flush();
    if (!pass) ++failures;
}

MatFact kz(const RingPtr& r, const std::string& p, const std::string& q) {
    return koszul_factorization({parse_poly(p, r)}, {parse_poly(q, r)}, r);
}

std::pair<long, long> dims(const MatFact& m) {
    ExtResult e = ext(m, m);
    return {e.dim_even, e.dim_odd};
}

// ---------- criterion 1 ----------
void criterion1() {
    Stopwatch sw;
    auto r = Ring::of_names({"y1", "y2"});
    MatFact M = kz(r, "y1 - i*y2", "y1 + i*y2");
    auto d = dims(M);
    line("criterion_1_knorrer_indecomposable", d == std::make_pair(1L, 0L), sw.seconds(),
         "ext dims (" + std::to_string(d.first) + ", " + std::to_string(d.second) + ")");
}

// ---------- criterion 2 ----------
void criterion2() {
    for (int k = 1; k <= 3; ++k) {
        Stopwatch sw;
        auto r = Ring::make({{"y", 0}, {"a", 2}});
        MatFact M = koszul_factorization({parse_poly("y^" + std::to_string(k), r)},
                                         {parse_poly("a", r)}, r);
        EndAlgebra alg = end_algebra(M);
        bool ok = alg.dim == static_cast<size_t>(k) && alg.unital && alg.associative;
        if (ok) {
            // powers of the multiplication-by-y class span and y^k = 0
            PolyMatrix Y = PolyMatrix::identity(1, r).scaled(parse_poly("y", r));
            auto yc = end_algebra_coords(M, alg, Y, Y);
            ok = yc.has_value();
            if (ok) {
                auto mul = [&](const std::vector<Scalar>& x, const std::vector<Scalar>& y) {
                    std::vector<Scalar> out(alg.dim, Scalar(0));
                    for (size_t i = 0; i < alg.dim; ++i)
                        for (size_t j = 0; j < alg.dim; ++j)
                            for (size_t t = 0; t < alg.dim; ++t)
                                out[t] += x[i] * y[j] * alg.table[i][j][t];
                    return out;
                };
                // coordinate matrix of 1, y, ..., y^{k-1} must be invertible
                std::vector<std::vector<Scalar>> pows;
                std::vector<Scalar> cur = alg.unit;
                for (int p = 0; p < k; ++p) {
                    pows.push_back(cur);
                    cur = mul(cur, *yc);
                }
                for (auto& c : cur) ok &= c.is_zero();   // y^k = 0
                // Gaussian rank of the power matrix
                std::vector<std::vector<Scalar>> m = pows;
                size_t rank = 0;
                for (size_t col = 0; col < alg.dim && rank < m.size(); ++col) {
                    size_t piv = rank;
                    while (piv < m.size() && m[piv][col].is_zero()) ++piv;
                    if (piv == m.size()) continue;
                    std::swap(m[rank], m[piv]);
                    for (size_t i = 0; i < m.size(); ++i) {
                        if (i == rank || m[i][col].is_zero()) continue;
                        Scalar f = m[i][col] / m[rank][col];
                        for (size_t j = 0; j < alg.dim; ++j) m[i][j] -= f * m[rank][j];
                    }
                    ++rank;
                }
                ok &= rank == static_cast<size_t>(k);
            }
        }
        line("criterion_2_skyscraper_k" + std::to_string(k), ok, sw.seconds(),
             "end algebra is C[y]/(y^" + std::to_string(k) + ")");
    }
}

// ---------- criterion 3 ----------
void criterion3() {
    Stopwatch sw;
    bool all = true;
    struct Case {
        std::vector<std::string> ring_names, xs;
        std::string w, p, q;
    };
    std::vector<Case> cases{
        {{"x"}, {"x"}, "x^2", "x", "x"},
        {{"x"}, {"x"}, "x^3", "x", "x^2"},
        {{"x", "y"}, {"x", "y"}, "x*y", "x", "y"},
    };
    for (auto& c : cases) {
        auto r = Ring::of_names(c.ring_names);
        MatFact input = kz(r, c.p, c.q);
        MatFact id = identity_mf(c.xs, parse_poly(c.w, r));
        RingPtr u = ring_union(input.ring(), id.ring());
        MatFact t = tensor_mf(input.extended_to(u), id.extended_to(u));
        MatFact reduced = exclude_variables_greedy(t, c.xs);
        RingPtr target = ring_without(u, c.xs);
        MatFact expected =
            input.renamed([](const std::string& s) { return s + "'"; }, target);
        bool ok = reduced.same_matrices(expected) && reduced.curving() == expected.curving();
        all &= ok;
    }
    line("criterion_3_identity_2functor", all, sw.seconds(),
         "tensor with the identity kernel reduces to the renamed input, entrywise");
}

// ---------- criterion 4 ----------
void criterion4() {
    Stopwatch sw;
    struct Pair {
        std::string w1, w2;
        std::vector<std::string> base;
    };
    std::vector<Pair> pairs{
        {"0", "x^2", {"x"}},
        {"x^2", "x^3", {"x"}},
        {"0", "x*y", {"x", "y"}},
    };
    bool all = true;
    std::string detail;
    for (auto& pr : pairs) {
        auto r = Ring::of_names(pr.base);
        LGObject o1 = make_lg_object(pr.base, {}, parse_poly(pr.w1, r));
        LGObject o2 = make_lg_object(pr.base, {}, parse_poly(pr.w2, r));
        MatFact probe = hom_generator(o1, o2);
        auto before = dims(probe);
        std::vector<std::string> target;
        for (auto& v : pr.base) target.push_back(v + "_L");
        Correspondence lp = legendre_correspondence(pr.base, target, +1);
        auto res = morphism_image(probe, lp, o1, o2, "_s", "_t");
        auto after = dims(res.image);
        bool ok = before == after;
        all &= ok;
        detail += "(" + pr.w1 + "," + pr.w2 + "):" + (ok ? "=" : "!=") + " ";
    }
    // L+ then L- preserves the probe dims for (0, x^2)
    {
        auto r = Ring::of_names({"x"});
        LGObject o1 = make_lg_object({"x"}, {}, parse_poly("0", r));
        LGObject o2 = make_lg_object({"x"}, {}, parse_poly("x^2", r));
        MatFact probe = hom_generator(o1, o2);
        auto before = dims(probe);
        Correspondence lp = legendre_correspondence({"x"}, {"yL"}, +1);
        auto res1 = morphism_image(probe, lp, o1, o2, "_s", "_t");
        Correspondence lm = legendre_correspondence({"yL"}, {"zL"}, -1);
        auto res2 = morphism_image(res1.image, lm, res1.source_image, res1.target_image, "_c",
                                   "_d");
        auto after = dims(res2.image);
        bool ok = before == after;
        all &= ok;
        detail += "L+L-:" + std::string(ok ? "=" : "!=");
    }
    line("criterion_4_legendre_knorrer", all, sw.seconds(), detail);
}

// ---------- criteria 5 and 6 ----------
void criterion5(const ConventionRegistry& reg) {
    Stopwatch sw;
    bool all = true;
    int n_pass = 0;
    for (unsigned seed = 1; seed <= 20; ++seed) {
        auto inst = make_correction_instance(seed, 2, seed % 5 == 0, reg);
        Report rep = verify_corrections(inst);
        bool ok = rep.all_pass();
        all &= ok;
        n_pass += ok;
    }
    line("criterion_5_deformation_corrections", all, sw.seconds(),
         std::to_string(n_pass) + "/20 seeded two-variable instances pass (a)-(d)");
}

void criterion6(const ConventionRegistry& reg) {
    Stopwatch sw;
    Report rep = verify_correction_corollaries(3, reg);
    line("criterion_6_corollaries", rep.all_pass(), sw.seconds(),
         "beta=0 & W=0, dW-weight >= 2, and flat & W=0 specializations");
}

// ---------- criterion 7 ----------
void criterion7(const ConventionRegistry& reg) {
    Stopwatch sw;
    Report rep = verify_monoidal_suite(300, 20, 2, reg);
    bool structure = false;
    std::string outcome = "no outcome line";
    bool outcome_ok = false;
    for (auto& l : rep.lines) {
        if (l.name == "structure_checks") structure = l.pass;
        if (l.name == "accepted_reading") {
            outcome = l.note;
            outcome_ok = l.pass;
        }
    }
    // Either an accepted reading or a FALSIFIED report naming the smallest
    // counterexample is a valid verification outcome; the structural checks
    // must pass either way.
    bool valid = structure && (outcome_ok || outcome.find("FALSIFIED") != std::string::npos);
    line("criterion_7_monoidal_deformation", valid, sw.seconds(), outcome);
}

// ---------- criterion 8 ----------
void criterion8(const ConventionRegistry& reg) {
    Stopwatch sw;
    bool all = true;
    for (unsigned seed = 400; seed < 410; ++seed) {
        auto inst = make_first_order_instance(seed, 2, false, reg);
        all &= first_order_harness(inst).all_pass();
    }
    // the W = 0 specialization reproduces the deformed tensor product exactly
    auto inst0 = make_first_order_instance(410, 2, true, reg);
    Report rep0 = first_order_harness(inst0);
    bool w0 = rep0.all_pass();
    bool saw = false;
    for (auto& l : rep0.lines) saw |= l.name == "ii_w0_zeta_is_beta_FF" && l.pass;
    line("criterion_8_first_order_composition", all && w0 && saw, sw.seconds(),
         "10 seeds certify (i)-(iv); W=0 reduces to the deformed tensor product");
}

// ---------- criterion 9 ----------
void criterion9() {
    Stopwatch sw;
    bool ok = true;
    {
        auto rx1 = Ring::of_names({"x1"});
        auto src = graph_ideal(parse_poly("x1^2", rx1), {"p1"});
        auto amb = Ring::of_names({"x1", "p1", "x2", "p2"});
        VarietyIdeal corr{amb,
                          {"x1", "x2"},
                          {"p1", "p2"},
                          IdealGB::make({parse_poly("x2-x1", amb), parse_poly("p2-p1", amb)},
                                        amb)};
        auto img = correspondence_image(corr, src, false);
        Poly expect = parse_poly("p2 - 2*x2", img.ideal.ring());
        ok &= img.ideal.contains(expect);
        auto J = IdealGB::make({expect}, img.ideal.ring());
        for (auto& g : img.ideal.basis()) ok &= J.contains(g);
    }
    {
        auto rx = Ring::of_names({"x"});
        auto src = graph_ideal(parse_poly("x^2", rx), {"p_x"});
        auto rxy = Ring::of_names({"x", "y"});
        auto corr = graph_ideal(parse_poly("x*y", rxy));
        auto img = correspondence_image(corr, src, true);
        Poly expect = parse_poly("2*p_y - y", img.ideal.ring());
        ok &= img.ideal.contains(expect);
        auto J = IdealGB::make({expect}, img.ideal.ring());
        for (auto& g : img.ideal.basis()) ok &= J.contains(g);
    }
    line("criterion_9_support_geometry", ok, sw.seconds(),
         "identity correspondence exact; Legendre dual of x^2 is y^2/4");
}

// ---------- criterion 10 ----------
void criterion10() {
    Stopwatch sw;
    bool all = true;
    std::string detail;
    auto check = [&](const std::string& name, const MatFact& m) {
        auto gb = dims(m);
        auto oracle = ext_dims_truncation_oracle(m, m);
        bool ok = oracle.has_value() && *oracle == gb;
        all &= ok;
        detail += name + (ok ? ":= " : ":!= ");
    };
    // criterion 1 object
    {
        auto r = Ring::of_names({"y1", "y2"});
        check("knorrer", kz(r, "y1 - i*y2", "y1 + i*y2"));
    }
    // criterion 2 objects
    for (int k = 1; k <= 3; ++k) {
        auto r = Ring::make({{"y", 0}, {"a", 2}});
        check("sky" + std::to_string(k),
              koszul_factorization({parse_poly("y^" + std::to_string(k), r)},
                                   {parse_poly("a", r)}, r));
    }
    // criterion 3 inputs
    {
        auto rx = Ring::of_names({"x"});
        check("kx", kz(rx, "x", "x"));
        check("kx2", kz(rx, "x", "x^2"));
        auto rxy = Ring::of_names({"x", "y"});
        check("kxy", kz(rxy, "x", "y"));
    }
    // criterion 4 probes and the one-variable Legendre images
    for (auto& [w1, w2] : std::vector<std::pair<std::string, std::string>>{{"0", "x^2"},
                                                                           {"x^2", "x^3"}}) {
        auto r = Ring::of_names({"x"});
        LGObject o1 = make_lg_object({"x"}, {}, parse_poly(w1, r));
        LGObject o2 = make_lg_object({"x"}, {}, parse_poly(w2, r));
        MatFact probe = hom_generator(o1, o2);
        check("probe(" + w2 + ")", probe);
        Correspondence lp = legendre_correspondence({"x"}, {"xL"}, +1);
        auto res = morphism_image(probe, lp, o1, o2, "_s", "_t");
        check("image(" + w2 + ")", res.image);
    }
    line("criterion_10_oracle_agreement", all, sw.seconds(), detail);
}

} // namespace

int main() {
    std::cout << "== acceptance suite ==\n";
    Stopwatch total;

    criterion1();
    criterion2();
    criterion3();
    criterion4();

    Stopwatch cal;
    ConventionRegistry reg = calibrate_registry(1);
    bool xi_ok = calibrate_xi_normalization(reg);
    bool z2_ok = calibrate_zeta2_normalization(reg);
    line("registry_calibration", xi_ok && z2_ok, cal.seconds(), reg.str());

    criterion5(reg);
    criterion6(reg);
    criterion7(reg);
    criterion8(reg);
    criterion9();
    criterion10();

    std::cout << "== total " << total.seconds() << " s, " << failures << " failure(s) ==\n";
    return failures == 0 ? 0 : 1;
}
