#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mfcat/dolbeault/harness.hpp"

#include <random>

using namespace mfcat;
using namespace mfcat::dolb;

namespace {
ConventionRegistry& registry() {
    static ConventionRegistry reg = [] {
        ConventionRegistry r = calibrate_registry(1);
        REQUIRE(calibrate_xi_normalization(r));
        REQUIRE(calibrate_zeta2_normalization(r));
        return r;
    }();
    return reg;
}
} // namespace

TEST_CASE("registry calibration is reproducible and persists") {
    ConventionRegistry reg = registry();
    CHECK(reg.frozen);
    CHECK(reg.xi_norm() == Scalar::of_fraction(-1, 2));
    CHECK(reg.zeta2_norm() == Scalar(-1));
    reg.save_json_file("/tmp/mfcat_registry_test.json");
    auto back = ConventionRegistry::from_json_file("/tmp/mfcat_registry_test.json");
    REQUIRE(back.has_value());
    CHECK(back->schouten_s1 == reg.schouten_s1);
    CHECK(back->xi_norm_num == reg.xi_norm_num);
    CHECK(back->zeta2_norm_num == reg.zeta2_norm_num);
}

TEST_CASE("maurer-cartan residual examples") {
    ConventionRegistry reg = registry();
    // any single-variable kappa passes: dxb ^ dxb = 0
    auto c1 = DolCtx::make(1);
    DolForm k1 = DolForm::scalar(c1, "x1*xb1*y1^2") * DolForm::dxbar(c1, 0);
    CHECK(mc_residual(reg, k1).is_zero());

    // constant-coefficient quadratic kappa in two variables passes
    auto c2 = DolCtx::make(2);
    DolForm k2 = DolForm::scalar(c2, "y1*y2") * DolForm::dxbar(c2, 0);
    CHECK(mc_residual(reg, k2).is_zero());

    // an antiholomorphic coefficient on dxb2 fails: dbar kappa != 0
    DolForm k3 = DolForm::scalar(c2, "xb1*y1^2") * DolForm::dxbar(c2, 1);
    CHECK(!mc_residual(reg, k3).is_zero());
}

TEST_CASE("lagrangian constraint residuals") {
    auto ctx = DolCtx::make(2);
    // holomorphic W with kappa = 0 passes
    DolForm W = DolForm::scalar(ctx, "x1^3 - x2^2");
    CHECK(w_constraint_residual(W, DolForm(ctx)).is_zero());
    // generic W against generic kappa fails
    DolForm kappa = DolForm::scalar(ctx, "y1^2") * DolForm::dxbar(ctx, 0);
    DolForm Wx = DolForm::scalar(ctx, "x1^2 + xb2");
    CHECK(!w_constraint_residual(Wx, kappa).is_zero());
}

TEST_CASE("mu: diagonal case equals the fiber derivative contraction") {
    auto ctx = DolCtx::make(2);
    DolForm kappa = DolForm::scalar(ctx, "x2*y1^2 + y1*y2") * DolForm::dxbar(ctx, 0);
    DolForm W = DolForm::scalar(ctx, "x1^2*x2");
    DolForm mu = mu_correction(kappa, W, W);
    // -d_vrt kappa(dW): substitute one slot after fiber differentiation
    DolForm expect(ctx);
    Covector g = gradient_covector(W);
    for (size_t i = 0; i < 2; ++i)
        expect -= evaluate_on(kappa.partial_y(i), g)
                      .scaled_poly(Poly::var(ctx->ring, ctx->y[i]));
    CHECK((mu - expect).is_zero());
    // kappa = 0 gives mu = 0
    CHECK(mu_correction(DolForm(ctx), W, W).is_zero());
}

TEST_CASE("mu: one-variable beta against W1 = 0") {
    auto ctx = DolCtx::make(1);
    DolForm beta = DolForm::scalar(ctx, "x1*y1^2") * DolForm::dxbar(ctx, 0);   // b = x1
    DolForm W2 = DolForm::scalar(ctx, "x1^3");
    DolForm mu = mu_correction(beta, DolForm(ctx), W2);
    // mu = -b (dW2) in the single open slot
    DolForm expect = -(DolForm::scalar(ctx, "x1") * DolForm::dxbar(ctx, 0) *
                       DolForm::scalar(ctx, "3*x1^2"))
                          .scaled_poly(Poly::var(ctx->ring, ctx->y[0]));
    CHECK((mu - expect).is_zero());
}

TEST_CASE("verify_corrections passes on seeded two-variable instances") {
    ConventionRegistry reg = registry();
    for (unsigned seed : {1u, 2u, 3u, 4u}) {
        auto inst = make_correction_instance(seed, 2, seed % 2 == 0, reg);
        Report rep = verify_corrections(inst);
        INFO("seed ", seed, "\n", rep.str());
        CHECK(rep.all_pass());
    }
}

TEST_CASE("correction corollaries") {
    Report rep = verify_correction_corollaries(1, registry());
    INFO(rep.str());
    CHECK(rep.all_pass());
}

TEST_CASE("monoidal level-1 checks and the one-variable degeneration") {
    ConventionRegistry reg = registry();
    auto inst = make_monoidal_instance(5, 2, 2, true, reg);
    Report rep = verify_monoidal(inst, 1);
    INFO(rep.str());
    CHECK(rep.all_pass());

    // one variable with holomorphic rank-1 bundles: zeta_1 vanishes by form
    // degree; realized here through a degenerate fancy pair as well
    auto ctx1 = DolCtx::make(1);
    DolForm phi = DolForm::scalar(ctx1, "xb1*x1^2");
    Bundle b1 = make_bundle(ctx1, {0}, phi.dbar(), DolForm(ctx1));
    Bundle b2 = make_bundle(ctx1, {0}, phi.dbar().scaled(Scalar(2)), DolForm(ctx1));
    DolForm F1 = curvature_F(reg, b1), F2 = curvature_F(reg, b2);
    DolForm beta1 = DolForm::scalar(ctx1, "y1^2") * DolForm::dxbar(ctx1, 0);
    DolForm z1 = beta1.partial_y(0).partial_y(0).scaled(Scalar::of_fraction(1, 2)) *
                 dx_component(F1, 0) * dx_component(F2, 0);
    CHECK(z1.is_zero());
}

TEST_CASE("monoidal level-2: structure confirmed, printed associator falsified") {
    ConventionRegistry reg = registry();
    Report rep = verify_monoidal_suite(100, 2, 2, reg);
    INFO(rep.str());
    bool structure = false, accepted_line = false;
    for (auto& l : rep.lines) {
        if (l.name == "structure_checks") structure = l.pass;
        if (l.name == "accepted_reading") {
            accepted_line = true;
            // deterministic engine outcome: the printed second-order
            // associator fails both readings, reported as FALSIFIED
            CHECK(l.note.find("FALSIFIED") != std::string::npos);
        }
    }
    CHECK(structure);
    CHECK(accepted_line);
}

TEST_CASE("first-order harness passes on seeds and the W=0 specialization") {
    ConventionRegistry reg = registry();
    for (unsigned seed : {11u, 12u, 13u}) {
        auto inst = make_first_order_instance(seed, 2, false, reg);
        Report rep = first_order_harness(inst);
        INFO("seed ", seed, "\n", rep.str());
        CHECK(rep.all_pass());
    }
    auto inst0 = make_first_order_instance(20, 2, true, reg);
    Report rep0 = first_order_harness(inst0);
    INFO(rep0.str());
    CHECK(rep0.all_pass());
    bool saw_w0 = false;
    for (auto& l : rep0.lines) saw_w0 |= l.name == "ii_w0_zeta_is_beta_FF";
    CHECK(saw_w0);
}

TEST_CASE("operator identities: evaluation and divided difference via W-hat") {
    ConventionRegistry reg = registry();
    auto ctx = DolCtx::make(2);
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> c(-2, 2);
    auto rand_holo = [&](int deg, int terms) {
        std::uniform_int_distribution<int> pick(0, 1);
        std::uniform_int_distribution<int> dd(1, deg);
        std::vector<Poly::Term> ts;
        for (int k = 0; k < terms; ++k) {
            Monomial m(ctx->ring->size());
            int d = dd(rng);
            for (int l = 0; l < d; ++l) m[ctx->x[pick(rng)]] += 1;
            ts.push_back({m, Scalar(c(rng))});
        }
        return Poly::from_terms(ctx->ring, std::move(ts));
    };

    for (int rep = 0; rep < 5; ++rep) {
        // kappa with SYM degrees 2 and 3
        DolForm kappa(ctx);
        for (size_t m = 0; m < 2; ++m) {
            Poly part = rand_holo(2, 2) * Poly::var(ctx->ring, ctx->y[0]) *
                            Poly::var(ctx->ring, ctx->y[1]) +
                        rand_holo(1, 2) * Poly::var(ctx->ring, ctx->y[0], 2) *
                            Poly::var(ctx->ring, ctx->y[1]);
            kappa += DolForm::scalar(ctx, part) * DolForm::dxbar(ctx, m);
        }
        DolForm W1 = DolForm::scalar(ctx, rand_holo(3, 3));
        DolForm W2 = DolForm::scalar(ctx, rand_holo(3, 3));
        auto hat = [&](const DolForm& W, const DolForm& f) {
            return poisson_bracket(reg, W, f);
        };
        auto ydeg_part = [&](const DolForm& f, int d) {
            DolForm out(ctx);
            for (auto& [k, m] : f.terms()) {
                std::vector<Poly::Term> kept;
                for (auto& t : m[0].terms()) {
                    int yd = 0;
                    for (size_t i = 0; i < 2; ++i) yd += t.mono[ctx->y[i]];
                    if (yd == d) kept.push_back(t);
                }
                Poly q = Poly::from_terms(ctx->ring, std::move(kept));
                if (!q.is_zero()) {
                    DolForm piece(ctx);
                    piece.add_term(k, {q});
                    out += piece;
                }
            }
            return out;
        };

        // kappa(dW) = (e^{W-hat} kappa)|_0, truncated at SYM degree 3
        DolForm lhs1 = evaluate_on(kappa, gradient_covector(W1));
        DolForm e0 = ydeg_part(kappa, 0);
        DolForm h1 = hat(W1, kappa);
        DolForm h2 = hat(W1, h1);
        DolForm h3 = hat(W1, h2);
        DolForm rhs1 = ydeg_part(e0 + h1 + h2.scaled(Scalar::of_fraction(1, 2)) +
                                     h3.scaled(Scalar::of_fraction(1, 6)),
                                 0);
        CHECK((lhs1 - rhs1).is_zero());

        // ds kappa(dW1, dW2) = ((e^{W2-hat} - e^{W1-hat})/(W2-hat - W1-hat) kappa)|_1
        DolForm lhs2 = divided_difference1(kappa, gradient_covector(W1), gradient_covector(W2));
        // sum_k (1/k!) sum_{a+b=k-1} W1hat^a W2hat^b kappa, fiber-degree-1 part
        DolForm rhs2(ctx);
        std::vector<std::vector<DolForm>> powers;   // powers[a][b] = W1^a W2^b kappa
        powers.assign(4, std::vector<DolForm>(4, DolForm(ctx)));
        powers[0][0] = kappa;
        for (int a = 1; a < 4; ++a) powers[a][0] = hat(W1, powers[a - 1][0]);
        for (int a = 0; a < 4; ++a)
            for (int b = 1; a + b < 4; ++b) powers[a][b] = hat(W2, powers[a][b - 1]);
        Scalar fact(1);
        for (int k = 1; k <= 3; ++k) {
            fact *= Scalar(k);
            for (int a = 0; a < k; ++a) {
                int b = k - 1 - a;
                rhs2 += powers[a][b].scaled(Scalar(1) / fact);
            }
        }
        CHECK((lhs2 - ydeg_part(rhs2, 1)).is_zero());
    }
}
