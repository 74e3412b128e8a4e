#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mfcat/dolbeault/bundle.hpp"
#include "mfcat/dolbeault/ops.hpp"

#include <random>

using namespace mfcat;
using namespace mfcat::dolb;

namespace {

Poly rand_poly(const DolCtxPtr& ctx, std::mt19937& rng, bool with_xb, bool with_y, int deg = 2,
               int terms = 3) {
    std::vector<size_t> vars = ctx->x;
    if (with_xb) vars.insert(vars.end(), ctx->xb.begin(), ctx->xb.end());
    if (with_y) vars.insert(vars.end(), ctx->y.begin(), ctx->y.end());
    std::uniform_int_distribution<int> c(-3, 3);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(vars.size()) - 1);
    std::uniform_int_distribution<int> dd(0, deg);
    std::vector<Poly::Term> ts;
    for (int k = 0; k < terms; ++k) {
        Monomial m(ctx->ring->size());
        int d = dd(rng);
        for (int l = 0; l < d; ++l) m[vars[pick(rng)]] += 1;
        ts.push_back({m, Scalar(c(rng))});
    }
    return Poly::from_terms(ctx->ring, std::move(ts));
}

DolForm rand_form(const DolCtxPtr& ctx, std::mt19937& rng, bool with_theta = true) {
    std::uniform_int_distribution<int> mask(0, (1 << ctx->n) - 1);
    DolForm out(ctx);
    for (int rep = 0; rep < 3; ++rep) {
        FormKey k;
        k.abar = static_cast<uint32_t>(mask(rng));
        k.hol = static_cast<uint32_t>(mask(rng));
        if (with_theta) k.theta = static_cast<uint32_t>(mask(rng));
        DolForm piece(ctx);
        piece.add_term(k, {rand_poly(ctx, rng, true, !with_theta)});
        out += piece;
    }
    return out;
}

DolForm rand_homogeneous(const DolCtxPtr& ctx, std::mt19937& rng, int degree) {
    std::uniform_int_distribution<int> mask(0, (1 << ctx->n) - 1);
    DolForm out(ctx);
    for (int rep = 0; rep < 6 && out.terms().size() < 2; ++rep) {
        FormKey k;
        k.abar = static_cast<uint32_t>(mask(rng));
        k.hol = static_cast<uint32_t>(mask(rng));
        k.theta = static_cast<uint32_t>(mask(rng));
        if ((popcount(k.abar) + popcount(k.hol) + popcount(k.theta)) % 2 != degree % 2) continue;
        DolForm piece(ctx);
        piece.add_term(k, {rand_poly(ctx, rng, true, false)});
        out += piece;
    }
    return out;
}

} // namespace

TEST_CASE("product is associative and graded-commutative on scalars") {
    auto ctx = DolCtx::make(3);
    std::mt19937 rng(3);
    for (int rep = 0; rep < 15; ++rep) {
        DolForm a = rand_form(ctx, rng), b = rand_form(ctx, rng), c = rand_form(ctx, rng);
        CHECK(((a * b) * c - a * (b * c)).is_zero());
    }
    for (int rep = 0; rep < 15; ++rep) {
        DolForm a = rand_homogeneous(ctx, rng, rep % 2);
        DolForm b = rand_homogeneous(ctx, rng, (rep / 2) % 2);
        int da = 0, db = 0;
        a.homogeneous_degree(&da);
        b.homogeneous_degree(&db);
        DolForm ba = b * a;
        DolForm resid = a * b - ((da * db) % 2 ? -ba : ba);
        CHECK(resid.is_zero());
    }
}

TEST_CASE("dbar squares to zero and satisfies Leibniz") {
    auto ctx = DolCtx::make(3);
    std::mt19937 rng(5);
    for (int rep = 0; rep < 10; ++rep) {
        DolForm a = rand_form(ctx, rng);
        CHECK(a.dbar().dbar().is_zero());
    }
    for (int rep = 0; rep < 10; ++rep) {
        DolForm a = rand_homogeneous(ctx, rng, rep % 2);
        DolForm b = rand_form(ctx, rng);
        int da = 0;
        a.homogeneous_degree(&da);
        DolForm lhs = (a * b).dbar();
        DolForm adb = a * b.dbar();
        DolForm rhs = a.dbar() * b + ((da % 2) ? -adb : adb);
        CHECK((lhs - rhs).is_zero());
    }
}

TEST_CASE("del squares to zero, anticommutes with dbar, satisfies Leibniz") {
    auto ctx = DolCtx::make(3);
    std::mt19937 rng(7);
    for (int rep = 0; rep < 10; ++rep) {
        DolForm a = rand_form(ctx, rng);
        CHECK(a.del().del().is_zero());
        CHECK((a.dbar().del() + a.del().dbar()).is_zero());
    }
    for (int rep = 0; rep < 10; ++rep) {
        DolForm a = rand_homogeneous(ctx, rng, rep % 2);
        DolForm b = rand_form(ctx, rng);
        int da = 0;
        a.homogeneous_degree(&da);
        DolForm adb = a * b.del();
        DolForm rhs = a.del() * b + ((da % 2) ? -adb : adb);
        CHECK((( a * b).del() - rhs).is_zero());
    }
}

TEST_CASE("radial homotopy: h dbar + dbar h = id - eval0") {
    auto ctx = DolCtx::make(2);
    std::mt19937 rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        DolForm a = rand_form(ctx, rng, false);
        DolForm lhs = a.dbar().homotopy() + a.homotopy().dbar();
        DolForm rhs = a - a.eval_at_xbar0();
        CHECK((lhs - rhs).is_zero());
    }
}

TEST_CASE("homotopy solves dbar u = f on closed positive-degree forms") {
    auto ctx = DolCtx::make(2);
    std::mt19937 rng(13);
    for (int rep = 0; rep < 10; ++rep) {
        // f = dbar(g) is closed with positive degree
        DolForm g = rand_form(ctx, rng, false);
        DolForm f = g.dbar();
        DolForm u = f.homotopy();
        CHECK((u.dbar() - f).is_zero());
    }
}

TEST_CASE("dbar of an antiholomorphic coordinate picks up the right forms") {
    auto ctx = DolCtx::make(2);
    // dbar(xb1*xb2) = xb2 dxb1 + xb1 dxb2
    DolForm f = DolForm::scalar(ctx, "xb1*xb2");
    DolForm expect = DolForm::scalar(ctx, "xb2") * DolForm::dxbar(ctx, 0) +
                     DolForm::scalar(ctx, "xb1") * DolForm::dxbar(ctx, 1);
    CHECK((f.dbar() - expect).is_zero());
    // dbar of a holomorphic polynomial vanishes
    CHECK(DolForm::scalar(ctx, "x1^2 + 3*x2").dbar().is_zero());
    // dbar(xb1 * p(x)) = p dxb1
    DolForm g = DolForm::scalar(ctx, "xb1*x1^2");
    CHECK((g.dbar() - DolForm::scalar(ctx, "x1^2") * DolForm::dxbar(ctx, 0)).is_zero());
}

TEST_CASE("calibration finds a unique registry") {
    ConventionRegistry reg = calibrate_registry(1);
    CHECK(reg.frozen);
    // the index identities of the calibration must hold afterwards too
    auto ctx = DolCtx::make(2);
    DolForm W = DolForm::scalar(ctx, "x1^3 - 2*x1*x2");
    DolForm nu = DolForm::scalar(ctx, "x2") * DolForm::theta(ctx, 0) * DolForm::theta(ctx, 1);
    DolForm lhs = schouten_bracket(reg, W, nu);
    // [W, nu] = 2 nu^{IJ} (d_J W) th_I with nu^{01} = x2/... (antisym components)
    DolForm rhs(ctx);
    Poly x2 = ctx->parse("x2");
    Poly half(ctx->parse("1/2"));
    // nu^{01} = x2/2, nu^{10} = -x2/2
    DolForm dW0 = DolForm::scalar(ctx, W.terms().begin()->second[0].derivative(ctx->x[0]));
    DolForm dW1 = DolForm::scalar(ctx, W.terms().begin()->second[0].derivative(ctx->x[1]));
    rhs += DolForm::scalar(ctx, x2 * half).scaled(Scalar(2)) * dW1 * DolForm::theta(ctx, 0);
    rhs -= DolForm::scalar(ctx, x2 * half).scaled(Scalar(2)) * dW0 * DolForm::theta(ctx, 1);
    CHECK((lhs - rhs).is_zero());
}

TEST_CASE("poisson bracket Leibniz and antisymmetry on even elements") {
    ConventionRegistry reg = calibrate_registry(1);
    auto ctx = DolCtx::make(2);
    std::mt19937 rng(17);
    for (int rep = 0; rep < 8; ++rep) {
        DolForm f = DolForm::scalar(ctx, rand_poly(ctx, rng, true, true));
        DolForm g = DolForm::scalar(ctx, rand_poly(ctx, rng, true, true));
        DolForm h = DolForm::scalar(ctx, rand_poly(ctx, rng, true, true));
        CHECK((poisson_bracket(reg, f, g) + poisson_bracket(reg, g, f)).is_zero());
        DolForm lhs = poisson_bracket(reg, f, g * h);
        DolForm rhs = poisson_bracket(reg, f, g) * h + g * poisson_bracket(reg, f, h);
        CHECK((lhs - rhs).is_zero());
    }
}

TEST_CASE("divided differences satisfy their defining identities") {
    ConventionRegistry reg = calibrate_registry(1);
    (void)reg;
    auto ctx = DolCtx::make(2);
    std::mt19937 rng(19);

    // alpha(v) = v^2 in one slot: ds alpha = v1 + v2
    DolForm alpha(ctx);
    alpha += DolForm::scalar(ctx, "y1^2");
    Covector v1{DolForm::scalar(ctx, "x1"), DolForm::scalar(ctx, "x2")};
    Covector v2{DolForm::scalar(ctx, "x2^2"), DolForm::scalar(ctx, "1")};
    DolForm ds = divided_difference1(alpha, v1, v2);
    // contract remaining slot with (v2 - v1) and compare alpha(v2)-alpha(v1)
    Covector diff;
    for (size_t i = 0; i < 2; ++i) diff.push_back(v2[i] - v1[i]);
    DolForm lhs = contract_sym_once(ds, diff);
    DolForm rhs = evaluate_on(alpha, v2) - evaluate_on(alpha, v1);
    CHECK((lhs - rhs).is_zero());

    // generic kappa: defining identity + symmetry of ds1, and the ds2 identity
    for (int rep = 0; rep < 6; ++rep) {
        DolForm kappa(ctx);
        kappa += DolForm::scalar(ctx, rand_poly(ctx, rng, false, true, 3, 4));
        Covector a{DolForm::scalar(ctx, rand_poly(ctx, rng, false, false)),
                   DolForm::scalar(ctx, rand_poly(ctx, rng, false, false))};
        Covector b{DolForm::scalar(ctx, rand_poly(ctx, rng, false, false)),
                   DolForm::scalar(ctx, rand_poly(ctx, rng, false, false))};
        Covector c{DolForm::scalar(ctx, rand_poly(ctx, rng, false, false)),
                   DolForm::scalar(ctx, rand_poly(ctx, rng, false, false))};
        Covector bma, cmb;
        for (size_t i = 0; i < 2; ++i) {
            bma.push_back(b[i] - a[i]);
            cmb.push_back(c[i] - b[i]);
        }
        DolForm d1 = divided_difference1(kappa, a, b);
        CHECK((contract_sym_once(d1, bma) - (evaluate_on(kappa, b) - evaluate_on(kappa, a)))
                  .is_zero());
        CHECK((d1 - divided_difference1(kappa, b, a)).is_zero());

        DolForm d2 = divided_difference2(kappa, a, b, c);
        DolForm lhs2 = contract_sym_once(d2, cmb);
        DolForm rhs2 = divided_difference1(kappa, a, c) - divided_difference1(kappa, a, b);
        CHECK((lhs2 - rhs2).is_zero());

        // diagonal case: ds alpha(v,v) equals the fiber derivative at v
        DolForm diag = divided_difference1(kappa, a, a);
        DolForm expect(ctx);
        for (size_t i = 0; i < 2; ++i) {
            DolForm comp = evaluate_on(kappa.partial_y(i), a);
            expect += comp.scaled_poly(Poly::var(ctx->ring, ctx->y[i]));
        }
        CHECK((diag - expect).is_zero());
    }
}

TEST_CASE("cubic divided differences match the hand pattern") {
    auto ctx = DolCtx::make(1);
    DolForm alpha = DolForm::scalar(ctx, "y1^3");
    Covector v1{DolForm::scalar(ctx, "x1")};
    Covector v2{DolForm::scalar(ctx, "x1^2")};
    Covector v3{DolForm::scalar(ctx, "x1+1")};
    // ds alpha = v1^2 + v1 v2 + v2^2 in the open slot
    DolForm ds = divided_difference1(alpha, v1, v2);
    DolForm expect =
        (v1[0] * v1[0] + v1[0] * v2[0] + v2[0] * v2[0]).scaled_poly(Poly::var(ctx->ring, ctx->y[0]));
    CHECK((ds - expect).is_zero());
    // second divided difference of a cubic: components v1 + v2 + v3; the
    // y-realization of an S^2 slot carries a half
    DolForm ds2 = divided_difference2(alpha, v1, v2, v3);
    Poly y2 = Poly::var(ctx->ring, ctx->y[0], 2);
    DolForm expect2 = (v1[0] + v2[0] + v3[0]).scaled_poly(y2).scaled(Scalar::of_fraction(1, 2));
    CHECK((ds2 - expect2).is_zero());
    // the component read-off (d^2/dy^2 halved) gives the divided-difference pattern
    DolForm comp = ds2.partial_y(0).partial_y(0).scaled(Scalar::of_fraction(1, 2));
    CHECK((comp - (v1[0] + v2[0] + v3[0]).scaled(Scalar::of_fraction(1, 2)) * DolForm::scalar(ctx, "2") *
                      DolForm::scalar(ctx, "1/2")).is_zero());
}

TEST_CASE("bundles: square check, curvature, Bianchi") {
    ConventionRegistry reg = calibrate_registry(1);
    auto ctx = DolCtx::make(2);

    // rank-1 holomorphic-type bundle: A = dbar(phi) has F = del(A), Bianchi 0
    DolForm phi = DolForm::scalar(ctx, "xb1*x1^2 + xb2*x2");
    DolForm A = phi.dbar();
    Bundle b1 = make_bundle(ctx, {0}, A, DolForm(ctx));
    CHECK(bianchi_residual(reg, b1).is_zero());
    CHECK(!curvature_F(reg, b1).is_zero());

    // A = 0: F = 0
    Bundle b0 = make_bundle(ctx, {0}, DolForm(ctx), DolForm(ctx));
    CHECK(curvature_F(reg, b0).is_zero());

    // curved rank-2 factorization-type bundle: D = [[0, q],[p, 0]], W = p q
    Poly p = ctx->parse("x1^2 - x2"), q = ctx->parse("x2^2 + x1");
    DolForm D = DolForm::matrix(ctx, {0, 1},
                                {Poly::zero(ctx->ring), q, p, Poly::zero(ctx->ring)});
    Bundle bc = make_bundle(ctx, {0, 1}, D, DolForm::scalar(ctx, p * q));
    CHECK(bianchi_residual(reg, bc).is_zero());
    // broken curving is rejected
    CHECK_THROWS(make_bundle(ctx, {0, 1}, D, DolForm::scalar(ctx, "x1")));
}

TEST_CASE("tensor bundles square to the curving sum") {
    ConventionRegistry reg = calibrate_registry(1);
    auto ctx = DolCtx::make(2);
    Poly p1 = ctx->parse("x1"), q1 = ctx->parse("x1*x2");
    Poly p2 = ctx->parse("x2"), q2 = ctx->parse("x1 - x2");
    DolForm D1 = DolForm::matrix(ctx, {0, 1},
                                 {Poly::zero(ctx->ring), q1, p1, Poly::zero(ctx->ring)});
    DolForm D2 = DolForm::matrix(ctx, {0, 1},
                                 {Poly::zero(ctx->ring), q2, p2, Poly::zero(ctx->ring)});
    Bundle b1 = make_bundle(ctx, {0, 1}, D1, DolForm::scalar(ctx, p1 * q1));
    Bundle b2 = make_bundle(ctx, {0, 1}, D2, DolForm::scalar(ctx, p2 * q2));
    Bundle t = tensor_bundle(b1, b2);   // make_bundle re-checks the square
    CHECK(t.rank() == 4);
    CHECK(bianchi_residual(reg, t).is_zero());
}

TEST_CASE("gradings on assembled atoms") {
    auto ctx = DolCtx::make(2, 3);
    // a beta-like atom: y^2-valued (0,1) form
    DolForm beta(ctx);
    {
        FormKey k;
        k.abar = 1;
        k.tags.beta = 1;
        DolForm piece(ctx);
        piece.add_term(k, {ctx->parse("x1*y1^2")});
        beta = piece;
    }
    auto recs = beta.gradings();
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].semiclassical == -1);
    CHECK(recs[0].balanced == 1);   // S^2-valued (0,1) form: 2 - 1
    CHECK(recs[0].dolbeault == 1);
}

TEST_CASE("bracket of plain functions vanishes; quadratic self-bracket index formula") {
    ConventionRegistry reg = calibrate_registry(1);
    auto ctx = DolCtx::make(2);
    DolForm W1 = DolForm::scalar(ctx, "x1^2*x2");
    DolForm W2 = DolForm::scalar(ctx, "x2^3 - x1");
    CHECK(poisson_bracket(reg, W1, W2).is_zero());

    // beta with symmetric polynomial components; flat connection:
    // {beta, beta} = -4 beta^{IL} (d_L beta^{JK}) y_I y_J y_K realized
    std::vector<std::vector<Poly>> b(2, std::vector<Poly>(2));
    b[0][0] = ctx->parse("x1");
    b[0][1] = ctx->parse("x2^2 - x1");
    b[1][0] = b[0][1];
    b[1][1] = ctx->parse("2*x2");
    DolForm beta(ctx);
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j)
            beta += DolForm::scalar(ctx, b[i][j] * Poly::var(ctx->ring, ctx->y[i]) *
                                             Poly::var(ctx->ring, ctx->y[j]));
    // two distinct dxb directions so the self-bracket survives
    DolForm beta1 = beta * DolForm::dxbar(ctx, 0);
    DolForm beta2 = beta * DolForm::dxbar(ctx, 1);
    DolForm lhs = poisson_bracket(reg, beta1 + beta2, beta1 + beta2);
    DolForm rhs(ctx);
    for (size_t i = 0; i < 2; ++i)
        for (size_t l = 0; l < 2; ++l)
            for (size_t j = 0; j < 2; ++j)
                for (size_t k = 0; k < 2; ++k) {
                    Poly coeff = b[i][l] * b[j][k].derivative(ctx->x[l]) * Scalar(-4);
                    Poly yyy = Poly::var(ctx->ring, ctx->y[i]) * Poly::var(ctx->ring, ctx->y[j]) *
                               Poly::var(ctx->ring, ctx->y[k]);
                    rhs += DolForm::scalar(ctx, coeff * yyy) *
                           (DolForm::dxbar(ctx, 0) * DolForm::dxbar(ctx, 1)).scaled(Scalar(2));
                }
    // lhs spans dxb1^dxb2 with both orders; compare against the assembled form
    CHECK((lhs - rhs).is_zero());
}

TEST_CASE("contraction examples") {
    ConventionRegistry reg = calibrate_registry(1);
    (void)reg;
    auto ctx = DolCtx::make(2);
    // rank-1: (b d) -| dW = b dW/dx
    DolForm v = DolForm::scalar(ctx, "x2").scaled_poly(Poly::var(ctx->ring, ctx->y[0]));
    DolForm W = DolForm::scalar(ctx, "x1^3");
    Covector g = gradient_covector(W);
    DolForm got = contract(v, {g});
    CHECK((got - DolForm::scalar(ctx, "3*x2*x1^2")).is_zero());

    // full contraction of a quadratic against (dW, dW)
    DolForm beta = DolForm::scalar(ctx, "y1*y2");
    DolForm got2 = contract(beta, {g, g});
    DolForm expect2 = DolForm::scalar(ctx, Poly::zero(ctx->ring));
    // y1 y2 -L (dW, dW) = dW_1 dW_2 + dW_2 dW_1 with dW_2 = 0 here
    CHECK((got2 - expect2).is_zero());

    // contraction with zero covector
    Covector zero{DolForm(ctx), DolForm(ctx)};
    CHECK(contract(v, {zero}).is_zero());
    CHECK_THROWS(contract(beta, {g}));   // arity mismatch
}
