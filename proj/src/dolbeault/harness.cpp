#include "mfcat/dolbeault/harness.hpp"

#include <random>
#include <sstream>

namespace mfcat::dolb {

void Report::add(const std::string& name, bool pass, long resid, const std::string& note) {
    lines.push_back({name, pass, resid, note});
}

void Report::add_residual(const std::string& name, const DolForm& resid, const std::string& note) {
    DolForm c = resid.collapsed();
    long n = 0;
    for (auto& [k, m] : c.terms())
        for (auto& p : m) n += static_cast<long>(p.nterms());
    add(name, n == 0, n, note);
}

std::string Report::str() const {
    std::ostringstream os;
    for (auto& l : lines) {
        os << l.name << " = " << (l.pass ? "PASS" : "FAIL");
        if (!l.pass) os << " residual_terms=" << l.residual_terms;
        if (!l.note.empty()) os << " (" << l.note << ")";
        os << "\n";
    }
    return os.str();
}

std::string Report::json() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < lines.size(); ++i) {
        if (i) os << ", ";
        os << "{\"check\": \"" << lines[i].name << "\", \"pass\": "
           << (lines[i].pass ? "true" : "false") << ", \"residual_terms\": "
           << lines[i].residual_terms;
        if (!lines[i].note.empty()) os << ", \"note\": \"" << lines[i].note << "\"";
        os << "}";
    }
    os << "]";
    return os.str();
}

DolForm mc_residual(const ConventionRegistry& reg, const DolForm& kappa) {
    return kappa.dbar() + poisson_bracket(reg, kappa, kappa).scaled(Scalar::of_fraction(1, 2));
}

DolForm w_constraint_residual(const DolForm& W, const DolForm& kappa) {
    return W.dbar() - evaluate_on(kappa, gradient_covector(W));
}

DolForm mu_correction(const DolForm& kappa, const DolForm& W1, const DolForm& W2) {
    return -divided_difference1(kappa, gradient_covector(W1), gradient_covector(W2));
}

namespace {

Poly rand_poly_in(const DolCtxPtr& ctx, std::mt19937& rng, const std::vector<size_t>& vars,
                  int deg, int terms) {
    std::uniform_int_distribution<int> c(-2, 2);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(vars.size()) - 1);
    std::uniform_int_distribution<int> dd(1, deg);
    std::vector<Poly::Term> ts;
    for (int k = 0; k < terms; ++k) {
        Monomial m(ctx->ring->size());
        int d = dd(rng);
        for (int l = 0; l < d; ++l) m[vars[pick(rng)]] += 1;
        ts.push_back({m, Scalar(c(rng))});
    }
    return Poly::from_terms(ctx->ring, std::move(ts));
}

// beta = sum_{I,J} beta^{IJ} y_I y_J with holomorphic symmetric components
void draw_beta(const DolCtxPtr& ctx, std::mt19937& rng, DolForm& beta,
               std::vector<std::vector<DolForm>>& comps) {
    size_t n = ctx->n;
    comps.assign(n, std::vector<DolForm>(n, DolForm(ctx)));
    beta = DolForm(ctx);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) {
            DolForm c(ctx);
            for (size_t m = 0; m < n; ++m) {
                Poly coeff = rand_poly_in(ctx, rng, ctx->x, 2, 2);
                TagVec tg;
                tg.beta = 1;
                DolForm piece = DolForm::scalar(ctx, coeff, tg) * DolForm::dxbar(ctx, m);
                c += piece;
            }
            comps[i][j] = c;
            comps[j][i] = c;
        }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            beta += comps[i][j].scaled_poly(Poly::var(ctx->ring, ctx->y[i]) *
                                            Poly::var(ctx->ring, ctx->y[j]));
}

// W = t * w1 + t^2 * h(beta(dW_lead, dW_lead)) solves the constraint mod t^3
DolForm solve_w(const DolCtxPtr& ctx, std::mt19937& rng, const DolForm& kappa, size_t t_index) {
    Poly w1 = rand_poly_in(ctx, rng, ctx->x, 3, 3);
    Poly t = Poly::var(ctx->ring, ctx->t[t_index]);
    DolForm lead = DolForm::scalar(ctx, w1 * t);
    DolForm rhs = evaluate_on(kappa, gradient_covector(lead));
    DolForm corr = rhs.homotopy();
    return lead + corr;
}

} // namespace

CorrectionInstance make_correction_instance(unsigned seed, size_t dim, bool flat_connection,
                                            const ConventionRegistry& reg) {
    CorrectionInstance inst;
    inst.ctx = DolCtx::make(dim, 3);
    inst.reg = reg;
    std::mt19937 rng(seed);
    draw_beta(inst.ctx, rng, inst.beta, inst.beta_ij);
    // gamma solves dbar(gamma) + 1/2 {beta, beta} = 0 via the radial homotopy
    inst.gamma =
        poisson_bracket(reg, inst.beta, inst.beta).scaled(Scalar::of_fraction(-1, 2)).homotopy();

    size_t n = dim;
    inst.christoffel.assign(n, std::vector<std::vector<Poly>>(n, std::vector<Poly>(n)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = j; k < n; ++k) {
                Poly g = Poly::zero(inst.ctx->ring);
                if (!flat_connection) {
                    std::vector<size_t> vars = inst.ctx->x;
                    vars.insert(vars.end(), inst.ctx->xb.begin(), inst.ctx->xb.end());
                    g = rand_poly_in(inst.ctx, rng, vars, 2, 2);
                }
                inst.christoffel[i][j][k] = g;
                inst.christoffel[i][k][j] = g;
            }

    DolForm kappa = inst.beta + inst.gamma;
    inst.W1 = solve_w(inst.ctx, rng, kappa, 0);
    inst.W2 = solve_w(inst.ctx, rng, kappa, 1);
    return inst;
}

CorrectionInstance make_gamma_only_instance(unsigned seed, size_t dim,
                                            const ConventionRegistry& reg) {
    CorrectionInstance inst;
    inst.ctx = DolCtx::make(dim, 3);
    inst.reg = reg;
    std::mt19937 rng(seed + 7);
    inst.beta = DolForm(inst.ctx);
    inst.beta_ij.assign(dim, std::vector<DolForm>(dim, DolForm(inst.ctx)));
    // constant-coefficient cubic kappa: an exact Maurer-Cartan element
    std::uniform_int_distribution<int> c(-2, 2);
    inst.gamma = DolForm(inst.ctx);
    for (size_t m = 0; m < dim; ++m) {
        Poly cube = Poly::zero(inst.ctx->ring);
        for (size_t i = 0; i < dim; ++i)
            for (size_t j = i; j < dim; ++j)
                for (size_t k = j; k < dim; ++k) {
                    Poly yyy = Poly::var(inst.ctx->ring, inst.ctx->y[i]) *
                               Poly::var(inst.ctx->ring, inst.ctx->y[j]) *
                               Poly::var(inst.ctx->ring, inst.ctx->y[k]);
                    cube += yyy * Scalar(c(rng));
                }
        inst.gamma += DolForm::scalar(inst.ctx, cube) * DolForm::dxbar(inst.ctx, m);
    }
    inst.christoffel.assign(dim, std::vector<std::vector<Poly>>(
                                     dim, std::vector<Poly>(dim, Poly::zero(inst.ctx->ring))));
    inst.W1 = solve_w(inst.ctx, rng, inst.gamma, 0);
    inst.W2 = solve_w(inst.ctx, rng, inst.gamma, 1);
    return inst;
}

namespace {

// covariant pieces with the instance's Christoffel data
DolForm nabla_beta(const CorrectionInstance& inst, size_t L, size_t I, size_t K) {
    const auto& ctx = inst.ctx;
    DolForm out = inst.beta_ij[I][K].partial_x(L);
    for (size_t m = 0; m < ctx->n; ++m) {
        TagVec tg;
        tg.nab = 1;
        DolForm gI = DolForm::scalar(ctx, inst.christoffel[I][L][m], tg);
        DolForm gK = DolForm::scalar(ctx, inst.christoffel[K][L][m], tg);
        out += gI * inst.beta_ij[m][K];
        out += gK * inst.beta_ij[I][m];
    }
    return out;
}

DolForm nabla_del_w(const CorrectionInstance& inst, size_t K, size_t L, const DolForm& W) {
    const auto& ctx = inst.ctx;
    DolForm out = W.partial_x(L).partial_x(K);
    for (size_t m = 0; m < ctx->n; ++m) {
        TagVec tg;
        tg.nab = 1;
        DolForm g = DolForm::scalar(ctx, inst.christoffel[m][K][L], tg);
        out -= g * W.partial_x(m);
    }
    return out;
}

DolForm build_nu(const CorrectionInstance& inst, const DolForm& W12) {
    const auto& ctx = inst.ctx;
    DolForm nu(ctx);
    for (size_t I = 0; I < ctx->n; ++I)
        for (size_t J = 0; J < ctx->n; ++J) {
            DolForm coeff(ctx);
            for (size_t K = 0; K < ctx->n; ++K)
                for (size_t L = 0; L < ctx->n; ++L) {
                    coeff += inst.beta_ij[J][K] * inst.beta_ij[I][L] *
                             nabla_del_w(inst, K, L, W12);
                    coeff -= inst.beta_ij[I][L] * nabla_beta(inst, L, J, K) *
                             W12.partial_x(K) * DolForm::scalar(ctx, "2/3");
                }
            nu += coeff.scaled(Scalar::of_fraction(1, 2)) * DolForm::theta(ctx, I) *
                  DolForm::theta(ctx, J);
        }
    return nu;
}

DolForm curvature_r(const CorrectionInstance& inst, size_t K, size_t L, size_t M) {
    TagVec tg;
    tg.nab = 1;
    return DolForm::scalar(inst.ctx, inst.christoffel[K][L][M], tg).dbar();
}

DolForm build_xi(const CorrectionInstance& inst) {
    const auto& ctx = inst.ctx;
    DolForm xi(ctx);
    for (size_t I = 0; I < ctx->n; ++I)
        for (size_t J = 0; J < ctx->n; ++J)
            for (size_t K = 0; K < ctx->n; ++K) {
                DolForm coeff(ctx);
                for (size_t L = 0; L < ctx->n; ++L)
                    for (size_t M = 0; M < ctx->n; ++M)
                        coeff += inst.beta_ij[I][L] * inst.beta_ij[J][M] *
                                 curvature_r(inst, K, L, M);
                xi += coeff.scaled(Scalar::of_fraction(1, 3)) * DolForm::theta(ctx, I) *
                      DolForm::theta(ctx, J) * DolForm::theta(ctx, K);
            }
    return xi;
}

bool audit_sc(const DolForm& f, int expect_sc, int expect_bal, long* violations) {
    long bad = 0;
    for (auto& r : f.gradings()) {
        if (r.semiclassical != expect_sc || r.balanced != expect_bal) ++bad;
    }
    if (violations) *violations = bad;
    return bad == 0;
}

} // namespace

Report verify_corrections(const CorrectionInstance& inst) {
    Report rep;
    const auto& ctx = inst.ctx;
    const auto& reg = inst.reg;
    DolForm kappa = inst.beta + inst.gamma;

    // constraint residuals (precondition, reported for honesty)
    rep.add_residual("w1_constraint", w_constraint_residual(inst.W1, kappa));
    rep.add_residual("w2_constraint", w_constraint_residual(inst.W2, kappa));
    rep.add_residual("gamma_equation",
                     inst.gamma.dbar() +
                         poisson_bracket(reg, inst.beta, inst.beta).scaled(Scalar::of_fraction(1, 2)));

    DolForm W12 = inst.W2 - inst.W1;
    DolForm mu_sym = mu_correction(kappa, inst.W1, inst.W2);
    DolForm mu_th = mu_sym.y_to_theta();

    // (a) exact mu equation: dbar W12 + mu -| dW12 = 0
    DolForm resid_a = W12.dbar() + contract_sym_once(mu_sym, gradient_covector(W12));
    rep.add_residual("a_mu_equation", resid_a);

    // (b) nu: recursion residual and the bracket-reduced closed form
    DolForm nu = build_nu(inst, W12);
    DolForm lhs_b = schouten_bracket(reg, W12, nu);
    DolForm rhs_b = -mu_th.dbar() -
                    schouten_bracket(reg, mu_th, mu_th).scaled(Scalar::of_fraction(1, 2));
    rep.add_residual("b_nu_recursion", (lhs_b - rhs_b).truncate_t(3));

    // tilde side: -dbar mu~ + 1/2 {mu~, mu~}
    DolForm p1 = -mu_sym.dbar() +
                 poisson_bracket(reg, mu_sym, mu_sym).scaled(Scalar::of_fraction(1, 2));
    rep.add_residual("b_tilde_correspondence", (rhs_b.theta_to_y() - p1).truncate_t(3));

    // Jacobi-reduced closed form: -1/8 {W^ beta, W^ beta} + 1/24 W^ W^ {beta, beta}
    auto hat = [&](const DolForm& f) { return poisson_bracket(reg, W12, f); };
    DolForm hb = hat(inst.beta);
    DolForm p2 = poisson_bracket(reg, hb, hb).scaled(Scalar::of_fraction(-1, 8)) +
                 hat(hat(poisson_bracket(reg, inst.beta, inst.beta)))
                     .scaled(Scalar::of_fraction(1, 24));
    rep.add_residual("b_jacobi_reduction", (p1 - p2).truncate_t(3));

    // (c) xi at leading curving weight: the printed closed form satisfies
    //   xi_norm * [W12, xi] = -dbar nu  (mod weight 2)
    // with the single frozen normalization from the registry
    DolForm xi = build_xi(inst);
    DolForm resid_c = (schouten_bracket(reg, W12, xi).scaled(reg.xi_norm()) + nu.dbar())
                          .truncate_t(2);
    rep.add_residual("c_xi_equation", resid_c);

    // (d) grading audit: every produced term has semiclassical -2, balanced 0
    long v1 = 0, v2 = 0, v3 = 0;
    bool a1 = audit_sc(mu_th, -2, 0, &v1);
    bool a2 = audit_sc(nu, -2, 0, &v2);
    bool a3 = audit_sc(xi, -2, 0, &v3);
    rep.add("d_grading_mu", a1, v1);
    rep.add("d_grading_nu", a2, v2);
    rep.add("d_grading_xi", a3, v3);
    return rep;
}

namespace {

// small deterministic reference instance: constant beta, one antiholomorphic
// Christoffel entry, quadratic curvings; enough to pin the normalization
CorrectionInstance lean_reference_instance(const ConventionRegistry& reg) {
    CorrectionInstance inst;
    inst.ctx = DolCtx::make(3, 3);
    inst.reg = reg;
    const auto& ctx = inst.ctx;
    size_t n = 3;
    inst.beta_ij.assign(n, std::vector<DolForm>(n, DolForm(ctx)));
    std::mt19937 rng(1000);
    std::uniform_int_distribution<int> c(1, 2);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) {
            DolForm b(ctx);
            for (size_t m = 0; m < n; ++m) {
                TagVec tg;
                tg.beta = 1;
                b += DolForm::scalar(ctx, Poly::constant(ctx->ring, Scalar(c(rng))), tg) *
                     DolForm::dxbar(ctx, m);
            }
            inst.beta_ij[i][j] = b;
            inst.beta_ij[j][i] = b;
        }
    inst.beta = DolForm(ctx);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            inst.beta += inst.beta_ij[i][j].scaled_poly(Poly::var(ctx->ring, ctx->y[i]) *
                                                        Poly::var(ctx->ring, ctx->y[j]));
    inst.gamma = poisson_bracket(reg, inst.beta, inst.beta)
                     .scaled(Scalar::of_fraction(-1, 2))
                     .homotopy();
    inst.christoffel.assign(
        n, std::vector<std::vector<Poly>>(n, std::vector<Poly>(n, Poly::zero(ctx->ring))));
    // one antiholomorphic entry makes the curvature nonzero
    inst.christoffel[0][1][2] = Poly::var(ctx->ring, ctx->xb[0]);
    inst.christoffel[0][2][1] = inst.christoffel[0][1][2];
    DolForm kappa = inst.beta + inst.gamma;
    auto solve_w = [&](size_t t_index, const std::string& w_text) {
        Poly t = Poly::var(ctx->ring, ctx->t[t_index]);
        DolForm lead = DolForm::scalar(ctx, ctx->parse(w_text) * t);
        return lead + evaluate_on(kappa, gradient_covector(lead)).homotopy();
    };
    inst.W1 = solve_w(0, "x1^2 - x2*x3");
    inst.W2 = solve_w(1, "x2^2 + x1*x3");
    return inst;
}

} // namespace

bool calibrate_xi_normalization(ConventionRegistry& reg) {
    // one fixed reference instance pins the scalar; every later instance then
    // verifies the full structural identity with it frozen
    ConventionRegistry base = reg;
    base.xi_norm_num = 1;
    base.xi_norm_den = 1;
    CorrectionInstance inst = lean_reference_instance(base);
    DolForm W12 = inst.W2 - inst.W1;
    DolForm nu = build_nu(inst, W12);
    DolForm xi = build_xi(inst);
    DolForm lhs = schouten_bracket(base, W12, xi).truncate_t(2).collapsed();
    DolForm rhs = (-nu.dbar()).truncate_t(2).collapsed();
    if (lhs.is_zero() && rhs.is_zero()) return true;
    if (lhs.is_zero()) return false;
    // solve rhs = lambda * lhs on the first nonzero coefficient, then verify
    Scalar lambda(0);
    for (auto& [k, m] : lhs.terms()) {
        for (auto& t : m[0].terms()) {
            auto it = rhs.terms().find(k);
            if (it == rhs.terms().end()) return false;
            lambda = it->second[0].coeff_of(t.mono) / t.coeff;
            break;
        }
        break;
    }
    DolForm resid = lhs.scaled(lambda) - rhs;
    if (!resid.is_zero()) return false;
    // store as an exact fraction
    mpq_class q = lambda.re().get_num() * 1_mpq;
    (void)q;
    if (!lambda.is_real()) return false;
    reg.xi_norm_num = static_cast<int>(lambda.re().get_num().get_si());
    reg.xi_norm_den = static_cast<int>(lambda.re().get_den().get_si());
    return true;
}

Report verify_correction_corollaries(unsigned seed, const ConventionRegistry& reg) {
    Report rep;

    // Corollary: beta = 0 and W1 = W2 = 0 kill all corrections
    {
        CorrectionInstance inst = make_gamma_only_instance(seed, 2, reg);
        DolForm zero(inst.ctx);
        DolForm mu = mu_correction(inst.gamma, zero, zero);
        rep.add_residual("cor_beta0_w0_mu", mu);
        rep.add_residual("cor_beta0_w0_nu", build_nu(inst, zero));
        rep.add_residual("cor_beta0_w0_xi", build_xi(inst));
    }

    // Corollary: beta = 0 forces dW-weight >= 2 on every term of mu
    {
        CorrectionInstance inst = make_gamma_only_instance(seed + 1, 2, reg);
        DolForm mu = mu_correction(inst.gamma, inst.W1, inst.W2);
        bool ok = !mu.is_zero();
        long bad = 0;
        for (auto& r : mu.gradings())
            if (r.dW < 2) ++bad;
        rep.add("cor_beta0_dw_weight", ok && bad == 0, bad,
                ok ? "every term has dW-weight >= 2" : "mu vanished; instance degenerate");
        rep.add_residual("cor_beta0_nu", build_nu(inst, inst.W2 - inst.W1));
        rep.add_residual("cor_beta0_xi", build_xi(inst));
    }

    // Corollary: flat connection and W1 = W2 = 0 kill all corrections
    {
        CorrectionInstance inst = make_correction_instance(seed + 2, 2, true, reg);
        DolForm zero(inst.ctx);
        DolForm mu = mu_correction(inst.beta + inst.gamma, zero, zero);
        rep.add_residual("cor_flat_w0_mu", mu);
        rep.add_residual("cor_flat_w0_nu", build_nu(inst, zero));
        rep.add_residual("cor_flat_w0_xi", build_xi(inst));
    }
    return rep;
}

} // namespace mfcat::dolb
