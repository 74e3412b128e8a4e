#include "mfcat/dolbeault/ops.hpp"

#include <fstream>
#include <array>
#include <random>
#include <sstream>
#include <stdexcept>

namespace mfcat::dolb {

std::string ConventionRegistry::str() const {
    std::ostringstream os;
    os << "schouten=(" << schouten_s1 << "," << schouten_s2 << ";" << schouten_e1 << ","
       << schouten_e2 << ") poisson=" << poisson_sign << " xi_norm=" << xi_norm_num << "/"
       << xi_norm_den << " zeta2_norm=" << zeta2_norm_num << "/" << zeta2_norm_den
       << " f_sign=" << f_sign << " covariant_mc=" << (covariant_mc ? 1 : 0)
       << (frozen ? " [frozen]" : " [unfrozen]");
    return os.str();
}

std::string ConventionRegistry::to_json() const {
    std::ostringstream os;
    os << "{\"schouten_s1\": " << schouten_s1 << ", \"schouten_s2\": " << schouten_s2
       << ", \"schouten_e1\": " << schouten_e1 << ", \"schouten_e2\": " << schouten_e2
       << ", \"poisson_sign\": " << poisson_sign << ", \"f_sign\": " << f_sign
       << ", \"xi_norm_num\": " << xi_norm_num << ", \"xi_norm_den\": " << xi_norm_den
       << ", \"zeta2_norm_num\": " << zeta2_norm_num
       << ", \"zeta2_norm_den\": " << zeta2_norm_den
       << ", \"covariant_mc\": " << (covariant_mc ? "true" : "false") << "}";
    return os.str();
}

std::optional<ConventionRegistry> ConventionRegistry::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    auto find_int = [&](const std::string& key) -> std::optional<int> {
        auto pos = text.find("\"" + key + "\"");
        if (pos == std::string::npos) return std::nullopt;
        pos = text.find(':', pos);
        if (pos == std::string::npos) return std::nullopt;
        ++pos;
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
        if (text.compare(pos, 4, "true") == 0) return 1;
        if (text.compare(pos, 5, "false") == 0) return 0;
        return std::stoi(text.substr(pos));
    };
    ConventionRegistry reg;
    auto s1 = find_int("schouten_s1"), s2 = find_int("schouten_s2"),
         e1 = find_int("schouten_e1"), e2 = find_int("schouten_e2"),
         ps = find_int("poisson_sign"), fs = find_int("f_sign"), cm = find_int("covariant_mc"),
         xn = find_int("xi_norm_num"), xd = find_int("xi_norm_den");
    if (!s1 || !s2 || !e1 || !e2 || !ps || !fs || !cm) return std::nullopt;
    reg.schouten_s1 = *s1;
    reg.schouten_s2 = *s2;
    reg.schouten_e1 = *e1;
    reg.schouten_e2 = *e2;
    reg.poisson_sign = *ps;
    reg.f_sign = *fs;
    if (xn) reg.xi_norm_num = *xn;
    if (xd) reg.xi_norm_den = *xd;
    if (auto zn = find_int("zeta2_norm_num")) reg.zeta2_norm_num = *zn;
    if (auto zd = find_int("zeta2_norm_den")) reg.zeta2_norm_den = *zd;
    reg.covariant_mc = *cm != 0;
    reg.frozen = true;
    return reg;
}

void ConventionRegistry::save_json_file(const std::string& path) const {
    std::ofstream out(path);
    out << to_json() << "\n";
}

DolForm poisson_bracket(const ConventionRegistry& reg, const DolForm& a, const DolForm& b) {
    const DolCtxPtr& ctx = a.ctx();
    DolForm out(ctx, a.msize(), a.grading());
    for (size_t i = 0; i < ctx->n; ++i) {
        out += a.partial_x(i) * b.partial_y(i);
        out -= a.partial_y(i) * b.partial_x(i);
    }
    return reg.poisson_sign < 0 ? -out : out;
}

DolForm schouten_bracket(const ConventionRegistry& reg, const DolForm& a, const DolForm& b) {
    int da = 0;
    if (!a.homogeneous_degree(&da))
        throw std::invalid_argument("schouten_bracket: inhomogeneous first argument");
    const DolCtxPtr& ctx = a.ctx();
    DolForm out(ctx, a.msize(), a.grading());
    for (size_t i = 0; i < ctx->n; ++i) {
        DolForm t1 = a.partial_theta(i) * b.partial_x(i);
        DolForm t2 = a.partial_x(i) * b.partial_theta(i);
        int s1 = reg.schouten_s1, s2 = reg.schouten_s2;
        if (reg.schouten_e1 && (da & 1)) s1 = -s1;
        if (reg.schouten_e2 && (da & 1)) s2 = -s2;
        if (s1 < 0) t1 = -t1;
        if (s2 < 0) t2 = -t2;
        out += t1;
        out += t2;
    }
    return out;
}

DolForm bracket(const ConventionRegistry& reg, BracketKind kind, const DolForm& a,
                const DolForm& b) {
    return kind == BracketKind::POISSON ? poisson_bracket(reg, a, b)
                                        : schouten_bracket(reg, a, b);
}

Covector gradient_covector(const DolForm& w) {
    const DolCtxPtr& ctx = w.ctx();
    Covector v;
    for (size_t i = 0; i < ctx->n; ++i) {
        DolForm c = w.partial_x(i);
        // mark as an underived dW atom
        DolForm tagged(ctx, c.msize(), c.grading());
        for (auto& [k, m] : c.terms()) {
            FormKey nk = k;
            nk.tags.dw += 1;
            tagged.add_term(nk, m);
        }
        v.push_back(std::move(tagged));
    }
    return v;
}

DolForm evaluate_on(const DolForm& sym_form, const Covector& v) {
    return sym_form.substitute_y(v);
}

DolForm contract_sym_once(const DolForm& sym_form, const Covector& v) {
    const DolCtxPtr& ctx = sym_form.ctx();
    DolForm out(ctx, sym_form.msize(), sym_form.grading());
    for (size_t i = 0; i < ctx->n; ++i) out += sym_form.partial_y(i) * v[i];
    return out;
}

DolForm contract_wedge_once(const DolForm& wedge_form, const Covector& v) {
    const DolCtxPtr& ctx = wedge_form.ctx();
    DolForm out(ctx, wedge_form.msize(), wedge_form.grading());
    for (size_t i = 0; i < ctx->n; ++i) out += wedge_form.partial_theta(i) * v[i];
    return out;
}

namespace {

int fiber_degree_uniform(const DolForm& f) {
    int deg = -1;
    const DolCtxPtr& ctx = f.ctx();
    for (auto& [k, m] : f.terms()) {
        int nth = popcount(k.theta);
        for (auto& p : m)
            for (auto& t : p.terms()) {
                int yd = 0;
                for (size_t i = 0; i < ctx->n; ++i) yd += t.mono[ctx->y[i]];
                int d = yd + nth;
                if (deg < 0) deg = d;
                else if (deg != d) throw std::invalid_argument("contract: mixed fiber degree");
            }
    }
    return deg < 0 ? 0 : deg;
}

} // namespace

DolForm contract(const DolForm& form, const std::vector<Covector>& args) {
    int deg = fiber_degree_uniform(form);
    if (static_cast<size_t>(deg) != args.size())
        throw std::invalid_argument("contract: arity mismatch (fiber degree " +
                                    std::to_string(deg) + ", " + std::to_string(args.size()) +
                                    " arguments)");
    bool wedge = false;
    for (auto& [k, m] : form.terms())
        if (k.theta) wedge = true;
    DolForm cur = form;
    for (auto& a : args)
        cur = wedge ? contract_wedge_once(cur, a) : contract_sym_once(cur, a);
    return cur;
}

namespace {

// y := base + s*dirA + s*t*dirB expansion keyed by (deg s, deg t); the walk
// is per y-monomial with an exact multinomial expansion
std::map<std::pair<int, int>, DolForm> expand_affine(const DolForm& form, const Covector& base,
                                                     const Covector& dirA, const Covector& dirB,
                                                     bool with_b) {
    const DolCtxPtr& ctx = form.ctx();
    std::map<std::pair<int, int>, DolForm> out;
    for (auto& [k, m] : form.terms()) {
        for (size_t e = 0; e < m.size(); ++e) {
            for (auto& t : m[e].terms()) {
                Monomial stripped = t.mono;
                std::vector<size_t> word;
                for (size_t i = 0; i < ctx->n; ++i) {
                    int32_t d = stripped[ctx->y[i]];
                    for (int32_t c = 0; c < d; ++c) word.push_back(i);
                    stripped[ctx->y[i]] = 0;
                }
                DolForm bare(ctx, form.msize(), form.grading());
                std::vector<Poly> nm(m.size(), Poly::zero(ctx->ring));
                nm[e] = Poly::term(ctx->ring, stripped, t.coeff);
                bare.add_term(k, std::move(nm));

                // iterate over assignments of each slot to {base, dirA, dirB}
                size_t choices = with_b ? 3 : 2;
                std::vector<size_t> assign(word.size(), 0);
                for (;;) {
                    DolForm piece = bare;
                    int ds = 0, dt = 0;
                    for (size_t l = 0; l < word.size(); ++l) {
                        const Covector& arg =
                            assign[l] == 0 ? base : (assign[l] == 1 ? dirA : dirB);
                        if (assign[l] == 1) ds += 1;
                        if (assign[l] == 2) { ds += 1; dt += 1; }
                        piece = piece * arg[word[l]];
                    }
                    auto key = std::make_pair(ds, dt);
                    auto it = out.find(key);
                    if (it == out.end()) out.emplace(key, piece);
                    else it->second += piece;
                    size_t l = 0;
                    while (l < word.size()) {
                        if (++assign[l] < choices) break;
                        assign[l] = 0;
                        ++l;
                    }
                    if (l == word.size()) break;
                }
            }
        }
    }
    return out;
}

Covector cov_sub(const Covector& a, const Covector& b) {
    Covector out;
    for (size_t i = 0; i < a.size(); ++i) out.push_back(a[i] - b[i]);
    return out;
}

} // namespace

// integral form of the first divided difference:
//   ds kappa(v1, v2) = sum_I y_I int_0^1 (d kappa / d y_I)(v1 + s (v2 - v1)) ds,
// symmetric by the s -> 1-s substitution and exact over the rationals.
DolForm divided_difference1(const DolForm& kappa, const Covector& v1, const Covector& v2) {
    const DolCtxPtr& ctx = kappa.ctx();
    Covector dir = cov_sub(v2, v1);
    Covector zero(v1.size(), DolForm(ctx));
    DolForm out(ctx, kappa.msize(), kappa.grading());
    for (size_t i = 0; i < ctx->n; ++i) {
        auto series = expand_affine(kappa.partial_y(i), v1, dir, zero, false);
        DolForm slot(ctx, kappa.msize(), kappa.grading());
        for (auto& [key, val] : series) slot += val.scaled(Scalar::of_fraction(1, key.first + 1));
        out += slot.scaled_poly(Poly::var(ctx->ring, ctx->y[i]));
    }
    return out;
}

// second divided difference as the simplex average of the half Hessian:
//   ds2 = (1/2) sum_{IJ} y_I y_J int int s (d^2 kappa/dy_I dy_J)(v1+s(v2-v1)+st(v3-v2)) dt ds
DolForm divided_difference2(const DolForm& kappa, const Covector& v1, const Covector& v2,
                            const Covector& v3) {
    const DolCtxPtr& ctx = kappa.ctx();
    Covector a = cov_sub(v2, v1), b = cov_sub(v3, v2);
    DolForm out(ctx, kappa.msize(), kappa.grading());
    for (size_t i = 0; i < ctx->n; ++i) {
        for (size_t j = 0; j < ctx->n; ++j) {
            auto series = expand_affine(kappa.partial_y(i).partial_y(j), v1, a, b, true);
            DolForm slot(ctx, kappa.msize(), kappa.grading());
            for (auto& [key, val] : series) {
                Scalar w = Scalar::of_fraction(1, key.first + 2) *
                           Scalar::of_fraction(1, key.second + 1);
                slot += val.scaled(w);
            }
            out += slot.scaled_poly(Poly::var(ctx->ring, ctx->y[i]) *
                                    Poly::var(ctx->ring, ctx->y[j]));
        }
    }
    return out.scaled(Scalar::of_fraction(1, 2));
}

// ----- calibration -----

namespace {

Poly rand_poly(const DolCtxPtr& ctx, std::mt19937& rng, const std::vector<size_t>& vars,
               int deg, int terms) {
    std::uniform_int_distribution<int> c(-2, 2);
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

DolForm rand_wedge_form(const DolCtxPtr& ctx, std::mt19937& rng, int theta_deg, int abar_deg) {
    DolForm out(ctx);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(ctx->n) - 1);
    for (int rep = 0; rep < 2; ++rep) {
        uint32_t th = 0, ab = 0;
        while (popcount(th) < theta_deg) th |= 1u << pick(rng);
        while (popcount(ab) < abar_deg) ab |= 1u << pick(rng);
        FormKey k;
        k.theta = th;
        k.abar = ab;
        DolForm piece(ctx);
        piece.add_term(k, {rand_poly(ctx, rng, ctx->x, 2, 3)});
        out += piece;
    }
    return out;
}

bool check_schouten_candidate(int s1, int s2, int e1, int e2, unsigned seed) {
    ConventionRegistry reg;
    reg.schouten_s1 = s1;
    reg.schouten_s2 = s2;
    reg.schouten_e1 = e1;
    reg.schouten_e2 = e2;
    auto ctx = DolCtx::make(3);
    std::mt19937 rng(seed + 100);

    // identity [W, nu] = 2 nu^{IJ} (d_J W) th_I for antisymmetric nu
    for (int rep = 0; rep < 3; ++rep) {
        Poly W = rand_poly(ctx, rng, ctx->x, 3, 4);
        DolForm Wf = DolForm::scalar(ctx, W);
        // nu = sum_{I<J} c_{IJ} th_I th_J
        DolForm nu(ctx);
        std::vector<std::vector<Poly>> comp(ctx->n, std::vector<Poly>(ctx->n, Poly::zero(ctx->ring)));
        for (size_t i = 0; i < ctx->n; ++i)
            for (size_t j = i + 1; j < ctx->n; ++j) {
                Poly c = rand_poly(ctx, rng, ctx->x, 2, 2);
                comp[i][j] = c;
                comp[j][i] = -c;
                nu += DolForm::scalar(ctx, c) * DolForm::theta(ctx, i) * DolForm::theta(ctx, j);
            }
        DolForm lhs = schouten_bracket(reg, Wf, nu);
        DolForm rhs(ctx);
        for (size_t i = 0; i < ctx->n; ++i)
            for (size_t j = 0; j < ctx->n; ++j)
                rhs += DolForm::scalar(ctx, comp[i][j] * W.derivative(ctx->x[j])) *
                       DolForm::theta(ctx, i);
        if (!(lhs - rhs).is_zero()) return false;
    }

    // graded antisymmetry [a,b] = -(-1)^{(|a|+1)(|b|+1)}[b,a], mixed parities
    rng.seed(seed + 200);
    for (int rep = 0; rep < 8; ++rep) {
        DolForm a = rand_wedge_form(ctx, rng, 1 + rep % 2, rep / 2 % 2);
        DolForm b = rand_wedge_form(ctx, rng, 1 + (rep + 1) % 2, (rep + 1) / 2 % 2);
        int da = 0, db = 0;
        a.homogeneous_degree(&da);
        b.homogeneous_degree(&db);
        DolForm ab = schouten_bracket(reg, a, b);
        DolForm ba = schouten_bracket(reg, b, a);
        int sign = ((da + 1) * (db + 1)) % 2 ? 1 : -1;
        DolForm resid = ab - (sign > 0 ? ba : -ba);
        if (!resid.is_zero()) return false;
    }

    // graded Jacobi on shifted degrees:
    // [a,[b,c]] = [[a,b],c] + (-1)^{(|a|+1)(|b|+1)} [b,[a,c]]
    rng.seed(seed + 300);
    for (int rep = 0; rep < 4; ++rep) {
        DolForm a = rand_wedge_form(ctx, rng, 1 + rep % 2, 0);
        DolForm b = rand_wedge_form(ctx, rng, 1 + (rep / 2) % 2, 1);
        DolForm c = rand_wedge_form(ctx, rng, 1, rep % 2);
        int da = 0, db = 0;
        a.homogeneous_degree(&da);
        b.homogeneous_degree(&db);
        DolForm lhs = schouten_bracket(reg, a, schouten_bracket(reg, b, c));
        DolForm r1 = schouten_bracket(reg, schouten_bracket(reg, a, b), c);
        DolForm r2 = schouten_bracket(reg, b, schouten_bracket(reg, a, c));
        int sign = ((da + 1) * (db + 1)) % 2 ? -1 : 1;
        DolForm resid = lhs - r1 - (sign > 0 ? r2 : -r2);
        if (!resid.is_zero()) return false;
    }

    // Leibniz with the wedge product: [a, bc] = [a,b]c + (-1)^{(|a|+1)|b|} b[a,c]
    rng.seed(seed + 400);
    for (int rep = 0; rep < 6; ++rep) {
        DolForm a = rand_wedge_form(ctx, rng, 1 + rep % 2, rep / 3 % 2);
        DolForm b = rand_wedge_form(ctx, rng, 1, (rep / 2) % 2);
        DolForm c = rand_wedge_form(ctx, rng, 1 + (rep + 1) % 2, 0);
        int da = 0, db = 0;
        a.homogeneous_degree(&da);
        b.homogeneous_degree(&db);
        DolForm lhs = schouten_bracket(reg, a, b * c);
        DolForm t2 = b * schouten_bracket(reg, a, c);
        int sign = ((da + 1) * db) % 2 ? -1 : 1;
        DolForm rhs = schouten_bracket(reg, a, b) * c + (sign > 0 ? t2 : -t2);
        if (!(lhs - rhs).is_zero()) return false;
    }
    return true;
}

bool check_poisson_candidate(int ps, unsigned seed) {
    ConventionRegistry reg;
    reg.poisson_sign = ps;
    auto ctx = DolCtx::make(3);
    std::mt19937 rng(seed + 17);

    // {W, beta} = 2 beta^{IJ} (d_I W) y_J for symmetric beta
    for (int rep = 0; rep < 3; ++rep) {
        Poly W = rand_poly(ctx, rng, ctx->x, 3, 4);
        DolForm Wf = DolForm::scalar(ctx, W);
        std::vector<std::vector<Poly>> comp(ctx->n, std::vector<Poly>(ctx->n, Poly::zero(ctx->ring)));
        DolForm beta(ctx);
        for (size_t i = 0; i < ctx->n; ++i)
            for (size_t j = i; j < ctx->n; ++j) {
                Poly c = rand_poly(ctx, rng, ctx->x, 2, 2);
                comp[i][j] = c;
                comp[j][i] = c;
                Poly yy = Poly::var(ctx->ring, ctx->y[i]) * Poly::var(ctx->ring, ctx->y[j]);
                Scalar mult(i == j ? 1 : 2);
                beta += DolForm::scalar(ctx, c * yy * mult);
            }
        DolForm lhs = poisson_bracket(reg, Wf, beta);
        DolForm rhs(ctx);
        for (size_t i = 0; i < ctx->n; ++i)
            for (size_t j = 0; j < ctx->n; ++j)
                rhs += DolForm::scalar(ctx, comp[i][j] * W.derivative(ctx->x[i]) * Scalar(2) *
                                                Poly::var(ctx->ring, ctx->y[j]));
        if (!(lhs - rhs).is_zero()) return false;
    }
    return true;
}

} // namespace

ConventionRegistry calibrate_registry(unsigned seed) {
    std::vector<std::array<int, 4>> schouten_ok;
    for (int s1 : {1, -1})
        for (int s2 : {1, -1})
            for (int e1 : {0, 1})
                for (int e2 : {0, 1})
                    if (check_schouten_candidate(s1, s2, e1, e2, seed))
                        schouten_ok.push_back({s1, s2, e1, e2});
    std::vector<int> poisson_ok;
    for (int ps : {1, -1})
        if (check_poisson_candidate(ps, seed)) poisson_ok.push_back(ps);
    if (schouten_ok.size() != 1 || poisson_ok.size() != 1)
        throw std::runtime_error("calibrate_registry: no unique sign assignment (" +
                                 std::to_string(schouten_ok.size()) + " schouten, " +
                                 std::to_string(poisson_ok.size()) + " poisson candidates)");
    ConventionRegistry reg;
    reg.schouten_s1 = schouten_ok[0][0];
    reg.schouten_s2 = schouten_ok[0][1];
    reg.schouten_e1 = schouten_ok[0][2];
    reg.schouten_e2 = schouten_ok[0][3];
    reg.poisson_sign = poisson_ok[0];
    // curvature orientation is fixed by the curved Bianchi identity; the
    // bundle module validates it at construction time
    reg.f_sign = 1;
    reg.covariant_mc = true;
    reg.frozen = true;
    return reg;
}

} // namespace mfcat::dolb
