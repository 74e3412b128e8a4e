#pragma once

#include "mfcat/parse.hpp"
#include "mfcat/poly.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace mfcat::dolb {

/// Polydisk context: coordinates x_i, conjugates xb_i, symmetric fiber
/// coordinates y_i, optional formal weight variables (t1, t2 for curving
/// weight, eps for dual numbers). Formal weights are truncated: total
/// t-degree >= t_cap and eps-degree >= 2 are dropped everywhere.
struct DolCtx {
    size_t n = 0;
    RingPtr ring;
    std::vector<size_t> x, xb, y;   // variable indices into ring
    std::vector<size_t> t;          // weight variables (may be empty)
    int t_cap = 0;                  // 0 = no truncation
    std::optional<size_t> eps;      // dual-number variable

    static std::shared_ptr<const DolCtx> make(size_t n, int t_cap = 0, bool with_eps = false,
                                              size_t n_t = 2);

    Poly truncate(const Poly& p) const;
    Poly parse(const std::string& s) const { return truncate(parse_poly(s, ring)); }
};

using DolCtxPtr = std::shared_ptr<const DolCtx>;

/// Formal provenance counters per term; semiclassical and related gradings
/// are linear in these.
struct TagVec {
    int8_t beta = 0;   // occurrences of the quadratic deformation atom
    int8_t nab = 0;    // holomorphic derivatives / connection insertions
    int8_t dbar = 0;   // net antiholomorphic differentials (homotopy counts -1)
    int8_t dw = 0;     // undifferentiated dW-atom occurrences
    int8_t ff = 0;     // curvature atoms of bundles

    TagVec operator+(const TagVec& o) const {
        return {static_cast<int8_t>(beta + o.beta), static_cast<int8_t>(nab + o.nab),
                static_cast<int8_t>(dbar + o.dbar), static_cast<int8_t>(dw + o.dw),
                static_cast<int8_t>(ff + o.ff)};
    }
    auto tie() const { return std::tie(beta, nab, dbar, dw, ff); }
    bool operator<(const TagVec& o) const { return tie() < o.tie(); }
    bool operator==(const TagVec& o) const { return tie() == o.tie(); }
};

/// One graded word: antiholomorphic dxb factors, holomorphic dx factors,
/// polyvector theta factors (all exterior), and the matrix parity.
struct FormKey {
    uint32_t abar = 0;
    uint32_t hol = 0;
    uint32_t theta = 0;
    uint8_t mpar = 0;
    TagVec tags;

    auto tie() const { return std::tie(abar, hol, theta, mpar, tags); }
    bool operator<(const FormKey& o) const { return tie() < o.tie(); }
    bool operator==(const FormKey& o) const { return tie() == o.tie(); }
};

int popcount(uint32_t v);

/// Graded tensor field on the polydisk, End(E)-valued (scalar when the
/// bundle has rank 1 and trivial grading). Terms are kept per provenance
/// tag; collapsing tags happens only in zero tests and printing.
class DolForm {
public:
    DolForm() = default;
    explicit DolForm(DolCtxPtr ctx) : ctx_(std::move(ctx)), msize_(1), grading_{0} {}
    DolForm(DolCtxPtr ctx, size_t msize, std::vector<int> grading)
        : ctx_(std::move(ctx)), msize_(msize), grading_(std::move(grading)) {}

    static DolForm scalar(const DolCtxPtr& ctx, const Poly& p, TagVec tags = {});
    static DolForm scalar(const DolCtxPtr& ctx, const std::string& text, TagVec tags = {});
    /// theta_I or dxb_m or dx_I atoms
    static DolForm theta(const DolCtxPtr& ctx, size_t i);
    static DolForm dxbar(const DolCtxPtr& ctx, size_t m);
    static DolForm dx(const DolCtxPtr& ctx, size_t i);
    /// matrix-valued degree-0 form; the matrix is split into parity parts
    static DolForm matrix(const DolCtxPtr& ctx, const std::vector<int>& grading,
                          const std::vector<Poly>& entries, TagVec tags = {});
    static DolForm identity(const DolCtxPtr& ctx, const std::vector<int>& grading);

    const DolCtxPtr& ctx() const { return ctx_; }
    size_t msize() const { return msize_; }
    const std::vector<int>& grading() const { return grading_; }
    const std::map<FormKey, std::vector<Poly>>& terms() const { return terms_; }
    bool is_scalar() const { return msize_ == 1; }

    bool is_zero() const;           // after collapsing tags
    DolForm collapsed() const;      // merge all tag channels

    DolForm operator-() const;
    DolForm& operator+=(const DolForm& o);
    DolForm& operator-=(const DolForm& o);
    friend DolForm operator+(DolForm a, const DolForm& b) { return a += b; }
    friend DolForm operator-(DolForm a, const DolForm& b) { return a -= b; }
    friend DolForm operator*(const DolForm& a, const DolForm& b);
    DolForm scaled(const Scalar& c) const;
    DolForm scaled_poly(const Poly& p) const;

    /// graded commutator a*b - (-1)^{|a||b|} b*a (homogeneous inputs)
    static DolForm supercommutator(const DolForm& a, const DolForm& b);

    bool homogeneous_degree(int* deg) const;   // total Z2 degree if homogeneous

    DolForm dbar(int extra_dbar_tag = 1) const;      // antiholomorphic differential
    DolForm del() const;                             // holomorphic differential (dx-valued)
    DolForm partial_x(size_t i, int nab_tag = 1) const;
    DolForm partial_xb(size_t m) const;
    DolForm partial_y(size_t i) const;
    DolForm partial_theta(size_t i) const;
    DolForm homotopy() const;                        // radial dbar-homotopy
    DolForm eval_at_xbar0() const;                   // degree-0, xb -> 0 part

    /// substitute y_i := comps[i] (scalar even forms)
    DolForm substitute_y(const std::vector<DolForm>& comps) const;
    /// fiber-degree-1 conversions
    DolForm y_to_theta() const;
    DolForm theta_to_y() const;

    /// drop terms whose combined t-degree is >= bound (per monomial)
    DolForm truncate_t(int bound) const;
    /// keep only terms whose combined t-degree equals d
    DolForm t_component(int d) const;
    DolForm eps_component(int d) const;
    /// the eps^d coefficient with the eps factor stripped
    DolForm eps_coefficient(int d) const;

    /// super Kronecker product onto End(E (x) F)
    static DolForm kron(const DolForm& a, const DolForm& b);

    std::string str() const;

    struct GradingRecord {
        int dolbeault;       // structural dxb count plus curvature-atom tags
        int sym_or_wedge;    // y-degree plus theta count
        int semiclassical;
        int dW;
        int balanced;
        int total;
    };
    /// per-(term, monomial) grading records
    std::vector<GradingRecord> gradings() const;

    void add_term(const FormKey& key, std::vector<Poly> mat);

private:
    DolCtxPtr ctx_;
    size_t msize_ = 1;
    std::vector<int> grading_{0};
    std::map<FormKey, std::vector<Poly>> terms_;
};

/// merge sign helpers exposed for tests
int merge_inversions(uint32_t a, uint32_t b);

} // namespace mfcat::dolb
