#pragma once

#include "mfcat/matfact.hpp"
#include "mfcat/modgb.hpp"

#include <optional>

namespace mfcat {

/// The 2-periodic Hom complex of two factorizations, flattened. Even maps are
/// pairs (A : M0->N0, B : M1->N1), odd maps (C : M0->N1, E : M1->N0); the
/// differential is the supercommutator f -> D_N f - (-1)^{|f|} f D_M.
struct HomComplex {
    RingPtr ring;
    size_t rank_even = 0, rank_odd = 0;
    std::vector<ModVec> d_even_cols;   // rank_even columns in R^rank_odd
    std::vector<ModVec> d_odd_cols;    // rank_odd columns in R^rank_even
    Poly square;                       // W_N - W_M; the complex squares to square*Id
};

HomComplex hom_complex(const MatFact& m, const MatFact& n);

struct ExtResult {
    FPModule even;
    FPModule odd;
    long dim_even = 0;   // -1 = infinite
    long dim_odd = 0;
};

/// Z2-graded Ext of two factorizations with equal curving.
ExtResult ext(const MatFact& m, const MatFact& n);

/// Homology presentation of ker(out)/im(in) inside R^dim, where `out_cols`
/// are the columns of the outgoing map and `in_cols` generate the image.
FPModule module_homology(const std::vector<ModVec>& out_cols, size_t dim,
                         const std::vector<ModVec>& in_cols, const RingPtr& ring);

/// Multiplication table of even Ext^0 endomorphisms on the standard-monomial
/// basis, with exact structure constants. Requires finite even dimension.
struct EndAlgebra {
    size_t dim = 0;
    std::vector<std::string> basis;                          // printable labels
    std::vector<std::vector<std::vector<Scalar>>> table;     // table[i][j] = coords of b_i * b_j
    std::vector<Scalar> unit;                                // coords of the identity
    bool unital = false;
    bool associative = false;
};

EndAlgebra end_algebra(const MatFact& m);

/// Coordinates of an even cocycle (pair A : M0->M0, B : M1->M1) in the
/// end_algebra basis; nullopt when the map is not a cocycle.
std::optional<std::vector<Scalar>> end_algebra_coords(const MatFact& m, const EndAlgebra& alg,
                                                      const PolyMatrix& A, const PolyMatrix& B);

/// Z2-collapsed homology dimensions of the Koszul complex K(p).
std::pair<long, long> koszul_homology(const std::vector<Poly>& p, const RingPtr& ring);

/// Independent oracle: Ext dimensions via dense exact linear algebra over the
/// truncation R/m^N, doubling N until two consecutive agreements; nullopt when
/// no stabilization occurs below the cap.
std::optional<std::pair<long, long>> ext_dims_truncation_oracle(const MatFact& m,
                                                                const MatFact& n,
                                                                int initial_n = 8,
                                                                int cap = 64);

} // namespace mfcat
