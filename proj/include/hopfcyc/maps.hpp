#pragma once

#include <string>
#include <vector>

#include "hopfcyc/cyclic.hpp"

namespace hopfcyc {

// degrees[n] is the component in degree n.
struct ChainMap {
    std::string name;
    std::vector<Matrix> degrees;
    const Matrix& at(Index n) const { return degrees[static_cast<std::size_t>(n)]; }
};

// Homology: degrees[n]: C_n -> C_{n+1}.  Cohomology: degrees[n]: C^{n+1} -> C^n.
struct Homotopy {
    std::string name;
    std::vector<Matrix> degrees;
    const Matrix& at(Index n) const { return degrees[static_cast<std::size_t>(n)]; }
};

// Deliberate defects used as negative controls.
enum class Perturbation {
    None,
    NegateForward,     // θ (or ζ) negated in degree 1
    NegateBackward,    // γ (or ξ) negated in degree 1
    FlipHomotopyTerm,  // the k = n summand of h_1 with the wrong sign
    SwapDualIndices,   // two dual-basis indices exchanged in the first factor of γ (or ξ)
};
const char* to_string(Perturbation p);

// C_•(U, M) and C_•(Ũ, M̃) with θ: C(U,M) -> C(Ũ,M̃), γ the other way and
// the homotopy h for γθ, all in degrees 0..cap-1 (the modules go to cap).
struct HomologyMaps {
    const BaseChange* bc = nullptr;
    CoefficientPtr m, mt;
    ParaCyclicModule source, target;
    ChainMap theta, gamma;
    Homotopy h;
};

// Cohomology mirror with ζ: C(U,M) -> C(Ũ,M̃), ξ back and h for ξζ.
struct CohomologyMaps {
    const BaseChange* bc = nullptr;
    CoefficientPtr m, mt;
    CocyclicModule source, target;
    ChainMap zeta, xi;
    Homotopy h;
};

// Builds M̃ when mt is null.  `bc` must outlive the result.
HomologyMaps build_homology_maps(const BaseChange& bc, const CoefficientPtr& m, Index cap,
                                 Perturbation p = Perturbation::None, CoefficientPtr mt = nullptr);
CohomologyMaps build_cohomology_maps(const BaseChange& bc, const CoefficientPtr& m, Index cap,
                                     Perturbation p = Perturbation::None, CoefficientPtr mt = nullptr);

Matrix theta_map(const BaseChange& bc, const Coefficient& m, const Coefficient& mt, const ParaCyclicModule& src,
                 const ParaCyclicModule& tgt, Index n, Perturbation p = Perturbation::None);
Matrix gamma_map(const BaseChange& bc, const Coefficient& m, const Coefficient& mt, const ParaCyclicModule& src,
                 const ParaCyclicModule& tgt, Index n, Perturbation p = Perturbation::None);
// h_n: C_n(U,M) -> C_{n+1}(U,M); needs n + 1 <= c.cap.
Matrix homotopy_map(const MoritaContext& ctx, const Coefficient& m, const ParaCyclicModule& c, Index n,
                    Perturbation p = Perturbation::None);
Matrix zeta_map(const BaseChange& bc, const Coefficient& m, const Coefficient& mt, const CocyclicModule& src,
                const CocyclicModule& tgt, Index n, Perturbation p = Perturbation::None);
Matrix xi_map(const BaseChange& bc, const Coefficient& m, const Coefficient& mt, const CocyclicModule& src,
              const CocyclicModule& tgt, Index n, Perturbation p = Perturbation::None);
// h_n: C^{n+1}(U,M) -> C^n(U,M).
Matrix cohomotopy_map(const MoritaContext& ctx, const Coefficient& m, const CocyclicModule& c, Index n,
                      Perturbation p = Perturbation::None);

// b̃θ = θb and bγ = γb̃.
Report verify_chain_maps(const HomologyMaps& maps);
// b h_n + h_{n-1} b = γ_n θ_n - id.
Report verify_homotopy(const HomologyMaps& maps);
// θ t = t̃ θ and γ t̃ = t γ.
Report verify_cyclic_compat(const HomologyMaps& maps);

// β̃ζ = ζβ, βξ = ξβ̃, h_n β_n + β_{n-1} h_{n-1} = ξ_n ζ_n - id, and the
// compatibility with τ.
Report verify_cochain_maps(const CohomologyMaps& maps);
Report verify_cohomotopy(const CohomologyMaps& maps);
Report verify_cocyclic_compat(const CohomologyMaps& maps);

// Dimension equalities for HH, HC on both sides (HC only when both sides
// are cyclic) and their cohomology counterparts.
struct InvarianceTable {
    std::vector<HomologyTable> before, after;
};
Report compare_homology(const ParaCyclicModule& a, const ParaCyclicModule& b, InvarianceTable* out = nullptr);
Report compare_cohomology(const CocyclicModule& a, const CocyclicModule& b, InvarianceTable* out = nullptr);

// Base change, SaYD of M and M̃, cyclic identities, all maps, homotopies and
// the homology comparison, for U with coefficient M along ctx.
Report verify_morita(const MoritaContext& ctx, const AlgebroidPtr& u, const CoefficientPtr& m, Index cap,
                     InvarianceTable* table = nullptr);

// Hochschild and cyclic homology dimensions of an algebra from the plain
// complex A^{⊗(n+1)} and Connes' quotient by 1 - t, degrees 0..top-1.
struct BarDimensions {
    std::vector<Index> hh, hc;
};
BarDimensions bar_complex_dimensions(const AlgebraPtr& a, Index top);

// U = R^e and the matrix context of size k: the generic operators and maps
// transported along m ⊗ (r_1 ⊗ r̃_1°) ⊗ ... -> r̃_n...r̃_1 m ⊗ r_1 ⊗ ... ⊗ r_n
// against their direct forms on M ⊗ R^{⊗n} and M̃ ⊗ S^{⊗n}, plus the
// dimension comparison with the bar complexes of R and M_k(R) when m is R.
Report specialize_classical(const AlgebraPtr& r, Index k, const CoefficientPtr& m, Index cap);

}  // namespace hopfcyc
