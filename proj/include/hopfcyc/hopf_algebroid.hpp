#pragma once

#include <memory>
#include <optional>
#include <string>

#include "hopfcyc/bimodule.hpp"
#include "hopfcyc/report.hpp"

namespace hopfcyc {

using ChainPtr = std::shared_ptr<const TensorChain>;

// Left bialgebroid (R, U), optionally with a translation map making it a
// left Hopf algebroid.  Elements of U ⊗_R U and U ⊗_{R^op} U are stored in
// the quotient bases of `ur` and `urop`; each basis element lifts to a
// single pure tensor of basis elements of U.
struct HopfAlgebroid {
    std::string name;
    AlgebraPtr base;   // R
    AlgebraPtr total;  // U
    AlgebraMap eta;    // R^e -> U
    Matrix source, target;  // U x R: columns s(e_r), t(e_r)

    // r ▹ u ◃ r' = s(r) t(r') u  and  r ▸ u ◂ r' = u s(r') t(r)
    Action lact, ract, blact, bract;

    ChainPtr ur;    // U_◃ ⊗_R ▹U
    ChainPtr urop;  // ▸U ⊗_{R^op} U◃

    Matrix coproduct;                   // ur x U
    Matrix counit;                      // R x U
    std::optional<Matrix> translation;  // urop x U: u -> u_+ ⊗ u_-

    Index dim() const { return total->dim(); }
    Index base_dim() const { return base->dim(); }
    SparseVec s(const SparseVec& r) const { return source.apply(r); }
    SparseVec t(const SparseVec& r) const { return target.apply(r); }
    SparseVec mul(const SparseVec& a, const SparseVec& b) const { return total->multiply(a, b); }
    SparseVec one() const { return total->unit(); }
    SparseVec eps(const SparseVec& u) const { return counit.apply(u); }

    const BalancedTensor& ur_space() const { return *ur->top(); }
    const BalancedTensor& urop_space() const { return *urop->top(); }
    // Quotient basis element k of U ⊗_R U (resp. U ⊗_{R^op} U) as a basis pair.
    std::pair<Index, Index> ur_lift(Index k) const { return ur_space().lift(k); }
    std::pair<Index, Index> urop_lift(Index k) const { return urop_space().lift(k); }
    const Matrix& translation_matrix() const;
};

// Builds the R^e-ring data (actions and both tensor squares) of U; the
// coproduct, counit and translation are left for the caller to fill in.
HopfAlgebroid prepare_algebroid(std::string name, AlgebraPtr base, AlgebraPtr total, Matrix eta);

// β(u ⊗_{R^op} v) = u_(1) ⊗_R u_(2) v, as a matrix urop -> ur.
Matrix galois_beta(const HopfAlgebroid& h);

// Sets translation = β^{-1}(- ⊗ 1); throws NotInvertible if β is not bijective.
HopfAlgebroid translation_from_beta(HopfAlgebroid h);

// U = R^e with s(r) = r⊗1, t(r) = 1⊗r°, Δ(r⊗r̃°) = (r⊗1)⊗(1⊗r̃°),
// ε(r⊗r̃°) = r r̃ and translation (r⊗r̃°) -> (r⊗1)⊗(r̃⊗1).
HopfAlgebroid enveloping_hopf_algebroid(const AlgebraPtr& r);

Report check_bialgebroid(const HopfAlgebroid& h);
Report check_left_hopf(const HopfAlgebroid& h);

}  // namespace hopfcyc
