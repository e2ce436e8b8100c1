#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hopfcyc/bimodule.hpp"

namespace hopfcyc {

// One summand c · x ⊗ y of a dual-basis tensor, x and y basis indices.
struct DualTerm {
    Index left, right;
    Scalar coeff;
};

// Morita context (R, S, P, Q, φ, ψ) with P an (S,R)-bimodule and Q an
// (R,S)-bimodule.  φ and ψ are stored on basis pairs (ambient form).
struct MoritaContext {
    std::string name;
    AlgebraPtr R, S;
    Bimodule P, Q;
    std::shared_ptr<const BalancedTensor> pq;  // P ⊗_R Q
    std::shared_ptr<const BalancedTensor> qp;  // Q ⊗_S P
    Matrix phi_pairs;  // S x (dim P · dim Q)
    Matrix psi_pairs;  // R x (dim Q · dim P)
    Matrix phi, psi;   // descended: S x pq, R x qp

    // φ^{-1}(1_S) = Σ_j p'_j ⊗ q'_j  (left = p', right = q')
    std::vector<DualTerm> phi_inv_one;
    // ψ^{-1}(1_R) = Σ_i q_i ⊗ p_i   (left = q, right = p)
    std::vector<DualTerm> psi_inv_one;

    Index p_dim() const { return P.dim; }
    Index q_dim() const { return Q.dim; }
    // p q := φ(p ⊗ q) in S and q p := ψ(q ⊗ p) in R, on basis elements.
    const SparseVec& pq_product(Index p, Index q) const { return phi_pairs.col(p * Q.dim + q); }
    const SparseVec& qp_product(Index q, Index p) const { return psi_pairs.col(q * P.dim + p); }
    SparseVec pq_product(const SparseVec& p, const SparseVec& q) const;
    SparseVec qp_product(const SparseVec& q, const SparseVec& p) const;

    // The i-family {q_i, p_i} and j-family {p'_j, q'_j} used by the formulas.
    const std::vector<DualTerm>& i_family() const { return psi_inv_one; }
    const std::vector<DualTerm>& j_family() const { return phi_inv_one; }
};

// Validates bijectivity (NotIso), equivariance (NotEquivariant) and the
// compatibility of φ and ψ on triple tensors (CompatibilityFail).
MoritaContext make_morita_context(std::string name, AlgebraPtr R, AlgebraPtr S, Bimodule P, Bimodule Q,
                                  Matrix phi_pairs, Matrix psi_pairs);

MoritaContext identity_context(const AlgebraPtr& R);
// S = M_k(R), P = columns R^k, Q = rows; φ = outer product, ψ = inner product.
MoritaContext matrix_context(const AlgebraPtr& R, Index k);
// (R^e, S^e, P ⊗ Q°, Q ⊗ P°, φ^e, ψ^e).
MoritaContext enveloping_context(const MoritaContext& ctx);

}  // namespace hopfcyc
