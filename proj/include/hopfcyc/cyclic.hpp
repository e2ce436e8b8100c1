#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hopfcyc/basechange.hpp"

namespace hopfcyc {

using CoefficientPtr = std::shared_ptr<const Coefficient>;

// C_n = M ⊗_{R^op} U ⊗_{R^op} ... ⊗_{R^op} U (n copies of U), n = 0..cap.
struct ParaCyclicModule {
    std::string name;
    CoefficientPtr coeff;
    Index cap = 0;
    std::vector<ChainPtr> spaces;
    std::vector<std::vector<Matrix>> faces;         // faces[n][i]: C_n -> C_{n-1}, 1 <= n <= cap
    std::vector<std::vector<Matrix>> degeneracies;  // degeneracies[n][i]: C_n -> C_{n+1}, n < cap
    std::vector<Matrix> cyclic;                     // t_n

    Index dim(Index n) const { return spaces[static_cast<std::size_t>(n)]->dim(); }
    const Matrix& d(Index n, Index i) const { return faces[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)]; }
    const Matrix& s(Index n, Index i) const {
        return degeneracies[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
    }
    const Matrix& t(Index n) const { return cyclic[static_cast<std::size_t>(n)]; }
    Matrix b(Index n) const;        // Σ_{i=0}^{n} (-1)^i d_i
    Matrix b_prime(Index n) const;  // Σ_{i=0}^{n-1} (-1)^i d_i
};

// C^n = U ⊗_R ... ⊗_R U ⊗_R M (n copies of U), n = 0..cap.
struct CocyclicModule {
    std::string name;
    CoefficientPtr coeff;
    Index cap = 0;
    std::vector<ChainPtr> spaces;
    std::vector<std::vector<Matrix>> cofaces;         // cofaces[n][i]: C^n -> C^{n+1}, n < cap, i = 0..n+1
    std::vector<std::vector<Matrix>> codegeneracies;  // codegeneracies[n][i]: C^n -> C^{n-1}, i = 0..n-1
    std::vector<Matrix> cocyclic;                     // τ_n

    Index dim(Index n) const { return spaces[static_cast<std::size_t>(n)]->dim(); }
    const Matrix& delta(Index n, Index i) const {
        return cofaces[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
    }
    const Matrix& sigma(Index n, Index i) const {
        return codegeneracies[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
    }
    const Matrix& tau(Index n) const { return cocyclic[static_cast<std::size_t>(n)]; }
    Matrix beta(Index n) const;        // C^n -> C^{n+1}: Σ_{i=0}^{n+1} (-1)^i δ_i
    Matrix beta_prime(Index n) const;  // C^n -> C^{n+1}: Σ_{i=0}^{n} (-1)^i δ_i
};

ParaCyclicModule build_cyclic_module(const CoefficientPtr& m, Index cap);
CocyclicModule build_cocyclic_module(const CoefficientPtr& m, Index cap);

// Simplicial and para-cyclic identities in every available degree, plus
// t_n^{n+1} = id reported separately as "cyclic".
Report check_cyclic_module(const ParaCyclicModule& c);
Report check_cocyclic_module(const CocyclicModule& c);

enum class HomologyKind { HH, HC, coHH, coHC };
const char* to_string(HomologyKind kind);

// dims[n] for n = 0..cap-1; the top degree only has a kernel dimension,
// which is an upper bound for its homology and is flagged as incomplete.
struct HomologyTable {
    HomologyKind kind;
    std::vector<Index> dims;
    Index top_degree = 0;
    Index top_bound = 0;
};

HomologyTable hochschild_homology(const ParaCyclicModule& c);
// Connes' bicomplex (b, -b', 1 - t, N) with the signed cyclic operator.
// Throws NotCyclic if t^{n+1} != id in a degree it needs.
HomologyTable cyclic_homology(const ParaCyclicModule& c);
HomologyTable hochschild_cohomology(const CocyclicModule& c);
HomologyTable cyclic_cohomology(const CocyclicModule& c);

// Closed formula for the cyclic operator of C_n(Ũ, M̃) in terms of the data
// of U and M, on the spaces of `target` = build_cyclic_module(M̃, ...).
Matrix tilde_t_explicit(const BaseChange& bc, const Coefficient& m, const Coefficient& mt,
                        const ParaCyclicModule& target, Index n);

}  // namespace hopfcyc
