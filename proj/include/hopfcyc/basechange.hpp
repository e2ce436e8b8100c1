#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hopfcyc/hopf_algebroid.hpp"
#include "hopfcyc/morita.hpp"

namespace hopfcyc {

using AlgebroidPtr = std::shared_ptr<const HopfAlgebroid>;

// Right U-module and left U-comodule M.  The coaction lands in U_◃ ⊗_R M,
// where M carries the comodule's left R-action.
struct Coefficient {
    std::string name;
    AlgebroidPtr over;
    Index dim = 0;
    std::vector<std::string> labels;
    Action left;    // comodule left R-action r m
    Action action;  // right U-action m u
    Action blact;   // r ▸ m = m t(r)
    Action bract;   // m ◂ r = m s(r)
    ChainPtr um;    // U_◃ ⊗_R M
    Matrix coaction;  // um x M
    // P ⊗_R M ⊗_R Q when the coefficient comes from a base change.
    ChainPtr carrier;

    // m r := ε(m_(-1) ◂ r) m_(0), the right R-action induced by the coaction.
    Action coaction_right() const;
};

// Validates both actions and builds U ⊗_R M; the coaction is left zero.
Coefficient prepare_coefficient(std::string name, AlgebroidPtr over, std::vector<std::string> labels, Action left,
                                Action action);

// M = R over U = R^e: m (r ⊗ r̃°) = r̃ m r, coaction m -> (m ⊗ 1) ⊗_R 1.
Coefficient enveloping_unit_coefficient(const AlgebroidPtr& re);

// Module/comodule compatibilities, the action-coaction identity through the
// translation map, stability, and the comodule axioms.
Report check_sayd(const Coefficient& m);

struct BaseChange {
    MoritaContext ctx;
    MoritaContext env;  // enveloping context
    AlgebroidPtr original;
    AlgebroidPtr result;  // over S, translation from the explicit formula
    ChainPtr carrier;     // P^e ⊗_{R^e} U ⊗_{R^e} Q^e
    Action left_se, right_se;  // S^e-bimodule structure of the carrier

    // Basis element k of Ũ as (a, b, u, c, d) for (a ⊗ b°) ⊗ u ⊗ (c ⊗ d°).
    struct Parts {
        Index a, b, u, c, d;
    };
    Parts parts(Index k) const;
    // Class of (a ⊗ b°) ⊗ u ⊗ (c ⊗ d°) with a, d in P and b, c in Q.
    SparseVec element(const SparseVec& a, const SparseVec& b, const SparseVec& u, const SparseVec& c,
                      const SparseVec& d) const;
    SparseVec element(Index a, Index b, const SparseVec& u, Index c, Index d) const;
};

BaseChange base_change_algebroid(const MoritaContext& ctx, const AlgebroidPtr& u);

// M̃ = P ⊗_R M ⊗_R Q with the transported action and coaction.
Coefficient base_change_coefficient(const BaseChange& bc, const Coefficient& m);

// (a ⊗ b°) ⊗ (r ⊗ r̃°) ⊗ (c ⊗ d°) -> φ(a ⊗ rc) ⊗ φ(d r̃ ⊗ b)°, for U = R^e.
Matrix enveloping_identification(const BaseChange& bc);

// check_left_hopf on Ũ, counit of source, the explicit translation against
// the inverted Galois map, and for U = R^e the identification with S^e.
Report check_base_change(const BaseChange& bc);

}  // namespace hopfcyc
