#include "doctest.h"

#include "hopfcyc/maps.hpp"

using namespace hopfcyc;

namespace {

AlgebroidPtr env(const AlgebraPtr& r) { return std::make_shared<const HopfAlgebroid>(enveloping_hopf_algebroid(r)); }

CoefficientPtr unit_coeff(const AlgebroidPtr& u) {
    return std::make_shared<const Coefficient>(enveloping_unit_coefficient(u));
}

void require_all_pass(const Report& rep) {
    INFO(rep.text());
    CHECK(rep.all_pass());
}

bool entry_passes(const Report& rep, const std::string& name) {
    for (const auto& c : rep.checks())
        if (c.name == name) return c.pass;
    FAIL("no entry " << name);
    return false;
}

}  // namespace

TEST_CASE("degree-0 maps for the matrix context over Q") {
    auto u = env(rationals());
    BaseChange bc = base_change_algebroid(matrix_context(rationals(), 2), u);
    HomologyMaps x = build_homology_maps(bc, unit_coeff(u), 1);
    // θ_0(1) is a single pure tensor e_1 ⊗ 1 ⊗ e_1ᵀ
    REQUIRE(bc.ctx.i_family().size() == 1);
    const auto& term = bc.ctx.i_family()[0];
    SparseVec expect = x.mt->carrier->pure(std::vector<Index>{term.right, 0, term.left});
    expect.scale(term.coeff);
    CHECK(x.theta.at(0).col(0) == expect);
    CHECK(x.gamma.at(0) * x.theta.at(0) == Matrix::identity(1));
    // γ_0(p ⊗ m ⊗ q) = (q·p) m
    for (Index k = 0; k < x.mt->dim; ++k) {
        const auto& l = x.mt->carrier->lift(k);
        CHECK(x.gamma.at(0).col(k) == bc.ctx.qp_product(l[2], l[0]));
    }
}

TEST_CASE("maps, homotopy and cyclic compatibility along matrix contexts") {
    for (auto r : {rationals(), dual_numbers()}) {
        auto u = env(r);
        BaseChange bc = base_change_algebroid(matrix_context(r, 2), u);
        HomologyMaps x = build_homology_maps(bc, unit_coeff(u), 2);
        require_all_pass(verify_chain_maps(x));
        require_all_pass(verify_homotopy(x));
        require_all_pass(verify_cyclic_compat(x));
        require_all_pass(compare_homology(x.source, x.target));
    }
}

TEST_CASE("identity context: γθ = id and the homotopy is a cycle") {
    for (auto r : {dual_numbers(), split_product()}) {
        auto u = env(r);
        BaseChange bc = base_change_algebroid(identity_context(r), u);
        HomologyMaps x = build_homology_maps(bc, unit_coeff(u), 2);
        require_all_pass(verify_chain_maps(x));
        require_all_pass(verify_homotopy(x));
        require_all_pass(verify_cyclic_compat(x));
        for (Index n = 0; n <= 2; ++n) {
            CHECK(x.gamma.at(n) * x.theta.at(n) == Matrix::identity(x.source.dim(n)));
            CHECK(rank(x.theta.at(n)) == x.source.dim(n));
        }
    }
}

TEST_CASE("cohomology maps and homotopy") {
    for (auto r : {rationals(), dual_numbers()}) {
        auto u = env(r);
        BaseChange bc = base_change_algebroid(matrix_context(r, 2), u);
        CohomologyMaps x = build_cohomology_maps(bc, unit_coeff(u), 2);
        require_all_pass(verify_cochain_maps(x));
        require_all_pass(verify_cohomotopy(x));
        require_all_pass(verify_cocyclic_compat(x));
        require_all_pass(compare_cohomology(x.source, x.target));
        CHECK(x.xi.at(0) * x.zeta.at(0) == Matrix::identity(x.source.dim(0)));
    }
}

TEST_CASE("single-sign perturbations are detected") {
    auto r = dual_numbers();
    auto u = env(r);
    BaseChange bc = base_change_algebroid(matrix_context(r, 2), u);
    auto m = unit_coeff(u);
    {
        HomologyMaps x = build_homology_maps(bc, m, 2, Perturbation::NegateForward);
        CHECK_FALSE(verify_chain_maps(x).all_pass());
        CHECK_FALSE(verify_homotopy(x).all_pass());
    }
    {
        HomologyMaps x = build_homology_maps(bc, m, 2, Perturbation::NegateBackward);
        CHECK_FALSE(verify_chain_maps(x).all_pass());
    }
    {
        HomologyMaps x = build_homology_maps(bc, m, 2, Perturbation::FlipHomotopyTerm);
        require_all_pass(verify_chain_maps(x));
        CHECK_FALSE(verify_homotopy(x).all_pass());
    }
    {
        HomologyMaps x = build_homology_maps(bc, m, 2, Perturbation::SwapDualIndices);
        Report rep = verify_cyclic_compat(x);
        CHECK_FALSE(entry_passes(rep, "γ t̃ = t γ"));
        CHECK(entry_passes(rep, "θ t = t̃ θ"));
    }
    {
        CohomologyMaps x = build_cohomology_maps(bc, m, 2, Perturbation::FlipHomotopyTerm);
        CHECK_FALSE(verify_cohomotopy(x).all_pass());
    }
}

TEST_CASE("bar complex dimensions") {
    CHECK(bar_complex_dimensions(dual_numbers(), 3).hh == std::vector<Index>{2, 1, 1});
    CHECK(bar_complex_dimensions(dual_numbers(), 3).hc == std::vector<Index>{2, 0, 2});
    CHECK(bar_complex_dimensions(matrix_algebra(rationals(), 2), 3).hh == std::vector<Index>{1, 0, 0});
    CHECK(bar_complex_dimensions(rationals(), 3).hc == std::vector<Index>{1, 0, 1});
    CHECK(bar_complex_dimensions(split_product(), 2).hh == std::vector<Index>{2, 0});
}

TEST_CASE("classical reading of the enveloping algebroid") {
    for (auto r : {rationals(), dual_numbers()}) {
        auto u = env(r);
        Report rep = specialize_classical(r, 2, unit_coeff(u), 2);
        require_all_pass(rep);
        CHECK(rep.checks().size() > 10);
    }
}

TEST_CASE("any lift of the dual bases gives chain maps and a homotopy") {
    // the canonical representative of 1 in R ⊗_R R for R = Q × Q has two terms
    auto r = split_product();
    auto u = env(r);
    MoritaContext ctx = identity_context(r);
    ctx.psi_inv_one = {{0, 0, Scalar(1)}, {1, 1, Scalar(1)}};
    ctx.phi_inv_one = ctx.psi_inv_one;
    BaseChange bc = base_change_algebroid(ctx, u);
    HomologyMaps x = build_homology_maps(bc, unit_coeff(u), 2);
    require_all_pass(verify_chain_maps(x));
    require_all_pass(verify_homotopy(x));
    require_all_pass(verify_cyclic_compat(x));
    CHECK(rank(x.theta.at(1)) < x.source.dim(1));
    CohomologyMaps y = build_cohomology_maps(bc, unit_coeff(u), 2);
    require_all_pass(verify_cochain_maps(y));
    require_all_pass(verify_cohomotopy(y));
}
