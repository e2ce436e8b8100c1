#include "doctest.h"

#include "hopfcyc/morita.hpp"

using namespace hopfcyc;

namespace {

// Σ_j p'_j q'_j in S and Σ_i q_i p_i in R.
SparseVec sum_pq(const MoritaContext& c) {
    Accumulator acc(c.S->dim());
    for (const auto& t : c.j_family()) acc.add(c.pq_product(t.left, t.right), t.coeff);
    return acc.take();
}
SparseVec sum_qp(const MoritaContext& c) {
    Accumulator acc(c.R->dim());
    for (const auto& t : c.i_family()) acc.add(c.qp_product(t.left, t.right), t.coeff);
    return acc.take();
}

}  // namespace

TEST_CASE("identity context") {
    for (auto r : {rationals(), dual_numbers(), split_product()}) {
        MoritaContext c = identity_context(r);
        CHECK(c.pq->dim() == r->dim());
        CHECK(sum_pq(c) == r->unit());
        CHECK(sum_qp(c) == r->unit());
    }
}

TEST_CASE("matrix context over Q") {
    MoritaContext c = matrix_context(rationals(), 2);
    CHECK(c.P.dim == 2);
    CHECK(c.Q.dim == 2);
    CHECK(c.pq->dim() == 4);
    CHECK(c.qp->dim() == 1);
    CHECK(sum_pq(c) == c.S->unit());
    CHECK(sum_qp(c) == c.R->unit());
    // Q ⊗_S P is one dimensional, so ψ^{-1}(1) is a single pure tensor
    REQUIRE(c.i_family().size() == 1);
    CHECK(c.pq_product(0, 1) == SparseVec::unit(1));  // e1 f2 = E12
}

TEST_CASE("matrix context over dual numbers") {
    MoritaContext c = matrix_context(dual_numbers(), 2);
    CHECK(c.S->dim() == 8);
    CHECK(c.pq->dim() == 8);
    CHECK(sum_pq(c) == c.S->unit());
    CHECK(sum_qp(c) == c.R->unit());
}

TEST_CASE("enveloping context") {
    MoritaContext c = matrix_context(rationals(), 2);
    MoritaContext e = enveloping_context(c);
    CHECK(e.P.dim == 4);
    CHECK(e.Q.dim == 4);
    CHECK(e.S->dim() == 16);
    CHECK(e.R->dim() == 1);
    CHECK(sum_pq(e) == e.S->unit());
    CHECK(sum_qp(e) == e.R->unit());
    MoritaContext d = enveloping_context(identity_context(dual_numbers()));
    CHECK(d.S->dim() == 4);
    CHECK(sum_qp(d) == d.R->unit());
}

TEST_CASE("broken contexts are rejected") {
    MoritaContext c = matrix_context(rationals(), 2);
    auto expect_kind = [&](Matrix phi, Matrix psi, ErrorKind kind) {
        try {
            make_morita_context("bad", c.R, c.S, c.P, c.Q, std::move(phi), std::move(psi));
            FAIL("accepted");
        } catch (const Error& e) {
            CHECK(e.kind() == kind);
        }
    };
    // scaling ψ alone keeps it bijective and bilinear but breaks compatibility
    expect_kind(c.phi_pairs, c.psi_pairs.scaled(Scalar(2)), ErrorKind::CompatibilityFail);
    expect_kind(c.phi_pairs, Matrix::zero(1, 4), ErrorKind::NotIso);
    // transposing φ's matrix units breaks S-linearity
    Matrix swapped(4, 4);
    for (Index i = 0; i < 2; ++i)
        for (Index j = 0; j < 2; ++j) swapped.set_col(i * 2 + j, SparseVec::unit(j * 2 + i));
    expect_kind(swapped, c.psi_pairs, ErrorKind::NotEquivariant);
}
