#include "doctest.h"

#include "hopfcyc/basechange.hpp"

using namespace hopfcyc;

namespace {

AlgebroidPtr env(const AlgebraPtr& r) { return std::make_shared<const HopfAlgebroid>(enveloping_hopf_algebroid(r)); }

void require_all_pass(const Report& rep) {
    INFO(rep.text());
    CHECK(rep.all_pass());
}

}  // namespace

TEST_CASE("unit coefficient over R^e is SaYD") {
    for (auto r : {rationals(), dual_numbers(), split_product(), matrix_algebra(rationals(), 2)}) {
        Coefficient m = enveloping_unit_coefficient(env(r));
        require_all_pass(check_sayd(m));
    }
}

TEST_CASE("base change along the matrix context over Q") {
    BaseChange bc = base_change_algebroid(matrix_context(rationals(), 2), env(rationals()));
    CHECK(bc.result->dim() == 16);
    require_all_pass(check_base_change(bc));
}

TEST_CASE("base change along the matrix context over dual numbers") {
    auto r = dual_numbers();
    BaseChange bc = base_change_algebroid(matrix_context(r, 2), env(r));
    CHECK(bc.result->dim() == 64);
    Report rep = check_base_change(bc);
    CHECK(rep.checks().size() > 10);
    require_all_pass(rep);
    // ε̃(1) = 1_S
    CHECK(bc.result->eps(bc.result->one()) == bc.ctx.S->unit());
}

TEST_CASE("identity context gives back U") {
    for (auto r : {dual_numbers(), split_product()}) {
        AlgebroidPtr u = env(r);
        BaseChange bc = base_change_algebroid(identity_context(r), u);
        REQUIRE(bc.result->dim() == u->dim());
        require_all_pass(check_base_change(bc));
        // (a ⊗ b°) ⊗ u ⊗ (c ⊗ d°) -> s(a) t(b) u s(c) t(d) is an isomorphism
        // of algebras which intertwines the counits
        Matrix iso(u->dim(), bc.result->dim());
        for (Index k = 0; k < bc.result->dim(); ++k) {
            auto x = bc.parts(k);
            SparseVec v = u->mul(u->mul(u->mul(u->s(SparseVec::unit(x.a)), u->t(SparseVec::unit(x.b))),
                                        SparseVec::unit(x.u)),
                                 u->mul(u->s(SparseVec::unit(x.c)), u->t(SparseVec::unit(x.d))));
            iso.set_col(k, v);
        }
        CHECK(rank(iso) == u->dim());
        CHECK_NOTHROW(make_algebra_map(bc.result->total, u->total, iso));
        CHECK(u->counit * iso == bc.result->counit);
    }
}

TEST_CASE("transported coefficient") {
    auto r = dual_numbers();
    AlgebroidPtr u = env(r);
    BaseChange bc = base_change_algebroid(matrix_context(r, 2), u);
    Coefficient m = enveloping_unit_coefficient(u);
    Coefficient mt = base_change_coefficient(bc, m);
    CHECK(mt.dim == 4 * r->dim());
    require_all_pass(check_sayd(mt));
}

TEST_CASE("scaled coaction fails before and after base change") {
    for (auto r : {rationals(), dual_numbers()}) {
        AlgebroidPtr u = env(r);
        Coefficient m = enveloping_unit_coefficient(u);
        m.coaction = m.coaction.scaled(Scalar(2));
        Report before = check_sayd(m);
        CHECK_FALSE(before.all_pass());
        BaseChange bc = base_change_algebroid(matrix_context(r, 2), u);
        Report after = check_sayd(base_change_coefficient(bc, m));
        CHECK_FALSE(after.all_pass());
        for (const Report* rep : {&before, &after})
            for (const auto& c : rep->checks()) {
                if (c.name == "counitality" || c.name == "stability") CHECK_FALSE(c.pass);
                if (c.name == "left actions agree") CHECK(c.pass);
            }
    }
}

TEST_CASE("multiplication with the source on both sides is not an algebroid") {
    // ũ ṽ with u s(c1 a2) s(b2 d1) v in place of u s(c1 a2) t(b2 d1) v:
    // η̃(1) is no longer a unit
    auto r = dual_numbers();
    BaseChange bc = base_change_algebroid(matrix_context(r, 2), env(r));
    const HopfAlgebroid& u = *bc.original;
    const Index dt = bc.result->dim();
    std::vector<SparseVec> products;
    for (Index k = 0; k < dt; ++k)
        for (Index l = 0; l < dt; ++l) {
            auto x = bc.parts(k);
            auto y = bc.parts(l);
            SparseVec w = u.mul(u.mul(u.mul(SparseVec::unit(x.u), u.s(bc.ctx.qp_product(x.c, y.a))),
                                      u.s(bc.ctx.qp_product(y.b, x.d))),
                                SparseVec::unit(y.u));
            products.push_back(bc.element(x.a, x.b, w, y.c, y.d));
        }
    std::vector<std::string> labels(static_cast<std::size_t>(dt), "x");
    for (Index k = 0; k < dt; ++k) labels[static_cast<std::size_t>(k)] += std::to_string(k);
    try {
        Algebra::make("source_both_sides", labels, products, bc.result->one());
        FAIL("accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotUnital);
    }
}
