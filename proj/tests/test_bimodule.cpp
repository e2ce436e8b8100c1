#include "doctest.h"

#include "hopfcyc/bimodule.hpp"

using namespace hopfcyc;

TEST_CASE("R tensor_R R is R") {
    for (auto r : {rationals(), dual_numbers(), split_product(), matrix_algebra(rationals(), 2)}) {
        Bimodule reg = regular_bimodule(r);
        BalancedTensor t = balanced_tensor(reg, reg, {});
        CHECK(t.dim() == r->dim());
        // balanced: pure(x*a, y) = pure(x, a*y)
        for (Index x = 0; x < r->dim(); ++x)
            for (Index a = 0; a < r->dim(); ++a)
                for (Index y = 0; y < r->dim(); ++y)
                    CHECK(t.pure(r->product(x, a), SparseVec::unit(y)) == t.pure(SparseVec::unit(x), r->product(a, y)));
        // the multiplication map descends and is an isomorphism
        Matrix mult(r->dim(), r->dim() * r->dim());
        for (Index x = 0; x < r->dim(); ++x)
            for (Index y = 0; y < r->dim(); ++y) mult.set_col(t.ambient_index(x, y), r->product(x, y));
        Matrix m = descend(mult, t.space(), quotient_by(r->dim(), Matrix::zero(r->dim(), 0)));
        CHECK(rank(m) == r->dim());
    }
    // with unit basis element first, pure(1, r) is the basis element r
    auto d = dual_numbers();
    BalancedTensor t = balanced_tensor(regular_bimodule(d), regular_bimodule(d), {});
    for (Index y = 0; y < 2; ++y) CHECK(t.pure(0, y) == SparseVec::unit(y));
}

TEST_CASE("mismatched algebras are rejected") {
    Bimodule a = regular_bimodule(dual_numbers());
    Bimodule b = regular_bimodule(split_product());
    CHECK_THROWS_AS(balanced_tensor(a, b, {}), Error);
}

TEST_CASE("tensor over the opposite uses left actions") {
    auto r = matrix_algebra(rationals(), 2);
    Bimodule reg = regular_bimodule(r);
    // R (x)_{R^op} R with x.a := a x and a.y := y a
    BalancedTensor t = balanced_tensor(reg, reg, {Side::Left, Side::Right});
    CHECK(t.over()->name() == r->name() + "^op");
    CHECK(t.dim() == 4);  // M2 (x)_{M2^op} M2 ~ M2^op (x)_{M2} ... dimension 16/4
}

TEST_CASE("association order does not change the dimension") {
    auto r = dual_numbers();
    Bimodule reg = regular_bimodule(r);
    auto re = enveloping(r);
    Bimodule e = regular_bimodule(re);
    // left-associated: ((R^e (x)_{R^e} R^e) (x)_{R^e} R^e)
    auto chain = TensorChain::single(e.dim);
    auto c2 = chain->extend(e.right, e.dim, e.left);
    auto c3 = c2->extend(c2->induced_action_on_last_factor(e.right), e.dim, e.left);
    // right-associated
    BalancedTensor inner(e.dim, e.dim, e.right, e.left);
    Action left_on_inner = inner.induced_action_from_left_factor(e.left);
    BalancedTensor outer(e.dim, inner.dim(), e.right, left_on_inner);
    CHECK(c3->dim() == outer.dim());
    CHECK(c3->dim() == re->dim());
}

TEST_CASE("outer actions on a balanced tensor commute and are unital") {
    auto r = dual_numbers();
    Bimodule reg = regular_bimodule(r);
    BalancedTensor t = balanced_tensor(reg, reg, {});
    Action l = t.induced_action_from_left_factor(reg.left);
    Action rr = t.induced_action_from_right_factor(reg.right);
    CHECK_NOTHROW(l.validate("left"));
    CHECK_NOTHROW(rr.validate("right"));
    CHECK(actions_commute(l, rr));
}

TEST_CASE("operators that ignore the balancing do not descend") {
    auto r = matrix_algebra(rationals(), 2);
    Bimodule reg = regular_bimodule(r);
    BalancedTensor t = balanced_tensor(reg, reg, {});
    // left multiplication on the right factor clashes with the balancing
    Matrix lx = r->left_mult(1);
    CHECK_THROWS_AS(t.induced_on_right_factor(lx), Error);
    CHECK_NOTHROW(t.induced_on_right_factor(r->right_mult(1)));
}
