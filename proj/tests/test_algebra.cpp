#include "doctest.h"

#include "hopfcyc/algebra.hpp"

using namespace hopfcyc;

namespace {

Index find_label(const Algebra& a, const std::string& l) {
    for (Index i = 0; i < a.dim(); ++i)
        if (a.label(i) == l) return i;
    FAIL("missing label " << l);
    return -1;
}

}  // namespace

TEST_CASE("builtin algebras") {
    CHECK(rationals()->dim() == 1);
    auto d = dual_numbers();
    CHECK(d->product(1, 1).empty());
    auto s = split_product();
    CHECK(s->product(0, 1).empty());
    CHECK(s->unit().nnz() == 2);
}

TEST_CASE("validation rejects bad structure constants") {
    // x^2 = 1 but declared unit is x
    CHECK_THROWS_AS(Algebra::make("bad", {"1", "x"},
                                  {SparseVec::unit(0), SparseVec::unit(1), SparseVec::unit(1), SparseVec::unit(0)},
                                  SparseVec::unit(1)),
                    Error);
    // non-associative: a*a = b, a*b = a, b*a = 0, b*b = b, unit b fails unitality first; use a 2-dim magma with unit
    std::vector<SparseVec> p = {SparseVec::unit(0), SparseVec::unit(1), SparseVec::unit(1), SparseVec::unit(1)};
    p[3] = SparseVec::unit(0);
    p[3].axpy(Scalar(1), SparseVec::unit(1));  // x*x = 1 + x
    CHECK_NOTHROW(Algebra::make("ok", {"1", "x"}, p, SparseVec::unit(0)));
    std::vector<SparseVec> q = {SparseVec::unit(0), SparseVec::unit(1), SparseVec::unit(1), SparseVec::unit(1),
                                SparseVec::unit(2), SparseVec::unit(2), SparseVec::unit(2), SparseVec::unit(1),
                                SparseVec::unit(0)};
    // 3-dim with e1 e1 = e1, e1 e2 = e1? built so that associativity fails
    q = {SparseVec::unit(0), SparseVec::unit(1), SparseVec::unit(2),
         SparseVec::unit(1), SparseVec::unit(2), SparseVec(),
         SparseVec::unit(2), SparseVec(),        SparseVec::unit(1)};
    CHECK_THROWS_AS(Algebra::make("nonassoc", {"1", "a", "b"}, q, SparseVec::unit(0)), Error);
}

TEST_CASE("opposite algebras") {
    auto q = rationals();
    CHECK(same_algebra(*opposite(q), *q));
    auto d = dual_numbers();
    CHECK(same_algebra(*opposite(d), *d));
    auto m2 = matrix_algebra(rationals(), 2);
    auto op = opposite(m2);
    Index e12 = find_label(*m2, "E12⊗1"), e21 = find_label(*m2, "E21⊗1"), e22 = find_label(*m2, "E22⊗1");
    CHECK(op->product(e12, e21) == SparseVec::unit(e22));
    CHECK(same_algebra(*opposite(op), *m2));
}

TEST_CASE("tensor and matrix algebras") {
    CHECK(tensor_algebra(rationals(), rationals())->dim() == 1);
    CHECK(enveloping(dual_numbers())->dim() == 4);
    CHECK(enveloping(matrix_algebra(rationals(), 2))->dim() == 16);
    auto m2 = matrix_algebra(rationals(), 2);
    Index e11 = find_label(*m2, "E11⊗1"), e12 = find_label(*m2, "E12⊗1"), e21 = find_label(*m2, "E21⊗1"),
          e22 = find_label(*m2, "E22⊗1");
    CHECK(m2->product(e12, e21) == SparseVec::unit(e11));
    CHECK(m2->product(e21, e12) == SparseVec::unit(e22));
    CHECK(matrix_algebra(dual_numbers(), 2)->dim() == 8);
    CHECK(same_algebra(*matrix_algebra(rationals(), 1), *rationals()));
}

TEST_CASE("tensor_algebra is associative up to reindexing") {
    auto a = dual_numbers(), b = split_product(), c = matrix_algebra(rationals(), 2);
    auto left = tensor_algebra(tensor_algebra(a, b), c);
    auto right = tensor_algebra(a, tensor_algebra(b, c));
    // the lexicographic index (i*dimB + j)*dimC + k coincides with i*(dimB*dimC) + j*dimC + k
    CHECK(same_algebra(*left, *right));
}

TEST_CASE("generators generate") {
    for (auto a : {rationals(), dual_numbers(), split_product(), matrix_algebra(rationals(), 3),
                   enveloping(matrix_algebra(dual_numbers(), 2))}) {
        EchelonBasis span(a->dim());
        std::vector<SparseVec> words{a->unit()};
        span.insert(a->unit());
        for (std::size_t w = 0; w < words.size(); ++w)
            for (Index g : a->generators()) {
                SparseVec next = a->multiply(words[w], SparseVec::unit(g));
                if (span.insert(next)) words.push_back(next);
            }
        CHECK(span.rank() == a->dim());
    }
}

TEST_CASE("algebra maps") {
    auto r = dual_numbers();
    auto re = enveloping(r);
    Matrix s(re->dim(), r->dim());
    for (Index i = 0; i < r->dim(); ++i) s.set_col(i, SparseVec::unit(tensor_index(i, 0, r->dim())));
    CHECK_NOTHROW(make_algebra_map(r, re, s));
    CHECK_THROWS_AS(make_algebra_map(r, re, s.scaled(Scalar(2))), Error);
}
