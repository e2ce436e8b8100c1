#include "doctest.h"

#include <random>

#include "hopfcyc/linalg.hpp"

using namespace hopfcyc;

namespace {

Matrix dense(std::vector<std::vector<long long>> rows) {
    std::vector<std::vector<Scalar>> r;
    for (auto& row : rows) {
        std::vector<Scalar> s;
        for (long long v : row) s.emplace_back(v);
        r.push_back(std::move(s));
    }
    return Matrix::from_dense(r);
}

// Independent oracle: plain dense Gaussian elimination over mpq.
int dense_rank(const Matrix& m) {
    auto d = m.to_dense();
    std::vector<std::vector<mpq_class>> a;
    for (auto& row : d) {
        std::vector<mpq_class> r;
        for (auto& s : row) r.push_back(s.to_mpq());
        a.push_back(r);
    }
    int rows = static_cast<int>(a.size()), cols = rows ? static_cast<int>(a[0].size()) : 0, rk = 0;
    for (int c = 0; c < cols && rk < rows; ++c) {
        int p = -1;
        for (int r = rk; r < rows; ++r)
            if (a[r][c] != 0) { p = r; break; }
        if (p < 0) continue;
        std::swap(a[p], a[rk]);
        for (int r = 0; r < rows; ++r) {
            if (r == rk || a[r][c] == 0) continue;
            mpq_class f = a[r][c] / a[rk][c];
            for (int k = c; k < cols; ++k) a[r][k] -= f * a[rk][k];
        }
        ++rk;
    }
    return rk;
}

Matrix random_matrix(std::mt19937& g, int r, int c, int density_pct) {
    std::uniform_int_distribution<int> val(-3, 3), pct(0, 99);
    std::vector<std::vector<long long>> rows(r, std::vector<long long>(c, 0));
    for (auto& row : rows)
        for (auto& v : row)
            if (pct(g) < density_pct) v = val(g);
    return dense(rows);
}

}  // namespace

TEST_CASE("scalar arithmetic stays exact and canonical") {
    Scalar a(1, 3), b(1, 6);
    CHECK((a + b) == Scalar(1, 2));
    CHECK((a - a).is_zero());
    CHECK((a * Scalar(3)).is_one());
    CHECK(Scalar(2, -4) == Scalar(-1, 2));
    CHECK(Scalar::parse(" -6/8 ") == Scalar(-3, 4));
    CHECK_THROWS(Scalar::parse("1/0"));
    CHECK_THROWS(Scalar::parse("x"));
    Scalar big(1);
    for (int i = 0; i < 100; ++i) big *= Scalar(3);
    CHECK_FALSE(big == Scalar(1));
    Scalar back = big;
    for (int i = 0; i < 100; ++i) back /= Scalar(3);
    CHECK(back.is_one());
    Scalar huge = Scalar(std::numeric_limits<long long>::max()) + Scalar(1);
    CHECK((huge - Scalar(1)) == Scalar(std::numeric_limits<long long>::max()));
    CHECK(Scalar(1, 3) < Scalar(1, 2));
}

TEST_CASE("rank examples") {
    CHECK(rank(Matrix::identity(3)) == 3);
    CHECK(rank(Matrix::zero(2, 5)) == 0);
    CHECK(rank(dense({{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("kernel examples") {
    CHECK(kernel_basis(Matrix::identity(4)).cols() == 0);
    Matrix z = Matrix::zero(3, 3);
    CHECK(kernel_basis(z).cols() == 3);
    Matrix k = kernel_basis(dense({{1, 1}}));
    REQUIRE(k.cols() == 1);
    CHECK(k.at(0, 0) == -k.at(1, 0));
}

TEST_CASE("quotient examples") {
    QuotientSpace q0 = quotient_by(3, Matrix::zero(3, 0));
    CHECK(q0.dim() == 3);
    CHECK(q0.projection() == Matrix::identity(3));
    QuotientSpace q1 = quotient_by(2, dense({{1}, {-1}}));
    CHECK(q1.dim() == 1);
}

TEST_CASE("random matrices agree with the dense oracle and satisfy rank-nullity") {
    std::mt19937 g(12345);
    for (int trial = 0; trial < 60; ++trial) {
        int r = 1 + trial % 7, c = 1 + (trial * 5) % 9;
        Matrix m = random_matrix(g, r, c, 45);
        int rk = rank(m);
        CHECK(rk == dense_rank(m));
        Matrix k = kernel_basis(m);
        CHECK(rk + k.cols() == c);
        CHECK((m * k).is_zero());
        CHECK(dense_rank(k) == k.cols());
    }
}

TEST_CASE("random quotients satisfy their invariants") {
    std::mt19937 g(777);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + trial % 8, k = trial % 6;
        Matrix rel = random_matrix(g, n, k, 50);
        QuotientSpace q = quotient_by(n, rel);
        CHECK(q.dim() == n - dense_rank(rel));
        Matrix p = q.projection(), s = q.section();
        CHECK(p * s == Matrix::identity(q.dim()));
        CHECK((p * rel).is_zero());
        CHECK(rank(p) == q.dim());
    }
}

TEST_CASE("solve and inverse") {
    Matrix m = dense({{2, 1}, {1, 1}});
    Matrix inv = inverse(m);
    CHECK(m * inv == Matrix::identity(2));
    CHECK_THROWS_AS(inverse(dense({{1, 2}, {2, 4}})), Error);
    SparseVec x = solve(m, SparseVec::unit(0, Scalar(3)));
    CHECK(m.apply(x) == SparseVec::unit(0, Scalar(3)));
}

TEST_CASE("homology_dim checks the composition") {
    CHECK(homology_dim(Matrix::zero(4, 0), Matrix::zero(0, 4)) == 4);
    CHECK(homology_dim(Matrix::identity(3), Matrix::zero(0, 3)) == 0);
    CHECK_THROWS_AS(homology_dim(Matrix::identity(2), Matrix::identity(2)), Error);
}

TEST_CASE("descend") {
    QuotientSpace q = quotient_by(2, dense({{1}, {-1}}));
    CHECK(descend(Matrix::identity(2), q, q) == Matrix::identity(1));
    CHECK(descend(Matrix::zero(2, 2), q, q).is_zero());
    // swapping the coordinates preserves the relation e0 - e1 up to sign
    CHECK(descend(dense({{0, 1}, {1, 0}}), q, q) == Matrix::identity(1));
    // projection onto e0 does not descend
    QuotientSpace full = quotient_by(2, Matrix::zero(2, 0));
    CHECK_THROWS_AS(descend(dense({{1, 0}, {0, 0}}), q, full), Error);
}

TEST_CASE("size limit is enforced") {
    Index old = size_limit();
    set_size_limit(10);
    CHECK_THROWS_AS(quotient_by(11, Matrix::zero(11, 0)), Error);
    set_size_limit(old);
}
