#include "doctest.h"

#include "hopfcyc/cyclic.hpp"

using namespace hopfcyc;

namespace {

AlgebroidPtr env(const AlgebraPtr& r) { return std::make_shared<const HopfAlgebroid>(enveloping_hopf_algebroid(r)); }

CoefficientPtr unit_coeff(const AlgebraPtr& r) {
    return std::make_shared<const Coefficient>(enveloping_unit_coefficient(env(r)));
}

void require_all_pass(const Report& rep) {
    INFO(rep.text());
    CHECK(rep.all_pass());
}

// Plain Hochschild complex A^{⊗(n+1)} with b = Σ (-1)^i d_i.
struct BarComplex {
    AlgebraPtr a;
    Index d;
    explicit BarComplex(AlgebraPtr alg) : a(std::move(alg)), d(a->dim()) {}

    Index dim(Index n) const {
        Index out = 1;
        for (Index i = 0; i <= n; ++i) out *= d;
        return out;
    }
    std::vector<Index> digits(Index x, Index n) const {
        std::vector<Index> v(static_cast<std::size_t>(n) + 1);
        for (Index i = n; i >= 0; --i) {
            v[static_cast<std::size_t>(i)] = x % d;
            x /= d;
        }
        return v;
    }
    // Coordinates of a ⊗ (pure tensor with one slot given as a vector).
    SparseVec place(std::vector<Index> idx, std::size_t slot, const SparseVec& v) const {
        SparseVec out;
        for (const auto& e : v.entries()) {
            idx[slot] = e.index;
            Index x = 0;
            for (Index k : idx) x = x * d + k;
            out.push_back(x, e.value);
        }
        return out;
    }
    Matrix b(Index n) const {
        if (n == 0) return Matrix(0, d);
        std::vector<SparseVec> cols;
        for (Index x = 0; x < dim(n); ++x) {
            auto t = digits(x, n);
            Accumulator acc(dim(n - 1));
            for (Index i = 0; i < n; ++i) {
                std::vector<Index> s = t;
                s.erase(s.begin() + i + 1);
                acc.add(place(s, static_cast<std::size_t>(i), a->product(t[static_cast<std::size_t>(i)],
                                                                        t[static_cast<std::size_t>(i) + 1])),
                        (i % 2 == 0) ? Scalar(1) : Scalar(-1));
            }
            std::vector<Index> s(t.begin(), t.end() - 1);
            acc.add(place(s, 0, a->product(t.back(), t[0])), (n % 2 == 0) ? Scalar(1) : Scalar(-1));
            cols.push_back(acc.take());
        }
        return Matrix::from_columns(dim(n - 1), std::move(cols));
    }
    // t(a_0 ⊗ ... ⊗ a_n) = (-1)^n a_n ⊗ a_0 ⊗ ... ⊗ a_{n-1}
    Matrix t(Index n) const {
        std::vector<SparseVec> cols;
        for (Index x = 0; x < dim(n); ++x) {
            auto v = digits(x, n);
            std::vector<Index> r{v.back()};
            r.insert(r.end(), v.begin(), v.end() - 1);
            Index y = 0;
            for (Index k : r) y = y * d + k;
            cols.push_back(SparseVec::unit(y, (n % 2 == 0) ? Scalar(1) : Scalar(-1)));
        }
        return Matrix::from_columns(dim(n), std::move(cols));
    }
    std::vector<Index> hochschild(Index top) const {
        std::vector<Index> out;
        for (Index n = 0; n < top; ++n) out.push_back(homology_dim(b(n + 1), b(n)));
        return out;
    }
    // Connes' complex C_n / (1 - t), valid over Q.
    std::vector<Index> cyclic(Index top) const {
        std::vector<QuotientSpace> q;
        for (Index n = 0; n <= top; ++n) q.push_back(quotient_by(dim(n), Matrix::identity(dim(n)) - t(n)));
        std::vector<Matrix> bl;
        bl.push_back(Matrix(0, q[0].dim()));
        for (Index n = 1; n <= top; ++n)
            bl.push_back(descend(b(n), q[static_cast<std::size_t>(n)], q[static_cast<std::size_t>(n) - 1]));
        std::vector<Index> out;
        for (Index n = 0; n < top; ++n)
            out.push_back(homology_dim(bl[static_cast<std::size_t>(n) + 1], bl[static_cast<std::size_t>(n)]));
        return out;
    }
};

}  // namespace

TEST_CASE("cyclic module of Q is trivial") {
    ParaCyclicModule c = build_cyclic_module(unit_coeff(rationals()), 3);
    for (Index n = 0; n <= 3; ++n) {
        CHECK(c.dim(n) == 1);
        CHECK(c.t(n) == Matrix::identity(1));
    }
    require_all_pass(check_cyclic_module(c));
    CHECK(hochschild_homology(c).dims == std::vector<Index>{1, 0, 0});
    CHECK(cyclic_homology(c).dims == std::vector<Index>{1, 0, 1});
}

TEST_CASE("para-cyclic identities and t^{n+1} = id for unit coefficients") {
    for (auto r : {dual_numbers(), split_product(), matrix_algebra(rationals(), 2)}) {
        ParaCyclicModule c = build_cyclic_module(unit_coeff(r), 2);
        Report rep = check_cyclic_module(c);
        require_all_pass(rep);
        CHECK((c.b(1) * c.b(2)).is_zero());
        CHECK((c.b_prime(1) * c.b_prime(2)).is_zero());
    }
}

TEST_CASE("Hochschild homology agrees with the bar complex") {
    for (auto r : {dual_numbers(), split_product(), matrix_algebra(rationals(), 2)}) {
        ParaCyclicModule c = build_cyclic_module(unit_coeff(r), 3);
        auto hh = hochschild_homology(c).dims;
        CHECK(hh == BarComplex(r).hochschild(3));
        CHECK(cyclic_homology(c).dims == BarComplex(r).cyclic(3));
    }
    ParaCyclicModule dual = build_cyclic_module(unit_coeff(dual_numbers()), 3);
    CHECK(hochschild_homology(dual).dims == std::vector<Index>{2, 1, 1});
    CHECK(cyclic_homology(dual).dims == std::vector<Index>{2, 0, 2});
    ParaCyclicModule m2 = build_cyclic_module(unit_coeff(matrix_algebra(rationals(), 2)), 3);
    CHECK(hochschild_homology(m2).dims == std::vector<Index>{1, 0, 0});
    CHECK(cyclic_homology(m2).dims == std::vector<Index>{1, 0, 1});
}

TEST_CASE("cocyclic module of the unit coefficient") {
    for (auto r : {rationals(), dual_numbers(), split_product()}) {
        CocyclicModule c = build_cocyclic_module(unit_coeff(r), 3);
        require_all_pass(check_cocyclic_module(c));
        for (Index n = 0; n + 1 < 3; ++n) CHECK((c.beta(n + 1) * c.beta(n)).is_zero());
        // the Amitsur complex of R over Q is exact above degree 0
        CHECK(hochschild_cohomology(c).dims == std::vector<Index>{1, 0, 0});
        CHECK(cyclic_cohomology(c).dims == std::vector<Index>{1, 0, 1});
    }
}

TEST_CASE("a non-cyclic coefficient is refused") {
    auto u = env(dual_numbers());
    Coefficient m = enveloping_unit_coefficient(u);
    m.coaction = m.coaction.scaled(Scalar(2));
    auto mp = std::make_shared<const Coefficient>(m);
    ParaCyclicModule c = build_cyclic_module(mp, 2);
    Report rep = check_cyclic_module(c);
    CHECK_FALSE(rep.all_pass());
    CHECK_THROWS_AS(cyclic_homology(c), Error);
    // Hochschild homology needs no cyclic operator
    CHECK_NOTHROW(hochschild_homology(c));
}

TEST_CASE("base change preserves Hochschild and cyclic homology") {
    for (auto r : {rationals(), dual_numbers()}) {
        auto u = env(r);
        BaseChange bc = base_change_algebroid(matrix_context(r, 2), u);
        auto m = std::make_shared<const Coefficient>(enveloping_unit_coefficient(u));
        auto mt = std::make_shared<const Coefficient>(base_change_coefficient(bc, *m));
        const Index cap = 2;
        ParaCyclicModule before = build_cyclic_module(m, cap);
        ParaCyclicModule after = build_cyclic_module(mt, cap);
        require_all_pass(check_cyclic_module(after));
        CHECK(hochschild_homology(after).dims == hochschild_homology(before).dims);
        CHECK(cyclic_homology(after).dims == cyclic_homology(before).dims);
        CocyclicModule cbefore = build_cocyclic_module(m, cap);
        CocyclicModule cafter = build_cocyclic_module(mt, cap);
        require_all_pass(check_cocyclic_module(cafter));
        CHECK(hochschild_cohomology(cafter).dims == hochschild_cohomology(cbefore).dims);
        CHECK(cyclic_cohomology(cafter).dims == cyclic_cohomology(cbefore).dims);
    }
}

TEST_CASE("closed formula for the transported cyclic operator") {
    for (auto r : {rationals(), dual_numbers()}) {
        auto u = env(r);
        BaseChange bc = base_change_algebroid(matrix_context(r, 2), u);
        Coefficient m = enveloping_unit_coefficient(u);
        auto mt = std::make_shared<const Coefficient>(base_change_coefficient(bc, m));
        ParaCyclicModule c = build_cyclic_module(mt, 2);
        for (Index n = 0; n <= 2; ++n) {
            INFO("degree " << n);
            CHECK(tilde_t_explicit(bc, m, *mt, c, n) == c.t(n));
        }
    }
}
