#include "hopfcyc/cyclic.hpp"

#include <functional>

namespace hopfcyc {

namespace {

SparseVec basis(Index i) { return SparseVec::unit(i); }

std::vector<SparseVec> basis_tuple(const std::vector<Index>& t) {
    std::vector<SparseVec> out;
    out.reserve(t.size());
    for (Index i : t) out.push_back(basis(i));
    return out;
}

Scalar sign(Index i) { return (i % 2 == 0) ? Scalar(1) : Scalar(-1); }

// Pure tensors y_(1) ⊗ ... ⊗ y_(k) of the iterated coproduct of basis y.
void iterated_coproduct(const HopfAlgebroid& h, Index y, Index k, std::vector<Index>& prefix, const Scalar& c,
                        const std::function<void(const std::vector<Index>&, const Scalar&)>& emit) {
    if (k == 1) {
        prefix.push_back(y);
        emit(prefix, c);
        prefix.pop_back();
        return;
    }
    for (const auto& e : h.coproduct.col(y).entries()) {
        auto [a, b] = h.ur_lift(e.index);
        prefix.push_back(a);
        iterated_coproduct(h, b, k - 1, prefix, c * e.value, emit);
        prefix.pop_back();
    }
}

Matrix alternating(const std::vector<Matrix>& maps, Index count, Index rows, Index cols) {
    Matrix out(rows, cols);
    for (Index i = 0; i < count; ++i) out = out + maps[static_cast<std::size_t>(i)].scaled(sign(i));
    return out;
}

Matrix power_sum(const Matrix& t, Index terms) {
    Matrix acc = Matrix::identity(t.rows()), p = Matrix::identity(t.rows());
    for (Index i = 1; i < terms; ++i) {
        p = p * t;
        acc = acc + p;
    }
    return acc;
}

}  // namespace

const char* to_string(HomologyKind kind) {
    switch (kind) {
        case HomologyKind::HH: return "HH";
        case HomologyKind::HC: return "HC";
        case HomologyKind::coHH: return "coHH";
        case HomologyKind::coHC: return "coHC";
    }
    return "?";
}

Matrix ParaCyclicModule::b(Index n) const {
    if (n == 0) return Matrix(0, dim(0));
    return alternating(faces[static_cast<std::size_t>(n)], n + 1, dim(n - 1), dim(n));
}

Matrix ParaCyclicModule::b_prime(Index n) const {
    if (n == 0) return Matrix(0, dim(0));
    return alternating(faces[static_cast<std::size_t>(n)], n, dim(n - 1), dim(n));
}

Matrix CocyclicModule::beta(Index n) const {
    return alternating(cofaces[static_cast<std::size_t>(n)], n + 2, dim(n + 1), dim(n));
}

Matrix CocyclicModule::beta_prime(Index n) const {
    return alternating(cofaces[static_cast<std::size_t>(n)], n + 1, dim(n + 1), dim(n));
}

// ------------------------------------------------------------ construction

ParaCyclicModule build_cyclic_module(const CoefficientPtr& mp, Index cap) {
    if (cap < 1) throw Error(ErrorKind::ParseError, "degree cap must be at least 1");
    const Coefficient& m = *mp;
    const HopfAlgebroid& h = *m.over;
    const AlgebraPtr& U = h.total;
    ParaCyclicModule c;
    c.name = "C(" + h.name + ", " + m.name + ")";
    c.coeff = mp;
    c.cap = cap;
    c.spaces.push_back(TensorChain::single(m.dim));
    for (Index n = 1; n <= cap; ++n) {
        const ChainPtr& prev = c.spaces.back();
        Action top = n == 1 ? m.blact : prev->induced_action_on_last_factor(h.blact);
        c.spaces.push_back(prev->extend(top.as_opposite(), h.dim(), h.ract.as_opposite(),
                                        "C_" + std::to_string(n) + "(" + h.name + ", " + m.name + ")"));
    }
    auto space = [&](Index n) { return c.spaces[static_cast<std::size_t>(n)]; };
    auto what = [&](const std::string& op, Index n) { return c.name + ": " + op + " in degree " + std::to_string(n); };

    c.faces.resize(static_cast<std::size_t>(cap) + 1);
    for (Index n = 1; n <= cap; ++n) {
        auto target = space(n - 1);
        for (Index i = 0; i <= n; ++i) {
            c.faces[static_cast<std::size_t>(n)].push_back(space(n)->build_operator(
                target->dim(),
                [&](const std::vector<Index>& t, Accumulator& acc) {
                    std::vector<SparseVec> out = basis_tuple(t);
                    if (i == 0) {
                        // ε(u^n) ▸ u^{n-1}, where u^0 = m
                        SparseVec r = h.eps(basis(t[static_cast<std::size_t>(n)]));
                        const Action& act = n == 1 ? m.blact : h.blact;
                        out[static_cast<std::size_t>(n - 1)] = act.of(r).col(t[static_cast<std::size_t>(n - 1)]);
                        out.pop_back();
                    } else if (i == n) {
                        out[0] = m.action[t[1]].col(t[0]);
                        out.erase(out.begin() + 1);
                    } else {
                        const auto k = static_cast<std::size_t>(n - i);
                        out[k] = U->product(t[k], t[k + 1]);
                        out.erase(out.begin() + static_cast<std::ptrdiff_t>(k) + 1);
                    }
                    target->add_pure(out, 1, acc);
                },
                what("d_" + std::to_string(i), n)));
        }
    }

    c.degeneracies.resize(static_cast<std::size_t>(cap));
    for (Index n = 0; n < cap; ++n) {
        auto target = space(n + 1);
        for (Index i = 0; i <= n; ++i) {
            c.degeneracies[static_cast<std::size_t>(n)].push_back(space(n)->build_operator(
                target->dim(),
                [&](const std::vector<Index>& t, Accumulator& acc) {
                    std::vector<SparseVec> out = basis_tuple(t);
                    out.insert(out.begin() + (n - i + 1), h.one());
                    target->add_pure(out, 1, acc);
                },
                what("s_" + std::to_string(i), n)));
        }
    }

    // t_n(m ⊗ x) = m_(0) u^1_+ ⊗ u^2_+ ⊗ ... ⊗ u^n_+ ⊗ u^n_- ... u^1_- m_(-1)
    for (Index n = 0; n <= cap; ++n) {
        auto target = space(n);
        if (n == 0) {
            Matrix t0(m.dim, m.dim);
            Accumulator acc(m.dim);
            for (Index x = 0; x < m.dim; ++x) {
                for (const auto& e : m.coaction.col(x).entries()) {
                    const auto& l = m.um->lift(e.index);
                    acc.add(m.action[l[0]].col(l[1]), e.value);
                }
                t0.set_col(x, acc.take());
            }
            c.cyclic.push_back(std::move(t0));
            continue;
        }
        const Matrix& tr = h.translation_matrix();
        c.cyclic.push_back(space(n)->build_operator(
            target->dim(),
            [&](const std::vector<Index>& t, Accumulator& acc) {
                std::vector<SparseVec> out(static_cast<std::size_t>(n) + 1);
                std::function<void(Index, const SparseVec&, const Scalar&)> step = [&](Index k, const SparseVec& minus,
                                                                                     const Scalar& coeff) {
                    if (k > n) {
                        out[static_cast<std::size_t>(n)] = minus;
                        target->add_pure(out, coeff, acc);
                        return;
                    }
                    for (const auto& e : tr.col(t[static_cast<std::size_t>(k)]).entries()) {
                        auto [plus, mi] = h.urop_lift(e.index);
                        out[static_cast<std::size_t>(k - 1)] = basis(plus);
                        step(k + 1, h.mul(basis(mi), minus), coeff * e.value);
                    }
                };
                for (const auto& ce : m.coaction.col(t[0]).entries()) {
                    const auto& l = m.um->lift(ce.index);
                    for (const auto& e : tr.col(t[1]).entries()) {
                        auto [plus, mi] = h.urop_lift(e.index);
                        out[0] = m.action[plus].col(l[1]);
                        step(2, h.mul(basis(mi), basis(l[0])), ce.value * e.value);
                    }
                }
            },
            what("t", n)));
    }
    return c;
}

CocyclicModule build_cocyclic_module(const CoefficientPtr& mp, Index cap) {
    if (cap < 1) throw Error(ErrorKind::ParseError, "degree cap must be at least 1");
    const Coefficient& m = *mp;
    const HopfAlgebroid& h = *m.over;
    CocyclicModule c;
    c.name = "C^(" + h.name + ", " + m.name + ")";
    c.coeff = mp;
    c.cap = cap;
    c.spaces.push_back(TensorChain::single(m.dim));
    ChainPtr powers = TensorChain::single(h.dim());  // U^{⊗_R n}
    for (Index n = 1; n <= cap; ++n) {
        if (n > 1) powers = powers->extend(powers->induced_action_on_last_factor(h.ract), h.dim(), h.lact);
        c.spaces.push_back(powers->extend(powers->induced_action_on_last_factor(h.ract), m.dim, m.left,
                                          "C^" + std::to_string(n) + "(" + h.name + ", " + m.name + ")"));
    }
    auto space = [&](Index n) { return c.spaces[static_cast<std::size_t>(n)]; };
    auto what = [&](const std::string& op, Index n) { return c.name + ": " + op + " in degree " + std::to_string(n); };

    c.cofaces.resize(static_cast<std::size_t>(cap));
    for (Index n = 0; n < cap; ++n) {
        auto target = space(n + 1);
        for (Index i = 0; i <= n + 1; ++i) {
            c.cofaces[static_cast<std::size_t>(n)].push_back(space(n)->build_operator(
                target->dim(),
                [&](const std::vector<Index>& t, Accumulator& acc) {
                    std::vector<Index> out;
                    if (i == 0) {
                        std::vector<SparseVec> v = basis_tuple(t);
                        v.insert(v.begin(), h.one());
                        target->add_pure(v, 1, acc);
                    } else if (i == n + 1) {
                        for (const auto& e : m.coaction.col(t[static_cast<std::size_t>(n)]).entries()) {
                            const auto& l = m.um->lift(e.index);
                            out = t;
                            out[static_cast<std::size_t>(n)] = l[0];
                            out.push_back(l[1]);
                            target->add_pure(out, e.value, acc);
                        }
                    } else {
                        const auto k = static_cast<std::size_t>(i - 1);
                        for (const auto& e : h.coproduct.col(t[k]).entries()) {
                            auto [a, b] = h.ur_lift(e.index);
                            out = t;
                            out[k] = a;
                            out.insert(out.begin() + static_cast<std::ptrdiff_t>(k) + 1, b);
                            target->add_pure(out, e.value, acc);
                        }
                    }
                },
                what("δ_" + std::to_string(i), n)));
        }
    }

    c.codegeneracies.resize(static_cast<std::size_t>(cap) + 1);
    for (Index n = 1; n <= cap; ++n) {
        auto target = space(n - 1);
        for (Index i = 0; i < n; ++i) {
            c.codegeneracies[static_cast<std::size_t>(n)].push_back(space(n)->build_operator(
                target->dim(),
                [&](const std::vector<Index>& t, Accumulator& acc) {
                    // ε(u^{i+1}) absorbed into the next factor from the left
                    const auto k = static_cast<std::size_t>(i);
                    SparseVec r = h.eps(basis(t[k]));
                    std::vector<SparseVec> out = basis_tuple(t);
                    const Action& act = (k + 1 == static_cast<std::size_t>(n)) ? m.left : h.lact;
                    out[k + 1] = act.of(r).col(t[k + 1]);
                    out.erase(out.begin() + static_cast<std::ptrdiff_t>(k));
                    target->add_pure(out, 1, acc);
                },
                what("σ_" + std::to_string(i), n)));
        }
    }

    // τ_n(u^1 ⊗ ... ⊗ u^n ⊗ m)
    //   = u^1_-(1) u^2 ⊗ ... ⊗ u^1_-(n-1) u^n ⊗ u^1_-(n) m_(-1) ⊗ m_(0) u^1_+
    const Matrix* tr = h.translation ? &*h.translation : nullptr;
    for (Index n = 0; n <= cap; ++n) {
        if (n == 0) {
            c.cocyclic.push_back(Matrix::identity(m.dim));
            continue;
        }
        if (!tr) throw Error(ErrorKind::Unresolved, h.name + ": no translation map");
        auto target = space(n);
        c.cocyclic.push_back(space(n)->build_operator(
            target->dim(),
            [&](const std::vector<Index>& t, Accumulator& acc) {
                const Index mi = t[static_cast<std::size_t>(n)];
                for (const auto& te : tr->col(t[0]).entries()) {
                    auto [plus, minus] = h.urop_lift(te.index);
                    for (const auto& ce : m.coaction.col(mi).entries()) {
                        const auto& l = m.um->lift(ce.index);
                        SparseVec last = m.action[plus].col(l[1]);
                        std::vector<Index> prefix;
                        iterated_coproduct(h, minus, n, prefix, te.value * ce.value,
                                           [&](const std::vector<Index>& parts, const Scalar& coeff) {
                                               std::vector<SparseVec> out;
                                               for (Index k = 0; k + 1 < n; ++k)
                                                   out.push_back(h.total->product(parts[static_cast<std::size_t>(k)],
                                                                                  t[static_cast<std::size_t>(k) + 1]));
                                               out.push_back(h.total->product(parts.back(), l[0]));
                                               out.push_back(last);
                                               target->add_pure(out, coeff, acc);
                                           });
                    }
                }
            },
            what("τ", n)));
    }
    return c;
}

// ----------------------------------------------------------------- checks

Report check_cyclic_module(const ParaCyclicModule& c) {
    Report rep(c.name + ": para-cyclic identities");
    const Index cap = c.cap;
    auto deg = [](Index n) { return "degree " + std::to_string(n); };
    for (Index n = 2; n <= cap; ++n)
        for (Index j = 1; j <= n; ++j)
            for (Index i = 0; i < j; ++i)
                rep.expect_equal("d_i d_j = d_{j-1} d_i", c.d(n - 1, i) * c.d(n, j), c.d(n - 1, j - 1) * c.d(n, i),
                                 deg(n) + ", i=" + std::to_string(i) + ", j=" + std::to_string(j));
    for (Index n = 0; n + 2 <= cap; ++n)
        for (Index j = 0; j <= n; ++j)
            for (Index i = 0; i <= j; ++i)
                rep.expect_equal("s_i s_j = s_{j+1} s_i", c.s(n + 1, i) * c.s(n, j), c.s(n + 1, j + 1) * c.s(n, i),
                                 deg(n) + ", i=" + std::to_string(i) + ", j=" + std::to_string(j));
    for (Index n = 0; n < cap; ++n)
        for (Index j = 0; j <= n; ++j)
            for (Index i = 0; i <= n + 1; ++i) {
                Matrix lhs = c.d(n + 1, i) * c.s(n, j);
                Matrix rhs;
                if (i < j)
                    rhs = c.s(n - 1, j - 1) * c.d(n, i);
                else if (i == j || i == j + 1)
                    rhs = Matrix::identity(c.dim(n));
                else
                    rhs = c.s(n - 1, j) * c.d(n, i - 1);
                rep.expect_equal("d_i s_j", lhs, rhs, deg(n) + ", i=" + std::to_string(i) + ", j=" + std::to_string(j));
            }
    for (Index n = 1; n <= cap; ++n) {
        rep.expect_equal("d_0 t = d_n", c.d(n, 0) * c.t(n), c.d(n, n), deg(n));
        for (Index i = 1; i <= n; ++i)
            rep.expect_equal("d_i t = t d_{i-1}", c.d(n, i) * c.t(n), c.t(n - 1) * c.d(n, i - 1),
                             deg(n) + ", i=" + std::to_string(i));
    }
    for (Index n = 0; n < cap; ++n) {
        rep.expect_equal("s_0 t = t^2 s_n", c.s(n, 0) * c.t(n), c.t(n + 1) * c.t(n + 1) * c.s(n, n), deg(n));
        for (Index i = 1; i <= n; ++i)
            rep.expect_equal("s_i t = t s_{i-1}", c.s(n, i) * c.t(n), c.t(n + 1) * c.s(n, i - 1),
                             deg(n) + ", i=" + std::to_string(i));
    }
    for (Index n = 0; n <= cap; ++n)
        rep.expect_equal("cyclic", c.t(n).pow(static_cast<int>(n) + 1), Matrix::identity(c.dim(n)), deg(n));
    return rep;
}

Report check_cocyclic_module(const CocyclicModule& c) {
    Report rep(c.name + ": para-cocyclic identities");
    const Index cap = c.cap;
    auto deg = [](Index n) { return "degree " + std::to_string(n); };
    // δ_j δ_i = δ_i δ_{j-1} for i < j, on C^n
    for (Index n = 0; n + 2 <= cap; ++n)
        for (Index j = 1; j <= n + 2; ++j)
            for (Index i = 0; i < j; ++i)
                rep.expect_equal("δ_j δ_i = δ_i δ_{j-1}", c.delta(n + 1, j) * c.delta(n, i),
                                 c.delta(n + 1, i) * c.delta(n, j - 1),
                                 deg(n) + ", i=" + std::to_string(i) + ", j=" + std::to_string(j));
    // σ_j σ_i = σ_i σ_{j+1} for i <= j, on C^n
    for (Index n = 2; n <= cap; ++n)
        for (Index j = 0; j + 2 <= n; ++j)
            for (Index i = 0; i <= j; ++i)
                rep.expect_equal("σ_j σ_i = σ_i σ_{j+1}", c.sigma(n - 1, j) * c.sigma(n, i),
                                 c.sigma(n - 1, i) * c.sigma(n, j + 1),
                                 deg(n) + ", i=" + std::to_string(i) + ", j=" + std::to_string(j));
    // σ_j δ_i on C^n (δ_i: C^n -> C^{n+1}, σ_j: C^{n+1} -> C^n)
    for (Index n = 0; n < cap; ++n)
        for (Index j = 0; j <= n; ++j)
            for (Index i = 0; i <= n + 1; ++i) {
                Matrix lhs = c.sigma(n + 1, j) * c.delta(n, i);
                Matrix rhs;
                if (i < j)
                    rhs = c.delta(n - 1, i) * c.sigma(n, j - 1);
                else if (i == j || i == j + 1)
                    rhs = Matrix::identity(c.dim(n));
                else
                    rhs = c.delta(n - 1, i - 1) * c.sigma(n, j);
                rep.expect_equal("σ_j δ_i", lhs, rhs, deg(n) + ", i=" + std::to_string(i) + ", j=" + std::to_string(j));
            }
    for (Index n = 1; n <= cap; ++n) {
        rep.expect_equal("τ δ_0 = δ_n", c.tau(n) * c.delta(n - 1, 0), c.delta(n - 1, n), deg(n));
        for (Index i = 1; i <= n; ++i)
            rep.expect_equal("τ δ_i = δ_{i-1} τ", c.tau(n) * c.delta(n - 1, i), c.delta(n - 1, i - 1) * c.tau(n - 1),
                             deg(n) + ", i=" + std::to_string(i));
    }
    for (Index n = 0; n < cap; ++n) {
        rep.expect_equal("τ σ_0 = σ_n τ^2", c.tau(n) * c.sigma(n + 1, 0),
                         c.sigma(n + 1, n) * c.tau(n + 1) * c.tau(n + 1), deg(n));
        for (Index i = 1; i <= n; ++i)
            rep.expect_equal("τ σ_i = σ_{i-1} τ", c.tau(n) * c.sigma(n + 1, i), c.sigma(n + 1, i - 1) * c.tau(n + 1),
                             deg(n) + ", i=" + std::to_string(i));
    }
    for (Index n = 0; n <= cap; ++n)
        rep.expect_equal("cocyclic", c.tau(n).pow(static_cast<int>(n) + 1), Matrix::identity(c.dim(n)), deg(n));
    return rep;
}

// --------------------------------------------------------------- homology

HomologyTable hochschild_homology(const ParaCyclicModule& c) {
    HomologyTable table{HomologyKind::HH, {}, c.cap, 0};
    std::vector<Matrix> b;
    for (Index n = 0; n <= c.cap; ++n) b.push_back(c.b(n));
    for (Index n = 0; n < c.cap; ++n)
        table.dims.push_back(homology_dim(b[static_cast<std::size_t>(n) + 1], b[static_cast<std::size_t>(n)]));
    table.top_bound = c.dim(c.cap) - rank(b[static_cast<std::size_t>(c.cap)]);
    return table;
}

HomologyTable hochschild_cohomology(const CocyclicModule& c) {
    HomologyTable table{HomologyKind::coHH, {}, c.cap, 0};
    std::vector<Matrix> beta;
    for (Index n = 0; n < c.cap; ++n) beta.push_back(c.beta(n));
    for (Index n = 0; n < c.cap; ++n) {
        Matrix in = n == 0 ? Matrix(c.dim(0), 0) : beta[static_cast<std::size_t>(n) - 1];
        table.dims.push_back(homology_dim(in, beta[static_cast<std::size_t>(n)]));
    }
    table.top_bound = c.dim(c.cap) - rank(beta[static_cast<std::size_t>(c.cap) - 1]);
    return table;
}

namespace {

// Signed cyclic operator (-1)^n t_n, checked to have order n + 1.
Matrix signed_cyclic(const Matrix& t, Index n, const std::string& name) {
    if (t.pow(static_cast<int>(n) + 1) != Matrix::identity(t.rows()))
        throw Error(ErrorKind::NotCyclic, name + ": cyclic operator has order other than " + std::to_string(n + 1) +
                                              " in degree " + std::to_string(n));
    return t.scaled(sign(n));
}

}  // namespace

HomologyTable cyclic_homology(const ParaCyclicModule& c) {
    const Index cap = c.cap;
    std::vector<Matrix> b, bp, one_minus_t, norm;
    for (Index q = 0; q <= cap; ++q) {
        b.push_back(c.b(q));
        bp.push_back(c.b_prime(q).scaled(Scalar(-1)));
        Matrix tt = signed_cyclic(c.t(q), q, c.name);
        one_minus_t.push_back(Matrix::identity(c.dim(q)) - tt);
        norm.push_back(power_sum(tt, q + 1));
    }
    auto at = [](const std::vector<Matrix>& v, Index i) -> const Matrix& { return v[static_cast<std::size_t>(i)]; };
    // D_n : Tot_n -> Tot_{n-1}, column p holds C_{n-p}
    auto total = [&](Index n) {
        std::vector<Index> rows, cols;
        for (Index p = 0; p < n; ++p) rows.push_back(c.dim(n - 1 - p));
        for (Index p = 0; p <= n; ++p) cols.push_back(c.dim(n - p));
        std::vector<std::vector<const Matrix*>> blocks(rows.size(), std::vector<const Matrix*>(cols.size(), nullptr));
        for (Index p = 0; p <= n; ++p) {
            const Index q = n - p;
            if (q >= 1) blocks[static_cast<std::size_t>(p)][static_cast<std::size_t>(p)] = p % 2 == 0 ? &at(b, q) : &at(bp, q);
            if (p >= 1)
                blocks[static_cast<std::size_t>(p) - 1][static_cast<std::size_t>(p)] =
                    p % 2 == 1 ? &at(one_minus_t, q) : &at(norm, q);
        }
        return assemble_blocks(rows, cols, blocks);
    };
    HomologyTable table{HomologyKind::HC, {}, cap, 0};
    std::vector<Matrix> D;
    for (Index n = 0; n <= cap; ++n) D.push_back(total(n));
    for (Index n = 0; n < cap; ++n)
        table.dims.push_back(homology_dim(D[static_cast<std::size_t>(n) + 1], D[static_cast<std::size_t>(n)]));
    table.top_bound = D.back().cols() - rank(D.back());
    return table;
}

HomologyTable cyclic_cohomology(const CocyclicModule& c) {
    const Index cap = c.cap;
    std::vector<Matrix> beta, betap, one_minus_t, norm;
    for (Index q = 0; q < cap; ++q) {
        beta.push_back(c.beta(q));
        betap.push_back(c.beta_prime(q).scaled(Scalar(-1)));
    }
    for (Index q = 0; q <= cap; ++q) {
        Matrix tt = signed_cyclic(c.tau(q), q, c.name);
        one_minus_t.push_back(Matrix::identity(c.dim(q)) - tt);
        norm.push_back(power_sum(tt, q + 1));
    }
    auto at = [](const std::vector<Matrix>& v, Index i) -> const Matrix& { return v[static_cast<std::size_t>(i)]; };
    // D^n : Tot^n -> Tot^{n+1}, column p holds C^{n-p}
    auto total = [&](Index n) {
        std::vector<Index> rows, cols;
        for (Index p = 0; p <= n + 1; ++p) rows.push_back(c.dim(n + 1 - p));
        for (Index p = 0; p <= n; ++p) cols.push_back(c.dim(n - p));
        std::vector<std::vector<const Matrix*>> blocks(rows.size(), std::vector<const Matrix*>(cols.size(), nullptr));
        for (Index p = 0; p <= n; ++p) {
            const Index q = n - p;
            blocks[static_cast<std::size_t>(p)][static_cast<std::size_t>(p)] = p % 2 == 0 ? &at(beta, q) : &at(betap, q);
            blocks[static_cast<std::size_t>(p) + 1][static_cast<std::size_t>(p)] =
                p % 2 == 0 ? &at(one_minus_t, q) : &at(norm, q);
        }
        return assemble_blocks(rows, cols, blocks);
    };
    HomologyTable table{HomologyKind::coHC, {}, cap, 0};
    std::vector<Matrix> D;
    for (Index n = 0; n < cap; ++n) D.push_back(total(n));
    for (Index n = 0; n < cap; ++n) {
        Matrix in = n == 0 ? Matrix(c.dim(0), 0) : D[static_cast<std::size_t>(n) - 1];
        table.dims.push_back(homology_dim(in, D[static_cast<std::size_t>(n)]));
    }
    table.top_bound = D.back().rows() - rank(D.back());
    return table;
}

// ---------------------------------------------------------- explicit t̃

Matrix tilde_t_explicit(const BaseChange& bc, const Coefficient& m, const Coefficient& mt,
                        const ParaCyclicModule& target, Index n) {
    const MoritaContext& c = bc.ctx;
    const HopfAlgebroid& U = *bc.original;
    const auto& ifam = c.i_family();
    auto space = target.spaces[static_cast<std::size_t>(n)];
    const std::string what = "explicit cyclic operator in degree " + std::to_string(n);
    if (n == 0) {
        // p ⊗ m ⊗ q -> p ⊗ m_(0) m_(-1) ⊗ q
        return space->build_operator(
            space->dim(),
            [&](const std::vector<Index>& t, Accumulator& acc) {
                const auto& x = mt.carrier->lift(t[0]);
                for (const auto& e : m.coaction.col(x[1]).entries()) {
                    const auto& l = m.um->lift(e.index);
                    SparseVec mm = mt.carrier->pure(std::vector<SparseVec>{basis(x[0]), m.action[l[0]].col(l[1]), basis(x[2])});
                    space->add_pure(std::vector<SparseVec>{mm}, e.value, acc);
                }
            },
            what);
    }
    const Matrix& tr = U.translation_matrix();
    return space->build_operator(
        space->dim(),
        [&](const std::vector<Index>& t, Accumulator& acc) {
            const auto& mx = mt.carrier->lift(t[0]);
            const Index p = mx[0], mm = mx[1], q = mx[2];
            std::vector<BaseChange::Parts> u;
            for (Index k = 1; k <= n; ++k) u.push_back(bc.parts(t[static_cast<std::size_t>(k)]));
            auto part = [&](Index k) -> const BaseChange::Parts& { return u[static_cast<std::size_t>(k) - 1]; };
            std::vector<Index> plus(static_cast<std::size_t>(n) + 1), minus(static_cast<std::size_t>(n) + 1);
            std::vector<Index> idx(static_cast<std::size_t>(n) + 1);
            std::vector<SparseVec> out(static_cast<std::size_t>(n) + 1);
            for (const auto& ce : m.coaction.col(mm).entries()) {
                const auto& l = m.um->lift(ce.index);  // m_(-1), m_(0)
                // choose translation terms for u^1..u^n, then the i-indices
                std::function<void(Index, const Scalar&)> over_u = [&](Index k, const Scalar& coeff) {
                    if (k <= n) {
                        for (const auto& e : tr.col(part(k).u).entries()) {
                            auto [pl, mi] = U.urop_lift(e.index);
                            plus[static_cast<std::size_t>(k)] = pl;
                            minus[static_cast<std::size_t>(k)] = mi;
                            over_u(k + 1, coeff * e.value);
                        }
                        return;
                    }
                    // (u^n_- ◂ (b_n d_{n-1})) ... (u^1_- ◂ (b_1 p)) m_(-1)
                    SparseVec tail = basis(l[0]);
                    for (Index j = 1; j <= n; ++j) {
                        const Index prev_d = j == 1 ? p : part(j - 1).d;
                        SparseVec y = U.mul(basis(minus[static_cast<std::size_t>(j)]), U.s(c.qp_product(part(j).b, prev_d)));
                        tail = U.mul(y, tail);
                    }
                    std::function<void(Index, const Scalar&)> over_i = [&](Index k, const Scalar& c2) {
                        if (k <= n) {
                            for (Index a = 0; a < static_cast<Index>(ifam.size()); ++a) {
                                idx[static_cast<std::size_t>(k)] = a;
                                over_i(k + 1, c2 * ifam[static_cast<std::size_t>(a)].coeff);
                            }
                            return;
                        }
                        auto qi = [&](Index k2) { return ifam[static_cast<std::size_t>(idx[static_cast<std::size_t>(k2)])].left; };
                        auto pi = [&](Index k2) { return ifam[static_cast<std::size_t>(idx[static_cast<std::size_t>(k2)])].right; };
                        out[0] = mt.carrier->pure(std::vector<SparseVec>{
                            basis(pi(1)), m.action[plus[1]].col(l[1]), basis(part(1).c)});
                        for (Index k2 = 2; k2 <= n; ++k2)
                            out[static_cast<std::size_t>(k2) - 1] =
                                bc.element(part(k2).a, qi(k2 - 1), basis(plus[static_cast<std::size_t>(k2)]), part(k2).c, pi(k2));
                        out[static_cast<std::size_t>(n)] = bc.element(part(n).d, qi(n), tail, q, part(1).a);
                        space->add_pure(out, c2, acc);
                    };
                    over_i(1, coeff);
                };
                over_u(1, ce.value);
            }
        },
        what);
}

}  // namespace hopfcyc
