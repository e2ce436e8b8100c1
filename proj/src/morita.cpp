#include "hopfcyc/morita.hpp"

namespace hopfcyc {

namespace {

std::vector<DualTerm> dual_terms(const BalancedTensor& t, const SparseVec& v) {
    std::vector<DualTerm> out;
    for (const auto& e : v.entries()) {
        auto [x, y] = t.lift(e.index);
        out.push_back({x, y, e.value});
    }
    return out;
}

Matrix bijection(const Matrix& pairs, const BalancedTensor& space, const std::string& what) {
    Matrix m = descend_projected(pairs, space.space(), what);
    if (m.rows() != m.cols() || rank(m) != m.cols())
        throw Error(ErrorKind::NotIso, what + " is not bijective (" + std::to_string(rank(m)) + " of " +
                                           std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ")");
    return m;
}

}  // namespace

SparseVec MoritaContext::pq_product(const SparseVec& p, const SparseVec& q) const {
    Accumulator acc(S->dim());
    for (const auto& a : p.entries())
        for (const auto& b : q.entries()) acc.add(pq_product(a.index, b.index), a.value * b.value);
    return acc.take();
}

SparseVec MoritaContext::qp_product(const SparseVec& q, const SparseVec& p) const {
    Accumulator acc(R->dim());
    for (const auto& a : q.entries())
        for (const auto& b : p.entries()) acc.add(qp_product(a.index, b.index), a.value * b.value);
    return acc.take();
}

MoritaContext make_morita_context(std::string name, AlgebraPtr R, AlgebraPtr S, Bimodule P, Bimodule Q,
                                  Matrix phi_pairs, Matrix psi_pairs) {
    if (!same_algebra(*P.left.alg, *S) || !same_algebra(*P.right.alg, *R) || !same_algebra(*Q.left.alg, *R) ||
        !same_algebra(*Q.right.alg, *S))
        throw Error(ErrorKind::ActionMismatch, name + ": P must be an (S,R)- and Q an (R,S)-bimodule");
    if (phi_pairs.rows() != S->dim() || phi_pairs.cols() != P.dim * Q.dim || psi_pairs.rows() != R->dim() ||
        psi_pairs.cols() != Q.dim * P.dim)
        throw Error(ErrorKind::ActionMismatch, name + ": pairing matrices have the wrong shape");
    MoritaContext c;
    c.name = std::move(name);
    c.R = std::move(R);
    c.S = std::move(S);
    c.pq = std::make_shared<BalancedTensor>(balanced_tensor(P, Q, {}, c.name + ": P ⊗_R Q"));
    c.qp = std::make_shared<BalancedTensor>(balanced_tensor(Q, P, {}, c.name + ": Q ⊗_S P"));
    c.P = std::move(P);
    c.Q = std::move(Q);
    c.phi_pairs = std::move(phi_pairs);
    c.psi_pairs = std::move(psi_pairs);
    c.phi = bijection(c.phi_pairs, *c.pq, c.name + ": phi");
    c.psi = bijection(c.psi_pairs, *c.qp, c.name + ": psi");

    for (Index s = 0; s < c.S->dim(); ++s) {
        if (c.phi * c.pq->induced_on_left_factor(c.P.left[s]) != c.S->left_mult(s) * c.phi ||
            c.phi * c.pq->induced_on_right_factor(c.Q.right[s]) != c.S->right_mult(s) * c.phi)
            throw Error(ErrorKind::NotEquivariant, c.name + ": phi is not S-bilinear at " + c.S->label(s));
    }
    for (Index r = 0; r < c.R->dim(); ++r) {
        if (c.psi * c.qp->induced_on_left_factor(c.Q.left[r]) != c.R->left_mult(r) * c.psi ||
            c.psi * c.qp->induced_on_right_factor(c.P.right[r]) != c.R->right_mult(r) * c.psi)
            throw Error(ErrorKind::NotEquivariant, c.name + ": psi is not R-bilinear at " + c.R->label(r));
    }

    // (φ ⊗ P) = (P ⊗ ψ) on P ⊗_R Q ⊗_S P, and (ψ ⊗ Q) = (Q ⊗ φ) on Q ⊗_S P ⊗_R Q
    const Index dp = c.P.dim, dq = c.Q.dim;
    auto pqp = TensorChain::single(dp)->extend(c.P.right, dq, c.Q.left)->extend(
        TensorChain::single(dp)->extend(c.P.right, dq, c.Q.left)->induced_action_on_last_factor(c.Q.right), dp,
        c.P.left);
    Matrix lhs = pqp->build_operator(
        dp,
        [&](const std::vector<Index>& t, Accumulator& acc) {
            for (const auto& e : c.pq_product(t[0], t[1]).entries()) acc.add(c.P.left[e.index].col(t[2]), e.value);
        },
        c.name + ": phi ⊗ P");
    Matrix rhs = pqp->build_operator(
        dp,
        [&](const std::vector<Index>& t, Accumulator& acc) {
            for (const auto& e : c.qp_product(t[1], t[2]).entries()) acc.add(c.P.right[e.index].col(t[0]), e.value);
        },
        c.name + ": P ⊗ psi");
    if (lhs != rhs) throw Error(ErrorKind::CompatibilityFail, c.name + ": (phi ⊗ P) != (P ⊗ psi)");
    auto qpq_prefix = TensorChain::single(dq)->extend(c.Q.right, dp, c.P.left);
    auto qpq = qpq_prefix->extend(qpq_prefix->induced_action_on_last_factor(c.P.right), dq, c.Q.left);
    lhs = qpq->build_operator(
        dq,
        [&](const std::vector<Index>& t, Accumulator& acc) {
            for (const auto& e : c.qp_product(t[0], t[1]).entries()) acc.add(c.Q.left[e.index].col(t[2]), e.value);
        },
        c.name + ": psi ⊗ Q");
    rhs = qpq->build_operator(
        dq,
        [&](const std::vector<Index>& t, Accumulator& acc) {
            for (const auto& e : c.pq_product(t[1], t[2]).entries()) acc.add(c.Q.right[e.index].col(t[0]), e.value);
        },
        c.name + ": Q ⊗ phi");
    if (lhs != rhs) throw Error(ErrorKind::CompatibilityFail, c.name + ": (psi ⊗ Q) != (Q ⊗ phi)");

    c.phi_inv_one = dual_terms(*c.pq, solve(c.phi, c.S->unit()));
    c.psi_inv_one = dual_terms(*c.qp, solve(c.psi, c.R->unit()));
    return c;
}

MoritaContext identity_context(const AlgebraPtr& R) {
    Bimodule reg = regular_bimodule(R);
    const Index d = R->dim();
    Matrix mult(d, d * d);
    for (Index a = 0; a < d; ++a)
        for (Index b = 0; b < d; ++b) mult.set_col(a * d + b, R->product(a, b));
    MoritaContext c = make_morita_context("id(" + R->name() + ")", R, R, reg, reg, mult, mult);
    // Lift 1 ⊗ 1 rather than the canonical representative, so that θ and γ
    // are the obvious identifications.
    std::vector<DualTerm> unit_pair;
    for (const auto& x : R->unit().entries())
        for (const auto& y : R->unit().entries()) unit_pair.push_back({x.index, y.index, x.value * y.value});
    c.phi_inv_one = unit_pair;
    c.psi_inv_one = unit_pair;
    return c;
}

MoritaContext matrix_context(const AlgebraPtr& R, Index k) {
    AlgebraPtr S = matrix_algebra(R, k);
    const Index m = R->dim(), ds = S->dim(), dv = k * m;
    auto sidx = [&](Index i, Index j, Index b) { return (i * k + j) * m + b; };
    auto vidx = [&](Index i, Index b) { return i * m + b; };
    std::vector<std::string> plabels, qlabels;
    for (Index i = 0; i < k; ++i)
        for (Index b = 0; b < m; ++b) {
            plabels.push_back("e" + std::to_string(i + 1) + "⊗" + R->label(b));
            qlabels.push_back("f" + std::to_string(i + 1) + "⊗" + R->label(b));
        }
    Action p_left{S, Side::Left, {}}, q_right{S, Side::Right, {}};
    Action p_right{R, Side::Right, {}}, q_left{R, Side::Left, {}};
    for (Index i = 0; i < k; ++i)
        for (Index j = 0; j < k; ++j)
            for (Index a = 0; a < m; ++a) {
                Matrix pl(dv, dv), qr(dv, dv);
                for (Index b = 0; b < m; ++b) {
                    // E_ij a · (e_j b) = e_i (ab);  (f_i b) · E_ij a = f_j (ba)
                    SparseVec v, w;
                    for (const auto& e : R->product(a, b).entries()) v.push_back(vidx(i, e.index), e.value);
                    for (const auto& e : R->product(b, a).entries()) w.push_back(vidx(j, e.index), e.value);
                    pl.set_col(vidx(j, b), std::move(v));
                    qr.set_col(vidx(i, b), std::move(w));
                }
                p_left.mats.push_back(std::move(pl));
                q_right.mats.push_back(std::move(qr));
            }
    for (Index a = 0; a < m; ++a) {
        Matrix pr(dv, dv), ql(dv, dv);
        for (Index i = 0; i < k; ++i)
            for (Index b = 0; b < m; ++b) {
                SparseVec v, w;
                for (const auto& e : R->product(b, a).entries()) v.push_back(vidx(i, e.index), e.value);
                for (const auto& e : R->product(a, b).entries()) w.push_back(vidx(i, e.index), e.value);
                pr.set_col(vidx(i, b), std::move(v));
                ql.set_col(vidx(i, b), std::move(w));
            }
        p_right.mats.push_back(std::move(pr));
        q_left.mats.push_back(std::move(ql));
    }
    Bimodule P = Bimodule::make("P", plabels, p_left, p_right);
    Bimodule Q = Bimodule::make("Q", qlabels, q_left, q_right);
    Matrix phi(ds, dv * dv), psi(m, dv * dv);
    for (Index i = 0; i < k; ++i)
        for (Index a = 0; a < m; ++a)
            for (Index j = 0; j < k; ++j)
                for (Index b = 0; b < m; ++b) {
                    // (e_i a)(f_j b) = E_ij ab;  (f_i a)(e_j b) = δ_ij ab
                    SparseVec v;
                    for (const auto& e : R->product(a, b).entries()) v.push_back(sidx(i, j, e.index), e.value);
                    phi.set_col(vidx(i, a) * dv + vidx(j, b), std::move(v));
                    if (i == j) psi.set_col(vidx(i, a) * dv + vidx(j, b), R->product(a, b));
                }
    return make_morita_context("M" + std::to_string(k) + "(" + R->name() + ")", R, S, std::move(P), std::move(Q),
                               std::move(phi), std::move(psi));
}

MoritaContext enveloping_context(const MoritaContext& ctx) {
    AlgebraPtr Re = enveloping(ctx.R), Se = enveloping(ctx.S);
    const Index dp = ctx.P.dim, dq = ctx.Q.dim, dr = ctx.R->dim(), ds = ctx.S->dim();
    std::vector<std::string> pel, qel;
    for (Index p = 0; p < dp; ++p)
        for (Index q = 0; q < dq; ++q) pel.push_back(ctx.P.labels[static_cast<std::size_t>(p)] + "⊗(" +
                                                     ctx.Q.labels[static_cast<std::size_t>(q)] + ")°");
    for (Index q = 0; q < dq; ++q)
        for (Index p = 0; p < dp; ++p) qel.push_back(ctx.Q.labels[static_cast<std::size_t>(q)] + "⊗(" +
                                                     ctx.P.labels[static_cast<std::size_t>(p)] + ")°");
    // (s ⊗ s̃°)(p ⊗ q°) = sp ⊗ (q s̃)°,  (p ⊗ q°)(r ⊗ r'°) = pr ⊗ (r' q)°
    // (r ⊗ r'°)(q ⊗ p°) = rq ⊗ (p r')°, (q ⊗ p°)(s ⊗ s̃°) = qs ⊗ (s̃ p)°
    Action pe_left{Se, Side::Left, {}}, qe_right{Se, Side::Right, {}};
    Action pe_right{Re, Side::Right, {}}, qe_left{Re, Side::Left, {}};
    for (Index s = 0; s < ds; ++s)
        for (Index s2 = 0; s2 < ds; ++s2) {
            pe_left.mats.push_back(kron(ctx.P.left[s], ctx.Q.right[s2]));
            qe_right.mats.push_back(kron(ctx.Q.right[s], ctx.P.left[s2]));
        }
    for (Index r = 0; r < dr; ++r)
        for (Index r2 = 0; r2 < dr; ++r2) {
            pe_right.mats.push_back(kron(ctx.P.right[r], ctx.Q.left[r2]));
            qe_left.mats.push_back(kron(ctx.Q.left[r], ctx.P.right[r2]));
        }
    Bimodule Pe = Bimodule::make("P^e", pel, pe_left, pe_right);
    Bimodule Qe = Bimodule::make("Q^e", qel, qe_left, qe_right);
    const Index dpe = dp * dq;
    Matrix phi(ds * ds, dpe * dpe), psi(dr * dr, dpe * dpe);
    for (Index p = 0; p < dp; ++p)
        for (Index q = 0; q < dq; ++q)
            for (Index q2 = 0; q2 < dq; ++q2)
                for (Index p2 = 0; p2 < dp; ++p2) {
                    // (p ⊗ q°)(q2 ⊗ p2°) = φ(p ⊗ q2) ⊗ φ(p2 ⊗ q)°
                    phi.set_col((p * dq + q) * dpe + (q2 * dp + p2),
                                kron(ctx.pq_product(p, q2), ctx.pq_product(p2, q), ds));
                    // (q2 ⊗ p2°)(p ⊗ q°) = ψ(q2 ⊗ p) ⊗ ψ(q ⊗ p2)°
                    psi.set_col((q2 * dp + p2) * dpe + (p * dq + q),
                                kron(ctx.qp_product(q2, p), ctx.qp_product(q, p2), dr));
                }
    return make_morita_context(ctx.name + "^e", Re, Se, std::move(Pe), std::move(Qe), std::move(phi), std::move(psi));
}

}  // namespace hopfcyc
