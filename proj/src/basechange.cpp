#include "hopfcyc/basechange.hpp"

#include <functional>

namespace hopfcyc {

namespace {

SparseVec basis(Index i) { return SparseVec::unit(i); }

void guarded(Report& rep, const std::string& name, const std::function<void()>& body) {
    try {
        body();
    } catch (const Error& e) {
        rep.fail(name, e.what());
    }
}

// Left and right multiplication on U through η, as R^e-actions.
Action through_eta(const HopfAlgebroid& h, const AlgebraPtr& re, Side side) {
    Action a{re, side, {}};
    for (Index x = 0; x < re->dim(); ++x)
        a.mats.push_back(side == Side::Left ? h.total->left_mult(h.eta.image(x)) : h.total->right_mult(h.eta.image(x)));
    return a;
}

Action through(const Action& action, const Matrix& map, const AlgebraPtr& alg, Side side) {
    Action a{alg, side, {}};
    for (Index r = 0; r < map.cols(); ++r) a.mats.push_back(action.of(map.col(r)));
    return a;
}

std::string joined(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : " | ") + p;
    return "[" + out + "]";
}

}  // namespace

// ------------------------------------------------------------ coefficients

Action Coefficient::coaction_right() const {
    const HopfAlgebroid& h = *over;
    Action out{h.base, Side::Right, {}};
    for (Index r = 0; r < h.base_dim(); ++r) {
        Matrix eval = um->build_operator(
            dim,
            [&](const std::vector<Index>& t, Accumulator& acc) {
                SparseVec e = h.eps(h.mul(basis(t[0]), h.source.col(r)));
                acc.add(left.of(e).col(t[1]), Scalar(1));
            },
            name + ": right R-action from the coaction");
        out.mats.push_back(eval * coaction);
    }
    return out;
}

Coefficient prepare_coefficient(std::string name, AlgebroidPtr over, std::vector<std::string> labels, Action left,
                                Action action) {
    Coefficient m;
    m.name = std::move(name);
    m.dim = static_cast<Index>(labels.size());
    if (left.space_dim() != m.dim || action.space_dim() != m.dim || left.side != Side::Left ||
        action.side != Side::Right || !same_algebra(*left.alg, *over->base) ||
        !same_algebra(*action.alg, *over->total))
        throw Error(ErrorKind::ActionMismatch, m.name + ": needs a left R-action and a right U-action");
    left.validate(m.name + ": left R-action");
    action.validate(m.name + ": right U-action");
    m.blact = through(action, over->target, over->base, Side::Left);
    m.bract = through(action, over->source, over->base, Side::Right);
    m.um = TensorChain::single(over->dim())->extend(over->ract, m.dim, left, over->name + " ⊗_R " + m.name);
    m.coaction = Matrix(m.um->dim(), m.dim);
    m.labels = std::move(labels);
    m.left = std::move(left);
    m.action = std::move(action);
    m.over = std::move(over);
    return m;
}

Coefficient enveloping_unit_coefficient(const AlgebroidPtr& re) {
    const AlgebraPtr& R = re->base;
    const Index d = R->dim();
    if (re->dim() != d * d || re->eta.matrix != Matrix::identity(d * d))
        throw Error(ErrorKind::ActionMismatch, re->name + " is not an enveloping algebroid");
    Action left{R, Side::Left, {}}, action{re->total, Side::Right, {}};
    for (Index r = 0; r < d; ++r) left.mats.push_back(R->left_mult(r));
    for (Index r = 0; r < d; ++r)
        for (Index r2 = 0; r2 < d; ++r2) action.mats.push_back(R->left_mult(r2) * R->right_mult(r));
    Coefficient m = prepare_coefficient(R->name(), re, R->labels(), std::move(left), std::move(action));
    for (Index x = 0; x < d; ++x) m.coaction.set_col(x, m.um->pure(std::vector<SparseVec>{re->source.col(x), R->unit()}));
    return m;
}

Report check_sayd(const Coefficient& m) {
    Report rep(m.name + ": SaYD conditions");
    const HopfAlgebroid& h = *m.over;
    const BalancedTensor& um = *m.um->top();
    const AlgebraPtr& R = h.base;
    const AlgebraPtr& U = h.total;

    guarded(rep, "coaction is left R-linear", [&] {
        for (Index r = 0; r < R->dim(); ++r)
            rep.expect_equal("coaction is left R-linear", m.coaction * m.left[r],
                             um.induced_on_left_factor(h.lact[r]) * m.coaction, "r = " + R->label(r));
    });

    guarded(rep, "coassociativity", [&] {
        auto c3 = h.ur->extend(h.ur->induced_action_on_last_factor(h.ract), m.dim, m.left);
        Matrix outer = m.um->build_operator(
            c3->dim(),
            [&](const std::vector<Index>& t, Accumulator& acc) {
                for (const auto& e : h.coproduct.col(t[0]).entries()) {
                    auto [x, y] = h.ur_lift(e.index);
                    c3->add_pure(std::vector<Index>{x, y, t[1]}, e.value, acc);
                }
            },
            m.name + ": Δ ⊗ id");
        Matrix inner = m.um->build_operator(
            c3->dim(),
            [&](const std::vector<Index>& t, Accumulator& acc) {
                for (const auto& e : m.coaction.col(t[1]).entries()) {
                    const auto& l = m.um->lift(e.index);
                    c3->add_pure(std::vector<Index>{t[0], l[0], l[1]}, e.value, acc);
                }
            },
            m.name + ": id ⊗ coaction");
        rep.expect_equal("coassociativity", outer * m.coaction, inner * m.coaction);
    });

    guarded(rep, "counitality", [&] {
        Matrix eval = m.um->build_operator(
            m.dim,
            [&](const std::vector<Index>& t, Accumulator& acc) { acc.add(m.left.of(h.eps(basis(t[0]))).col(t[1]), 1); },
            m.name + ": ε ⊗ id");
        rep.expect_equal("counitality", eval * m.coaction, Matrix::identity(m.dim));
    });

    std::optional<Action> right;
    guarded(rep, "coaction lands in the Takeuchi product", [&] {
        right = m.coaction_right();
        for (Index r = 0; r < R->dim(); ++r)
            rep.expect_equal("coaction lands in the Takeuchi product",
                             um.induced_on_right_factor((*right)[r]) * m.coaction,
                             um.induced_on_left_factor(h.blact[r]) * m.coaction, "r = " + R->label(r));
    });

    for (Index r = 0; r < R->dim(); ++r)
        rep.expect_equal("left actions agree", m.left[r], m.blact[r], "r = " + R->label(r));
    if (right) {
        for (Index r = 0; r < R->dim(); ++r)
            rep.expect_equal("right actions agree", (*right)[r], m.bract[r], "r = " + R->label(r));
    } else {
        rep.fail("right actions agree", "right action from the coaction is not defined");
    }

    guarded(rep, "action and coaction are compatible", [&] {
        const Matrix& tr = h.translation_matrix();
        for (Index u = 0; u < U->dim(); ++u) {
            // Δ_M(m u) = u_- m_(-1) u_+(1) ⊗ m_(0) u_+(2)
            Matrix lhs = m.coaction * m.action[u];
            Matrix rhs(m.um->dim(), m.dim);
            Accumulator acc(m.um->dim());
            for (Index x = 0; x < m.dim; ++x) {
                for (const auto& te : tr.col(u).entries()) {
                    auto [plus, minus] = h.urop_lift(te.index);
                    for (const auto& ce : h.coproduct.col(plus).entries()) {
                        auto [p1, p2] = h.ur_lift(ce.index);
                        for (const auto& me : m.coaction.col(x).entries()) {
                            const auto& l = m.um->lift(me.index);
                            SparseVec left_part = h.mul(U->product(minus, l[0]), basis(p1));
                            m.um->add_pure(std::vector<SparseVec>{left_part, m.action[p2].col(l[1])},
                                           te.value * ce.value * me.value, acc);
                        }
                    }
                }
                rhs.set_col(x, acc.take());
            }
            rep.expect_equal("action and coaction are compatible", lhs, rhs, "u = " + U->label(u));
        }
    });

    guarded(rep, "stability", [&] {
        Accumulator acc(m.dim);
        for (Index x = 0; x < m.dim; ++x) {
            for (const auto& e : m.coaction.col(x).entries()) {
                const auto& l = m.um->lift(e.index);
                acc.add(m.action[l[0]].col(l[1]), e.value);
            }
            rep.expect_equal("stability", acc.take(), basis(x), "m = " + m.labels[static_cast<std::size_t>(x)]);
        }
    });
    return rep;
}

// ------------------------------------------------------------- base change

BaseChange::Parts BaseChange::parts(Index k) const {
    const auto& t = carrier->lift(k);
    const Index dp = ctx.P.dim, dq = ctx.Q.dim;
    return {t[0] / dq, t[0] % dq, t[1], t[2] / dp, t[2] % dp};
}

SparseVec BaseChange::element(const SparseVec& a, const SparseVec& b, const SparseVec& u, const SparseVec& c,
                              const SparseVec& d) const {
    return carrier->pure(std::vector<SparseVec>{kron(a, b, ctx.Q.dim), u, kron(c, d, ctx.P.dim)});
}

SparseVec BaseChange::element(Index a, Index b, const SparseVec& u, Index c, Index d) const {
    return carrier->pure(
        std::vector<SparseVec>{basis(a * ctx.Q.dim + b), u, basis(c * ctx.P.dim + d)});
}

BaseChange base_change_algebroid(const MoritaContext& ctx, const AlgebroidPtr& u) {
    const HopfAlgebroid& U = *u;
    if (!same_algebra(*ctx.R, *U.base))
        throw Error(ErrorKind::ActionMismatch, ctx.name + " and " + U.name + " have different base algebras");
    BaseChange bc;
    bc.ctx = ctx;
    bc.env = enveloping_context(ctx);
    bc.original = u;
    const MoritaContext& c = bc.ctx;
    const Bimodule &Pe = bc.env.P, &Qe = bc.env.Q;
    const AlgebraPtr &Re = bc.env.R, &Se = bc.env.S, &S = c.S;
    const Index dp = c.P.dim, dq = c.Q.dim, du = U.dim(), ds = S->dim();
    const std::string name = "(" + U.name + ")~" + c.name;

    auto prefix = TensorChain::single(Pe.dim)->extend(Pe.right, du, through_eta(U, Re, Side::Left));
    bc.carrier = prefix->extend(prefix->induced_action_on_last_factor(through_eta(U, Re, Side::Right)), Qe.dim,
                                Qe.left, "P^e ⊗ " + U.name + " ⊗ Q^e");
    const ChainPtr& carrier = bc.carrier;
    const Index dt = carrier->dim();
    bc.left_se = carrier->induced_action_on_factor(0, Pe.left);
    bc.right_se = carrier->induced_action_on_last_factor(Qe.right);

    const auto& ifam = c.i_family();  // q_i ⊗ p_i
    const auto& jfam = c.j_family();  // p'_j ⊗ q'_j

    // ũ ṽ = (a1 ⊗ b1°) ⊗ u s(c1 a2) t(b2 d1) v ⊗ (c2 ⊗ d2°)
    auto pairs = TensorChain::single(dt)->extend(bc.right_se, dt, bc.left_se, name + " ⊗_{S^e} " + name);
    Matrix mu = pairs->build_operator(
        dt,
        [&](const std::vector<Index>& t, Accumulator& acc) {
            const auto x = bc.parts(t[0]);
            const auto y = bc.parts(t[1]);
            SparseVec w = U.mul(U.mul(U.mul(basis(x.u), U.s(c.qp_product(x.c, y.a))), U.t(c.qp_product(y.b, x.d))),
                                basis(y.u));
            carrier->add_pure(std::vector<SparseVec>{basis(x.a * dq + x.b), w, basis(y.c * dp + y.d)}, 1, acc);
        },
        name + ": multiplication");

    // η̃(s ⊗ s̃°) = Σ (s p'_j ⊗ q'_i°) ⊗ 1 ⊗ (q'_j ⊗ (s̃ p'_i)°)
    Matrix eta(dt, Se->dim());
    {
        Accumulator acc(dt);
        for (Index s = 0; s < ds; ++s)
            for (Index s2 = 0; s2 < ds; ++s2) {
                for (const auto& tj : jfam)
                    for (const auto& ti : jfam)
                        carrier->add_pure(
                            std::vector<SparseVec>{kron(c.P.left[s].col(tj.left), basis(ti.right), dq), U.one(),
                                                   kron(basis(tj.right), c.P.left[s2].col(ti.left), dp)},
                            tj.coeff * ti.coeff, acc);
                eta.set_col(tensor_index(s, s2, ds), acc.take());
            }
    }

    std::vector<std::string> labels;
    std::vector<SparseVec> products(static_cast<std::size_t>(dt) * static_cast<std::size_t>(dt));
    for (Index k = 0; k < dt; ++k) {
        const auto x = bc.parts(k);
        labels.push_back(joined({c.P.labels[static_cast<std::size_t>(x.a)], c.Q.labels[static_cast<std::size_t>(x.b)],
                                 U.total->label(x.u), c.Q.labels[static_cast<std::size_t>(x.c)],
                                 c.P.labels[static_cast<std::size_t>(x.d)]}));
        for (Index l = 0; l < dt; ++l)
            products[static_cast<std::size_t>(k) * static_cast<std::size_t>(dt) + static_cast<std::size_t>(l)] =
                mu.apply(pairs->pure(std::vector<Index>{k, l}));
    }
    Accumulator unit_acc(dt);
    for (const auto& e : S->unit().entries())
        for (const auto& f : S->unit().entries()) unit_acc.add(eta.col(tensor_index(e.index, f.index, ds)), e.value * f.value);
    AlgebraPtr total = Algebra::make(name, std::move(labels), std::move(products), unit_acc.take());
    HopfAlgebroid h = prepare_algebroid(name, S, total, std::move(eta));

    // Δ̃(ũ) = Σ ((a ⊗ q_i°) ⊗ u_(1) ⊗ (c ⊗ p'_j°)) ⊗_S ((p_i ⊗ b°) ⊗ u_(2) ⊗ (q'_j ⊗ d°))
    const BalancedTensor& ur = h.ur_space();
    h.coproduct = carrier->build_operator(
        ur.dim(),
        [&](const std::vector<Index>& t, Accumulator& acc) {
            const Index a = t[0] / dq, b = t[0] % dq, cc = t[2] / dp, d = t[2] % dp;
            for (const auto& e : U.coproduct.col(t[1]).entries()) {
                auto [u1, u2] = U.ur_lift(e.index);
                for (const auto& ti : ifam)
                    for (const auto& tj : jfam)
                        ur.add_pure(bc.element(a, ti.left, basis(u1), cc, tj.left),
                                    bc.element(ti.right, b, basis(u2), tj.right, d), e.value * ti.coeff * tj.coeff,
                                    acc);
            }
        },
        name + ": coproduct");

    // ε̃(ũ) = a ε(u ◂ (cd)) b
    h.counit = carrier->build_operator(
        ds,
        [&](const std::vector<Index>& t, Accumulator& acc) {
            const Index a = t[0] / dq, b = t[0] % dq, cc = t[2] / dp, d = t[2] % dp;
            SparseVec r = U.eps(U.mul(basis(t[1]), U.s(c.qp_product(cc, d))));
            acc.add(c.pq_product(c.P.right.of(r).col(a), basis(b)), 1);
        },
        name + ": counit");

    // β̃^{-1}(ũ) = Σ ((a ⊗ q'_j°) ⊗ u_+ ⊗ (c ⊗ p_i°)) ⊗_{S^op} ((d ⊗ q_i°) ⊗ u_- ⊗ (b ⊗ p'_j°))
    const BalancedTensor& urop = h.urop_space();
    const Matrix& tr = U.translation_matrix();
    h.translation = carrier->build_operator(
        urop.dim(),
        [&](const std::vector<Index>& t, Accumulator& acc) {
            const Index a = t[0] / dq, b = t[0] % dq, cc = t[2] / dp, d = t[2] % dp;
            for (const auto& e : tr.col(t[1]).entries()) {
                auto [plus, minus] = U.urop_lift(e.index);
                for (const auto& ti : ifam)
                    for (const auto& tj : jfam)
                        urop.add_pure(bc.element(a, tj.right, basis(plus), cc, ti.right),
                                      bc.element(d, ti.left, basis(minus), b, tj.left),
                                      e.value * ti.coeff * tj.coeff, acc);
            }
        },
        name + ": translation");
    bc.result = std::make_shared<const HopfAlgebroid>(std::move(h));
    return bc;
}

Coefficient base_change_coefficient(const BaseChange& bc, const Coefficient& m) {
    const MoritaContext& c = bc.ctx;
    const HopfAlgebroid& Ut = *bc.result;
    const Index dp = c.P.dim, dq = c.Q.dim;
    auto prefix = TensorChain::single(dp)->extend(c.P.right, m.dim, m.blact);
    auto carrier = prefix->extend(prefix->induced_action_on_last_factor(m.bract), dq, c.Q.left,
                                  "P ⊗_R " + m.name + " ⊗_R Q");
    const Index dm = carrier->dim();
    std::vector<std::string> labels;
    for (Index k = 0; k < dm; ++k) {
        const auto& t = carrier->lift(k);
        labels.push_back(joined({c.P.labels[static_cast<std::size_t>(t[0])], m.labels[static_cast<std::size_t>(t[1])],
                                 c.Q.labels[static_cast<std::size_t>(t[2])]}));
    }
    Action left = carrier->induced_action_on_factor(0, c.P.left);

    // m̃ ũ = d ⊗ ((bp) ▸ m ◂ (qa)) u ⊗ c
    Action action{Ut.total, Side::Right, {}};
    for (Index k = 0; k < Ut.dim(); ++k) {
        const auto x = bc.parts(k);
        action.mats.push_back(carrier->build_operator(
            dm,
            [&](const std::vector<Index>& t, Accumulator& acc) {
                SparseVec mid = m.bract.of(c.qp_product(t[2], x.a)).apply(m.blact.of(c.qp_product(x.b, t[0])).col(t[1]));
                carrier->add_pure(std::vector<SparseVec>{basis(x.d), m.action[x.u].apply(mid), basis(x.c)}, 1, acc);
            },
            m.name + "~: action"));
    }
    Coefficient out = prepare_coefficient(m.name + "~", bc.result, std::move(labels), std::move(left), std::move(action));
    out.carrier = carrier;

    // m̃ -> Σ ((p ⊗ q_i°) ⊗ m_(-1) ⊗ (q ⊗ p'_j°)) ⊗_S (p_i ⊗ m_(0) ⊗ q'_j)
    out.coaction = carrier->build_operator(
        out.um->dim(),
        [&](const std::vector<Index>& t, Accumulator& acc) {
            for (const auto& e : m.coaction.col(t[1]).entries()) {
                const auto& l = m.um->lift(e.index);
                for (const auto& ti : c.i_family())
                    for (const auto& tj : c.j_family())
                        out.um->add_pure(std::vector<SparseVec>{bc.element(t[0], ti.left, basis(l[0]), t[2], tj.left),
                                                                carrier->pure(std::vector<Index>{ti.right, l[1], tj.right})},
                                         e.value * ti.coeff * tj.coeff, acc);
            }
        },
        m.name + "~: coaction");
    return out;
}

Matrix enveloping_identification(const BaseChange& bc) {
    const MoritaContext& c = bc.ctx;
    const HopfAlgebroid& U = *bc.original;
    const Index dr = c.R->dim(), ds = c.S->dim();
    if (U.dim() != dr * dr || U.eta.matrix != Matrix::identity(dr * dr))
        throw Error(ErrorKind::ActionMismatch, U.name + " is not an enveloping algebroid");
    const Index dp = c.P.dim, dq = c.Q.dim;
    return bc.carrier->build_operator(
        ds * ds,
        [&](const std::vector<Index>& t, Accumulator& acc) {
            const Index a = t[0] / dq, b = t[0] % dq, cc = t[2] / dp, d = t[2] % dp;
            const Index r = t[1] / dr, r2 = t[1] % dr;
            acc.add(kron(c.pq_product(basis(a), c.Q.left[r].col(cc)), c.pq_product(c.P.right[r2].col(d), basis(b)), ds),
                    1);
        },
        "identification with S^e");
}

Report check_base_change(const BaseChange& bc) {
    const HopfAlgebroid& h = *bc.result;
    Report rep(h.name + ": base change");
    rep.merge(check_left_hopf(h));
    const Index ds = h.base_dim();
    rep.expect_equal("counit of source is the identity", h.counit * h.source, Matrix::identity(ds));
    guarded(rep, "explicit translation inverts the Galois map", [&] {
        HopfAlgebroid bare = h;
        bare.translation.reset();
        rep.expect_equal("explicit translation inverts the Galois map", *translation_from_beta(bare).translation,
                         h.translation_matrix());
    });
    const Index dr = bc.ctx.R->dim();
    if (bc.original->dim() == dr * dr && bc.original->eta.matrix == Matrix::identity(dr * dr)) {
        guarded(rep, "identification with S^e is an algebra isomorphism", [&] {
            Matrix iso = enveloping_identification(bc);
            AlgebraPtr se = enveloping(bc.ctx.S);
            make_algebra_map(h.total, se, iso);
            rep.expect("identification with S^e is an algebra isomorphism",
                       iso.rows() == iso.cols() && rank(iso) == iso.cols(), "not bijective");
            rep.expect_equal("identification with S^e inverts the source map", iso * h.eta.matrix,
                             Matrix::identity(se->dim()));
        });
    }
    return rep;
}

}  // namespace hopfcyc
