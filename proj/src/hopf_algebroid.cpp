#include "hopfcyc/hopf_algebroid.hpp"

#include <functional>

namespace hopfcyc {

namespace {

SparseVec basis(Index i) { return SparseVec::unit(i); }

// Runs one axiom, turning construction errors (e.g. an operator that fails
// to descend) into a failed entry instead of aborting the whole report.
void guarded(Report& rep, const std::string& name, const std::function<void()>& body) {
    try {
        body();
    } catch (const Error& e) {
        rep.fail(name, e.what());
    }
}

}  // namespace

const Matrix& HopfAlgebroid::translation_matrix() const {
    if (!translation) throw Error(ErrorKind::Unresolved, name + ": no translation map");
    return *translation;
}

HopfAlgebroid prepare_algebroid(std::string name, AlgebraPtr base, AlgebraPtr total, Matrix eta) {
    HopfAlgebroid h;
    h.name = std::move(name);
    h.base = base;
    h.total = total;
    h.eta = make_algebra_map(enveloping(base), total, std::move(eta));
    const Index dr = base->dim(), du = total->dim();
    h.source = Matrix(du, dr);
    h.target = Matrix(du, dr);
    Accumulator acc(du);
    for (Index r = 0; r < dr; ++r) {
        for (const auto& e : base->unit().entries()) acc.add(h.eta.image(tensor_index(r, e.index, dr)), e.value);
        h.source.set_col(r, acc.take());
        for (const auto& e : base->unit().entries()) acc.add(h.eta.image(tensor_index(e.index, r, dr)), e.value);
        h.target.set_col(r, acc.take());
    }
    h.lact = {base, Side::Left, {}};
    h.ract = {base, Side::Right, {}};
    h.blact = {base, Side::Left, {}};
    h.bract = {base, Side::Right, {}};
    for (Index r = 0; r < dr; ++r) {
        h.lact.mats.push_back(total->left_mult(h.source.col(r)));
        h.ract.mats.push_back(total->left_mult(h.target.col(r)));
        h.blact.mats.push_back(total->right_mult(h.target.col(r)));
        h.bract.mats.push_back(total->right_mult(h.source.col(r)));
    }
    h.ur = TensorChain::single(du)->extend(h.ract, du, h.lact, h.name + " ⊗_R " + h.name);
    h.urop = TensorChain::single(du)->extend(h.blact.as_opposite(), du, h.ract.as_opposite(),
                                             h.name + " ⊗_Rop " + h.name);
    h.coproduct = Matrix(h.ur->dim(), du);
    h.counit = Matrix(dr, du);
    return h;
}

Matrix galois_beta(const HopfAlgebroid& h) {
    const BalancedTensor& ur = h.ur_space();
    return h.urop->build_operator(
        ur.dim(),
        [&](const std::vector<Index>& t, Accumulator& acc) {
            for (const auto& e : h.coproduct.col(t[0]).entries()) {
                auto [a, b] = h.ur_lift(e.index);
                ur.add_pure(basis(a), h.total->product(b, t[1]), e.value, acc);
            }
        },
        h.name + ": Galois map");
}

HopfAlgebroid translation_from_beta(HopfAlgebroid h) {
    Matrix beta = galois_beta(h);
    if (beta.rows() != beta.cols())
        throw Error(ErrorKind::NotInvertible, h.name + ": Galois map between spaces of different dimension");
    Matrix inv = inverse(beta);
    Matrix tr(h.urop->dim(), h.dim());
    for (Index u = 0; u < h.dim(); ++u) tr.set_col(u, inv.apply(h.ur_space().pure(basis(u), h.one())));
    h.translation = std::move(tr);
    return h;
}

HopfAlgebroid enveloping_hopf_algebroid(const AlgebraPtr& r) {
    AlgebraPtr re = enveloping(r);
    HopfAlgebroid h = prepare_algebroid(re->name(), r, re, Matrix::identity(re->dim()));
    const Index d = r->dim();
    Matrix tr(h.urop->dim(), re->dim());
    for (Index a = 0; a < d; ++a)
        for (Index b = 0; b < d; ++b) {
            Index u = tensor_index(a, b, d);
            h.coproduct.set_col(u, h.ur_space().pure(h.source.col(a), h.target.col(b)));
            h.counit.set_col(u, r->product(a, b));
            tr.set_col(u, h.urop_space().pure(h.source.col(a), h.source.col(b)));
        }
    h.translation = std::move(tr);
    return h;
}

// ------------------------------------------------------------------ checks

Report check_bialgebroid(const HopfAlgebroid& h) {
    Report rep(h.name + ": left bialgebroid axioms");
    const Index du = h.dim(), dr = h.base_dim();
    const BalancedTensor& ur = h.ur_space();
    const AlgebraPtr& U = h.total;
    const AlgebraPtr& R = h.base;
    auto label = [&](Index u) { return U->label(u); };

    rep.pass("eta is an algebra map");

    guarded(rep, "coproduct lands in the Takeuchi product", [&] {
        for (Index r = 0; r < dr; ++r) {
            Matrix lhs = ur.induced_on_left_factor(h.blact[r]) * h.coproduct;
            Matrix rhs = ur.induced_on_right_factor(h.bract[r]) * h.coproduct;
            rep.expect_equal("coproduct lands in the Takeuchi product", lhs, rhs, "r = " + R->label(r));
        }
    });

    guarded(rep, "coassociativity", [&] {
        auto c3 = h.ur->extend(h.ur->induced_action_on_last_factor(h.ract), du, h.lact, "U ⊗_R U ⊗_R U");
        Matrix left = h.ur->build_operator(
            c3->dim(),
            [&](const std::vector<Index>& t, Accumulator& acc) {
                for (const auto& e : h.coproduct.col(t[0]).entries()) {
                    auto [a, b] = h.ur_lift(e.index);
                    c3->add_pure(std::vector<Index>{a, b, t[1]}, e.value, acc);
                }
            },
            "coproduct on the first factor");
        Matrix right = h.ur->build_operator(
            c3->dim(),
            [&](const std::vector<Index>& t, Accumulator& acc) {
                for (const auto& e : h.coproduct.col(t[1]).entries()) {
                    auto [a, b] = h.ur_lift(e.index);
                    c3->add_pure(std::vector<Index>{t[0], a, b}, e.value, acc);
                }
            },
            "coproduct on the second factor");
        rep.expect_equal("coassociativity", left * h.coproduct, right * h.coproduct);
    });

    Accumulator acc(du), acc2(ur.dim());
    for (Index u = 0; u < du; ++u) {
        const SparseVec& cu = h.coproduct.col(u);
        for (const auto& e : cu.entries()) {
            auto [a, b] = h.ur_lift(e.index);
            acc.add(h.mul(h.s(h.eps(basis(a))), basis(b)), e.value);
        }
        rep.expect_equal("counit on the first leg", acc.take(), basis(u), "u = " + label(u));
        for (const auto& e : cu.entries()) {
            auto [a, b] = h.ur_lift(e.index);
            acc.add(h.mul(h.t(h.eps(basis(b))), basis(a)), e.value);
        }
        rep.expect_equal("counit on the second leg", acc.take(), basis(u), "u = " + label(u));
    }

    rep.expect_equal("coproduct is unital", h.coproduct.apply(h.one()), ur.pure(h.one(), h.one()), "u = 1");
    for (Index u = 0; u < du; ++u)
        for (Index v = 0; v < du; ++v) {
            for (const auto& e : h.coproduct.col(u).entries()) {
                auto [a, b] = h.ur_lift(e.index);
                for (const auto& f : h.coproduct.col(v).entries()) {
                    auto [c, d] = h.ur_lift(f.index);
                    ur.add_pure(U->product(a, c), U->product(b, d), e.value * f.value, acc2);
                }
            }
            rep.expect_equal("coproduct is multiplicative", h.coproduct.apply(U->product(u, v)), acc2.take(),
                             "u = " + label(u) + ", v = " + label(v));
        }

    for (Index u = 0; u < du; ++u)
        for (Index r = 0; r < dr; ++r) {
            const SparseVec sr = h.source.col(r), tr = h.target.col(r);
            const std::string where = "u = " + label(u) + ", r = " + R->label(r);
            const SparseVec& cu = h.coproduct.col(u);
            auto expand = [&](const std::function<void(Index, Index, const Scalar&)>& f) {
                for (const auto& e : cu.entries()) {
                    auto [a, b] = h.ur_lift(e.index);
                    f(a, b, e.value);
                }
                return acc2.take();
            };
            rep.expect_equal("coproduct is R^e-linear (source)", h.coproduct.apply(h.mul(sr, basis(u))),
                             expand([&](Index a, Index b, const Scalar& c) {
                                 ur.add_pure(h.mul(sr, basis(a)), basis(b), c, acc2);
                             }),
                             where);
            rep.expect_equal("coproduct is R^e-linear (target)", h.coproduct.apply(h.mul(tr, basis(u))),
                             expand([&](Index a, Index b, const Scalar& c) {
                                 ur.add_pure(basis(a), h.mul(tr, basis(b)), c, acc2);
                             }),
                             where);
            rep.expect_equal("coproduct is linear for the right-multiplication actions (target)",
                             h.coproduct.apply(h.mul(basis(u), tr)),
                             expand([&](Index a, Index b, const Scalar& c) {
                                 ur.add_pure(basis(a), h.mul(basis(b), tr), c, acc2);
                             }),
                             where);
            rep.expect_equal("coproduct is linear for the right-multiplication actions (source)",
                             h.coproduct.apply(h.mul(basis(u), sr)),
                             expand([&](Index a, Index b, const Scalar& c) {
                                 ur.add_pure(h.mul(basis(a), sr), basis(b), c, acc2);
                             }),
                             where);

            const SparseVec eu = h.eps(basis(u));
            rep.expect_equal("counit: eps(r ▹ u) = r eps(u)", h.eps(h.mul(sr, basis(u))), R->multiply(basis(r), eu),
                             where);
            rep.expect_equal("counit: eps(u ◃ r) = eps(u) r", h.eps(h.mul(tr, basis(u))), R->multiply(eu, basis(r)),
                             where);
            rep.expect_equal("counit: eps(u ◂ r) = eps(r ▸ u)", h.eps(h.mul(basis(u), sr)),
                             h.eps(h.mul(basis(u), tr)), where);
        }
    rep.expect_equal("counit is unital", h.eps(h.one()), R->unit(), "u = 1");
    for (Index u = 0; u < du; ++u)
        for (Index v = 0; v < du; ++v) {
            const SparseVec ev = h.eps(basis(v));
            const SparseVec uv = h.eps(U->product(u, v));
            const std::string where = "u = " + label(u) + ", v = " + label(v);
            rep.expect_equal("counit: eps(uv) = eps(u ◂ eps(v))", uv, h.eps(h.mul(basis(u), h.s(ev))), where);
            rep.expect_equal("counit: eps(uv) = eps(eps(v) ▸ u)", uv, h.eps(h.mul(basis(u), h.t(ev))), where);
        }
    return rep;
}

Report check_left_hopf(const HopfAlgebroid& h) {
    Report rep = check_bialgebroid(h);
    Report hop(h.name + ": left Hopf identities");
    const Index du = h.dim(), dr = h.base_dim();
    const BalancedTensor& ur = h.ur_space();
    const BalancedTensor& urop = h.urop_space();
    const AlgebraPtr& U = h.total;
    const AlgebraPtr& R = h.base;
    auto label = [&](Index u) { return U->label(u); };
    if (!h.translation) {
        hop.fail("translation map present", "none given");
        rep.merge(hop);
        return rep;
    }
    const Matrix& T = *h.translation;

    guarded(hop, "Galois map is bijective", [&] {
        Matrix beta = galois_beta(h);
        hop.expect("Galois map is bijective", beta.rows() == beta.cols() && rank(beta) == beta.cols(),
                   "rank " + std::to_string(rank(beta)) + " for " + std::to_string(beta.rows()) + "x" +
                       std::to_string(beta.cols()));
        Matrix ones(ur.dim(), du);
        for (Index u = 0; u < du; ++u) ones.set_col(u, ur.pure(basis(u), h.one()));
        hop.expect_equal("translation inverts the Galois map", beta * T, ones);
    });

    Accumulator aur(ur.dim()), aop(urop.dim()), au(du);
    for (Index u = 0; u < du; ++u) {
        const std::string where = "u = " + label(u);
        for (const auto& e : T.col(u).entries()) {
            auto [a, b] = h.urop_lift(e.index);
            for (const auto& f : h.coproduct.col(a).entries()) {
                auto [a1, a2] = h.ur_lift(f.index);
                ur.add_pure(basis(a1), U->product(a2, b), e.value * f.value, aur);
            }
        }
        hop.expect_equal("u+(1) ⊗ u+(2) u- = u ⊗ 1", aur.take(), ur.pure(basis(u), h.one()), where);

        for (const auto& e : h.coproduct.col(u).entries()) {
            auto [x, y] = h.ur_lift(e.index);
            for (const auto& f : T.col(x).entries()) {
                auto [xp, xm] = h.urop_lift(f.index);
                urop.add_pure(basis(xp), U->product(xm, y), e.value * f.value, aop);
            }
        }
        hop.expect_equal("u(1)+ ⊗ u(1)- u(2) = u ⊗ 1", aop.take(), urop.pure(basis(u), h.one()), where);

        for (const auto& e : T.col(u).entries()) {
            auto [a, b] = h.urop_lift(e.index);
            au.add(U->product(a, b), e.value);
        }
        hop.expect_equal("u+ u- = s(eps(u))", au.take(), h.s(h.eps(basis(u))), where);

        for (const auto& e : T.col(u).entries()) {
            auto [a, b] = h.urop_lift(e.index);
            au.add(h.mul(basis(a), h.t(h.eps(basis(b)))), e.value);
        }
        hop.expect_equal("u+ t(eps(u-)) = u", au.take(), basis(u), where);
    }

    guarded(hop, "translation lands in the Takeuchi product", [&] {
        for (Index r = 0; r < dr; ++r)
            hop.expect_equal("translation lands in the Takeuchi product",
                             urop.induced_on_left_factor(h.ract[r]) * T,
                             urop.induced_on_right_factor(h.blact[r]) * T, "r = " + R->label(r));
    });

    guarded(hop, "u+(1) ⊗ u+(2) ⊗ u- = u(1) ⊗ u(2)+ ⊗ u(2)-", [&] {
        const std::string name = "u+(1) ⊗ u+(2) ⊗ u- = u(1) ⊗ u(2)+ ⊗ u(2)-";
        auto c3 = h.ur->extend(h.ur->induced_action_on_last_factor(h.blact.as_opposite()), du,
                               h.ract.as_opposite(), "U ⊗_R U ⊗_Rop U");
        Accumulator lhs(c3->dim()), rhs(c3->dim());
        for (Index u = 0; u < du; ++u) {
            for (const auto& e : T.col(u).entries()) {
                auto [a, b] = h.urop_lift(e.index);
                for (const auto& f : h.coproduct.col(a).entries()) {
                    auto [a1, a2] = h.ur_lift(f.index);
                    c3->add_pure(std::vector<Index>{a1, a2, b}, e.value * f.value, lhs);
                }
            }
            for (const auto& e : h.coproduct.col(u).entries()) {
                auto [x, y] = h.ur_lift(e.index);
                for (const auto& f : T.col(y).entries()) {
                    auto [yp, ym] = h.urop_lift(f.index);
                    c3->add_pure(std::vector<Index>{x, yp, ym}, e.value * f.value, rhs);
                }
            }
            hop.expect_equal(name, lhs.take(), rhs.take(), "u = " + label(u));
        }
    });

    guarded(hop, "u+ ⊗ u-(1) ⊗ u-(2) = u++ ⊗ u- ⊗ u+-", [&] {
        const std::string name = "u+ ⊗ u-(1) ⊗ u-(2) = u++ ⊗ u- ⊗ u+-";
        Action on_ur{R, Side::Right, {}};
        for (Index r = 0; r < dr; ++r) on_ur.mats.push_back(ur.induced_on_right_factor(h.ract[r]));
        BalancedTensor space(du, ur.dim(), h.blact.as_opposite(), on_ur.as_opposite(), "U ⊗_Rop (U ⊗_R U)");
        Accumulator lhs(space.dim()), rhs(space.dim());
        for (Index u = 0; u < du; ++u) {
            for (const auto& e : T.col(u).entries()) {
                auto [a, b] = h.urop_lift(e.index);
                space.add_pure(basis(a), h.coproduct.col(b), e.value, lhs);
                for (const auto& f : T.col(a).entries()) {
                    auto [ap, am] = h.urop_lift(f.index);
                    space.add_pure(basis(ap), ur.pure(basis(b), basis(am)), e.value * f.value, rhs);
                }
            }
            hop.expect_equal(name, lhs.take(), rhs.take(), "u = " + label(u));
        }
    });

    for (Index u = 0; u < du; ++u)
        for (Index v = 0; v < du; ++v) {
            for (const auto& e : T.col(u).entries()) {
                auto [a, b] = h.urop_lift(e.index);
                for (const auto& f : T.col(v).entries()) {
                    auto [c, d] = h.urop_lift(f.index);
                    urop.add_pure(U->product(a, c), U->product(d, b), e.value * f.value, aop);
                }
            }
            hop.expect_equal("(uv)+ ⊗ (uv)- = u+v+ ⊗ v-u-", T.apply(U->product(u, v)), aop.take(),
                             "u = " + label(u) + ", v = " + label(v));
        }

    for (Index r = 0; r < dr; ++r)
        for (Index r2 = 0; r2 < dr; ++r2) {
            SparseVec st = h.mul(h.source.col(r), h.target.col(r2));
            hop.expect_equal("(s(r)t(r'))+ ⊗ (s(r)t(r'))- = s(r) ⊗ s(r')", T.apply(st),
                             urop.pure(h.source.col(r), h.source.col(r2)),
                             "r = " + R->label(r) + ", r' = " + R->label(r2));
        }

    rep.merge(hop);
    return rep;
}

}  // namespace hopfcyc
