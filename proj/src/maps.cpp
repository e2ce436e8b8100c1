#include "hopfcyc/maps.hpp"

#include <functional>
#include <optional>

namespace hopfcyc {

namespace {

SparseVec basis(Index i) { return SparseVec::unit(i); }

std::size_t at(Index i) { return static_cast<std::size_t>(i); }

Scalar sign(Index i) { return (i % 2 == 0) ? Scalar(1) : Scalar(-1); }

// Calls f(idx, coeff) for every idx in {0..|fam|-1}^count, coeff the product
// of the chosen family coefficients.
void for_each_multi(const std::vector<DualTerm>& fam, Index count,
                    const std::function<void(const std::vector<Index>&, const Scalar&)>& f) {
    std::vector<Index> idx(at(count), 0);
    const auto size = static_cast<Index>(fam.size());
    if (size == 0) return;
    while (true) {
        Scalar c(1);
        for (Index i : idx) c *= fam[at(i)].coeff;
        f(idx, c);
        Index k = count - 1;
        while (k >= 0 && ++idx[at(k)] == size) idx[at(k--)] = 0;
        if (k < 0) return;
    }
}

using Factor = std::optional<SparseVec>;
const Factor kNone{};

Factor opt(SparseVec v) { return Factor(std::move(v)); }

// s(x) t(y) u s(z) t(w), leaving out factors given as kNone.
SparseVec sandwich(const HopfAlgebroid& h, const Factor& x, const Factor& y, const SparseVec& u, const Factor& z,
                   const Factor& w) {
    SparseVec out = u;
    if (x || y) {
        SparseVec left = x ? h.s(*x) : h.one();
        if (y) left = h.mul(left, h.t(*y));
        out = h.mul(left, out);
    }
    if (z) out = h.mul(out, h.s(*z));
    if (w) out = h.mul(out, h.t(*w));
    return out;
}

std::string deg(Index n) { return "degree " + std::to_string(n); }

}  // namespace

const char* to_string(Perturbation p) {
    switch (p) {
        case Perturbation::None: return "none";
        case Perturbation::NegateForward: return "negate-forward";
        case Perturbation::NegateBackward: return "negate-backward";
        case Perturbation::FlipHomotopyTerm: return "flip-homotopy-term";
        case Perturbation::SwapDualIndices: return "swap-dual-indices";
    }
    return "?";
}

// ------------------------------------------------------------------ homology

Matrix theta_map(const BaseChange& bc, const Coefficient& m, const Coefficient& mt, const ParaCyclicModule& src,
                 const ParaCyclicModule& tgt, Index n, Perturbation p) {
    (void)m;
    const MoritaContext& c = bc.ctx;
    const auto& fi = c.i_family();
    auto target = tgt.spaces[at(n)];
    const Scalar scale = (p == Perturbation::NegateForward && n == 1) ? Scalar(-1) : Scalar(1);
    auto P = [&](Index i) { return fi[at(i)].right; };
    auto Q = [&](Index i) { return fi[at(i)].left; };
    return src.spaces[at(n)]->build_operator(
        target->dim(),
        [&](const std::vector<Index>& t, Accumulator& acc) {
            if (n == 0) {
                for (const auto& term : fi)
                    target->add_pure(std::vector<SparseVec>{mt.carrier->pure(std::vector<Index>{term.right, t[0], term.left})},
                                     term.coeff * scale, acc);
                return;
            }
            std::vector<SparseVec> out(at(n) + 1);
            for_each_multi(fi, n, [&](const std::vector<Index>& i, const Scalar& ci) {
                for_each_multi(fi, n + 1, [&](const std::vector<Index>& j, const Scalar& cj) {
                    out[0] = mt.carrier->pure(std::vector<Index>{P(i[0]), t[0], Q(j[0])});
                    for (Index k = 1; k < n; ++k)
                        out[at(k)] = bc.element(P(j[at(k - 1)]), Q(i[at(k - 1)]), basis(t[at(k)]), Q(j[at(k)]), P(i[at(k)]));
                    out[at(n)] = bc.element(P(j[at(n - 1)]), Q(i[at(n - 1)]), basis(t[at(n)]), Q(j[at(n)]), P(j[at(n)]));
                    target->add_pure(out, ci * cj * scale, acc);
                });
            });
        },
        "θ in degree " + std::to_string(n));
}

Matrix gamma_map(const BaseChange& bc, const Coefficient& m, const Coefficient& mt, const ParaCyclicModule& src,
                 const ParaCyclicModule& tgt, Index n, Perturbation p) {
    const MoritaContext& c = bc.ctx;
    const HopfAlgebroid& U = *bc.original;
    const auto& fj = c.j_family();
    auto target = tgt.spaces[at(n)];
    const Scalar scale = (p == Perturbation::NegateBackward && n == 1) ? Scalar(-1) : Scalar(1);
    const bool swap = p == Perturbation::SwapDualIndices;
    auto P = [&](Index j) { return fj[at(j)].left; };   // p'_j
    auto Q = [&](Index j) { return fj[at(j)].right; };  // q'_j
    auto qp = [&](Index q, Index pp) { return c.qp_product(q, pp); };
    return src.spaces[at(n)]->build_operator(
        target->dim(),
        [&](const std::vector<Index>& t, Accumulator& acc) {
            const auto& x = mt.carrier->lift(t[0]);
            const Index pp = x[0], mm = x[1], q = x[2];
            if (n == 0) {
                for (const auto& term : fj) {
                    SparseVec v = m.bract.of(qp(q, term.left)).col(mm);
                    v = m.blact.of(qp(term.right, pp)).apply(v);
                    target->add_pure(std::vector<SparseVec>{v}, term.coeff * scale, acc);
                }
                return;
            }
            std::vector<BaseChange::Parts> u;
            for (Index k = 1; k <= n; ++k) u.push_back(bc.parts(t[at(k)]));
            std::vector<SparseVec> out(at(n) + 1);
            for_each_multi(fj, n + 1, [&](const std::vector<Index>& j, const Scalar& cj) {
                out[0] = m.bract.of(qp(q, P(j[0]))).col(mm);
                for (Index k = 1; k <= n; ++k) {
                    const auto& e = u[at(k - 1)];
                    const Index prev_d = k == 1 ? pp : u[at(k - 2)].d;
                    const Index left_j = (swap && k == 1) ? j[1] : j[at(k - 1)];
                    out[at(k)] = sandwich(U, qp(Q(left_j), e.a), qp(e.b, prev_d), basis(e.u), qp(e.c, P(j[at(k)])),
                                          k == n ? opt(qp(Q(j[at(n)]), e.d)) : kNone);
                }
                target->add_pure(out, cj * scale, acc);
            });
        },
        "γ in degree " + std::to_string(n));
}

Matrix homotopy_map(const MoritaContext& ctx, const Coefficient& m, const ParaCyclicModule& c, Index n,
                    Perturbation p) {
    const HopfAlgebroid& U = *m.over;
    const auto& fi = ctx.i_family();
    const auto& fj = ctx.j_family();
    auto target = c.spaces[at(n) + 1];
    auto qp = [&](Index q, Index pp) { return ctx.qp_product(q, pp); };
    return c.spaces[at(n)]->build_operator(
        target->dim(),
        [&](const std::vector<Index>& t, Accumulator& acc) {
            std::vector<SparseVec> out(at(n) + 2);
            for (Index k = 0; k <= n; ++k) {
                Scalar sgn = sign(k + n);
                if (p == Perturbation::FlipHomotopyTerm && n == 1 && k == n) sgn = -sgn;
                for (Index l = k + 1; l <= n; ++l) out[at(l) + 1] = basis(t[at(l)]);
                for_each_multi(fi, k + 1, [&](const std::vector<Index>& i, const Scalar& ci) {
                    for_each_multi(fj, k + 1, [&](const std::vector<Index>& j, const Scalar& cj) {
                        auto qi = [&](Index a) { return fi[at(i[at(a)])].left; };
                        auto pi = [&](Index a) { return fi[at(i[at(a)])].right; };
                        auto pj = [&](Index a) { return fj[at(j[at(a)])].left; };
                        auto qj = [&](Index a) { return fj[at(j[at(a)])].right; };
                        out[0] = m.bract.of(qp(qi(0), pj(0))).col(t[0]);
                        for (Index l = 1; l <= k; ++l)
                            out[at(l)] = sandwich(U, qp(qj(l - 1), pi(l - 1)), kNone, basis(t[at(l)]), qp(qi(l), pj(l)), kNone);
                        out[at(k) + 1] = U.s(qp(qj(k), pi(k)));
                        target->add_pure(out, sgn * ci * cj, acc);
                    });
                });
            }
        },
        "h in degree " + std::to_string(n));
}

// ---------------------------------------------------------------- cohomology

Matrix zeta_map(const BaseChange& bc, const Coefficient& m, const Coefficient& mt, const CocyclicModule& src,
                const CocyclicModule& tgt, Index n, Perturbation p) {
    (void)m;
    const MoritaContext& c = bc.ctx;
    const auto& fi = c.i_family();
    const auto& fj = c.j_family();
    auto target = tgt.spaces[at(n)];
    const Scalar scale = (p == Perturbation::NegateForward && n == 1) ? Scalar(-1) : Scalar(1);
    auto Pi = [&](Index i) { return fi[at(i)].right; };
    auto Qi = [&](Index i) { return fi[at(i)].left; };
    auto Pj = [&](Index j) { return fj[at(j)].left; };
    auto Qj = [&](Index j) { return fj[at(j)].right; };
    return src.spaces[at(n)]->build_operator(
        target->dim(),
        [&](const std::vector<Index>& t, Accumulator& acc) {
            const Index mm = t[at(n)];
            if (n == 0) {
                for (const auto& term : fj)
                    target->add_pure(std::vector<SparseVec>{mt.carrier->pure(std::vector<Index>{term.left, mm, term.right})},
                                     term.coeff * scale, acc);
                return;
            }
            std::vector<SparseVec> out(at(n) + 1);
            for_each_multi(fi, n, [&](const std::vector<Index>& i, const Scalar& ci) {
                for_each_multi(fj, n + 1, [&](const std::vector<Index>& j, const Scalar& cj) {
                    out[0] = bc.element(Pj(j[0]), Qi(i[0]), basis(t[0]), Qj(j[0]), Pj(j[1]));
                    for (Index k = 2; k <= n; ++k)
                        out[at(k - 1)] =
                            bc.element(Pi(i[at(k - 2)]), Qi(i[at(k - 1)]), basis(t[at(k - 1)]), Qj(j[at(k - 1)]), Pj(j[at(k)]));
                    out[at(n)] = mt.carrier->pure(std::vector<Index>{Pi(i[at(n - 1)]), mm, Qj(j[at(n)])});
                    target->add_pure(out, ci * cj * scale, acc);
                });
            });
        },
        "ζ in degree " + std::to_string(n));
}

Matrix xi_map(const BaseChange& bc, const Coefficient& m, const Coefficient& mt, const CocyclicModule& src,
              const CocyclicModule& tgt, Index n, Perturbation p) {
    const MoritaContext& c = bc.ctx;
    const HopfAlgebroid& U = *bc.original;
    const auto& fi = c.i_family();
    auto target = tgt.spaces[at(n)];
    const Scalar scale = (p == Perturbation::NegateBackward && n == 1) ? Scalar(-1) : Scalar(1);
    const bool swap = p == Perturbation::SwapDualIndices;
    auto qp = [&](Index q, Index pp) { return c.qp_product(q, pp); };
    return src.spaces[at(n)]->build_operator(
        target->dim(),
        [&](const std::vector<Index>& t, Accumulator& acc) {
            const auto& x = mt.carrier->lift(t[at(n)]);
            const Index pp = x[0], mm = x[1], q = x[2];
            if (n == 0) {
                for (const auto& term : fi) {
                    SparseVec v = m.bract.of(qp(q, term.right)).col(mm);
                    v = m.left.of(qp(term.left, pp)).apply(v);
                    target->add_pure(std::vector<SparseVec>{v}, term.coeff * scale, acc);
                }
                return;
            }
            std::vector<BaseChange::Parts> u;
            for (Index k = 0; k < n; ++k) u.push_back(bc.parts(t[at(k)]));
            std::vector<SparseVec> out(at(n) + 1);
            for_each_multi(fi, n + 1, [&](const std::vector<Index>& i, const Scalar& ci) {
                auto Qi = [&](Index a) { return fi[at(i[at(a)])].left; };
                auto Pi = [&](Index a) { return fi[at(i[at(a)])].right; };
                for (Index k = 1; k <= n; ++k) {
                    const auto& e = u[at(k - 1)];
                    const Index next_a = k < n ? u[at(k)].a : pp;
                    const Index z_idx = (swap && k == 1 && n >= 1) ? 1 : k - 1;
                    out[at(k - 1)] = sandwich(U, k == 1 ? opt(qp(Qi(0), e.a)) : kNone, qp(e.b, next_a), basis(e.u),
                                              qp(e.c, Pi(z_idx)), qp(Qi(k), e.d));
                }
                out[at(n)] = m.bract.of(qp(q, Pi(n))).col(mm);
                target->add_pure(out, ci * scale, acc);
            });
        },
        "ξ in degree " + std::to_string(n));
}

Matrix cohomotopy_map(const MoritaContext& ctx, const Coefficient& m, const CocyclicModule& c, Index n,
                      Perturbation p) {
    const HopfAlgebroid& U = *m.over;
    const auto& fi = ctx.i_family();
    const auto& fj = ctx.j_family();
    auto target = c.spaces[at(n)];
    auto qp = [&](Index q, Index pp) { return ctx.qp_product(q, pp); };
    // source C^{n+1}: u^0 ... u^n m
    return c.spaces[at(n) + 1]->build_operator(
        target->dim(),
        [&](const std::vector<Index>& t, Accumulator& acc) {
            const Index mm = t[at(n) + 1];
            std::vector<SparseVec> out(at(n) + 1);
            for (Index k = 0; k <= n; ++k) {
                Scalar sgn = sign(k + n);
                if (p == Perturbation::FlipHomotopyTerm && n == 1 && k == n) sgn = -sgn;
                for (Index l = 0; l < n - k; ++l) out[at(l)] = basis(t[at(l)]);
                for_each_multi(fi, k + 1, [&](const std::vector<Index>& i, const Scalar& ci) {
                    for_each_multi(fj, k + 1, [&](const std::vector<Index>& j, const Scalar& cj) {
                        auto qi = [&](Index a) { return fi[at(i[at(a)])].left; };
                        auto pi = [&](Index a) { return fi[at(i[at(a)])].right; };
                        auto pj = [&](Index a) { return fj[at(j[at(a)])].left; };
                        auto qj = [&](Index a) { return fj[at(j[at(a)])].right; };
                        SparseVec e = U.eps(sandwich(U, kNone, kNone, basis(t[at(n - k)]), kNone, qp(qi(0), pj(0))));
                        for (Index l = 1; l <= k; ++l)
                            out[at(n - k + l - 1)] = sandwich(U, kNone, kNone, basis(t[at(n - k + l)]),
                                                              qp(qj(l - 1), pi(l - 1)), qp(qi(l), pj(l)));
                        SparseVec last = m.bract.of(qp(qj(k), pi(k))).col(mm);
                        if (k >= 1)
                            out[at(n - k)] = U.mul(U.s(e), out[at(n - k)]);
                        else
                            last = m.left.of(e).apply(last);
                        out[at(n)] = last;
                        target->add_pure(out, sgn * ci * cj, acc);
                    });
                });
            }
        },
        "cohomology homotopy in degree " + std::to_string(n));
}

// ---------------------------------------------------------------- bundles

HomologyMaps build_homology_maps(const BaseChange& bc, const CoefficientPtr& m, Index cap, Perturbation p,
                                 CoefficientPtr mt) {
    HomologyMaps out;
    out.bc = &bc;
    out.m = m;
    out.mt = mt ? std::move(mt) : std::make_shared<const Coefficient>(base_change_coefficient(bc, *m));
    out.source = build_cyclic_module(out.m, cap);
    out.target = build_cyclic_module(out.mt, cap);
    out.theta.name = "θ";
    out.gamma.name = "γ";
    out.h.name = "h";
    for (Index n = 0; n <= cap; ++n) {
        out.theta.degrees.push_back(theta_map(bc, *out.m, *out.mt, out.source, out.target, n, p));
        out.gamma.degrees.push_back(gamma_map(bc, *out.m, *out.mt, out.target, out.source, n, p));
    }
    for (Index n = 0; n < cap; ++n) out.h.degrees.push_back(homotopy_map(bc.ctx, *out.m, out.source, n, p));
    return out;
}

CohomologyMaps build_cohomology_maps(const BaseChange& bc, const CoefficientPtr& m, Index cap, Perturbation p,
                                     CoefficientPtr mt) {
    CohomologyMaps out;
    out.bc = &bc;
    out.m = m;
    out.mt = mt ? std::move(mt) : std::make_shared<const Coefficient>(base_change_coefficient(bc, *m));
    out.source = build_cocyclic_module(out.m, cap);
    out.target = build_cocyclic_module(out.mt, cap);
    out.zeta.name = "ζ";
    out.xi.name = "ξ";
    out.h.name = "h";
    for (Index n = 0; n <= cap; ++n) {
        out.zeta.degrees.push_back(zeta_map(bc, *out.m, *out.mt, out.source, out.target, n, p));
        out.xi.degrees.push_back(xi_map(bc, *out.m, *out.mt, out.target, out.source, n, p));
    }
    for (Index n = 0; n < cap; ++n) out.h.degrees.push_back(cohomotopy_map(bc.ctx, *out.m, out.source, n, p));
    return out;
}

// ------------------------------------------------------------- verification

Report verify_chain_maps(const HomologyMaps& x) {
    Report rep("chain maps");
    for (Index n = 1; n <= x.source.cap; ++n) {
        rep.expect_equal("θ commutes with b", x.target.b(n) * x.theta.at(n), x.theta.at(n - 1) * x.source.b(n), deg(n));
        rep.expect_equal("γ commutes with b", x.source.b(n) * x.gamma.at(n), x.gamma.at(n - 1) * x.target.b(n), deg(n));
    }
    return rep;
}

Report verify_homotopy(const HomologyMaps& x) {
    Report rep("homotopy");
    for (Index n = 0; n < x.source.cap; ++n) {
        Matrix lhs = x.source.b(n + 1) * x.h.at(n);
        if (n > 0) lhs = lhs + x.h.at(n - 1) * x.source.b(n);
        rep.expect_equal("b h + h b = γθ - id", lhs,
                         x.gamma.at(n) * x.theta.at(n) - Matrix::identity(x.source.dim(n)), deg(n));
    }
    return rep;
}

Report verify_cyclic_compat(const HomologyMaps& x) {
    Report rep("cyclic compatibility");
    for (Index n = 0; n <= x.source.cap; ++n) {
        rep.expect_equal("θ t = t̃ θ", x.theta.at(n) * x.source.t(n), x.target.t(n) * x.theta.at(n), deg(n));
        rep.expect_equal("γ t̃ = t γ", x.gamma.at(n) * x.target.t(n), x.source.t(n) * x.gamma.at(n), deg(n));
    }
    return rep;
}

Report verify_cochain_maps(const CohomologyMaps& x) {
    Report rep("cochain maps");
    for (Index n = 0; n < x.source.cap; ++n) {
        rep.expect_equal("ζ commutes with β", x.target.beta(n) * x.zeta.at(n), x.zeta.at(n + 1) * x.source.beta(n), deg(n));
        rep.expect_equal("ξ commutes with β", x.source.beta(n) * x.xi.at(n), x.xi.at(n + 1) * x.target.beta(n), deg(n));
    }
    return rep;
}

Report verify_cohomotopy(const CohomologyMaps& x) {
    Report rep("cohomology homotopy");
    for (Index n = 0; n < x.source.cap; ++n) {
        Matrix lhs = x.h.at(n) * x.source.beta(n);
        if (n > 0) lhs = lhs + x.source.beta(n - 1) * x.h.at(n - 1);
        rep.expect_equal("h β + β h = ξζ - id", lhs, x.xi.at(n) * x.zeta.at(n) - Matrix::identity(x.source.dim(n)),
                         deg(n));
    }
    return rep;
}

Report verify_cocyclic_compat(const CohomologyMaps& x) {
    Report rep("cocyclic compatibility");
    for (Index n = 0; n <= x.source.cap; ++n) {
        rep.expect_equal("ζ τ = τ̃ ζ", x.zeta.at(n) * x.source.tau(n), x.target.tau(n) * x.zeta.at(n), deg(n));
        rep.expect_equal("ξ τ̃ = τ ξ", x.xi.at(n) * x.target.tau(n), x.source.tau(n) * x.xi.at(n), deg(n));
    }
    return rep;
}

namespace {

std::string dims_text(const std::vector<Index>& d) {
    std::string s = "(";
    for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
    return s + ")";
}

template <class Module>
void compare_tables(Report& rep, const std::string& name, const std::function<HomologyTable(const Module&)>& f,
                    const Module& a, const Module& b, InvarianceTable* out) {
    try {
        HomologyTable ta = f(a), tb = f(b);
        rep.expect(name + " dimensions agree", ta.dims == tb.dims, dims_text(ta.dims) + " vs " + dims_text(tb.dims));
        if (out) {
            out->before.push_back(ta);
            out->after.push_back(tb);
        }
    } catch (const Error& e) {
        rep.fail(name + " dimensions agree", e.what());
    }
}

}  // namespace

Report compare_homology(const ParaCyclicModule& a, const ParaCyclicModule& b, InvarianceTable* out) {
    Report rep("homology invariance");
    compare_tables<ParaCyclicModule>(rep, "HH", hochschild_homology, a, b, out);
    compare_tables<ParaCyclicModule>(rep, "HC", cyclic_homology, a, b, out);
    return rep;
}

Report compare_cohomology(const CocyclicModule& a, const CocyclicModule& b, InvarianceTable* out) {
    Report rep("cohomology invariance");
    compare_tables<CocyclicModule>(rep, "coHH", hochschild_cohomology, a, b, out);
    compare_tables<CocyclicModule>(rep, "coHC", cyclic_cohomology, a, b, out);
    return rep;
}

Report verify_morita(const MoritaContext& ctx, const AlgebroidPtr& u, const CoefficientPtr& m, Index cap,
                     InvarianceTable* table) {
    Report rep("Morita base change of " + u->name + " along " + ctx.name);
    BaseChange bc = base_change_algebroid(ctx, u);
    rep.merge(check_base_change(bc), "base change");
    auto mt = std::make_shared<const Coefficient>(base_change_coefficient(bc, *m));
    rep.merge(check_sayd(*m), "M");
    rep.merge(check_sayd(*mt), "M̃");
    HomologyMaps hm = build_homology_maps(bc, m, cap, Perturbation::None, mt);
    rep.merge(check_cyclic_module(hm.source), "C(U,M)");
    rep.merge(check_cyclic_module(hm.target), "C(Ũ,M̃)");
    for (Index n = 0; n <= cap; ++n)
        rep.expect_equal("closed formula for t̃", tilde_t_explicit(bc, *m, *mt, hm.target, n), hm.target.t(n), deg(n));
    rep.merge(verify_chain_maps(hm));
    rep.merge(verify_homotopy(hm));
    rep.merge(verify_cyclic_compat(hm));
    rep.merge(compare_homology(hm.source, hm.target, table));
    CohomologyMaps cm = build_cohomology_maps(bc, m, cap, Perturbation::None, mt);
    rep.merge(check_cocyclic_module(cm.source), "C^(U,M)");
    rep.merge(check_cocyclic_module(cm.target), "C^(Ũ,M̃)");
    rep.merge(verify_cochain_maps(cm));
    rep.merge(verify_cohomotopy(cm));
    rep.merge(verify_cocyclic_compat(cm));
    rep.merge(compare_cohomology(cm.source, cm.target, table));
    return rep;
}

// ------------------------------------------------------------- bar complex

BarDimensions bar_complex_dimensions(const AlgebraPtr& a, Index top) {
    const Index d = a->dim();
    std::vector<Index> dims;
    for (Index n = 0, x = d; n <= top; ++n, x *= d) {
        check_size(x, "bar complex in degree " + std::to_string(n));
        dims.push_back(x);
    }
    auto digits = [&](Index x, Index n) {
        std::vector<Index> v(at(n) + 1);
        for (Index i = n; i >= 0; --i) {
            v[at(i)] = x % d;
            x /= d;
        }
        return v;
    };
    auto index = [&](const std::vector<Index>& v) {
        Index x = 0;
        for (Index k : v) x = x * d + k;
        return x;
    };
    // a_0 ⊗ ... ⊗ a_n -> Σ_{i<n} (-1)^i ... a_i a_{i+1} ... + (-1)^n a_n a_0 ⊗ ...
    auto b = [&](Index n) {
        if (n == 0) return Matrix(0, d);
        Matrix out(dims[at(n - 1)], dims[at(n)]);
        Accumulator acc(dims[at(n - 1)]);
        for (Index x = 0; x < dims[at(n)]; ++x) {
            auto t = digits(x, n);
            for (Index i = 0; i <= n; ++i) {
                const SparseVec& prod = i < n ? a->product(t[at(i)], t[at(i) + 1]) : a->product(t[at(n)], t[0]);
                std::vector<Index> s = t;
                if (i < n)
                    s.erase(s.begin() + i + 1);
                else
                    s.pop_back();
                const std::size_t slot = i < n ? at(i) : 0;
                for (const auto& e : prod.entries()) {
                    s[slot] = e.index;
                    acc.add(index(s), sign(i) * e.value);
                }
            }
            out.set_col(x, acc.take());
        }
        return out;
    };
    auto t = [&](Index n) {
        Matrix out(dims[at(n)], dims[at(n)]);
        for (Index x = 0; x < dims[at(n)]; ++x) {
            auto v = digits(x, n);
            std::vector<Index> r{v.back()};
            r.insert(r.end(), v.begin(), v.end() - 1);
            out.set_col(x, SparseVec::unit(index(r), sign(n)));
        }
        return out;
    };
    BarDimensions out;
    std::vector<Matrix> bs;
    for (Index n = 0; n <= top; ++n) bs.push_back(b(n));
    for (Index n = 0; n < top; ++n) out.hh.push_back(homology_dim(bs[at(n) + 1], bs[at(n)]));
    std::vector<QuotientSpace> q;
    for (Index n = 0; n <= top; ++n) q.push_back(quotient_by(dims[at(n)], Matrix::identity(dims[at(n)]) - t(n)));
    std::vector<Matrix> bl{Matrix(0, q[0].dim())};
    for (Index n = 1; n <= top; ++n) bl.push_back(descend(bs[at(n)], q[at(n)], q[at(n) - 1]));
    for (Index n = 0; n < top; ++n) out.hc.push_back(homology_dim(bl[at(n) + 1], bl[at(n)]));
    return out;
}

// ----------------------------------------------------- classical reading

namespace {

// M ⊗ A^{⊗n} with M an A-bimodule and a coaction written through A^e.
struct ClassicalSide {
    AlgebraPtr alg;
    Index dm = 0;
    Action left, right;  // r m and m r
    // m -> Σ c (a' ⊗ a''°) ⊗ m_(0), as (a' * dA + a'', m_(0), c)
    std::function<std::vector<std::tuple<Index, Index, Scalar>>(Index)> coaction;

    Index da() const { return alg->dim(); }
    Index dim(Index n) const {
        Index x = dm;
        for (Index i = 0; i < n; ++i) x *= da();
        return x;
    }
    std::vector<Index> split(Index x, Index n) const {
        std::vector<Index> v(at(n) + 1);
        for (Index i = n; i >= 1; --i) {
            v[at(i)] = x % da();
            x /= da();
        }
        v[0] = x;
        return v;
    }
    // Adds c · (m ⊗ a_1 ⊗ ... ⊗ a_n) for vectors in each slot.
    void add(const std::vector<SparseVec>& slots, const Scalar& c, Accumulator& acc) const {
        std::function<void(std::size_t, Index, const Scalar&)> rec = [&](std::size_t k, Index x, const Scalar& cc) {
            if (k == slots.size()) {
                acc.add(x, cc);
                return;
            }
            const Index radix = k == 0 ? 0 : da();
            for (const auto& e : slots[k].entries()) rec(k + 1, x * radix + e.index, cc * e.value);
        };
        rec(0, 0, c);
    }
    template <class F>
    Matrix build(Index n, Index rows, F&& f) const {
        Matrix out(rows, dim(n));
        Accumulator acc(rows);
        for (Index x = 0; x < dim(n); ++x) {
            f(split(x, n), acc);
            out.set_col(x, acc.take());
        }
        return out;
    }
    Matrix face(Index n, Index i) const {
        return build(n, dim(n - 1), [&](const std::vector<Index>& t, Accumulator& acc) {
            std::vector<SparseVec> s;
            for (Index k : t) s.push_back(basis(k));
            if (i == 0) {
                s[0] = left[t[at(n)]].col(t[0]);
                s.pop_back();
            } else if (i == n) {
                s[0] = right[t[1]].col(t[0]);
                s.erase(s.begin() + 1);
            } else {
                const std::size_t k = at(n - i);
                s[k] = alg->product(t[k], t[k + 1]);
                s.erase(s.begin() + static_cast<std::ptrdiff_t>(k) + 1);
            }
            add(s, 1, acc);
        });
    }
    Matrix degeneracy(Index n, Index i) const {
        return build(n, dim(n + 1), [&](const std::vector<Index>& t, Accumulator& acc) {
            std::vector<SparseVec> s;
            for (Index k : t) s.push_back(basis(k));
            s.insert(s.begin() + (n - i + 1), alg->unit());
            add(s, 1, acc);
        });
    }
    // m''_(-1) m_(0) a_1 ⊗ a_2 ⊗ ... ⊗ a_n ⊗ m'_(-1)
    Matrix cyclic(Index n) const {
        return build(n, dim(n), [&](const std::vector<Index>& t, Accumulator& acc) {
            for (const auto& [ue, m0, c] : coaction(t[0])) {
                const Index a1 = ue / da(), a2 = ue % da();
                SparseVec v = left[a2].col(m0);
                std::vector<SparseVec> s;
                if (n == 0) {
                    s.push_back(right.of(basis(a1)).apply(v));
                } else {
                    s.push_back(right.of(basis(t[1])).apply(v));
                    for (Index k = 2; k <= n; ++k) s.push_back(basis(t[at(k)]));
                    s.push_back(basis(a1));
                }
                add(s, c, acc);
            }
        });
    }
};

}  // namespace

Report specialize_classical(const AlgebraPtr& r, Index k, const CoefficientPtr& m, Index cap) {
    const AlgebroidPtr& u = m->over;
    Report rep("classical reading over " + r->name() + " with k = " + std::to_string(k));
    MoritaContext ctx = matrix_context(r, k);
    BaseChange bc = base_change_algebroid(ctx, u);
    const Index dr = r->dim(), ds = ctx.S->dim();
    HomologyMaps x = build_homology_maps(bc, m, cap);
    const Coefficient& mt = *x.mt;
    const Matrix phi = enveloping_identification(bc);

    ClassicalSide rs{r, m->dim, m->blact, m->bract, [&](Index mm) {
                         std::vector<std::tuple<Index, Index, Scalar>> out;
                         for (const auto& e : m->coaction.col(mm).entries()) {
                             const auto& l = m->um->lift(e.index);
                             out.emplace_back(l[0], l[1], e.value);
                         }
                         return out;
                     }};
    ClassicalSide ss{ctx.S, mt.dim, mt.blact, mt.bract, [&](Index mm) {
                         std::vector<std::tuple<Index, Index, Scalar>> out;
                         for (const auto& e : mt.coaction.col(mm).entries()) {
                             const auto& l = mt.um->lift(e.index);
                             for (const auto& f : phi.col(l[0]).entries()) out.emplace_back(f.index, l[1], e.value * f.value);
                         }
                         return out;
                     }};

    // m ⊗ (r_1 ⊗ r̃_1°) ⊗ ... -> r̃_n ... r̃_1 m ⊗ r_1 ⊗ ... ⊗ r_n
    auto K = [&](Index n) {
        return x.source.spaces[at(n)]->build_operator(
            rs.dim(n),
            [&](const std::vector<Index>& t, Accumulator& acc) {
                SparseVec prod = r->unit();
                std::vector<SparseVec> s(at(n) + 1);
                for (Index j = 1; j <= n; ++j) {
                    prod = r->multiply(basis(t[at(j)] % dr), prod);
                    s[at(j)] = basis(t[at(j)] / dr);
                }
                s[0] = m->blact.of(prod).col(t[0]);
                rs.add(s, 1, acc);
            },
            "classical identification in degree " + std::to_string(n));
    };
    auto Kt = [&](Index n) {
        return x.target.spaces[at(n)]->build_operator(
            ss.dim(n),
            [&](const std::vector<Index>& t, Accumulator& acc) {
                std::vector<SparseVec> s(at(n) + 1);
                std::function<void(Index, const SparseVec&, const Scalar&)> rec = [&](Index j, const SparseVec& prod,
                                                                                   const Scalar& c) {
                    if (j > n) {
                        s[0] = mt.blact.of(prod).col(t[0]);
                        ss.add(s, c, acc);
                        return;
                    }
                    for (const auto& e : phi.col(t[at(j)]).entries()) {
                        s[at(j)] = basis(e.index / ds);
                        rec(j + 1, ctx.S->multiply(basis(e.index % ds), prod), c * e.value);
                    }
                };
                rec(1, ctx.S->unit(), Scalar(1));
            },
            "classical identification over S in degree " + std::to_string(n));
    };
    std::vector<Matrix> k_r, k_s;
    for (Index n = 0; n <= cap; ++n) {
        k_r.push_back(K(n));
        k_s.push_back(Kt(n));
        rep.expect("identification over R is bijective",
                   k_r.back().rows() == k_r.back().cols() && rank(k_r.back()) == k_r.back().rows(), deg(n));
        rep.expect("identification over S is bijective",
                   k_s.back().rows() == k_s.back().cols() && rank(k_s.back()) == k_s.back().rows(), deg(n));
    }
    auto kr = [&](Index n) -> const Matrix& { return k_r[at(n)]; };
    auto ks = [&](Index n) -> const Matrix& { return k_s[at(n)]; };

    for (const auto* side : {&rs, &ss}) {
        const bool over_r = side == &rs;
        const ParaCyclicModule& c = over_r ? x.source : x.target;
        auto kk = [&](Index n) -> const Matrix& { return over_r ? kr(n) : ks(n); };
        const std::string tag = over_r ? " over R" : " over S";
        for (Index n = 1; n <= cap; ++n)
            for (Index i = 0; i <= n; ++i)
                rep.expect_equal("faces" + tag, kk(n - 1) * c.d(n, i), side->face(n, i) * kk(n),
                                 deg(n) + ", i=" + std::to_string(i));
        for (Index n = 0; n < cap; ++n)
            for (Index i = 0; i <= n; ++i)
                rep.expect_equal("degeneracies" + tag, kk(n + 1) * c.s(n, i), side->degeneracy(n, i) * kk(n),
                                 deg(n) + ", i=" + std::to_string(i));
        for (Index n = 0; n <= cap; ++n)
            rep.expect_equal("cyclic operator" + tag, kk(n) * c.t(n), side->cyclic(n) * kk(n), deg(n));
    }

    const auto& fi = ctx.i_family();
    const auto& fj = ctx.j_family();
    auto pq = [&](Index p, const SparseVec& q) { return ctx.pq_product(basis(p), q); };
    auto qp = [&](Index q, const SparseVec& p) { return ctx.qp_product(basis(q), p); };
    for (Index n = 0; n <= cap; ++n) {
        // θ: Σ (p_{i0} ⊗ m ⊗ q_{i1}) ⊗ φ(p_{i1} ⊗ r_1 q_{i2}) ⊗ ... ⊗ φ(p_{in} ⊗ r_n q_{i0})
        Matrix theta = rs.build(n, ss.dim(n), [&](const std::vector<Index>& t, Accumulator& acc) {
            for_each_multi(fi, n + 1, [&](const std::vector<Index>& i, const Scalar& ci) {
                auto P = [&](Index a) { return fi[at(i[at(a % (n + 1))])].right; };
                auto Q = [&](Index a) { return fi[at(i[at(a % (n + 1))])].left; };
                std::vector<SparseVec> s{mt.carrier->pure(std::vector<Index>{P(0), t[0], Q(1)})};
                for (Index j = 1; j <= n; ++j) s.push_back(pq(P(j), ctx.Q.left[t[at(j)]].col(Q(j + 1))));
                ss.add(s, ci, acc);
            });
        });
        rep.expect_equal("θ in classical form", ks(n) * x.theta.at(n), theta * kr(n), deg(n));
        // γ: Σ ψ(q'_{j0} p) m ψ(q p'_{j1}) ⊗ ψ(q'_{j1} ⊗ s_1 p'_{j2}) ⊗ ... ⊗ ψ(q'_{jn} ⊗ s_n p'_{j0})
        Matrix gamma = ss.build(n, rs.dim(n), [&](const std::vector<Index>& t, Accumulator& acc) {
            const auto& l = mt.carrier->lift(t[0]);
            for_each_multi(fj, n + 1, [&](const std::vector<Index>& j, const Scalar& cj) {
                auto P = [&](Index a) { return fj[at(j[at(a % (n + 1))])].left; };
                auto Q = [&](Index a) { return fj[at(j[at(a % (n + 1))])].right; };
                SparseVec v = m->bract.of(qp(l[2], basis(P(1)))).col(l[1]);
                v = m->blact.of(qp(Q(0), basis(l[0]))).apply(v);
                std::vector<SparseVec> s{v};
                for (Index a = 1; a <= n; ++a) s.push_back(qp(Q(a), ctx.P.left[t[at(a)]].col(P(a + 1))));
                rs.add(s, cj, acc);
            });
        });
        rep.expect_equal("γ in classical form", kr(n) * x.gamma.at(n), gamma * ks(n), deg(n));
    }
    for (Index n = 0; n < cap; ++n) {
        // h: Σ_k ± (m ψ(q_{i0} p'_{j0})) ⊗ [ψ(q'_{j(l-1)} p_{i(l-1)}) r_l ψ(q_{il} p'_{jl})]_{l<=k}
        //        ⊗ ψ(q'_{jk} p_{ik}) ⊗ r_{k+1} ⊗ ... ⊗ r_n
        Matrix h = rs.build(n, rs.dim(n + 1), [&](const std::vector<Index>& t, Accumulator& acc) {
            for (Index kk = 0; kk <= n; ++kk) {
                for_each_multi(fi, kk + 1, [&](const std::vector<Index>& i, const Scalar& ci) {
                    for_each_multi(fj, kk + 1, [&](const std::vector<Index>& j, const Scalar& cj) {
                        auto qi = [&](Index a) { return fi[at(i[at(a)])].left; };
                        auto pi = [&](Index a) { return fi[at(i[at(a)])].right; };
                        auto pj = [&](Index a) { return fj[at(j[at(a)])].left; };
                        auto qj = [&](Index a) { return fj[at(j[at(a)])].right; };
                        std::vector<SparseVec> s{m->bract.of(qp(qi(0), basis(pj(0)))).col(t[0])};
                        for (Index l = 1; l <= kk; ++l)
                            s.push_back(r->multiply(r->multiply(qp(qj(l - 1), basis(pi(l - 1))), basis(t[at(l)])),
                                                    qp(qi(l), basis(pj(l)))));
                        s.push_back(qp(qj(kk), basis(pi(kk))));
                        for (Index l = kk + 1; l <= n; ++l) s.push_back(basis(t[at(l)]));
                        rs.add(s, sign(n + kk) * ci * cj, acc);
                    });
                });
            }
        });
        rep.expect_equal("h in classical form", kr(n + 1) * x.h.at(n), h * kr(n), deg(n));
    }

    InvarianceTable table;
    rep.merge(compare_homology(x.source, x.target, &table));
    Coefficient unit = enveloping_unit_coefficient(u);
    if (unit.action.mats == m->action.mats && unit.coaction == m->coaction && !table.before.empty()) {
        BarDimensions br = bar_complex_dimensions(r, cap), bs = bar_complex_dimensions(ctx.S, cap);
        const auto& hh = table.before[0].dims;
        rep.expect("HH over R matches the bar complex", hh == br.hh, dims_text(hh) + " vs " + dims_text(br.hh));
        rep.expect("HH over S matches the bar complex", table.after[0].dims == bs.hh,
                   dims_text(table.after[0].dims) + " vs " + dims_text(bs.hh));
        if (table.before.size() > 1) {
            rep.expect("HC over R matches the bar complex", table.before[1].dims == br.hc,
                       dims_text(table.before[1].dims) + " vs " + dims_text(br.hc));
            rep.expect("HC over S matches the bar complex", table.after[1].dims == bs.hc,
                       dims_text(table.after[1].dims) + " vs " + dims_text(bs.hc));
        }
    }
    return rep;
}

}  // namespace hopfcyc
