// Acceptance run: one PASS/FAIL line per criterion, exit code 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "hopfcyc/config.hpp"

using namespace hopfcyc;

namespace {

// Runtime budgets in seconds; all numeric comparisons are exact.
constexpr double kAxiomBudget = 10;
constexpr double kBaseChangeBudget = 60;
constexpr double kClosedFormBudget = 120;
constexpr double kMapsBudget = 300;
constexpr double kInvarianceBudget = 300;
constexpr double kCohomologyBudget = 300;
constexpr double kOracleBudget = 120;
constexpr double kSaydBudget = 120;
constexpr double kDeterminismBudget = 300;

// Degrees 0..2 need modules up to degree 3 for the homotopy and the tables.
constexpr Index kCap = 3;
// C_3 of the 3 x 3 matrix context has ambient dimension 81^2 · 9 = 59049.
constexpr Index kSizeLimit = 100000;

struct Outcome {
    bool pass = true;
    std::string note;
    void require(bool ok, const std::string& what) {
        if (!ok && pass) note = what;
        pass = pass && ok;
    }
};

AlgebroidPtr env(const AlgebraPtr& r) { return std::make_shared<const HopfAlgebroid>(enveloping_hopf_algebroid(r)); }

struct Case {
    std::string name;
    AlgebraPtr r;
    Index k;
};

const std::vector<Case>& corpus() {
    static const std::vector<Case> cases{
        {"matrix(Q,2)", rationals(), 2}, {"matrix(Q,3)", rationals(), 3}, {"matrix(Q[x]/(x^2),2)", dual_numbers(), 2}};
    return cases;
}

// Everything built once per corpus entry and shared by several criteria.
struct Built {
    AlgebroidPtr u;
    CoefficientPtr m, mt;
    std::unique_ptr<BaseChange> bc;
    std::optional<HomologyMaps> hom;
    std::optional<CohomologyMaps> cohom;
};

std::map<std::string, Built>& cache() {
    static std::map<std::string, Built> c;
    return c;
}

Built& built(const Case& c) {
    auto& b = cache()[c.name];
    if (!b.bc) {
        b.u = env(c.r);
        b.m = std::make_shared<const Coefficient>(enveloping_unit_coefficient(b.u));
        b.bc = std::make_unique<BaseChange>(base_change_algebroid(matrix_context(c.r, c.k), b.u));
        b.mt = std::make_shared<const Coefficient>(base_change_coefficient(*b.bc, *b.m));
    }
    return b;
}

HomologyMaps& homology_maps(const Case& c) {
    Built& b = built(c);
    if (!b.hom) b.hom = build_homology_maps(*b.bc, b.m, kCap, Perturbation::None, b.mt);
    return *b.hom;
}

CohomologyMaps& cohomology_maps(const Case& c) {
    Built& b = built(c);
    if (!b.cohom) b.cohom = build_cohomology_maps(*b.bc, b.m, kCap, Perturbation::None, b.mt);
    return *b.cohom;
}

std::string first_failure(const Report& rep) {
    for (const auto& c : rep.checks())
        if (!c.pass) return rep.title() + ": " + c.name + " (" + c.detail + ")";
    return {};
}

void require_report(Outcome& out, const Report& rep, const std::string& where) {
    out.require(rep.all_pass(), where + ": " + first_failure(rep));
}

std::string dims(const std::vector<Index>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

// ----------------------------------------------------------------- criteria

Outcome axiom_suite() {
    Outcome out;
    for (const auto& r : {rationals(), dual_numbers(), split_product(), matrix_algebra(rationals(), 2)})
        require_report(out, check_left_hopf(*env(r)), r->name());
    return out;
}

Outcome base_change_soundness() {
    Outcome out;
    for (const auto& c : corpus()) require_report(out, check_base_change(*built(c).bc), c.name);
    return out;
}

Outcome closed_form_cyclic_operator() {
    Outcome out;
    for (const auto& c : corpus()) {
        Built& b = built(c);
        ParaCyclicModule tgt = build_cyclic_module(b.mt, 2);
        for (Index n = 0; n <= 2; ++n)
            out.require(tilde_t_explicit(*b.bc, *b.m, *b.mt, tgt, n) == tgt.t(n),
                        c.name + ": closed formula differs in degree " + std::to_string(n));
    }
    return out;
}

Outcome maps_and_homotopy() {
    Outcome out;
    for (const auto& c : corpus()) {
        HomologyMaps& x = homology_maps(c);
        require_report(out, verify_chain_maps(x), c.name);
        require_report(out, verify_homotopy(x), c.name);
        require_report(out, verify_cyclic_compat(x), c.name);
    }
    // each single-sign defect must be caught
    const Case& c = corpus()[2];
    Built& b = built(c);
    HomologyMaps fwd = build_homology_maps(*b.bc, b.m, kCap, Perturbation::NegateForward, b.mt);
    out.require(!verify_chain_maps(fwd).all_pass(), "negated θ not detected");
    HomologyMaps bwd = build_homology_maps(*b.bc, b.m, kCap, Perturbation::NegateBackward, b.mt);
    out.require(!verify_chain_maps(bwd).all_pass(), "negated γ not detected");
    HomologyMaps hom = build_homology_maps(*b.bc, b.m, kCap, Perturbation::FlipHomotopyTerm, b.mt);
    out.require(!verify_homotopy(hom).all_pass(), "flipped homotopy term not detected");
    return out;
}

Outcome homology_invariance() {
    Outcome out;
    for (const auto& c : corpus()) {
        HomologyMaps& x = homology_maps(c);
        InvarianceTable t;
        require_report(out, compare_homology(x.source, x.target, &t), c.name);
        for (std::size_t i = 0; i < t.before.size(); ++i) {
            out.require(t.before[i].dims.size() == 3, c.name + ": expected degrees 0..2");
            out.require(t.before[i].dims == t.after[i].dims,
                        c.name + ": " + to_string(t.before[i].kind) + " " + dims(t.before[i].dims) + " vs " +
                            dims(t.after[i].dims));
        }
        out.require(t.before.size() == 2, c.name + ": HH and HC expected");
    }
    return out;
}

Outcome cohomology_invariance() {
    Outcome out;
    for (const auto& c : {corpus()[0], corpus()[2]}) {
        CohomologyMaps& x = cohomology_maps(c);
        require_report(out, verify_cochain_maps(x), c.name);
        require_report(out, verify_cohomotopy(x), c.name);
        require_report(out, verify_cocyclic_compat(x), c.name);
        InvarianceTable t;
        require_report(out, compare_cohomology(x.source, x.target, &t), c.name);
        out.require(t.before.size() == 2, c.name + ": coHH and coHC expected");
        for (std::size_t i = 0; i < t.before.size(); ++i)
            out.require(t.before[i].dims == t.after[i].dims, c.name + ": " + to_string(t.before[i].kind));
    }
    return out;
}

Outcome classical_dimensions() {
    Outcome out;
    struct Expect {
        AlgebraPtr r;
        std::vector<Index> hh, hc;  // empty: not asserted
    };
    const std::vector<Expect> table{{dual_numbers(), {2, 1, 1}, {}},
                                    {matrix_algebra(rationals(), 2), {1, 0, 0}, {}},
                                    {rationals(), {}, {1, 0, 1}}};
    for (const auto& e : table) {
        BarDimensions bar = bar_complex_dimensions(e.r, 3);
        ParaCyclicModule c = build_cyclic_module(std::make_shared<const Coefficient>(enveloping_unit_coefficient(env(e.r))), 3);
        const auto hh = hochschild_homology(c).dims, hc = cyclic_homology(c).dims;
        if (!e.hh.empty()) out.require(bar.hh == e.hh, e.r->name() + ": bar HH " + dims(bar.hh));
        if (!e.hc.empty()) out.require(bar.hc == e.hc, e.r->name() + ": bar HC " + dims(bar.hc));
        out.require(hh == bar.hh, e.r->name() + ": pipeline HH " + dims(hh) + " vs bar " + dims(bar.hh));
        out.require(hc == bar.hc, e.r->name() + ": pipeline HC " + dims(hc) + " vs bar " + dims(bar.hc));
    }
    return out;
}

Outcome sayd_transfer() {
    Outcome out;
    for (const auto& c : corpus()) {
        Built& b = built(c);
        require_report(out, check_sayd(*b.m), c.name + " M");
        require_report(out, check_sayd(*b.mt), c.name + " M̃");
        Coefficient bad = *b.m;
        bad.coaction = bad.coaction.scaled(Scalar(2));
        Coefficient bad_t = base_change_coefficient(*b.bc, bad);
        out.require(!check_sayd(bad).all_pass(), c.name + ": scaled coaction accepted on M");
        out.require(!check_sayd(bad_t).all_pass(), c.name + ": scaled coaction accepted on M̃");
    }
    return out;
}

Outcome determinism(const std::string& config_path) {
    Outcome out;
    auto run_all = [&] {
        Config cfg = load_config(config_path);
        std::string bytes;
        for (const auto& j : cfg.jobs) {
            JobResult r = run_job(cfg, j);
            bytes += job_file_name(j) + "\n" + r.data.dump(2) + "\n" + r.text;
        }
        return bytes;
    };
    const std::string a = run_all(), b = run_all();
    out.require(!a.empty(), "no output");
    out.require(a == b, "outputs differ between runs");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string config = argc > 1 ? argv[1] : HOPFCYC_CORPUS;
    set_size_limit(kSizeLimit);
    struct Criterion {
        int id;
        const char* what;
        double budget;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "bialgebroid and left Hopf axioms of R^e", kAxiomBudget, axiom_suite},
        {2, "base-changed algebroid is left Hopf and isomorphic to S^e", kBaseChangeBudget, base_change_soundness},
        {3, "closed formula for the transported cyclic operator", kClosedFormBudget, closed_form_cyclic_operator},
        {4, "chain maps, homotopy, cyclic compatibility, sign controls", kMapsBudget, maps_and_homotopy},
        {5, "HH and HC dimensions preserved by base change", kInvarianceBudget, homology_invariance},
        {6, "cohomology maps, homotopy and dimensions", kCohomologyBudget, cohomology_invariance},
        {7, "bar-complex oracle against the pipeline", kOracleBudget, classical_dimensions},
        {8, "SaYD condition transfers, scaled coaction fails", kSaydBudget, sayd_transfer},
        {9, "byte-identical results across runs", kDeterminismBudget, [&] { return determinism(config); }},
    };
    bool all = true;
    const auto start = std::chrono::steady_clock::now();
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.note = e.what();
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (s >= c.budget) o.require(false, "over the time budget");
        all = all && o.pass;
        std::printf("criterion %d %s  %s  [%.2f s of %.0f s]%s%s\n", c.id, o.pass ? "PASS" : "FAIL", c.what, s, c.budget,
                    o.note.empty() ? "" : "  -- ", o.note.c_str());
        std::fflush(stdout);
    }
    std::printf("total %.2f s\n", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    return all ? 0 : 1;
}
