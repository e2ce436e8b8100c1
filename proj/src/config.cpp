#include "hopfcyc/config.hpp"

#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace hopfcyc {

namespace {

std::size_t at(Index i) { return static_cast<std::size_t>(i); }

// Reads definitions out of the parsed document, resolving names on demand.
class Reader {
public:
    Reader(Json root, std::string source) : root_(std::move(root)), source_(std::move(source)) {}

    Config read() {
        if (!root_.is_object()) bad("", "top level must be an object");
        for (const auto& [key, _] : root_.items())
            if (!section_names().count(key)) bad("/" + key, "unknown section");
        for (const char* section : {"algebras", "contexts", "algebroids", "coefficients"}) {
            if (!root_.contains(section)) continue;
            if (!root_[section].is_object()) bad(std::string("/") + section, "must be an object of named definitions");
            for (const auto& [name, _] : root_[section].items()) resolve(section, name, "/" + std::string(section));
        }
        if (!root_.contains("jobs") || !root_["jobs"].is_array()) bad("/jobs", "a list of jobs is required");
        Index k = 0;
        for (const auto& j : root_["jobs"]) {
            ++k;
            cfg_.jobs.push_back(job(j, "/jobs/" + std::to_string(k - 1), k));
        }
        return std::move(cfg_);
    }

private:
    static const std::set<std::string>& section_names() {
        static const std::set<std::string> names{"algebras", "contexts", "algebroids", "coefficients", "jobs"};
        return names;
    }

    [[noreturn]] void bad(const std::string& path, const std::string& msg) const {
        throw Error(ErrorKind::ParseError, source_ + ": " + (path.empty() ? "/" : path) + ": " + msg);
    }

    const Json& field(const Json& obj, const std::string& key, const std::string& path) const {
        if (!obj.is_object() || !obj.contains(key)) bad(path, "missing field \"" + key + "\"");
        return obj[key];
    }
    std::string text(const Json& obj, const std::string& key, const std::string& path) const {
        const Json& v = field(obj, key, path);
        if (!v.is_string()) bad(path + "/" + key, "expected a name");
        return v.get<std::string>();
    }
    Index count(const Json& obj, const std::string& key, const std::string& path, Index min) const {
        const Json& v = field(obj, key, path);
        if (!v.is_number_integer() || v.get<long long>() < min)
            bad(path + "/" + key, "expected an integer >= " + std::to_string(min));
        return static_cast<Index>(v.get<long long>());
    }
    // {"kind": {...}} with exactly one key
    std::pair<std::string, const Json*> variant(const Json& def, const std::string& path) const {
        if (!def.is_object() || def.size() != 1) bad(path, "expected an object with a single kind");
        return {def.begin().key(), &def.begin().value()};
    }

    Scalar scalar(const Json& v, const std::string& path) const {
        if (v.is_number_integer()) return Scalar(v.get<long long>());
        if (v.is_string()) {
            try {
                return Scalar::parse(v.get<std::string>());
            } catch (const Error& e) {
                bad(path, e.what());
            }
        }
        bad(path, "expected a rational as an integer or a \"num/den\" string");
    }
    SparseVec vec(const Json& v, const std::string& path, Index dim) const {
        if (!v.is_array() || static_cast<Index>(v.size()) != dim)
            bad(path, "expected a vector of length " + std::to_string(dim));
        std::vector<Scalar> d;
        for (std::size_t i = 0; i < v.size(); ++i) d.push_back(scalar(v[i], path + "/" + std::to_string(i)));
        return SparseVec::from_dense(d);
    }
    // Row-major square matrix.
    Matrix square(const Json& v, const std::string& path, Index dim) const {
        if (!v.is_array() || static_cast<Index>(v.size()) != dim)
            bad(path, "expected " + std::to_string(dim) + " rows");
        std::vector<SparseVec> rows;
        for (std::size_t i = 0; i < v.size(); ++i) rows.push_back(vec(v[i], path + "/" + std::to_string(i), dim));
        return Matrix::from_columns(dim, std::move(rows)).transpose();
    }
    Action action(const Json& v, const std::string& path, const AlgebraPtr& alg, Side side, Index dim) const {
        if (!v.is_array() || static_cast<Index>(v.size()) != alg->dim())
            bad(path, "expected one matrix per basis element of " + alg->name());
        Action a{alg, side, {}};
        for (std::size_t i = 0; i < v.size(); ++i) a.mats.push_back(square(v[i], path + "/" + std::to_string(i), dim));
        return a;
    }
    std::vector<std::string> labels(const Json& v, const std::string& path) const {
        if (!v.is_array() || v.empty()) bad(path, "expected a non-empty list of labels");
        std::vector<std::string> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_string()) bad(path + "/" + std::to_string(i), "expected a label");
            out.push_back(v[i].get<std::string>());
        }
        return out;
    }

    // Definitions are built on first use; `resolving_` catches cycles.
    void resolve(const std::string& section, const std::string& name, const std::string& from) {
        const std::string key = section + "/" + name;
        if (done_.count(key)) return;
        if (!root_.contains(section) || !root_[section].contains(name))
            throw Error(ErrorKind::Unresolved, source_ + ": " + from + ": no " + singular(section) + " named \"" + name + "\"");
        if (!resolving_.insert(key).second)
            throw Error(ErrorKind::Unresolved, source_ + ": " + from + ": definition of \"" + name + "\" refers to itself");
        const std::string path = "/" + key;
        try {
            const Json& def = root_[section][name];
            if (section == "algebras") cfg_.algebras[name] = algebra(name, def, path);
            if (section == "contexts") cfg_.contexts[name] = context(name, def, path);
            if (section == "algebroids") algebroid(name, def, path);
            if (section == "coefficients") cfg_.coefficients[name] = coefficient(name, def, path);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::Unresolved) throw;
            throw Error(e.kind(), source_ + ": " + path + ": " + e.what());
        }
        resolving_.erase(key);
        done_.insert(key);
    }
    static std::string singular(const std::string& section) {
        if (section == "algebras") return "algebra";
        if (section == "contexts") return "context";
        if (section == "algebroids") return "algebroid";
        return "coefficient";
    }
    AlgebraPtr get_algebra(const Json& obj, const std::string& key, const std::string& path) {
        std::string n = text(obj, key, path);
        resolve("algebras", n, path + "/" + key);
        return cfg_.algebras.at(n);
    }
    std::shared_ptr<const MoritaContext> get_context(const Json& obj, const std::string& key, const std::string& path) {
        std::string n = text(obj, key, path);
        resolve("contexts", n, path + "/" + key);
        return cfg_.contexts.at(n);
    }
    AlgebroidPtr get_algebroid(const Json& obj, const std::string& key, const std::string& path) {
        std::string n = text(obj, key, path);
        resolve("algebroids", n, path + "/" + key);
        return cfg_.algebroids.at(n);
    }
    CoefficientPtr get_coefficient(const Json& obj, const std::string& key, const std::string& path) {
        std::string n = text(obj, key, path);
        resolve("coefficients", n, path + "/" + key);
        return cfg_.coefficients.at(n);
    }

    AlgebraPtr algebra(const std::string& name, const Json& def, const std::string& path) {
        if (def.is_object() && def.contains("labels")) {
            auto lab = labels(def["labels"], path + "/labels");
            const auto d = static_cast<Index>(lab.size());
            const Json& prods = field(def, "products", path);
            if (!prods.is_array() || static_cast<Index>(prods.size()) != d)
                bad(path + "/products", "expected " + std::to_string(d) + " rows of products");
            std::vector<SparseVec> products;
            for (Index i = 0; i < d; ++i) {
                const Json& row = prods[at(i)];
                const std::string rp = path + "/products/" + std::to_string(i);
                if (!row.is_array() || static_cast<Index>(row.size()) != d) bad(rp, "expected " + std::to_string(d) + " products");
                for (Index j = 0; j < d; ++j) products.push_back(vec(row[at(j)], rp + "/" + std::to_string(j), d));
            }
            SparseVec unit = vec(field(def, "unit", path), path + "/unit", d);
            return Algebra::make(name, std::move(lab), std::move(products), std::move(unit));
        }
        auto [kind, arg] = variant(def, path);
        const std::string ap = path + "/" + kind;
        if (kind == "builtin") {
            if (!arg->is_string()) bad(ap, "expected Q, dual_numbers or split_product");
            const auto b = arg->get<std::string>();
            if (b == "Q") return rationals();
            if (b == "dual_numbers") return dual_numbers();
            if (b == "split_product") return split_product();
            bad(ap, "unknown builtin \"" + b + "\"");
        }
        if (kind == "matrix") return matrix_algebra(get_algebra(*arg, "base", ap), count(*arg, "k", ap, 1));
        if (kind == "opposite") return opposite(get_algebra(*arg, "base", ap));
        if (kind == "tensor") return tensor_algebra(get_algebra(*arg, "left", ap), get_algebra(*arg, "right", ap));
        bad(path, "unknown algebra kind \"" + kind + "\"");
    }

    Bimodule bimodule(const std::string& name, const Json& def, const std::string& path, const AlgebraPtr& l,
                      const AlgebraPtr& r) {
        auto lab = labels(field(def, "labels", path), path + "/labels");
        const auto d = static_cast<Index>(lab.size());
        Action left = action(field(def, "left", path), path + "/left", l, Side::Left, d);
        Action right = action(field(def, "right", path), path + "/right", r, Side::Right, d);
        return Bimodule::make(name, std::move(lab), std::move(left), std::move(right));
    }
    Matrix pairing(const Json& v, const std::string& path, Index pairs, const AlgebraPtr& into) const {
        if (!v.is_array() || static_cast<Index>(v.size()) != pairs)
            bad(path, "expected " + std::to_string(pairs) + " values, one per basis pair");
        std::vector<SparseVec> cols;
        for (Index k = 0; k < pairs; ++k) cols.push_back(vec(v[at(k)], path + "/" + std::to_string(k), into->dim()));
        return Matrix::from_columns(into->dim(), std::move(cols));
    }

    std::shared_ptr<const MoritaContext> context(const std::string& name, const Json& def, const std::string& path) {
        auto [kind, arg] = variant(def, path);
        const std::string ap = path + "/" + kind;
        if (kind == "identity") return std::make_shared<const MoritaContext>(identity_context(get_algebra(*arg, "base", ap)));
        if (kind == "matrix")
            return std::make_shared<const MoritaContext>(matrix_context(get_algebra(*arg, "base", ap), count(*arg, "k", ap, 1)));
        if (kind == "explicit") {
            AlgebraPtr R = get_algebra(*arg, "R", ap), S = get_algebra(*arg, "S", ap);
            Bimodule P = bimodule(name + ":P", field(*arg, "P", ap), ap + "/P", S, R);
            Bimodule Q = bimodule(name + ":Q", field(*arg, "Q", ap), ap + "/Q", R, S);
            Matrix phi = pairing(field(*arg, "phi", ap), ap + "/phi", P.dim * Q.dim, S);
            Matrix psi = pairing(field(*arg, "psi", ap), ap + "/psi", Q.dim * P.dim, R);
            return std::make_shared<const MoritaContext>(
                make_morita_context(name, R, S, std::move(P), std::move(Q), std::move(phi), std::move(psi)));
        }
        bad(path, "unknown context kind \"" + kind + "\"");
    }

    void algebroid(const std::string& name, const Json& def, const std::string& path) {
        auto [kind, arg] = variant(def, path);
        const std::string ap = path + "/" + kind;
        if (kind == "enveloping") {
            cfg_.algebroids[name] = std::make_shared<const HopfAlgebroid>(enveloping_hopf_algebroid(get_algebra(*arg, "base", ap)));
            return;
        }
        if (kind == "base_change") {
            auto ctx = get_context(*arg, "context", ap);
            auto u = get_algebroid(*arg, "algebroid", ap);
            if (!same_algebra(*ctx->R, *u->base))
                throw Error(ErrorKind::ActionMismatch, "the context's R is not the base of " + u->name);
            auto bc = std::make_shared<const BaseChange>(base_change_algebroid(*ctx, u));
            cfg_.base_changes[name] = bc;
            cfg_.algebroids[name] = bc->result;
            return;
        }
        bad(path, "unknown algebroid kind \"" + kind + "\"");
    }

    CoefficientPtr coefficient(const std::string& name, const Json& def, const std::string& path) {
        auto [kind, arg] = variant(def, path);
        const std::string ap = path + "/" + kind;
        if (kind == "canonical_R") {
            Coefficient m = enveloping_unit_coefficient(get_algebroid(*arg, "algebroid", ap));
            m.name = name;
            if (arg->contains("coaction_scale"))
                m.coaction = m.coaction.scaled(scalar((*arg)["coaction_scale"], ap + "/coaction_scale"));
            return std::make_shared<const Coefficient>(std::move(m));
        }
        if (kind == "base_change") {
            const std::string un = text(*arg, "algebroid", ap);
            resolve("algebroids", un, ap + "/algebroid");
            if (!cfg_.base_changes.count(un)) bad(ap + "/algebroid", "\"" + un + "\" is not a base-changed algebroid");
            const BaseChange& bc = *cfg_.base_changes.at(un);
            CoefficientPtr m = get_coefficient(*arg, "coefficient", ap);
            if (m->over != bc.original) bad(ap + "/coefficient", "coefficient is not over the algebroid being base-changed");
            Coefficient mt = base_change_coefficient(bc, *m);
            mt.name = name;
            return std::make_shared<const Coefficient>(std::move(mt));
        }
        if (kind == "explicit") {
            AlgebroidPtr u = get_algebroid(*arg, "algebroid", ap);
            auto lab = labels(field(*arg, "labels", ap), ap + "/labels");
            const auto d = static_cast<Index>(lab.size());
            Action left = action(field(*arg, "left", ap), ap + "/left", u->base, Side::Left, d);
            Action act = action(field(*arg, "action", ap), ap + "/action", u->total, Side::Right, d);
            Coefficient m = prepare_coefficient(name, u, std::move(lab), std::move(left), std::move(act));
            const Json& co = field(*arg, "coaction", ap);
            const std::string cp = ap + "/coaction";
            if (!co.is_array() || static_cast<Index>(co.size()) != d)
                bad(cp, "expected one list of terms per basis element");
            std::vector<SparseVec> cols;
            for (Index k = 0; k < d; ++k) {
                const Json& terms = co[at(k)];
                const std::string kp = cp + "/" + std::to_string(k);
                if (!terms.is_array()) bad(kp, "expected a list of {u, m, coeff} terms");
                Accumulator acc(m.um->dim());
                for (std::size_t t = 0; t < terms.size(); ++t) {
                    const std::string tp = kp + "/" + std::to_string(t);
                    const Index ui = count(terms[t], "u", tp, 0), mi = count(terms[t], "m", tp, 0);
                    if (ui >= u->dim() || mi >= d) bad(tp, "basis index out of range");
                    m.um->add_pure(std::vector<Index>{ui, mi}, scalar(field(terms[t], "coeff", tp), tp + "/coeff"), acc);
                }
                cols.push_back(acc.take());
            }
            m.coaction = Matrix::from_columns(m.um->dim(), std::move(cols));
            return std::make_shared<const Coefficient>(std::move(m));
        }
        bad(path, "unknown coefficient kind \"" + kind + "\"");
    }

    JobSpec job(const Json& j, const std::string& path, Index index) {
        JobSpec s;
        s.index = index;
        s.verb = text(j, "verb", path);
        s.args = j;
        if (j.contains("cap")) s.cap = count(j, "cap", path, 1);
        if (j.contains("expect")) {
            const Json& e = j["expect"];
            if (e != "pass" && e != "fail") bad(path + "/expect", "expected \"pass\" or \"fail\"");
            s.expect_fail = e == "fail";
        }
        const auto& verbs = known_verbs();
        if (std::find(verbs.begin(), verbs.end(), s.verb) == verbs.end()) bad(path + "/verb", "unknown verb \"" + s.verb + "\"");
        auto need = [&](const char* section, const char* key) {
            resolve(section, text(j, key, path), path + "/" + key);
        };
        if (s.verb == "check-axioms") need("algebroids", "algebroid");
        if (s.verb == "base-change") {
            need("contexts", "context");
            need("algebroids", "algebroid");
        }
        if (s.verb == "check-sayd" || s.verb == "homology" || s.verb == "cohomology") need("coefficients", "coefficient");
        if (s.verb == "check-sayd" && j.contains("context")) need("contexts", "context");
        if (s.verb == "verify-morita") {
            need("contexts", "context");
            need("algebroids", "algebroid");
            need("coefficients", "coefficient");
        }
        if (s.verb == "classical") {
            need("algebras", "base");
            count(j, "k", path, 1);
            if (j.contains("coefficient")) need("coefficients", "coefficient");
        }
        if (j.contains("kinds")) {
            if (!j["kinds"].is_array()) bad(path + "/kinds", "expected a list");
            for (const auto& k : j["kinds"]) {
                const bool ok = k.is_string() && (s.verb == "homology" ? (k == "HH" || k == "HC")
                                                                      : (k == "coHH" || k == "coHC"));
                if (!ok || (s.verb != "homology" && s.verb != "cohomology")) bad(path + "/kinds", "unsupported kind");
            }
        }
        return s;
    }

    Json root_;
    std::string source_;
    Config cfg_;
    std::set<std::string> done_, resolving_;
};

// ------------------------------------------------------------------ output

Json checks_json(const Report& rep) {
    Json out = Json::array();
    for (const auto& c : rep.checks()) {
        Json e{{"name", c.name}, {"pass", c.pass}};
        if (!c.detail.empty()) e["detail"] = c.detail;
        out.push_back(std::move(e));
    }
    return out;
}

Json table_json(const HomologyTable& t) {
    return Json{{"kind", to_string(t.kind)}, {"dims", t.dims}, {"top_degree", t.top_degree}, {"top_kernel_bound", t.top_bound}};
}

std::string table_text(const HomologyTable& t) {
    std::ostringstream os;
    os << "  " << to_string(t.kind) << " dims:";
    for (Index d : t.dims) os << ' ' << d;
    os << "  (degree " << t.top_degree << ": at most " << t.top_bound << ")\n";
    return os.str();
}

std::vector<std::string> kinds_of(const JobSpec& job, std::vector<std::string> fallback) {
    if (!job.args.contains("kinds")) return fallback;
    std::vector<std::string> out;
    for (const auto& k : job.args["kinds"]) out.push_back(k.get<std::string>());
    return out;
}

Json inputs_of(const JobSpec& job) {
    Json in = Json::object();
    for (const auto& [k, v] : job.args.items())
        if (k != "verb" && k != "cap" && k != "expect") in[k] = v;
    return in;
}

}  // namespace

Config parse_config(const std::string& text, const std::string& source) {
    Json root;
    try {
        root = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::ParseError, source + ": byte " + std::to_string(e.byte) + ": malformed JSON");
    }
    return Reader(std::move(root), source).read();
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, path + ": cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

const std::vector<std::string>& known_verbs() {
    static const std::vector<std::string> verbs{"check-axioms", "base-change", "check-sayd",   "homology",
                                                "cohomology",   "verify-morita", "classical"};
    return verbs;
}

std::string job_file_name(const JobSpec& job) {
    std::string n = std::to_string(job.index);
    if (n.size() < 2) n = "0" + n;
    return "job-" + n + "-" + job.verb + ".json";
}

JobResult run_job(const Config& cfg, const JobSpec& job, std::optional<Index> cap_override) {
    const Index cap = cap_override.value_or(job.cap);
    const Json& a = job.args;
    auto name = [&](const char* key) { return a[key].get<std::string>(); };
    JobResult res;
    res.data = Json{{"job", job.index},
                    {"verb", job.verb},
                    {"inputs", inputs_of(job)},
                    {"cap", cap},
                    {"expect", job.expect_fail ? "fail" : "pass"}};
    std::ostringstream text;
    text << "== job " << job.index << ": " << job.verb << ' ' << inputs_of(job).dump() << " cap " << cap << '\n';
    Report rep(job.verb);
    Json tables = Json::array();
    std::string tables_text;
    auto add_table = [&](const HomologyTable& t) {
        tables.push_back(table_json(t));
        tables_text += table_text(t);
    };
    try {
        if (job.verb == "check-axioms") {
            const auto& u = *cfg.algebroids.at(name("algebroid"));
            res.data["algebroid"] = Json{{"name", u.name}, {"base_dim", u.base_dim()}, {"dim", u.dim()}};
            rep = check_left_hopf(u);
        } else if (job.verb == "base-change") {
            BaseChange bc = base_change_algebroid(*cfg.contexts.at(name("context")), cfg.algebroids.at(name("algebroid")));
            res.data["result"] = Json{{"name", bc.result->name}, {"base_dim", bc.result->base_dim()}, {"dim", bc.result->dim()}};
            rep = check_base_change(bc);
        } else if (job.verb == "check-sayd") {
            const CoefficientPtr& m = cfg.coefficients.at(name("coefficient"));
            rep.merge(check_sayd(*m), "M");
            if (a.contains("context")) {
                BaseChange bc = base_change_algebroid(*cfg.contexts.at(name("context")), m->over);
                rep.merge(check_sayd(base_change_coefficient(bc, *m)), "M̃");
            }
        } else if (job.verb == "homology") {
            ParaCyclicModule c = build_cyclic_module(cfg.coefficients.at(name("coefficient")), cap);
            rep = check_cyclic_module(c);
            for (const auto& k : kinds_of(job, {"HH", "HC"})) {
                try {
                    add_table(k == "HH" ? hochschild_homology(c) : cyclic_homology(c));
                } catch (const Error& e) {
                    rep.fail(k, e.what());
                }
            }
        } else if (job.verb == "cohomology") {
            CocyclicModule c = build_cocyclic_module(cfg.coefficients.at(name("coefficient")), cap);
            rep = check_cocyclic_module(c);
            for (const auto& k : kinds_of(job, {"coHH", "coHC"})) {
                try {
                    add_table(k == "coHH" ? hochschild_cohomology(c) : cyclic_cohomology(c));
                } catch (const Error& e) {
                    rep.fail(k, e.what());
                }
            }
        } else if (job.verb == "verify-morita") {
            InvarianceTable t;
            rep = verify_morita(*cfg.contexts.at(name("context")), cfg.algebroids.at(name("algebroid")),
                                cfg.coefficients.at(name("coefficient")), cap, &t);
            Json inv = Json::array();
            for (std::size_t i = 0; i < t.before.size() && i < t.after.size(); ++i) {
                inv.push_back(Json{{"before", table_json(t.before[i])}, {"after", table_json(t.after[i])}});
                tables_text += "  before" + table_text(t.before[i]).substr(1) + "  after " + table_text(t.after[i]).substr(1);
            }
            res.data["invariance"] = inv;
        } else if (job.verb == "classical") {
            AlgebraPtr r = cfg.algebras.at(name("base"));
            CoefficientPtr m;
            if (a.contains("coefficient")) {
                m = cfg.coefficients.at(name("coefficient"));
            } else {
                m = std::make_shared<const Coefficient>(
                    enveloping_unit_coefficient(std::make_shared<const HopfAlgebroid>(enveloping_hopf_algebroid(r))));
            }
            rep = specialize_classical(r, static_cast<Index>(a["k"].get<long long>()), m, cap);
        }
        res.data["status"] = rep.all_pass() ? "pass" : "fail";
        res.pass = rep.all_pass() != job.expect_fail;
    } catch (const Error& e) {
        res.pass = false;
        res.data["status"] = "error";
        res.data["error"] = Json{{"kind", to_string(e.kind())}, {"message", e.what()}};
        text << "  error: " << e.what() << '\n';
    } catch (const std::exception& e) {
        res.pass = false;
        res.data["status"] = "error";
        res.data["error"] = Json{{"kind", "internal"}, {"message", e.what()}};
        text << "  error: " << e.what() << '\n';
    }
    if (!tables.empty()) res.data["tables"] = tables;
    res.data["checks"] = checks_json(rep);
    if (!rep.checks().empty()) text << rep.text();
    text << tables_text << "result: " << (res.pass ? "PASS" : "FAIL");
    if (job.expect_fail) text << " (negative control, status " << res.data["status"].get<std::string>() << ")";
    text << "\n\n";
    res.text = text.str();
    return res;
}

}  // namespace hopfcyc
