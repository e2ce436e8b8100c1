#include "doctest.h"

#include "hopfcyc/config.hpp"

using namespace hopfcyc;

namespace {

const char* kSmall = R"({
  "algebras": {
    "Q": {"builtin": "Q"},
    "T": {"labels": ["1", "y"],
          "products": [[["1", "0"], ["0", "1"]], [["0", "1"], ["0", "0"]]],
          "unit": [1, 0]}
  },
  "contexts": {
    "by_hand": {"explicit": {"R": "Q", "S": "Q",
                "P": {"labels": ["p"], "left": [[["1"]]], "right": [[["1"]]]},
                "Q": {"labels": ["q"], "left": [[["1"]]], "right": [[["1"]]]},
                "phi": [["1"]], "psi": [["1"]]}}
  },
  "algebroids": {
    "Qe": {"enveloping": {"base": "Q"}},
    "Te": {"enveloping": {"base": "T"}}
  },
  "coefficients": {
    "unit": {"canonical_R": {"algebroid": "Qe"}},
    "by_hand": {"explicit": {"algebroid": "Qe", "labels": ["m"], "left": [[["1"]]], "action": [[["1"]]],
                "coaction": [[{"u": 0, "m": 0, "coeff": "1"}]]}},
    "T_unit": {"canonical_R": {"algebroid": "Te"}}
  },
  "jobs": [
    {"verb": "homology", "coefficient": "unit", "cap": 3},
    {"verb": "check-sayd", "coefficient": "by_hand"},
    {"verb": "verify-morita", "context": "by_hand", "algebroid": "Qe", "coefficient": "unit", "cap": 2},
    {"verb": "check-axioms", "algebroid": "Te"},
    {"verb": "homology", "coefficient": "T_unit", "kinds": ["HH"], "cap": 3}
  ]
})";

ErrorKind kind_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error for " << text);
    return ErrorKind::ParseError;
}

std::string message_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("definitions resolve and jobs run") {
    Config cfg = parse_config(kSmall);
    REQUIRE(cfg.jobs.size() == 5);
    CHECK(cfg.algebras.at("T")->dim() == 2);

    JobResult hq = run_job(cfg, cfg.jobs[0]);
    CHECK(hq.pass);
    CHECK(hq.data["tables"][0]["kind"] == "HH");
    CHECK(hq.data["tables"][0]["dims"] == Json::array({1, 0, 0}));
    CHECK(hq.data["tables"][1]["dims"] == Json::array({1, 0, 1}));

    CHECK(run_job(cfg, cfg.jobs[1]).pass);
    CHECK(run_job(cfg, cfg.jobs[2]).pass);
    CHECK(run_job(cfg, cfg.jobs[3]).pass);
    // structure constants of Q[y]/(y^2) entered by hand
    JobResult ht = run_job(cfg, cfg.jobs[4]);
    CHECK(ht.data["tables"].size() == 1);
    CHECK(ht.data["tables"][0]["dims"] == Json::array({2, 1, 1}));
}

TEST_CASE("identical input gives identical output") {
    Config a = parse_config(kSmall), b = parse_config(kSmall);
    for (std::size_t i = 0; i < a.jobs.size(); ++i) {
        CHECK(run_job(a, a.jobs[i]).data.dump() == run_job(b, b.jobs[i]).data.dump());
        CHECK(run_job(a, a.jobs[i]).text == run_job(b, b.jobs[i]).text);
    }
    CHECK(job_file_name(a.jobs[2]) == "job-03-verify-morita.json");
}

TEST_CASE("malformed configs are reported with a position") {
    CHECK(kind_of("{\"jobs\": [}") == ErrorKind::ParseError);
    CHECK(message_of("{\"jobs\": [}").find("byte") != std::string::npos);
    CHECK(kind_of(R"({"jobs": [{"verb": "dance"}]})") == ErrorKind::ParseError);
    CHECK(message_of(R"({"jobs": [{"verb": "dance"}]})").find("/jobs/0/verb") != std::string::npos);
    CHECK(kind_of(R"({"algebras": {"A": {"labels": ["1"], "products": [[["x"]]], "unit": [1]}}, "jobs": []})") ==
          ErrorKind::ParseError);
    CHECK(message_of(R"({"algebras": {"A": {"labels": ["1"], "products": [[["x"]]], "unit": [1]}}, "jobs": []})")
              .find("/algebras/A/products/0/0/0") != std::string::npos);
    CHECK(kind_of(R"({"jobs": [{"verb": "homology", "coefficient": "c", "cap": 0}]})") == ErrorKind::ParseError);
}

TEST_CASE("names must resolve without cycles") {
    CHECK(kind_of(R"({"jobs": [{"verb": "check-axioms", "algebroid": "missing"}]})") == ErrorKind::Unresolved);
    CHECK(kind_of(R"({"algebras": {"A": {"opposite": {"base": "B"}}, "B": {"opposite": {"base": "A"}}}, "jobs": []})") ==
          ErrorKind::Unresolved);
}

TEST_CASE("invalid structure constants are rejected") {
    // e·e = 2e with unit e is not unital
    CHECK(kind_of(R"({"algebras": {"A": {"labels": ["e"], "products": [[["2"]]], "unit": [1]}}, "jobs": []})") ==
          ErrorKind::NotUnital);
}

TEST_CASE("computation errors are recorded, not thrown") {
    Config cfg = parse_config(kSmall);
    const Index saved = size_limit();
    set_size_limit(3);
    JobResult r = run_job(cfg, cfg.jobs[4]);
    set_size_limit(saved);
    CHECK_FALSE(r.pass);
    CHECK(r.data["status"] == "error");
    CHECK(r.data["error"]["kind"] == "SizeLimit");
}

TEST_CASE("a scaled coaction fails the SaYD check on both sides") {
    const char* text = R"({
      "algebras": {"D": {"builtin": "dual_numbers"}},
      "contexts": {"m": {"matrix": {"base": "D", "k": 2}}},
      "algebroids": {"De": {"enveloping": {"base": "D"}}},
      "coefficients": {"bad": {"canonical_R": {"algebroid": "De", "coaction_scale": "2"}}},
      "jobs": [{"verb": "check-sayd", "coefficient": "bad", "context": "m"}]
    })";
    Config cfg = parse_config(text);
    JobResult r = run_job(cfg, cfg.jobs[0]);
    CHECK_FALSE(r.pass);
    bool m_fails = false, mt_fails = false;
    for (const auto& c : r.data["checks"]) {
        const auto n = c["name"].get<std::string>();
        if (!c["pass"].get<bool>() && n.rfind("M/", 0) == 0) m_fails = true;
        if (!c["pass"].get<bool>() && n.rfind("M̃/", 0) == 0) mt_fails = true;
    }
    CHECK(m_fails);
    CHECK(mt_fails);
}

TEST_CASE("negative controls pass when verification fails") {
    const char* text = R"({
      "algebras": {"D": {"builtin": "dual_numbers"}},
      "algebroids": {"De": {"enveloping": {"base": "D"}}},
      "coefficients": {"bad": {"canonical_R": {"algebroid": "De", "coaction_scale": "2"}},
                       "good": {"canonical_R": {"algebroid": "De"}}},
      "jobs": [{"verb": "check-sayd", "coefficient": "bad", "expect": "fail"},
               {"verb": "check-sayd", "coefficient": "good", "expect": "fail"}]
    })";
    Config cfg = parse_config(text);
    JobResult bad = run_job(cfg, cfg.jobs[0]), good = run_job(cfg, cfg.jobs[1]);
    CHECK(bad.pass);
    CHECK(bad.data["status"] == "fail");
    CHECK_FALSE(good.pass);
    CHECK(good.data["status"] == "pass");
}
