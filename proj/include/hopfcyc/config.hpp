#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hopfcyc/maps.hpp"

namespace hopfcyc {

using Json = nlohmann::ordered_json;

struct JobSpec {
    Index index = 0;  // position in the job list, from 1
    std::string verb;
    Json args;        // the job object as written
    Index cap = 3;
    bool expect_fail = false;  // a negative control: passes when verification fails
};

// Named definitions, all resolved eagerly so that jobs only read them.
struct Config {
    std::map<std::string, AlgebraPtr> algebras;
    std::map<std::string, std::shared_ptr<const MoritaContext>> contexts;
    std::map<std::string, AlgebroidPtr> algebroids;
    std::map<std::string, std::shared_ptr<const BaseChange>> base_changes;  // by algebroid name
    std::map<std::string, CoefficientPtr> coefficients;
    std::vector<JobSpec> jobs;
};

// ParseError for malformed JSON (byte offset) or schema violations (JSON
// pointer of the offending value); Unresolved for unknown or cyclic names.
Config parse_config(const std::string& text, const std::string& source = "config");
Config load_config(const std::string& path);

const std::vector<std::string>& known_verbs();

struct JobResult {
    Json data;         // machine-readable, deterministic
    std::string text;  // human-readable section of report.txt
    bool pass = false;
};

// Never throws for computation failures; they are recorded in the result.
JobResult run_job(const Config& cfg, const JobSpec& job, std::optional<Index> cap_override = std::nullopt);

// File name of a job's results, e.g. "job-03-homology.json".
std::string job_file_name(const JobSpec& job);

}  // namespace hopfcyc
