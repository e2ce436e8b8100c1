#pragma once

#include <string>
#include <vector>

#include "hopfcyc/linalg.hpp"

namespace hopfcyc {

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string detail;  // first failure only
};

// Named pass/fail entries, in insertion order.  Repeated expectations under
// one name are folded into a single entry that remembers the first failure.
class Report {
public:
    Report() = default;
    explicit Report(std::string title) : title_(std::move(title)) {}

    const std::string& title() const { return title_; }
    const std::vector<CheckResult>& checks() const { return checks_; }
    bool all_pass() const;

    void pass(const std::string& name) { entry(name); }
    void fail(const std::string& name, const std::string& detail);
    void expect(const std::string& name, bool ok, const std::string& detail = {});
    void expect_equal(const std::string& name, const SparseVec& lhs, const SparseVec& rhs, const std::string& where);
    void expect_equal(const std::string& name, const Matrix& lhs, const Matrix& rhs, const std::string& where = {});
    void merge(const Report& other, const std::string& prefix = {});

    std::string text() const;

private:
    CheckResult& entry(const std::string& name);

    std::string title_;
    std::vector<CheckResult> checks_;
};

// First column where two matrices differ, or -1.
Index first_difference(const Matrix& a, const Matrix& b);

}  // namespace hopfcyc
