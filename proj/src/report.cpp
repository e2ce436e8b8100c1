#include "hopfcyc/report.hpp"

#include <sstream>

namespace hopfcyc {

bool Report::all_pass() const {
    for (const auto& c : checks_)
        if (!c.pass) return false;
    return true;
}

CheckResult& Report::entry(const std::string& name) {
    for (auto& c : checks_)
        if (c.name == name) return c;
    checks_.push_back({name, true, {}});
    return checks_.back();
}

void Report::fail(const std::string& name, const std::string& detail) {
    CheckResult& c = entry(name);
    if (c.pass) {
        c.pass = false;
        c.detail = detail;
    }
}

void Report::expect(const std::string& name, bool ok, const std::string& detail) {
    if (ok)
        entry(name);
    else
        fail(name, detail);
}

void Report::expect_equal(const std::string& name, const SparseVec& lhs, const SparseVec& rhs,
                          const std::string& where) {
    if (lhs == rhs) {
        entry(name);
        return;
    }
    fail(name, where + ": lhs " + describe(lhs) + " rhs " + describe(rhs));
}

Index first_difference(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return 0;
    for (Index j = 0; j < a.cols(); ++j)
        if (a.col(j) != b.col(j)) return j;
    return -1;
}

void Report::expect_equal(const std::string& name, const Matrix& lhs, const Matrix& rhs, const std::string& where) {
    if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) {
        std::ostringstream os;
        os << where << (where.empty() ? "" : ": ") << "shape " << lhs.rows() << "x" << lhs.cols() << " vs " << rhs.rows()
           << "x" << rhs.cols();
        fail(name, os.str());
        return;
    }
    Index j = first_difference(lhs, rhs);
    if (j < 0) {
        entry(name);
        return;
    }
    std::ostringstream os;
    os << where << (where.empty() ? "" : ": ") << "column " << j << " lhs " << describe(lhs.col(j)) << " rhs "
       << describe(rhs.col(j));
    fail(name, os.str());
}

void Report::merge(const Report& other, const std::string& prefix) {
    for (const auto& c : other.checks_) {
        std::string n = prefix.empty() ? c.name : prefix + "/" + c.name;
        if (c.pass)
            entry(n);
        else
            fail(n, c.detail);
    }
}

std::string Report::text() const {
    std::ostringstream os;
    if (!title_.empty()) os << title_ << "\n";
    for (const auto& c : checks_) {
        os << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name;
        if (!c.pass) os << "  -- " << c.detail;
        os << "\n";
    }
    return os.str();
}

}  // namespace hopfcyc
