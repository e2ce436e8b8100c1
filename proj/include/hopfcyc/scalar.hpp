#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace hopfcyc {

// Exact rational in lowest terms with positive denominator.
// Values that fit in int64 numerator/denominator are kept inline; anything
// larger moves to a GMP rational and moves back as soon as it fits again,
// so the representation of a given value is unique.
class Scalar {
public:
    Scalar() = default;
    Scalar(long long v) : num_(v) {}  // NOLINT(google-explicit-constructor)
    Scalar(long long num, long long den);
    explicit Scalar(const mpq_class& q);

    Scalar(const Scalar& o) : num_(o.num_), den_(o.den_) {
        if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
    }
    Scalar(Scalar&&) noexcept = default;
    Scalar& operator=(const Scalar& o) {
        if (this != &o) {
            num_ = o.num_;
            den_ = o.den_;
            big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
        }
        return *this;
    }
    Scalar& operator=(Scalar&&) noexcept = default;

    // Accepts "n", "-n", "n/d" (d != 0).
    static Scalar parse(std::string_view text);

    bool is_zero() const { return !big_ && num_ == 0; }
    bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
    bool is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }
    int sign() const;

    mpq_class to_mpq() const;
    std::string str() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    friend bool operator<(const Scalar& a, const Scalar& b);

    Scalar inverse() const;

private:
    void set_big(mpq_class q);
    void set_small_reduced(__int128 n, __int128 d);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::unique_ptr<mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace hopfcyc
