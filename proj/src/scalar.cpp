#include "hopfcyc/scalar.hpp"

#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "hopfcyc/errors.hpp"

namespace hopfcyc {
namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr i128 kMax = std::numeric_limits<std::int64_t>::max();
constexpr i128 kMin = std::numeric_limits<std::int64_t>::min();

bool fits(i128 v) { return v >= kMin && v <= kMax; }

u128 uabs(i128 v) { return v < 0 ? u128(0) - u128(v) : u128(v); }

u128 gcd128(u128 a, u128 b) {
    if ((a >> 64) == 0 && (b >> 64) == 0)
        return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

mpz_class to_mpz(i128 v) {
    bool neg = v < 0;
    u128 u = uabs(v);
    mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

}  // namespace

Scalar::Scalar(long long num, long long den) {
    if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator");
    set_small_reduced(num, den);
}

Scalar::Scalar(const mpq_class& q) { set_big(q); }

void Scalar::set_small_reduced(i128 n, i128 d) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    if (n == 0) {
        num_ = 0;
        den_ = 1;
        big_.reset();
        return;
    }
    u128 g = gcd128(uabs(n), u128(d));
    if (g > 1) {
        n /= i128(g);
        d /= i128(g);
    }
    if (fits(n) && fits(d)) {
        num_ = static_cast<std::int64_t>(n);
        den_ = static_cast<std::int64_t>(d);
        big_.reset();
    } else {
        mpq_class q(to_mpz(n), to_mpz(d));
        q.canonicalize();
        set_big(std::move(q));
    }
}

void Scalar::set_big(mpq_class q) {
    q.canonicalize();
    const mpz_class& n = q.get_num();
    const mpz_class& d = q.get_den();
    if (n.fits_slong_p() && d.fits_slong_p()) {
        num_ = n.get_si();
        den_ = d.get_si();
        big_.reset();
    } else {
        big_ = std::make_unique<mpq_class>(std::move(q));
    }
}

Scalar Scalar::parse(std::string_view text) {
    std::string s(text);
    auto trim = [](std::string& t) {
        auto b = t.find_first_not_of(" \t");
        auto e = t.find_last_not_of(" \t");
        t = b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
    };
    trim(s);
    if (s.empty()) throw Error(ErrorKind::ParseError, "empty rational");
    auto valid_int = [](const std::string& t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i >= t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    auto slash = s.find('/');
    std::string ns = slash == std::string::npos ? s : s.substr(0, slash);
    std::string ds = slash == std::string::npos ? std::string("1") : s.substr(slash + 1);
    trim(ns);
    trim(ds);
    if (!valid_int(ns) || !valid_int(ds))
        throw Error(ErrorKind::ParseError, "malformed rational '" + s + "'");
    if (ns[0] == '+') ns = ns.substr(1);
    if (ds[0] == '+') ds = ds.substr(1);
    mpz_class n(ns, 10), d(ds, 10);
    if (d == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + s + "'");
    Scalar r;
    r.set_big(mpq_class(n, d));
    return r;
}

int Scalar::sign() const {
    if (big_) return sgn(*big_);
    return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0);
}

mpq_class Scalar::to_mpq() const {
    if (big_) return *big_;
    mpq_class q(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
    return q;
}

std::string Scalar::str() const {
    if (big_) return big_->get_str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Scalar Scalar::operator-() const {
    if (!big_ && num_ != std::numeric_limits<std::int64_t>::min()) {
        Scalar r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    return Scalar(mpq_class(-to_mpq()));
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (!big_ && !o.big_) {
        if (den_ == 1 && o.den_ == 1) {
            std::int64_t r;
            if (!__builtin_add_overflow(num_, o.num_, &r)) {
                num_ = r;
                return *this;
            }
            set_small_reduced(i128(num_) + i128(o.num_), 1);
            return *this;
        }
        if (den_ == o.den_) {
            set_small_reduced(i128(num_) + i128(o.num_), den_);
            return *this;
        }
        set_small_reduced(i128(num_) * o.den_ + i128(o.num_) * den_, i128(den_) * o.den_);
        return *this;
    }
    set_big(to_mpq() + o.to_mpq());
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    if (!big_ && !o.big_) {
        if (den_ == 1 && o.den_ == 1) {
            std::int64_t r;
            if (!__builtin_sub_overflow(num_, o.num_, &r)) {
                num_ = r;
                return *this;
            }
            set_small_reduced(i128(num_) - i128(o.num_), 1);
            return *this;
        }
        if (den_ == o.den_) {
            set_small_reduced(i128(num_) - i128(o.num_), den_);
            return *this;
        }
        set_small_reduced(i128(num_) * o.den_ - i128(o.num_) * den_, i128(den_) * o.den_);
        return *this;
    }
    set_big(to_mpq() - o.to_mpq());
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    if (!big_ && !o.big_) {
        if (den_ == 1 && o.den_ == 1) {
            std::int64_t r;
            if (!__builtin_mul_overflow(num_, o.num_, &r)) {
                num_ = r;
                return *this;
            }
            set_small_reduced(i128(num_) * i128(o.num_), 1);
            return *this;
        }
        set_small_reduced(i128(num_) * o.num_, i128(den_) * o.den_);
        return *this;
    }
    set_big(to_mpq() * o.to_mpq());
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.is_zero()) throw Error(ErrorKind::NotInvertible, "division by zero");
    if (!big_ && !o.big_) {
        set_small_reduced(i128(num_) * o.den_, i128(den_) * o.num_);
        return *this;
    }
    set_big(to_mpq() / o.to_mpq());
    return *this;
}

Scalar Scalar::inverse() const { return Scalar(1) / *this; }

bool operator==(const Scalar& a, const Scalar& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // representation is canonical
}

bool operator<(const Scalar& a, const Scalar& b) {
    if (!a.big_ && !b.big_) return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    return a.to_mpq() < b.to_mpq();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace hopfcyc
