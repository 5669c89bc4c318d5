#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace ftap {

/// Exact rational scalar. Always held in lowest terms with a positive
/// denominator; zero is 0/1.
class Rational {
public:
    Rational() = default;
    Rational(long long value) : value_(static_cast<signed long>(value)) {}  // NOLINT(google-explicit-constructor)
    Rational(long long numerator, long long denominator);
    explicit Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

    /// Accepts "-3", "2/6" and "0.25". Throws std::invalid_argument on
    /// malformed input or a zero denominator.
    static Rational parse(std::string_view text);

    /// Canonical form: "p/q", or "p" when the denominator is one.
    std::string str() const { return value_.get_str(); }

    const mpq_class& raw() const { return value_; }
    std::string numerator() const { return value_.get_num().get_str(); }
    std::string denominator() const { return value_.get_den().get_str(); }

    int sign() const { return sgn(value_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return value_.get_den() == 1; }

    Rational operator-() const { return Rational(mpq_class(-value_)); }
    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class value_{0};
};

using Vector = std::vector<Rational>;

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// 2^-k for k >= 0.
Rational dyadic(unsigned k);

Rational dot(const Vector& a, const Vector& b);
Rational sum(const Vector& v);

}  // namespace ftap

template <>
struct std::hash<ftap::Rational> {
    std::size_t operator()(const ftap::Rational& r) const noexcept {
        return std::hash<std::string>{}(r.str());
    }
};
