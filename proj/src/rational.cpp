#include "ftap/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace ftap {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

Rational::Rational(long long numerator, long long denominator) {
    if (denominator == 0) throw std::invalid_argument("zero denominator");
    value_ = mpq_class(mpz_class(static_cast<signed long>(numerator)),
                       mpz_class(static_cast<signed long>(denominator)));
    value_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    value_ /= o.value_;
    return *this;
}

Rational Rational::parse(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    mpq_class value;
    if (const auto slash = body.find('/'); slash != std::string_view::npos) {
        const auto num = body.substr(0, slash);
        const auto den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) {
            throw std::invalid_argument("malformed rational \"" + std::string(text) + "\"");
        }
        mpz_class d(std::string(den), 10);
        if (d == 0) throw std::invalid_argument("zero denominator");
        value = mpq_class(mpz_class(std::string(num), 10), d);
    } else if (const auto dot = body.find('.'); dot != std::string_view::npos) {
        const auto whole = body.substr(0, dot);
        const auto frac = body.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
            (!frac.empty() && !all_digits(frac))) {
            throw std::invalid_argument("malformed rational \"" + std::string(text) + "\"");
        }
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        mpz_class digits(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
        value = mpq_class(digits, scale);
    } else {
        if (!all_digits(body)) {
            throw std::invalid_argument("malformed rational \"" + std::string(text) + "\"");
        }
        value = mpq_class(mpz_class(std::string(body), 10));
    }
    if (negative) value = -value;
    return Rational(std::move(value));
}

Rational dyadic(unsigned k) {
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, k);
    return Rational(mpq_class(mpz_class(1), den));
}

Rational dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    mpq_class acc;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i].raw() * b[i].raw();
    return Rational(std::move(acc));
}

Rational sum(const Vector& v) {
    mpq_class acc;
    for (const auto& x : v) acc += x.raw();
    return Rational(std::move(acc));
}

}  // namespace ftap
