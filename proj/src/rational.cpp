#include "nlmp/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace nlmp {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

}  // namespace

Rational::Rational(std::int64_t value) : value_(static_cast<long>(value)) {}

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0)
        throw std::invalid_argument("rational with zero denominator");
    value_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    value_.canonicalize();
}

Rational::Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
    std::string_view num = text;
    std::string_view den = "1";
    bool negative = false;
    if (!num.empty() && num.front() == '-') {
        negative = true;
        num.remove_prefix(1);
    }
    if (auto slash = num.find('/'); slash != std::string_view::npos) {
        den = num.substr(slash + 1);
        num = num.substr(0, slash);
    }
    if (!all_digits(num) || !all_digits(den))
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0)
        throw std::invalid_argument("rational with zero denominator '" + std::string(text) + "'");
    if (negative)
        n = -n;
    return Rational(mpq_class(n, d));
}

std::string Rational::str() const { return value_.get_str(10); }

Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.value_ + b.value_)); }
Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.value_ - b.value_)); }
Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.value_ * b.value_)); }
Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero())
        throw std::domain_error("division by zero");
    return Rational(mpq_class(a.value_ / b.value_));
}

Rational& Rational::operator+=(const Rational& other) {
    value_ += other.value_;
    return *this;
}

Rational& Rational::operator-=(const Rational& other) {
    value_ -= other.value_;
    return *this;
}

std::size_t Rational::hash() const {
    const std::size_t h1 = mpz_get_ui(value_.get_num_mpz_t()) ^ (sgn(value_) < 0 ? 0x5bd1e995ULL : 0);
    const std::size_t h2 = mpz_get_ui(value_.get_den_mpz_t());
    return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational midpoint(const Rational& a, const Rational& b) { return (a + b) / Rational(2); }

}  // namespace nlmp
