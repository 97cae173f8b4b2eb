#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace nlmp {

/// Exact rational number, always kept in lowest terms.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t value);  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t num, std::int64_t den);

    /// Parses "p/q" or an integer. Throws std::invalid_argument on malformed input.
    static Rational parse(std::string_view text);

    std::string str() const;

    bool is_zero() const { return sgn(value_) == 0; }

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator+=(const Rational& other);
    Rational& operator-=(const Rational& other);

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    std::size_t hash() const;

private:
    explicit Rational(mpq_class v);
    mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// (a + b) / 2
Rational midpoint(const Rational& a, const Rational& b);

}  // namespace nlmp

template <>
struct std::hash<nlmp::Rational> {
    std::size_t operator()(const nlmp::Rational& r) const noexcept { return r.hash(); }
};
