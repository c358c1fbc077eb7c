#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace gabornc
{

/// A rational number p/q kept in lowest terms with q > 0.
class Rational
{
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    /// Accepts "p/q" or an integer literal.
    static Rational parse(std::string_view text);

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }
    double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
    bool is_integer() const noexcept { return den_ == 1; }

    std::string to_string() const;

    friend bool operator==(const Rational&, const Rational&) = default;
    friend bool operator<(const Rational& a, const Rational& b) noexcept
    {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend Rational operator*(const Rational& a, std::int64_t k) { return {a.num_ * k, a.den_}; }

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace gabornc
