#include "gabornc/rational.hpp"

#include "gabornc/errors.hpp"

#include <charconv>
#include <numeric>

namespace gabornc
{

const char* to_string(ErrorKind kind) noexcept
{
    switch (kind)
    {
    case ErrorKind::size: return "size";
    case ErrorKind::parameter: return "parameter";
    case ErrorKind::shape: return "shape";
    case ErrorKind::numerical: return "numerical";
    case ErrorKind::not_a_frame: return "not_a_frame";
    case ErrorKind::precondition: return "precondition";
    }
    return "unknown";
}

Rational::Rational(std::int64_t num, std::int64_t den)
{
    if (den == 0)
    {
        throw ParameterError("rational with zero denominator");
    }
    if (den < 0)
    {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

namespace
{
std::int64_t parse_int(std::string_view text)
{
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    {
        throw ParameterError("malformed rational component '" + std::string(text) + "'");
    }
    return value;
}
}  // namespace

Rational Rational::parse(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos)
    {
        return Rational(parse_int(text));
    }
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::string Rational::to_string() const
{
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace gabornc
