#include <pcoh/errors.hpp>
#include <pcoh/rational.hpp>

#include <cctype>

namespace pcoh {

namespace {

bool is_integer_text(std::string_view s)
{
    if (s.empty()) return false;
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) return false;
    for (std::size_t i = start; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

Integer parse_integer(std::string_view s)
{
    if (!is_integer_text(s)) throw StructureError("malformed rational: '" + std::string(s) + "'");
    if (s[0] == '+') s.remove_prefix(1);
    return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));

    Integer num = parse_integer(text.substr(0, slash));
    auto den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+'))
        throw StructureError("denominator must be an unsigned integer: '" + std::string(text) + "'");
    Integer den = parse_integer(den_text);
    if (den == 0) throw StructureError("zero denominator: '" + std::string(text) + "'");
    Integer g = gcd(num, den);
    if (g != 1 && num != 0) throw StructureError("rational not in lowest terms: '" + std::string(text) + "'");
    if (num == 0 && den != 1) throw StructureError("rational not in lowest terms: '" + std::string(text) + "'");
    return Rational(num, den);
}

std::string to_string(const Rational& value)
{
    return value.get_str();
}

bool is_zero(const Vector& v)
{
    for (const auto& x : v)
        if (sgn(x) != 0) return false;
    return true;
}

Vector zero_vector(std::size_t n)
{
    return Vector(n, Rational(0));
}

void axpy(Vector& v, const Rational& c, const Vector& w)
{
    if (sgn(c) == 0) return;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(w[i]) != 0) v[i] += c * w[i];
}

}  // namespace pcoh
