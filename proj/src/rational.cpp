#include "quiverstab/rational.hpp"

#include <boost/multiprecision/integer.hpp>

#include <cctype>
#include <stdexcept>

namespace quiverstab {

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }
    if (i == text.size()) {
        throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    }
    BigInt value = 0;
    for (; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
            throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
        }
        value = value * 10 + (text[i] - '0');
    }
    return negative ? BigInt(-value) : value;
}

} // namespace

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_integer(text, text));
    }
    BigInt num = parse_integer(text.substr(0, slash), text);
    BigInt den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) {
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    }
    return Rational(num, den);
}

std::string to_string(const Rational& q) {
    const BigInt& num = boost::multiprecision::numerator(q);
    const BigInt& den = boost::multiprecision::denominator(q);
    if (den == 1) {
        return num.str();
    }
    return num.str() + "/" + den.str();
}

std::vector<Rational> parse_rational_list(std::string_view text) {
    std::vector<Rational> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        if (comma == std::string_view::npos) {
            comma = text.size();
        }
        out.push_back(parse_rational(text.substr(start, comma - start)));
        start = comma + 1;
    }
    return out;
}

BigInt lcm(const BigInt& a, const BigInt& b) {
    if (a == 0 || b == 0) {
        return 0;
    }
    BigInt g = boost::multiprecision::gcd(a, b);
    BigInt r = a / g * b;
    return r < 0 ? BigInt(-r) : r;
}

} // namespace quiverstab
