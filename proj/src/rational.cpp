#include "leleec/rational.hpp"

#include "leleec/error.hpp"

#include <cctype>
#include <limits>

namespace leleec {

namespace {

std::int64_t parse_digits(std::string_view digits, std::string_view whole) {
    if (digits.empty()) throw ParseError("malformed number '" + std::string(whole) + "'");
    std::int64_t value = 0;
    for (char ch : digits) {
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw ParseError("malformed number '" + std::string(whole) + "'");
        if (value > (std::numeric_limits<std::int64_t>::max() - 9) / 10)
            throw ParseError("number out of range '" + std::string(whole) + "'");
        value = value * 10 + (ch - '0');
    }
    return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const std::string_view whole = text;
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    Rational result;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        const auto num = parse_digits(text.substr(0, slash), whole);
        const auto den = parse_digits(text.substr(slash + 1), whole);
        if (den == 0) throw ParseError("zero denominator in '" + std::string(whole) + "'");
        result = Rational(num, den);
    } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
        const auto int_part = text.substr(0, dot);
        const auto frac_part = text.substr(dot + 1);
        if (frac_part.size() > 17) throw ParseError("too many decimals in '" + std::string(whole) + "'");
        std::int64_t scale = 1;
        for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
        const auto ip = int_part.empty() ? 0 : parse_digits(int_part, whole);
        const auto fp = frac_part.empty() ? 0 : parse_digits(frac_part, whole);
        if (int_part.empty() && frac_part.empty())
            throw ParseError("malformed number '" + std::string(whole) + "'");
        result = Rational(ip) + Rational(fp, scale);
    } else {
        result = Rational(parse_digits(text, whole));
    }
    return negative ? -result : result;
}

std::string format_rational(const Rational& value) {
    std::int64_t num = value.numerator();
    std::int64_t den = value.denominator();
    std::string sign;
    if (num < 0) {
        sign = "-";
        num = -num;
    }
    // Terminating decimal iff the reduced denominator is 2^a 5^b.
    std::int64_t rest = den;
    int twos = 0, fives = 0;
    while (rest % 2 == 0) { rest /= 2; ++twos; }
    while (rest % 5 == 0) { rest /= 5; ++fives; }
    if (rest != 1) return sign + std::to_string(num) + "/" + std::to_string(den);

    const int digits = std::max(twos, fives);
    std::string out = sign + std::to_string(num / den);
    std::int64_t frac = num % den;
    if (digits == 0 || frac == 0) return out;
    out += '.';
    for (int i = 0; i < digits && frac != 0; ++i) {
        frac *= 10;
        out += static_cast<char>('0' + frac / den);
        frac %= den;
    }
    return out;
}

}  // namespace leleec
