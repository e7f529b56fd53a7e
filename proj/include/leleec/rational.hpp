#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

// With C++20 operator rewriting, Boost 1.74 resolves `rational == integer`
// to its own reversed free template and recurses forever. Exact non-template
// overloads take precedence.
namespace boost {
#define LELEEC_RATIONAL_EQ(T)                                                                              \
    inline bool operator==(const rational<std::int64_t>& a, T b) { return a == rational<std::int64_t>(b); } \
    inline bool operator==(T b, const rational<std::int64_t>& a) { return a == rational<std::int64_t>(b); } \
    inline bool operator!=(const rational<std::int64_t>& a, T b) { return !(a == b); }                      \
    inline bool operator!=(T b, const rational<std::int64_t>& a) { return !(a == b); }
LELEEC_RATIONAL_EQ(int)
LELEEC_RATIONAL_EQ(long)
LELEEC_RATIONAL_EQ(long long)
#undef LELEEC_RATIONAL_EQ
}  // namespace boost

namespace leleec {

/// Exact cost arithmetic. Stitch weights such as 0.1 are kept as 1/10.
using Rational = boost::rational<std::int64_t>;

/// Parses "3", "-2", "0.125", "1/10". Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

/// Renders a rational as a terminating decimal when possible ("0.1", "9.1",
/// "2"), and as "p/q" otherwise.
std::string format_rational(const Rational& value);

}  // namespace leleec
