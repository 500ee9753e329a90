#ifndef QLINEAR_RATIONAL_HPP
#define QLINEAR_RATIONAL_HPP

#include <cstdint>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include <qlinear/error.hpp>

namespace qlinear
{

// Exact rationals, always reduced with a positive denominator.
using integer = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

inline integer num(const rational &r)
{
    return boost::multiprecision::numerator(r);
}
inline integer den(const rational &r)
{
    return boost::multiprecision::denominator(r);
}

inline bool is_integral(const rational &r)
{
    return den(r) == 1;
}

// Narrowing with a typed error instead of silent wrap-around.
inline std::int64_t to_int64(const integer &n)
{
    if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min()) {
        throw out_of_range("integer " + n.str() + " does not fit in 64 bits");
    }
    return n.convert_to<std::int64_t>();
}
inline std::uint64_t to_uint64(const integer &n)
{
    if (n < 0 || n > std::numeric_limits<std::uint64_t>::max()) {
        throw out_of_range("integer " + n.str() + " does not fit in unsigned 64 bits");
    }
    return n.convert_to<std::uint64_t>();
}

// "n" for integers, "n/d" otherwise.
inline std::string to_string(const rational &r)
{
    if (is_integral(r)) {
        return num(r).str();
    }
    return num(r).str() + "/" + den(r).str();
}

inline rational make_rational(std::int64_t n, std::int64_t d = 1)
{
    return rational(integer(n), integer(d));
}

} // namespace qlinear

#endif
