#ifndef QLINEAR_ERROR_HPP
#define QLINEAR_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qlinear
{

// Base of every error raised by the library.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// A series whose constant coefficient is 0 was used where a unit is required.
class not_a_unit : public error
{
public:
    using error::error;
};

// Square root of a plain power series with a nonzero odd-position coefficient.
class odd_support : public error
{
public:
    using error::error;
};

// Odd-root routine called with an even index.
class even_root : public error
{
public:
    using error::error;
};

// A grid denominator would exceed the configured cap.
class denominator_overflow : public error
{
public:
    using error::error;
};

// Every coefficient within precision is zero, so the series cannot be certified nonzero.
class indistinguishable : public error
{
public:
    using error::error;
};

// An argument is outside the range the routine was configured for.
class out_of_range : public error
{
public:
    using error::error;
};

// Errors from the element text parser. The position is a 0-based byte offset.
class parse_error : public error
{
public:
    parse_error(std::size_t pos, const std::string &msg)
        : error("at column " + std::to_string(pos + 1) + ": " + msg), m_pos(pos)
    {
    }
    std::size_t position() const noexcept
    {
        return m_pos;
    }

private:
    std::size_t m_pos;
};

class syntax_error : public parse_error
{
public:
    syntax_error(std::size_t pos, const std::string &msg) : parse_error(pos, "syntax error: " + msg) {}
};

class non_unit_leading_term : public parse_error
{
public:
    using parse_error::parse_error;
};

class nonpositive_precision : public parse_error
{
public:
    using parse_error::parse_error;
};

class exponent_not_increasing : public parse_error
{
public:
    using parse_error::parse_error;
};

} // namespace qlinear

#endif
