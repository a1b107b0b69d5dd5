#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace nwaq {

using Weight = std::int64_t;

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A 64-bit weight computation left the representable range.
class OverflowError : public Error {
public:
    OverflowError() : Error("integer overflow in weight arithmetic") {}
};

/// More than the permitted number of slaves were active at once.
class WidthExceeded : public Error {
public:
    explicit WidthExceeded(std::size_t position)
        : Error("width exceeded at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class NondeterministicInput : public Error {
public:
    explicit NondeterministicInput(const std::string& site)
        : Error("nondeterministic input: " + site) {}
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

/// An explicit construction would exceed its state cap.
class CapExceeded : public Error {
public:
    explicit CapExceeded(std::size_t cap)
        : Error("state cap of " + std::to_string(cap) + " exceeded") {}
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

inline Weight checked_add(Weight a, Weight b) {
    Weight r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError();
    return r;
}

inline Weight checked_mul(Weight a, Weight b) {
    Weight r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError();
    return r;
}

inline Weight checked_abs(Weight a) {
    if (a == INT64_MIN) throw OverflowError();
    return a < 0 ? -a : a;
}

}  // namespace nwaq
