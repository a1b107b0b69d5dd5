#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

#include "nwaq/error.hpp"

namespace nwaq {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Value of a word: a rational, one of the two infinities, or the silent value.
class Value {
public:
    enum class Tag { Finite, NegInfinity, PlusInfinity, Bottom };

    Value() : tag_(Tag::PlusInfinity) {}
    static Value finite(Rational r) { return Value(Tag::Finite, std::move(r)); }
    static Value finite(Weight w) { return Value(Tag::Finite, Rational(w)); }
    static Value neg_infinity() { return Value(Tag::NegInfinity, 0); }
    static Value plus_infinity() { return Value(Tag::PlusInfinity, 0); }
    static Value bottom() { return Value(Tag::Bottom, 0); }

    Tag tag() const { return tag_; }
    bool is_finite() const { return tag_ == Tag::Finite; }
    const Rational& rational() const { return value_; }

    bool operator==(const Value& o) const {
        return tag_ == o.tag_ && (tag_ != Tag::Finite || value_ == o.value_);
    }

    /// Total order NegInfinity < Finite < PlusInfinity < Bottom.
    bool operator<(const Value& o) const;

    std::string tag_name() const;
    std::string to_string() const;

private:
    Value(Tag t, Rational r) : tag_(t), value_(std::move(r)) {}
    Tag tag_;
    Rational value_;
};

/// Threshold λ; strict means "<", otherwise "≤".
struct Threshold {
    Rational value;
    bool strict = false;

    bool admits(const Value& v) const;
    std::string to_string() const;
};

std::string rational_to_string(const Rational& r);

/// Parses "p/q" or an integer.
std::optional<Rational> parse_rational(const std::string& text);

/// An entry of a value sequence; nullopt is the silent value.
using MaybeWeight = std::optional<Weight>;

Weight finite_value_sum(const std::vector<Weight>& weights);
Weight finite_value_sum_plus(const std::vector<Weight>& weights);

/// Limit average of prefix·period^ω after removing silent entries.
Value limavg_periodic(const std::vector<MaybeWeight>& prefix, const std::vector<MaybeWeight>& period);

}  // namespace nwaq
