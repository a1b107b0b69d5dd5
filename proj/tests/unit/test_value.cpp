#include <doctest.h>

#include "printers.hpp"

#include "nwaq/automaton.hpp"

using namespace nwaq;

TEST_CASE("value order places the infinities and the silent value around the rationals") {
    const Value neg = Value::neg_infinity(), one = Value::finite(1), half = Value::finite(Rational(1, 2));
    CHECK(neg < half);
    CHECK(half < one);
    CHECK(one < Value::plus_infinity());
    CHECK(Value::plus_infinity() < Value::bottom());
    CHECK_FALSE(one < one);
    CHECK(Value::finite(Rational(2, 4)) == half);
    CHECK_FALSE(Value::plus_infinity() == Value::bottom());
}

TEST_CASE("value strings") {
    CHECK(Value::finite(Rational(-3, 6)).to_string() == "-1/2");
    CHECK(Value::finite(4).to_string() == "4");
    CHECK(Value::neg_infinity().to_string() == "-inf");
    CHECK(Value::plus_infinity().tag_name() == "plus_infinity");
}

TEST_CASE("rational parsing") {
    CHECK(parse_rational("-3") == Rational(-3));
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK(parse_rational("+2/3") == Rational(2, 3));
    CHECK_FALSE(parse_rational("1/0"));
    CHECK_FALSE(parse_rational("1/-2"));
    CHECK_FALSE(parse_rational(""));
    CHECK_FALSE(parse_rational("x"));
    CHECK_FALSE(parse_rational("1.5"));
}

TEST_CASE("thresholds") {
    const Threshold le{Rational(1), false}, lt{Rational(1), true};
    CHECK(le.admits(Value::finite(1)));
    CHECK_FALSE(lt.admits(Value::finite(1)));
    CHECK(lt.admits(Value::finite(Rational(99, 100))));
    CHECK(lt.admits(Value::neg_infinity()));
    CHECK_FALSE(le.admits(Value::plus_infinity()));
    CHECK_FALSE(le.admits(Value::bottom()));
    CHECK(le.to_string() == "<= 1");
}

TEST_CASE("finite value functions") {
    CHECK(finite_value(ValueFn::Sum, {1, -3, 2}) == 0);
    CHECK(finite_value(ValueFn::SumPlus, {1, -3, 2}) == 6);
    CHECK(finite_value(ValueFn::Sum, {}) == 0);
    CHECK_THROWS_AS(finite_value(ValueFn::LimAvg, {1}), PreconditionError);
    CHECK_THROWS_AS(finite_value_sum({INT64_MAX, 1}), OverflowError);
    CHECK_THROWS_AS(checked_abs(INT64_MIN), OverflowError);
}

TEST_CASE("periodic limit average drops silent entries") {
    CHECK(limavg_periodic({5}, {1, std::nullopt, 2}) == Value::finite(Rational(3, 2)));
    CHECK(limavg_periodic({}, {std::nullopt}) == Value::plus_infinity());
}
