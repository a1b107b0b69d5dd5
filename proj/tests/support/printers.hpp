#pragma once

#include <doctest.h>

#include "nwaq/automaton.hpp"

namespace doctest {

template <>
struct StringMaker<nwaq::Value> {
    static String convert(const nwaq::Value& v) { return v.to_string().c_str(); }
};

template <>
struct StringMaker<std::optional<nwaq::Value>> {
    static String convert(const std::optional<nwaq::Value>& v) { return v ? v->to_string().c_str() : "none"; }
};

}  // namespace doctest
