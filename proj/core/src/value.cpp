#include "nwaq/value.hpp"

#include <cctype>

namespace nwaq {

namespace {
int rank(Value::Tag t) {
    switch (t) {
        case Value::Tag::NegInfinity: return 0;
        case Value::Tag::Finite: return 1;
        case Value::Tag::PlusInfinity: return 2;
        case Value::Tag::Bottom: return 3;
    }
    return 3;
}
}  // namespace

bool Value::operator<(const Value& o) const {
    if (tag_ != o.tag_) return rank(tag_) < rank(o.tag_);
    return tag_ == Tag::Finite && value_ < o.value_;
}

std::string Value::tag_name() const {
    switch (tag_) {
        case Tag::Finite: return "finite";
        case Tag::NegInfinity: return "neg_infinity";
        case Tag::PlusInfinity: return "plus_infinity";
        case Tag::Bottom: return "bottom";
    }
    return "bottom";
}

std::string Value::to_string() const {
    switch (tag_) {
        case Tag::Finite: return rational_to_string(value_);
        case Tag::NegInfinity: return "-inf";
        case Tag::PlusInfinity: return "+inf";
        case Tag::Bottom: return "bottom";
    }
    return "bottom";
}

bool Threshold::admits(const Value& v) const {
    switch (v.tag()) {
        case Value::Tag::NegInfinity: return true;
        case Value::Tag::Finite: return strict ? v.rational() < value : v.rational() <= value;
        default: return false;
    }
}

std::string Threshold::to_string() const {
    return (strict ? "< " : "<= ") + rational_to_string(value);
}

std::string rational_to_string(const Rational& r) {
    const BigInt p = boost::multiprecision::numerator(r);
    const BigInt q = boost::multiprecision::denominator(r);
    if (q == 1) return p.str();
    return p.str() + "/" + q.str();
}

std::optional<Rational> parse_rational(const std::string& text) {
    auto is_int = [](const std::string& s) {
        std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    const auto slash = text.find('/');
    std::string num = text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+') return std::nullopt;
    if (num[0] == '+') num.erase(0, 1);
    BigInt p(num), q(den);
    if (q == 0) return std::nullopt;
    return Rational(p, q);
}

Weight finite_value_sum(const std::vector<Weight>& weights) {
    Weight s = 0;
    for (Weight w : weights) s = checked_add(s, w);
    return s;
}

Weight finite_value_sum_plus(const std::vector<Weight>& weights) {
    Weight s = 0;
    for (Weight w : weights) s = checked_add(s, checked_abs(w));
    return s;
}

Value limavg_periodic(const std::vector<MaybeWeight>&, const std::vector<MaybeWeight>& period) {
    BigInt sum = 0;
    std::size_t count = 0;
    for (const auto& v : period) {
        if (!v) continue;
        sum += *v;
        ++count;
    }
    if (count == 0) return Value::plus_infinity();
    return Value::finite(Rational(sum, BigInt(count)));
}

}  // namespace nwaq
