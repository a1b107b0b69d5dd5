#include "nwaq/format.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

namespace nwaq {

namespace {

struct Token {
    std::string text;
    std::size_t column;  // 1-based
};

struct Line {
    std::size_t number;  // 1-based
    std::vector<Token> tokens;
    std::string raw;
};

std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string raw(text.substr(pos, end - pos));
        ++number;
        pos = end + 1;
        if (auto c = raw.find(';'); c != std::string::npos) raw.erase(c);
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        Line line{number, {}, raw};
        std::size_t i = 0;
        while (i < raw.size()) {
            if (std::isspace(static_cast<unsigned char>(raw[i]))) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
            line.tokens.push_back({raw.substr(i, j - i), i + 1});
            i = j;
        }
        if (!line.tokens.empty()) out.push_back(std::move(line));
        if (end == text.size()) break;
    }
    return out;
}

[[noreturn]] void fail(const Line& l, std::size_t token, const std::string& what) {
    const std::size_t col = token < l.tokens.size() ? l.tokens[token].column : l.raw.size() + 1;
    throw ParseError(l.number, col, what);
}

std::int64_t parse_int(const Line& l, std::size_t token) {
    if (token >= l.tokens.size()) fail(l, token, "expected integer");
    const auto& s = l.tokens[token].text;
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) fail(l, token, "expected integer, got '" + s + "'");
    return v;
}

void expect_arity(const Line& l, std::size_t n) {
    if (l.tokens.size() < n) fail(l, l.tokens.size(), "expected more fields");
    if (l.tokens.size() > n) fail(l, n, "unexpected '" + l.tokens[n].text + "'");
}

/// Cursor over the lines of a file.
class Reader {
public:
    explicit Reader(std::string_view text) : lines_(split_lines(text)) {}

    bool done() const { return i_ == lines_.size(); }
    const Line& peek() const { return lines_[i_]; }
    const Line& next() { return lines_[i_++]; }
    bool at(std::string_view keyword) const { return !done() && peek().tokens[0].text == keyword; }

    const Line& expect(std::string_view keyword) {
        if (done()) throw ParseError(lines_.empty() ? 1 : lines_.back().number + 1, 1, "expected '" + std::string(keyword) + "'");
        if (!at(keyword)) fail(peek(), 0, "expected '" + std::string(keyword) + "', got '" + peek().tokens[0].text + "'");
        return next();
    }

private:
    std::vector<Line> lines_;
    std::size_t i_ = 0;
};

Alphabet read_alphabet(Reader& r) {
    const Line& l = r.expect("alphabet");
    std::vector<std::string> letters;
    for (std::size_t i = 1; i < l.tokens.size(); ++i) letters.push_back(l.tokens[i].text);
    return Alphabet(std::move(letters));
}

struct StateBlock {
    std::vector<std::string> names;
    std::map<std::string, State> index;
    std::vector<State> initials;
    std::vector<State> accepting;
};

State lookup_state(const StateBlock& b, const Line& l, std::size_t token) {
    if (token >= l.tokens.size()) fail(l, token, "expected state");
    auto it = b.index.find(l.tokens[token].text);
    if (it == b.index.end()) fail(l, token, "unknown state '" + l.tokens[token].text + "'");
    return it->second;
}

Letter lookup_letter(const Alphabet& sigma, const Line& l, std::size_t token) {
    if (token >= l.tokens.size()) fail(l, token, "expected letter");
    auto a = sigma.find(l.tokens[token].text);
    if (!a) fail(l, token, "unknown letter '" + l.tokens[token].text + "'");
    return *a;
}

StateBlock read_states(Reader& r) {
    StateBlock b;
    const Line& s = r.expect("states");
    for (std::size_t i = 1; i < s.tokens.size(); ++i) {
        if (!b.index.emplace(s.tokens[i].text, static_cast<State>(b.names.size())).second)
            fail(s, i, "duplicate state '" + s.tokens[i].text + "'");
        b.names.push_back(s.tokens[i].text);
    }
    const Line& in = r.expect("initial");
    for (std::size_t i = 1; i < in.tokens.size(); ++i) b.initials.push_back(lookup_state(b, in, i));
    const Line& acc = r.expect("accepting");
    for (std::size_t i = 1; i < acc.tokens.size(); ++i) b.accepting.push_back(lookup_state(b, acc, i));
    return b;
}

std::string join(const std::vector<std::string>& xs) {
    std::string s;
    for (const auto& x : xs) s += " " + x;
    return s;
}

std::string names_of(const std::vector<std::string>& names, const std::vector<State>& ids) {
    std::string s;
    for (auto id : ids) s += " " + names.at(id);
    return s;
}

}  // namespace

std::string model_kind(std::string_view text) {
    auto lines = split_lines(text);
    if (lines.empty()) return {};
    const auto& head = lines[0].tokens[0].text;
    return head == "nwa" || head == "mca" ? head : std::string();
}

Nwa parse_nwa(std::string_view text) {
    Reader r(text);
    expect_arity(r.expect("nwa"), 1);
    Nwa nwa;
    nwa.alphabet = read_alphabet(r);
    expect_arity(r.expect("master"), 1);
    StateBlock m = read_states(r);
    std::vector<Transition> trans;
    while (r.at("trans")) {
        const Line& l = r.next();
        expect_arity(l, 6);
        if (l.tokens[4].text != "invoke") fail(l, 4, "expected 'invoke'");
        const auto slave = parse_int(l, 5);
        if (slave < 1) fail(l, 5, "slave indexes start at 1");
        trans.push_back({lookup_state(m, l, 1), lookup_letter(nwa.alphabet, l, 2), lookup_state(m, l, 3), slave - 1});
    }
    nwa.master = LabeledAutomaton(m.names, m.initials, m.accepting, std::move(trans));
    while (!r.done()) {
        const Line& h = r.expect("slave");
        expect_arity(h, 4);
        if (parse_int(h, 1) != static_cast<std::int64_t>(nwa.slaves.size() + 1))
            fail(h, 1, "expected slave " + std::to_string(nwa.slaves.size() + 1));
        if (h.tokens[2].text != "valuefn") fail(h, 2, "expected 'valuefn'");
        WeightedAutomaton b;
        const auto& fn = h.tokens[3].text;
        if (fn == "sum")
            b.value_fn = ValueFn::Sum;
        else if (fn == "sum+")
            b.value_fn = ValueFn::SumPlus;
        else if (fn == "limavg")
            b.value_fn = ValueFn::LimAvg;
        else
            fail(h, 3, "unknown value function '" + fn + "'");
        StateBlock s = read_states(r);
        std::vector<Transition> st;
        while (r.at("trans")) {
            const Line& l = r.next();
            expect_arity(l, 6);
            if (l.tokens[4].text != "weight") fail(l, 4, "expected 'weight'");
            st.push_back({lookup_state(s, l, 1), lookup_letter(nwa.alphabet, l, 2), lookup_state(s, l, 3), parse_int(l, 5)});
        }
        b.base = LabeledAutomaton(s.names, s.initials, s.accepting, std::move(st));
        nwa.slaves.push_back(std::move(b));
    }
    return nwa;
}

std::string render_nwa(const Nwa& nwa) {
    std::ostringstream os;
    os << "nwa\n";
    os << "alphabet" << join(nwa.alphabet.letters()) << "\n";
    auto block = [&](const LabeledAutomaton& a, const char* keyword) {
        os << "  states" << join(a.state_names()) << "\n";
        os << "  initial" << names_of(a.state_names(), a.initials()) << "\n";
        os << "  accepting" << names_of(a.state_names(), a.accepting_states()) << "\n";
        for (const auto& t : a.transitions())
            os << "  trans " << a.state_name(t.from) << " " << nwa.alphabet.name(t.letter) << " " << a.state_name(t.to)
               << " " << keyword << " " << (keyword[0] == 'i' ? t.label + 1 : t.label) << "\n";
    };
    os << "master\n";
    block(nwa.master, "invoke");
    for (std::size_t i = 0; i < nwa.slaves.size(); ++i) {
        const auto& b = nwa.slaves[i];
        os << "slave " << i + 1 << " valuefn " << value_fn_name(b.value_fn) << "\n";
        block(b.base, "weight");
    }
    return os.str();
}

std::string render_instruction(const Instruction& x) {
    switch (x.op) {
        case Instruction::Op::Idle:
            return ".";
        case Instruction::Op::Start:
            return "s";
        case Instruction::Op::Terminate:
            return "t";
        case Instruction::Op::Add:
            break;
    }
    return std::to_string(x.amount);
}

Mca parse_mca(std::string_view text) {
    Reader r(text);
    expect_arity(r.expect("mca"), 1);
    Mca mca;
    mca.alphabet = read_alphabet(r);
    const Line& c = r.expect("counters");
    expect_arity(c, 2);
    const auto n = parse_int(c, 1);
    if (n < 0) fail(c, 1, "counter count must be nonnegative");
    mca.n_counters = static_cast<std::size_t>(n);
    StateBlock s = read_states(r);
    mca.states = s.names;
    mca.initials = s.initials;
    mca.accepting = s.accepting;
    while (!r.done()) {
        const Line& l = r.expect("trans");
        if (l.tokens.size() < 5) fail(l, l.tokens.size(), "expected instruction vector");
        McaTransition t{lookup_state(s, l, 1), lookup_letter(mca.alphabet, l, 2), lookup_state(s, l, 3), {}};
        const std::size_t open = l.raw.find('[', l.tokens[4].column - 1);
        const std::size_t close = l.raw.find(']', open == std::string::npos ? 0 : open);
        if (open == std::string::npos || l.tokens[4].text[0] != '[') fail(l, 4, "expected '['");
        if (close == std::string::npos) fail(l, l.tokens.size(), "expected ']'");
        if (l.raw.find_first_not_of(" \t", close + 1) != std::string::npos)
            throw ParseError(l.number, l.raw.find_first_not_of(" \t", close + 1) + 1, "unexpected text after ']'");
        std::size_t at = open + 1;
        const std::string body = l.raw.substr(open + 1, close - open - 1);
        if (body.find_first_not_of(" \t") != std::string::npos) {
            std::size_t from = 0;
            while (true) {
                std::size_t comma = body.find(',', from);
                std::string item = body.substr(from, comma == std::string::npos ? std::string::npos : comma - from);
                const std::size_t lead = item.find_first_not_of(" \t");
                const std::size_t col = at + from + (lead == std::string::npos ? 0 : lead) + 1;
                if (lead == std::string::npos) throw ParseError(l.number, col, "empty instruction");
                item = item.substr(lead, item.find_last_not_of(" \t") - lead + 1);
                if (item == ".") {
                    t.ops.push_back(Instruction::idle());
                } else if (item == "s") {
                    t.ops.push_back(Instruction::start());
                } else if (item == "t") {
                    t.ops.push_back(Instruction::terminate());
                } else if (item == "_") {
                    t.ops.push_back(Instruction::add(0));
                } else {
                    std::int64_t v = 0;
                    auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
                    if (ec != std::errc() || p != item.data() + item.size())
                        throw ParseError(l.number, col, "unknown instruction '" + item + "'");
                    t.ops.push_back(Instruction::add(v));
                }
                if (comma == std::string::npos) break;
                from = comma + 1;
            }
        }
        mca.transitions.push_back(std::move(t));
    }
    return mca;
}

std::string render_mca(const Mca& mca) {
    std::ostringstream os;
    os << "mca\n";
    os << "alphabet" << join(mca.alphabet.letters()) << "\n";
    os << "counters " << mca.n_counters << "\n";
    os << "states" << join(mca.states) << "\n";
    os << "initial" << names_of(mca.states, mca.initials) << "\n";
    os << "accepting" << names_of(mca.states, mca.accepting) << "\n";
    for (const auto& t : mca.transitions) {
        os << "trans " << mca.states.at(t.from) << " " << mca.alphabet.name(t.letter) << " " << mca.states.at(t.to)
           << " [";
        for (std::size_t j = 0; j < t.ops.size(); ++j) os << (j ? ", " : "") << render_instruction(t.ops[j]);
        os << "]\n";
    }
    return os.str();
}

LassoWord parse_lasso(const Alphabet& sigma, std::string_view text) {
    const auto bar = text.find('|');
    if (bar == std::string_view::npos) throw ParseError(1, text.size() + 1, "expected '|' between prefix and period");
    if (text.find('|', bar + 1) != std::string_view::npos)
        throw ParseError(1, text.find('|', bar + 1) + 1, "more than one '|'");
    LassoWord w;
    auto read = [&](std::size_t from, std::size_t to, Word& out) {
        std::size_t i = from;
        while (i < to) {
            if (std::isspace(static_cast<unsigned char>(text[i]))) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < to && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
            auto a = sigma.find(text.substr(i, j - i));
            if (!a) throw ParseError(1, i + 1, "unknown letter '" + std::string(text.substr(i, j - i)) + "'");
            out.push_back(*a);
            i = j;
        }
    };
    read(0, bar, w.prefix);
    read(bar + 1, text.size(), w.period);
    if (w.period.empty()) throw ParseError(1, bar + 2, "period must be nonempty");
    return w;
}

}  // namespace nwaq
