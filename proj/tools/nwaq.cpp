// nwaq: command line front end for nested weighted automata.
//
// Exit codes: 0 yes, 1 no, 2 usage or validation error, 3 internal limit.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "nwaq/decide.hpp"
#include "nwaq/format.hpp"
#include "nwaq/oracle.hpp"
#include "nwaq/reduce.hpp"
#include "nwaq/width.hpp"

using json = nlohmann::ordered_json;
using namespace nwaq;

namespace {

enum Exit { kYes = 0, kNo = 1, kUsage = 2, kLimit = 3 };

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

struct Model {
    std::optional<Nwa> nwa;
    std::optional<Mca> mca;

    /// The automaton as an NWA; monitor-counter input is translated.
    Nwa as_nwa() const { return nwa ? *nwa : mca_to_nwa(*mca); }
    const Alphabet& alphabet() const { return nwa ? nwa->alphabet : mca->alphabet; }
};

Model load(const std::string& path) {
    const std::string text = read_file(path);
    const std::string kind = model_kind(text);
    Model m;
    std::vector<Diagnostic> diags;
    if (kind == "nwa") {
        m.nwa = parse_nwa(text);
        diags = validate_nwa(*m.nwa);
    } else if (kind == "mca") {
        m.mca = parse_mca(text);
        diags = validate_mca(*m.mca);
    } else {
        throw ParseError(1, 1, "expected 'nwa' or 'mca' header");
    }
    if (!diags.empty()) throw UsageError(path + ": " + diags[0].code + ": " + diags[0].message);
    return m;
}

json number(const BigInt& x) {
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        return x.convert_to<std::int64_t>();
    return x.str();
}

json value_json(const Value& v) {
    json j;
    j["tag"] = v.tag_name();
    if (v.is_finite()) {
        j["p"] = number(boost::multiprecision::numerator(v.rational()));
        j["q"] = number(boost::multiprecision::denominator(v.rational()));
    } else {
        j["p"] = nullptr;
        j["q"] = nullptr;
    }
    return j;
}

json envelope(const std::string& query, std::optional<bool> answer) {
    json j;
    j["query"] = query;
    j["answer"] = answer ? json(*answer) : json(nullptr);
    j["value"] = nullptr;
    j["witness"] = nullptr;
    return j;
}

int emit(const json& j, int code) {
    std::cout << j.dump(2) << "\n";
    return code;
}

Threshold threshold_from(const std::string& le, const std::string& lt) {
    if (le.empty() == lt.empty()) throw UsageError("give exactly one of --le and --lt");
    const std::string& text = le.empty() ? lt : le;
    auto r = parse_rational(text);
    if (!r) throw UsageError("bad threshold '" + text + "'");
    return Threshold{*r, !lt.empty()};
}

json threshold_json(const Threshold& t) { return {{"value", rational_to_string(t.value)}, {"strict", t.strict}}; }

Threshold threshold_of(const json& j) {
    auto r = parse_rational(j.at("value").get<std::string>());
    if (!r) throw UsageError("bad threshold in certificate");
    return Threshold{*r, j.at("strict").get<bool>()};
}

json steps_json(const Alphabet& sigma, const std::vector<ConfigEdge>& steps) {
    json arr = json::array();
    for (const auto& e : steps)
        arr.push_back({{"letter", sigma.name(e.letter)}, {"master", e.master_choice}, {"slots", e.slot_choices}});
    return arr;
}

/// Rebuilds configuration steps from their recorded choices.
std::vector<ConfigEdge> steps_of(const Nwa& view, std::size_t k, const json& arr, Configuration& at) {
    std::vector<ConfigEdge> out;
    for (const auto& s : arr) {
        auto a = view.alphabet.find(s.at("letter").get<std::string>());
        if (!a) throw UsageError("certificate letter not in the alphabet");
        const auto master = s.at("master").get<std::uint32_t>();
        const auto slots = s.at("slots").get<std::vector<std::uint32_t>>();
        bool found = false;
        for (auto& e : config_successors(view, at, *a, k))
            if (e.master_choice == master && e.slot_choices == slots) {
                at = e.to;
                out.push_back(std::move(e));
                found = true;
                break;
            }
        if (!found) throw UsageError("certificate step is not a move of the automaton");
    }
    return out;
}

json star_json(const Alphabet& sigma, const StarWitness& w) {
    json j;
    j["kind"] = "star";
    j["j"] = w.j;
    j["j_sum"] = w.j_sum;
    j["prefix"] = steps_json(sigma, w.prefix);
    j["cycle"] = steps_json(sigma, w.cycle);
    j["closing"] = steps_json(sigma, w.closing);
    j["word_m1"] = format_lasso(sigma, w.pumped(1));
    return j;
}

StarWitness star_of(const Nwa& nwa, std::size_t k, const json& j) {
    const Nwa view = exploration_view(nwa);
    StarWitness w;
    w.j = j.at("j").get<std::size_t>();
    w.j_sum = j.at("j_sum").get<Weight>();
    auto inits = config_initials(view);
    if (inits.empty()) throw UsageError("automaton has no initial state");
    // The prefix determines its own start; try each initial configuration.
    for (const auto& c0 : inits) {
        Configuration at = c0;
        try {
            w.prefix = steps_of(view, k, j.at("prefix"), at);
        } catch (const UsageError&) {
            if (&c0 == &inits.back()) throw;
            continue;
        }
        w.anchor = at;
        break;
    }
    Configuration at = w.anchor;
    w.cycle = steps_of(view, k, j.at("cycle"), at);
    at = w.anchor;
    w.closing = steps_of(view, k, j.at("closing"), at);
    return w;
}

std::size_t default_cap(const Nwa& nwa) { return minimal_width(nwa, 8).value_or(8); }

Value evaluate_any(const Model& m, const LassoWord& w, std::size_t cap) {
    if (m.mca) {
        if (is_deterministic(*m.mca).deterministic) return evaluate_lasso_mca(*m.mca, w);
        return evaluate_lasso_runs(m.as_nwa(), w, cap);
    }
    if (is_deterministic(*m.nwa).deterministic) return evaluate_lasso(*m.nwa, w, cap);
    return evaluate_lasso_runs(*m.nwa, w, cap);
}

struct Options {
    std::string file;
    std::size_t k = 0;
    std::size_t max = 0;
    std::string word;
    std::size_t cap = 0;
    std::string le, lt;
    std::string certificate;
    std::string to;
    std::string output;
};

int cmd_check(const Options& o) {
    const std::string text = read_file(o.file);
    const std::string kind = model_kind(text);
    json j = envelope("check", std::nullopt);
    std::vector<Diagnostic> diags;
    bool det = false;
    if (kind == "nwa") {
        auto n = parse_nwa(text);
        diags = validate_nwa(n);
        if (diags.empty()) det = is_deterministic(n).deterministic;
    } else if (kind == "mca") {
        auto m = parse_mca(text);
        diags = validate_mca(m);
        if (diags.empty()) det = is_deterministic(m).deterministic;
    } else {
        throw ParseError(1, 1, "expected 'nwa' or 'mca' header");
    }
    j["answer"] = diags.empty();
    j["kind"] = kind;
    j["deterministic"] = det;
    json d = json::array();
    for (const auto& x : diags) d.push_back({{"code", x.code}, {"message", x.message}});
    j["diagnostics"] = d;
    return emit(j, diags.empty() ? kYes : kUsage);
}

int cmd_fmt(const Options& o) {
    const Model m = load(o.file);
    std::cout << (m.nwa ? render_nwa(*m.nwa) : render_mca(*m.mca));
    return kYes;
}

int cmd_width(const Options& o) {
    const Model m = load(o.file);
    const Nwa nwa = m.as_nwa();
    if (o.max) {
        auto w = minimal_width(nwa, o.max);
        json j = envelope("width", w.has_value());
        j["minimal"] = w ? json(*w) : json(nullptr);
        return emit(j, w ? kYes : kNo);
    }
    if (o.k == 0) throw UsageError("--k must be positive");
    auto r = has_width(nwa, o.k);
    json j = envelope("width", r.holds);
    j["k"] = o.k;
    if (r.witness) j["witness"] = format_word(nwa.alphabet, *r.witness);
    return emit(j, r.holds ? kYes : kNo);
}

int cmd_eval(const Options& o) {
    const Model m = load(o.file);
    const std::size_t cap = o.cap ? o.cap : default_cap(m.as_nwa());
    if (!o.certificate.empty()) {
        const json cert = json::parse(read_file(o.certificate));
        json j = envelope("eval", std::nullopt);
        if (cert.at("kind") == "star") {
            const Nwa nwa = m.as_nwa();
            const std::size_t k = cert.at("k").get<std::size_t>();
            const std::string problem = verify_star_witness(nwa, k, star_of(nwa, k, cert));
            j["answer"] = problem.empty();
            j["value"] = value_json(Value::neg_infinity());
            if (!problem.empty()) j["problem"] = problem;
            return emit(j, problem.empty() ? kYes : kNo);
        }
        const LassoWord w = parse_lasso(m.alphabet(), cert.at("word").get<std::string>());
        const Threshold t = threshold_of(cert.at("threshold"));
        const Value v = evaluate_any(m, w, cap);
        j["answer"] = t.admits(v);
        j["value"] = value_json(v);
        j["witness"] = format_lasso(m.alphabet(), w);
        j["threshold"] = threshold_json(t);
        return emit(j, t.admits(v) ? kYes : kNo);
    }
    if (o.word.empty()) throw UsageError("eval needs --word or --certificate");
    const LassoWord w = parse_lasso(m.alphabet(), o.word);
    const Value v = evaluate_any(m, w, cap);
    json j = envelope("eval", std::nullopt);
    int code = kYes;
    if (!o.le.empty() || !o.lt.empty()) {
        const Threshold t = threshold_from(o.le, o.lt);
        j["answer"] = t.admits(v);
        code = t.admits(v) ? kYes : kNo;
    }
    j["value"] = value_json(v);
    j["witness"] = format_lasso(m.alphabet(), w);
    return emit(j, code);
}

int cmd_empty(const Options& o) {
    const Model m = load(o.file);
    const Nwa nwa = m.as_nwa();
    const Threshold t = threshold_from(o.le, o.lt);
    auto r = emptiness(nwa, o.k, t);
    json j = envelope("empty", r.answer);
    j["threshold"] = threshold_json(t);
    json cert;
    if (r.certificate.star) {
        cert = star_json(nwa.alphabet, *r.certificate.star);
        cert["k"] = o.k;
        j["value"] = value_json(Value::neg_infinity());
        j["witness"] = cert["word_m1"];
    } else if (r.certificate.lasso) {
        cert = {{"kind", "lasso"},
                {"word", format_lasso(nwa.alphabet, *r.certificate.lasso)},
                {"threshold", threshold_json(t)},
                {"exact", r.certificate.exact}};
        j["witness"] = cert["word"];
        j["exact"] = r.certificate.exact;
    } else if (r.answer) {
        j["value"] = value_json(Value::neg_infinity());
    }
    if (r.infimum) j["value"] = value_json(*r.infimum);
    // A limit-only witness misses the threshold itself, so it is reported but not certified.
    const bool certifiable = !cert.is_null() && (cert["kind"] == "star" || r.certificate.exact);
    if (!o.certificate.empty() && certifiable) write_file(o.certificate, cert.dump(2) + "\n");
    return emit(j, r.answer ? kYes : kNo);
}

int cmd_infimum(const Options& o) {
    const Model m = load(o.file);
    const Nwa nwa = m.as_nwa();
    auto r = infimum(nwa, o.k);
    json j = envelope("infimum", std::nullopt);
    j["value"] = value_json(r.value);
    if (r.certificate.lasso) {
        j["witness"] = format_lasso(nwa.alphabet, *r.certificate.lasso);
        j["exact"] = r.certificate.exact;
    } else if (r.certificate.star) {
        j["witness"] = format_lasso(nwa.alphabet, r.certificate.star->pumped(1));
    }
    return emit(j, kYes);
}

int cmd_universal(const Options& o) {
    const Model m = load(o.file);
    const Threshold t = threshold_from(o.le, o.lt);
    const bool r = universality_deterministic(m.as_nwa(), o.k, t);
    json j = envelope("universal", r);
    j["threshold"] = threshold_json(t);
    return emit(j, r ? kYes : kNo);
}

int cmd_star(const Options& o) {
    const Model m = load(o.file);
    const Nwa nwa = m.as_nwa();
    if (!has_width(nwa, o.k).holds) throw PreconditionError("automaton does not have width " + std::to_string(o.k));
    auto w = check_star_condition(nwa, o.k);
    json j = envelope("star", w.has_value());
    if (w) {
        json cert = star_json(nwa.alphabet, *w);
        cert["k"] = o.k;
        j["witness"] = cert["word_m1"];
        j["certificate"] = cert;
        if (!o.certificate.empty()) write_file(o.certificate, cert.dump(2) + "\n");
    }
    return emit(j, w ? kYes : kNo);
}

int cmd_translate(const Options& o) {
    const Model m = load(o.file);
    std::string text;
    if (o.to == "mca") {
        if (!m.nwa) throw UsageError("input is already an MCA");
        if (o.k == 0) throw UsageError("--k is required for --to mca");
        text = render_mca(nwa_to_mca(*m.nwa, o.k));
    } else if (o.to == "nwa") {
        if (!m.mca) throw UsageError("input is already an NWA");
        text = render_nwa(mca_to_nwa(*m.mca));
    } else {
        throw UsageError("--to must be mca or nwa");
    }
    write_file(o.output, text);
    json j = envelope("translate", true);
    j["output"] = o.output;
    return emit(j, kYes);
}

int cmd_reduce(const Options& o) {
    const Model m = load(o.file);
    const Nwa out = reduce_width1(m.as_nwa(), o.k);
    write_file(o.output, render_nwa(out));
    json j = envelope("reduce", true);
    j["output"] = o.output;
    j["states"] = out.master.num_states();
    j["slaves"] = out.slaves.size();
    return emit(j, kYes);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nested weighted automata: evaluation, width, and threshold decisions"};
    app.require_subcommand(1);
    Options o;
    auto file = [&](CLI::App* c) { c->add_option("FILE", o.file, "model file (.nwa or .mca)")->required(); };
    auto k = [&](CLI::App* c, bool required) {
        auto opt = c->add_option("--k", o.k, "width bound");
        if (required) opt->required();
    };
    auto thresholds = [&](CLI::App* c) {
        c->add_option("--le", o.le, "threshold, value <= T");
        c->add_option("--lt", o.lt, "threshold, value < T");
    };

    auto* check = app.add_subcommand("check", "parse and validate a model");
    file(check);
    auto* fmt = app.add_subcommand("fmt", "print the canonical form of a model");
    file(fmt);
    auto* width = app.add_subcommand("width", "decide whether the width is at most K");
    file(width);
    k(width, false);
    width->add_option("--max", o.max, "search the minimal width up to this bound");
    auto* eval = app.add_subcommand("eval", "value of a lasso word, or replay a certificate");
    file(eval);
    eval->add_option("--word", o.word, "lasso word 'prefix | period'");
    eval->add_option("--cap", o.cap, "width cap");
    eval->add_option("--certificate", o.certificate, "certificate JSON to replay");
    thresholds(eval);
    auto* empty = app.add_subcommand("empty", "is there a word with value within the threshold");
    file(empty);
    k(empty, true);
    thresholds(empty);
    empty->add_option("--certificate", o.certificate, "write the certificate here");
    auto* inf = app.add_subcommand("infimum", "infimum over all words");
    file(inf);
    k(inf, true);
    auto* uni = app.add_subcommand("universal", "do all accepted words satisfy the threshold");
    file(uni);
    k(uni, true);
    thresholds(uni);
    auto* star = app.add_subcommand("star", "search a cycle that drives the infimum to -inf");
    file(star);
    k(star, true);
    star->add_option("--certificate", o.certificate, "write the certificate here");
    auto* tr = app.add_subcommand("translate", "translate between NWA and MCA");
    file(tr);
    k(tr, false);
    tr->add_option("--to", o.to, "target format: mca or nwa")->required();
    tr->add_option("-o", o.output, "output file")->required();
    auto* red = app.add_subcommand("reduce", "equivalent automaton of width 1");
    file(red);
    k(red, true);
    red->add_option("-o", o.output, "output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kYes : kUsage;
    }

    try {
        if (*check) return cmd_check(o);
        if (*fmt) return cmd_fmt(o);
        if (*width) return cmd_width(o);
        if (*eval) return cmd_eval(o);
        if (*empty) return cmd_empty(o);
        if (*inf) return cmd_infimum(o);
        if (*uni) return cmd_universal(o);
        if (*star) return cmd_star(o);
        if (*tr) return cmd_translate(o);
        if (*red) return cmd_reduce(o);
    } catch (const UsageError& e) {
        std::cerr << "nwaq: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "nwaq: " << o.file << ":" << e.what() << "\n";
        return kUsage;
    } catch (const PreconditionError& e) {
        std::cerr << "nwaq: " << e.what() << "\n";
        return kUsage;
    } catch (const NondeterministicInput& e) {
        std::cerr << "nwaq: " << e.what() << "\n";
        return kUsage;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "nwaq: certificate: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "nwaq: " << e.what() << "\n";
        return kLimit;
    }
    return kUsage;
}
