#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nwaq/corpus.hpp"
#include "nwaq/format.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
    json doc() const { return json::parse(out); }
};

Run cli(const std::string& args) {
    const std::string cmd = std::string(NWAQ_BIN) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string corpus(const std::string& file) { return std::string(NWAQ_CORPUS_DIR) + "/" + file; }

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct ScratchDir {
    fs::path path = fs::temp_directory_path() / ("nwaq-cli-" + std::to_string(getpid()));
    ScratchDir() { fs::create_directories(path); }
    ~ScratchDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

fs::path scratch() {
    static const ScratchDir dir;
    return dir.path;
}

struct Query {
    std::string file;
    std::size_t k;
    std::string threshold;
};

const std::vector<Query>& queries() {
    static const std::vector<Query> q = {
        {"art1.nwa", 1, "--le 1"},      {"art1.nwa", 1, "--lt 2"},     {"kart2.nwa", 2, "--le 3/2"},
        {"kart3.nwa", 3, "--lt 7/5"},   {"art1k2.nwa", 2, "--le 1"},   {"art1k3.nwa", 3, "--le 2"},
        {"cond1.nwa", 2, "--le 0"},     {"cond2.nwa", 2, "--lt -100"}, {"ae.nwa", 1, "--lt -50"},
        {"counter1.mca", 1, "--le 1"},
    };
    return q;
}

}  // namespace

TEST_CASE("fmt reproduces every corpus file byte for byte") {
    for (const auto& e : nwaq::corpus::all()) {
        const std::string file = corpus(e.name + (std::holds_alternative<nwaq::Nwa>(e.model) ? ".nwa" : ".mca"));
        CAPTURE(file);
        const Run r = cli("fmt " + file);
        CHECK(r.code == 0);
        CHECK(r.out == slurp(file));
        const Run c = cli("check " + file);
        CHECK(c.code == 0);
        CHECK(c.doc()["answer"] == true);
    }
}

TEST_CASE("result envelope") {
    const Run r = cli("eval " + corpus("ae.nwa") + " --word \"dollar | r r hash g dollar\"");
    REQUIRE(r.code == 0);
    const json j = r.doc();
    CHECK(j["query"] == "eval");
    CHECK(j["value"]["tag"] == "finite");
    CHECK(j["value"]["p"] == 1);
    CHECK(j["value"]["q"] == 1);
    CHECK(j["witness"] == "dollar | r r hash g dollar");

    const Run inf = cli("infimum " + corpus("cond2.nwa") + " --k 2");
    CHECK(inf.code == 0);
    CHECK(inf.doc()["value"]["tag"] == "neg_infinity");
    CHECK(inf.doc()["value"]["p"].is_null());

    const Run half = cli("infimum " + corpus("kart2.nwa") + " --k 2");
    CHECK(half.doc()["value"]["p"] == 1);
}

TEST_CASE("eval thresholds and monitor counter input") {
    CHECK(cli("eval " + corpus("art1.nwa") + " --word \"| r hash g\" --le 2").code == 0);
    CHECK(cli("eval " + corpus("art1.nwa") + " --word \"| r hash g\" --lt 2").code == 1);
    const Run m = cli("eval " + corpus("counter1.mca") + " --word \"| hash a a a\"");
    CHECK(m.code == 0);
    CHECK(m.doc()["value"]["p"] == 3);
}

TEST_CASE("every emitted certificate replays under eval") {
    for (const auto& q : queries()) {
        CAPTURE(q.file);
        CAPTURE(q.threshold);
        const fs::path cert = scratch() / "cert.json";
        fs::remove(cert);
        const Run r = cli("empty " + corpus(q.file) + " --k " + std::to_string(q.k) + " " + q.threshold +
                           " --certificate " + cert.string());
        CHECK(r.code == 0);
        CHECK(r.doc()["answer"] == true);
        REQUIRE(fs::exists(cert));
        const Run e = cli("eval " + corpus(q.file) + " --certificate " + cert.string());
        CHECK(e.code == 0);
        CHECK(e.doc()["answer"] == true);
    }
}

TEST_CASE("star certificates replay and detect tampering") {
    const fs::path cert = scratch() / "star.json";
    const Run r = cli("star " + corpus("ae.nwa") + " --k 1 --certificate " + cert.string());
    CHECK(r.code == 0);
    CHECK(cli("eval " + corpus("ae.nwa") + " --certificate " + cert.string()).code == 0);
    json c = json::parse(slurp(cert));
    c["j_sum"] = 3;
    std::ofstream(cert) << c.dump();
    CHECK(cli("eval " + corpus("ae.nwa") + " --certificate " + cert.string()).code == 1);
    c["cycle"][0]["letter"] = "nope";
    std::ofstream(cert) << c.dump();
    CHECK(cli("eval " + corpus("ae.nwa") + " --certificate " + cert.string()).code == 2);

    CHECK(cli("star " + corpus("cond1.nwa") + " --k 2").code == 1);
}

TEST_CASE("negative answers") {
    const Run r = cli("empty " + corpus("kart2.nwa") + " --k 2 --lt 1");
    CHECK(r.code == 1);
    CHECK(r.doc()["answer"] == false);
    CHECK(r.doc()["value"]["p"] == 1);
    CHECK(cli("universal " + corpus("art1.nwa") + " --k 1 --le 5").code == 1);
    CHECK(cli("universal " + corpus("cond1.nwa") + " --k 2 --le 0").code == 1);
    const Run w = cli("width " + corpus("art.nwa") + " --k 3");
    CHECK(w.code == 1);
    CHECK(w.doc()["witness"] == "r r r r");
    CHECK(cli("width " + corpus("kart3.nwa") + " --k 3").code == 0);
    CHECK(cli("width " + corpus("kart3.nwa") + " --max 4").doc()["minimal"] == 3);
}

TEST_CASE("translate and reduce write loadable automata") {
    const fs::path nwa = scratch() / "counter.nwa", mca = scratch() / "back.mca", red = scratch() / "red.nwa";
    CHECK(cli("translate " + corpus("counter1.mca") + " --to nwa -o " + nwa.string()).code == 0);
    CHECK(cli("check " + nwa.string()).code == 0);
    CHECK(cli("translate " + nwa.string() + " --to mca --k 1 -o " + mca.string()).code == 0);
    CHECK(cli("check " + mca.string()).code == 0);
    for (const char* w : {"| hash a a a", "| hash hash a", "a | a"}) {
        const std::string word = std::string(" --word \"") + w + "\"";
        const json a = cli("eval " + corpus("counter1.mca") + word).doc();
        CHECK(cli("eval " + nwa.string() + word).doc()["value"] == a["value"]);
        CHECK(cli("eval " + mca.string() + word).doc()["value"] == a["value"]);
    }
    CHECK(cli("reduce " + corpus("kart2.nwa") + " --k 2 -o " + red.string()).code == 0);
    CHECK(cli("width " + red.string() + " --k 1").code == 0);
    const json a = cli("eval " + corpus("kart2.nwa") + " --word \"| r r g hash\"").doc();
    CHECK(cli("eval " + red.string() + " --word \"| r r g hash\"").doc()["value"] == a["value"]);
    // The files themselves are canonical.
    CHECK(cli("fmt " + red.string()).out == slurp(red));
}

TEST_CASE("output is deterministic") {
    for (const std::string args : {"infimum " + corpus("art1k3.nwa") + " --k 3", "star " + corpus("cond2.nwa") + " --k 2",
                                   "empty " + corpus("kart3.nwa") + " --k 3 --le 2"}) {
        CHECK(cli(args).out == cli(args).out);
    }
}

TEST_CASE("exit codes for errors") {
    CHECK(cli("").code == 2);
    CHECK(cli("frobnicate x").code == 2);
    CHECK(cli("check /nonexistent.nwa").code == 2);
    CHECK(cli("empty " + corpus("art1.nwa") + " --k 1").code == 2);
    CHECK(cli("empty " + corpus("art1.nwa") + " --k 1 --le 1 --lt 1").code == 2);
    CHECK(cli("empty " + corpus("art1.nwa") + " --k 1 --le one").code == 2);
    CHECK(cli("eval " + corpus("art1.nwa") + " --word \"r g\"").code == 2);
    CHECK(cli("infimum " + corpus("art.nwa") + " --k 2").code == 2);
    CHECK(cli("translate " + corpus("art1.nwa") + " --to dot -o " + (scratch() / "x").string()).code == 2);

    const fs::path bad = scratch() / "bad.nwa";
    std::ofstream(bad) << "nwa\nalphabet a\nmaster\n  states q\n  initial q\n  accepting q\n  trans q b q invoke 1\n";
    CHECK(cli("check " + bad.string()).code == 2);
    const fs::path invalid = scratch() / "invalid.nwa";
    std::ofstream(invalid) << "nwa\nalphabet a\nmaster\n  states q\n  initial q\n  accepting q\n  trans q a q invoke 2\n"
                              "slave 1 valuefn sum\n  states d\n  initial d\n  accepting d\n";
    const Run c = cli("check " + invalid.string());
    CHECK(c.code == 2);
    CHECK(c.doc()["diagnostics"][0]["code"] == "bad-slave-index");

    // Internal limit: the run needs more slots than the cap allows.
    CHECK(cli("eval " + corpus("art.nwa") + " --word \"| r\" --cap 2").code == 3);
}
