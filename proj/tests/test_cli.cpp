// End-to-end checks of the installed command line: exit codes, verdict lines,
// and byte-identical reruns.

#include <array>
#include <cstdio>
#include <string>

#include "doctest.h"

namespace {

struct RunResult {
    int status;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(SULLIVAN_BIN) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    int rc = pclose(p);
    return {WEXITSTATUS(rc), out};
}

}  // namespace

TEST_CASE("verdicts exit zero, including NonFormal") {
    RunResult formal = run("formality fixtures/s2 --cap 10");
    CHECK(formal.status == 0);
    CHECK(formal.out.find("FormalUpTo(10)") != std::string::npos);

    RunResult nonformal = run("formality fixtures/heisenberg_shifted --cap 12");
    CHECK(nonformal.status == 0);
    CHECK(nonformal.out.find("NonFormal(stage=2)") != std::string::npos);
}

TEST_CASE("--expect flips the exit status") {
    CHECK(run("formality fixtures/s2 --cap 10 --expect formal").status == 0);
    CHECK(run("formality fixtures/s2 --cap 10 --expect nonformal").status == 1);
    CHECK(run("formality fixtures/heisenberg_shifted --cap 12 --expect nonformal").status == 0);
    CHECK(run("formality fixtures/heisenberg_shifted --cap 12 --expect formal").status == 1);
}

TEST_CASE("usage, parse, and cap errors use the documented exit codes") {
    CHECK(run("formality fixtures/s2").status == 1);           // missing --cap
    CHECK(run("no-such-command x --cap 8").status != 0);
    CHECK(run("formality fixtures/s2 --cap 3").status == 1);   // cap too small, with guidance
    RunResult parse = run("formality " + std::string(FIXTURES_DIR) + "/../README.md --cap 10");
    CHECK(parse.status == 2);
}

TEST_CASE("identical invocations produce byte-identical JSON") {
    for (const char* cmd : {"cohomology fixtures/s2 --cap 12 --json",
                            "formality fixtures/heisenberg_shifted --cap 12 --json",
                            "bigraded-model fixtures/wedge_s2_s2_s2 --cap 7 --json",
                            "halperin fixtures/example31 --cap 16 --json",
                            "tncz fixtures/product_s3_s2 --cap 8 --json"}) {
        RunResult a = run(cmd);
        RunResult b = run(cmd);
        CHECK(a.status == 0);
        CHECK(a.out == b.out);
        CHECK(!a.out.empty());
    }
}

TEST_CASE("fixture files load identically to embedded fixtures") {
    RunResult embedded = run("cohomology fixtures/s2 --cap 10 --json");
    RunResult file = run("cohomology " + std::string(FIXTURES_DIR) + "/s2.cdga --cap 10 --json");
    CHECK(embedded.out == file.out);
}

TEST_CASE("sphere betti lines") {
    RunResult s2 = run("cohomology fixtures/s2 --cap 12");
    CHECK(s2.out.find("betti: 1 0 1 0 0 0 0 0 0 0 0 0") != std::string::npos);
    RunResult s3 = run("cohomology fixtures/s3 --cap 12");
    CHECK(s3.out.find("betti: 1 0 0 1 0 0 0 0 0 0 0 0") != std::string::npos);
    RunResult s6 = run("cohomology fixtures/s6 --cap 12");
    CHECK(s6.out.find("betti: 1 0 0 0 0 0 1 0 0 0 0 0") != std::string::npos);
}

TEST_CASE("fixtures listing names the corpus") {
    RunResult r = run("fixtures");
    CHECK(r.status == 0);
    for (const char* name : {"s2", "s3", "s6", "example31", "heisenberg_shifted", "base_bcn",
                             "base_bcn_total", "wedge_s2_s2_s2", "lupton_total", "toy_twistor"})
        CHECK(r.out.find(name) != std::string::npos);
}
