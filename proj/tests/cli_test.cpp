// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

namespace {

struct CmdResult {
    int exitCode = -1;
    std::string output;
};

CmdResult runCmd(const std::string& args) {
    const char* env = std::getenv("FSOL_CLI_PATH");
    std::string cli = env ? env : FSOL_CLI_PATH;
    CmdResult r;
    FILE* pipe = popen((cli + " " + args + " 2>&1").c_str(), "r");
    REQUIRE(pipe);
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof buf, pipe)) r.output.append(buf, n);
    int status = pclose(pipe);
    if (WIFEXITED(status)) r.exitCode = WEXITSTATUS(status);
    return r;
}

std::string corpusPath(const std::string& name) {
    const char* env = std::getenv("FSOL_CORPUS_DIR");
    return std::string(env ? env : FSOL_CORPUS_DIR) + "/" + name;
}

size_t countOf(const std::string& haystack, const std::string& needle) {
    size_t n = 0;
    for (size_t pos = haystack.find(needle); pos != std::string::npos;
         pos = haystack.find(needle, pos + 1))
        ++n;
    return n;
}

} // namespace

TEST_CASE("usage errors exit 3") {
    CHECK(runCmd("").exitCode == 3);
    CHECK(runCmd("check").exitCode == 3);                     // missing --typing and file
    CHECK(runCmd("frobnicate").exitCode == 3);                // unknown subcommand
    CHECK(runCmd("check --typing sideways x.fsol").exitCode == 3);
    CHECK(runCmd("--help").exitCode == 0);
}

TEST_CASE("missing files exit 3") {
    CHECK(runCmd("check --typing baseline /nonexistent.fsol").exitCode == 3);
    CmdResult r = runCmd("run --typing baseline --scenario /nonexistent.json " +
                         corpusPath("counterexample.fsol"));
    CHECK(r.exitCode == 3);
}

TEST_CASE("scenario parse errors exit 3") {
    std::string bad = "/tmp/fsol_cli_test_bad.json";
    FILE* f = fopen(bad.c_str(), "w");
    REQUIRE(f);
    fputs("{broken", f);
    fclose(f);
    CmdResult r = runCmd("run --typing baseline --scenario " + bad + " " +
                         corpusPath("counterexample.fsol"));
    CHECK(r.exitCode == 3);
    CHECK(r.output.find("SCN-PARSE") != std::string::npos);
    remove(bad.c_str());
}

TEST_CASE("syntax errors exit 1 with positioned diagnostics") {
    std::string bad = "/tmp/fsol_cli_test_bad.fsol";
    FILE* f = fopen(bad.c_str(), "w");
    REQUIRE(f);
    fputs("contract C { uint }\n", f);
    fclose(f);
    CmdResult r = runCmd("check --typing baseline " + bad);
    CHECK(r.exitCode == 1);
    CHECK(r.output.find("PAR-SYNTAX") != std::string::npos);
    CHECK(r.output.find(":1:") != std::string::npos);
    remove(bad.c_str());
}

TEST_CASE("diff prints what only one checker sees") {
    CmdResult r = runCmd("diff " + corpusPath("counterexample.fsol"));
    CHECK(r.exitCode == 0);
    CHECK(r.output.find("baseline: 0 diagnostic(s)") != std::string::npos);
    CHECK(r.output.find("refined: 4 diagnostic(s)") != std::string::npos);
    CHECK(countOf(r.output, "only refined:") == 4);
    CHECK(r.output.find("only baseline:") == std::string::npos);
}

TEST_CASE("diff on an agreeing file says so") {
    // the corpus counterexamples all split the checkers, so agreement
    // needs a program with no unsafe casts and no refined syntax
    std::string plain = "/tmp/fsol_cli_test_plain.fsol";
    FILE* f = fopen(plain.c_str(), "w");
    REQUIRE(f);
    fputs("contract C {\n    uint x;\n    function set(uint v) public {\n        x = v;\n    }\n}\n",
          f);
    fclose(f);
    CmdResult r = runCmd("diff " + plain);
    CHECK(r.exitCode == 0);
    CHECK(r.output.find("checkers agree on this file") != std::string::npos);
    remove(plain.c_str());
}

TEST_CASE("check --format json emits machine-readable diagnostics") {
    CmdResult r = runCmd("check --typing refined --format json " +
                         corpusPath("counterexample.fsol"));
    CHECK(r.exitCode == 1);
    nlohmann::json doc = nlohmann::json::parse(r.output, nullptr, false);
    REQUIRE(!doc.is_discarded());
    REQUIRE(doc.is_array());
    REQUIRE(doc.size() == 4);
    CHECK(doc[0]["code"] == "REF-BAD-CAST");
    CHECK(doc[0]["severity"] == "error");
    CHECK(doc[0]["span"]["line"] == 7);
    CHECK(doc[0]["span"]["col"] == 17);
}

TEST_CASE("run --format json carries outcomes and balances") {
    CmdResult r = runCmd("run --typing baseline --format json --scenario " +
                         corpusPath("counterexample.scenario.json") + " " +
                         corpusPath("counterexample.fsol"));
    CHECK(r.exitCode == 0);
    nlohmann::json doc = nlohmann::json::parse(r.output, nullptr, false);
    REQUIRE(!doc.is_discarded());
    CHECK(doc["ok"] == true);
    REQUIRE(doc["transactions"].size() == 2);
    CHECK(doc["transactions"][0]["outcome"] == "Reverted");
    CHECK(doc["transactions"][0]["reason"] == "NoFallback");
    CHECK(doc["transactions"][0]["passed"] == true);
    CHECK(doc["finalState"].size() == 3);
}

TEST_CASE("refined run refuses a rejected program unless forced") {
    std::string args = "run --typing refined --scenario " +
                       corpusPath("counterexample.scenario.json") + " " +
                       corpusPath("counterexample.fsol");
    CmdResult refused = runCmd(args);
    CHECK(refused.exitCode == 1);
    CHECK(refused.output.find("REF-BAD-CAST") != std::string::npos);

    CmdResult forced = runCmd(args + " --force");
    // the scenario's expectations anticipate the reverts, so the forced
    // run meets them
    CHECK(forced.exitCode == 0);
    CHECK(forced.output.find("running anyway (--force)") != std::string::npos);
    CHECK(forced.output.find("Reverted{NoFallback}") != std::string::npos);
}

TEST_CASE("fuzz with count 0 reports an empty campaign") {
    CmdResult r = runCmd("fuzz --mode refined-sound --count 0 --seed 1");
    CHECK(r.exitCode == 0);
    CHECK(r.output.find("programs generated: 0") != std::string::npos);
    CHECK(r.output.find("violations: 0") != std::string::npos);
}

TEST_CASE("fuzz --format json round-trips through a JSON parser") {
    CmdResult r = runCmd("fuzz --mode baseline-holes --count 20 --seed 4 --format json");
    CHECK(r.exitCode == 0);
    nlohmann::json doc = nlohmann::json::parse(r.output, nullptr, false);
    REQUIRE(!doc.is_discarded());
    CHECK(doc["mode"] == "baseline-holes");
    CHECK(doc["programsGenerated"] == 20);
    CHECK(doc["violations"].is_array());
}
