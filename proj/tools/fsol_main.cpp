// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fsol/check_baseline.hpp"
#include "fsol/check_refined.hpp"
#include "fsol/contract_table.hpp"
#include "fsol/fuzz.hpp"
#include "fsol/parser.hpp"
#include "fsol/scenario.hpp"
#include "fsol/vm.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitTypeErrors = 1;
constexpr int kExitExpectation = 2;
constexpr int kExitUsage = 3;
constexpr int kExitSoundness = 4;

std::optional<std::string> readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void printDiags(const std::vector<fsol::Diagnostic>& diags, const std::string& format) {
    if (format == "json")
        std::cout << fsol::diagnosticsToJson(diags);
    else if (!diags.empty())
        std::cout << fsol::renderDiagnostics(diags);
}

struct CheckedProgram {
    fsol::Program program;
    std::optional<fsol::ContractTable> table;
    std::vector<fsol::Diagnostic> frontendDiags; // parse + hierarchy
};

// Parse and resolve; table is absent when either phase reported errors.
CheckedProgram loadProgram(const std::string& source, const std::string& fileName) {
    CheckedProgram out;
    fsol::ParseResult pr = fsol::parse(source, fileName);
    out.frontendDiags = std::move(pr.diagnostics);
    if (fsol::hasErrors(out.frontendDiags)) return out;
    out.program = std::move(pr.program);
    fsol::ResolveResult rr = fsol::resolveHierarchy(out.program);
    for (auto& d : rr.diagnostics) out.frontendDiags.push_back(std::move(d));
    if (rr.table) out.table = std::move(*rr.table);
    return out;
}

int cmdCheck(const std::string& file, const std::string& typing, const std::string& format) {
    auto source = readFile(file);
    if (!source) {
        std::cerr << "fsol: cannot read " << file << "\n";
        return kExitUsage;
    }
    CheckedProgram cp = loadProgram(*source, file);
    if (!cp.table) {
        printDiags(cp.frontendDiags, format);
        return kExitTypeErrors;
    }
    std::vector<fsol::Diagnostic> diags = cp.frontendDiags;
    std::vector<fsol::Diagnostic> checker = typing == "refined"
                                                ? fsol::checkRefined(cp.program, *cp.table)
                                                : fsol::checkBaseline(cp.program, *cp.table);
    for (auto& d : checker) diags.push_back(std::move(d));
    fsol::sortDiagnostics(diags);
    printDiags(diags, format);
    return fsol::hasErrors(diags) ? kExitTypeErrors : kExitOk;
}

int cmdRun(const std::string& file, const std::string& typing, const std::string& scenarioPath,
           bool force, const std::string& tracePath, const std::string& format) {
    auto source = readFile(file);
    if (!source) {
        std::cerr << "fsol: cannot read " << file << "\n";
        return kExitUsage;
    }
    CheckedProgram cp = loadProgram(*source, file);
    if (!cp.table) {
        printDiags(cp.frontendDiags, "text");
        return kExitTypeErrors;
    }
    const bool refined = typing == "refined";
    std::vector<fsol::Diagnostic> checker = refined ? fsol::checkRefined(cp.program, *cp.table)
                                                    : fsol::checkBaseline(cp.program, *cp.table);
    if (fsol::hasErrors(checker)) {
        printDiags(checker, "text");
        // --force exists to demonstrate what a refined-rejected program does
        // at runtime; baseline rejections always stop here.
        if (!(force && refined)) return kExitTypeErrors;
        std::cout << "running anyway (--force)\n";
    }

    auto scenarioText = readFile(scenarioPath);
    if (!scenarioText) {
        std::cerr << "fsol: cannot read " << scenarioPath << "\n";
        return kExitUsage;
    }
    fsol::ScenarioLoadResult slr = fsol::loadScenario(*scenarioText, scenarioPath, *cp.table);
    if (!slr.scenario) {
        printDiags(slr.diagnostics, "text");
        return kExitUsage;
    }
    std::vector<fsol::Diagnostic> entry = fsol::validateEntryConstraints(
        *slr.scenario, cp.program, *cp.table,
        refined ? fsol::TypingMode::Refined : fsol::TypingMode::Baseline);
    if (!entry.empty()) printDiags(entry, "text");
    if (fsol::hasErrors(entry) && !force) return kExitTypeErrors;

    fsol::RunReport report = fsol::runScenario(*cp.table, *slr.scenario);
    if (format == "json")
        std::cout << fsol::runReportToJson(report);
    else
        std::cout << fsol::renderRunReport(report);
    if (!tracePath.empty()) {
        std::ofstream out(tracePath, std::ios::binary);
        if (!out) {
            std::cerr << "fsol: cannot write " << tracePath << "\n";
            return kExitUsage;
        }
        out << fsol::traceToJsonLines(report.trace);
    }
    return report.ok() ? kExitOk : kExitExpectation;
}

// Key disagreements by rule identity (code without the BAS-/REF- prefix)
// plus location, so the same complaint from both checkers lines up.
std::string diffKey(const fsol::Diagnostic& d) {
    std::string code = d.code;
    if (code.rfind("BAS-", 0) == 0 || code.rfind("REF-", 0) == 0) code = code.substr(4);
    return code + "@" + std::to_string(d.span.startLine) + ":" +
           std::to_string(d.span.startColumn);
}

int cmdDiff(const std::string& file) {
    auto source = readFile(file);
    if (!source) {
        std::cerr << "fsol: cannot read " << file << "\n";
        return kExitUsage;
    }
    CheckedProgram cp = loadProgram(*source, file);
    if (!cp.table) {
        printDiags(cp.frontendDiags, "text");
        return kExitTypeErrors;
    }
    std::vector<fsol::Diagnostic> base = fsol::checkBaseline(cp.program, *cp.table);
    std::vector<fsol::Diagnostic> refi = fsol::checkRefined(cp.program, *cp.table);
    auto keysOf = [](const std::vector<fsol::Diagnostic>& ds) {
        std::vector<std::string> keys;
        for (const auto& d : ds) keys.push_back(diffKey(d));
        return keys;
    };
    std::vector<std::string> baseKeys = keysOf(base), refiKeys = keysOf(refi);
    auto contains = [](const std::vector<std::string>& keys, const std::string& k) {
        return std::find(keys.begin(), keys.end(), k) != keys.end();
    };
    std::cout << "baseline: " << base.size() << " diagnostic(s), refined: " << refi.size()
              << " diagnostic(s)\n";
    bool any = false;
    for (size_t i = 0; i < base.size(); ++i)
        if (!contains(refiKeys, baseKeys[i])) {
            std::cout << "only baseline: " << fsol::renderDiagnostic(base[i]) << "\n";
            any = true;
        }
    for (size_t i = 0; i < refi.size(); ++i)
        if (!contains(baseKeys, refiKeys[i])) {
            std::cout << "only refined:  " << fsol::renderDiagnostic(refi[i]) << "\n";
            any = true;
        }
    if (!any) std::cout << "checkers agree on this file\n";
    return kExitOk;
}

int cmdFuzz(const std::string& mode, size_t count, uint64_t seed, int jobs,
            const std::string& format) {
    fsol::GenConfig cfg;
    cfg.seed = seed;
    cfg.mode = mode == "baseline-holes" ? fsol::GenConfig::Mode::BaselineHoles
                                        : fsol::GenConfig::Mode::RefinedSound;
    fsol::CampaignReport report = fsol::runCampaign(cfg, count, jobs, "fuzz-out");
    if (format == "json")
        std::cout << fsol::campaignReportToJson(report);
    else
        std::cout << fsol::renderCampaignReport(report);
    return report.violations.empty() ? kExitOk : kExitSoundness;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"FSol: a small contract language with two type checkers and a chain simulator"};
    app.require_subcommand(1);

    std::string checkTyping, checkFormat = "text", checkFile;
    CLI::App* check = app.add_subcommand("check", "Type-check a program");
    check->add_option("--typing", checkTyping, "Checker to use")
        ->required()
        ->check(CLI::IsMember({"baseline", "refined"}));
    check->add_option("--format", checkFormat, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
    check->add_option("file", checkFile, "Program file")->required();

    std::string runTyping, runScenario, runTrace, runFormat = "text", runFile;
    bool runForce = false;
    CLI::App* run = app.add_subcommand("run", "Run a scenario against a program");
    run->add_option("--typing", runTyping, "Checker to use")
        ->required()
        ->check(CLI::IsMember({"baseline", "refined"}));
    run->add_flag("--force", runForce, "Run even if the refined checker rejects the program");
    run->add_option("--trace", runTrace, "Write a JSONL event trace to this path");
    run->add_option("--scenario", runScenario, "Scenario JSON file")->required();
    run->add_option("--format", runFormat, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
    run->add_option("file", runFile, "Program file")->required();

    std::string diffFile;
    CLI::App* diff = app.add_subcommand("diff", "Run both checkers, print rule-by-rule disagreement");
    diff->add_option("file", diffFile, "Program file")->required();

    std::string fuzzMode, fuzzFormat = "text";
    size_t fuzzCount = 100;
    uint64_t fuzzSeed = 1;
    int fuzzJobs = 1;
    CLI::App* fuzz = app.add_subcommand("fuzz", "Generate and run random programs");
    fuzz->add_option("--mode", fuzzMode, "Campaign mode")
        ->required()
        ->check(CLI::IsMember({"refined-sound", "baseline-holes"}));
    fuzz->add_option("--count", fuzzCount, "Number of cases")->required();
    fuzz->add_option("--seed", fuzzSeed, "Campaign seed")->required();
    fuzz->add_option("--jobs", fuzzJobs, "Worker threads");
    fuzz->add_option("--format", fuzzFormat, "Output format")
        ->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (check->parsed()) return cmdCheck(checkFile, checkTyping, checkFormat);
    if (run->parsed()) return cmdRun(runFile, runTyping, runScenario, runForce, runTrace, runFormat);
    if (diff->parsed()) return cmdDiff(diffFile);
    if (fuzz->parsed()) return cmdFuzz(fuzzMode, fuzzCount, fuzzSeed, fuzzJobs, fuzzFormat);
    return kExitUsage;
}
