// Part of the FSol project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0

#ifndef FSOL_FUZZ_HPP
#define FSOL_FUZZ_HPP

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "fsol/ast.hpp"
#include "fsol/scenario.hpp"

namespace fsol {

struct GenConfig {
    enum class Mode { RefinedSound, BaselineHoles };
    uint64_t seed = 1;
    int sizeBudget = 120;
    Mode mode = Mode::RefinedSound;
    int maxContracts = 4;
    int maxFunctions = 4;
    int maxTxs = 6;
};

// All randomness flows through here; never through raw distributions,
// whose sequences differ across standard library implementations.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next() { return engine_(); }

    // Uniform in [0, n) by rejection, bias-free.
    uint64_t below(uint64_t n);

    bool chance(int percent) { return below(100) < static_cast<uint64_t>(percent); }

    template <typename T>
    const T& pick(const std::vector<T>& items) {
        return items[below(items.size())];
    }

private:
    std::mt19937_64 engine_;
};

uint64_t deriveCaseSeed(uint64_t campaignSeed, uint64_t index);

// Derivation-directed: the output is accepted by the mode's checker by
// construction, never by filtering.
Program generateProgram(const GenConfig& cfg);

Scenario generateScenario(const GenConfig& cfg, const Program& p, const ContractTable& t);

struct ViolationRecord {
    size_t caseIndex = 0;
    uint64_t caseSeed = 0;
    std::string kind; // forbidden-revert | rollback | wei | resolve-failed | checker-rejected | entry-invalid | deploy-failed
    std::string detail;
    std::string reason; // revert reason name for forbidden-revert
    std::string program;
    std::string scenarioJson;
};

struct CampaignReport {
    GenConfig::Mode mode = GenConfig::Mode::RefinedSound;
    uint64_t seed = 0;
    size_t count = 0;
    size_t programsGenerated = 0;
    size_t programsAccepted = 0;
    uint64_t transactionsExecuted = 0;
    uint64_t successes = 0;
    std::map<std::string, uint64_t> revertHistogram;
    std::vector<ViolationRecord> violations;
};

// Per-case outcome of the generate→check→run pipeline; also drives the
// shrinker's "still broken?" probe.
struct CaseResult {
    bool resolved = false;
    bool accepted = false;
    bool entryValid = false;
    bool deployOk = false;
    uint64_t txExecuted = 0;
    uint64_t successes = 0;
    std::map<std::string, uint64_t> revertHistogram;
    std::string violationKind;
    std::string violationReason;
    std::string violationDetail;

    bool violated() const { return !violationKind.empty(); }
};

CaseResult evaluateCase(const Program& p, const Scenario& sc, GenConfig::Mode mode);

// Greedy structural deletion, re-running the pipeline after each cut; the
// result still typechecks and still shows the same violation.
void shrinkCase(Program& p, Scenario& sc, GenConfig::Mode mode, const std::string& kind,
                const std::string& reason);

// reproducerDir empty = never write reproducer files.
CampaignReport runCampaign(const GenConfig& base, size_t count, int jobs,
                           const std::string& reproducerDir);

std::string renderCampaignReport(const CampaignReport& report);
std::string campaignReportToJson(const CampaignReport& report);

} // namespace fsol

#endif
