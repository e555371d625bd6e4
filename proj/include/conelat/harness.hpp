#pragma once

#include <map>
#include <string>
#include <vector>

#include "conelat/quasisup.hpp"

namespace conelat {

struct CaseReport {
    std::string id;
    bool pass = false;
    bool exact = true;  // exact reference values (as opposed to property suites)
    std::map<std::string, double> deviations;
    std::vector<std::string> notes;
    double runtimeMs = 0.0;
};

struct ConformanceReport {
    std::vector<CaseReport> cases;
    bool overallPass = true;       // every case passed
    bool referencePass = true;     // every exact-reference case passed
    double totalMs = 0.0;
    std::uint64_t seed = 0;
};

// ids of all registered cases, in run order
std::vector<std::string> listCases();

bool knownCase(const std::string& id);

// runs one registered case; throws std::invalid_argument for unknown ids
CaseReport runCase(const std::string& id, std::uint64_t seed = 0);

// runs every registered case whose id contains `filter` (all when empty)
ConformanceReport runAll(std::uint64_t seed = 0, const std::string& filter = "");

}  // namespace conelat
