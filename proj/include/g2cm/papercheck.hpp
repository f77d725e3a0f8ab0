#pragma once

#include <functional>
#include <string>
#include <vector>

namespace g2cm {

struct CheckOutcome {
    bool pass = false;
    std::string detail;
};

struct CheckDef {
    std::string name;    // group.item
    int criterion;       // acceptance criterion number, 0 for supplementary checks
    std::function<CheckOutcome()> run;

    std::string group() const { return name.substr(0, name.find('.')); }
};

struct CheckResult {
    std::string name;
    int criterion;
    bool pass;
    std::string detail;
    double seconds;
};

const std::vector<CheckDef>& reference_checks();

// only: empty for all, otherwise a group name or a full check name
std::vector<CheckResult> run_reference_checks(const std::string& only = "");

}  // namespace g2cm
