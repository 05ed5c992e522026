#pragma once

#include <string>
#include <vector>

namespace qpwh {

enum class Suite { specfun, contour, factor, radlow, performance, all };

Suite suite_from_string(const std::string& s);

struct CriterionResult {
    int id;
    std::string name;
    bool pass;
    double seconds;
    double time_limit;
    std::string detail;
};

// Acceptance checks for the selected suite, in criterion order.
std::vector<CriterionResult> run_suite(Suite s, int workers = 1);

// One human-readable line.
std::string format_line(const CriterionResult& r);

// One JSON object (no trailing newline).
std::string format_json(const CriterionResult& r);

} // namespace qpwh
