#pragma once

#include "kappa/pbw.hpp"

#include <functional>
#include <iosfwd>

namespace kappa {

// A verification campaign: named checks with exact residuals.
struct VerificationReport {
    std::string campaign;
    std::vector<RelationResult> checks;

    bool overall() const;
    std::size_t failed_count() const;

    // {"campaign": ..., "checks": [{id, status, effective_order,
    //  residual_nonzero_terms}], "overall": "pass"|"fail"}
    std::string to_json() const;
    static VerificationReport from_json(const std::string& text);

    // one line per check, deterministic order
    void print(std::ostream& os) const;
};

VerificationReport merge_reports(const std::vector<VerificationReport>& reports);

// Deferred check group used by the campaign runners. Groups are pure and
// independent; the parallel runner distributes them over OpenMP threads and
// produces results in the same order as the serial reference.
using CheckFn = std::function<std::vector<RelationResult>()>;

std::vector<RelationResult> run_checks_serial(const std::vector<CheckFn>& checks);
std::vector<RelationResult> run_checks_parallel(const std::vector<CheckFn>& checks);
std::vector<RelationResult> run_checks(const std::vector<CheckFn>& checks, bool parallel);

}  // namespace kappa
