#include "kappa/report.hpp"

#include <json.hpp>
#include <omp.h>

#include <ostream>

namespace kappa {

bool VerificationReport::overall() const {
    for (const auto& c : checks)
        if (!c.ok) return false;
    return true;
}

std::size_t VerificationReport::failed_count() const {
    std::size_t n = 0;
    for (const auto& c : checks)
        if (!c.ok) ++n;
    return n;
}

std::string VerificationReport::to_json() const {
    nlohmann::json j;
    j["campaign"] = campaign;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json jc;
        jc["id"] = c.name;
        jc["status"] = c.ok ? "pass" : "fail";
        jc["effective_order"] = c.effective_order;
        jc["residual_nonzero_terms"] = c.residual;
        j["checks"].push_back(std::move(jc));
    }
    j["overall"] = overall() ? "pass" : "fail";
    return j.dump(2) + "\n";
}

VerificationReport VerificationReport::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    VerificationReport rep;
    rep.campaign = j.value("campaign", "");
    for (const auto& jc : j.at("checks")) {
        RelationResult r;
        r.name = jc.at("id").get<std::string>();
        r.ok = jc.at("status").get<std::string>() == "pass";
        r.effective_order = jc.at("effective_order").get<int>();
        r.residual = jc.value("residual_nonzero_terms", "");
        rep.checks.push_back(std::move(r));
    }
    return rep;
}

void VerificationReport::print(std::ostream& os) const {
    for (const auto& c : checks) {
        os << (c.ok ? "pass" : "FAIL") << "  " << c.name << "  (order " << c.effective_order << ")";
        if (!c.ok) os << "  residual: " << c.residual;
        os << "\n";
    }
    os << campaign << ": " << (overall() ? "pass" : "FAIL") << " (" << checks.size() - failed_count()
       << "/" << checks.size() << ")\n";
}

VerificationReport merge_reports(const std::vector<VerificationReport>& reports) {
    VerificationReport merged;
    merged.campaign = "merged";
    for (const auto& rep : reports) {
        for (const auto& c : rep.checks) {
            RelationResult r = c;
            if (!rep.campaign.empty() && rep.campaign != "merged") r.name = rep.campaign + "/" + r.name;
            merged.checks.push_back(std::move(r));
        }
    }
    return merged;
}

namespace {

std::vector<RelationResult> flatten(std::vector<std::vector<RelationResult>> groups) {
    std::vector<RelationResult> out;
    for (auto& g : groups)
        for (auto& r : g) out.push_back(std::move(r));
    return out;
}

}  // namespace

std::vector<RelationResult> run_checks_serial(const std::vector<CheckFn>& checks) {
    std::vector<std::vector<RelationResult>> groups(checks.size());
    for (std::size_t k = 0; k < checks.size(); ++k) groups[k] = checks[k]();
    return flatten(std::move(groups));
}

std::vector<RelationResult> run_checks_parallel(const std::vector<CheckFn>& checks) {
    std::vector<std::vector<RelationResult>> groups(checks.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t k = 0; k < checks.size(); ++k) groups[k] = checks[k]();
    return flatten(std::move(groups));
}

std::vector<RelationResult> run_checks(const std::vector<CheckFn>& checks, bool parallel) {
    return parallel ? run_checks_parallel(checks) : run_checks_serial(checks);
}

}  // namespace kappa
