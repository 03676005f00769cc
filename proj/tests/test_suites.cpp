#include <doctest.h>

#include "kappa/suites.hpp"

using namespace kappa;

TEST_CASE("parallel check runner matches the serial reference, order preserved") {
    std::vector<CheckFn> checks;
    for (int k = 0; k < 17; ++k) {
        checks.push_back([k]() -> std::vector<RelationResult> {
            RelationResult r;
            r.name = "check" + std::to_string(k);
            r.ok = k % 5 != 3;
            r.effective_order = k;
            return {r};
        });
    }
    auto serial = run_checks_serial(checks);
    auto parallel = run_checks_parallel(checks);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t k = 0; k < serial.size(); ++k) {
        CHECK(serial[k].name == parallel[k].name);
        CHECK(serial[k].ok == parallel[k].ok);
    }
}

TEST_CASE("campaigns are deterministic and serial/parallel agree") {
    TwistSuiteConfig cfg;
    cfg.order = 3;
    cfg.jordanian_order = 3;
    cfg.abelian_s = {Rational(1, 2)};
    cfg.jordanian_r = {Rational(1)};
    cfg.star_triples = 2;
    cfg.parallel = false;
    VerificationReport serial = run_twist_suite(cfg);
    cfg.parallel = true;
    VerificationReport parallel = run_twist_suite(cfg);
    CHECK(serial.overall());
    CHECK(serial.to_json() == parallel.to_json());
}

TEST_CASE("suite json round trip and merging") {
    QAnalogSuiteConfig cfg;
    VerificationReport rep = run_qanalog_suite(cfg);
    CHECK(rep.overall());
    VerificationReport back = VerificationReport::from_json(rep.to_json());
    CHECK(back.overall() == rep.overall());
    CHECK(back.checks.size() == rep.checks.size());

    VerificationReport merged = merge_reports({rep, back});
    CHECK(merged.checks.size() == 2 * rep.checks.size());
    CHECK(merged.overall());
    // one failure anywhere flips the conjunction
    VerificationReport bad = rep;
    bad.checks[0].ok = false;
    CHECK_FALSE(merge_reports({rep, bad}).overall());
}

TEST_CASE("hopf campaign at a reduced order") {
    HopfSuiteConfig cfg;
    cfg.order = 3;
    VerificationReport rep = run_hopf_suite(cfg);
    CHECK(rep.overall());
    CHECK(rep.checks.size() == 31);
}

TEST_CASE("realization campaign: single-kind configurations") {
    RealizationSuiteConfig cfg;
    cfg.order = 4;
    cfg.kind = RealizationSuiteConfig::Kind::covariant;
    CHECK(run_realization_suite(cfg).overall());
    cfg.kind = RealizationSuiteConfig::Kind::jordanian;
    cfg.r = Rational(2);
    CHECK(run_realization_suite(cfg).overall());
    cfg.kind = RealizationSuiteConfig::Kind::noncovariant;
    cfg.psi = TaylorSeries::parse("1,1/2", 4);
    cfg.gamma = TaylorSeries::parse("1", 4);
    CHECK(run_realization_suite(cfg).overall());
}
