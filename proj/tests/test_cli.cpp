#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// End-to-end tests of the command-line binary: exit-code contract and
// deterministic outputs. KAPPA_CLI_PATH is injected by the build.

namespace {

struct RunResult {
    int exit_code;
    std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(KAPPA_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("verify exits 0 on a passing campaign") {
    RunResult r = run_cli("verify twist --order 3 --s 1/2 --r 1 --star-triples 1 --quiet");
    CHECK(r.exit_code == 0);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli("verify bogus-target").exit_code == 2);
    CHECK(run_cli("verify twist --order 0").exit_code == 2);
    CHECK(run_cli("verify twist --r 0 --order 3").exit_code == 2);
    CHECK(run_cli("report /nonexistent/path.json").exit_code == 2);
    CHECK(run_cli("pheno timedelay --model jordanian --r 0").exit_code == 2);
    CHECK(run_cli("pheno timedelay --kappa-gev abc").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);
}

TEST_CASE("pheno mass prints the exact rational") {
    RunResult r = run_cli("pheno mass --mh 1 --h 1/2");
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text == "15/16\n");
}

TEST_CASE("timedelay emits the documented CSV header and three rows") {
    RunResult r = run_cli(
        "pheno timedelay --model jordanian --r 1 --kappa-gev 1.2e19 --baseline-s 4.7e17 "
        "--energies 1,10,100");
    CHECK(r.exit_code == 0);
    std::istringstream is(r.stdout_text);
    std::string header;
    std::getline(is, header);
    CHECK(header == "energy_gev,kappa_gev,baseline_s,b1,b2,delta_t_s,model,params");
    int rows = 0;
    std::string line;
    while (std::getline(is, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 3);
}

TEST_CASE("outputs are byte-identical across runs") {
    RunResult a = run_cli("pheno dispersion --psi 1,1 --gamma 0 --order 4");
    RunResult b = run_cli("pheno dispersion --psi 1,1 --gamma 0 --order 4");
    CHECK(a.exit_code == 0);
    CHECK(a.stdout_text == b.stdout_text);

    RunResult va = run_cli("verify qanalog --kappa 1 --quiet --out /tmp/kappa_cli_test_a.json");
    RunResult vb = run_cli("verify qanalog --kappa 1 --quiet --out /tmp/kappa_cli_test_b.json");
    CHECK(va.exit_code == 0);
    CHECK(vb.exit_code == 0);
    CHECK(slurp("/tmp/kappa_cli_test_a.json") == slurp("/tmp/kappa_cli_test_b.json"));
    // serial reference produces the identical report
    RunResult vs = run_cli("verify qanalog --kappa 1 --quiet --serial --out /tmp/kappa_cli_test_s.json");
    CHECK(vs.exit_code == 0);
    CHECK(slurp("/tmp/kappa_cli_test_s.json") == slurp("/tmp/kappa_cli_test_a.json"));
}

TEST_CASE("report merging: pass+pass = pass, and failures propagate") {
    REQUIRE(run_cli("verify qanalog --kappa 1 --quiet --out /tmp/kappa_cli_q.json").exit_code == 0);
    CHECK(run_cli("report /tmp/kappa_cli_q.json /tmp/kappa_cli_q.json --quiet").exit_code == 0);

    // hand-crafted failing report
    std::ofstream bad("/tmp/kappa_cli_bad.json");
    bad << R"({"campaign":"x","checks":[{"id":"broken","status":"fail",)"
        << R"("effective_order":3,"residual_nonzero_terms":"h P0"}],"overall":"fail"})";
    bad.close();
    CHECK(run_cli("report /tmp/kappa_cli_q.json /tmp/kappa_cli_bad.json --quiet").exit_code == 1);
}

TEST_CASE("config file mirrors the flags") {
    std::ofstream cfg("/tmp/kappa_cli_cfg.ini");
    cfg << "order = 3\nquiet = true\n";
    cfg.close();
    RunResult direct = run_cli("verify qanalog --kappa 1 --quiet --out /tmp/kappa_cli_cfg_a.json");
    RunResult via_cfg =
        run_cli("verify qanalog --kappa 1 --config /tmp/kappa_cli_cfg.ini --out /tmp/kappa_cli_cfg_b.json");
    CHECK(direct.exit_code == 0);
    CHECK(via_cfg.exit_code == 0);
    CHECK(slurp("/tmp/kappa_cli_cfg_a.json") == slurp("/tmp/kappa_cli_cfg_b.json"));
}
