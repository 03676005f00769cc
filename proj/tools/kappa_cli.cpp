// Command-line front end: verification campaigns over configurable orders and
// parameters, phenomenology tables, machine-readable reports.

#include <CLI11.hpp>

#include "kappa/suites.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace kappa;

std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        std::string item =
            comma == std::string::npos ? text.substr(pos) : text.substr(pos, comma - pos);
        if (!item.empty()) out.push_back(parse_rational(item));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw CLI::ValidationError("--out", "cannot open output file " + path);
    os << content;
}

int finish_report(const VerificationReport& rep, const std::string& out_path, bool quiet) {
    if (!quiet) rep.print(std::cout);
    if (!out_path.empty()) write_output(out_path, rep.to_json());
    return rep.overall() ? 0 : 1;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification engine for kappa-deformed spacetime algebras"};
    app.require_subcommand(1);

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "run a verification campaign");
    verify->set_config("--config", "", "read options from a key = value file mirroring the flags");
    std::string target = "all";
    verify->add_option("target", target, "twist | hopf | realization | qanalog | all")
        ->check(CLI::IsMember({"twist", "hopf", "realization", "qanalog", "all"}));
    int order = 6;
    verify->add_option("--order", order, "truncation order N (default 6)")
        ->check(CLI::Range(1, 10));
    std::string s_list = "0,1/4,1/2,1", r_list = "-1,1,2";
    verify->add_option("--s", s_list, "abelian twist parameters, comma separated");
    verify->add_option("--r", r_list, "jordanian twist parameters, comma separated");
    std::string kappa_str = "1";
    verify->add_option("--kappa", kappa_str, "q-analog parameter (nonzero rational)");
    std::string realization_kind = "all";
    verify->add_option("--realization", realization_kind,
                       "covariant | noncovariant | abelian | jordanian | all")
        ->check(CLI::IsMember({"covariant", "noncovariant", "abelian", "jordanian", "all"}));
    std::string psi_str = "1", gamma_str = "0";
    verify->add_option("--psi", psi_str, "series literal for psi (noncovariant realization)");
    verify->add_option("--gamma", gamma_str, "series literal for gamma");
    int random_bundles = 20;
    verify->add_option("--random-bundles", random_bundles, "random (psi, gamma) samples");
    int star_triples = 10;
    verify->add_option("--star-triples", star_triples, "random star-associativity samples");
    bool serial = false;
    verify->add_flag("--serial", serial, "run checks on one thread (reference mode)");
    bool quiet = false;
    verify->add_flag("--quiet", quiet, "suppress the per-check lines");
    std::string out_path;
    verify->add_option("--out", out_path, "write the JSON report here");

    // ---- pheno ----
    auto* pheno = app.add_subcommand("pheno", "deformed-dispersion phenomenology tables");
    pheno->require_subcommand(1);

    auto* disp = pheno->add_subcommand("dispersion", "series coefficients of |p|(p0)");
    std::string d_psi = "1", d_gamma = "0", d_out;
    int d_order = 6;
    disp->add_option("--psi", d_psi, "series literal");
    disp->add_option("--gamma", d_gamma, "series literal");
    disp->add_option("--order", d_order, "expansion order")->check(CLI::Range(1, 16));
    disp->add_option("--out", d_out, "output JSON path (default stdout)");

    auto* delay = pheno->add_subcommand("timedelay", "photon time-delay table");
    std::string t_model = "jordanian", t_psi = "1", t_gamma = "0", t_out, t_json_out;
    std::string t_r = "1", t_s = "0", t_kappa = "1.2e19", t_baseline = "4.7e17",
                t_energies = "1,10,100";
    int t_order = 6;
    delay->add_option("--model", t_model, "jordanian | abelian | custom")
        ->check(CLI::IsMember({"jordanian", "abelian", "custom"}));
    delay->add_option("--r", t_r, "jordanian parameter");
    delay->add_option("--s", t_s, "abelian parameter");
    delay->add_option("--psi", t_psi, "series literal (custom model)");
    delay->add_option("--gamma", t_gamma, "series literal (custom model)");
    delay->add_option("--kappa-gev", t_kappa, "deformation scale in GeV");
    delay->add_option("--baseline-s", t_baseline, "baseline time l/c in seconds");
    delay->add_option("--energies", t_energies, "photon energies in GeV, comma separated");
    delay->add_option("--order", t_order, "expansion order")->check(CLI::Range(1, 16));
    delay->add_option("--out", t_out, "output CSV path (default stdout)");
    delay->add_option("--json-out", t_json_out, "exact-rational JSON report path");

    auto* mass = pheno->add_subcommand("mass", "deformed vs. classical mass parameter");
    mass->set_help_flag("--help", "print help");  // frees --h for the parameter below
    std::string m_mh = "1", m_h = "1/2", m_out;
    mass->add_option("--mh", m_mh, "deformed mass parameter (rational)");
    mass->add_option("--h", m_h, "deformation parameter (rational)");
    mass->add_option("--out", m_out, "output path (default stdout)");

    // ---- report ----
    auto* report = app.add_subcommand("report", "merge JSON verification reports");
    std::vector<std::string> report_paths;
    report->add_option("paths", report_paths, "input report files")->required();
    std::string report_out;
    report->add_option("--out", report_out, "merged report path (default stdout)");
    bool report_quiet = false;
    report->add_flag("--quiet", report_quiet, "suppress the per-check lines");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*verify) {
            bool parallel = !serial;
            if (target == "twist") {
                TwistSuiteConfig cfg;
                cfg.order = order;
                cfg.jordanian_order = std::min(order, 5);
                cfg.abelian_s = parse_rational_list(s_list);
                cfg.jordanian_r = parse_rational_list(r_list);
                cfg.star_triples = star_triples;
                cfg.parallel = parallel;
                for (const Rational& r : cfg.jordanian_r)
                    if (r == 0) throw std::invalid_argument("jordanian r must be nonzero");
                return finish_report(run_twist_suite(cfg), out_path, quiet);
            }
            if (target == "hopf") {
                HopfSuiteConfig cfg;
                cfg.order = order;
                cfg.parallel = parallel;
                return finish_report(run_hopf_suite(cfg), out_path, quiet);
            }
            if (target == "realization") {
                RealizationSuiteConfig cfg;
                cfg.order = order + 1;
                cfg.parallel = parallel;
                cfg.random_bundles = random_bundles;
                using Kind = RealizationSuiteConfig::Kind;
                if (realization_kind == "covariant") cfg.kind = Kind::covariant;
                else if (realization_kind == "noncovariant") cfg.kind = Kind::noncovariant;
                else if (realization_kind == "abelian") cfg.kind = Kind::abelian;
                else if (realization_kind == "jordanian") cfg.kind = Kind::jordanian;
                else cfg.kind = Kind::all;
                auto ss = parse_rational_list(s_list);
                auto rs = parse_rational_list(r_list);
                if (ss.empty() || rs.empty()) throw std::invalid_argument("empty parameter list");
                cfg.s = ss.front();
                if (cfg.kind == Kind::jordanian && rs.front() == 0)
                    throw std::invalid_argument("jordanian r must be nonzero");
                cfg.r = rs.front();
                cfg.psi = TaylorSeries::parse(psi_str, cfg.order);
                cfg.gamma = TaylorSeries::parse(gamma_str, cfg.order);
                if (cfg.psi.coeff(0) != 1) throw std::invalid_argument("psi(0) must be 1");
                return finish_report(run_realization_suite(cfg), out_path, quiet);
            }
            if (target == "qanalog") {
                QAnalogSuiteConfig cfg;
                cfg.kappa = parse_rational(kappa_str);
                if (cfg.kappa == 0) throw std::invalid_argument("kappa must be nonzero");
                cfg.kappa_partner = cfg.kappa == 1 ? Rational(2) : Rational(1);
                cfg.parallel = parallel;
                return finish_report(run_qanalog_suite(cfg), out_path, quiet);
            }
            AllSuitesConfig cfg;
            cfg.order = order;
            cfg.parallel = parallel;
            return finish_report(run_all_suites(cfg), out_path, quiet);
        }

        if (*disp) {
            TaylorSeries psi = TaylorSeries::parse(d_psi, d_order);
            TaylorSeries gamma = TaylorSeries::parse(d_gamma, d_order);
            DispersionModel m = DispersionModel::make(psi, gamma, d_order);
            TaylorSeries series = dispersion_series(m);
            TaylorSeries oracle = dispersion_casimir_root(m);
            BCoefficients b = b_coefficients(m);
            std::ostringstream os;
            os << "{\n  \"psi\": \"" << d_psi << "\",\n  \"gamma\": \"" << d_gamma << "\",\n";
            os << "  \"order\": " << d_order << ",\n  \"coefficients\": [";
            for (int k = 0; k <= series.order(); ++k)
                os << (k ? ", " : "") << "\"" << to_string(series.coeff(k)) << "\"";
            os << "],\n  \"casimir_oracle_match\": " << (series == oracle ? "true" : "false") << ",\n";
            os << "  \"b1\": \"" << to_string(b.b1) << "\",\n  \"b2\": \"" << to_string(b.b2)
               << "\",\n  \"b_cross_check\": " << (b.consistent() ? "true" : "false") << "\n}\n";
            write_output(d_out, os.str());
            return 0;
        }

        if (*delay) {
            DelayScenario sc{parse_rational(t_baseline), parse_rational(t_kappa),
                             parse_rational_list(t_energies),
                             DispersionModel::make(TaylorSeries::constant(1, t_order),
                                                   TaylorSeries::zero(t_order), t_order)};
            if (sc.kappa_gev == 0) throw std::invalid_argument("kappa must be nonzero");
            std::string params;
            if (t_model == "jordanian") {
                Rational r = parse_rational(t_r);
                if (r == 0) throw std::invalid_argument("jordanian r must be nonzero");
                TaylorSeries psi = TaylorSeries::constant(1, t_order);
                psi.set_coeff(1, r);
                sc.model = DispersionModel::make(psi, TaylorSeries::zero(t_order), t_order);
                params = "r=" + to_string(r);
            } else if (t_model == "abelian") {
                Rational s = parse_rational(t_s);
                sc.model = DispersionModel::make(TaylorSeries::constant(1, t_order),
                                                 TaylorSeries::constant(s, t_order), t_order);
                params = "s=" + to_string(s);
            } else {
                TaylorSeries psi = TaylorSeries::parse(t_psi, t_order);
                TaylorSeries gamma = TaylorSeries::parse(t_gamma, t_order);
                sc.model = DispersionModel::make(psi, gamma, t_order);
                params = "psi=" + t_psi + ";gamma=" + t_gamma;
            }
            auto rows = time_delay(sc);
            std::ostringstream csv;
            csv << "energy_gev,kappa_gev,baseline_s,b1,b2,delta_t_s,model,params\n";
            for (const auto& row : rows) {
                csv << to_decimal(row.energy_gev) << "," << to_decimal(sc.kappa_gev) << ","
                    << to_decimal(sc.baseline_s) << "," << to_string(row.b1) << ","
                    << to_string(row.b2) << "," << to_decimal(row.delta_t_s) << "," << t_model
                    << "," << csv_escape(params) << "\n";
            }
            write_output(t_out, csv.str());
            if (!t_json_out.empty()) {
                std::ostringstream js;
                js << "{\n  \"model\": \"" << t_model << "\",\n  \"params\": \"" << params
                   << "\",\n  \"kappa_gev\": \"" << to_string(sc.kappa_gev)
                   << "\",\n  \"baseline_s\": \"" << to_string(sc.baseline_s) << "\",\n  \"rows\": [";
                for (std::size_t k = 0; k < rows.size(); ++k) {
                    js << (k ? ",\n    " : "\n    ");
                    js << "{\"energy_gev\": \"" << to_string(rows[k].energy_gev) << "\", \"b1\": \""
                       << to_string(rows[k].b1) << "\", \"b2\": \"" << to_string(rows[k].b2)
                       << "\", \"delta_t_s\": \"" << to_string(rows[k].delta_t_s) << "\"}";
                }
                js << "\n  ]\n}\n";
                write_output(t_json_out, js.str());
            }
            return 0;
        }

        if (*mass) {
            Rational mh = parse_rational(m_mh), h = parse_rational(m_h);
            Rational m_ph2 = mass_relation(mh, h);
            std::ostringstream os;
            os << to_string(m_ph2) << "\n";
            write_output(m_out, os.str());
            return mass_relation_oracle(mh) ? 0 : 1;
        }

        if (*report) {
            std::vector<VerificationReport> reports;
            for (const auto& path : report_paths) {
                std::ifstream is(path, std::ios::binary);
                if (!is) {
                    std::cerr << "error: cannot read report " << path << "\n";
                    return 2;
                }
                std::ostringstream buf;
                buf << is.rdbuf();
                reports.push_back(VerificationReport::from_json(buf.str()));
            }
            VerificationReport merged = merge_reports(reports);
            if (!report_quiet) merged.print(std::cout);
            if (!report_out.empty()) write_output(report_out, merged.to_json());
            return merged.overall() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
