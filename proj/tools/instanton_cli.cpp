// Reproducible command-line front end for the instanton pipeline. Every
// document carries its full configuration; identical invocations must produce
// byte-identical output.
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "semiclassic/dilute_gas.hpp"
#include "semiclassic/fluctuations.hpp"
#include "semiclassic/instanton.hpp"
#include "semiclassic/potentials.hpp"
#include "semiclassic/spectral_oracle.hpp"

using json = nlohmann::ordered_json;
using namespace semiclassic;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr const char* kNormalization =
    "V(x) = (omega^2/2) x^2 (x^2-1)^2, mass = 1";

struct RunConfig {
    std::string command;
    double omega = 10.0;
    double big_t = 3.0;        // resolved default: 30/omega
    bool big_t_given = false;
    double half_width = 3.0;   // L
    int points = 4000;         // N
    double reference_nu = 15.0;
    bool nu_given = false;
    int states = 3;
    std::string omega_range = "4:30:2";
    bool sweep_mode = false;
    std::string check_file;
    std::string format = "json";
    std::string out_path;
};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Comma-separated but space-padded so the comparison table reads as columns.
std::string align_row(const std::string& a, const std::string& b, const std::string& c,
                      const std::string& d, const std::string& e) {
    char row[160];
    std::snprintf(row, sizeof row, "%-5s,%-24s,%-12s,%-24s,%s\n", a.c_str(), b.c_str(),
                  c.c_str(), d.c_str(), e.c_str());
    return row;
}

json metadata(const RunConfig& cfg) {
    json m;
    m["schema_version"] = 1;
    m["artifact_version"] = kVersion;
    m["command"] = cfg.command;
    m["normalization"] = kNormalization;
    m["omega"] = cfg.omega;
    m["T"] = cfg.big_t;
    m["reference_nu"] = cfg.reference_nu;
    m["L"] = cfg.half_width;
    m["N"] = cfg.points;
    return m;
}

void csv_metadata(std::ostream& os, const RunConfig& cfg) {
    os << "# schema_version = 1\n"
       << "# artifact_version = " << kVersion << "\n"
       << "# command = " << cfg.command << "\n"
       << "# normalization = " << kNormalization << "\n"
       << "# omega = " << num(cfg.omega) << "\n"
       << "# T = " << num(cfg.big_t) << "\n"
       << "# reference_nu = " << num(cfg.reference_nu) << "\n"
       << "# L = " << num(cfg.half_width) << "\n"
       << "# N = " << cfg.points << "\n";
}

// large results live as (value-or-null, natural log of |value|)
void put_scaled(json& j, const std::string& key, const ScaledValue& v) {
    if (v.zero()) {
        j[key] = 0.0;
        j[key + "_log"] = nullptr;
        return;
    }
    j[key] = v.representable() ? json(v.value()) : json(nullptr);
    j[key + "_log"] = v.log_abs();
}

std::string scaled_csv(const ScaledValue& v) {
    if (v.zero()) return "0,";
    std::string cell = v.representable() ? num(v.value()) : "";
    return cell + "," + num(v.log_abs());
}

const char* parity_name(Parity p) { return p == Parity::Even ? "even" : "odd"; }

// ---------------------------------------------------------------- commands

std::string run_profile(const RunConfig& cfg) {
    InstantonProfile p = closed_form_instanton(cfg.omega, 0.0);
    int n = cfg.points | 1;  // odd count puts a sample exactly at tau = 0
    double lo = -0.5 * cfg.big_t, step = cfg.big_t / (n - 1);

    if (cfg.format == "csv") {
        std::ostringstream os;
        csv_metadata(os, cfg);
        os << "tau,x_c,dx_c_dtau\n";
        for (int i = 0; i < n; ++i) {
            double tau = lo + step * i;
            os << num(tau) << ',' << num(p.position(tau)) << ','
               << num(p.velocity(tau)) << '\n';
        }
        return os.str();
    }
    json doc;
    doc["metadata"] = metadata(cfg);
    doc["action"] = p.action();
    json rows = json::array();
    for (int i = 0; i < n; ++i) {
        double tau = lo + step * i;
        rows.push_back({tau, p.position(tau), p.velocity(tau)});
    }
    doc["columns"] = {"tau", "x_c", "dx_c_dtau"};
    doc["samples"] = rows;
    return doc.dump(2) + "\n";
}

std::string run_action(const RunConfig& cfg) {
    InstantonProfile numeric =
        numeric_instanton(triple_well(cfg.omega), 0.0, 1.0, 0.0, 1e-12);
    double closed = 0.25 * cfg.omega;
    double got = numeric.action();

    if (cfg.format == "csv") {
        std::ostringstream os;
        csv_metadata(os, cfg);
        os << "omega,closed_form_action,numeric_action,abs_difference\n"
           << num(cfg.omega) << ',' << num(closed) << ',' << num(got) << ','
           << num(std::fabs(got - closed)) << '\n';
        return os.str();
    }
    json doc;
    doc["metadata"] = metadata(cfg);
    doc["closed_form_action"] = closed;
    doc["numeric_action"] = got;
    doc["abs_difference"] = std::fabs(got - closed);
    return doc.dump(2) + "\n";
}

std::string run_determinant(const RunConfig& cfg) {
    DeterminantReport r = determinant_report(cfg.omega, cfg.big_t, cfg.reference_nu);

    if (cfg.format == "csv") {
        std::ostringstream os;
        csv_metadata(os, cfg);
        os << "gy_value,gy_value_log,reference_value,reference_value_log,"
              "raw_ratio,raw_ratio_log,lowest_eigenvalue,lowest_eigenvalue_log,"
              "reduced_ratio,reduced_ratio_log,jacobian\n";
        os << scaled_csv(r.gy_value) << ',' << scaled_csv(r.reference_value) << ','
           << scaled_csv(r.raw_ratio) << ',' << scaled_csv(r.lowest_eigenvalue) << ','
           << scaled_csv(r.reduced_ratio) << ',' << num(r.jacobian) << '\n';
        return os.str();
    }
    json doc;
    doc["metadata"] = metadata(cfg);
    put_scaled(doc, "gy_value", r.gy_value);
    put_scaled(doc, "reference_value", r.reference_value);
    put_scaled(doc, "raw_ratio", r.raw_ratio);
    put_scaled(doc, "lowest_eigenvalue", r.lowest_eigenvalue);
    put_scaled(doc, "reduced_ratio", r.reduced_ratio);
    doc["jacobian"] = r.jacobian;
    return doc.dump(2) + "\n";
}

std::string run_density(const RunConfig& cfg) {
    if (cfg.sweep_mode) {
        std::vector<double> omegas;
        {
            double a, b, s;
            char c1, c2;
            std::istringstream is(cfg.omega_range);
            if (!(is >> a >> c1 >> b >> c2 >> s) || c1 != ':' || c2 != ':' ||
                !(a > 0.0) || !(s > 0.0) || b < a)
                throw DomainError("omega range must be start:stop:step with "
                                  "positive start and step");
            for (double w = a; w <= b + 1e-12; w += s) omegas.push_back(w);
        }
        std::ostringstream os;
        if (cfg.format == "csv") {
            csv_metadata(os, cfg);
            os << "omega,S_eo,d,E_o,E_1,E_2\n";
            for (double w : omegas) {
                DiluteGasSpectrum s = predicted_spectrum(w);
                os << num(w) << ',' << num(0.25 * w) << ',' << num(s.density) << ','
                   << num(s.levels[0]) << ',' << num(s.levels[1]) << ','
                   << num(s.levels[2]) << '\n';
            }
            return os.str();
        }
        json doc;
        doc["metadata"] = metadata(cfg);
        doc["rows"] = json::array();
        for (double w : omegas) {
            DiluteGasSpectrum s = predicted_spectrum(w);
            doc["rows"].push_back({{"omega", w},
                                   {"S_eo", 0.25 * w},
                                   {"d", s.density},
                                   {"E_o", s.levels[0]},
                                   {"E_1", s.levels[1]},
                                   {"E_2", s.levels[2]}});
        }
        return doc.dump(2) + "\n";
    }

    double d = instanton_density(cfg.omega);
    if (cfg.format == "csv") {
        std::ostringstream os;
        csv_metadata(os, cfg);
        os << "omega,S_eo,d,dilute\n"
           << num(cfg.omega) << ',' << num(0.25 * cfg.omega) << ',' << num(d) << ','
           << (dilute_regime(cfg.omega) ? 1 : 0) << '\n';
        return os.str();
    }
    json doc;
    doc["metadata"] = metadata(cfg);
    doc["S_eo"] = 0.25 * cfg.omega;
    doc["d"] = d;
    doc["dilute"] = dilute_regime(cfg.omega);
    return doc.dump(2) + "\n";
}

std::string run_spectrum(const RunConfig& cfg) {
    DiluteGasSpectrum s = predicted_spectrum(cfg.omega);
    if (cfg.format == "csv") {
        std::ostringstream os;
        csv_metadata(os, cfg);
        os << "omega,density,reference_energy,splitting,E_o,E_1,E_2,dilute\n"
           << num(s.omega) << ',' << num(s.density) << ',' << num(s.reference_energy)
           << ',' << num(s.splitting) << ',' << num(s.levels[0]) << ','
           << num(s.levels[1]) << ',' << num(s.levels[2]) << ','
           << (s.dilute ? 1 : 0) << '\n';
        return os.str();
    }
    json doc;
    doc["metadata"] = metadata(cfg);
    doc["density"] = s.density;
    doc["reference_energy"] = s.reference_energy;
    doc["splitting"] = s.splitting;
    doc["levels"] = s.levels;
    doc["dilute"] = s.dilute;
    return doc.dump(2) + "\n";
}

std::string run_oracle(const RunConfig& cfg) {
    GridSpec grid{cfg.half_width, cfg.points};
    OracleSpectrum s = diagonalize(triple_well(cfg.omega), grid, cfg.states);

    if (cfg.format == "csv") {
        std::ostringstream os;
        csv_metadata(os, cfg);
        os << "state,energy,parity,boundary_leakage\n";
        for (std::size_t i = 0; i < s.energies.size(); ++i)
            os << i << ',' << num(s.energies[i]) << ',' << parity_name(s.parities[i])
               << ',' << num(s.boundary_leakage[i]) << '\n';
        return os.str();
    }
    json doc;
    doc["metadata"] = metadata(cfg);
    doc["energies"] = s.energies;
    json parities = json::array();
    for (Parity p : s.parities) parities.push_back(parity_name(p));
    doc["parities"] = parities;
    doc["boundary_leakage"] = s.boundary_leakage;
    return doc.dump(2) + "\n";
}

std::string run_compare(const RunConfig& cfg) {
    ComparisonTable t = compare_report(cfg.omega, GridSpec{cfg.half_width, cfg.points});

    if (cfg.format == "csv") {
        std::ostringstream os;
        csv_metadata(os, cfg);
        os << "# exact_splitting = " << num(t.exact_splitting) << "\n"
           << "# predicted_splitting = " << num(t.predicted_splitting) << "\n"
           << "# central_harmonic = " << num(t.central_harmonic) << "\n"
           << "# lateral_harmonic = " << num(t.lateral_harmonic) << "\n"
           << "# fitted_splitting_slope = " << num(t.fitted_splitting_slope) << "\n"
           << "# analytic_splitting_slope = " << num(t.analytic_splitting_slope) << "\n"
           << align_row("level", "exact", "exact_parity", "predicted", "difference");
        for (std::size_t i = 0; i < 3; ++i)
            os << align_row(std::to_string(i), num(t.exact_levels[i]),
                            parity_name(t.exact_parities[i]), num(t.predicted_levels[i]),
                            num(t.differences[i]));
        return os.str();
    }
    json doc;
    doc["metadata"] = metadata(cfg);
    doc["exact_levels"] = t.exact_levels;
    json parities = json::array();
    for (Parity p : t.exact_parities) parities.push_back(parity_name(p));
    doc["exact_parities"] = parities;
    doc["predicted_levels"] = t.predicted_levels;
    doc["differences"] = t.differences;
    doc["exact_splitting"] = t.exact_splitting;
    doc["predicted_splitting"] = t.predicted_splitting;
    doc["central_harmonic"] = t.central_harmonic;
    doc["lateral_harmonic"] = t.lateral_harmonic;
    doc["fitted_splitting_slope"] = t.fitted_splitting_slope;
    doc["analytic_splitting_slope"] = t.analytic_splitting_slope;
    return doc.dump(2) + "\n";
}

struct SweepRow {
    double omega, action, density;
    std::array<double, 3> predicted;
    std::array<double, 3> exact;
};

std::string run_sweep(const RunConfig& cfg) {
    std::vector<double> omegas;
    {
        double a, b, s;
        char c1, c2;
        std::istringstream is(cfg.omega_range);
        if (!(is >> a >> c1 >> b >> c2 >> s) || c1 != ':' || c2 != ':' ||
            !(a > 0.0) || !(s > 0.0) || b < a)
            throw DomainError("omega range must be start:stop:step with positive "
                              "start and step");
        for (double w = a; w <= b + 1e-12; w += s) omegas.push_back(w);
    }

    // evaluate concurrently, emit strictly in ascending omega order
    std::vector<std::future<SweepRow>> futures;
    for (double w : omegas)
        futures.push_back(std::async(std::launch::async, [&cfg, w] {
            DiluteGasSpectrum s = predicted_spectrum(w);
            OracleSpectrum o =
                diagonalize(triple_well(w), GridSpec{cfg.half_width, cfg.points}, 3);
            return SweepRow{w, 0.25 * w, s.density, s.levels,
                            {o.energies[0], o.energies[1], o.energies[2]}};
        }));

    std::vector<SweepRow> rows;
    for (auto& f : futures) rows.push_back(f.get());

    if (cfg.format == "csv") {
        std::ostringstream os;
        csv_metadata(os, cfg);
        os << "omega,S_eo,d,E_o_pred,E_1_pred,E_2_pred,E_o_exact,E_1_exact,"
              "E_2_exact\n";
        for (const SweepRow& r : rows)
            os << num(r.omega) << ',' << num(r.action) << ',' << num(r.density) << ','
               << num(r.predicted[0]) << ',' << num(r.predicted[1]) << ','
               << num(r.predicted[2]) << ',' << num(r.exact[0]) << ','
               << num(r.exact[1]) << ',' << num(r.exact[2]) << '\n';
        return os.str();
    }
    json doc;
    doc["metadata"] = metadata(cfg);
    doc["rows"] = json::array();
    for (const SweepRow& r : rows)
        doc["rows"].push_back({{"omega", r.omega},
                               {"S_eo", r.action},
                               {"d", r.density},
                               {"predicted", r.predicted},
                               {"exact", r.exact}});
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------- selftest

int run_selftest(const RunConfig& cfg, std::ostream& os) {
    int failures = 0;
    auto check = [&](const char* name, bool ok) {
        os << (ok ? "ok:   " : "FAIL: ") << name << "\n";
        if (!ok) ++failures;
    };
    auto rel = [](double a, double b) { return std::fabs(a / b - 1.0); };

    if (!cfg.check_file.empty()) {
        std::ifstream in(cfg.check_file);
        if (!in) {
            std::cerr << "error: selftest: validation: cannot open "
                      << cfg.check_file << "\n";
            return 1;
        }
        json doc;
        try {
            in >> doc;
            double w = doc.at("metadata").at("omega").get<double>();
            double t = doc.at("metadata").at("T").get<double>();
            double nu = doc.at("metadata").at("reference_nu").get<double>();
            double gy_log = doc.at("gy_value_log").get<double>();
            double ref_log = doc.at("reference_value_log").get<double>();
            double raw_log = doc.at("raw_ratio_log").get<double>();
            double lam_log = doc.at("lowest_eigenvalue_log").get<double>();
            double red_log = doc.at("reduced_ratio_log").get<double>();
            double jac = doc.at("jacobian").get<double>();

            check("raw ratio = gy / reference (log identity)",
                  std::fabs(raw_log - (gy_log - ref_log)) < 1e-9);
            check("reduced ratio = raw / lowest eigenvalue (log identity)",
                  std::fabs(red_log - (raw_log - lam_log)) < 1e-9);
            check("lowest eigenvalue = 2 omega D^2 e^{-omega T}, D = 2 sqrt(omega)",
                  std::fabs(lam_log - (std::log(8.0 * w * w) - w * t)) < 1e-9);
            check("jacobian = sqrt(S_eo / 2 pi)",
                  std::fabs(jac - std::sqrt(0.25 * w / (2.0 * M_PI))) < 1e-12);
            check("reference value = sinh(nu T)/nu",
                  std::fabs(ref_log - reference_terminal(nu, t).log_abs()) < 1e-9);
            check("terminal value reproducible from scratch",
                  std::fabs(gy_log -
                            gy_terminal(stability_operator(
                                            closed_form_instanton(w, 0.0), t))
                                .log_abs()) < 1e-8);
        } catch (const json::exception& e) {
            std::cerr << "error: selftest: validation: " << e.what() << "\n";
            return 1;
        }
        os << (failures == 0 ? "all identities hold\n" : "identity check failed\n");
        return failures == 0 ? 0 : 2;
    }

    InstantonProfile closed = closed_form_instanton(1.0, 0.0);
    InstantonProfile numeric = numeric_instanton(triple_well(1.0), 0.0, 1.0, 0.0, 1e-12);

    check("closed-form anchor x_c(0) = 1/sqrt(2)",
          closed.position(0.0) == std::sqrt(0.5));
    {
        double sup = 0.0;
        for (double t = -10.0; t <= 10.0; t += 0.25)
            sup = std::max(sup, std::fabs(closed.position(t) - numeric.position(t)));
        check("numeric profile matches closed form to 1e-8", sup < 1e-8);
    }
    check("numeric action = omega/4 to 1e-10",
          std::fabs(numeric.action() - 0.25) < 1e-10);
    check("zero mode normalized to 1e-8",
          std::fabs(zero_mode(closed).norm_check - 1.0) < 1e-8);
    {
        auto [d, c] = asymptotic_constants(numeric);
        check("asymptotic constants (D, C) = (2, 2) to 1e-6",
              std::fabs(d - 2.0) < 1e-6 && std::fabs(c - 2.0) < 1e-6);
    }
    check("terminal value vs sinh(nu T)/nu at nu=1, T=10",
          rel(gy_terminal(constant_operator(1.0, 10.0)).value(),
              std::sinh(10.0)) < 1e-8);
    check("reference terminal at T=0 vanishes",
          reference_terminal(1.0, 0.0).value() == 0.0);
    check("harmonic propagator nu=1, T=10",
          rel(harmonic_propagator(1.0, 10.0), 3.8014795152986005313e-3) < 1e-12);
    {
        DeterminantReport r = determinant_report(1.0, 30.0);
        check("determinant identity reduced * lambda = raw",
              rel((r.reduced_ratio * r.lowest_eigenvalue).value(),
                  r.raw_ratio.value()) < 1e-12);
        check("jacobian sqrt(S/2pi) at omega=1",
              rel(r.jacobian, 0.19947114020071633897) < 1e-12);
    }
    check("analytic lowest eigenvalue 8 e^{-10}",
          rel(lowest_eigenvalue_analytic(1.0, 2.0, 10.0).value(),
              3.6319943809987881228e-4) < 1e-12);
    {
        StabilityOperator op = stability_operator(closed, 10.0);
        check("numeric lowest eigenvalue within 5% of analytic",
              rel(lowest_eigenvalue_numeric(op, 4000), 8.0 * std::exp(-10.0)) < 0.05);
    }
    {
        bool ok = true;
        for (int k = 1; k <= 15; k += 2)
            ok = ok && count_configurations(k, 0, 1).count ==
                           (std::uint64_t{1} << ((k - 1) / 2));
        for (int k = 0; k <= 14; k += 2)
            ok = ok && count_configurations(k, 0, 1).count == 0;
        check("walk counts follow 2^{(k-1)/2} odd / 0 even", ok);
        bool match = true;
        for (int k = 0; k <= 12; ++k)
            match = match && count_configurations_matrix(k, 0, 1) ==
                                 count_configurations(k, 0, 1).count;
        check("matrix powers equal exhaustive enumeration", match);
    }
    check("instanton density at omega=10",
          rel(instanton_density(10.0), 0.11957578189559146511) < 1e-13);
    {
        DiluteGasSpectrum s = predicted_spectrum(10.0);
        bool levels_ok = rel(s.levels[0], 6.3042421810440853489) < 1e-13 &&
                         s.levels[1] == 7.5 &&
                         rel(s.levels[2], 8.6957578189559146511) < 1e-13;
        check("predicted triplet at omega=10", levels_ok);
        check("splitting symmetric by construction",
              std::fabs((s.levels[1] - s.levels[0]) - (s.levels[2] - s.levels[1])) <=
                  1e-15 * s.omega);
    }
    {
        std::vector<double> grid{5.0, 10.0, 15.0, 20.0};
        auto amp = [](double t) { return transition_amplitude(10.0, t).value(); };
        auto [lo, hi] = extract_energies(amp, grid);
        DiluteGasSpectrum s = predicted_spectrum(10.0);
        check("amplitude round-trips to the outer levels",
              rel(lo, s.levels[0]) < 1e-6 && rel(hi, s.levels[2]) < 1e-6);
    }
    {
        double t3 = 3.0 / (10.0 * instanton_density(10.0));
        check("15 series terms reproduce sinh at omega T d = 3",
              rel(transition_amplitude(10.0, t3, 15).value(),
                  transition_amplitude(10.0, t3).value()) < 1e-12);
    }
    check("translational volume formula k=3",
          rel(translational_volume(3, 2.0, 1.0), 8.0 / 6.0) < 1e-15);
    check("translational volume quadrature k=2",
          rel(translational_volume_quadrature(2, 1.0, 1.0), 0.5) < 1e-6);
    {
        bool ok = true;
        for (double w : {16.0, 20.0, 24.0, 28.0})
            ok = ok &&
                 std::fabs(predicted_splitting_slope(w) - (-0.25 + 1.5 / w)) < 1e-10;
        check("predicted splitting log-slope = -1/4 + 3/(2 omega)", ok);
    }
    check("scaled carrier round-trips plain values",
          ScaledValue::from(3.25).value() == 3.25 &&
              rel((ScaledValue{2.0, 400.0} / ScaledValue{1.0, 400.0}).value(), 2.0) <
                  1e-12);
    {
        ScaledValue gy = gy_terminal(stability_operator(closed, 10.0));
        double raw = (gy / reference_terminal(1.5, 10.0)).value();
        check("eigenvalue-product ratio near the terminal-value ratio",
              rel(stability_eigenproduct_ratio(1.0, 10.0, 1000), raw) < 5e-2);
    }
    {
        OracleSpectrum h = diagonalize(harmonic(1.0), GridSpec{10.0, 2001}, 1);
        check("oracle harmonic ground state near nu/2",
              rel(h.energies[0], 0.5) < 1e-4);
        OracleSpectrum tw = diagonalize(triple_well(10.0), GridSpec{3.0, 2400}, 3);
        check("triple-well parity pattern Even, Odd",
              tw.parities[0] == Parity::Even && tw.parities[1] == Parity::Odd);
    }

    os << (failures == 0 ? "all checks passed\n"
                         : std::to_string(failures) + " check(s) failed\n");
    return failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"instanton pipeline: profiles, determinants, dilute-gas spectra, "
                 "and the exact diagonalization oracle"};
    app.require_subcommand(1);

    RunConfig cfg;
    bool omega_given = false;

    auto attach = [&](CLI::App* sub, bool with_grid) {
        sub->add_option("--omega", cfg.omega, "well frequency parameter (default 10)")
            ->check(CLI::PositiveNumber)
            ->each([&](const std::string&) { omega_given = true; });
        sub->add_option("--T", cfg.big_t, "euclidean box size (default 30/omega)")
            ->check(CLI::PositiveNumber)
            ->each([&](const std::string&) { cfg.big_t_given = true; });
        sub->add_option("--nu", cfg.reference_nu,
                        "reference oscillator frequency (default 3 omega/2)")
            ->check(CLI::PositiveNumber)
            ->each([&](const std::string&) { cfg.nu_given = true; });
        if (with_grid) {
            sub->add_option("--L", cfg.half_width, "grid half width (default 3)")
                ->check(CLI::PositiveNumber);
            sub->add_option("--N", cfg.points, "grid points (default 4000)")
                ->check(CLI::PositiveNumber);
        }
        sub->add_option("--format", cfg.format, "output format (default json)")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", cfg.out_path, "output path (default stdout)");
    };

    attach(app.add_subcommand("profile", "closed-form instanton samples"), true);
    attach(app.add_subcommand("action", "numeric vs closed-form action"), false);
    attach(app.add_subcommand("determinant", "fluctuation determinant report"), true);
    CLI::App* density = app.add_subcommand("density", "instanton density");
    attach(density, false);
    density->add_flag("--sweep", cfg.sweep_mode, "emit one row per omega");
    density->add_option("--omega-range", cfg.omega_range,
                        "sweep range start:stop:step (default 4:30:2)");
    attach(app.add_subcommand("spectrum", "dilute-gas energy triplet"), false);
    CLI::App* oracle = app.add_subcommand("oracle", "exact diagonalization");
    attach(oracle, true);
    oracle->add_option("--states", cfg.states, "number of states (default 3)")
        ->check(CLI::PositiveNumber);
    attach(app.add_subcommand("compare", "predicted vs exact triplet"), true);
    CLI::App* sweep = app.add_subcommand("sweep", "density + triplets over omega");
    attach(sweep, true);
    sweep->add_option("--omega-range", cfg.omega_range,
                      "sweep range start:stop:step (default 4:30:2)");
    CLI::App* selftest = app.add_subcommand("selftest", "run the invariant suite");
    attach(selftest, false);
    selftest->add_option("--check-file", cfg.check_file,
                         "revalidate identities of a determinant JSON document");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "error: config: validation: " << e.what() << "\n";
        return 1;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    if (!cfg.big_t_given) cfg.big_t = 30.0 / cfg.omega;
    if (!cfg.nu_given) cfg.reference_nu = 1.5 * cfg.omega;
    (void)omega_given;

    try {
        std::string body;
        if (cfg.command == "profile") body = run_profile(cfg);
        else if (cfg.command == "action") body = run_action(cfg);
        else if (cfg.command == "determinant") body = run_determinant(cfg);
        else if (cfg.command == "density") body = run_density(cfg);
        else if (cfg.command == "spectrum") body = run_spectrum(cfg);
        else if (cfg.command == "oracle") body = run_oracle(cfg);
        else if (cfg.command == "compare") body = run_compare(cfg);
        else if (cfg.command == "sweep") body = run_sweep(cfg);
        else if (cfg.command == "selftest") {
            if (cfg.out_path.empty()) return run_selftest(cfg, std::cout);
            std::ofstream out(cfg.out_path);
            if (!out) {
                std::cerr << "error: selftest: validation: cannot write "
                          << cfg.out_path << "\n";
                return 1;
            }
            return run_selftest(cfg, out);
        }

        if (cfg.out_path.empty()) {
            std::cout << body;
        } else {
            std::ofstream out(cfg.out_path, std::ios::binary);
            if (!out) {
                std::cerr << "error: " << cfg.command
                          << ": validation: cannot write " << cfg.out_path << "\n";
                return 1;
            }
            out << body;
        }
        return 0;
    } catch (const DomainError& e) {
        std::cerr << "error: " << cfg.command << ": " << e.variant() << ": "
                  << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << cfg.command << ": " << e.variant() << ": "
                  << e.what() << "\n";
        return 2;
    }
}
