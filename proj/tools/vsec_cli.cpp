// vsec: secrecy-capacity sweeps, protocol traces and cipher demos.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 computation or
// assertion failure.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "vsec/errors.hpp"
#include "vsec/kinematics.hpp"
#include "vsec/scenario.hpp"
#include "vsec/sweep.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitCompute = 2;

struct AssertionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw vsec::ConfigError("--out", "cannot write '" + out_path + "'");
    out << text;
}

void fail_on(const std::vector<std::string>& violations) {
    if (violations.empty()) return;
    for (const auto& v : violations) std::cerr << "assertion: " << v << '\n';
    throw AssertionFailure(std::to_string(violations.size()) + " ordering assertion(s) failed");
}

vsec::FadingModel parse_fading(const std::string& text) {
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    const double param = colon == std::string::npos ? 0.0 : std::stod(text.substr(colon + 1));
    if (kind == "rayleigh") return vsec::FadingModel::rayleigh();
    if (kind == "rician") return vsec::FadingModel::rician(param);
    if (kind == "nakagami") return vsec::FadingModel::nakagami(param);
    if (kind == "none") return vsec::FadingModel::fixed(0.0);
    if (kind == "fixed") return vsec::FadingModel::fixed(param);
    throw vsec::ConfigError("fading", "unknown model '" + text + "'");
}

std::string label(const std::string& name, double v) { return name + "=" + vsec::format_csv_number(v); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vehicular secrecy-capacity toolkit"};
    app.require_subcommand(1);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Secrecy capacity along one parameter axis (CSV)");
    int figure = 0;
    std::string axis = "speed";
    double from = 5.0, to = 50.0, step = 0.5;
    std::vector<double> alphas{1.4}, taus_ms{200.0}, pn0s{70.0};
    double r_m = 1000.0, speed_kmh = 80.0;
    double theta = 0.0;
    std::string out;
    sweep->add_option("--figure", figure, "Reproduce figure 4, 5, 6 or 7 and check its orderings")
        ->check(CLI::IsMember({4, 5, 6, 7}));
    sweep->add_option("--axis", axis, "speed (m/s) | power-db (dB) | tau (ms) | alpha")
        ->check(CLI::IsMember({"speed", "power-db", "tau", "alpha"}));
    sweep->add_option("--from", from, "Axis start");
    sweep->add_option("--to", to, "Axis end (inclusive)");
    sweep->add_option("--step", step, "Axis step");
    sweep->add_option("--alpha", alphas, "Path-loss exponent(s); one curve each")->delimiter(',');
    sweep->add_option("--tau-ms", taus_ms, "ACC time constant(s) in ms")->delimiter(',');
    sweep->add_option("--r-m", r_m, "Host-eavesdropper distance, m");
    sweep->add_option("--pn0-db", pn0s, "P/N0 in dB")->delimiter(',');
    sweep->add_option("--speed-kmh", speed_kmh, "Fixed speed for non-speed axes, km/h");
    auto* theta_opt = sweep->add_option("--theta", theta, "Fixed angle AEB in rad (spacing r*theta instead of v*tau)");
    sweep->add_option("--out", out, "Output path (default stdout)");

    // relay-compare
    auto* relay = app.add_subcommand("relay-compare", "Secrecy with and without a relay over host power (CSV)");
    vsec::RelayCompareSpec rspec;
    relay->add_option("--from", rspec.from_db, "P_A/sigma^2 start, dB");
    relay->add_option("--to", rspec.to_db, "P_A/sigma^2 end, dB");
    relay->add_option("--step", rspec.step_db, "Step, dB");
    relay->add_option("--h-ab", rspec.h_ab, "Host-target power gain");
    relay->add_option("--h-ae", rspec.h_ae, "Host-eavesdropper power gain");
    relay->add_option("--h-rb", rspec.h_rb, "Relay-target power gain");
    relay->add_option("--h-re", rspec.h_re, "Relay-eavesdropper power gain");
    relay->add_option("--p-r-db", rspec.p_r_db, "Relay power P_R/sigma^2, dB");
    relay->add_option("--out", out, "Output path (default stdout)");

    // ergodic-compare
    auto* ergodic = app.add_subcommand("ergodic-compare", "Ergodic secrecy capacity vs AWGN capacity (CSV)");
    vsec::ErgodicCompareSpec espec;
    std::string legit = "rayleigh", eaves = "none";
    ergodic->add_option("--from", espec.from_db, "Average power start, dB (noise = 1)");
    ergodic->add_option("--to", espec.to_db, "Average power end, dB");
    ergodic->add_option("--step", espec.step_db, "Step, dB");
    ergodic->add_option("--samples", espec.samples, "Monte-Carlo samples");
    ergodic->add_option("--seed", espec.seed, "Random seed");
    ergodic->add_option("--legit", legit, "rayleigh | rician:K | nakagami:m | fixed:A");
    ergodic->add_option("--eaves", eaves, "none | rayleigh | rician:K | nakagami:m | fixed:A");
    ergodic->add_option("--out", out, "Output path (default stdout)");

    // protocol-trace
    auto* trace = app.add_subcommand("protocol-trace", "Replay a CSI script through the link-mode protocol (CSV)");
    std::string scenario_path;
    trace->add_option("--scenario", scenario_path, "Scenario YAML file")->required();
    trace->add_option("--out", out, "Output path (default stdout)");

    // cs-demo
    auto* demo = app.add_subcommand("cs-demo", "Compressive-sensing cipher recovery statistics (CSV)");
    vsec::CsDemoSpec cspec;
    demo->add_option("--n", cspec.n, "Signal dimension");
    demo->add_option("--m", cspec.m, "Measurements");
    demo->add_option("--k", cspec.k, "Sparsity");
    demo->add_option("--trials", cspec.trials, "Trials");
    demo->add_option("--seed", cspec.seed, "Random seed");
    demo->add_option("--out", out, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (sweep->parsed()) {
            std::vector<vsec::SweepRow> rows;
            if (figure != 0) {
                for (const auto& spec : vsec::figure_sweeps(figure)) {
                    auto part = vsec::run_sweep(spec);
                    rows.insert(rows.end(), part.begin(), part.end());
                }
                emit(vsec::write_sweep_csv(rows), out);
                fail_on(vsec::check_figure(figure, rows));
                return 0;
            }
            const bool multi = alphas.size() * taus_ms.size() * pn0s.size() > 1;
            for (double a : alphas)
                for (double t : taus_ms)
                    for (double p : pn0s) {
                        vsec::SweepSpec spec;
                        spec.axis = vsec::parse_axis(axis);
                        const double scale = spec.axis == vsec::SweepAxis::Tau ? 1e-3 : 1.0;
                        spec.from = from * scale;
                        spec.to = to * scale;
                        spec.step = step * scale;
                        spec.alpha = a;
                        spec.tau_s = t * 1e-3;
                        spec.pn0_db = p;
                        spec.r_m = r_m;
                        spec.speed_mps = vsec::kmh_to_ms(speed_kmh);
                        if (*theta_opt) spec.theta = theta;
                        if (multi) {
                            std::string v;
                            if (alphas.size() > 1) v += label("alpha", a);
                            if (taus_ms.size() > 1) v += (v.empty() ? "" : ";") + label("tau_s", t * 1e-3);
                            if (pn0s.size() > 1) v += (v.empty() ? "" : ";") + label("pn0", p);
                            spec.variant = v;
                        }
                        auto part = vsec::run_sweep(spec);
                        rows.insert(rows.end(), part.begin(), part.end());
                    }
            emit(vsec::write_sweep_csv(rows), out);
        } else if (relay->parsed()) {
            emit(vsec::write_relay_csv(rspec, vsec::run_relay_compare(rspec)), out);
        } else if (ergodic->parsed()) {
            espec.legit = parse_fading(legit);
            espec.eaves = parse_fading(eaves);
            const auto rows = vsec::run_ergodic_compare(espec);
            emit(vsec::write_ergodic_csv(rows), out);
            fail_on(vsec::check_ergodic(rows));
        } else if (trace->parsed()) {
            const auto scenario = vsec::load_scenario(scenario_path);
            emit(vsec::write_trace_csv(vsec::run_protocol_trace(scenario)), out);
        } else if (demo->parsed()) {
            emit(vsec::write_cs_demo_csv(cspec, vsec::run_cs_demo(cspec)), out);
        }
    } catch (const vsec::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const vsec::DomainError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCompute;
    }
    return 0;
}
