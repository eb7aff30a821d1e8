#include <doctest.h>

#include <cmath>
#include <string>

#include "vsec/errors.hpp"
#include "vsec/kinematics.hpp"
#include "vsec/secrecy.hpp"
#include "vsec/sweep.hpp"

using namespace vsec;

namespace {

std::vector<SweepRow> run_figure(int fig) {
    std::vector<SweepRow> rows;
    for (const auto& s : figure_sweeps(fig)) {
        auto part = run_sweep(s);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    return rows;
}

}  // namespace

TEST_CASE("axis points") {
    SweepSpec s;
    const auto pts = s.axis_points();
    CHECK(pts.size() == 91);
    CHECK(pts.front() == 5.0);
    CHECK(pts.back() == 50.0);
    s.step = 0.0;
    CHECK_THROWS_AS(s.axis_points(), DomainError);
    s.step = 1.0;
    s.to = 1.0;
    CHECK_THROWS_AS(s.axis_points(), DomainError);
}

TEST_CASE("speed sweep rows echo parameters and match velocity secrecy") {
    SweepSpec s;
    s.alpha = 2.0;
    s.tau_s = 0.3;
    s.pn0_db = 55;
    const auto rows = run_sweep(s);
    REQUIRE(rows.size() == 91);
    for (const auto& r : rows) {
        CHECK(r.axis == "speed");
        CHECK(r.v_mps == r.axis_value);
        CHECK(r.v_kmh == doctest::Approx(r.v_mps * 3.6));
        CHECK(r.alpha == 2.0);
        CHECK(r.tau_s == 0.3);
        const auto cs = velocity_secrecy(PowerBudget::from_snr_db(55), r.v_mps, AccParams(0.3), 1000, PathLossExponent(2));
        CHECK(r.cs_raw == cs.raw);
        CHECK(r.cs_clamped == cs.clamped);
    }
}

TEST_CASE("other axes") {
    SweepSpec s;
    s.axis = SweepAxis::Alpha;
    s.from = 1.0;
    s.to = 4.0;
    s.step = 0.5;
    s.speed_mps = 30.0;
    const auto rows = run_sweep(s);
    CHECK(rows.size() == 7);
    CHECK(rows[2].alpha == 2.0);
    CHECK(rows[2].v_mps == 30.0);

    s.axis = SweepAxis::Tau;
    s.from = 0.1;
    s.to = 0.4;
    s.step = 0.1;
    const auto tau_rows = run_sweep(s);
    CHECK(tau_rows.size() == 4);
    for (std::size_t i = 1; i < tau_rows.size(); ++i) CHECK(tau_rows[i].cs_raw < tau_rows[i - 1].cs_raw);

    s.axis = SweepAxis::PowerDb;
    s.from = 40;
    s.to = 70;
    s.step = 10;
    const auto p_rows = run_sweep(s);
    for (std::size_t i = 1; i < p_rows.size(); ++i) CHECK(p_rows[i].cs_raw > p_rows[i - 1].cs_raw);
    CHECK(parse_axis("power-db") == SweepAxis::PowerDb);
    CHECK_THROWS_AS(parse_axis("velocity"), ConfigError);
}

TEST_CASE("precondition errors name the offending point") {
    SweepSpec s;
    s.from = 0.0;
    s.to = 2.0;
    s.step = 1.0;
    try {
        run_sweep(s);
        FAIL("no error");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("speed=0") != std::string::npos);
    }
}

TEST_CASE("figure presets reproduce their orderings") {
    for (int fig : {4, 5, 6, 7}) {
        const auto rows = run_figure(fig);
        CHECK(!rows.empty());
        CHECK(check_figure(fig, rows).empty());
    }
    const auto f4 = run_figure(4);
    CHECK(f4.size() == 3 * 91);

    const auto f5 = run_figure(5);
    REQUIRE(f5.size() == 6);
    // Fixed-angle variant: spacing 100 m regardless of speed.
    CHECK(f5[0].variant == "theta=0.1");
    CHECK(f5[0].cs_raw == f5[2].cs_raw);
    CHECK(f5[0].cs_raw > 0.0);
    CHECK(f5[3].v_kmh == doctest::Approx(80.0));
    CHECK(f5[5].v_kmh == doctest::Approx(120.0));
    CHECK_THROWS_AS(figure_sweeps(8), ConfigError);
}

TEST_CASE("figure checks catch violations") {
    auto rows = run_figure(7);
    // Swap capacities of the first two curves' first point.
    std::swap(rows[0].cs_raw, rows[91].cs_raw);
    CHECK(!check_figure(7, rows).empty());
    auto f4 = run_figure(4);
    f4[10].cs_raw = f4[9].cs_raw + 1;
    CHECK(check_figure(4, f4).size() >= 1);
}

TEST_CASE("sweep CSV contract") {
    const auto rows = run_figure(6);
    const auto csv = write_sweep_csv(rows);
    CHECK(csv.substr(0, csv.find('\n')) == kSweepCsvHeader);
    CHECK(csv.find('\r') == std::string::npos);
    const auto parsed = parse_sweep_csv(csv);
    REQUIRE(parsed.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(parsed[i].variant == rows[i].variant);
        CHECK(parsed[i].cs_raw == doctest::Approx(rows[i].cs_raw).epsilon(1e-6));
    }
    CHECK(write_sweep_csv(parsed) == csv);

    const std::string header(kSweepCsvHeader);
    CHECK_THROWS_AS(parse_sweep_csv("bad\n"), ConfigError);
    CHECK_THROWS_AS(parse_sweep_csv(header), ConfigError);
    CHECK_THROWS_AS(parse_sweep_csv(header + "\r\n"), ConfigError);
    CHECK_THROWS_AS(parse_sweep_csv(header + "\nspeed,1,1,3.6,1,0.2,1000,70,1,1\n"), ConfigError);
    CHECK_THROWS_AS(parse_sweep_csv(header + "\nspeed,1e1,1,3.6,1,0.2,1000,70,1,1,x\n"), ConfigError);
    CHECK_THROWS_AS(parse_sweep_csv(header + "\nwarp,1,1,3.6,1,0.2,1000,70,1,1,x\n"), ConfigError);
    CHECK_THROWS_AS(parse_sweep_csv(header + "\nspeed,1.1234567,1,3.6,1,0.2,1000,70,1,1,x\n"), ConfigError);
    CHECK(parse_sweep_csv(header + "\nspeed,1,1,3.6,1,0.2,1000,70,-1.5,0,x\n").at(0).cs_raw == -1.5);
    CHECK(format_csv_number(1.0 / 3.0) == "0.333333");
    CHECK(format_csv_number(-1e-9) == "0");
    CHECK(format_csv_number(1000) == "1000");
}

TEST_CASE("relay comparison") {
    RelayCompareSpec jam;  // defaults: relay hurts eavesdropper far more than target
    for (const auto& r : run_relay_compare(jam)) {
        RelayConfig off;
        off.p_a = db_to_linear(r.pa_db);
        off.h_ab = jam.h_ab;
        off.h_ae = jam.h_ae;
        CHECK(r.direct_raw == relay_secrecy(off).raw);
        CHECK(r.relay_raw >= r.direct_raw);
    }
    RelayCompareSpec hurt = jam;
    hurt.h_rb = 10.0;
    hurt.h_re = 0.01;
    for (const auto& r : run_relay_compare(hurt)) CHECK(r.relay_raw <= r.direct_raw);
    const auto csv = write_relay_csv(jam, run_relay_compare(jam));
    CHECK(csv.rfind("pa_db,", 0) == 0);
}

TEST_CASE("ergodic comparison") {
    ErgodicCompareSpec spec;
    spec.samples = 20000;
    const auto rows = run_ergodic_compare(spec);
    CHECK(rows.size() == 10);
    CHECK(check_ergodic(rows).empty());
    for (const auto& r : rows) {
        CHECK(r.ergodic >= r.baseline);
        CHECK(r.achieved_power == doctest::Approx(r.p_linear).epsilon(0.01));
    }
    CHECK(write_ergodic_csv(rows) == write_ergodic_csv(run_ergodic_compare(spec)));

    ErgodicCompareSpec tiny = spec;
    tiny.from_db = tiny.to_db = -60;
    const auto t = run_ergodic_compare(tiny);
    CHECK(t[0].awgn < 1e-5);
    CHECK(t[0].ergodic < 1e-4);

    // Low-power points are flagged: the ergodic estimate exceeds AWGN there.
    ErgodicCompareSpec low = spec;
    low.from_db = -10;
    low.to_db = -10;
    CHECK(check_ergodic(run_ergodic_compare(low)).size() == 1);
}

TEST_CASE("cs demo statistics") {
    CsDemoSpec spec;
    spec.trials = 60;
    const auto stats = run_cs_demo(spec);
    CHECK(stats.correct_rate() >= 0.95);
    CHECK(stats.wrong_rate() == 0.0);

    CsDemoSpec dense = spec;
    dense.k = dense.m;
    dense.trials = 20;
    CHECK(run_cs_demo(dense).correct_rate() <= 0.1);

    CsDemoSpec bad = spec;
    bad.trials = 0;
    CHECK_THROWS_AS(run_cs_demo(bad), DomainError);
    bad = spec;
    bad.m = bad.n;
    CHECK_THROWS_AS(run_cs_demo(bad), DomainError);
    CHECK(write_cs_demo_csv(spec, stats).rfind("n,m,k,trials,", 0) == 0);
}
