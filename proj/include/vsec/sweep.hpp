#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vsec/channel.hpp"

namespace vsec {

enum class SweepAxis { Speed, PowerDb, Tau, Alpha };

const char* to_string(SweepAxis axis);
/// Accepts the CLI spellings: speed, power-db, tau, alpha.
SweepAxis parse_axis(std::string_view name);

/// One curve: an axis range plus the fixed parameters. Speed is in m/s and
/// the tau axis is in seconds. When `theta` is set the host-target spacing is
/// r * theta and speed/tau do not enter the capacity.
struct SweepSpec {
    SweepAxis axis = SweepAxis::Speed;
    double from = 5.0;
    double to = 50.0;
    double step = 0.5;

    double speed_mps = 80.0 / 3.6;
    double alpha = 1.4;
    double tau_s = 0.2;
    double r_m = 1000.0;
    double pn0_db = 70.0;
    std::optional<double> theta;
    std::string variant = "default";

    std::vector<double> axis_points() const;
    void validate() const;
};

struct SweepRow {
    std::string axis;
    double axis_value = 0.0;
    double v_mps = 0.0;
    double v_kmh = 0.0;
    double alpha = 0.0;
    double tau_s = 0.0;  // 0 for fixed-angle rows
    double r_m = 0.0;
    double pn0_db = 0.0;
    double cs_raw = 0.0;
    double cs_clamped = 0.0;
    std::string variant;

    bool operator==(const SweepRow&) const = default;
};

/// Rows in ascending axis order. A point violating a precondition raises
/// DomainError naming that point.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// Preset curves for figures 4-7.
std::vector<SweepSpec> figure_sweeps(int figure);
/// Checks the orderings each figure is expected to show; returns one message per violation.
std::vector<std::string> check_figure(int figure, const std::vector<SweepRow>& rows);

inline constexpr std::string_view kSweepCsvHeader =
    "axis,axis_value,v_mps,v_kmh,alpha,tau_s,r_m,pn0_db,cs_raw,cs_clamped,variant";

/// Decimal with at most 6 fractional digits, trailing zeros trimmed.
std::string format_csv_number(double value);

std::string write_sweep_csv(const std::vector<SweepRow>& rows);
/// Strict reader: exact header, LF endings, 11 fields per row, plain decimals.
/// Throws ConfigError with "line N" in the path on any deviation.
std::vector<SweepRow> parse_sweep_csv(std::string_view text);

// ---------------------------------------------------------------------------
// Relay on/off comparison over the host power axis.

struct RelayCompareSpec {
    double from_db = 0.0;  // P_A / sigma^2, dB
    double to_db = 40.0;
    double step_db = 2.0;
    double h_ab = 1.0;
    double h_ae = 0.5;
    double h_rb = 0.01;
    double h_re = 10.0;
    double p_r_db = 0.0;
    double sigma2 = 1.0;
    double w = 1.0;
};

struct RelayCompareRow {
    double pa_db = 0.0;
    double relay_raw = 0.0;
    double relay_clamped = 0.0;
    double direct_raw = 0.0;
    double direct_clamped = 0.0;
};

std::vector<RelayCompareRow> run_relay_compare(const RelayCompareSpec& spec);
std::string write_relay_csv(const RelayCompareSpec& spec, const std::vector<RelayCompareRow>& rows);

// ---------------------------------------------------------------------------
// Ergodic secrecy vs AWGN capacity over the average power axis.

struct ErgodicCompareSpec {
    double from_db = 3.0;
    double to_db = 30.0;
    double step_db = 3.0;
    FadingModel legit = FadingModel::rayleigh();
    FadingModel eaves = FadingModel::fixed(0.0);
    double sigma2 = 1.0;
    std::size_t samples = 100000;
    std::uint64_t seed = 0x5ec7e7c0ffeeULL;
};

struct ErgodicCompareRow {
    double p_db = 0.0;
    double p_linear = 0.0;
    double awgn = 0.0;
    double ergodic = 0.0;
    double ci_halfwidth = 0.0;
    double achieved_power = 0.0;
    double baseline = 0.0;
};

/// Every point shares one sample set (common random numbers across power levels).
std::vector<ErgodicCompareRow> run_ergodic_compare(const ErgodicCompareSpec& spec);
/// Points where AWGN < ergodic - CI.
std::vector<std::string> check_ergodic(const std::vector<ErgodicCompareRow>& rows);
std::string write_ergodic_csv(const std::vector<ErgodicCompareRow>& rows);

// ---------------------------------------------------------------------------
// Compressive-sensing cipher recovery statistics.

struct CsDemoSpec {
    std::size_t n = 256;
    std::size_t m = 64;
    std::size_t k = 8;
    std::size_t trials = 500;
    std::uint64_t seed = 1;
};

struct CsDemoStats {
    std::size_t trials = 0;
    std::size_t correct_key_successes = 0;
    std::size_t wrong_key_successes = 0;
    std::size_t wrong_key_large_error = 0;  // relative error > 0.5
    double worst_correct_error = 0.0;

    double correct_rate() const;
    double wrong_rate() const;
};

inline constexpr double kCsRecoveryTolerance = 1e-6;

CsDemoStats run_cs_demo(const CsDemoSpec& spec);
std::string write_cs_demo_csv(const CsDemoSpec& spec, const CsDemoStats& stats);

}  // namespace vsec
