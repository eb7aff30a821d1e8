#include "vsec/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>

#include "vsec/cs_cipher.hpp"
#include "vsec/errors.hpp"
#include "vsec/kinematics.hpp"
#include "vsec/secrecy.hpp"

namespace vsec {

namespace {

std::vector<double> range_points(double from, double to, double step, const char* what) {
    if (!std::isfinite(from) || !std::isfinite(to) || !std::isfinite(step))
        throw DomainError(std::string(what) + ": range must be finite");
    if (!(step > 0.0)) throw DomainError(std::string(what) + ": step must be > 0");
    if (to < from) throw DomainError(std::string(what) + ": empty range (to < from)");
    const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
    std::vector<double> pts(count);
    for (std::size_t i = 0; i < count; ++i) pts[i] = from + step * static_cast<double>(i);
    return pts;
}

std::string trimmed_fixed(double value, int digits) {
    if (!std::isfinite(value)) throw DomainError("cannot format a non-finite number");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, value);
    std::string s(buf);
    if (s.find('.') != std::string::npos) {
        while (s.back() == '0') s.pop_back();
        if (s.back() == '.') s.pop_back();
    }
    if (s == "-0") s = "0";
    return s;
}

std::map<std::string, std::vector<const SweepRow*>> by_variant(const std::vector<SweepRow>& rows) {
    std::map<std::string, std::vector<const SweepRow*>> out;
    for (const auto& r : rows) out[r.variant].push_back(&r);
    return out;
}

std::string point_label(const SweepRow& r) { return r.variant + " @ " + r.axis + "=" + format_csv_number(r.axis_value); }

// Curves must be pointwise strictly ordered by `key` (higher key -> higher raw capacity when ascending).
std::vector<std::string> check_pointwise(const std::vector<SweepRow>& rows, double (*key)(const SweepRow&),
                                         bool higher_key_higher_cs) {
    std::vector<std::string> bad;
    auto curves = by_variant(rows);
    std::vector<std::vector<const SweepRow*>> ordered;
    for (auto& [_, c] : curves) ordered.push_back(c);
    std::sort(ordered.begin(), ordered.end(), [&](const auto& a, const auto& b) { return key(*a[0]) < key(*b[0]); });
    for (std::size_t c = 1; c < ordered.size(); ++c) {
        const auto& lower = ordered[c - 1];
        const auto& upper = ordered[c];
        for (std::size_t i = 0; i < std::min(lower.size(), upper.size()); ++i) {
            const bool ok = higher_key_higher_cs ? upper[i]->cs_raw > lower[i]->cs_raw
                                                 : upper[i]->cs_raw < lower[i]->cs_raw;
            if (!ok) bad.push_back("ordering violated between " + point_label(*lower[i]) + " and " + upper[i]->variant);
        }
    }
    return bad;
}

double parse_number(std::string_view text, std::size_t line, const char* field) {
    std::size_t i = 0;
    if (i < text.size() && text[i] == '-') ++i;
    const std::size_t digits = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    bool ok = i > digits;
    if (ok && i < text.size()) {
        ok = text[i] == '.';
        const std::size_t frac = ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        ok = ok && i == text.size() && i - frac >= 1 && i - frac <= 6;
    }
    double v = 0.0;
    if (ok) {
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        ok = ec == std::errc() && ptr == text.data() + text.size();
    }
    if (!ok) throw ConfigError("line " + std::to_string(line), std::string(field) + ": bad number '" + std::string(text) + "'");
    return v;
}

}  // namespace

const char* to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::Speed: return "speed";
        case SweepAxis::PowerDb: return "power-db";
        case SweepAxis::Tau: return "tau";
        case SweepAxis::Alpha: return "alpha";
    }
    return "?";
}

SweepAxis parse_axis(std::string_view name) {
    if (name == "speed") return SweepAxis::Speed;
    if (name == "power-db") return SweepAxis::PowerDb;
    if (name == "tau") return SweepAxis::Tau;
    if (name == "alpha") return SweepAxis::Alpha;
    throw ConfigError("axis", "unknown axis '" + std::string(name) + "'");
}

std::vector<double> SweepSpec::axis_points() const { return range_points(from, to, step, "sweep"); }

void SweepSpec::validate() const {
    (void)axis_points();
    if (variant.empty() || variant.find_first_of(",\n\r") != std::string::npos)
        throw DomainError("sweep: variant label must be non-empty without commas or newlines");
    if (!(r_m > 0.0)) throw DomainError("sweep: r must be > 0");
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    spec.validate();
    std::vector<SweepRow> rows;
    for (const double x : spec.axis_points()) {
        SweepRow row;
        row.axis = to_string(spec.axis);
        row.axis_value = x;
        row.v_mps = spec.speed_mps;
        row.alpha = spec.alpha;
        row.tau_s = spec.tau_s;
        row.r_m = spec.r_m;
        row.pn0_db = spec.pn0_db;
        row.variant = spec.variant;
        switch (spec.axis) {
            case SweepAxis::Speed: row.v_mps = x; break;
            case SweepAxis::PowerDb: row.pn0_db = x; break;
            case SweepAxis::Tau: row.tau_s = x; break;
            case SweepAxis::Alpha: row.alpha = x; break;
        }
        row.v_kmh = ms_to_kmh(row.v_mps);
        try {
            const auto budget = PowerBudget::from_snr_db(row.pn0_db);
            const PathLossExponent alpha(row.alpha);
            SecrecyResult cs;
            if (spec.theta) {
                row.tau_s = 0.0;
                cs = geometric_secrecy(budget, LinkGeometry::from_angle(row.r_m, *spec.theta), alpha);
            } else {
                cs = velocity_secrecy(budget, row.v_mps, AccParams(row.tau_s), row.r_m, alpha);
            }
            row.cs_raw = cs.raw;
            row.cs_clamped = cs.clamped;
        } catch (const DomainError& e) {
            throw DomainError("sweep point " + row.axis + "=" + format_csv_number(x) + ": " + e.what());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<SweepSpec> figure_sweeps(int figure) {
    auto speed_curve = [](double alpha, double tau, double pn0, std::string variant) {
        SweepSpec s;
        s.alpha = alpha;
        s.tau_s = tau;
        s.pn0_db = pn0;
        s.variant = std::move(variant);
        return s;
    };
    switch (figure) {
        case 4:
            return {speed_curve(4, 0.2, 70, "alpha=4"), speed_curve(2, 0.2, 70, "alpha=2"),
                    speed_curve(1.4, 0.2, 70, "alpha=1.4")};
        case 5: {
            // 80, 100, 120 km/h; spacing either from the quoted angle or from v tau.
            auto fixed = speed_curve(3.5, 0.2, 70, "theta=0.1");
            fixed.from = kmh_to_ms(80);
            fixed.to = kmh_to_ms(120);
            fixed.step = kmh_to_ms(20);
            fixed.theta = 0.1;
            auto vtau = fixed;
            vtau.theta.reset();
            vtau.variant = "vtau";
            return {fixed, vtau};
        }
        case 6:
            return {speed_curve(1.4, 0.4, 40, "pn0=40"), speed_curve(1.4, 0.4, 50, "pn0=50"),
                    speed_curve(1.4, 0.4, 60, "pn0=60")};
        case 7:
            return {speed_curve(1.4, 0.1, 70, "tau=0.1"), speed_curve(1.4, 0.2, 70, "tau=0.2"),
                    speed_curve(1.4, 0.4, 70, "tau=0.4")};
        default:
            throw ConfigError("figure", "no preset for figure " + std::to_string(figure) + " (have 4, 5, 6, 7)");
    }
}

std::vector<std::string> check_figure(int figure, const std::vector<SweepRow>& rows) {
    std::vector<std::string> bad;
    auto decreasing = [&](const std::vector<const SweepRow*>& curve, bool clamped) {
        for (std::size_t i = 1; i < curve.size(); ++i) {
            const double prev = clamped ? curve[i - 1]->cs_clamped : curve[i - 1]->cs_raw;
            const double cur = clamped ? curve[i]->cs_clamped : curve[i]->cs_raw;
            if (!(cur < prev)) bad.push_back("not decreasing in speed at " + point_label(*curve[i]));
        }
    };
    switch (figure) {
        case 4:
            for (const auto& [_, curve] : by_variant(rows)) decreasing(curve, false);
            break;
        case 5: {
            const auto curves = by_variant(rows);
            const auto it = curves.find("vtau");
            if (it == curves.end()) bad.emplace_back("missing vtau variant");
            else decreasing(it->second, true);
            break;
        }
        case 6:
            bad = check_pointwise(rows, [](const SweepRow& r) { return r.pn0_db; }, true);
            break;
        case 7:
            bad = check_pointwise(rows, [](const SweepRow& r) { return r.tau_s; }, false);
            break;
        default:
            throw ConfigError("figure", "no checks for figure " + std::to_string(figure));
    }
    return bad;
}

std::string format_csv_number(double value) { return trimmed_fixed(value, 6); }

std::string write_sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out(kSweepCsvHeader);
    out += '\n';
    for (const auto& r : rows) {
        out += r.axis;
        for (double v : {r.axis_value, r.v_mps, r.v_kmh, r.alpha, r.tau_s, r.r_m, r.pn0_db, r.cs_raw, r.cs_clamped}) {
            out += ',';
            out += format_csv_number(v);
        }
        out += ',';
        out += r.variant;
        out += '\n';
    }
    return out;
}

std::vector<SweepRow> parse_sweep_csv(std::string_view text) {
    std::vector<SweepRow> rows;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool saw_header = false;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no + 1), "missing LF terminator");
        const std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        if (line.find('\r') != std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no), "CR in line (LF endings required)");
        if (!saw_header) {
            if (line != kSweepCsvHeader) throw ConfigError("line 1", "header mismatch");
            saw_header = true;
            continue;
        }
        std::vector<std::string_view> f;
        std::size_t start = 0;
        for (;;) {
            const auto comma = line.find(',', start);
            f.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (f.size() != 11)
            throw ConfigError("line " + std::to_string(line_no), "expected 11 fields, got " + std::to_string(f.size()));
        SweepRow r;
        r.axis = std::string(f[0]);
        try {
            (void)parse_axis(r.axis);
        } catch (const ConfigError&) {
            throw ConfigError("line " + std::to_string(line_no), "unknown axis '" + r.axis + "'");
        }
        double* targets[] = {&r.axis_value, &r.v_mps, &r.v_kmh, &r.alpha, &r.tau_s,
                             &r.r_m,        &r.pn0_db, &r.cs_raw, &r.cs_clamped};
        static constexpr const char* names[] = {"axis_value", "v_mps", "v_kmh",  "alpha",     "tau_s",
                                                "r_m",        "pn0_db", "cs_raw", "cs_clamped"};
        for (std::size_t i = 0; i < 9; ++i) *targets[i] = parse_number(f[i + 1], line_no, names[i]);
        if (f[10].empty()) throw ConfigError("line " + std::to_string(line_no), "empty variant");
        r.variant = std::string(f[10]);
        rows.push_back(std::move(r));
    }
    if (!saw_header) throw ConfigError("line 1", "missing header");
    return rows;
}

// ---------------------------------------------------------------------------

std::vector<RelayCompareRow> run_relay_compare(const RelayCompareSpec& spec) {
    std::vector<RelayCompareRow> rows;
    for (const double db : range_points(spec.from_db, spec.to_db, spec.step_db, "relay-compare")) {
        RelayConfig cfg;
        cfg.p_a = db_to_linear(db) * spec.sigma2;
        cfg.h_ab = spec.h_ab;
        cfg.h_ae = spec.h_ae;
        cfg.h_rb = spec.h_rb;
        cfg.h_re = spec.h_re;
        cfg.sigma_b2 = spec.sigma2;
        cfg.sigma_e2 = spec.sigma2;
        cfg.w = spec.w;
        cfg.p_r = db_to_linear(spec.p_r_db) * spec.sigma2;
        const auto on = relay_secrecy(cfg);
        cfg.p_r = 0.0;
        const auto off = relay_secrecy(cfg);
        rows.push_back({db, on.raw, on.clamped, off.raw, off.clamped});
    }
    return rows;
}

std::string write_relay_csv(const RelayCompareSpec& spec, const std::vector<RelayCompareRow>& rows) {
    std::string out = "pa_db,p_r_db,h_ab,h_ae,h_rb,h_re,cs_relay_raw,cs_relay_clamped,cs_direct_raw,cs_direct_clamped\n";
    for (const auto& r : rows) {
        const double vals[] = {r.pa_db,     spec.p_r_db, spec.h_ab,        spec.h_ae,    spec.h_rb,
                               spec.h_re,   r.relay_raw, r.relay_clamped,  r.direct_raw, r.direct_clamped};
        for (std::size_t i = 0; i < std::size(vals); ++i) {
            if (i) out += ',';
            out += format_csv_number(vals[i]);
        }
        out += '\n';
    }
    return out;
}

std::vector<ErgodicCompareRow> run_ergodic_compare(const ErgodicCompareSpec& spec) {
    ErgodicSpec es;
    es.legit_fading = spec.legit;
    es.eaves_fading = spec.eaves;
    es.sigma_b2 = spec.sigma2;
    es.sigma_e2 = spec.sigma2;
    es.n_samples = spec.samples;
    es.seed = spec.seed;
    const auto states = sample_states(es);

    std::vector<ErgodicCompareRow> rows;
    for (const double db : range_points(spec.from_db, spec.to_db, spec.step_db, "ergodic-compare")) {
        const double p = db_to_linear(db);
        ErgodicCompareRow row;
        row.p_db = db;
        row.p_linear = p;
        row.awgn = awgn_capacity(PowerBudget::make(p, spec.sigma2), 1.0);
        try {
            const auto opt = optimize_power(states, p);
            row.ergodic = opt.capacity;
            row.ci_halfwidth = opt.ci_halfwidth;
            row.achieved_power = opt.achieved_avg_power;
        } catch (const ConvergenceError& e) {
            throw ConvergenceError("ergodic-compare at " + format_csv_number(db) + " dB: " + e.what());
        }
        row.baseline = constant_power_baseline(states, p).capacity;
        rows.push_back(row);
    }
    return rows;
}

std::vector<std::string> check_ergodic(const std::vector<ErgodicCompareRow>& rows) {
    std::vector<std::string> bad;
    for (const auto& r : rows)
        if (r.awgn < r.ergodic - r.ci_halfwidth)
            bad.push_back("AWGN below ergodic estimate at " + format_csv_number(r.p_db) + " dB");
    return bad;
}

std::string write_ergodic_csv(const std::vector<ErgodicCompareRow>& rows) {
    std::string out = "p_db,p_linear,awgn,ergodic,ci_halfwidth,achieved_power,baseline\n";
    for (const auto& r : rows) {
        const double vals[] = {r.p_db, r.p_linear, r.awgn, r.ergodic, r.ci_halfwidth, r.achieved_power, r.baseline};
        for (std::size_t i = 0; i < std::size(vals); ++i) {
            if (i) out += ',';
            out += format_csv_number(vals[i]);
        }
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------

double CsDemoStats::correct_rate() const {
    return trials ? static_cast<double>(correct_key_successes) / static_cast<double>(trials) : 0.0;
}

double CsDemoStats::wrong_rate() const {
    return trials ? static_cast<double>(wrong_key_successes) / static_cast<double>(trials) : 0.0;
}

CsDemoStats run_cs_demo(const CsDemoSpec& spec) {
    if (spec.trials == 0) throw DomainError("cs-demo: trials must be >= 1");
    CsKey{spec.seed, spec.n, spec.m}.validate();
    if (spec.k == 0 || spec.k > spec.m) throw DomainError("cs-demo: need 1 <= k <= m");

    CsDemoStats stats;
    stats.trials = spec.trials;
    for (std::size_t t = 0; t < spec.trials; ++t) {
        const CsKey key{SplitMix64::derive(spec.seed, 3 * t), spec.n, spec.m};
        const CsKey wrong{SplitMix64::derive(spec.seed, 3 * t + 1), spec.n, spec.m};
        std::mt19937_64 rng(SplitMix64::derive(spec.seed, 3 * t + 2));
        const Eigen::VectorXd x = random_sparse(spec.n, spec.k, rng);
        const Eigen::VectorXd y = encrypt(x, key);

        auto attempt = [&](const CsKey& k) {
            try {
                return relative_error(decrypt(y, k, spec.k).values, x);
            } catch (const RecoveryError&) {
                return std::numeric_limits<double>::infinity();
            }
        };
        const double err_ok = attempt(key);
        const double err_bad = attempt(wrong);
        if (err_ok < kCsRecoveryTolerance) ++stats.correct_key_successes;
        if (err_bad < kCsRecoveryTolerance) ++stats.wrong_key_successes;
        if (err_bad > 0.5) ++stats.wrong_key_large_error;
        stats.worst_correct_error = std::max(stats.worst_correct_error, err_ok);
    }
    return stats;
}

std::string write_cs_demo_csv(const CsDemoSpec& spec, const CsDemoStats& s) {
    std::string out = "n,m,k,trials,correct_key_success,wrong_key_success,wrong_key_error_gt_half\n";
    out += std::to_string(spec.n) + ',' + std::to_string(spec.m) + ',' + std::to_string(spec.k) + ',' +
           std::to_string(s.trials) + ',' + format_csv_number(s.correct_rate()) + ',' +
           format_csv_number(s.wrong_rate()) + ',' +
           format_csv_number(static_cast<double>(s.wrong_key_large_error) / static_cast<double>(s.trials)) + '\n';
    return out;
}

}  // namespace vsec
