#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "vsec/errors.hpp"
#include "vsec/secrecy.hpp"

namespace vsec {

namespace {

constexpr double kBudgetTolerance = 1e-3;
constexpr int kMaxBisection = 200;
constexpr int kMaxBracketSteps = 2000;
constexpr double kZ95 = 1.959963984540054;

double mean_power(const FadingStates& s, double mu) {
    double sum = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) sum += optimal_state_power(s.legit[i], s.eaves[i], mu);
    return sum / static_cast<double>(s.size());
}

// Average secrecy rate and its CI for a given allocation rule.
template <class Alloc>
ErgodicResult evaluate(const FadingStates& s, Alloc&& gamma_of) {
    const auto n = static_cast<double>(s.size());
    double sum = 0.0, sum_sq = 0.0, power = 0.0;
    std::size_t in_a = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double a = s.legit[i];
        const double b = s.eaves[i];
        if (!(a > b)) continue;
        ++in_a;
        const double g = gamma_of(a, b);
        const double rate = log2_1p(g * a) - log2_1p(g * b);
        sum += rate;
        sum_sq += rate * rate;
        power += g;
    }
    ErgodicResult r;
    r.capacity = sum / n;
    r.achieved_avg_power = power / n;
    r.set_a_fraction = static_cast<double>(in_a) / n;
    const double var = std::max(0.0, sum_sq / n - r.capacity * r.capacity) * n / std::max(1.0, n - 1.0);
    r.ci_halfwidth = kZ95 * std::sqrt(var / n);
    return r;
}

}  // namespace

void ErgodicSpec::validate() const {
    legit_fading.validate();
    eaves_fading.validate();
    if (!(sigma_b2 > 0.0) || !(sigma_e2 > 0.0)) throw DomainError("ergodic: noise variances must be > 0");
    if (!(p_budget > 0.0) || !std::isfinite(p_budget)) throw DomainError("ergodic: power budget must be > 0");
    if (n_samples < 1000) throw DomainError("ergodic: need at least 1000 samples");
}

FadingStates sample_states(const ErgodicSpec& spec) {
    spec.validate();
    FadingStates s;
    s.legit.resize(spec.n_samples);
    s.eaves.resize(spec.n_samples);

    auto fill = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            SplitMix64 rng(SplitMix64::derive(spec.seed, i));
            const double h_ab = sample_fading(spec.legit_fading, rng);
            const double h_ae = sample_fading(spec.eaves_fading, rng);
            s.legit[i] = h_ab * h_ab / spec.sigma_b2;
            s.eaves[i] = h_ae * h_ae / spec.sigma_e2;
        }
    };

    const std::size_t workers =
        std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 8);
    if (workers == 1 || spec.n_samples < 20000) {
        fill(0, spec.n_samples);
        return s;
    }
    std::vector<std::jthread> pool;
    const std::size_t chunk = (spec.n_samples + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(spec.n_samples, begin + chunk);
        if (begin < end) pool.emplace_back(fill, begin, end);
    }
    return s;
}

double optimal_state_power(double a, double b, double mu) {
    if (!(a > b) || !(mu < a - b)) return 0.0;
    // Stationarity: (a - b) / ((1 + g a)(1 + g b)) = mu, with c < 0 here.
    const double c = 1.0 - (a - b) / mu;
    const double sum = a + b;
    const double disc = sum * sum - 4.0 * a * b * c;
    return -2.0 * c / (sum + std::sqrt(disc));
}

ErgodicResult optimize_power(const FadingStates& states, double p_budget) {
    if (!(p_budget > 0.0)) throw DomainError("ergodic: power budget must be > 0");
    if (states.size() == 0) throw DomainError("ergodic: empty sample set");

    const bool any_favorable = [&] {
        for (std::size_t i = 0; i < states.size(); ++i)
            if (states.legit[i] > states.eaves[i]) return true;
        return false;
    }();
    if (!any_favorable) return ErgodicResult{};

    // E[gamma](mu) is continuous and decreasing; bracket the budget, then bisect in log-space.
    // Accept only 0 <= (E - P)/P < tol so the full budget is spent.
    auto residual = [&](double mu) { return (mean_power(states, mu) - p_budget) / p_budget; };
    auto accepted = [](double res) { return res >= 0.0 && res < kBudgetTolerance; };

    // Invariant after bracketing: residual(lo) > 0 > residual(hi) unless a bracket end is accepted.
    double lo = 1.0, hi = 1.0;
    double mu = 1.0;
    double res = residual(mu);
    int steps = 0;
    while (!accepted(res)) {
        if (++steps > kMaxBracketSteps) throw ConvergenceError("ergodic: multiplier bracket did not close");
        if (res > 0.0) {
            lo = mu;
            if (hi > lo) break;
            mu = hi = lo * 2.0;
        } else {
            hi = mu;
            if (lo < hi) break;
            mu = lo = hi * 0.5;
        }
        res = residual(mu);
    }

    int iterations = 0;
    if (!accepted(res)) {
        for (;;) {
            if (iterations == kMaxBisection)
                throw ConvergenceError("ergodic: power budget residual above " + std::to_string(kBudgetTolerance) +
                                       " after " + std::to_string(kMaxBisection) + " bisection steps");
            ++iterations;
            mu = std::sqrt(lo * hi);
            res = residual(mu);
            if (accepted(res)) break;
            (res > 0.0 ? lo : hi) = mu;
        }
    }

    ErgodicResult out = evaluate(states, [mu](double a, double b) { return optimal_state_power(a, b, mu); });
    out.multiplier = mu;
    out.iterations = iterations;
    return out;
}

ErgodicResult constant_power_baseline(const FadingStates& states, double p_budget) {
    std::size_t in_a = 0;
    for (std::size_t i = 0; i < states.size(); ++i) in_a += states.legit[i] > states.eaves[i] ? 1 : 0;
    if (in_a == 0) return ErgodicResult{};
    const double level = p_budget * static_cast<double>(states.size()) / static_cast<double>(in_a);
    return evaluate(states, [level](double, double) { return level; });
}

ErgodicResult ergodic_secrecy(const ErgodicSpec& spec) {
    return optimize_power(sample_states(spec), spec.p_budget);
}

}  // namespace vsec
