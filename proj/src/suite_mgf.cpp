// Moment generating function: value at zero, scaling, derivatives at zero,
// sums of independent variables and the power series.

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "check_registry.hpp"
#include "hyperprob/generators.hpp"
#include "hyperprob/oracle.hpp"

namespace hyperprob::detail {

namespace {

constexpr int kScenarios = 200;
const std::array<MassMode, 3> kModes{MassMode::One, MassMode::E, MassMode::EDagger};

struct Setup {
    SampleSpace space;
    DMeasure measure;
    DRandomVar x;
};

Setup setup(Rng& rng, MassMode mode, double range = 2) {
    const std::size_t n = 1 + rng.below(8);
    auto space = SampleSpace::indexed(n);
    auto m = random_measure(rng, space, mode, 0.2);
    auto x = random_variable(rng, space, -range, range);
    return {space, std::move(m), std::move(x)};
}

CheckResult at_zero(const Scenario& s, Rng rng) {
    Tracker t("mgf.at_zero", 0);
    // Dyadic weights make the component totals exactly one, so M(0) = p
    // holds bit for bit.
    for (int k = 0; k < kScenarios; ++k) {
        const auto space = SampleSpace::indexed(1 + rng.below(8));
        const auto m = random_dyadic_measure(rng, space, kModes[k % 3], 10);
        t.residual(size_of(mgf(random_variable(rng, space), m, kZero) - m.mass_value()));
    }
    // The scenario's weights need not sum exactly, so only report its gap.
    double gap = 0;
    for (const auto& x : oracle::identity_variables(s)) gap = std::max(gap, size_of(mgf(x, s.measure, kZero) - s.measure.mass_value()));
    t.note("scenario |M(0) - p| = " + sci(gap));
    return t.finish();
}

CheckResult scaling(const Scenario& s, Rng rng) {
    Tracker t("mgf.scaling", 1e-10);
    const auto run = [&](const DRandomVar& x, const DMeasure& m) {
        const HyperNum h = random_hypernum(rng, -1.5, 1.5), tt = random_hypernum(rng, -1, 1);
        t.residual(rel_diff(mgf(x.map([&](const HyperNum& z) { return h * z; }), m, tt), mgf(x, m, h * tt)));
    };
    for (int k = 0; k < kScenarios; ++k) {
        const auto st = setup(rng, kModes[k % 3]);
        run(st.x, st.measure);
    }
    for (const auto& x : oracle::identity_variables(s)) run(x, s.measure);
    return t.finish();
}

// r-th derivative of M along the real direction t = s at s = 0.
// Orders 1 and 2 use plain central differences with step 1e-4. Orders 3
// and 4 lose too many digits to cancellation at that step, so they use a
// wider step with one Richardson extrapolation.
HyperNum central_difference(const DRandomVar& x, const DMeasure& m, unsigned r, double h) {
    const auto at = [&](double s) { return mgf(x, m, HyperNum::real(s)); };
    switch (r) {
        case 1: return (at(h) - at(-h)) * (1 / (2 * h));
        case 2: return (at(h) - 2.0 * at(0) + at(-h)) * (1 / (h * h));
        case 3: return (at(2 * h) - 2.0 * at(h) + 2.0 * at(-h) - at(-2 * h)) * (1 / (2 * h * h * h));
        default:
            return (at(2 * h) - 4.0 * at(h) + 6.0 * at(0) - 4.0 * at(-h) + at(-2 * h)) * (1 / (h * h * h * h));
    }
}

HyperNum mgf_derivative(const DRandomVar& x, const DMeasure& m, unsigned r) {
    if (r == 0) return mgf(x, m, kZero);
    if (r <= 2) return central_difference(x, m, r, 1e-4);
    constexpr double h = 0.02;
    return (4.0 * central_difference(x, m, r, h / 2) - central_difference(x, m, r, h)) * (1.0 / 3);
}

double relative_to_moment(const HyperNum& d, const HyperNum& mu) {
    const double du = std::fabs(d.u() - mu.u()) / std::max(1.0, std::fabs(mu.u()));
    const double dv = std::fabs(d.v() - mu.v()) / std::max(1.0, std::fabs(mu.v()));
    return std::max(du, dv);
}

CheckResult derivatives(const Scenario& s, Rng rng) {
    Tracker t("mgf.derivatives", 1e-5);
    const auto run = [&](const DRandomVar& x, const DMeasure& m) {
        for (unsigned r = 1; r <= 4; ++r) t.residual(relative_to_moment(mgf_derivative(x, m, r), moment_about(x, m, kZero, r)));
    };
    for (int k = 0; k < kScenarios; ++k) {
        const auto st = setup(rng, kModes[k % 3]);
        run(st.x, st.measure);
    }
    for (const auto& x : oracle::identity_variables(s)) {
        // Keep the finite-difference scheme in its accurate range.
        const HyperNum top = sup_d(x.map([](const HyperNum& z) { return modulus(z); }).values());
        if (std::max(top.u(), top.v()) <= 3) run(x, s.measure);
    }
    return t.finish();
}

CheckResult product_sum(const Scenario&, Rng rng) {
    Tracker t("mgf.independent_sum", 1e-9);
    for (int k = 0; k < kScenarios; ++k) {
        const auto ps = product_scenario(rng, 1 + rng.below(4), 1 + rng.below(4), kModes[k % 3]);
        const HyperNum tt = random_hypernum(rng, -1, 1);
        t.residual(rel_diff(mgf(pointwise_add(ps.x, ps.y), ps.measure, tt), mgf(ps.x, ps.measure, tt) * mgf(ps.y, ps.measure, tt)));
    }
    return t.finish();
}

// Identically distributed variables on different scenarios: the same
// weights and values under a permutation of the outcomes.
CheckResult equal_distributions(const Scenario&, Rng rng) {
    Tracker t("mgf.equal_distributions", 1e-12);
    for (int k = 0; k < kScenarios; ++k) {
        const auto st = setup(rng, kModes[k % 3]);
        const std::size_t n = st.space.size();
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
        std::vector<double> w1(n), w2(n);
        std::vector<HyperNum> vals(n);
        for (std::size_t i = 0; i < n; ++i) {
            w1[i] = st.measure.w1()[perm[i]];
            w2[i] = st.measure.w2()[perm[i]];
            vals[i] = st.x[perm[i]];
        }
        const DMeasure m2(st.space, w1, w2, st.measure.mass());
        const DRandomVar y(st.space, vals);
        const auto fx = pmf(st.x, st.measure), fy = pmf(y, m2);
        bool same = fx.size() == fy.size();
        for (auto i = fx.begin(), j = fy.begin(); same && i != fx.end(); ++i, ++j) {
            same = i->first == j->first && rel_diff(i->second, j->second) < 1e-12;
        }
        t.expect(same, "permuted scenario has a different pmf");
        for (int j = 0; j < 8; ++j) {
            const HyperNum tt = random_hypernum(rng, -1, 1);
            t.residual(rel_diff(mgf(st.x, st.measure, tt), mgf(y, m2, tt)));
        }
    }
    return t.finish();
}

// M(t) = sum_k t^k / k! mu_k'.
CheckResult series(const Scenario&, Rng rng) {
    Tracker t("mgf.series", 1e-12);
    for (int k = 0; k < kScenarios; ++k) {
        const auto st = setup(rng, kModes[k % 3]);
        const HyperNum tt = random_hypernum(rng, -1, 1);
        HyperNum sum = kZero;
        double factorial = 1;
        for (unsigned j = 0; j <= 40; ++j) {
            if (j > 0) factorial *= j;
            sum += int_pow(tt, j) * moment_about(st.x, st.measure, kZero, j) * (1 / factorial);
        }
        t.residual(rel_diff(sum, mgf(st.x, st.measure, tt)));
    }
    return t.finish();
}

}  // namespace

std::vector<CheckDef> mgf_checks() {
    return {{"mgf.at_zero", at_zero},
            {"mgf.scaling", scaling},
            {"mgf.derivatives", derivatives},
            {"mgf.independent_sum", product_sum},
            {"mgf.equal_distributions", equal_distributions},
            {"mgf.series", series}};
}

}  // namespace hyperprob::detail
