// Bernoulli, Binomial and Poisson laws against their realized scenarios.

#include <array>
#include <cmath>

#include "check_registry.hpp"
#include "hyperprob/distributions.hpp"
#include "hyperprob/error.hpp"
#include "hyperprob/generators.hpp"

namespace hyperprob::detail {

namespace {

const std::array<Thorn, 3> kThorns{Thorn::One, Thorn::E, Thorn::EDagger};

// Truncation used whenever a realized Poisson scenario stands in for the
// infinite law. K = 30 leaves a series tail near 5e-4 in the MGF at rate 4
// and t = 1; K = 50 brings it below 1e-11.
constexpr int kPoissonK = 50;

DistributionSpec random_spec(Rng& rng, int kind, Thorn th) {
    switch (kind) {
        case 0: return BernoulliSpec{rng.uniform(), rng.uniform(), th};
        case 1:
            return BinomialSpec{1 + static_cast<int>(rng.below(20)), 1 + static_cast<int>(rng.below(20)), rng.uniform(),
                                rng.uniform(), th};
        default: return make_poisson(rng.uniform(0.1, 4), rng.uniform(0.1, 4), th);
    }
}

CheckResult bernoulli_moments(const Scenario&, Rng rng) {
    Tracker t("distributions.bernoulli_moments", 1e-9);
    for (int k = 0; k < 60; ++k) {
        const BernoulliSpec spec{rng.uniform(), rng.uniform(), kThorns[k % 3]};
        const auto real = realize(spec);
        for (unsigned r = 1; r <= 6; ++r) {
            t.residual(rel_diff(moment_about(real.variable, real.measure, kZero, r), bernoulli_moment(spec, r)));
        }
        t.residual(rel_diff(variance(real.variable, real.measure), distribution_variance(spec)));
    }
    return t.finish();
}

CheckResult mean_variance(const Scenario&, Rng rng) {
    Tracker t("distributions.mean_variance", 1e-9);
    for (int k = 0; k < 90; ++k) {
        const auto spec = random_spec(rng, k % 3, kThorns[(k / 3) % 3]);
        const auto real = realize(spec);
        t.residual(rel_diff(expectation(real.variable, real.measure), distribution_mean(spec)));
        t.residual(rel_diff(variance(real.variable, real.measure), distribution_variance(spec)));
        // Sampled additivity on the large Poisson grids adds nothing the
        // smaller ones do not already show; check their mass only.
        if (real.space.size() <= 512) {
            t.expect(validate_axioms(real.measure).ok(), "realized measure fails the axioms");
        } else {
            t.residual(rel_diff(measure_of(real.measure, Event::all(real.space.size())), real.measure.mass_value()));
        }
    }
    return t.finish();
}

CheckResult pmf_agreement(const Scenario&, Rng rng) {
    Tracker t("distributions.pmf_agreement", 1e-12);
    for (int k = 0; k < 60; ++k) {
        const auto spec = random_spec(rng, k % 3, kThorns[(k / 3) % 3]);
        const auto real = realize(spec);
        const auto f = pmf(real.variable, real.measure);
        const HyperNum th = thorn_value(thorn_for(real.measure.mass()));
        for (const auto& [z, prob] : f) {
            t.residual(rel_diff(prob, distribution_pmf(spec, z)));
            // Every mass is a multiple of the thorn.
            t.residual(size_of(prob * th - prob));
        }
        t.residual(rel_diff(pmf_marginal_total(f), th));
    }
    return t.finish();
}

CheckResult pmf_outside_support(const Scenario&, Rng rng) {
    Tracker t("distributions.support", 0);
    for (int k = 0; k < 50; ++k) {
        const BernoulliSpec b{rng.uniform(), rng.uniform(), Thorn::One};
        bool threw = false;
        try {
            (void)bernoulli_pmf(b, HyperNum{2, 0});
        } catch (const Error& e) {
            threw = e.code() == ErrorCode::UnsupportedPoint;
        }
        t.expect(threw, "Bernoulli pmf accepted a point outside {0, 1}");
        const BinomialSpec bin{5, 7, rng.uniform(), rng.uniform(), Thorn::One};
        t.expect(binomial_pmf(bin, HyperNum{6, 1}) == kZero && binomial_pmf(bin, HyperNum{0.5, 1}) == kZero,
                 "binomial pmf nonzero off the grid");
        const auto p = make_poisson(rng.uniform(0.1, 4), rng.uniform(0.1, 4));
        threw = false;
        try {
            (void)poisson_pmf(p, HyperNum{1.5, 2});
        } catch (const Error& e) {
            threw = e.code() == ErrorCode::UnsupportedPoint;
        }
        t.expect(threw, "Poisson pmf accepted a non-integer point");
    }
    return t.finish();
}

CheckResult poisson_additivity_closed(const Scenario&, Rng rng) {
    // exp(a + b) against exp(a) exp(b): equal up to a few ulps.
    Tracker t("distributions.poisson_additivity_closed", 1e-13);
    for (int k = 0; k < 500; ++k) {
        const auto x = make_poisson(rng.uniform(0.1, 4), rng.uniform(0.1, 4));
        const auto y = make_poisson(rng.uniform(0.1, 4), rng.uniform(0.1, 4));
        const auto sum = make_poisson(x.lambda1 + y.lambda1, x.lambda2 + y.lambda2);
        const HyperNum tt = random_hypernum(rng, -1, 1);
        t.residual(rel_diff(poisson_mgf(sum, tt), poisson_mgf(x, tt) * poisson_mgf(y, tt)));
    }
    return t.finish();
}

CheckResult poisson_additivity_truncated(const Scenario&, Rng rng) {
    Tracker t("distributions.poisson_additivity_truncated", 1e-8);
    for (int k = 0; k < 30; ++k) {
        PoissonSpec x = make_poisson(rng.uniform(0.1, 2), rng.uniform(0.1, 2), kThorns[k % 3]);
        PoissonSpec y = make_poisson(rng.uniform(0.1, 2), rng.uniform(0.1, 2), kThorns[k % 3]);
        PoissonSpec sum = make_poisson(x.lambda1 + y.lambda1, x.lambda2 + y.lambda2, kThorns[k % 3]);
        x.truncation = y.truncation = sum.truncation = kPoissonK;
        const auto rx = realize(x), ry = realize(y), rs = realize(sum);
        for (int j = 0; j < 5; ++j) {
            const HyperNum tt = random_hypernum(rng, -1, 1);
            t.residual(rel_diff(mgf(rs.variable, rs.measure, tt),
                                mgf(rx.variable, rx.measure, tt) * mgf(ry.variable, ry.measure, tt)));
        }
        // Convolution of the pmfs against the pmf of the sum.
        for (int n = 0; n <= 20; ++n) {
            HyperNum conv = kZero;
            for (int i = 0; i <= n; ++i) {
                conv += poisson_pmf(x, HyperNum::real(i)) * poisson_pmf(y, HyperNum::real(n - i));
            }
            t.residual(rel_diff(conv, poisson_pmf(sum, HyperNum::real(n))));
        }
    }
    return t.finish();
}

CheckResult poisson_mgf_truncation(const Scenario&, Rng rng) {
    Tracker t("distributions.poisson_mgf_truncation", 1e-8);
    for (int k = 0; k < 30; ++k) {
        PoissonSpec p = make_poisson(rng.uniform(0.1, 4), rng.uniform(0.1, 4));
        p.truncation = kPoissonK;
        const auto real = realize(p);
        for (int j = 0; j < 8; ++j) {
            const HyperNum tt = random_hypernum(rng, -1, 1);
            t.residual(rel_diff(mgf(real.variable, real.measure, tt), poisson_mgf(p, tt)));
        }
        t.residual(rel_diff(mgf(real.variable, real.measure, kOne), poisson_mgf(p, kOne)));
    }
    return t.finish();
}

CheckResult binomial_poisson_limit(const Scenario&, Rng) {
    Tracker t("distributions.binomial_poisson_limit", 0);
    const std::array<int, 3> ns{10, 50, 250};
    std::array<double, 3> d{};
    for (std::size_t i = 0; i < ns.size(); ++i) d[i] = binomial_poisson_distance(ns[i], 2, 2);
    t.expect(d[0] > d[1] && d[1] > d[2], "distance not strictly decreasing in n");
    t.expect(d[2] < 0.02, "distance at n = 250 not below 0.02");
    t.note("d(10) = " + sci(d[0]) + ", d(50) = " + sci(d[1]) + ", d(250) = " + sci(d[2]));
    return t.finish();
}

CheckResult binomial_coefficients(const Scenario&, Rng) {
    Tracker t("distributions.binomial_coefficients", 1e-12);
    for (int n = 1; n <= 200; ++n) {
        for (int k = 1; k < n; ++k) {
            // Pascal's rule and symmetry, relative.
            const double c = binomial_coefficient(n, k);
            const double pascal = binomial_coefficient(n - 1, k - 1) + binomial_coefficient(n - 1, k);
            t.residual(std::fabs(c - pascal) / c);
            t.residual(std::fabs(c - binomial_coefficient(n, n - k)) / c);
        }
    }
    for (int n = 0; n < 60; ++n) {
        double total = 0;
        for (int k = 0; k <= n; ++k) total += binomial_coefficient(n, k);
        t.residual(std::fabs(total - std::ldexp(1.0, n)) / std::ldexp(1.0, n));
    }
    t.residual(std::fabs(binomial_coefficient(52, 5) - 2598960));
    return t.finish();
}

CheckResult invalid_parameters(const Scenario&, Rng) {
    Tracker t("distributions.invalid_parameters", 0);
    const auto rejects = [&](const DistributionSpec& s, const char* what) {
        bool threw = false;
        try {
            (void)distribution_mean(s);
        } catch (const Error& e) {
            threw = e.code() == ErrorCode::InvalidParameters;
        }
        t.expect(threw, what);
    };
    rejects(BernoulliSpec{1.5, 0.5}, "Bernoulli p > 1 accepted");
    rejects(BernoulliSpec{0.5, -0.1}, "Bernoulli p < 0 accepted");
    rejects(BinomialSpec{-1, 3, 0.5, 0.5}, "Binomial n < 0 accepted");
    rejects(PoissonSpec{0, 1}, "Poisson rate 0 accepted");
    rejects(PoissonSpec{1, std::nan("")}, "Poisson NaN rate accepted");
    return t.finish();
}

}  // namespace

std::vector<CheckDef> distribution_checks() {
    return {{"distributions.bernoulli_moments", bernoulli_moments},
            {"distributions.mean_variance", mean_variance},
            {"distributions.pmf_agreement", pmf_agreement},
            {"distributions.support", pmf_outside_support},
            {"distributions.poisson_additivity_closed", poisson_additivity_closed},
            {"distributions.poisson_additivity_truncated", poisson_additivity_truncated},
            {"distributions.poisson_mgf_truncation", poisson_mgf_truncation},
            {"distributions.binomial_poisson_limit", binomial_poisson_limit},
            {"distributions.binomial_coefficients", binomial_coefficients},
            {"distributions.invalid_parameters", invalid_parameters}};
}

}  // namespace hyperprob::detail
