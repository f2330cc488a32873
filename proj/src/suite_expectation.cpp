// Integral linearity, the expectation and variance laws, Cauchy-Schwarz,
// the mean-deviation bound, pmf/cdf and region classification.

#include <array>

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
    DRandomVar y;
};

Setup random_setup(Rng& rng, MassMode mode) {
    const std::size_t n = 1 + rng.below(8);
    auto space = SampleSpace::indexed(n);
    auto m = random_measure(rng, space, mode, 0.2);
    auto x = random_variable(rng, space);
    auto y = random_variable(rng, space);
    return {space, std::move(m), std::move(x), std::move(y)};
}

bool le(OrderRelation r) { return r == OrderRelation::Less || r == OrderRelation::Equal; }

DRandomVar modulus_of(const DRandomVar& x) { return x.map([](const HyperNum& z) { return modulus(z); }); }

CheckResult linearity(const Scenario& s, Rng rng) {
    Tracker t("expectation.linearity", 1e-9);
    for (int k = 0; k < kScenarios; ++k) {
        const auto st = random_setup(rng, kModes[k % 3]);
        const HyperNum alpha = random_hypernum(rng, -3, 3), beta = random_hypernum(rng, -3, 3);
        const Event a = random_event(rng, st.space.size());
        const std::array<HyperNum, 2> coeffs{alpha, beta};
        const std::array<DRandomVar, 2> vars{st.x, st.y};
        const HyperNum lhs = integral(linear_combine(coeffs, vars), st.measure, a);
        const HyperNum rhs = alpha * integral(st.x, st.measure, a) + beta * integral(st.y, st.measure, a);
        t.residual(rel_diff(lhs, rhs));
    }
    // The scenario's own variables, pairwise.
    const auto vars = oracle::identity_variables(s);
    for (const auto& x : vars) {
        for (const auto& y : vars) {
            const HyperNum alpha = random_hypernum(rng, -3, 3), beta = random_hypernum(rng, -3, 3);
            const std::array<HyperNum, 2> coeffs{alpha, beta};
            const std::array<DRandomVar, 2> pair{x, y};
            t.residual(rel_diff(expectation(linear_combine(coeffs, pair), s.measure),
                                alpha * expectation(x, s.measure) + beta * expectation(y, s.measure)));
        }
    }
    return t.finish();
}

CheckResult addition(const Scenario&, Rng rng) {
    Tracker t("expectation.addition", 1e-9);
    for (int k = 0; k < kScenarios; ++k) {
        const auto st = random_setup(rng, kModes[k % 3]);
        t.residual(rel_diff(expectation(pointwise_add(st.x, st.y), st.measure),
                            expectation(st.x, st.measure) + expectation(st.y, st.measure)));
    }
    return t.finish();
}

CheckResult affine_law(const Scenario&, Rng rng) {
    Tracker t("expectation.affine", 1e-9);
    for (int k = 0; k < kScenarios; ++k) {
        const auto st = random_setup(rng, kModes[k % 3]);
        const HyperNum a = random_hypernum(rng, -3, 3), b = random_hypernum(rng, -3, 3);
        // E(aX + b) = a E(X) + b p, which is the unfolded law when p = 1.
        t.residual(rel_diff(expectation(affine(st.x, a, b), st.measure),
                            a * expectation(st.x, st.measure) + b * st.measure.mass_value()));
        t.residual(rel_diff(expectation(DRandomVar::constant(st.space, b), st.measure), b * st.measure.mass_value()));
    }
    return t.finish();
}

CheckResult indicators(const Scenario&, Rng rng) {
    Tracker t("expectation.indicator", 1e-12);
    const std::array<Thorn, 3> thorns{Thorn::One, Thorn::E, Thorn::EDagger};
    for (int k = 0; k < kScenarios; ++k) {
        const auto st = random_setup(rng, kModes[k % 3]);
        const Event a = random_event(rng, st.space.size());
        const Thorn th = thorns[(k / 3) % 3];
        const auto chi = DRandomVar::indicator(st.space, a, th);
        t.residual(rel_diff(expectation(chi, st.measure), thorn_value(th) * measure_of(st.measure, a)));
        if (th == Thorn::One) t.residual(size_of(pointwise_mul(chi, chi)[0] - chi[0]));
    }
    return t.finish();
}

CheckResult product_theorem(const Scenario&, Rng rng) {
    Tracker t("expectation.product_independent", 1e-9);
    for (int k = 0; k < kScenarios; ++k) {
        const auto ps = product_scenario(rng, 1 + rng.below(4), 1 + rng.below(4), kModes[k % 3]);
        t.expect(are_independent(ps.x, ps.y, ps.measure), "product construction not recognised as independent");
        t.residual(rel_diff(expectation(pointwise_mul(ps.x, ps.y), ps.measure),
                            expectation(ps.x, ps.measure) * expectation(ps.y, ps.measure)));
    }
    return t.finish();
}

CheckResult dependence_detected(const Scenario&, Rng rng) {
    Tracker t("expectation.dependence_detected", 0);
    for (int k = 0; k < kScenarios; ++k) {
        const auto ps = product_scenario(rng, 2 + rng.below(3), 1 + rng.below(3), kModes[k % 3]);
        t.expect(!are_independent(ps.x, ps.x, ps.measure), "X found independent of itself");
        t.expect(are_independent(ps.x, DRandomVar::constant(ps.space, kOne), ps.measure),
                 "constant not independent");
    }
    return t.finish();
}

CheckResult variance_affine(const Scenario&, Rng rng) {
    Tracker t("expectation.variance_affine", 1e-9);
    for (int k = 0; k < kScenarios; ++k) {
        const auto st = random_setup(rng, kModes[k % 3]);
        const HyperNum a = random_hypernum(rng, -3, 3), b = random_hypernum(rng, -3, 3);
        t.residual(rel_diff(variance(affine(st.x, a, b), st.measure), a * a * variance(st.x, st.measure)));
        t.residual(size_of(variance(DRandomVar::constant(st.space, b), st.measure)));
        // var = e var(X1) + e' var(X2), from the component variables.
        const auto c = components(st.x);
        double m1 = 0, m2 = 0, v1 = 0, v2 = 0;
        for (std::size_t i = 0; i < st.space.size(); ++i) {
            m1 += c.x1[i] * st.measure.w1()[i];
            m2 += c.x2[i] * st.measure.w2()[i];
        }
        for (std::size_t i = 0; i < st.space.size(); ++i) {
            v1 += (c.x1[i] - m1) * (c.x1[i] - m1) * st.measure.w1()[i];
            v2 += (c.x2[i] - m2) * (c.x2[i] - m2) * st.measure.w2()[i];
        }
        t.residual(rel_diff(variance(st.x, st.measure), HyperNum(v1, v2)));
    }
    return t.finish();
}

CheckResult variance_additive(const Scenario&, Rng rng) {
    Tracker t("expectation.variance_additive", 1e-9);
    for (int k = 0; k < kScenarios; ++k) {
        const auto ps = product_scenario(rng, 1 + rng.below(4), 1 + rng.below(4), kModes[k % 3]);
        t.residual(rel_diff(variance(pointwise_add(ps.x, ps.y), ps.measure),
                            variance(ps.x, ps.measure) + variance(ps.y, ps.measure)));
    }
    return t.finish();
}

CheckResult cauchy_schwarz(const Scenario& s, Rng rng) {
    Tracker t("expectation.cauchy_schwarz", 0);
    const auto verdict = [&](const DRandomVar& x, const DRandomVar& y, const DMeasure& m) {
        const HyperNum exy = expectation(pointwise_mul(x, y), m);
        const HyperNum bound = expectation(pointwise_mul(x, x), m) * expectation(pointwise_mul(y, y), m);
        const auto r = compare(exy * exy, bound, s.tolerance);
        t.expect(le(r), "[E(XY)]^2 is " + std::string(to_string(r)) + " relative to E(X^2)E(Y^2)");
    };
    for (int k = 0; k < kScenarios; ++k) {
        const auto st = random_setup(rng, MassMode::One);
        verdict(st.x, st.y, st.measure);
        verdict(st.x, st.x, st.measure);
    }
    const auto vars = oracle::identity_variables(s);
    for (const auto& x : vars) {
        for (const auto& y : vars) verdict(x, y, s.measure);
    }
    return t.finish();
}

CheckResult mean_deviation(const Scenario& s, Rng rng) {
    Tracker t("expectation.mean_deviation", 0);
    const auto bound_holds = [&](const DRandomVar& x, const DMeasure& m) {
        const HyperNum mu = expectation(x, m);
        const HyperNum md = expectation(modulus_of(x.map([&](const HyperNum& z) { return z - mu; })), m);
        const auto r = compare(md * md, m.mass_value() * variance(x, m), s.tolerance);
        t.expect(le(r), "mean deviation bound is " + std::string(to_string(r)));
    };
    for (int k = 0; k < kScenarios; ++k) {
        const auto st = random_setup(rng, kModes[k % 3]);
        bound_holds(st.x, st.measure);
    }
    for (const auto& x : oracle::identity_variables(s)) bound_holds(x, s.measure);
    return t.finish();
}

CheckResult moments(const Scenario&, Rng rng) {
    Tracker t("expectation.moments", 1e-9);
    for (int k = 0; k < kScenarios; ++k) {
        const auto st = random_setup(rng, kModes[k % 3]);
        const auto& m = st.measure;
        t.residual(rel_diff(moment_about(st.x, m, random_hypernum(rng), 0), m.mass_value()));
        t.residual(rel_diff(moment_about(st.x, m, kZero, 1), expectation(st.x, m)));
        t.residual(rel_diff(moment_about(st.x, m, expectation(st.x, m), 2), variance(st.x, m)));
        t.residual(rel_diff(central_moment(st.x, m, 1), kZero));
    }
    return t.finish();
}

CheckResult pmf_cdf(const Scenario& s, Rng rng) {
    Tracker t("expectation.pmf_cdf", 1e-12);
    const auto check = [&](const DRandomVar& x, const DMeasure& m) {
        const auto f = pmf(x, m);
        const HyperNum p = m.mass_value();
        t.residual(rel_diff(pmf_marginal_total(f), p));
        const HyperNum thorn = thorn_value(thorn_for(m.mass()));
        for (const auto& [z, prob] : f) t.residual(size_of(prob * thorn - prob));
        const HyperNum reach = sup_d(modulus_of(x).values()) + kOne;
        const HyperNum top = reach, bottom = -reach;
        t.residual(rel_diff(cdf(x, m, top, s.tolerance), p));
        t.residual(size_of(cdf(x, m, bottom, s.tolerance)));
        for (int j = 0; j < 20; ++j) {
            const HyperNum z = random_hypernum(rng, -6, 6);
            const HyperNum z2 = z + HyperNum{rng.uniform(0, 3), rng.uniform(0, 3)};
            const auto r = compare(cdf(x, m, z, s.tolerance), cdf(x, m, z2, s.tolerance), s.tolerance);
            t.expect(le(r), "cdf decreases along a comparable chain");
        }
    };
    for (int k = 0; k < kScenarios; ++k) {
        const auto st = random_setup(rng, kModes[k % 3]);
        check(st.x, st.measure);
    }
    for (const auto& x : oracle::identity_variables(s)) check(x, s.measure);
    return t.finish();
}

CheckResult regions(const Scenario& s, Rng rng) {
    Tracker t("expectation.regions", 0);
    const auto check = [&](const DRandomVar& x, const HyperNum& alpha) {
        const auto r = classify_regions(x, alpha, s.tolerance);
        const std::size_t n = x.size();
        t.expect(r.le.unite(r.gt).unite(r.incmp) == Event::all(n), "regions do not cover the space");
        t.expect(r.le.disjoint_with(r.gt) && r.le.disjoint_with(r.incmp) && r.gt.disjoint_with(r.incmp),
                 "regions overlap");
        t.expect(r.lt.subset_of(r.le) && r.gt.subset_of(r.ge), "strict region outside its lax region");
        // Complements: {X > alpha} u A_alpha is the complement of {X <= alpha}.
        t.expect(r.gt.unite(r.incmp) == r.le.complement(n), "complement identity (i) <-> (ii)");
        t.expect(r.lt.unite(r.incmp) == r.ge.complement(n), "complement identity (iii) <-> (iv)");
    };
    for (int k = 0; k < kScenarios; ++k) {
        const auto st = random_setup(rng, MassMode::One);
        check(st.x, random_hypernum(rng, -5, 5));
        check(st.x, st.x[0]);
        // Real variables against a real alpha are never incomparable.
        std::vector<double> reals(st.space.size());
        for (auto& r : reals) r = rng.uniform(-5, 5);
        const auto real_x = DRandomVar::real(st.space, reals);
        const auto rr = classify_regions(real_x, HyperNum::real(rng.uniform(-5, 5)), s.tolerance);
        t.expect(rr.incmp.empty(), "real variable incomparable with a real alpha");
    }
    for (const auto& x : oracle::identity_variables(s)) check(x, random_hypernum(rng, -3, 3));
    return t.finish();
}

}  // namespace

std::vector<CheckDef> expectation_checks() {
    return {{"expectation.linearity", linearity},
            {"expectation.addition", addition},
            {"expectation.affine", affine_law},
            {"expectation.indicator", indicators},
            {"expectation.product_independent", product_theorem},
            {"expectation.dependence_detected", dependence_detected},
            {"expectation.variance_affine", variance_affine},
            {"expectation.variance_additive", variance_additive},
            {"expectation.cauchy_schwarz", cauchy_schwarz},
            {"expectation.mean_deviation", mean_deviation},
            {"expectation.moments", moments},
            {"expectation.pmf_cdf", pmf_cdf},
            {"expectation.regions", regions}};
}

}  // namespace hyperprob::detail
