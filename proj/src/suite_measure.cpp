// Measure axioms, conditional probability and restriction.

#include <array>
#include <map>

#include "check_registry.hpp"
#include "hyperprob/error.hpp"
#include "hyperprob/generators.hpp"
#include "hyperprob/oracle.hpp"

namespace hyperprob::detail {

namespace {

constexpr std::size_t kExhaustive = 10;

std::uint64_t full_mask(std::size_t n) { return (std::uint64_t{1} << n) - 1; }

CheckResult scenario_axioms(const Scenario& s, Rng) {
    Tracker t("measure.scenario_axioms", 0);
    const auto report = validate_axioms(s.measure, s.tolerance);
    t.expect(report.ok(), describe_violations(report));
    t.note(std::to_string(report.additivity_pairs_checked) + " disjoint pairs" +
           (report.exhaustive ? " (exhaustive)" : " (sampled)"));
    return t.finish();
}

CheckResult monotonicity(const Scenario& s, Rng rng) {
    Tracker t("measure.monotonicity", 0);
    const auto& m = s.measure;
    const std::size_t n = m.size();
    const auto check = [&](const Event& a, const Event& b) {
        const auto r = compare(measure_of(m, a), measure_of(m, b), s.tolerance);
        t.expect(r == OrderRelation::Less || r == OrderRelation::Equal, "P(A) not <= P(B) for A in B");
    };
    if (n <= kExhaustive) {
        const std::uint64_t full = full_mask(n);
        for (std::uint64_t b = 0; b <= full; ++b) {
            for (std::uint64_t a = b;; a = (a - 1) & b) {
                check(Event::from_mask(a, n), Event::from_mask(b, n));
                if (a == 0) break;
            }
        }
    } else {
        for (int k = 0; k < 4096; ++k) {
            const Event b = random_event(rng, n);
            check(b.intersect(random_event(rng, n)), b);
        }
    }
    return t.finish();
}

// Library conditional probability against the componentwise oracle for
// every (A, B) pair of a measure on at most 6 outcomes.
void oracle_pairs(const DMeasure& m, Tolerance tol, Tracker& t, std::array<std::size_t, 4>* branches) {
    const std::size_t n = m.size();
    const std::uint64_t full = full_mask(n);
    for (std::uint64_t b = 0; b <= full; ++b) {
        const Event eb = Event::from_mask(b, n);
        if (branches) ++(*branches)[static_cast<std::size_t>(conditioning_branch(measure_of(m, eb), tol))];
        for (std::uint64_t a = 0; a <= full; ++a) {
            const HyperNum lib = conditional_probability(m, Event::from_mask(a, n), eb, tol);
            t.residual(size_of(lib - oracle::conditional_probability(m, a, b, tol)));
        }
    }
}

CheckResult def22_oracle(const Scenario& s, Rng) {
    Tracker t("measure.def22_oracle", 1e-12);
    if (s.space.size() > oracle::kMaxOutcomes) {
        t.note("skipped: oracle enumerates at most 6 outcomes");
        return t.finish();
    }
    oracle_pairs(s.measure, s.tolerance, t, nullptr);
    return t.finish();
}

CheckResult branch_totality(const Scenario& s, Rng rng) {
    Tracker t("measure.branch_totality", 1e-9);
    const auto& m = s.measure;
    const std::size_t n = m.size();
    const auto check = [&](const Event& b) {
        const HyperNum pb = measure_of(m, b);
        const auto c = classify(pb, s.tolerance);
        const auto branch = conditioning_branch(pb, s.tolerance);
        // Exactly one branch, and the one matching the sign pattern of P(B).
        const bool z1 = s.tolerance.is_zero(pb.u()), z2 = s.tolerance.is_zero(pb.v());
        const auto expected = z1 && z2   ? ConditionalBranch::Null
                              : z2       ? ConditionalBranch::ZeroDivisorE
                              : z1       ? ConditionalBranch::ZeroDivisorEDagger
                                         : ConditionalBranch::Invertible;
        t.expect(branch == expected, "branch does not match the sign pattern of P(B)");
        if (c == NumberClass::Invertible) t.residual(size_of(conditional_probability(m, b, b, s.tolerance) - kOne));
    };
    if (n <= kExhaustive) {
        for (std::uint64_t b = 0; b <= full_mask(n); ++b) check(Event::from_mask(b, n));
    } else {
        for (int k = 0; k < 4096; ++k) check(random_event(rng, n));
    }
    return t.finish();
}

// A restriction must satisfy the axioms again and reproduce P(A/B).
void check_restriction(const DMeasure& m, const Event& b, Tolerance tol, Tracker& t) {
    const auto r = restrict_to(m, b, tol);
    const auto report = validate_axioms(r.measure, tol);
    t.expect_lazy(report.ok(), [&] { return "restriction fails the axioms: " + describe_violations(report); });
    const std::size_t n = m.size();
    if (n <= 6) {
        for (std::uint64_t a = 0; a <= full_mask(n); ++a) {
            const Event ea = Event::from_mask(a, n);
            // Restrictions to an invertible P(B) live on B, so only the
            // trace of A on B is visible there.
            const Event seen = r.parent_index.size() == n ? ea : ea.intersect(b);
            t.residual(size_of(measure_of(r.measure, r.to_local(seen)) - conditional_probability(m, seen, b, tol)));
        }
    }
}

CheckResult restrictions(const Scenario& s, Rng rng) {
    Tracker t("measure.restriction", 1e-9);
    const auto& m = s.measure;
    const std::size_t n = m.size();
    std::vector<Event> bs;
    if (n <= 6) {
        for (std::uint64_t b = 0; b <= full_mask(n); ++b) bs.push_back(Event::from_mask(b, n));
    } else {
        for (int k = 0; k < 256; ++k) bs.push_back(random_event(rng, n));
    }
    for (const auto& b : bs) {
        if (classify(measure_of(m, b), s.tolerance) == NumberClass::Zero) {
            bool threw = false;
            try {
                (void)restrict_to(m, b, s.tolerance);
            } catch (const Error& e) {
                threw = e.code() == ErrorCode::NullConditioningEvent;
            }
            t.expect(threw, "restriction to a null event did not raise NullConditioningEvent");
            continue;
        }
        check_restriction(m, b, s.tolerance, t);
    }
    return t.finish();
}

// Random measures of every mass mode on small spaces, exhaustively.
CheckResult random_measures(const Scenario& s, Rng rng) {
    Tracker t("measure.random_modes", 1e-9);
    std::array<std::size_t, 4> branches{};
    const std::array<MassMode, 3> modes{MassMode::One, MassMode::E, MassMode::EDagger};
    for (int k = 0; k < 150; ++k) {
        const auto mode = modes[k % 3];
        const std::size_t n = 1 + rng.below(oracle::kMaxOutcomes);
        const auto space = SampleSpace::indexed(n);
        const auto m = (k / 3) % 2 == 0 ? random_measure(rng, space, mode, 0.35)
                                        : random_dyadic_measure(rng, space, mode, 6);
        const auto report = validate_axioms(m, s.tolerance);
        t.expect_lazy(report.ok(), [&] { return "generated measure fails the axioms: " + describe_violations(report); });
        oracle_pairs(m, s.tolerance, t, &branches);
        for (std::uint64_t b = 0; b <= full_mask(n); ++b) {
            const Event eb = Event::from_mask(b, n);
            if (classify(measure_of(m, eb), s.tolerance) != NumberClass::Zero) check_restriction(m, eb, s.tolerance, t);
        }
    }
    const bool all_hit = std::all_of(branches.begin(), branches.end(), [](std::size_t c) { return c > 0; });
    t.expect(all_hit, "not every conditioning branch was exercised");
    t.note("branches invertible=" + std::to_string(branches[0]) + " null=" + std::to_string(branches[1]) +
           " e=" + std::to_string(branches[2]) + " edagger=" + std::to_string(branches[3]));
    return t.finish();
}

CheckResult invalid_measures(const Scenario& s, Rng rng) {
    Tracker t("measure.invalid_detected", 0);
    for (int k = 0; k < 100; ++k) {
        const std::size_t n = 2 + rng.below(6);
        const auto space = SampleSpace::indexed(n);
        const auto good = random_measure(rng, space, MassMode::One);
        auto w1 = good.w1();
        for (auto& w : w1) w *= 0.9;
        t.expect(validate_axioms(DMeasure(space, w1, good.w2(), MassMode::One), s.tolerance).violates(2),
                 "mass 0.9 not reported under axiom (ii)");
        auto w2 = good.w2();
        w2[rng.below(n)] = -0.25;
        t.expect(validate_axioms(DMeasure(space, good.w1(), w2, MassMode::One), s.tolerance).violates(1),
                 "negative weight not reported under axiom (i)");
        t.expect(validate_axioms(DMeasure(space, good.w1(), good.w2(), MassMode::E), s.tolerance).violates(2),
                 "nonzero second component under mass e not reported");
    }
    return t.finish();
}

}  // namespace

std::vector<CheckDef> measure_checks() {
    return {{"measure.scenario_axioms", scenario_axioms}, {"measure.monotonicity", monotonicity},
            {"measure.def22_oracle", def22_oracle},       {"measure.branch_totality", branch_totality},
            {"measure.restriction", restrictions},        {"measure.random_modes", random_measures},
            {"measure.invalid_detected", invalid_measures}};
}

}  // namespace hyperprob::detail
