// Conditional expectation given events and partitions, with every
// zero-divisor case of the union and sub-partition identities.

#include <array>
#include <map>
#include <optional>

#include "check_registry.hpp"
#include "hyperprob/error.hpp"
#include "hyperprob/generators.hpp"
#include "hyperprob/oracle.hpp"

namespace hyperprob::detail {

namespace {

constexpr std::size_t kExhaustiveUnion = 10;
constexpr std::size_t kExhaustiveCells = 16;

std::uint64_t full_mask(std::size_t n) { return (std::uint64_t{1} << n) - 1; }

std::vector<std::size_t> cells_of(std::uint64_t mask, std::size_t count) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < count; ++i) {
        if (mask >> i & 1) out.push_back(i);
    }
    return out;
}

std::string missing(const std::vector<std::string>& labels, const std::map<std::string, std::size_t>& hits) {
    std::string out;
    for (const auto& l : labels) {
        const auto it = hits.find(l);
        if (it == hits.end() || it->second == 0) out += (out.empty() ? "" : ", ") + l;
    }
    return out;
}

std::string hit_summary(const std::map<std::string, std::size_t>& hits) {
    std::string out;
    for (const auto& [l, c] : hits) out += (out.empty() ? "" : " ") + l + "=" + std::to_string(c);
    return out;
}

CheckResult def81_oracle(const Scenario& s, Rng) {
    Tracker t("conditional.def81_oracle", 1e-12);
    const std::size_t n = s.space.size();
    if (n > oracle::kMaxOutcomes) {
        t.note("skipped: oracle enumerates at most 6 outcomes");
        return t.finish();
    }
    for (const auto& x : oracle::identity_variables(s)) {
        for (std::uint64_t b = 0; b <= full_mask(n); ++b) {
            const HyperNum lib = conditional_expectation(x, s.measure, Event::from_mask(b, n), s.tolerance);
            t.residual(size_of(lib - oracle::conditional_expectation(x, s.measure, b, s.tolerance)));
        }
    }
    return t.finish();
}

// Exclusive-union identity over every disjoint pair of the scenario.
CheckResult thm82_scenario(const Scenario& s, Rng rng) {
    Tracker t("conditional.thm82_scenario", 1e-9);
    const std::size_t n = s.space.size();
    const auto vars = oracle::identity_variables(s);
    const auto run = [&](const Event& a, const Event& b) {
        for (const auto& x : vars) t.residual(size_of(exclusive_union_residual(x, s.measure, a, b, s.tolerance)));
    };
    if (n <= kExhaustiveUnion) {
        const std::uint64_t full = full_mask(n);
        for (std::uint64_t a = 0; a <= full; ++a) {
            const std::uint64_t rest = full & ~a;
            for (std::uint64_t b = rest;; b = (b - 1) & rest) {
                run(Event::from_mask(a, n), Event::from_mask(b, n));
                if (b == 0) break;
            }
        }
    } else {
        for (int k = 0; k < 4096; ++k) {
            std::vector<std::size_t> in_a, in_b;
            for (std::size_t i = 0; i < n; ++i) {
                const auto r = rng.below(3);
                if (r == 0) in_a.push_back(i);
                if (r == 1) in_b.push_back(i);
            }
            run(Event(std::move(in_a)), Event(std::move(in_b)));
        }
    }
    return t.finish();
}

// Every positivity pattern of P(A), P(B) and the leftover outcome, on the
// space {0..4} with A = {0, 1} and B = {2, 3}, under each mass mode.
CheckResult thm82_matrix(const Scenario& s, Rng rng) {
    Tracker t("conditional.thm82_matrix", 1e-9);
    const auto space = SampleSpace::indexed(5);
    const Partition cells(5, {Event({0, 1}), Event({2, 3}), Event({4})});
    const Event a({0, 1}), b({2, 3});
    const std::array<NumberClass, 4> classes{NumberClass::Zero, NumberClass::ZeroDivisorE,
                                             NumberClass::ZeroDivisorEDagger, NumberClass::Invertible};
    std::map<std::string, std::size_t> hits;
    for (const auto mode : {MassMode::One, MassMode::E, MassMode::EDagger}) {
        for (const auto ca : classes) {
            for (const auto cb : classes) {
                for (const auto cl : classes) {
                    const std::array<NumberClass, 3> pattern{ca, cb, cl};
                    std::optional<DMeasure> m;
                    try {
                        m = random_measure_with_cells(rng, space, cells, pattern, mode);
                    } catch (const Error& e) {
                        if (e.code() != ErrorCode::InvalidArgument) throw;
                        continue;  // pattern cannot reach the mass
                    }
                    ++hits[exclusive_union_case(*m, a, b, s.tolerance)];
                    for (int j = 0; j < 4; ++j) {
                        const auto x = random_variable(rng, space);
                        t.residual(size_of(exclusive_union_residual(x, *m, a, b, s.tolerance)));
                        t.residual(size_of(exclusive_union_residual(x, *m, b, a, s.tolerance)));
                    }
                }
            }
        }
    }
    const auto gaps = missing(exclusive_union_case_labels(), hits);
    t.expect(gaps.empty(), "union cases never reached: " + gaps);
    t.note(hit_summary(hits));
    return t.finish();
}

// Generator-integral and sub-partition identities for one partition, over
// every selection of cells (sampled beyond 16 cells).
void partition_identities(const DRandomVar& x, const DMeasure& m, const Partition& p, Tolerance tol, Rng& rng,
                          Tracker& eqn3, Tracker* thm83, std::map<std::string, std::size_t>* sub_hits) {
    const auto run = [&](const std::vector<std::size_t>& j) {
        eqn3.residual(size_of(integral_identity_residual(x, m, p, j, tol)));
        if (!thm83 || j.empty()) return;
        const auto [r1, r2] = subpartition_identity_residuals(x, m, p, j, tol);
        thm83->residual(std::max(size_of(r1), size_of(r2)));
        if (sub_hits) ++(*sub_hits)[subpartition_case(m, p, j, tol)];
    };
    const std::size_t c = p.size();
    if (c <= kExhaustiveCells) {
        for (std::uint64_t mask = 0; mask <= full_mask(c); ++mask) run(cells_of(mask, c));
    } else {
        for (int k = 0; k < 2048; ++k) {
            std::vector<std::size_t> j;
            for (std::size_t i = 0; i < c; ++i) {
                if (rng.chance(0.5)) j.push_back(i);
            }
            run(j);
        }
    }
}

CheckResult eqn3_scenario(const Scenario& s, Rng rng) {
    Tracker t("conditional.eqn3_scenario", 1e-9);
    std::map<std::string, std::size_t> cases;
    for (const auto& p : oracle::identity_partitions(s)) {
        ++cases[integral_identity_case(s.measure, p, s.tolerance)];
        for (const auto& x : oracle::identity_variables(s)) partition_identities(x, s.measure, p, s.tolerance, rng, t, nullptr, nullptr);
    }
    t.note("cases " + hit_summary(cases));
    return t.finish();
}

CheckResult thm83_scenario(const Scenario& s, Rng rng) {
    Tracker t("conditional.thm83_scenario", 1e-9);
    Tracker unused("", 1);
    std::map<std::string, std::size_t> cases;
    for (const auto& p : oracle::identity_partitions(s)) {
        for (const auto& x : oracle::identity_variables(s)) {
            partition_identities(x, s.measure, p, s.tolerance, rng, unused, &t, &cases);
        }
    }
    t.note("cases " + hit_summary(cases));
    return t.finish();
}

// 500 seeded partitions on at most 8 outcomes. The measures cycle through
// generic ones of each mass, ones where no cell is invertible, and ones with
// a single invertible cell among zero divisors of one type.
DMeasure partition_measure(Rng& rng, const SampleSpace& space, const Partition& p, int kind) {
    const std::size_t c = p.size();
    std::vector<NumberClass> classes(c);
    switch (kind) {
        case 0: return random_measure(rng, space, MassMode::One, 0.3);
        case 1: return random_measure(rng, space, MassMode::E, 0.3);
        case 2: return random_measure(rng, space, MassMode::EDagger, 0.3);
        case 3: {
            // No invertible cell. Under mass One both types must appear, so
            // single-cell partitions fall back to mass e.
            if (c == 1) {
                classes[0] = NumberClass::ZeroDivisorE;
                return random_measure_with_cells(rng, space, p, classes, MassMode::E);
            }
            const std::array<NumberClass, 3> pool{NumberClass::ZeroDivisorE, NumberClass::ZeroDivisorEDagger,
                                                  NumberClass::Zero};
            for (auto& k : classes) k = pool[rng.below(3)];
            classes[0] = NumberClass::ZeroDivisorE;
            classes[c - 1] = NumberClass::ZeroDivisorEDagger;
            return random_measure_with_cells(rng, space, p, classes, MassMode::One);
        }
        default: {
            const bool e_type = rng.chance(0.5);
            for (auto& k : classes) k = e_type ? NumberClass::ZeroDivisorE : NumberClass::ZeroDivisorEDagger;
            classes[rng.below(c)] = NumberClass::Invertible;
            return random_measure_with_cells(rng, space, p, classes, MassMode::One);
        }
    }
}

CheckResult random_partitions(const Scenario& s, Rng rng) {
    Tracker eqn3("conditional.random_partitions", 1e-9);
    Tracker thm83("thm83", 1e-9);
    std::map<std::string, std::size_t> eqn3_cases, sub_cases;
    for (int seed = 0; seed < 500; ++seed) {
        Rng local = rng.fork(static_cast<std::uint64_t>(seed));
        const std::size_t n = 1 + local.below(8);
        const auto space = SampleSpace::indexed(n);
        const auto p = random_partition(local, n, n);
        const auto m = partition_measure(local, space, p, seed % 5);
        eqn3.expect_lazy(validate_axioms(m, s.tolerance).ok(), [] { return std::string("generated measure fails the axioms"); });
        ++eqn3_cases[integral_identity_case(m, p, s.tolerance)];
        const auto x = random_variable(local, space);
        partition_identities(x, m, p, s.tolerance, local, eqn3, &thm83, &sub_cases);
    }
    const auto r83 = thm83.finish();
    eqn3.residual(r83.max_residual);
    if (!r83.passed) eqn3.fail("sub-partition identity: " + r83.note);
    for (const auto& label : {"a", "b", "c"}) {
        eqn3.expect(eqn3_cases[label] > 0, std::string("generator-integral case ") + label + " never reached");
    }
    const std::vector<std::string> sub_labels{"a.i", "a.ii", "b", "c"};
    const auto gaps = missing(sub_labels, sub_cases);
    eqn3.expect(gaps.empty(), "sub-partition cases never reached: " + gaps);
    eqn3.note("generator-integral " + hit_summary(eqn3_cases) + "; sub-partition " + hit_summary(sub_cases));
    return eqn3.finish();
}

// E_P applied to the cell-constant variable E_P(X) returns it unchanged.
CheckResult idempotent(const Scenario& s, Rng rng) {
    Tracker t("conditional.idempotent", 1e-9);
    const auto run = [&](const DRandomVar& x, const DMeasure& m, const Partition& p) {
        const auto once = partition_conditional(x, m, p, s.tolerance);
        const auto twice = partition_conditional(once, m, p, s.tolerance);
        for (std::size_t i = 0; i < x.size(); ++i) t.residual(rel_diff(once[i], twice[i]));
    };
    for (int k = 0; k < 200; ++k) {
        const std::size_t n = 1 + rng.below(8);
        const auto space = SampleSpace::indexed(n);
        const auto p = random_partition(rng, n, n);
        run(random_variable(rng, space), partition_measure(rng, space, p, k % 5), p);
    }
    for (const auto& p : oracle::identity_partitions(s)) {
        for (const auto& x : oracle::identity_variables(s)) run(x, s.measure, p);
    }
    return t.finish();
}

// The trivial partition gives the plain expectation; conditioning on the
// whole space likewise.
CheckResult trivial_partition(const Scenario& s, Rng rng) {
    Tracker t("conditional.trivial_partition", 1e-12);
    const auto run = [&](const DRandomVar& x, const DMeasure& m) {
        const std::size_t n = x.size();
        const HyperNum ex = expectation(x, m);
        const auto ep = partition_conditional(x, m, Partition::trivial(n), s.tolerance);
        for (std::size_t i = 0; i < n; ++i) t.residual(rel_diff(ep[i], ex));
        t.residual(rel_diff(conditional_expectation(x, m, Event::all(n), s.tolerance), ex));
    };
    for (int k = 0; k < 200; ++k) {
        const auto space = SampleSpace::indexed(1 + rng.below(8));
        run(random_variable(rng, space), random_measure(rng, space, MassMode::One, 0.3));
    }
    if (s.measure.mass() == MassMode::One) {
        for (const auto& x : oracle::identity_variables(s)) run(x, s.measure);
    }
    return t.finish();
}

}  // namespace

std::vector<CheckDef> conditional_checks() {
    std::vector<CheckDef> out{{"conditional.def81_oracle", def81_oracle},
                              {"conditional.thm82_scenario", thm82_scenario},
                              {"conditional.thm82_matrix", thm82_matrix},
                              {"conditional.eqn3_scenario", eqn3_scenario},
                              {"conditional.thm83_scenario", thm83_scenario},
                              {"conditional.random_partitions", random_partitions},
                              {"conditional.idempotent", idempotent},
                              {"conditional.trivial_partition", trivial_partition}};
    for (const auto& id : oracle::identities()) {
        for (auto& c : identity_checks(id)) out.push_back(std::move(c));
    }
    return out;
}

}  // namespace hyperprob::detail
