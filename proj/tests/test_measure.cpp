#include <vector>

#include "hyperprob/error.hpp"
#include "hyperprob/generators.hpp"
#include "hyperprob/measure.hpp"
#include "hyperprob/oracle.hpp"
#include "support.hpp"

using namespace hyperprob;

namespace {

DMeasure make_measure(std::vector<double> w1, std::vector<double> w2, MassMode mode = MassMode::One) {
    auto space = SampleSpace::indexed(w1.size());
    return DMeasure(std::move(space), std::move(w1), std::move(w2), mode);
}

}  // namespace

TEST_CASE("sample spaces and events") {
    CHECK_THROWS_AS(SampleSpace({}), Error);
    CHECK_THROWS_AS(SampleSpace({"a", "a"}), Error);
    const SampleSpace s({"h", "t"});
    CHECK(s.index_of("t") == 1);
    CHECK_THROWS_AS(s.index_of("x"), Error);
    CHECK(SampleSpace::indexed(3).label(2) == "w2");

    const Event a({2, 0, 2});
    CHECK(a.members() == std::vector<std::size_t>{0, 2});
    CHECK(a.complement(4) == Event({1, 3}));
    CHECK(a.unite(Event({1})) == Event({0, 1, 2}));
    CHECK(a.intersect(Event({2, 3})) == Event({2}));
    CHECK(a.disjoint_with(Event({1, 3})));
    CHECK(Event({0}).subset_of(a));
    CHECK(Event::from_mask(0b101, 3) == a);
    CHECK_THROWS_AS(a.check_range(2), Error);
    CHECK(parse_mass_mode("edagger") == MassMode::EDagger);
    CHECK_THROWS_AS(parse_mass_mode("two"), Error);
}

TEST_CASE("measure of an event") {
    const auto m = make_measure({.2, .3, .5}, {.5, .25, .25});
    CHECK_HYPER(measure_of(m, Event({0, 1})), testing::cart(0.625, -0.125));
    CHECK(measure_of(m, Event{}) == kZero);
    CHECK_HYPER(measure_of(m, Event::all(3)), kOne);
    CHECK_THROWS_AS(measure_of(m, Event({3})), Error);

    const auto me = make_measure({.5, .5, 0}, {0, 0, 0}, MassMode::E);
    for (std::uint64_t mask = 0; mask < 8; ++mask) CHECK(measure_of(me, Event::from_mask(mask, 3)).v() == 0);
    CHECK_THROWS_AS(make_measure({.5, .5}, {.5}), Error);
}

TEST_CASE("axiom validation") {
    CHECK(validate_axioms(make_measure({.2, .3, .5}, {.5, .25, .25})).ok());
    const auto short_mass = validate_axioms(make_measure({.2, .3, .4}, {.5, .25, .25}));
    CHECK(short_mass.violates(2));
    CHECK_FALSE(short_mass.violates(1));
    CHECK(validate_axioms(make_measure({-.2, .7, .5}, {.5, .25, .25})).violates(1));
    CHECK(validate_axioms(make_measure({.5, .5, 0}, {0, .5, .5}, MassMode::E)).violates(2));
    CHECK(validate_axioms(make_measure({.5, .5, 0}, {0, 0, 0}, MassMode::E)).ok());

    const auto r = validate_axioms(make_measure({.2, .3, .5}, {.5, .25, .25}));
    CHECK(r.exhaustive);
    // Ordered pairs of disjoint events on 3 outcomes: 3^3.
    CHECK(r.additivity_pairs_checked == 27);

    Rng rng(1);
    const auto big = random_measure(rng, SampleSpace::indexed(20), MassMode::One);
    const auto rb = validate_axioms(big, {}, 7);
    CHECK(rb.ok());
    CHECK_FALSE(rb.exhaustive);
}

TEST_CASE("conditional probability branches") {
    const auto m = make_measure({.2, .3, .5}, {.1, .4, .5});
    CHECK(conditioning_branch(measure_of(m, Event({0, 1}))) == ConditionalBranch::Invertible);
    CHECK_HYPER(conditional_probability(m, Event({1}), Event({0, 1})), HyperNum(0.6, 0.8));

    const auto z = make_measure({.2, .3, .5}, {0, .5, .5});
    CHECK(conditioning_branch(measure_of(z, Event({0}))) == ConditionalBranch::ZeroDivisorE);
    CHECK_HYPER(conditional_probability(z, Event({0, 1}), Event({0})), testing::cart(0.75, 0.25));

    const auto dz = make_measure({0, .5, .5}, {.2, .3, .5});
    CHECK_HYPER(conditional_probability(dz, Event({0, 1}), Event({0})), HyperNum(0.5, 1));

    const auto null = make_measure({0, .5, .5}, {0, .5, .5});
    CHECK(conditioning_branch(kZero) == ConditionalBranch::Null);
    CHECK(conditional_probability(null, Event({1}), Event({0})) == measure_of(null, Event({1})));
    CHECK(conditioning_branch(HyperNum(1e-15, 0.3)) == ConditionalBranch::ZeroDivisorEDagger);
}

TEST_CASE("conditional probability matches the oracle exhaustively") {
    Rng rng(21);
    const MassMode modes[] = {MassMode::One, MassMode::E, MassMode::EDagger};
    for (int k = 0; k < 60; ++k) {
        const std::size_t n = 1 + rng.below(6);
        const auto m = random_measure(rng, SampleSpace::indexed(n), modes[k % 3], 0.3);
        for (std::uint64_t a = 0; a < (1u << n); ++a) {
            for (std::uint64_t b = 0; b < (1u << n); ++b) {
                const auto lib = conditional_probability(m, Event::from_mask(a, n), Event::from_mask(b, n));
                CHECK_HYPER_TOL(lib, oracle::conditional_probability(m, a, b), 1e-12);
            }
        }
    }
}

TEST_CASE("restriction") {
    const auto u = make_measure({.25, .25, .25, .25}, {.25, .25, .25, .25});
    const auto r = restrict_to(u, Event({0, 1}));
    CHECK(r.measure.size() == 2);
    CHECK(r.measure.mass() == MassMode::One);
    CHECK(r.measure.w1() == std::vector<double>{.5, .5});
    CHECK(r.measure.w2() == std::vector<double>{.5, .5});
    CHECK(r.parent_index == std::vector<std::size_t>{0, 1});

    const auto m = make_measure({.2, .3, .5}, {.5, .25, .25});
    const auto whole = restrict_to(m, Event::all(3));
    CHECK(whole.measure.w1() == m.w1());
    CHECK(whole.measure.w2() == m.w2());

    const auto z = make_measure({.2, .3, .5}, {0, .5, .5});
    const auto rz = restrict_to(z, Event({0}));
    CHECK(rz.measure.mass() == MassMode::One);
    CHECK(validate_axioms(rz.measure).ok());
    for (std::uint64_t a = 0; a < 8; ++a) {
        const Event ev = Event::from_mask(a, 3);
        CHECK_HYPER(measure_of(rz.measure, rz.to_local(ev)), conditional_probability(z, ev, Event({0})));
    }
    CHECK_THROWS_AS(restrict_to(make_measure({0, .5, .5}, {0, .5, .5}), Event({0})), Error);
}

TEST_CASE("monotonicity and additivity on random measures") {
    Rng rng(4);
    for (int k = 0; k < 100; ++k) {
        const std::size_t n = 1 + rng.below(6);
        const auto m = random_measure(rng, SampleSpace::indexed(n), MassMode::One, 0.2);
        const Event a = random_event(rng, n), b = random_event(rng, n);
        CHECK(precedes_or_equal(measure_of(m, a.intersect(b)), measure_of(m, a)));
        const Event rest = b.intersect(a.complement(n));
        CHECK_HYPER(measure_of(m, a.unite(rest)), measure_of(m, a) + measure_of(m, rest));
    }
}
