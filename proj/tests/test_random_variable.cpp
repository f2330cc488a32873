#include <vector>

#include "hyperprob/error.hpp"
#include "hyperprob/generators.hpp"
#include "hyperprob/random_variable.hpp"
#include "support.hpp"

using namespace hyperprob;
using testing::cart;

namespace {

const SampleSpace kThree = SampleSpace::indexed(3);
const DMeasure kM(kThree, {.2, .3, .5}, {.5, .25, .25}, MassMode::One);

// Two independent fair coins, one per component, on four outcomes.
DMeasure coins() {
    return DMeasure(SampleSpace::indexed(4), {.25, .25, .25, .25}, {.25, .25, .25, .25}, MassMode::One);
}
DRandomVar coin_var() {
    const std::vector<double> x1{0, 0, 1, 1}, x2{0, 1, 0, 1};
    return DRandomVar::from_components(SampleSpace::indexed(4), x1, x2);
}

}  // namespace

TEST_CASE("components") {
    const auto one = components(DRandomVar::constant(kThree, kOne));
    CHECK(one.x1 == std::vector<double>{1, 1, 1});
    CHECK(one.x2 == std::vector<double>{1, 1, 1});
    const auto e = components(DRandomVar::constant(kThree, kE));
    CHECK(e.x1 == std::vector<double>{1, 1, 1});
    CHECK(e.x2 == std::vector<double>{0, 0, 0});
    const auto single = components(DRandomVar(SampleSpace::indexed(1), {cart(2, 1)}));
    CHECK(single.x1 == std::vector<double>{3});
    CHECK(single.x2 == std::vector<double>{1});
    CHECK_THROWS_AS(DRandomVar(kThree, {kOne}), Error);
}

TEST_CASE("integral and expectation") {
    const DRandomVar x(kThree, {kOne, kE, kZero});
    CHECK_HYPER(integral(x, kM, Event::all(3)), HyperNum::real(0.5));
    CHECK_HYPER(expectation(x, kM), HyperNum::real(0.5));
    CHECK(integral(x, kM, Event{}) == kZero);
    CHECK_HYPER(expectation(DRandomVar::constant(kThree, kOne), kM), kOne);
    CHECK_HYPER(expectation(DRandomVar::constant(kThree, cart(2, -3)), kM), cart(2, -3));

    const DMeasure other(SampleSpace::indexed(3), {.2, .3, .5}, {.5, .25, .25}, MassMode::One);
    const DMeasure four(SampleSpace::indexed(4), {.25, .25, .25, .25}, {.25, .25, .25, .25}, MassMode::One);
    CHECK_NOTHROW(expectation(x, other));
    CHECK_THROWS_AS(expectation(x, four), Error);

    for (Thorn th : {Thorn::One, Thorn::E, Thorn::EDagger}) {
        const Event a({0, 2});
        CHECK_HYPER(expectation(DRandomVar::indicator(kThree, a, th), kM), thorn_value(th) * measure_of(kM, a));
    }
}

TEST_CASE("variance and moments") {
    CHECK_HYPER(variance(DRandomVar::constant(kThree, cart(1, 2)), kM), kZero);
    const std::vector<double> x1{0, 1, 0, 1}, x2{0, 0, 0, 0};
    const auto coin = DRandomVar::from_components(SampleSpace::indexed(4), x1, x2);
    CHECK_HYPER(variance(coin, coins()), 0.25 * kE);

    const DRandomVar x(kThree, {cart(2, 1), kZero, cart(-1, 0.5)});
    CHECK_HYPER(moment_about(x, kM, kZero, 0), kOne);
    CHECK_HYPER(moment_about(x, kM, kZero, 1), expectation(x, kM));
    CHECK_HYPER(central_moment(x, kM, 2), variance(x, kM));
    CHECK_HYPER(moment_about(x, kM, expectation(x, kM), 2), variance(x, kM));
    CHECK_HYPER(mgf(x, kM, kZero), kOne);

    Rng rng(2);
    for (int k = 0; k < 200; ++k) {
        const auto m = random_measure(rng, kThree, MassMode::One);
        const auto y = random_variable(rng, kThree);
        const HyperNum a = random_hypernum(rng, -3, 3), b = random_hypernum(rng, -3, 3);
        CHECK_HYPER_TOL(variance(affine(y, a, b), m), a * a * variance(y, m), 1e-9);
    }
}

TEST_CASE("pmf and cdf") {
    const auto f = pmf(DRandomVar::constant(kThree, cart(1, 1)), kM);
    REQUIRE(f.size() == 1);
    CHECK_HYPER(f.begin()->second, kOne);

    const auto g = pmf(coin_var(), coins());
    CHECK(g.size() == 4);
    for (const auto& [z, p] : g) CHECK_HYPER(p, HyperNum(0.5, 0.5));
    CHECK_HYPER(pmf_marginal_total(g), kOne);

    CHECK_HYPER(cdf(coin_var(), coins(), HyperNum(0, 1)), HyperNum(0.5, 1));
    CHECK_HYPER(cdf(coin_var(), coins(), HyperNum(5, 5)), kOne);
    CHECK_HYPER(cdf(coin_var(), coins(), HyperNum(-1, -1)), kZero);

    const DMeasure me(SampleSpace::indexed(4), {.25, .25, .25, .25}, {0, 0, 0, 0}, MassMode::E);
    for (const auto& [z, p] : pmf(coin_var(), me)) CHECK(p.v() == 0);
}

TEST_CASE("joint distribution and independence") {
    const auto m = coins();
    const auto x = coin_var();
    for (const auto& [key, p] : joint_pmf(x, x, m)) CHECK(key.first == key.second);
    CHECK(are_independent(x, DRandomVar::constant(x.space(), cart(3, 1)), m));
    CHECK_FALSE(are_independent(x, x, m));

    const auto a = DRandomVar::indicator(x.space(), Event({0}));
    const auto b = DRandomVar::indicator(x.space(), Event({1, 2}));
    const auto h = joint_pmf(a, b, m);
    const auto both = h.find({kOne, kOne});
    CHECK((both == h.end() || both->second == kZero));

    Rng rng(8);
    for (int k = 0; k < 50; ++k) {
        const auto ps = product_scenario(rng, 1 + rng.below(3), 1 + rng.below(3), MassMode::One);
        CHECK(are_independent(ps.x, ps.y, ps.measure));
        HyperNum total = kZero;
        for (const auto& [key, p] : joint_pmf(ps.x, ps.y, ps.measure)) total += p;
        CHECK_HYPER(total, kOne);
    }
}

TEST_CASE("regions") {
    const auto alpha = cart(1, 0.5);
    const auto same = classify_regions(DRandomVar::constant(kThree, alpha), alpha);
    CHECK(same.le == Event::all(3));
    CHECK(same.gt.empty());
    CHECK(same.incmp.empty());

    const auto two = SampleSpace::indexed(2);
    const auto r = classify_regions(DRandomVar(two, {kE, kEDagger}), HyperNum::real(0.4));
    CHECK(r.incmp == Event::all(2));

    Rng rng(6);
    for (int k = 0; k < 100; ++k) {
        std::vector<double> xs(5);
        for (auto& v : xs) v = rng.uniform(-2, 2);
        const auto rr = classify_regions(DRandomVar::real(SampleSpace::indexed(5), xs), HyperNum::real(rng.uniform(-2, 2)));
        CHECK(rr.incmp.empty());
        CHECK(rr.le.unite(rr.gt) == Event::all(5));
    }
}

TEST_CASE("algebra of variables") {
    const DRandomVar x(kThree, {cart(2, 1), kE, cart(0, -1)});
    const std::vector<HyperNum> unit{kOne};
    const std::vector<DRandomVar> just_x{x};
    CHECK(linear_combine(unit, just_x).values() == x.values());

    const auto c = components(x);
    const auto x1 = DRandomVar::real(kThree, c.x1), x2 = DRandomVar::real(kThree, c.x2);
    const std::vector<HyperNum> idem{kE, kEDagger};
    const std::vector<DRandomVar> parts{x1, x2};
    CHECK(linear_combine(idem, parts).values() == x.values());

    const auto chi = DRandomVar::indicator(kThree, Event({1}));
    CHECK(pointwise_mul(chi, chi).values() == chi.values());
    CHECK_THROWS_AS(linear_combine(idem, just_x), Error);
    CHECK_THROWS_AS(linear_combine(std::vector<HyperNum>{}, std::vector<DRandomVar>{}), Error);

    Rng rng(10);
    for (int k = 0; k < 200; ++k) {
        const auto m = random_measure(rng, kThree, MassMode::One);
        const auto y = random_variable(rng, kThree), z = random_variable(rng, kThree);
        const HyperNum a = random_hypernum(rng, -2, 2), b = random_hypernum(rng, -2, 2);
        const std::vector<HyperNum> ab{a, b};
        const std::vector<DRandomVar> yz{y, z};
        const Event ev = random_event(rng, 3);
        CHECK_HYPER_TOL(integral(linear_combine(ab, yz), m, ev), a * integral(y, m, ev) + b * integral(z, m, ev), 1e-10);
    }
}
