#include <vector>

#include "hyperprob/conditional.hpp"
#include "hyperprob/error.hpp"
#include "hyperprob/generators.hpp"
#include "support.hpp"

using namespace hyperprob;

namespace {

const SampleSpace kThree = SampleSpace::indexed(3);
const SampleSpace kFour = SampleSpace::indexed(4);
const DMeasure kUniform4(kFour, {.25, .25, .25, .25}, {.25, .25, .25, .25}, MassMode::One);

}  // namespace

TEST_CASE("partitions") {
    CHECK_THROWS_AS(Partition(3, {Event({0}), Event({1})}), Error);
    CHECK_THROWS_AS(Partition(3, {Event({0, 1}), Event({1, 2})}), Error);
    CHECK_THROWS_AS(Partition(3, {Event({0, 1, 2}), Event{}}), Error);
    const Partition p(4, {Event({0, 1}), Event({2, 3})});
    const std::vector<std::size_t> second{1};
    CHECK(p.union_of(second) == Event({2, 3}));
    CHECK(Partition::trivial(4).size() == 1);
    CHECK(Partition::singletons(4).size() == 4);
}

TEST_CASE("conditional expectation branches") {
    const DRandomVar x(kThree, {testing::cart(2, 1), kE, HyperNum(-1, 3)});
    const DMeasure m(kThree, {.2, .3, .5}, {.5, .25, .25}, MassMode::One);
    CHECK_HYPER(conditional_expectation(x, m, Event::all(3)), expectation(x, m));

    const DMeasure z(kThree, {.2, .3, .5}, {0, .5, .5}, MassMode::One);
    const DRandomVar ind(kThree, {kOne, kZero, kZero});
    CHECK_HYPER(conditional_expectation(ind, z, Event({0})), kE);

    const DMeasure null(kThree, {0, .5, .5}, {0, .5, .5}, MassMode::One);
    CHECK_HYPER(conditional_expectation(x, null, Event({0})), expectation(x, null));

    // Every branch equals the componentwise conditional means.
    Rng rng(12);
    const MassMode modes[] = {MassMode::One, MassMode::E, MassMode::EDagger};
    for (int k = 0; k < 300; ++k) {
        const std::size_t n = 1 + rng.below(6);
        const auto sp = SampleSpace::indexed(n);
        const auto mm = random_measure(rng, sp, modes[k % 3], 0.3);
        const auto y = random_variable(rng, sp);
        const Event b = random_event(rng, n);
        const HyperNum pb = measure_of(mm, b);
        const auto c = components(y);
        double e1 = 0, e2 = 0, b1 = 0, b2 = 0;
        for (std::size_t i = 0; i < n; ++i) {
            e1 += c.x1[i] * mm.w1()[i];
            e2 += c.x2[i] * mm.w2()[i];
            if (b.contains(i)) {
                b1 += c.x1[i] * mm.w1()[i];
                b2 += c.x2[i] * mm.w2()[i];
            }
        }
        const HyperNum expected(pb.u() > 1e-9 ? b1 / pb.u() : e1, pb.v() > 1e-9 ? b2 / pb.v() : e2);
        CHECK_HYPER_TOL(conditional_expectation(y, mm, b), expected, 1e-9);
    }
}

TEST_CASE("partition conditional") {
    const std::vector<double> vals{0, 1, 2, 3};
    const auto x = DRandomVar::real(kFour, vals);
    const Partition p(4, {Event({0, 1}), Event({2, 3})});
    const auto ep = partition_conditional(x, kUniform4, p);
    CHECK_HYPER(ep[0], HyperNum::real(0.5));
    CHECK_HYPER(ep[1], HyperNum::real(0.5));
    CHECK_HYPER(ep[2], HyperNum::real(2.5));
    CHECK_HYPER(ep[3], HyperNum::real(2.5));

    const auto flat = partition_conditional(x, kUniform4, Partition::trivial(4));
    for (std::size_t i = 0; i < 4; ++i) CHECK_HYPER(flat[i], HyperNum::real(1.5));
    const auto fine = partition_conditional(x, kUniform4, Partition::singletons(4));
    for (std::size_t i = 0; i < 4; ++i) CHECK_HYPER(fine[i], x[i]);
}

TEST_CASE("generator integral identity") {
    const std::vector<double> vals{0, 1, 2, 3};
    const auto x = DRandomVar::real(kFour, vals);
    const Partition p(4, {Event({0, 1}), Event({2, 3})});
    CHECK(integral_identity_residual(x, kUniform4, p, std::vector<std::size_t>{}) == kZero);
    CHECK_HYPER(integral_identity_residual(x, kUniform4, p, std::vector<std::size_t>{0}), kZero);
    CHECK(integral_identity_case(kUniform4, p) == "a");

    const DMeasure me(kFour, {.1, .2, .3, .4}, {0, 0, 0, 0}, MassMode::E);
    CHECK(integral_identity_case(me, p) == "c");
    CHECK_HYPER(integral_identity_residual(x, me, p, std::vector<std::size_t>{0, 1}), kZero);
}

TEST_CASE("exclusive union") {
    Rng rng(14);
    const auto y = random_variable(rng, kFour);
    CHECK_HYPER(exclusive_union_residual(y, kUniform4, Event({0}), Event({2, 3})), kZero);
    CHECK(exclusive_union_case(kUniform4, Event({0}), Event({2, 3})) == "a.i");
    CHECK(exclusive_union_residual(y, kUniform4, Event({1}), Event{}) == kZero);
    CHECK_THROWS_AS(exclusive_union_residual(y, kUniform4, Event({0, 1}), Event({1})), Error);

    // P(A u B) = l e with both parts carrying e-mass and no e'-mass.
    const DMeasure m(kFour, {.3, .2, .5, 0}, {0, 0, .5, .5}, MassMode::One);
    CHECK(classify(measure_of(m, Event({0, 1}))) == NumberClass::ZeroDivisorE);
    CHECK_HYPER(exclusive_union_residual(y, m, Event({0}), Event({1})), kZero);
}

TEST_CASE("sub-partition identity") {
    Rng rng(15);
    const auto y = random_variable(rng, kFour);
    const Partition p(4, {Event({0, 1}), Event({2}), Event({3})});
    const std::vector<std::size_t> all{0, 1, 2};
    const auto [r1, r2] = subpartition_identity_residuals(y, kUniform4, p, all);
    CHECK_HYPER(r1, kZero);
    CHECK_HYPER(r2, kZero);
    CHECK_HYPER(integral(partition_conditional(y, kUniform4, p), kUniform4, Event::all(4)), expectation(y, kUniform4));
    CHECK_THROWS_AS(subpartition_identity_residuals(y, kUniform4, p, std::vector<std::size_t>{}), Error);

    const DMeasure me(kFour, {.1, .2, .3, .4}, {0, 0, 0, 0}, MassMode::E);
    const std::vector<std::size_t> some{0, 2};
    CHECK(subpartition_case(me, p, some) == "b");
    const auto [s1, s2] = subpartition_identity_residuals(y, me, p, some);
    CHECK_HYPER(s1, kZero);
    CHECK_HYPER(s2, kZero);
}
