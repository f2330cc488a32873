#include <cmath>

#include "hyperprob/distributions.hpp"
#include "hyperprob/error.hpp"
#include "support.hpp"

using namespace hyperprob;

TEST_CASE("Bernoulli pmf") {
    CHECK_HYPER(bernoulli_pmf({0.5, 0.5}, HyperNum(1, 1)), HyperNum::real(0.5));
    CHECK_HYPER(bernoulli_pmf({1, 0.3}, HyperNum(1, 0)), HyperNum(1, 0.7));
    const auto e = bernoulli_pmf({0.4, 0.3, Thorn::E}, HyperNum(1, 1));
    CHECK(e.v() == 0);
    CHECK(e.u() == doctest::Approx(0.4));
    CHECK_THROWS_AS(bernoulli_pmf({0.5, 0.5}, HyperNum(2, 0)), Error);
}

TEST_CASE("Bernoulli moments") {
    CHECK_HYPER(bernoulli_moment({0.5, 0.25}, 1), HyperNum(0.5, 0.25));
    const BernoulliSpec s{0.3, 0.8};
    CHECK_HYPER(bernoulli_moment(s, 1), bernoulli_moment(s, 2));
    CHECK_HYPER(distribution_variance(s), HyperNum(0.3 * 0.7, 0.8 * 0.2));
    const BernoulliSpec se{0.3, 0.8, Thorn::E};
    CHECK_HYPER(distribution_variance(se), HyperNum(0.3 * 0.7, 0));
    CHECK_HYPER(distribution_mean(se), HyperNum(0.3, 0));
    CHECK_HYPER(distribution_mean(BernoulliSpec{0.3, 0.8, Thorn::EDagger}), HyperNum(0, 0.8));
}

TEST_CASE("Binomial pmf") {
    const BinomialSpec s{2, 1, 0.5, 0.5};
    CHECK_HYPER(binomial_pmf(s, HyperNum(1, 0)), HyperNum::real(0.5));
    CHECK(binomial_pmf(s, HyperNum(3, 0)) == kZero);
    CHECK(binomial_pmf(s, HyperNum(-1, 0)) == kZero);
    const BinomialSpec eq{6, 6, 0.3, 0.3};
    for (int j = 0; j <= 6; ++j) {
        const double classical = binomial_coefficient(6, j) * std::pow(0.3, j) * std::pow(0.7, 6 - j);
        CHECK_HYPER(binomial_pmf(eq, HyperNum::real(j)), HyperNum::real(classical));
    }
    CHECK(binomial_coefficient(52, 5) == 2598960);
    CHECK(binomial_coefficient(5, 7) == 0);
}

TEST_CASE("Poisson pmf and mgf") {
    const auto p = make_poisson(1, 1);
    CHECK(p.truncation == 30);
    CHECK_HYPER(poisson_pmf(p, kZero), HyperNum::real(std::exp(-1.0)));
    CHECK(poisson_pmf(p, kZero).u() == doctest::Approx(0.367879).epsilon(1e-6));
    for (int j = 0; j < 10; ++j) {
        CHECK_HYPER(poisson_pmf(p, HyperNum::real(j)), HyperNum::real(std::exp(-1.0) / std::tgamma(j + 1.0)));
    }
    HyperNum total = kZero;
    const auto q = make_poisson(2.5, 0.7);
    for (int i = 0; i <= q.truncation; ++i) total += poisson_pmf(q, HyperNum::real(i));
    CHECK_HYPER_TOL(total, kOne, 1e-10);
    CHECK_THROWS_AS(poisson_pmf(q, HyperNum::real(q.truncation + 1)), Error);
    CHECK_THROWS_AS(poisson_pmf(q, HyperNum(-1, 0)), Error);
    CHECK_HYPER(poisson_mgf(q, kZero), kOne);
    CHECK(default_poisson_truncation(100) == 220);
}

TEST_CASE("realization") {
    const auto b = realize(BernoulliSpec{0.5, 0.5});
    CHECK(b.space.size() == 4);
    CHECK_HYPER(expectation(b.variable, b.measure), bernoulli_moment({0.5, 0.5}, 1));

    const auto be = realize(BernoulliSpec{0.3, 0.6, Thorn::E});
    CHECK(be.measure.mass() == MassMode::E);
    CHECK(validate_axioms(be.measure).ok());

    const BinomialSpec s{2, 1, 0.4, 0.7};
    const auto r = realize(s);
    CHECK(r.space.size() == 6);
    for (const auto& [z, prob] : pmf(r.variable, r.measure)) CHECK_HYPER(prob, binomial_pmf(s, z));

    for (Thorn th : {Thorn::E, Thorn::EDagger}) {
        const BinomialSpec st{3, 2, 0.4, 0.7, th};
        const auto rt = realize(st);
        for (const auto& [z, prob] : pmf(rt.variable, rt.measure)) {
            CHECK_HYPER(prob, binomial_pmf(st, z));
            CHECK(prob * thorn_value(th) == prob);
        }
    }
}

TEST_CASE("Binomial to Poisson") {
    const double d10 = binomial_poisson_distance(10, 2, 2), d50 = binomial_poisson_distance(50, 2, 2),
                 d250 = binomial_poisson_distance(250, 2, 2);
    CHECK(d10 > d50);
    CHECK(d50 > d250);
    CHECK(d250 < 0.02);
    CHECK_NOTHROW(binomial_poisson_distance(2, 2, 2));
    CHECK_THROWS_AS(binomial_poisson_distance(1, 2, 2), Error);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(validate(BernoulliSpec{1.5, 0.5}), Error);
    CHECK_THROWS_AS(validate(BinomialSpec{0, 1, 0.5, 0.5}), Error);
    CHECK_THROWS_AS(validate(PoissonSpec{-1, 1}), Error);
    CHECK_NOTHROW(validate(PoissonSpec{0.2, 3}));
}
