#include "hyperprob/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <type_traits>
#include <string>

#include "hyperprob/error.hpp"

namespace hyperprob {

namespace {

[[noreturn]] void bad_params(const std::string& why) { throw Error(ErrorCode::InvalidParameters, why); }

bool is_probability(double p) { return std::isfinite(p) && p >= 0 && p <= 1; }

// Component value as a nonnegative integer, if it is one.
std::optional<long long> as_count(double x) {
    if (!std::isfinite(x) || x < 0 || std::floor(x) != x || x > 1e15) return std::nullopt;
    return static_cast<long long>(x);
}

double bernoulli_component(double p, long long x) { return x == 1 ? p : 1 - p; }

double binomial_component(int n, double p, long long x) {
    if (x < 0 || x > n) return 0;
    const int k = static_cast<int>(x);
    const double q = 1 - p;
    if (n < 60) return binomial_coefficient(n, k) * std::pow(p, k) * std::pow(q, n - k);
    if ((p == 0 && k > 0) || (q == 0 && k < n)) return 0;
    const double log_terms = (k > 0 ? k * std::log(p) : 0.0) + (n - k > 0 ? (n - k) * std::log(q) : 0.0);
    return binomial_coefficient(n, k) * std::exp(log_terms);
}

double poisson_component(double lambda, long long x) {
    const double xd = static_cast<double>(x);
    return std::exp(xd * std::log(lambda) - lambda - std::lgamma(xd + 1));
}

}  // namespace

int default_poisson_truncation(double lambda) {
    return std::max(30, static_cast<int>(std::ceil(lambda + 12 * std::sqrt(lambda))));
}

PoissonSpec make_poisson(double lambda1, double lambda2, Thorn thorn) {
    PoissonSpec s{lambda1, lambda2, thorn, 0};
    validate(PoissonSpec{lambda1, lambda2, thorn, 1});
    s.truncation = std::max(default_poisson_truncation(lambda1), default_poisson_truncation(lambda2));
    return s;
}

void validate(const BernoulliSpec& s) {
    if (!is_probability(s.p1) || !is_probability(s.p2)) bad_params("Bernoulli p1, p2 must lie in [0, 1]");
}

void validate(const BinomialSpec& s) {
    if (s.n1 < 1 || s.n2 < 1) bad_params("Binomial n1, n2 must be positive");
    if (!is_probability(s.p1) || !is_probability(s.p2)) bad_params("Binomial p1, p2 must lie in [0, 1]");
}

void validate(const PoissonSpec& s) {
    if (!(s.lambda1 > 0) || !(s.lambda2 > 0) || !std::isfinite(s.lambda1) || !std::isfinite(s.lambda2)) {
        bad_params("Poisson rates must be positive and finite");
    }
    if (s.truncation < 1) bad_params("Poisson truncation must be a positive integer");
}

double binomial_coefficient(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    if (n < 60) {
        std::uint64_t c = 1;
        // c * (n - k + i) / i stays integral at every step.
        for (int i = 1; i <= k; ++i) c = c * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
        return static_cast<double>(c);
    }
    if (n <= 1000) {
        double c = 1;
        for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
        return c > 1e15 ? c : std::round(c);
    }
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

HyperNum bernoulli_pmf(const BernoulliSpec& s, const HyperNum& x) {
    validate(s);
    const auto x1 = as_count(x.u());
    const auto x2 = as_count(x.v());
    if (!x1 || !x2 || *x1 > 1 || *x2 > 1) {
        throw Error(ErrorCode::UnsupportedPoint, "Bernoulli pmf is defined on {0,1}^2, got " + format_idempotent(x));
    }
    return HyperNum{bernoulli_component(s.p1, *x1), bernoulli_component(s.p2, *x2)} * thorn_value(s.thorn);
}

HyperNum bernoulli_moment(const BernoulliSpec& s, unsigned r) {
    validate(s);
    if (r == 0) throw Error(ErrorCode::InvalidArgument, "moment order must be >= 1");
    return int_pow(thorn_value(s.thorn), r) * HyperNum{s.p1, s.p2};
}

HyperNum binomial_pmf(const BinomialSpec& s, const HyperNum& x) {
    validate(s);
    const auto x1 = as_count(x.u());
    const auto x2 = as_count(x.v());
    if (!x1 || !x2 || *x1 > s.n1 || *x2 > s.n2) return kZero;
    return HyperNum{binomial_component(s.n1, s.p1, *x1), binomial_component(s.n2, s.p2, *x2)} *
           thorn_value(s.thorn);
}

HyperNum poisson_pmf(const PoissonSpec& s, const HyperNum& x) {
    validate(s);
    const auto x1 = as_count(x.u());
    const auto x2 = as_count(x.v());
    if (!x1 || !x2) {
        throw Error(ErrorCode::UnsupportedPoint, "Poisson pmf needs nonnegative integer components, got " +
                                                     format_idempotent(x));
    }
    if (*x1 > s.truncation || *x2 > s.truncation) {
        throw Error(ErrorCode::TruncationExceeded,
                    format_idempotent(x) + " is beyond the truncation K = " + std::to_string(s.truncation));
    }
    return HyperNum{poisson_component(s.lambda1, *x1), poisson_component(s.lambda2, *x2)} *
           thorn_value(s.thorn);
}

HyperNum poisson_mgf(const PoissonSpec& s, const HyperNum& t) {
    validate(s);
    return {std::exp(s.lambda1 * std::expm1(t.u())), std::exp(s.lambda2 * std::expm1(t.v()))};
}

HyperNum distribution_mean(const DistributionSpec& spec) {
    return std::visit(
        [](const auto& s) -> HyperNum {
            using T = std::decay_t<decltype(s)>;
            validate(s);
            if constexpr (std::is_same_v<T, BernoulliSpec>) {
                return HyperNum{s.p1, s.p2} * thorn_value(s.thorn);
            } else if constexpr (std::is_same_v<T, BinomialSpec>) {
                return HyperNum{s.n1 * s.p1, s.n2 * s.p2} * thorn_value(s.thorn);
            } else {
                return HyperNum{s.lambda1, s.lambda2} * thorn_value(s.thorn);
            }
        },
        spec);
}

HyperNum distribution_variance(const DistributionSpec& spec) {
    return std::visit(
        [](const auto& s) -> HyperNum {
            using T = std::decay_t<decltype(s)>;
            validate(s);
            if constexpr (std::is_same_v<T, BernoulliSpec>) {
                return HyperNum{s.p1 * (1 - s.p1), s.p2 * (1 - s.p2)} * thorn_value(s.thorn);
            } else if constexpr (std::is_same_v<T, BinomialSpec>) {
                return HyperNum{s.n1 * s.p1 * (1 - s.p1), s.n2 * s.p2 * (1 - s.p2)} * thorn_value(s.thorn);
            } else {
                return HyperNum{s.lambda1, s.lambda2} * thorn_value(s.thorn);
            }
        },
        spec);
}

HyperNum distribution_pmf(const DistributionSpec& spec, const HyperNum& x) {
    return std::visit(
        [&](const auto& s) -> HyperNum {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, BernoulliSpec>) {
                return bernoulli_pmf(s, x);
            } else if constexpr (std::is_same_v<T, BinomialSpec>) {
                return binomial_pmf(s, x);
            } else {
                return poisson_pmf(s, x);
            }
        },
        spec);
}

Realization realize(const DistributionSpec& spec) {
    int n1 = 0, n2 = 0;
    Thorn thorn = Thorn::One;
    std::vector<double> f1, f2;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            validate(s);
            thorn = s.thorn;
            if constexpr (std::is_same_v<T, BernoulliSpec>) {
                n1 = n2 = 1;
                f1 = {1 - s.p1, s.p1};
                f2 = {1 - s.p2, s.p2};
            } else if constexpr (std::is_same_v<T, BinomialSpec>) {
                n1 = s.n1;
                n2 = s.n2;
                for (int i = 0; i <= n1; ++i) f1.push_back(binomial_component(s.n1, s.p1, i));
                for (int j = 0; j <= n2; ++j) f2.push_back(binomial_component(s.n2, s.p2, j));
            } else {
                n1 = n2 = s.truncation;
                for (int i = 0; i <= n1; ++i) f1.push_back(poisson_component(s.lambda1, i));
                for (int j = 0; j <= n2; ++j) f2.push_back(poisson_component(s.lambda2, j));
            }
        },
        spec);

    const HyperNum scale = thorn_value(thorn);
    const bool keep1 = thorn != Thorn::EDagger;
    const bool keep2 = thorn != Thorn::E;
    const double rho = 1.0 / (n2 + 1);
    const double sigma = 1.0 / (n1 + 1);

    std::vector<std::string> labels;
    std::vector<HyperNum> values;
    std::vector<double> w1, w2;
    for (int i = 0; i <= n1; ++i) {
        for (int j = 0; j <= n2; ++j) {
            labels.push_back(std::to_string(i) + "," + std::to_string(j));
            values.push_back(HyperNum{static_cast<double>(i), static_cast<double>(j)} * scale);
            w1.push_back(keep1 ? f1[i] * rho : 0.0);
            w2.push_back(keep2 ? sigma * f2[j] : 0.0);
        }
    }
    SampleSpace space(std::move(labels));
    DMeasure measure(space, std::move(w1), std::move(w2), mass_for(thorn));
    DRandomVar variable(space, std::move(values));
    return {space, std::move(measure), std::move(variable), n1, n2};
}

double binomial_poisson_distance(int n_scale, double lambda1, double lambda2) {
    if (n_scale < 1) bad_params("n must be a positive integer");
    if (!(lambda1 > 0) || !(lambda2 > 0)) bad_params("Poisson rates must be positive");
    const double p1 = lambda1 / n_scale;
    const double p2 = lambda2 / n_scale;
    if (p1 > 1 || p2 > 1) bad_params("lambda / n exceeds 1");
    const BinomialSpec binom{n_scale, n_scale, p1, p2, Thorn::One};
    const PoissonSpec poisson{lambda1, lambda2, Thorn::One, n_scale};
    double worst = 0;
    for (int x = 0; x <= n_scale; ++x) {
        // The two components are independent, so the grid maximum is attained
        // on the diagonal component by component.
        const HyperNum at{static_cast<double>(x), static_cast<double>(x)};
        const HyperNum d = modulus(binomial_pmf(binom, at) - poisson_pmf(poisson, at));
        worst = std::max({worst, d.u(), d.v()});
    }
    return worst;
}

}  // namespace hyperprob
