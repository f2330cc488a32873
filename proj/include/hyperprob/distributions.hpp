#pragma once

// Hyperbolic Bernoulli, Binomial and Poisson laws. Each component follows
// the classical law with its own parameters; the thorn factor 1, e or e'
// scales both the variable and its pmf.

#include <variant>
#include <vector>

#include "hyperprob/hypernum.hpp"
#include "hyperprob/measure.hpp"
#include "hyperprob/random_variable.hpp"

namespace hyperprob {

struct BernoulliSpec {
    double p1 = 0.5;
    double p2 = 0.5;
    Thorn thorn = Thorn::One;
};

struct BinomialSpec {
    int n1 = 1;
    int n2 = 1;
    double p1 = 0.5;
    double p2 = 0.5;
    Thorn thorn = Thorn::One;
};

struct PoissonSpec {
    double lambda1 = 1;
    double lambda2 = 1;
    Thorn thorn = Thorn::One;
    int truncation = 30;  // support grid is {0..K}^2 when realized
};

/// Poisson spec with the default truncation max(30, ceil(l + 12 sqrt(l))).
PoissonSpec make_poisson(double lambda1, double lambda2, Thorn thorn = Thorn::One);
int default_poisson_truncation(double lambda);

using DistributionSpec = std::variant<BernoulliSpec, BinomialSpec, PoissonSpec>;

/// Throws InvalidParameters.
void validate(const BernoulliSpec& s);
void validate(const BinomialSpec& s);
void validate(const PoissonSpec& s);

/// C(n, k). Exact integer arithmetic for n < 60, multiplicative running
/// product in double up to n = 1000, log-gamma beyond.
double binomial_coefficient(int n, int k);

/// [e f1(x_u) + e' f2(x_v)] * thorn with x_u, x_v in {0, 1}. Throws UnsupportedPoint.
HyperNum bernoulli_pmf(const BernoulliSpec& s, const HyperNum& x);
/// thorn^r (e p1 + e' p2), r >= 1.
HyperNum bernoulli_moment(const BernoulliSpec& s, unsigned r);

/// Zero outside the integer grid 0 <= x_i <= n_i.
HyperNum binomial_pmf(const BinomialSpec& s, const HyperNum& x);

/// Throws UnsupportedPoint for negative or non-integer components and
/// TruncationExceeded beyond the spec's truncation.
HyperNum poisson_pmf(const PoissonSpec& s, const HyperNum& x);
/// (exp(l1 (e^t_u - 1)), exp(l2 (e^t_v - 1))), untruncated.
HyperNum poisson_mgf(const PoissonSpec& s, const HyperNum& t);

/// Closed-form mean and variance, thorn applied.
HyperNum distribution_mean(const DistributionSpec& s);
HyperNum distribution_variance(const DistributionSpec& s);

/// Point mass of the distribution at x.
HyperNum distribution_pmf(const DistributionSpec& s, const HyperNum& x);

struct Realization {
    SampleSpace space;
    DMeasure measure;
    DRandomVar variable;
    int n1;  // component grid sizes minus one
    int n2;
};

/// Finite scenario whose component marginals are exactly f1 and f2: the grid
/// {0..N1} x {0..N2}, X(i, j) = (i e + j e') * thorn, w1(i, j) = f1(i) / (N2 + 1),
/// w2(i, j) = f2(j) / (N1 + 1); the mass mode follows the thorn.
Realization realize(const DistributionSpec& s);

/// max over the support grid of the modulus components of
/// binomial(n, l/n) - poisson(l). Throws InvalidParameters when l_i / n > 1.
double binomial_poisson_distance(int n_scale, double lambda1, double lambda2);

}  // namespace hyperprob
