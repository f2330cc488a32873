#pragma once

// Brute-force re-derivation of the measure and conditioning identities.
//
// Everything here enumerates events as bitmasks and sums raw outcome
// weights directly; the only library code it shares with the main modules is
// HyperNum arithmetic. Conditioning uses the componentwise rule
//
//     component i:  P_i(B) > eps  ->  P_i(A n B) / P_i(B),  else  P_i(A)
//
// which is the four-case definition read one component at a time.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hyperprob/hypernum.hpp"
#include "hyperprob/scenario.hpp"

namespace hyperprob::oracle {

inline constexpr std::size_t kMaxOutcomes = 6;

/// Identities the oracle knows how to evaluate.
///   def22            P(A/B) P(B) = P(A n B) for all A, B, and additivity of P(./B)
///   def81            E_B(X) P(B) = int_B X dP for all B
///   thm82            P(A u B) E_{AuB}(X) = P(A) E_A(X) + P(B) E_B(X), A n B = 0
///   eqn3             int_A E_P(X) dP = int_A X dP over unions of partition cells
///   thm83            both equalities of the sub-partition identity
///   cauchy_schwarz   positive part of [E(XY)]^2 - E(X^2) E(Y^2)
const std::vector<std::string>& identities();

/// Maximum hyperbolic-modulus component of the residual over every
/// enumerated instance. Throws SpaceTooLarge for more than kMaxOutcomes
/// outcomes and InvalidArgument for an unknown identity.
double max_residual(const Scenario& s, std::string_view identity);

/// Pointwise values by the componentwise rule; masks index outcomes.
HyperNum conditional_probability(const DMeasure& m, std::uint64_t a, std::uint64_t b, Tolerance tol = {});
HyperNum conditional_expectation(const DRandomVar& x, const DMeasure& m, std::uint64_t b, Tolerance tol = {});
HyperNum measure_of(const DMeasure& m, std::uint64_t a);

/// Variables and partitions the identity checks range over: the scenario's
/// own when present, otherwise the outcome-index variable and the singleton
/// partition. Shared with the checks so that both sides see the same inputs.
std::vector<DRandomVar> identity_variables(const Scenario& s);
std::vector<Partition> identity_partitions(const Scenario& s);

}  // namespace hyperprob::oracle
