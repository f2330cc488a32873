#pragma once

// Seeded random inputs for property sweeps. Everything draws from Rng, so a
// seed fixes the stream on every platform.

#include <cstdint>
#include <span>
#include <vector>

#include "hyperprob/conditional.hpp"
#include "hyperprob/hypernum.hpp"
#include "hyperprob/measure.hpp"
#include "hyperprob/random_variable.hpp"
#include "hyperprob/rng.hpp"

namespace hyperprob {

/// Both components uniform in [lo, hi).
HyperNum random_hypernum(Rng& rng, double lo = -10, double hi = 10);
/// Components of the form k / 2^bits with |k / 2^bits| <= range, so sums and
/// products of a few of them stay exact in double precision.
HyperNum random_dyadic_hypernum(Rng& rng, unsigned bits = 8, double range = 8);

/// Random measure of the given mass mode. Each outcome's weight in each live
/// component is set to zero with probability zero_fraction (at least one
/// outcome per live component keeps a positive weight).
DMeasure random_measure(Rng& rng, const SampleSpace& space, MassMode mass, double zero_fraction = 0);

/// Weights are integer counts over 2^log2_denominator, so the component
/// totals are exactly 1.
DMeasure random_dyadic_measure(Rng& rng, const SampleSpace& space, MassMode mass,
                               unsigned log2_denominator = 10);

/// Measure in which every cell of the partition has the requested class:
/// Invertible cells carry weight in both components, ZeroDivisorE cells only
/// in the first, ZeroDivisorEDagger only in the second, Zero cells in none.
/// Throws InvalidArgument when the classes cannot reach the mass mode (for
/// instance mass One with no cell carrying first-component weight).
DMeasure random_measure_with_cells(Rng& rng, const SampleSpace& space, const Partition& p,
                                   std::span<const NumberClass> cell_classes, MassMode mass);

DRandomVar random_variable(Rng& rng, const SampleSpace& space, double lo = -5, double hi = 5);
DRandomVar random_dyadic_variable(Rng& rng, const SampleSpace& space, unsigned bits = 4, double range = 4);

/// Uniformly chosen cell label per outcome (1..max_cells cells), relabelled
/// so that no cell is empty.
Partition random_partition(Rng& rng, std::size_t n, std::size_t max_cells);

/// Uniformly random subset of {0..n-1}.
Event random_event(Rng& rng, std::size_t n);

/// Grid {0..nx-1} x {0..ny-1} carrying a product measure in each component.
/// x depends only on the first coordinate and y only on the second, so the
/// two are independent by construction.
struct ProductScenario {
    SampleSpace space;
    DMeasure measure;
    DRandomVar x;
    DRandomVar y;
};

ProductScenario product_scenario(Rng& rng, std::size_t nx, std::size_t ny, MassMode mass);

}  // namespace hyperprob
