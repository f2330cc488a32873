#pragma once

// Conditional expectation given an event or a finite partition, and the
// residuals of the identities those quantities satisfy.

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hyperprob/hypernum.hpp"
#include "hyperprob/measure.hpp"
#include "hyperprob/random_variable.hpp"

namespace hyperprob {

class Partition {
public:
    /// Cells must be nonempty, pairwise disjoint and cover {0..n-1}.
    /// Throws InvalidPartition.
    Partition(std::size_t n, std::vector<Event> cells);
    static Partition trivial(std::size_t n);
    static Partition singletons(std::size_t n);

    std::size_t space_size() const { return n_; }
    const std::vector<Event>& cells() const { return cells_; }
    std::size_t size() const { return cells_.size(); }
    const Event& operator[](std::size_t i) const { return cells_[i]; }

    /// Union of the selected cells. Throws IndexOutOfRange.
    Event union_of(std::span<const std::size_t> cell_indices) const;

    /// How each cell's probability classifies under m (read-only summary).
    std::vector<NumberClass> cell_status(const DMeasure& m, Tolerance tol = {}) const;

private:
    std::size_t n_;
    std::vector<Event> cells_;
};

/// E_B(X):
///   P(B) invertible  (int_B X dP) / P(B)
///   P(B) = 0         E(X)
///   P(B) = l e       (int_B X1 dP1 / l) e + E(X2) e'
///   P(B) = l e'      E(X1) e + (int_B X2 dP2 / l) e'
HyperNum conditional_expectation(const DRandomVar& x, const DMeasure& m, const Event& b,
                                 Tolerance tol = {});

/// Cell-constant variable taking E_{A_n}(X) on A_n.
DRandomVar partition_conditional(const DRandomVar& x, const DMeasure& m, const Partition& p,
                                 Tolerance tol = {});

/// int_A E_P(X) dP - int_A X dP with A the union of the cells in J.
HyperNum integral_identity_residual(const DRandomVar& x, const DMeasure& m, const Partition& p,
                                    std::span<const std::size_t> cells, Tolerance tol = {});

/// P(A u B) E_{A u B}(X) - P(A) E_A(X) - P(B) E_B(X). Throws EventsNotDisjoint.
HyperNum exclusive_union_residual(const DRandomVar& x, const DMeasure& m, const Event& a,
                                  const Event& b, Tolerance tol = {});

/// For A the union of the selected cells, returns
///   (E_A(X) P(A) - int_A E_P(X) dP,
///    int_A E_P(X) dP - P(A) sum_n E_{A_n}(X) P(A_n / A)).
/// Throws InvalidArgument when no cell is selected.
std::pair<HyperNum, HyperNum> subpartition_identity_residuals(const DRandomVar& x, const DMeasure& m,
                                                              const Partition& p,
                                                              std::span<const std::size_t> cells,
                                                              Tolerance tol = {});

// Case labels used for coverage accounting. Each maps the probabilities
// involved onto the case split of the corresponding identity.

/// "a.i", "a.ii", "a.iii", "a.mixed", "b", "c.i", "c.ii", "c.iii", "d.i", "d.ii", "d.iii".
std::string exclusive_union_case(const DMeasure& m, const Event& a, const Event& b, Tolerance tol = {});
/// "a" (all cells invertible), "b" (one invertible cell, the rest zero
/// divisors of one type), "c" (all cells zero divisors of one type), "mixed".
std::string integral_identity_case(const DMeasure& m, const Partition& p, Tolerance tol = {});
/// "a.i", "a.ii", "b", "c", "null", "mixed".
std::string subpartition_case(const DMeasure& m, const Partition& p, std::span<const std::size_t> cells,
                              Tolerance tol = {});

const std::vector<std::string>& exclusive_union_case_labels();
const std::vector<std::string>& integral_identity_case_labels();
const std::vector<std::string>& subpartition_case_labels();

}  // namespace hyperprob
