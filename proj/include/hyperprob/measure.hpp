#pragma once

// Finite sample spaces and hyperbolic-valued probability measures.
//
// A measure is held as two outcome weight lists, one per idempotent
// component: P(A) = P1(A) e + P2(A) e'. Events are evaluated by summation,
// which makes finite additivity structural.

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hyperprob/hypernum.hpp"

namespace hyperprob {

class SampleSpace {
public:
    /// Throws InvalidArgument for an empty list or duplicate labels.
    explicit SampleSpace(std::vector<std::string> labels);
    /// Outcomes labelled "w0" .. "w{n-1}".
    static SampleSpace indexed(std::size_t n);

    std::size_t size() const { return labels_->size(); }
    const std::vector<std::string>& labels() const { return *labels_; }
    const std::string& label(std::size_t i) const { return labels_->at(i); }
    /// Throws InvalidArgument for an unknown label.
    std::size_t index_of(std::string_view label) const;

    friend bool operator==(const SampleSpace& x, const SampleSpace& y) {
        return x.labels_ == y.labels_ || *x.labels_ == *y.labels_;
    }

private:
    std::shared_ptr<const std::vector<std::string>> labels_;
};

/// A set of outcome indices, kept sorted and duplicate-free.
class Event {
public:
    Event() = default;
    explicit Event(std::vector<std::size_t> members);
    static Event all(std::size_t n);
    /// Outcomes whose bit is set in mask (n <= 64).
    static Event from_mask(std::uint64_t mask, std::size_t n);

    const std::vector<std::size_t>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    bool contains(std::size_t i) const;

    Event unite(const Event& other) const;
    Event intersect(const Event& other) const;
    Event complement(std::size_t n) const;
    bool disjoint_with(const Event& other) const;
    bool subset_of(const Event& other) const;

    /// Throws IndexOutOfRange when some member is >= n.
    void check_range(std::size_t n) const;

    friend bool operator==(const Event&, const Event&) = default;

private:
    std::vector<std::size_t> members_;
};

/// Total mass of the sample space: 1, e or e'.
enum class MassMode { One, E, EDagger };

constexpr HyperNum mass_value(MassMode m) {
    switch (m) {
        case MassMode::One: return kOne;
        case MassMode::E: return kE;
        case MassMode::EDagger: return kEDagger;
    }
    return kOne;
}

std::string_view to_string(MassMode m) noexcept;
/// Accepts "one", "e", "edagger". Throws ParseError.
MassMode parse_mass_mode(std::string_view text);

class DMeasure {
public:
    /// Checks shape only (lengths, finiteness); the probability axioms are
    /// checked by validate_axioms so that invalid inputs can be reported.
    DMeasure(SampleSpace space, std::vector<double> w1, std::vector<double> w2, MassMode mass);

    const SampleSpace& space() const { return space_; }
    std::size_t size() const { return space_.size(); }
    const std::vector<double>& w1() const { return w1_; }
    const std::vector<double>& w2() const { return w2_; }
    MassMode mass() const { return mass_; }
    HyperNum mass_value() const { return hyperprob::mass_value(mass_); }
    HyperNum weight(std::size_t i) const { return {w1_.at(i), w2_.at(i)}; }

private:
    SampleSpace space_;
    std::vector<double> w1_;
    std::vector<double> w2_;
    MassMode mass_;
};

HyperNum measure_of(const DMeasure& m, const Event& a);

struct AxiomViolation {
    int axiom;  // 1: nonnegativity, 2: total mass, 3: additivity
    std::string detail;
};

struct ValidationReport {
    std::vector<AxiomViolation> violations;
    std::size_t additivity_pairs_checked = 0;
    bool exhaustive = false;

    bool ok() const { return violations.empty(); }
    bool violates(int axiom) const;
};

/// Disjoint pairs are enumerated exhaustively for n <= 12, sampled with the
/// given seed otherwise.
ValidationReport validate_axioms(const DMeasure& m, Tolerance tol = {}, std::uint64_t seed = 0);

/// Which rule of the conditional probability applies for a given P(B).
enum class ConditionalBranch { Invertible, Null, ZeroDivisorE, ZeroDivisorEDagger };

ConditionalBranch conditioning_branch(const HyperNum& pb, Tolerance tol = {});
std::string_view to_string(ConditionalBranch b) noexcept;

/// P(A/B):
///   P(B) invertible   P(A n B) / P(B)
///   P(B) = 0          P(A)
///   P(B) = l e        (P(A n B) / l) e + P(A) e'
///   P(B) = l e'       P(A) e + (P(A n B) / l) e'
HyperNum conditional_probability(const DMeasure& m, const Event& a, const Event& b,
                                 Tolerance tol = {});

/// Measure induced by conditioning on B. When P(B) is invertible the result
/// lives on the outcomes of B. When P(B) is a zero divisor the unconditioned
/// component still spreads over all of the parent space, so the result keeps
/// the parent outcomes; its conditioned component is supported on B.
/// In both cases measure_of(result, to_local(A)) == P(A/B) for every A in B's
/// trace (and for every A of the parent when the space is kept).
struct Restriction {
    DMeasure measure;
    std::vector<std::size_t> parent_index;  // local outcome -> parent outcome

    /// Maps a parent event onto local outcome indices (outcomes outside the
    /// local space are dropped).
    Event to_local(const Event& parent_event) const;
};

/// Throws NullConditioningEvent when P(B) = 0.
Restriction restrict_to(const DMeasure& m, const Event& b, Tolerance tol = {});

}  // namespace hyperprob
