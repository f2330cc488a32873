#include "hyperprob/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "hyperprob/error.hpp"
#include "hyperprob/rng.hpp"

namespace hyperprob {

// -- SampleSpace -------------------------------------------------------------

SampleSpace::SampleSpace(std::vector<std::string> labels) {
    if (labels.empty()) throw Error(ErrorCode::InvalidArgument, "sample space must be nonempty");
    std::set<std::string_view> seen;
    for (const auto& l : labels) {
        if (!seen.insert(l).second) {
            throw Error(ErrorCode::InvalidArgument, "duplicate outcome label \"" + l + "\"");
        }
    }
    labels_ = std::make_shared<const std::vector<std::string>>(std::move(labels));
}

SampleSpace SampleSpace::indexed(std::size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back("w" + std::to_string(i));
    return SampleSpace(std::move(labels));
}

std::size_t SampleSpace::index_of(std::string_view label) const {
    const auto& l = *labels_;
    const auto it = std::find(l.begin(), l.end(), label);
    if (it == l.end()) {
        throw Error(ErrorCode::InvalidArgument, "unknown outcome \"" + std::string(label) + "\"");
    }
    return static_cast<std::size_t>(it - l.begin());
}

// -- Event -------------------------------------------------------------------

Event::Event(std::vector<std::size_t> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

Event Event::all(std::size_t n) {
    std::vector<std::size_t> m(n);
    std::iota(m.begin(), m.end(), std::size_t{0});
    Event e;
    e.members_ = std::move(m);
    return e;
}

Event Event::from_mask(std::uint64_t mask, std::size_t n) {
    if (n > 64) throw Error(ErrorCode::InvalidArgument, "mask events support at most 64 outcomes");
    Event e;
    for (std::size_t i = 0; i < n; ++i) {
        if (mask >> i & 1u) e.members_.push_back(i);
    }
    return e;
}

bool Event::contains(std::size_t i) const {
    return std::binary_search(members_.begin(), members_.end(), i);
}

Event Event::unite(const Event& other) const {
    Event e;
    std::set_union(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                   std::back_inserter(e.members_));
    return e;
}

Event Event::intersect(const Event& other) const {
    Event e;
    std::set_intersection(members_.begin(), members_.end(), other.members_.begin(),
                          other.members_.end(), std::back_inserter(e.members_));
    return e;
}

Event Event::complement(std::size_t n) const {
    Event e;
    for (std::size_t i = 0; i < n; ++i) {
        if (!contains(i)) e.members_.push_back(i);
    }
    return e;
}

bool Event::disjoint_with(const Event& other) const { return intersect(other).empty(); }

bool Event::subset_of(const Event& other) const {
    return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                         members_.end());
}

void Event::check_range(std::size_t n) const {
    if (!members_.empty() && members_.back() >= n) {
        throw Error(ErrorCode::IndexOutOfRange, "outcome index " + std::to_string(members_.back()) +
                                                    " out of range for a space of size " +
                                                    std::to_string(n));
    }
}

// -- MassMode ----------------------------------------------------------------

std::string_view to_string(MassMode m) noexcept {
    switch (m) {
        case MassMode::One: return "one";
        case MassMode::E: return "e";
        case MassMode::EDagger: return "edagger";
    }
    return "?";
}

MassMode parse_mass_mode(std::string_view text) {
    if (text == "one" || text == "1") return MassMode::One;
    if (text == "e") return MassMode::E;
    if (text == "edagger" || text == "e_dagger" || text == "e†") return MassMode::EDagger;
    throw Error(ErrorCode::ParseError, "unknown mass mode \"" + std::string(text) + "\"");
}

// -- DMeasure ----------------------------------------------------------------

DMeasure::DMeasure(SampleSpace space, std::vector<double> w1, std::vector<double> w2,
                   MassMode mass)
    : space_(std::move(space)), w1_(std::move(w1)), w2_(std::move(w2)), mass_(mass) {
    if (w1_.size() != space_.size() || w2_.size() != space_.size()) {
        throw Error(ErrorCode::LengthMismatch, "weight lists must have one entry per outcome");
    }
    for (std::size_t i = 0; i < w1_.size(); ++i) {
        if (!std::isfinite(w1_[i]) || !std::isfinite(w2_[i])) {
            throw Error(ErrorCode::NonFinite, "weight of outcome " + space_.label(i) + " is not finite");
        }
    }
}

HyperNum measure_of(const DMeasure& m, const Event& a) {
    a.check_range(m.size());
    double s1 = 0;
    double s2 = 0;
    for (const auto i : a.members()) {
        s1 += m.w1()[i];
        s2 += m.w2()[i];
    }
    return {s1, s2};
}

bool ValidationReport::violates(int axiom) const {
    return std::any_of(violations.begin(), violations.end(),
                       [axiom](const AxiomViolation& v) { return v.axiom == axiom; });
}

ValidationReport validate_axioms(const DMeasure& m, Tolerance tol, std::uint64_t seed) {
    ValidationReport report;
    const std::size_t n = m.size();

    for (std::size_t i = 0; i < n; ++i) {
        if (!is_nonnegative(m.weight(i), tol)) {
            report.violations.push_back(
                {1, "P({" + m.space().label(i) + "}) = " + format_hyper(m.weight(i)) + " is not >= 0"});
        }
    }

    const HyperNum total = measure_of(m, Event::all(n));
    const double zero_sum_tol = tol.eps * static_cast<double>(std::max<std::size_t>(n, 1));
    auto near = [&](double x, double target) { return std::fabs(x - target) <= zero_sum_tol; };
    bool mass_ok = true;
    switch (m.mass()) {
        case MassMode::One:
            mass_ok = near(total.u(), 1) && near(total.v(), 1);
            break;
        case MassMode::E:
            mass_ok = near(total.u(), 1) &&
                      std::all_of(m.w2().begin(), m.w2().end(), [&](double w) { return tol.is_zero(w); });
            break;
        case MassMode::EDagger:
            mass_ok = near(total.v(), 1) &&
                      std::all_of(m.w1().begin(), m.w1().end(), [&](double w) { return tol.is_zero(w); });
            break;
    }
    if (!mass_ok) {
        report.violations.push_back({2, "P(Omega) = " + format_hyper(total) + " but mass mode is " +
                                            std::string(to_string(m.mass()))});
    }

    // Finite additivity over disjoint pairs.
    auto check_pair = [&](const HyperNum& pa, const HyperNum& pb, const HyperNum& pab, auto&& where) {
        ++report.additivity_pairs_checked;
        const HyperNum d = pab - (pa + pb);
        if (!(std::fabs(d.u()) <= zero_sum_tol && std::fabs(d.v()) <= zero_sum_tol)) {
            report.violations.push_back({3, "additivity fails for " + where()});
            return false;
        }
        return true;
    };

    if (n <= 12) {
        report.exhaustive = true;
        const std::uint64_t full = (std::uint64_t{1} << n) - 1;
        std::vector<HyperNum> by_mask(full + 1);
        for (std::uint64_t mask = 0; mask <= full; ++mask) {
            double s1 = 0, s2 = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (mask >> i & 1u) {
                    s1 += m.w1()[i];
                    s2 += m.w2()[i];
                }
            }
            by_mask[mask] = {s1, s2};
        }
        for (std::uint64_t a = 0; a <= full; ++a) {
            const std::uint64_t rest = full & ~a;
            // Enumerate all subsets b of the complement of a.
            for (std::uint64_t b = rest;; b = (b - 1) & rest) {
                if (!check_pair(by_mask[a], by_mask[b], by_mask[a | b],
                                [&] { return "masks " + std::to_string(a) + ", " + std::to_string(b); })) {
                    return report;
                }
                if (b == 0) break;
            }
        }
    } else {
        Rng rng(seed);
        for (int trial = 0; trial < 4096; ++trial) {
            HyperNum pa, pb, pab;
            for (std::size_t i = 0; i < n; ++i) {
                switch (rng.below(3)) {
                    case 0: pa += m.weight(i); break;
                    case 1: pb += m.weight(i); break;
                    default: continue;
                }
                pab += m.weight(i);
            }
            if (!check_pair(pa, pb, pab, [&] { return "sampled pair " + std::to_string(trial); })) return report;
        }
    }
    return report;
}

// -- conditional probability -------------------------------------------------

ConditionalBranch conditioning_branch(const HyperNum& pb, Tolerance tol) {
    switch (classify(pb, tol)) {
        case NumberClass::Zero: return ConditionalBranch::Null;
        case NumberClass::ZeroDivisorE: return ConditionalBranch::ZeroDivisorE;
        case NumberClass::ZeroDivisorEDagger: return ConditionalBranch::ZeroDivisorEDagger;
        case NumberClass::Invertible: return ConditionalBranch::Invertible;
    }
    return ConditionalBranch::Invertible;
}

std::string_view to_string(ConditionalBranch b) noexcept {
    switch (b) {
        case ConditionalBranch::Invertible: return "invertible";
        case ConditionalBranch::Null: return "null";
        case ConditionalBranch::ZeroDivisorE: return "zero_divisor_e";
        case ConditionalBranch::ZeroDivisorEDagger: return "zero_divisor_edagger";
    }
    return "?";
}

HyperNum conditional_probability(const DMeasure& m, const Event& a, const Event& b, Tolerance tol) {
    const HyperNum pb = measure_of(m, b);
    const HyperNum pa = measure_of(m, a);
    const HyperNum pab = measure_of(m, a.intersect(b));
    switch (conditioning_branch(pb, tol)) {
        case ConditionalBranch::Invertible:
            return pab * inverse(pb, tol);
        case ConditionalBranch::Null:
            return pa;
        case ConditionalBranch::ZeroDivisorE:
            return (pab * (1.0 / pb.u())) * kE + pa * kEDagger;
        case ConditionalBranch::ZeroDivisorEDagger:
            return pa * kE + (pab * (1.0 / pb.v())) * kEDagger;
    }
    return pa;
}

Event Restriction::to_local(const Event& parent_event) const {
    std::vector<std::size_t> local;
    for (std::size_t i = 0; i < parent_index.size(); ++i) {
        if (parent_event.contains(parent_index[i])) local.push_back(i);
    }
    return Event(std::move(local));
}

namespace {

MassMode infer_mass(const HyperNum& total, Tolerance tol) {
    const double slack = std::max(tol.eps, 1e-12);
    const Tolerance loose(slack);
    if (compare(total, kOne, loose) == OrderRelation::Equal) return MassMode::One;
    if (compare(total, kE, loose) == OrderRelation::Equal) return MassMode::E;
    if (compare(total, kEDagger, loose) == OrderRelation::Equal) return MassMode::EDagger;
    throw Error(ErrorCode::AxiomViolation,
                "conditional mass " + format_hyper(total) + " is not 1, e or e'");
}

}  // namespace

Restriction restrict_to(const DMeasure& m, const Event& b, Tolerance tol) {
    const HyperNum pb = measure_of(m, b);
    const auto branch = conditioning_branch(pb, tol);
    if (branch == ConditionalBranch::Null) {
        throw Error(ErrorCode::NullConditioningEvent, "cannot restrict to an event of probability 0");
    }
    const std::size_t n = m.size();
    const HyperNum total = conditional_probability(m, Event::all(n), b, tol);
    const MassMode mass = infer_mass(total, tol);

    std::vector<std::size_t> parent;
    std::vector<std::string> labels;
    std::vector<double> w1, w2;
    if (branch == ConditionalBranch::Invertible) {
        for (const auto i : b.members()) {
            parent.push_back(i);
            labels.push_back(m.space().label(i));
            w1.push_back(m.w1()[i] / pb.u());
            w2.push_back(m.w2()[i] / pb.v());
        }
        return {DMeasure(SampleSpace(std::move(labels)), std::move(w1), std::move(w2), mass),
                std::move(parent)};
    }

    const bool cond_first = branch == ConditionalBranch::ZeroDivisorE;
    for (std::size_t i = 0; i < n; ++i) {
        parent.push_back(i);
        const bool in_b = b.contains(i);
        if (cond_first) {
            w1.push_back(in_b ? m.w1()[i] / pb.u() : 0.0);
            w2.push_back(m.w2()[i]);
        } else {
            w1.push_back(m.w1()[i]);
            w2.push_back(in_b ? m.w2()[i] / pb.v() : 0.0);
        }
    }
    return {DMeasure(m.space(), std::move(w1), std::move(w2), mass), std::move(parent)};
}

}  // namespace hyperprob
