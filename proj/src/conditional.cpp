#include "hyperprob/conditional.hpp"

#include <algorithm>

#include "hyperprob/error.hpp"

namespace hyperprob {

Partition::Partition(std::size_t n, std::vector<Event> cells) : n_(n), cells_(std::move(cells)) {
    if (n_ == 0) throw Error(ErrorCode::InvalidPartition, "partition of an empty space");
    std::vector<int> owner(n_, -1);
    for (std::size_t c = 0; c < cells_.size(); ++c) {
        if (cells_[c].empty()) throw Error(ErrorCode::InvalidPartition, "cell " + std::to_string(c) + " is empty");
        for (const auto i : cells_[c].members()) {
            if (i >= n_) {
                throw Error(ErrorCode::InvalidPartition, "cell " + std::to_string(c) + " references outcome " +
                                                             std::to_string(i) + " outside the space");
            }
            if (owner[i] >= 0) {
                throw Error(ErrorCode::InvalidPartition, "outcome " + std::to_string(i) + " lies in cells " +
                                                             std::to_string(owner[i]) + " and " + std::to_string(c));
            }
            owner[i] = static_cast<int>(c);
        }
    }
    const auto missing = std::find(owner.begin(), owner.end(), -1);
    if (missing != owner.end()) {
        throw Error(ErrorCode::InvalidPartition,
                    "outcome " + std::to_string(missing - owner.begin()) + " is not covered");
    }
}

Partition Partition::trivial(std::size_t n) { return Partition(n, {Event::all(n)}); }

Partition Partition::singletons(std::size_t n) {
    std::vector<Event> cells;
    for (std::size_t i = 0; i < n; ++i) cells.emplace_back(std::vector<std::size_t>{i});
    return Partition(n, std::move(cells));
}

Event Partition::union_of(std::span<const std::size_t> cell_indices) const {
    Event out;
    for (const auto c : cell_indices) {
        if (c >= cells_.size()) {
            throw Error(ErrorCode::IndexOutOfRange, "cell index " + std::to_string(c) + " out of range");
        }
        out = out.unite(cells_[c]);
    }
    return out;
}

std::vector<NumberClass> Partition::cell_status(const DMeasure& m, Tolerance tol) const {
    std::vector<NumberClass> out;
    out.reserve(cells_.size());
    for (const auto& c : cells_) out.push_back(classify(measure_of(m, c), tol));
    return out;
}

HyperNum conditional_expectation(const DRandomVar& x, const DMeasure& m, const Event& b, Tolerance tol) {
    require_same_space(x.space(), m.space());
    const HyperNum pb = measure_of(m, b);
    switch (conditioning_branch(pb, tol)) {
        case ConditionalBranch::Invertible:
            return integral(x, m, b) * inverse(pb, tol);
        case ConditionalBranch::Null:
            return expectation(x, m);
        case ConditionalBranch::ZeroDivisorE: {
            // Only the e component of the integral survives; the e' part of
            // pb is (numerically) zero and is never divided by.
            const double first = integral(x, m, b).u() / pb.u();
            return first * kE + expectation(x, m) * kEDagger;
        }
        case ConditionalBranch::ZeroDivisorEDagger: {
            const double second = integral(x, m, b).v() / pb.v();
            return expectation(x, m) * kE + second * kEDagger;
        }
    }
    return expectation(x, m);
}

DRandomVar partition_conditional(const DRandomVar& x, const DMeasure& m, const Partition& p, Tolerance tol) {
    require_same_space(x.space(), m.space());
    if (p.space_size() != m.size()) {
        throw Error(ErrorCode::InvalidPartition, "partition and measure have different space sizes");
    }
    std::vector<HyperNum> values(m.size(), kZero);
    for (const auto& cell : p.cells()) {
        const HyperNum ea = conditional_expectation(x, m, cell, tol);
        for (const auto i : cell.members()) values[i] = ea;
    }
    return DRandomVar(x.space(), std::move(values));
}

HyperNum integral_identity_residual(const DRandomVar& x, const DMeasure& m, const Partition& p,
                                    std::span<const std::size_t> cells, Tolerance tol) {
    const Event a = p.union_of(cells);
    const DRandomVar ep = partition_conditional(x, m, p, tol);
    return integral(ep, m, a) - integral(x, m, a);
}

HyperNum exclusive_union_residual(const DRandomVar& x, const DMeasure& m, const Event& a, const Event& b,
                                  Tolerance tol) {
    if (!a.disjoint_with(b)) throw Error(ErrorCode::EventsNotDisjoint, "A and B must be mutually exclusive");
    const Event ab = a.unite(b);
    const HyperNum lhs = measure_of(m, ab) * conditional_expectation(x, m, ab, tol);
    const HyperNum rhs = measure_of(m, a) * conditional_expectation(x, m, a, tol) +
                         measure_of(m, b) * conditional_expectation(x, m, b, tol);
    return lhs - rhs;
}

std::pair<HyperNum, HyperNum> subpartition_identity_residuals(const DRandomVar& x, const DMeasure& m,
                                                              const Partition& p,
                                                              std::span<const std::size_t> cells,
                                                              Tolerance tol) {
    if (cells.empty()) throw Error(ErrorCode::InvalidArgument, "select at least one cell");
    const Event a = p.union_of(cells);
    const HyperNum pa = measure_of(m, a);
    const HyperNum first = conditional_expectation(x, m, a, tol) * pa;
    const HyperNum second = integral(partition_conditional(x, m, p, tol), m, a);
    HyperNum sum = kZero;
    for (const auto c : cells) {
        sum += conditional_expectation(x, m, p[c], tol) * conditional_probability(m, p[c], a, tol);
    }
    const HyperNum third = pa * sum;
    return {first - second, second - third};
}

// -- case labels -------------------------------------------------------------

namespace {

bool positive(NumberClass c) { return c != NumberClass::Zero; }

}  // namespace

std::string exclusive_union_case(const DMeasure& m, const Event& a, const Event& b, Tolerance tol) {
    const auto cu = classify(measure_of(m, a.unite(b)), tol);
    const auto ca = classify(measure_of(m, a), tol);
    const auto cb = classify(measure_of(m, b), tol);
    switch (cu) {
        case NumberClass::Invertible:
            if (ca == NumberClass::Invertible && cb == NumberClass::Invertible) return "a.i";
            if (ca == NumberClass::Invertible && cb == NumberClass::Zero) return "a.ii";
            if (ca == NumberClass::Zero && cb == NumberClass::Invertible) return "a.iii";
            return "a.mixed";
        case NumberClass::Zero:
            return "b";
        case NumberClass::ZeroDivisorE:
        case NumberClass::ZeroDivisorEDagger: {
            const std::string head = cu == NumberClass::ZeroDivisorE ? "c" : "d";
            if (positive(ca) && !positive(cb)) return head + ".i";
            if (!positive(ca) && positive(cb)) return head + ".ii";
            return head + ".iii";
        }
    }
    return "a.mixed";
}

std::string integral_identity_case(const DMeasure& m, const Partition& p, Tolerance tol) {
    const auto status = p.cell_status(m, tol);
    const auto count = [&](NumberClass c) { return std::count(status.begin(), status.end(), c); };
    const auto n = static_cast<long>(status.size());
    const long inv = count(NumberClass::Invertible);
    const long de = count(NumberClass::ZeroDivisorE);
    const long dd = count(NumberClass::ZeroDivisorEDagger);
    if (inv == n) return "a";
    if (inv == 0 && (de == n || dd == n)) return "c";
    if (inv == 1 && (de == n - 1 || dd == n - 1)) return "b";
    return "mixed";
}

std::string subpartition_case(const DMeasure& m, const Partition& p, std::span<const std::size_t> cells,
                              Tolerance tol) {
    const auto ca = classify(measure_of(m, p.union_of(cells)), tol);
    switch (ca) {
        case NumberClass::Invertible: {
            const bool all_invertible = std::all_of(cells.begin(), cells.end(), [&](std::size_t c) {
                return classify(measure_of(m, p[c]), tol) == NumberClass::Invertible;
            });
            return all_invertible ? "a.i" : "a.ii";
        }
        case NumberClass::ZeroDivisorE: return "b";
        case NumberClass::ZeroDivisorEDagger: return "c";
        case NumberClass::Zero: return "null";
    }
    return "null";
}

const std::vector<std::string>& exclusive_union_case_labels() {
    static const std::vector<std::string> labels{"a.i", "a.ii", "a.iii", "a.mixed", "b",    "c.i",
                                                 "c.ii", "c.iii", "d.i",   "d.ii",    "d.iii"};
    return labels;
}

const std::vector<std::string>& integral_identity_case_labels() {
    static const std::vector<std::string> labels{"a", "b", "c", "mixed"};
    return labels;
}

const std::vector<std::string>& subpartition_case_labels() {
    static const std::vector<std::string> labels{"a.i", "a.ii", "b", "c", "null"};
    return labels;
}

}  // namespace hyperprob
