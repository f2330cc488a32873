#pragma once

// Hyperbolic-valued random variables on finite sample spaces and their
// moments. Every quantity decomposes over the idempotent components:
// X = X1 e + X2 e', integral = e * int X1 dP1 + e' * int X2 dP2.

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "hyperprob/hypernum.hpp"
#include "hyperprob/measure.hpp"

namespace hyperprob {

/// The factor 1, e or e' attached to indicators and distributions.
enum class Thorn { One, E, EDagger };

constexpr HyperNum thorn_value(Thorn t) {
    switch (t) {
        case Thorn::One: return kOne;
        case Thorn::E: return kE;
        case Thorn::EDagger: return kEDagger;
    }
    return kOne;
}

constexpr Thorn thorn_for(MassMode m) {
    switch (m) {
        case MassMode::One: return Thorn::One;
        case MassMode::E: return Thorn::E;
        case MassMode::EDagger: return Thorn::EDagger;
    }
    return Thorn::One;
}

constexpr MassMode mass_for(Thorn t) {
    switch (t) {
        case Thorn::One: return MassMode::One;
        case Thorn::E: return MassMode::E;
        case Thorn::EDagger: return MassMode::EDagger;
    }
    return MassMode::One;
}

std::string_view to_string(Thorn t) noexcept;
Thorn parse_thorn(std::string_view text);

class DRandomVar {
public:
    /// Throws LengthMismatch or NonFinite.
    DRandomVar(SampleSpace space, std::vector<HyperNum> values);

    static DRandomVar constant(const SampleSpace& space, const HyperNum& c);
    /// thorn on A, 0 elsewhere.
    static DRandomVar indicator(const SampleSpace& space, const Event& a, Thorn thorn = Thorn::One);
    /// X = X1 e + X2 e'.
    static DRandomVar from_components(const SampleSpace& space, std::span<const double> x1,
                                      std::span<const double> x2);
    static DRandomVar real(const SampleSpace& space, std::span<const double> x);

    const SampleSpace& space() const { return space_; }
    std::size_t size() const { return values_.size(); }
    const std::vector<HyperNum>& values() const { return values_; }
    const HyperNum& operator[](std::size_t i) const { return values_[i]; }

    /// Pointwise image under f.
    template <class F>
    DRandomVar map(F&& f) const {
        std::vector<HyperNum> out;
        out.reserve(values_.size());
        for (const auto& z : values_) out.push_back(f(z));
        return DRandomVar(space_, std::move(out));
    }

private:
    SampleSpace space_;
    std::vector<HyperNum> values_;
};

struct ComponentVars {
    std::vector<double> x1;
    std::vector<double> x2;
};

ComponentVars components(const DRandomVar& x);

/// e * sum_{w in A} X1(w) w1(w) + e' * sum_{w in A} X2(w) w2(w).
/// Throws SpaceMismatch when X and m live on different spaces.
HyperNum integral(const DRandomVar& x, const DMeasure& m, const Event& a);
HyperNum expectation(const DRandomVar& x, const DMeasure& m);
HyperNum variance(const DRandomVar& x, const DMeasure& m);
/// E (X - a)^r.
HyperNum moment_about(const DRandomVar& x, const DMeasure& m, const HyperNum& a, unsigned r);
HyperNum central_moment(const DRandomVar& x, const DMeasure& m, unsigned r);
/// e * E exp(t_u X1) + e' * E exp(t_v X2), t = t_u e + t_v e'.
HyperNum mgf(const DRandomVar& x, const DMeasure& m, const HyperNum& t);

using Pmf = std::map<HyperNum, HyperNum, HyperLess>;

/// Keys are the pairs (x, y) over range(X1) x range(X2); the value at
/// x e + y e' is [e P1(X1 = x) + e' P2(X2 = y)] * thorn, thorn taken from the
/// measure's mass mode.
Pmf pmf(const DRandomVar& x, const DMeasure& m);

/// [e P1(X1 <= z_u) + e' P2(X2 <= z_v)] * thorn.
HyperNum cdf(const DRandomVar& x, const DMeasure& m, const HyperNum& z, Tolerance tol = {});

/// Sum of a pmf along each component: e * sum_x f1(x) + e' * sum_y f2(y).
/// Equals the total mass p for any pmf produced above.
HyperNum pmf_marginal_total(const Pmf& f);

using JointKey = std::pair<HyperNum, HyperNum>;

struct JointLess {
    bool operator()(const JointKey& x, const JointKey& y) const {
        HyperLess less;
        if (less(x.first, y.first)) return true;
        if (less(y.first, x.first)) return false;
        return less(x.second, y.second);
    }
};

using JointPmf = std::map<JointKey, HyperNum, JointLess>;

/// h(alpha, beta) = P(X = alpha, Y = beta) over the observed support.
JointPmf joint_pmf(const DRandomVar& x, const DRandomVar& y, const DMeasure& m);

/// h(alpha, beta) == f_X(alpha) f_Y(beta) for all support pairs, with the
/// marginals taken from the joint table.
bool are_independent(const DRandomVar& x, const DRandomVar& y, const DMeasure& m, Tolerance tol = {});

/// Partition of the outcomes by comparing X(w) with alpha.
struct RegionClassification {
    Event le;     // X <= alpha
    Event gt;     // X > alpha (comparable and not equal)
    Event incmp;  // not comparable with alpha
    Event lt;     // X <= alpha and X != alpha
    Event ge;     // X >= alpha
};

RegionClassification classify_regions(const DRandomVar& x, const HyperNum& alpha, Tolerance tol = {});

/// sum_i coeffs[i] * vars[i]. Throws LengthMismatch, SpaceMismatch, InvalidArgument (empty).
DRandomVar linear_combine(std::span<const HyperNum> coeffs, std::span<const DRandomVar> vars);
DRandomVar pointwise_mul(const DRandomVar& x, const DRandomVar& y);
DRandomVar pointwise_add(const DRandomVar& x, const DRandomVar& y);
/// a X + b.
DRandomVar affine(const DRandomVar& x, const HyperNum& a, const HyperNum& b);

/// Throws SpaceMismatch.
void require_same_space(const SampleSpace& a, const SampleSpace& b);

}  // namespace hyperprob
