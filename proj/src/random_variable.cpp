#include "hyperprob/random_variable.hpp"

#include <cmath>
#include <set>
#include <string>

#include "hyperprob/error.hpp"

namespace hyperprob {

std::string_view to_string(Thorn t) noexcept {
    switch (t) {
        case Thorn::One: return "one";
        case Thorn::E: return "e";
        case Thorn::EDagger: return "edagger";
    }
    return "?";
}

Thorn parse_thorn(std::string_view text) { return thorn_for(parse_mass_mode(text)); }

void require_same_space(const SampleSpace& a, const SampleSpace& b) {
    if (!(a == b)) throw Error(ErrorCode::SpaceMismatch, "operands live on different sample spaces");
}

DRandomVar::DRandomVar(SampleSpace space, std::vector<HyperNum> values)
    : space_(std::move(space)), values_(std::move(values)) {
    if (values_.size() != space_.size()) {
        throw Error(ErrorCode::LengthMismatch, "random variable needs one value per outcome (got " +
                                                   std::to_string(values_.size()) + " for " +
                                                   std::to_string(space_.size()) + ")");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!values_[i].is_finite()) {
            throw Error(ErrorCode::NonFinite, "value at outcome " + space_.label(i) + " is not finite");
        }
    }
}

DRandomVar DRandomVar::constant(const SampleSpace& space, const HyperNum& c) {
    return DRandomVar(space, std::vector<HyperNum>(space.size(), c));
}

DRandomVar DRandomVar::indicator(const SampleSpace& space, const Event& a, Thorn thorn) {
    a.check_range(space.size());
    std::vector<HyperNum> values(space.size(), kZero);
    for (const auto i : a.members()) values[i] = thorn_value(thorn);
    return DRandomVar(space, std::move(values));
}

DRandomVar DRandomVar::from_components(const SampleSpace& space, std::span<const double> x1,
                                       std::span<const double> x2) {
    if (x1.size() != x2.size()) throw Error(ErrorCode::LengthMismatch, "component lengths differ");
    std::vector<HyperNum> values;
    values.reserve(x1.size());
    for (std::size_t i = 0; i < x1.size(); ++i) values.emplace_back(x1[i], x2[i]);
    return DRandomVar(space, std::move(values));
}

DRandomVar DRandomVar::real(const SampleSpace& space, std::span<const double> x) {
    return from_components(space, x, x);
}

ComponentVars components(const DRandomVar& x) {
    ComponentVars out;
    out.x1.reserve(x.size());
    out.x2.reserve(x.size());
    for (const auto& z : x.values()) {
        out.x1.push_back(z.u());
        out.x2.push_back(z.v());
    }
    return out;
}

HyperNum integral(const DRandomVar& x, const DMeasure& m, const Event& a) {
    require_same_space(x.space(), m.space());
    a.check_range(m.size());
    double s1 = 0;
    double s2 = 0;
    for (const auto i : a.members()) {
        s1 += x[i].u() * m.w1()[i];
        s2 += x[i].v() * m.w2()[i];
    }
    return {s1, s2};
}

HyperNum expectation(const DRandomVar& x, const DMeasure& m) {
    return integral(x, m, Event::all(m.size()));
}

HyperNum moment_about(const DRandomVar& x, const DMeasure& m, const HyperNum& a, unsigned r) {
    const auto shifted = x.map([&](const HyperNum& z) { return int_pow(z - a, r); });
    return expectation(shifted, m);
}

HyperNum central_moment(const DRandomVar& x, const DMeasure& m, unsigned r) {
    return moment_about(x, m, expectation(x, m), r);
}

HyperNum variance(const DRandomVar& x, const DMeasure& m) { return central_moment(x, m, 2); }

HyperNum mgf(const DRandomVar& x, const DMeasure& m, const HyperNum& t) {
    require_same_space(x.space(), m.space());
    double s1 = 0;
    double s2 = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s1 += std::exp(t.u() * x[i].u()) * m.w1()[i];
        s2 += std::exp(t.v() * x[i].v()) * m.w2()[i];
    }
    return {s1, s2};
}

namespace {

// Component law: value -> P_i(X_i = value).
std::map<double, double> component_law(const std::vector<double>& xs, const std::vector<double>& w) {
    std::map<double, double> law;
    for (std::size_t i = 0; i < xs.size(); ++i) law[xs[i]] += w[i];
    return law;
}

}  // namespace

Pmf pmf(const DRandomVar& x, const DMeasure& m) {
    require_same_space(x.space(), m.space());
    const auto comps = components(x);
    const auto law1 = component_law(comps.x1, m.w1());
    const auto law2 = component_law(comps.x2, m.w2());
    const HyperNum thorn = thorn_value(thorn_for(m.mass()));
    Pmf out;
    for (const auto& [x1, p1] : law1) {
        for (const auto& [x2, p2] : law2) {
            out.emplace(HyperNum{x1, x2}, HyperNum{p1, p2} * thorn);
        }
    }
    return out;
}

HyperNum cdf(const DRandomVar& x, const DMeasure& m, const HyperNum& z, Tolerance tol) {
    require_same_space(x.space(), m.space());
    double f1 = 0;
    double f2 = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].u() <= z.u() + tol.eps) f1 += m.w1()[i];
        if (x[i].v() <= z.v() + tol.eps) f2 += m.w2()[i];
    }
    return HyperNum{f1, f2} * thorn_value(thorn_for(m.mass()));
}

HyperNum pmf_marginal_total(const Pmf& f) {
    std::map<double, double> first;
    std::map<double, double> second;
    for (const auto& [key, p] : f) {
        first.emplace(key.u(), p.u());
        second.emplace(key.v(), p.v());
    }
    double s1 = 0, s2 = 0;
    for (const auto& [k, p] : first) s1 += p;
    for (const auto& [k, p] : second) s2 += p;
    return {s1, s2};
}

JointPmf joint_pmf(const DRandomVar& x, const DRandomVar& y, const DMeasure& m) {
    require_same_space(x.space(), m.space());
    require_same_space(y.space(), m.space());
    JointPmf h;
    for (std::size_t i = 0; i < x.size(); ++i) h[{x[i], y[i]}] += m.weight(i);
    return h;
}

bool are_independent(const DRandomVar& x, const DRandomVar& y, const DMeasure& m, Tolerance tol) {
    const auto h = joint_pmf(x, y, m);
    std::map<HyperNum, HyperNum, HyperLess> fx, fy;
    for (const auto& [key, p] : h) {
        fx[key.first] += p;
        fy[key.second] += p;
    }
    for (const auto& [alpha, pa] : fx) {
        for (const auto& [beta, pb] : fy) {
            const auto it = h.find({alpha, beta});
            const HyperNum joint = it == h.end() ? kZero : it->second;
            if (compare(joint, pa * pb, tol) != OrderRelation::Equal) return false;
        }
    }
    return true;
}

RegionClassification classify_regions(const DRandomVar& x, const HyperNum& alpha, Tolerance tol) {
    std::vector<std::size_t> le, gt, incmp, lt, ge;
    for (std::size_t i = 0; i < x.size(); ++i) {
        switch (compare(x[i], alpha, tol)) {
            case OrderRelation::Less:
                le.push_back(i);
                lt.push_back(i);
                break;
            case OrderRelation::Equal:
                le.push_back(i);
                ge.push_back(i);
                break;
            case OrderRelation::Greater:
                gt.push_back(i);
                ge.push_back(i);
                break;
            case OrderRelation::Incomparable:
                incmp.push_back(i);
                break;
        }
    }
    return {Event(std::move(le)), Event(std::move(gt)), Event(std::move(incmp)), Event(std::move(lt)),
            Event(std::move(ge))};
}

DRandomVar linear_combine(std::span<const HyperNum> coeffs, std::span<const DRandomVar> vars) {
    if (coeffs.size() != vars.size()) {
        throw Error(ErrorCode::LengthMismatch, "one coefficient per variable is required");
    }
    if (vars.empty()) throw Error(ErrorCode::InvalidArgument, "nothing to combine");
    const auto& space = vars.front().space();
    std::vector<HyperNum> out(space.size(), kZero);
    for (std::size_t k = 0; k < vars.size(); ++k) {
        require_same_space(space, vars[k].space());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += coeffs[k] * vars[k][i];
    }
    return DRandomVar(space, std::move(out));
}

DRandomVar pointwise_mul(const DRandomVar& x, const DRandomVar& y) {
    require_same_space(x.space(), y.space());
    std::vector<HyperNum> out;
    out.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out.push_back(x[i] * y[i]);
    return DRandomVar(x.space(), std::move(out));
}

DRandomVar pointwise_add(const DRandomVar& x, const DRandomVar& y) {
    require_same_space(x.space(), y.space());
    std::vector<HyperNum> out;
    out.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out.push_back(x[i] + y[i]);
    return DRandomVar(x.space(), std::move(out));
}

DRandomVar affine(const DRandomVar& x, const HyperNum& a, const HyperNum& b) {
    return x.map([&](const HyperNum& z) { return a * z + b; });
}

}  // namespace hyperprob
