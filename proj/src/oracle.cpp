#include "hyperprob/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "hyperprob/error.hpp"

namespace hyperprob::oracle {

namespace {

double size_of(const HyperNum& z) { return std::max(std::fabs(z.u()), std::fabs(z.v())); }

std::uint64_t full_mask(std::size_t n) { return (std::uint64_t{1} << n) - 1; }

std::uint64_t mask_of(const Event& e) {
    std::uint64_t m = 0;
    for (const auto i : e.members()) m |= std::uint64_t{1} << i;
    return m;
}

// Raw sums with the outcome loop written out, independent of measure_of and
// integral.
HyperNum weighted_sum(const DMeasure& m, const DRandomVar* x, std::uint64_t a) {
    double s1 = 0, s2 = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!(a >> i & 1u)) continue;
        const double x1 = x ? (*x)[i].u() : 1.0;
        const double x2 = x ? (*x)[i].v() : 1.0;
        s1 += x1 * m.w1()[i];
        s2 += x2 * m.w2()[i];
    }
    return {s1, s2};
}

double component_rule(double pb, double num, double fallback, double eps) {
    return pb > eps ? num / pb : fallback;
}

}  // namespace

const std::vector<std::string>& identities() {
    static const std::vector<std::string> ids{"def22", "def81", "thm82", "eqn3", "thm83", "cauchy_schwarz"};
    return ids;
}

HyperNum measure_of(const DMeasure& m, std::uint64_t a) { return weighted_sum(m, nullptr, a); }

HyperNum conditional_probability(const DMeasure& m, std::uint64_t a, std::uint64_t b, Tolerance tol) {
    const HyperNum pb = measure_of(m, b);
    const HyperNum pa = measure_of(m, a);
    const HyperNum pab = measure_of(m, a & b);
    return {component_rule(pb.u(), pab.u(), pa.u(), tol.eps), component_rule(pb.v(), pab.v(), pa.v(), tol.eps)};
}

HyperNum conditional_expectation(const DRandomVar& x, const DMeasure& m, std::uint64_t b, Tolerance tol) {
    const HyperNum pb = measure_of(m, b);
    const HyperNum ib = weighted_sum(m, &x, b);
    const HyperNum ex = weighted_sum(m, &x, full_mask(m.size()));
    return {component_rule(pb.u(), ib.u(), ex.u(), tol.eps), component_rule(pb.v(), ib.v(), ex.v(), tol.eps)};
}

std::vector<DRandomVar> identity_variables(const Scenario& s) {
    std::vector<DRandomVar> out;
    for (const auto& [name, x] : s.variables) out.push_back(x);
    if (out.empty()) {
        std::vector<HyperNum> values;
        for (std::size_t i = 0; i < s.space.size(); ++i) values.push_back(HyperNum::real(static_cast<double>(i)));
        out.emplace_back(s.space, std::move(values));
    }
    return out;
}

std::vector<Partition> identity_partitions(const Scenario& s) {
    std::vector<Partition> out;
    for (const auto& [name, p] : s.partitions) out.push_back(p);
    if (out.empty()) out.push_back(Partition::singletons(s.space.size()));
    return out;
}

namespace {

double def22(const Scenario& s) {
    const auto& m = s.measure;
    const auto tol = s.tolerance;
    const std::uint64_t full = full_mask(m.size());
    double worst = 0;
    for (std::uint64_t b = 0; b <= full; ++b) {
        const HyperNum pb = measure_of(m, b);
        for (std::uint64_t a = 0; a <= full; ++a) {
            const HyperNum lhs = conditional_probability(m, a, b, tol) * pb;
            worst = std::max(worst, size_of(lhs - measure_of(m, a & b)));
        }
        if (size_of(pb) <= tol.eps) continue;
        for (std::uint64_t a = 0; a <= full; ++a) {
            const std::uint64_t rest = full & ~a;
            for (std::uint64_t c = rest;; c = (c - 1) & rest) {
                const HyperNum d = conditional_probability(m, a | c, b, tol) -
                                   conditional_probability(m, a, b, tol) - conditional_probability(m, c, b, tol);
                worst = std::max(worst, size_of(d));
                if (c == 0) break;
            }
        }
    }
    return worst;
}

double def81(const Scenario& s) {
    const auto& m = s.measure;
    const std::uint64_t full = full_mask(m.size());
    double worst = 0;
    for (const auto& x : identity_variables(s)) {
        for (std::uint64_t b = 0; b <= full; ++b) {
            const HyperNum lhs = conditional_expectation(x, m, b, s.tolerance) * measure_of(m, b);
            worst = std::max(worst, size_of(lhs - weighted_sum(m, &x, b)));
        }
    }
    return worst;
}

double thm82(const Scenario& s) {
    const auto& m = s.measure;
    const auto tol = s.tolerance;
    const std::uint64_t full = full_mask(m.size());
    double worst = 0;
    for (const auto& x : identity_variables(s)) {
        const auto weighted = [&](std::uint64_t e) { return measure_of(m, e) * conditional_expectation(x, m, e, tol); };
        for (std::uint64_t a = 0; a <= full; ++a) {
            const std::uint64_t rest = full & ~a;
            for (std::uint64_t b = rest;; b = (b - 1) & rest) {
                worst = std::max(worst, size_of(weighted(a | b) - weighted(a) - weighted(b)));
                if (b == 0) break;
            }
        }
    }
    return worst;
}

// Value of E_P(X) at each outcome.
std::vector<HyperNum> cell_values(const DRandomVar& x, const DMeasure& m, const std::vector<std::uint64_t>& cells,
                                  Tolerance tol) {
    std::vector<HyperNum> out(m.size());
    for (const auto c : cells) {
        const HyperNum v = conditional_expectation(x, m, c, tol);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (c >> i & 1u) out[i] = v;
        }
    }
    return out;
}

HyperNum integral_of(const std::vector<HyperNum>& values, const DMeasure& m, std::uint64_t a) {
    double s1 = 0, s2 = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!(a >> i & 1u)) continue;
        s1 += values[i].u() * m.w1()[i];
        s2 += values[i].v() * m.w2()[i];
    }
    return {s1, s2};
}

template <class F>
double over_cell_unions(const Scenario& s, bool include_empty, F&& f) {
    double worst = 0;
    for (const auto& p : identity_partitions(s)) {
        std::vector<std::uint64_t> cells;
        for (const auto& c : p.cells()) cells.push_back(mask_of(c));
        const std::uint64_t subsets = std::uint64_t{1} << cells.size();
        for (const auto& x : identity_variables(s)) {
            const auto ep = cell_values(x, s.measure, cells, s.tolerance);
            for (std::uint64_t j = include_empty ? 0 : 1; j < subsets; ++j) {
                std::uint64_t a = 0;
                std::vector<std::uint64_t> chosen;
                for (std::size_t k = 0; k < cells.size(); ++k) {
                    if (j >> k & 1u) {
                        a |= cells[k];
                        chosen.push_back(cells[k]);
                    }
                }
                worst = std::max(worst, f(x, ep, a, chosen));
            }
        }
    }
    return worst;
}

double eqn3(const Scenario& s) {
    return over_cell_unions(s, true, [&](const DRandomVar& x, const std::vector<HyperNum>& ep, std::uint64_t a,
                                         const std::vector<std::uint64_t>&) {
        return size_of(integral_of(ep, s.measure, a) - weighted_sum(s.measure, &x, a));
    });
}

double thm83(const Scenario& s) {
    const auto& m = s.measure;
    const auto tol = s.tolerance;
    return over_cell_unions(s, false, [&](const DRandomVar& x, const std::vector<HyperNum>& ep, std::uint64_t a,
                                          const std::vector<std::uint64_t>& chosen) {
        const HyperNum pa = measure_of(m, a);
        const HyperNum first = conditional_expectation(x, m, a, tol) * pa;
        const HyperNum second = integral_of(ep, m, a);
        HyperNum sum = kZero;
        for (const auto c : chosen) sum += conditional_expectation(x, m, c, tol) * conditional_probability(m, c, a, tol);
        const HyperNum third = pa * sum;
        return std::max(size_of(first - second), size_of(second - third));
    });
}

double cauchy_schwarz(const Scenario& s) {
    const auto& m = s.measure;
    const auto vars = identity_variables(s);
    double worst = 0;
    for (const auto& x : vars) {
        for (const auto& y : vars) {
            double xy1 = 0, xy2 = 0, xx1 = 0, xx2 = 0, yy1 = 0, yy2 = 0;
            for (std::size_t i = 0; i < m.size(); ++i) {
                xy1 += x[i].u() * y[i].u() * m.w1()[i];
                xy2 += x[i].v() * y[i].v() * m.w2()[i];
                xx1 += x[i].u() * x[i].u() * m.w1()[i];
                xx2 += x[i].v() * x[i].v() * m.w2()[i];
                yy1 += y[i].u() * y[i].u() * m.w1()[i];
                yy2 += y[i].v() * y[i].v() * m.w2()[i];
            }
            worst = std::max({worst, xy1 * xy1 - xx1 * yy1, xy2 * xy2 - xx2 * yy2});
        }
    }
    return worst;
}

}  // namespace

double max_residual(const Scenario& s, std::string_view identity) {
    if (s.space.size() > kMaxOutcomes) {
        throw Error(ErrorCode::SpaceTooLarge, "exhaustive enumeration supports at most " +
                                                  std::to_string(kMaxOutcomes) + " outcomes, got " +
                                                  std::to_string(s.space.size()));
    }
    if (identity == "def22") return def22(s);
    if (identity == "def81") return def81(s);
    if (identity == "thm82") return thm82(s);
    if (identity == "eqn3") return eqn3(s);
    if (identity == "thm83") return thm83(s);
    if (identity == "cauchy_schwarz") return cauchy_schwarz(s);
    throw Error(ErrorCode::InvalidArgument, "unknown identity \"" + std::string(identity) + "\"");
}

}  // namespace hyperprob::oracle
