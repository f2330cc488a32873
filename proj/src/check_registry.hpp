#pragma once

// Internal: the check table shared by checks.cpp and the suite bodies.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "hyperprob/checks.hpp"
#include "hyperprob/rng.hpp"

namespace hyperprob::detail {

/// Accumulates one check's outcome.
class Tracker {
public:
    Tracker(std::string name, double threshold) {
        r_.name = std::move(name);
        r_.threshold = threshold;
    }

    /// Records one instance with the given residual.
    void residual(double x) {
        ++r_.instances;
        if (!(x <= r_.max_residual)) r_.max_residual = std::isnan(x) ? std::numeric_limits<double>::infinity() : x;
    }
    /// Records one instance of a yes/no property.
    void expect(bool ok, const std::string& what) {
        ++r_.instances;
        if (!ok) fail(what);
    }
    /// As expect, building the message only on failure.
    template <class F>
    void expect_lazy(bool ok, F&& what) {
        ++r_.instances;
        if (!ok) fail(what());
    }
    void fail(const std::string& what) {
        if (r_.passed) r_.note = what;
        r_.passed = false;
    }
    void note(const std::string& text) {
        if (r_.passed) r_.note = text;
    }

    CheckResult finish() {
        if (r_.max_residual > r_.threshold) {
            if (r_.passed) r_.note = "residual above threshold";
            r_.passed = false;
        }
        return r_;
    }

private:
    CheckResult r_;
};

using CheckFn = std::function<CheckResult(const Scenario&, Rng)>;

struct CheckDef {
    std::string name;
    CheckFn run;
};

std::vector<CheckDef> algebra_checks();
std::vector<CheckDef> measure_checks();
std::vector<CheckDef> expectation_checks();
std::vector<CheckDef> mgf_checks();
std::vector<CheckDef> distribution_checks();
std::vector<CheckDef> conditional_checks();
/// Library residual of one identity plus its agreement with the oracle.
std::vector<CheckDef> identity_checks(const std::string& identity);

inline double size_of(const HyperNum& z) { return std::max(std::fabs(z.u()), std::fabs(z.v())); }

/// |x - y| scaled by max(1, |x|, |y|), componentwise maximum.
inline double rel_diff(const HyperNum& x, const HyperNum& y) {
    const double du = std::fabs(x.u() - y.u()) / std::max({1.0, std::fabs(x.u()), std::fabs(y.u())});
    const double dv = std::fabs(x.v() - y.v()) / std::max({1.0, std::fabs(x.v()), std::fabs(y.v())});
    return std::max(du, dv);
}

/// "%.3e" formatting used in reports.
std::string sci(double x);

}  // namespace hyperprob::detail
