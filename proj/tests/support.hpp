#pragma once

#include <cmath>

#include <doctest.h>

#include "hyperprob/hypernum.hpp"

namespace testing {

inline bool close(const hyperprob::HyperNum& x, const hyperprob::HyperNum& y, double tol = 1e-12) {
    return std::fabs(x.u() - y.u()) <= tol && std::fabs(x.v() - y.v()) <= tol;
}

inline hyperprob::HyperNum cart(double a, double b) { return hyperprob::HyperNum::from_cartesian(a, b); }

}  // namespace testing

#define CHECK_HYPER(x, y) CHECK_MESSAGE(::testing::close((x), (y)), hyperprob::format_idempotent(x), " vs ", hyperprob::format_idempotent(y))
#define CHECK_HYPER_TOL(x, y, tol) CHECK_MESSAGE(::testing::close((x), (y), (tol)), hyperprob::format_idempotent(x), " vs ", hyperprob::format_idempotent(y))
