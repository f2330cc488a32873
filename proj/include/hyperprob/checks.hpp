#pragma once

// Property and identity suites run against a scenario plus seeded random
// inputs, with branch-coverage accounting over the scenario's own events.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hyperprob/scenario.hpp"

namespace hyperprob {

struct CheckResult {
    std::string name;
    bool passed = true;
    double max_residual = 0;
    double threshold = 0;
    std::size_t instances = 0;
    std::string note;
};

/// Hit counts per declared label; every label is listed, hit or not.
struct CoverageFamily {
    std::string name;
    std::vector<std::pair<std::string, std::size_t>> hits;

    std::size_t count(std::string_view label) const;
};

struct CheckReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::string scenario;
    std::vector<CheckResult> checks;
    std::vector<CoverageFamily> coverage;
    std::vector<std::string> warnings;

    bool passed() const;
    const CheckResult* find(std::string_view name) const;
    const CoverageFamily* family(std::string_view name) const;
};

struct RunOptions {
    std::uint64_t seed = 42;
    /// Evaluate checks concurrently. The report is assembled in declaration
    /// order and every check draws from its own stream, so the output does
    /// not depend on this flag.
    bool parallel = false;
};

/// algebra, measure, expectation, mgf, distributions, conditional, all, and
/// the single identities def22, def81, thm82, eqn3, thm83, cauchy_schwarz.
const std::vector<std::string>& suite_names();

/// Throws InvalidArgument for an unknown suite.
CheckReport run_suite(const Scenario& s, std::string_view suite, RunOptions opts = {});

/// Coverage of the def22, def81 and thm82 case splits by the scenario's
/// events (all events when the space is small, a seeded sample otherwise).
std::vector<CoverageFamily> scenario_coverage(const Scenario& s, std::uint64_t seed = 42);

/// Same identities as oracle::max_residual, evaluated through the library.
double library_residual(const Scenario& s, std::string_view identity);

std::string render_text(const CheckReport& r);
std::string render_json(const CheckReport& r);

}  // namespace hyperprob
