#pragma once

// JSON scenario files:
//
//   {
//     "space":     {"outcomes": ["w0", "w1", ...]},
//     "measure":   {"mass": "one" | "e" | "edagger", "w1": [...], "w2": [...]},
//     "variables": {"X": {"values": ["2+1k", "0", "[1,3]", 0.5, ...]}},
//     "partition": [[0, 1], [2], [3, 4, 5]],          (stored as "P")
//     "partitions": {"Q": [[0, 1, 2], [3, 4, 5]]},
//     "tolerance": 1e-9
//   }
//
// Weights are decimals or "p/q" strings. Only "space" and "measure" are
// required.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "hyperprob/conditional.hpp"
#include "hyperprob/measure.hpp"
#include "hyperprob/random_variable.hpp"

namespace hyperprob {

struct Scenario {
    SampleSpace space;
    DMeasure measure;
    std::map<std::string, DRandomVar> variables;
    std::map<std::string, Partition> partitions;
    Tolerance tolerance;
    std::string source;

    const DRandomVar& variable(const std::string& name) const;
    const Partition& partition(const std::string& name) const;
};

/// HYPERPROB_TOL when set and valid, else the default 1e-9. Throws
/// InvalidArgument for a malformed value.
Tolerance tolerance_from_env();

struct LoadOptions {
    bool check_axioms = true;
    /// Replaces both the environment and the file's "tolerance".
    std::optional<Tolerance> tolerance_override;
};

/// Throws ParseError (with line or field path) and, when check_axioms is
/// set, AxiomViolation listing every failed axiom.
Scenario parse_scenario(std::string_view text, std::string_view source = "<memory>", LoadOptions opts = {});
Scenario load_scenario(const std::filesystem::path& path, LoadOptions opts = {});

/// One-line description of the axiom failures in a report.
std::string describe_violations(const ValidationReport& r);

}  // namespace hyperprob
