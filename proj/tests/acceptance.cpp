// Acceptance gate: one PASS/FAIL line per criterion. Each criterion reads the
// relevant checks out of a full `all` run on the bundled coverage scenario and
// pins their thresholds, then re-derives the headline facts directly.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "hyperprob/checks.hpp"
#include "hyperprob/conditional.hpp"
#include "hyperprob/distributions.hpp"
#include "hyperprob/error.hpp"
#include "hyperprob/generators.hpp"
#include "hyperprob/oracle.hpp"
#include "hyperprob/scenario.hpp"

#ifndef HYPERPROB_CLI
#error "HYPERPROB_CLI must name the command-line binary"
#endif
#ifndef HYPERPROB_SCENARIOS
#error "HYPERPROB_SCENARIOS must name the bundled scenario directory"
#endif

using namespace hyperprob;

namespace {

struct Verdict {
    bool ok = true;
    std::vector<std::string> why;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            why.push_back(what);
        }
    }
};

// The named check ran, passed, and was held to at most `tol`.
void pinned(Verdict& v, const CheckReport& r, const std::string& name, double tol, std::size_t min_instances = 1) {
    const CheckResult* c = r.find(name);
    if (c == nullptr) {
        v.require(false, name + " missing");
        return;
    }
    v.require(c->passed, name + " failed (" + c->note + ")");
    v.require(c->threshold <= tol, name + " threshold looser than required");
    v.require(c->max_residual <= tol, name + " residual above required tolerance");
    v.require(c->instances >= min_instances, name + " ran on too few instances");
}

// "label=count" pairs from a check note.
std::map<std::string, long> note_counts(const CheckReport& r, const std::string& name) {
    std::map<std::string, long> out;
    const CheckResult* c = r.find(name);
    if (c == nullptr) return out;
    static const std::regex pair(R"(([a-z.\-]+)=(\d+))");
    for (std::sregex_iterator it(c->note.begin(), c->note.end(), pair), end; it != end; ++it) {
        out[(*it)[1]] += std::stol((*it)[2]);
    }
    return out;
}

double hyper_gap(const HyperNum& x, const HyperNum& y) { return std::max(std::fabs(x.u() - y.u()), std::fabs(x.v() - y.v())); }

int report(int id, const std::string& title, const Verdict& v) {
    std::printf("criterion %d  %s  %s\n", id, v.ok ? "PASS" : "FAIL", title.c_str());
    for (const auto& w : v.why) std::printf("    %s\n", w.c_str());
    return v.ok ? 0 : 1;
}

Verdict algebra(const CheckReport& r) {
    Verdict v;
    for (const char* name : {"algebra.ring_laws", "algebra.conjugation", "algebra.norm_is_real", "algebra.inverse"}) {
        pinned(v, r, name, 1e-12, 10000);
    }
    return v;
}

Verdict order(const CheckReport& r) {
    Verdict v;
    pinned(v, r, "algebra.order_axioms", 0);
    pinned(v, r, "algebra.four_quarters", 0, 10);
    // Direct sweep: 21 x 21 grid of step 1/4 around 10 seeded alphas, every
    // point classified against alpha and against every other grid point of
    // its row and column.
    Rng rng(2024);
    std::size_t violations = 0;
    for (int k = 0; k < 10; ++k) {
        const HyperNum alpha = random_dyadic_hypernum(rng, 2, 4);
        std::vector<HyperNum> grid;
        for (int i = -10; i <= 10; ++i)
            for (int j = -10; j <= 10; ++j) grid.emplace_back(alpha.u() + 0.25 * i, alpha.v() + 0.25 * j);
        std::array<int, 4> quarter{};
        for (const auto& z : grid) {
            const double du = z.u() - alpha.u(), dv = z.v() - alpha.v();
            const auto rel = compare(z, alpha);
            const bool le = rel == OrderRelation::Less || rel == OrderRelation::Equal;
            if (le != (du <= 0 && dv <= 0)) ++violations;
            if ((rel == OrderRelation::Greater) != (du >= 0 && dv >= 0 && (du != 0 || dv != 0))) ++violations;
            if ((rel == OrderRelation::Incomparable) != (du * dv < 0)) ++violations;
            if (compare(z, z) != OrderRelation::Equal) ++violations;
            ++quarter[le ? 0 : rel == OrderRelation::Greater ? 1 : du > 0 ? 2 : 3];
        }
        if (quarter != std::array<int, 4>{121, 120, 100, 100}) ++violations;
        for (std::size_t a = 0; a < grid.size(); a += 7) {
            for (std::size_t b = 0; b < grid.size(); b += 5) {
                const bool ab = precedes_or_equal(grid[a], grid[b]), ba = precedes_or_equal(grid[b], grid[a]);
                if (ab && ba && !(grid[a] == grid[b])) ++violations;
                for (std::size_t c = 0; c < grid.size(); c += 37) {
                    if (ab && precedes_or_equal(grid[b], grid[c]) && !precedes_or_equal(grid[a], grid[c])) ++violations;
                }
            }
        }
    }
    v.require(violations == 0, std::to_string(violations) + " order violations on the grids");
    return v;
}

Verdict measure(const CheckReport& r) {
    Verdict v;
    pinned(v, r, "measure.def22_oracle", 1e-9);
    pinned(v, r, "measure.branch_totality", 1e-9);
    pinned(v, r, "measure.restriction", 1e-9);
    pinned(v, r, "measure.random_modes", 1e-9);
    pinned(v, r, "measure.scenario_axioms", 0);
    // Direct: every (A, B) on random spaces n <= 6 in all three modes.
    Rng rng(99);
    const std::array<MassMode, 3> modes{MassMode::One, MassMode::E, MassMode::EDagger};
    std::array<std::size_t, 4> branches{};
    double worst = 0;
    std::size_t bad_restrictions = 0;
    for (int k = 0; k < 90; ++k) {
        const std::size_t n = 1 + k % 6;
        const auto m = random_measure(rng, SampleSpace::indexed(n), modes[k % 3], 0.3);
        if (!validate_axioms(m).ok()) ++bad_restrictions;
        for (std::uint64_t b = 0; b < (1u << n); ++b) {
            const Event eb = Event::from_mask(b, n);
            ++branches[static_cast<int>(conditioning_branch(measure_of(m, eb)))];
            for (std::uint64_t a = 0; a < (1u << n); ++a) {
                worst = std::max(worst, hyper_gap(conditional_probability(m, Event::from_mask(a, n), eb),
                                                  oracle::conditional_probability(m, a, b)));
            }
            if (classify(measure_of(m, eb)) != NumberClass::Zero && !validate_axioms(restrict_to(m, eb).measure).ok()) {
                ++bad_restrictions;
            }
        }
    }
    v.require(worst < 1e-9, "library and oracle conditionals differ by " + std::to_string(worst));
    for (std::size_t i = 0; i < branches.size(); ++i) {
        v.require(branches[i] > 0, "conditioning branch " + std::string(to_string(ConditionalBranch(i))) + " never hit");
    }
    v.require(bad_restrictions == 0, std::to_string(bad_restrictions) + " measures failed re-validation");
    return v;
}

Verdict expectation_suite(const CheckReport& r) {
    Verdict v;
    for (const char* name :
         {"expectation.linearity", "expectation.addition", "expectation.affine", "expectation.product_independent",
          "expectation.variance_affine", "expectation.variance_additive", "expectation.cauchy_schwarz",
          "expectation.mean_deviation"}) {
        pinned(v, r, name, 1e-9, 200);
    }
    // Order verdicts are exact: no slack on the two inequality checks.
    for (const char* name : {"expectation.cauchy_schwarz", "expectation.mean_deviation"}) {
        const CheckResult* c = r.find(name);
        v.require(c != nullptr && c->threshold == 0, std::string(name) + " tolerates order violations");
    }
    return v;
}

Verdict mgf_suite(const CheckReport& r) {
    Verdict v;
    pinned(v, r, "mgf.at_zero", 0);
    pinned(v, r, "mgf.scaling", 1e-10);
    pinned(v, r, "mgf.derivatives", 1e-5);
    pinned(v, r, "mgf.independent_sum", 1e-9);
    return v;
}

Verdict distribution_suite(const CheckReport& r) {
    Verdict v;
    pinned(v, r, "distributions.bernoulli_moments", 1e-9);
    pinned(v, r, "distributions.poisson_additivity_closed", 1e-13);
    pinned(v, r, "distributions.binomial_poisson_limit", 0);
    // Direct: the thorn factors and the closed-form limit distances.
    double worst = 0;
    for (Thorn th : {Thorn::One, Thorn::E, Thorn::EDagger}) {
        const BernoulliSpec s{0.35, 0.8, th};
        const auto real = realize(s);
        for (unsigned k = 1; k <= 4; ++k) {
            worst = std::max(worst, hyper_gap(moment_about(real.variable, real.measure, kZero, k), bernoulli_moment(s, k)));
        }
    }
    v.require(worst < 1e-9, "Bernoulli moments off by " + std::to_string(worst));
    const double d10 = binomial_poisson_distance(10, 2, 2), d50 = binomial_poisson_distance(50, 2, 2),
                 d250 = binomial_poisson_distance(250, 2, 2);
    v.require(d10 > d50 && d50 > d250, "limit distance not strictly decreasing");
    v.require(d250 < 0.02, "limit distance at n = 250 is " + std::to_string(d250));
    char line[128];
    std::snprintf(line, sizeof line, "d(10)=%.4g d(50)=%.4g d(250)=%.4g", d10, d50, d250);
    v.why.emplace_back(line);
    return v;
}

Verdict conditional_suite(const CheckReport& r) {
    Verdict v;
    pinned(v, r, "conditional.thm82_matrix", 1e-9);
    pinned(v, r, "conditional.random_partitions", 1e-9, 500);
    pinned(v, r, "conditional.eqn3_scenario", 1e-9);
    pinned(v, r, "conditional.thm83_scenario", 1e-9);
    const auto matrix = note_counts(r, "conditional.thm82_matrix");
    for (const char* label : {"a.i", "a.ii", "a.iii", "b", "c.i", "c.ii", "c.iii", "d.i", "d.ii", "d.iii"}) {
        const auto it = matrix.find(label);
        v.require(it != matrix.end() && it->second > 0, std::string("branch matrix misses case ") + label);
    }
    // The all-zero-divisor-cell case of the generator identity and the
    // all-e case of the sub-partition identity.
    const auto random = note_counts(r, "conditional.random_partitions");
    v.require(random.count("c") != 0 && random.at("c") > 0, "no all-zero-divisor-cell partitions drawn");

    double worst = 0;
    std::size_t fixtures = 0;
    for (const auto& entry : std::filesystem::directory_iterator(HYPERPROB_SCENARIOS)) {
        if (entry.path().extension() != ".json") continue;
        const auto s = load_scenario(entry.path());
        if (s.space.size() > oracle::kMaxOutcomes) continue;
        ++fixtures;
        for (const auto& id : oracle::identities()) {
            const double lib = library_residual(s, id), orc = oracle::max_residual(s, id);
            worst = std::max(worst, std::fabs(lib - orc));
            v.require(lib < 1e-9 && orc < 1e-9, entry.path().filename().string() + " " + id + " residual too large");
        }
    }
    v.require(fixtures > 0, "no bundled fixtures found");
    v.require(worst < 1e-12, "library and oracle disagree on a fixture by " + std::to_string(worst));
    return v;
}

std::optional<std::string> run_cli(const std::string& args, int& status) {
    const std::string cmd = std::string("\"") + HYPERPROB_CLI + "\" " + args + " 2>&1";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (pipe == nullptr) return std::nullopt;
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
    status = ::pclose(pipe);
    return out;
}

Verdict cli_determinism() {
    Verdict v;
    const std::string file = std::string("\"") + HYPERPROB_SCENARIOS + "/coverage.json\"";
    int s1 = -1, s2 = -1, s3 = -1;
    const auto first = run_cli("check all " + file + " --seed 42", s1);
    const auto second = run_cli("check all " + file + " --seed 42", s2);
    const auto parallel = run_cli("check all " + file + " --seed 42 --parallel", s3);
    v.require(first && second && parallel, "could not launch the CLI");
    if (!v.ok) return v;
    v.require(s1 == 0 && s2 == 0 && s3 == 0, "CLI reported failing checks");
    v.require(!first->empty(), "empty report");
    v.require(*first == *second, "two consecutive runs differ");
    v.require(*first == *parallel, "--parallel changes the report");
    return v;
}

}  // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();
    int failures = 0;
    try {
        const auto s = load_scenario(std::string(HYPERPROB_SCENARIOS) + "/coverage.json");
        const auto r = run_suite(s, "all", RunOptions{42, false});
        failures += report(1, "algebra: ring, conjugation, norm and inverse laws below 1e-12", algebra(r));
        failures += report(2, "order: partial-order axioms and four quarters on 21x21 grids", order(r));
        failures += report(3, "measure: axioms, conditional branches and restriction against the oracle", measure(r));
        failures += report(4, "expectation: properties on >= 200 scenarios below 1e-9", expectation_suite(r));
        failures += report(5, "mgf: M(0) = p, scaling, derivatives, independent sums", mgf_suite(r));
        failures += report(6, "distributions: Bernoulli moments, Poisson additivity, Binomial limit", distribution_suite(r));
        failures += report(7, "conditional: branch matrix, random partitions, fixture oracle agreement", conditional_suite(r));
        failures += report(8, "cli: byte-identical reports across runs and --parallel", cli_determinism());
    } catch (const std::exception& e) {
        std::printf("acceptance aborted: %s\n", e.what());
        return 2;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%d of 8 criteria passed in %.2f s\n", 8 - failures, secs);
    return failures == 0 ? 0 : 1;
}
