#include "hyperprob/checks.hpp"

#include <cstdio>
#include <future>
#include <map>

#include <json.hpp>

#include "check_registry.hpp"
#include "hyperprob/conditional.hpp"
#include "hyperprob/error.hpp"
#include "hyperprob/generators.hpp"
#include "hyperprob/oracle.hpp"

namespace hyperprob {

namespace detail {

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

}  // namespace detail

using detail::size_of;

std::size_t CoverageFamily::count(std::string_view label) const {
    for (const auto& [l, c] : hits) {
        if (l == label) return c;
    }
    return 0;
}

bool CheckReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* CheckReport::find(std::string_view name) const {
    for (const auto& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

const CoverageFamily* CheckReport::family(std::string_view name) const {
    for (const auto& f : coverage) {
        if (f.name == name) return &f;
    }
    return nullptr;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"algebra", "measure", "expectation", "mgf",   "distributions",
                                                "conditional", "all",  "def22",       "def81", "thm82",
                                                "eqn3",        "thm83", "cauchy_schwarz"};
    return names;
}

// -- library side of the enumerated identities -------------------------------

namespace {

std::vector<Event> all_events(std::size_t n) {
    std::vector<Event> out;
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t m = 0; m <= full; ++m) out.push_back(Event::from_mask(m, n));
    return out;
}

void require_at_most(const Scenario& s, std::size_t limit) {
    if (s.space.size() > limit) {
        throw Error(ErrorCode::SpaceTooLarge, "enumeration supports at most " + std::to_string(limit) +
                                                  " outcomes, got " + std::to_string(s.space.size()));
    }
}

double lib_def22(const Scenario& s) {
    require_at_most(s, oracle::kMaxOutcomes);
    const auto& m = s.measure;
    const auto events = all_events(m.size());
    const std::uint64_t full = events.size() - 1;
    double worst = 0;
    for (const auto& b : events) {
        const HyperNum pb = measure_of(m, b);
        for (const auto& a : events) {
            const HyperNum lhs = conditional_probability(m, a, b, s.tolerance) * pb;
            worst = std::max(worst, size_of(lhs - measure_of(m, a.intersect(b))));
        }
        if (classify(pb, s.tolerance) == NumberClass::Zero) continue;
        for (std::uint64_t a = 0; a <= full; ++a) {
            const std::uint64_t rest = full & ~a;
            for (std::uint64_t c = rest;; c = (c - 1) & rest) {
                const HyperNum d = conditional_probability(m, events[a].unite(events[c]), b, s.tolerance) -
                                   conditional_probability(m, events[a], b, s.tolerance) -
                                   conditional_probability(m, events[c], b, s.tolerance);
                worst = std::max(worst, size_of(d));
                if (c == 0) break;
            }
        }
    }
    return worst;
}

double lib_def81(const Scenario& s) {
    require_at_most(s, 16);
    const auto& m = s.measure;
    double worst = 0;
    const auto events = all_events(m.size());
    for (const auto& x : oracle::identity_variables(s)) {
        for (const auto& b : events) {
            const HyperNum lhs = conditional_expectation(x, m, b, s.tolerance) * measure_of(m, b);
            worst = std::max(worst, size_of(lhs - integral(x, m, b)));
        }
    }
    return worst;
}

double lib_thm82(const Scenario& s) {
    require_at_most(s, 10);
    const auto& m = s.measure;
    const auto events = all_events(m.size());
    const std::uint64_t full = events.size() - 1;
    double worst = 0;
    for (const auto& x : oracle::identity_variables(s)) {
        for (std::uint64_t a = 0; a <= full; ++a) {
            const std::uint64_t rest = full & ~a;
            for (std::uint64_t b = rest;; b = (b - 1) & rest) {
                worst = std::max(worst, size_of(exclusive_union_residual(x, m, events[a], events[b], s.tolerance)));
                if (b == 0) break;
            }
        }
    }
    return worst;
}

template <class F>
double lib_over_cells(const Scenario& s, bool include_empty, F&& f) {
    double worst = 0;
    for (const auto& p : oracle::identity_partitions(s)) {
        if (p.size() > 16) {
            throw Error(ErrorCode::SpaceTooLarge, "cell-union enumeration supports at most 16 cells");
        }
        const std::uint64_t subsets = std::uint64_t{1} << p.size();
        for (const auto& x : oracle::identity_variables(s)) {
            for (std::uint64_t j = include_empty ? 0 : 1; j < subsets; ++j) {
                std::vector<std::size_t> chosen;
                for (std::size_t k = 0; k < p.size(); ++k) {
                    if (j >> k & 1u) chosen.push_back(k);
                }
                worst = std::max(worst, f(x, p, chosen));
            }
        }
    }
    return worst;
}

double lib_eqn3(const Scenario& s) {
    return lib_over_cells(s, true, [&](const DRandomVar& x, const Partition& p, const std::vector<std::size_t>& j) {
        return size_of(integral_identity_residual(x, s.measure, p, j, s.tolerance));
    });
}

double lib_thm83(const Scenario& s) {
    return lib_over_cells(s, false, [&](const DRandomVar& x, const Partition& p, const std::vector<std::size_t>& j) {
        const auto [r1, r2] = subpartition_identity_residuals(x, s.measure, p, j, s.tolerance);
        return std::max(size_of(r1), size_of(r2));
    });
}

double lib_cauchy_schwarz(const Scenario& s) {
    const auto vars = oracle::identity_variables(s);
    double worst = 0;
    for (const auto& x : vars) {
        for (const auto& y : vars) {
            const HyperNum exy = expectation(pointwise_mul(x, y), s.measure);
            const HyperNum gap =
                exy * exy - expectation(pointwise_mul(x, x), s.measure) * expectation(pointwise_mul(y, y), s.measure);
            worst = std::max({worst, gap.u(), gap.v()});
        }
    }
    return worst;
}

}  // namespace

double library_residual(const Scenario& s, std::string_view identity) {
    if (identity == "def22") return lib_def22(s);
    if (identity == "def81") return lib_def81(s);
    if (identity == "thm82") return lib_thm82(s);
    if (identity == "eqn3") return lib_eqn3(s);
    if (identity == "thm83") return lib_thm83(s);
    if (identity == "cauchy_schwarz") return lib_cauchy_schwarz(s);
    throw Error(ErrorCode::InvalidArgument, "unknown identity \"" + std::string(identity) + "\"");
}

namespace detail {

std::vector<CheckDef> identity_checks(const std::string& identity) {
    std::vector<CheckDef> out;
    out.push_back({identity + ".library", [identity](const Scenario& s, Rng) {
                       // Inequality residuals are compared against the
                       // shared tolerance; equalities against 1e-9.
                       Tracker t(identity + ".library", identity == "cauchy_schwarz" ? s.tolerance.eps : 1e-9);
                       try {
                           t.residual(library_residual(s, identity));
                       } catch (const Error& e) {
                           if (e.code() != ErrorCode::SpaceTooLarge) throw;
                           t.note(std::string("skipped: ") + e.what());
                       }
                       return t.finish();
                   }});
    out.push_back({identity + ".oracle_agreement", [identity](const Scenario& s, Rng) {
                       Tracker t(identity + ".oracle_agreement", 1e-12);
                       if (s.space.size() > oracle::kMaxOutcomes) {
                           t.note("skipped: oracle enumerates at most 6 outcomes");
                           return t.finish();
                       }
                       const double lib = library_residual(s, identity);
                       const double ora = oracle::max_residual(s, identity);
                       t.residual(std::fabs(lib - ora));
                       t.note("library " + sci(lib) + ", oracle " + sci(ora));
                       return t.finish();
                   }});
    return out;
}

}  // namespace detail

// -- coverage ----------------------------------------------------------------

std::vector<CoverageFamily> scenario_coverage(const Scenario& s, std::uint64_t seed) {
    const auto& m = s.measure;
    const std::size_t n = m.size();
    const auto tol = s.tolerance;

    std::map<std::string, std::size_t> branch_hits;
    std::map<std::string, std::size_t> union_hits;
    for (const auto b : {ConditionalBranch::Invertible, ConditionalBranch::Null, ConditionalBranch::ZeroDivisorE,
                         ConditionalBranch::ZeroDivisorEDagger}) {
        branch_hits[std::string(to_string(b))] = 0;
    }
    for (const auto& l : exclusive_union_case_labels()) union_hits[l] = 0;

    Rng rng(seed);
    if (n <= 12) {
        const std::uint64_t full = (std::uint64_t{1} << n) - 1;
        for (std::uint64_t b = 0; b <= full; ++b) {
            ++branch_hits[std::string(to_string(conditioning_branch(measure_of(m, Event::from_mask(b, n)), tol)))];
        }
    } else {
        for (int k = 0; k < 4096; ++k) {
            ++branch_hits[std::string(to_string(conditioning_branch(measure_of(m, random_event(rng, n)), tol)))];
        }
    }
    if (n <= 10) {
        const std::uint64_t full = (std::uint64_t{1} << n) - 1;
        for (std::uint64_t a = 0; a <= full; ++a) {
            const std::uint64_t rest = full & ~a;
            for (std::uint64_t b = rest;; b = (b - 1) & rest) {
                ++union_hits[exclusive_union_case(m, Event::from_mask(a, n), Event::from_mask(b, n), tol)];
                if (b == 0) break;
            }
        }
    } else {
        for (int k = 0; k < 4096; ++k) {
            std::vector<std::size_t> in_a, in_b;
            for (std::size_t i = 0; i < n; ++i) {
                const auto r = rng.below(3);
                if (r == 0) in_a.push_back(i);
                if (r == 1) in_b.push_back(i);
            }
            ++union_hits[exclusive_union_case(m, Event(std::move(in_a)), Event(std::move(in_b)), tol)];
        }
    }

    const auto family = [](std::string name, const std::vector<std::string>& order,
                           const std::map<std::string, std::size_t>& hits) {
        CoverageFamily f{std::move(name), {}};
        for (const auto& l : order) f.hits.emplace_back(l, hits.at(l));
        return f;
    };
    const std::vector<std::string> branches{"invertible", "null", "zero_divisor_e", "zero_divisor_edagger"};
    return {family("def22", branches, branch_hits), family("def81", branches, branch_hits),
            family("thm82", exclusive_union_case_labels(), union_hits)};
}

// -- running -----------------------------------------------------------------

namespace {

std::uint64_t name_hash(std::string_view name) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : name) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::vector<detail::CheckDef> checks_for(std::string_view suite) {
    using namespace detail;
    if (suite == "algebra") return algebra_checks();
    if (suite == "measure") return measure_checks();
    if (suite == "expectation") return expectation_checks();
    if (suite == "mgf") return mgf_checks();
    if (suite == "distributions") return distribution_checks();
    if (suite == "conditional") return conditional_checks();
    if (suite == "all") {
        std::vector<CheckDef> out;
        for (auto part : {algebra_checks(), measure_checks(), expectation_checks(), mgf_checks(),
                          distribution_checks(), conditional_checks()}) {
            for (auto& c : part) out.push_back(std::move(c));
        }
        return out;
    }
    for (const auto& id : oracle::identities()) {
        if (suite == id) return identity_checks(id);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown suite \"" + std::string(suite) + "\"");
}

CheckResult run_one(const detail::CheckDef& def, const Scenario& s, std::uint64_t seed) {
    const Rng rng = Rng(seed).fork(name_hash(def.name));
    try {
        return def.run(s, rng);
    } catch (const std::exception& e) {
        CheckResult r;
        r.name = def.name;
        r.passed = false;
        r.note = std::string("exception: ") + e.what();
        return r;
    }
}

}  // namespace

CheckReport run_suite(const Scenario& s, std::string_view suite, RunOptions opts) {
    const auto defs = checks_for(suite);
    CheckReport report;
    report.suite = std::string(suite);
    report.seed = opts.seed;
    report.scenario = s.source;

    if (opts.parallel) {
        std::vector<std::future<CheckResult>> futures;
        futures.reserve(defs.size());
        for (const auto& d : defs) {
            futures.push_back(std::async(std::launch::async, [&d, &s, &opts] { return run_one(d, s, opts.seed); }));
        }
        for (auto& f : futures) report.checks.push_back(f.get());
    } else {
        for (const auto& d : defs) report.checks.push_back(run_one(d, s, opts.seed));
    }

    report.coverage = scenario_coverage(s, opts.seed);
    for (const auto& fam : report.coverage) {
        for (const auto& [label, count] : fam.hits) {
            if (count == 0) {
                report.warnings.push_back("coverage: " + fam.name + " case " + label +
                                          " is not exercised by the scenario");
            }
        }
    }
    return report;
}

// -- rendering ---------------------------------------------------------------

std::string render_text(const CheckReport& r) {
    std::string out = "suite " + r.suite + "  seed " + std::to_string(r.seed) + "  scenario " + r.scenario + "\n";
    std::size_t width = 0;
    for (const auto& c : r.checks) width = std::max(width, c.name.size());
    std::size_t failed = 0;
    for (const auto& c : r.checks) {
        failed += c.passed ? 0 : 1;
        out += c.passed ? "  PASS  " : "  FAIL  ";
        out += c.name + std::string(width - c.name.size() + 2, ' ');
        out += "residual " + detail::sci(c.max_residual) + " / " + detail::sci(c.threshold);
        out += "  n=" + std::to_string(c.instances);
        if (!c.note.empty()) out += "  (" + c.note + ")";
        out += "\n";
    }
    out += "coverage\n";
    for (const auto& f : r.coverage) {
        out += "  " + f.name + ":";
        for (const auto& [label, count] : f.hits) out += " " + label + "=" + std::to_string(count);
        out += "\n";
    }
    for (const auto& w : r.warnings) out += "warning: " + w + "\n";
    out += std::to_string(r.checks.size() - failed) + " passed, " + std::to_string(failed) + " failed\n";
    return out;
}

std::string render_json(const CheckReport& r) {
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    j["seed"] = r.seed;
    j["scenario"] = r.scenario;
    j["passed"] = r.passed();
    auto& checks = j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) {
        checks.push_back({{"name", c.name},
                          {"passed", c.passed},
                          {"max_residual", c.max_residual},
                          {"threshold", c.threshold},
                          {"instances", c.instances},
                          {"note", c.note}});
    }
    auto& cov = j["coverage"] = nlohmann::ordered_json::object();
    for (const auto& f : r.coverage) {
        auto& fam = cov[f.name] = nlohmann::ordered_json::object();
        for (const auto& [label, count] : f.hits) fam[label] = count;
    }
    j["warnings"] = r.warnings;
    return j.dump(2) + "\n";
}

}  // namespace hyperprob
