#include <cstdlib>
#include <string>

#include <json.hpp>

#include "hyperprob/checks.hpp"
#include "hyperprob/error.hpp"
#include "hyperprob/oracle.hpp"
#include "hyperprob/scenario.hpp"
#include "support.hpp"

using namespace hyperprob;

namespace {

const char* kMinimal = R"({
  "space": {"outcomes": ["a", "b", "c"]},
  "measure": {"mass": "one", "w1": ["1/2", "1/4", "1/4"], "w2": ["1/4", "1/4", "1/2"]},
  "variables": {"X": {"values": ["2+1k", "0", "1-1k"]}}
})";

std::string error_of(std::string_view text, LoadOptions opts = {}) {
    try {
        (void)parse_scenario(text, "test.json", opts);
    } catch (const Error& e) {
        return std::string(to_string(e.code())) + "|" + e.what();
    }
    return "no error";
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

struct EnvTol {
    explicit EnvTol(const char* v) { ::setenv("HYPERPROB_TOL", v, 1); }
    ~EnvTol() { ::unsetenv("HYPERPROB_TOL"); }
};

}  // namespace

TEST_CASE("minimal scenario") {
    const auto s = parse_scenario(kMinimal);
    CHECK(s.space.size() == 3);
    CHECK(s.variables.size() == 1);
    CHECK(s.variable("X")[0] == testing::cart(2, 1));
    CHECK(s.measure.w1()[1] == 0.25);
    CHECK(s.tolerance.eps == 1e-9);
    CHECK(s.partitions.empty());
    CHECK_THROWS_AS(s.variable("Y"), Error);
}

TEST_CASE("scenario errors carry a location") {
    const std::string short_mass = error_of(R"({"space": {"outcomes": ["a", "b"]},
        "measure": {"mass": "one", "w1": [0.5, 0.4], "w2": [0.5, 0.5]}})");
    CHECK(contains(short_mass, "AxiomViolation"));
    CHECK(contains(short_mass, "(ii)"));

    const std::string literal = error_of(R"({"space": {"outcomes": ["a"]},
        "measure": {"mass": "one", "w1": [1], "w2": [1]},
        "variables": {"X": {"values": ["2+k+"]}}})");
    CHECK(contains(literal, "ParseError"));
    CHECK(contains(literal, "variables.X"));

    const std::string broken = error_of("{\n  \"space\": {\n  \"outcomes\": [\"a\",]\n}");
    CHECK(contains(broken, "ParseError"));
    CHECK(contains(broken, "line 3"));

    CHECK(contains(error_of(R"({"space": {"outcomes": ["a"]}})"), "missing \"measure\""));
    CHECK(contains(error_of(R"({"space": {"outcomes": ["a", "b"]},
        "measure": {"mass": "one", "w1": [0.5, 0.5], "w2": [0.5, 0.5]},
        "partition": [[0], [3]]})"), "out of range"));

    LoadOptions lax;
    lax.check_axioms = false;
    CHECK(error_of(R"({"space": {"outcomes": ["a", "b"]},
        "measure": {"mass": "one", "w1": [0.5, 0.4], "w2": [0.5, 0.5]}})", lax) == "no error");
}

TEST_CASE("tolerance precedence") {
    const std::string with_file = R"({"space": {"outcomes": ["a"]},
        "measure": {"mass": "one", "w1": [1], "w2": [1]}, "tolerance": 1e-6})";
    CHECK(parse_scenario(kMinimal).tolerance.eps == 1e-9);
    CHECK(parse_scenario(with_file).tolerance.eps == 1e-6);
    {
        EnvTol env("1e-4");
        CHECK(tolerance_from_env().eps == 1e-4);
        CHECK(parse_scenario(kMinimal).tolerance.eps == 1e-4);
        CHECK(parse_scenario(with_file).tolerance.eps == 1e-6);
        LoadOptions o;
        o.tolerance_override = Tolerance(1e-3);
        CHECK(parse_scenario(with_file, "f", o).tolerance.eps == 1e-3);
    }
    {
        EnvTol env("abc");
        CHECK_THROWS_AS(tolerance_from_env(), Error);
    }
}

TEST_CASE("suite reports are deterministic") {
    const auto s = parse_scenario(kMinimal);
    RunOptions serial{7, false}, parallel{7, true};
    const auto a = render_text(run_suite(s, "measure", serial));
    const auto b = render_text(run_suite(s, "measure", serial));
    const auto c = render_text(run_suite(s, "measure", parallel));
    CHECK(a == b);
    CHECK(a == c);
    CHECK(render_text(run_suite(s, "measure", RunOptions{8, false})) != a);

    const auto report = run_suite(s, "def22");
    CHECK(report.passed());
    CHECK(report.find("def22.oracle_agreement") != nullptr);
    const auto j = nlohmann::json::parse(render_json(report));
    CHECK(j["suite"] == "def22");
    CHECK(j["checks"].size() == report.checks.size());
    CHECK_THROWS_AS(run_suite(s, "nonsense"), Error);
}

TEST_CASE("coverage reports unhit branches") {
    // Mass one with every outcome weighted in both components: no event has
    // a zero-divisor probability.
    const auto s = parse_scenario(kMinimal);
    const auto report = run_suite(s, "def81");
    CHECK(report.passed());
    const auto* fam = report.family("def81");
    REQUIRE(fam != nullptr);
    CHECK(fam->count("zero_divisor_e") == 0);
    CHECK(fam->count("invertible") > 0);
    CHECK_FALSE(report.warnings.empty());
}

TEST_CASE("oracle limits") {
    const auto s = parse_scenario(kMinimal);
    for (const auto& id : oracle::identities()) CHECK(oracle::max_residual(s, id) < 1e-9);
    CHECK_THROWS_AS(oracle::max_residual(s, "nonsense"), Error);
    std::string big = R"({"space": {"outcomes": ["a","b","c","d","e","f","g"]},
        "measure": {"mass": "one", "w1": ["1/7","1/7","1/7","1/7","1/7","1/7","1/7"],
                                   "w2": ["1/7","1/7","1/7","1/7","1/7","1/7","1/7"]}})";
    try {
        (void)oracle::max_residual(parse_scenario(big), "def22");
        FAIL("seven outcomes accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SpaceTooLarge);
    }
}
