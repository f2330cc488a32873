// hyperprob: scenario validation, evaluation and the check suites.
//
// Exit status: 0 success, 1 a check failed, 2 bad input.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperprob/checks.hpp"
#include "hyperprob/conditional.hpp"
#include "hyperprob/distributions.hpp"
#include "hyperprob/error.hpp"
#include "hyperprob/scenario.hpp"

using namespace hyperprob;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;

struct Common {
    std::optional<double> tol;
};

Scenario load(const std::string& path, const Common& c, bool check_axioms = true) {
    LoadOptions opts;
    opts.check_axioms = check_axioms;
    if (c.tol) opts.tolerance_override = Tolerance(*c.tol);
    return load_scenario(path, opts);
}

std::string show(const HyperNum& z) { return format_hyper(z) + "  " + format_idempotent(z); }

// Hyperbolic literal, or a bare "x1,x2" read as the idempotent pair.
HyperNum parse_point(const std::string& text) {
    if (text.find(',') != std::string::npos && text.find('[') == std::string::npos) return parse_hyper("[" + text + "]");
    return parse_hyper(text);
}

// "w0,w2" or "0,2"; labels take precedence over indices.
Event parse_event(const SampleSpace& space, const std::string& text) {
    std::vector<std::size_t> members;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string::npos) end = text.size();
        const std::string item = text.substr(start, end - start);
        start = end + 1;
        if (item.empty()) continue;
        try {
            members.push_back(space.index_of(item));
        } catch (const Error&) {
            std::size_t used = 0;
            unsigned long idx = 0;
            try {
                idx = std::stoul(item, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != item.size()) throw Error(ErrorCode::InvalidArgument, "unknown outcome \"" + item + "\"");
            members.push_back(idx);
        }
    }
    Event e(std::move(members));
    e.check_range(space.size());
    return e;
}

// -- validate -------------------------------------------------------------

int run_validate(const std::string& path, const Common& c) {
    const Scenario s = load(path, c, false);
    const auto report = validate_axioms(s.measure, s.tolerance);
    if (!report.ok()) {
        std::cerr << path << ": " << describe_violations(report) << "\n";
        return kInputError;
    }
    std::cout << path << ": ok\n"
              << "  outcomes    " << s.space.size() << "\n"
              << "  mass        " << to_string(s.measure.mass()) << "\n"
              << "  variables   " << s.variables.size() << "\n"
              << "  partitions  " << s.partitions.size() << "\n"
              << "  tolerance   " << format_real(s.tolerance.eps) << "\n"
              << "  additivity  " << report.additivity_pairs_checked << " disjoint pairs"
              << (report.exhaustive ? " (exhaustive)" : " (sampled)") << "\n";
    return kOk;
}

// -- eval -----------------------------------------------------------------

struct EvalArgs {
    std::string quantity;
    std::string path;
    std::string var = "X";
    std::string about;
    unsigned order = 1;
    bool central = false;
    std::string t = "0";
    std::string at = "0";
};

int run_eval(const EvalArgs& a, const Common& c) {
    const Scenario s = load(a.path, c);
    const DRandomVar& x = s.variable(a.var);
    const DMeasure& m = s.measure;
    if (a.quantity == "expect") {
        std::cout << "E(" << a.var << ") = " << show(expectation(x, m)) << "\n";
    } else if (a.quantity == "var") {
        std::cout << "var(" << a.var << ") = " << show(variance(x, m)) << "\n";
    } else if (a.quantity == "moment") {
        if (a.central) {
            std::cout << "mu_" << a.order << "(" << a.var << ") = " << show(central_moment(x, m, a.order)) << "\n";
        } else {
            const HyperNum about = a.about.empty() ? kZero : parse_point(a.about);
            std::cout << "E(" << a.var << " - " << format_hyper(about) << ")^" << a.order << " = "
                      << show(moment_about(x, m, about, a.order)) << "\n";
        }
    } else if (a.quantity == "mgf") {
        const HyperNum t = parse_point(a.t);
        std::cout << "M(" << format_hyper(t) << ") = " << show(mgf(x, m, t)) << "\n";
    } else if (a.quantity == "pmf") {
        for (const auto& [z, p] : pmf(x, m)) std::cout << format_hyper(z) << "\t" << show(p) << "\n";
    } else {
        const HyperNum z = parse_point(a.at);
        std::cout << "F(" << format_hyper(z) << ") = " << show(cdf(x, m, z, s.tolerance)) << "\n";
    }
    return kOk;
}

// -- dist -----------------------------------------------------------------

struct DistArgs {
    std::string what;
    std::string law = "bernoulli";
    double p1 = 0.5, p2 = 0.5;
    int n1 = 1, n2 = 1;
    double lambda1 = 1, lambda2 = 1;
    std::optional<int> truncation;
    std::string thorn = "one";
    std::string params;
    std::vector<std::string> at;
    std::vector<int> ns{10, 50, 250};
};

// --params '{"p1": 0.3, "n1": 4, ...}' overrides the individual flags.
DistArgs with_params(DistArgs a) {
    if (a.params.empty()) return a;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(a.params);
    } catch (const nlohmann::json::parse_error&) {
        throw Error(ErrorCode::ParseError, "--params is not valid JSON");
    }
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "--params must be a JSON object");
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "p1") a.p1 = value.get<double>();
            else if (key == "p2") a.p2 = value.get<double>();
            else if (key == "n1") a.n1 = value.get<int>();
            else if (key == "n2") a.n2 = value.get<int>();
            else if (key == "lambda1") a.lambda1 = value.get<double>();
            else if (key == "lambda2") a.lambda2 = value.get<double>();
            else if (key == "truncation") a.truncation = value.get<int>();
            else if (key == "thorn") a.thorn = value.get<std::string>();
            else throw Error(ErrorCode::ParseError, "--params: unknown field \"" + key + "\"");
        }
    } catch (const nlohmann::json::type_error&) {
        throw Error(ErrorCode::ParseError, "--params: field of the wrong type");
    }
    return a;
}

DistributionSpec make_spec(const DistArgs& a) {
    const Thorn th = parse_thorn(a.thorn);
    if (a.law == "bernoulli") return BernoulliSpec{a.p1, a.p2, th};
    if (a.law == "binomial") return BinomialSpec{a.n1, a.n2, a.p1, a.p2, th};
    PoissonSpec p = make_poisson(a.lambda1, a.lambda2, th);
    if (a.truncation) p.truncation = *a.truncation;
    return p;
}

int run_dist(const DistArgs& args) {
    const DistArgs a = with_params(args);
    if (a.what == "limit") {
        for (const int n : a.ns) {
            std::cout << "n=" << n << "\t" << format_real(binomial_poisson_distance(n, a.lambda1, a.lambda2)) << "\n";
        }
        return kOk;
    }
    const auto spec = make_spec(a);
    if (a.what == "pmf") {
        std::vector<std::string> points = a.at;
        if (points.empty()) points = {"0", "1"};
        for (const auto& p : points) std::cout << p << "\t" << show(distribution_pmf(spec, parse_point(p))) << "\n";
        return kOk;
    }
    const auto real = realize(spec);
    std::cout << "mean        " << show(distribution_mean(spec)) << "\n"
              << "variance    " << show(distribution_variance(spec)) << "\n"
              << "realized    " << real.space.size() << " outcomes\n"
              << "  mean      " << show(expectation(real.variable, real.measure)) << "\n"
              << "  variance  " << show(variance(real.variable, real.measure)) << "\n";
    return kOk;
}

// -- cond -----------------------------------------------------------------

struct CondArgs {
    std::string what;
    std::string path;
    std::string var = "X";
    std::string given;
    std::string partition = "P";
    std::string cells;
};

// "0,1|2|3,4,5"
Partition parse_cells(const SampleSpace& space, const std::string& text) {
    std::vector<Event> cells;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('|', start);
        if (end == std::string::npos) end = text.size();
        cells.push_back(parse_event(space, text.substr(start, end - start)));
        start = end + 1;
    }
    return Partition(space.size(), std::move(cells));
}

int run_cond(const CondArgs& a, const Common& c) {
    const Scenario s = load(a.path, c);
    const DRandomVar& x = s.variable(a.var);
    if (a.what == "expect") {
        const Event b = parse_event(s.space, a.given);
        const HyperNum pb = measure_of(s.measure, b);
        std::cout << "P(B) = " << show(pb) << "  (" << to_string(conditioning_branch(pb, s.tolerance)) << ")\n"
                  << "E_B(" << a.var << ") = " << show(conditional_expectation(x, s.measure, b, s.tolerance)) << "\n";
        return kOk;
    }
    const Partition p = a.cells.empty() ? s.partition(a.partition) : parse_cells(s.space, a.cells);
    const auto status = p.cell_status(s.measure, s.tolerance);
    const auto ep = partition_conditional(x, s.measure, p, s.tolerance);
    std::cout << "case " << integral_identity_case(s.measure, p, s.tolerance) << "\n";
    for (std::size_t i = 0; i < p.size(); ++i) {
        std::string labels;
        for (const auto w : p[i].members()) labels += (labels.empty() ? "" : ",") + s.space.label(w);
        std::cout << "{" << labels << "}\t" << to_string(status[i]) << "\t" << show(ep[p[i].members().front()])
                  << "\n";
    }
    return kOk;
}

// -- check ----------------------------------------------------------------

struct CheckArgs {
    std::string suite;
    std::string path;
    std::string scenario;
    std::uint64_t seed = 42;
    bool json = false;
    bool parallel = false;
};

int run_check(const CheckArgs& a, const Common& c) {
    if (a.path.empty() == a.scenario.empty()) {
        throw Error(ErrorCode::InvalidArgument, "give the scenario either as FILE or with --scenario");
    }
    const Scenario s = load(a.path.empty() ? a.scenario : a.path, c);
    const auto report = run_suite(s, a.suite, RunOptions{a.seed, a.parallel});
    std::cout << (a.json ? render_json(report) : render_text(report));
    return report.passed() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hyperbolic-valued discrete probability: scenarios, evaluation and checks"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--tol", common.tol, "Tolerance eps (overrides the file and HYPERPROB_TOL)")->check(CLI::NonNegativeNumber);

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "Parse a scenario and check the measure axioms");
    validate->add_option("file", validate_path)->required();

    EvalArgs eval;
    auto* ev = app.add_subcommand("eval", "Evaluate a quantity of a scenario variable");
    ev->add_option("quantity", eval.quantity)->required()->check(CLI::IsMember({"expect", "var", "moment", "mgf", "pmf", "cdf"}));
    ev->add_option("file", eval.path)->required();
    ev->add_option("--var", eval.var, "Variable name")->capture_default_str();
    ev->add_option("--about", eval.about, "Moment origin a (hyperbolic literal)");
    ev->add_option("--order", eval.order, "Moment order r")->capture_default_str();
    ev->add_flag("--central", eval.central, "Moment about the mean");
    ev->add_option("--t", eval.t, "MGF argument")->capture_default_str();
    ev->add_option("--at", eval.at, "CDF argument")->capture_default_str();

    DistArgs dist;
    auto* di = app.add_subcommand("dist", "Bernoulli, Binomial and Poisson laws");
    di->add_option("what", dist.what)->required()->check(CLI::IsMember({"pmf", "moments", "limit"}));
    di->add_option("--law,--kind", dist.law)->check(CLI::IsMember({"bernoulli", "binomial", "poisson"}))->capture_default_str();
    di->add_option("--p1", dist.p1)->capture_default_str();
    di->add_option("--p2", dist.p2)->capture_default_str();
    di->add_option("--n1", dist.n1)->capture_default_str();
    di->add_option("--n2", dist.n2)->capture_default_str();
    di->add_option("--lambda1", dist.lambda1)->capture_default_str();
    di->add_option("--lambda2", dist.lambda2)->capture_default_str();
    di->add_option("--truncation", dist.truncation, "Poisson support bound K");
    di->add_option("--thorn", dist.thorn, "one, e or edagger")->capture_default_str();
    di->add_option("--params", dist.params, "JSON object with any of the parameter fields");
    di->add_option("--at", dist.at, "Points for pmf (literal or x1,x2)");
    di->add_option("--n", dist.ns, "Scales for limit")->delimiter(',')->capture_default_str();

    CondArgs cond;
    auto* co = app.add_subcommand("cond", "Conditional expectation given an event or a partition");
    co->add_option("what", cond.what)->required()->check(CLI::IsMember({"expect", "partition"}));
    co->add_option("file", cond.path)->required();
    co->add_option("--var", cond.var)->capture_default_str();
    co->add_option("--given,--event", cond.given, "Event as outcome labels or indices, comma separated");
    co->add_option("--partition", cond.partition, "Named partition of the scenario")->capture_default_str();
    co->add_option("--cells", cond.cells, "Ad hoc partition, e.g. \"0,1|2|3,4,5\"");

    CheckArgs check;
    auto* ch = app.add_subcommand("check", "Run a check suite against a scenario");
    ch->add_option("suite", check.suite)->required()->check(CLI::IsMember(suite_names()));
    ch->add_option("file", check.path);
    ch->add_option("--scenario", check.scenario, "Scenario file (alternative to FILE)");
    ch->add_option("--seed", check.seed)->capture_default_str();
    ch->add_flag("--json", check.json, "Machine-readable report");
    ch->add_flag("--parallel", check.parallel, "Evaluate checks concurrently");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (*validate) return run_validate(validate_path, common);
        if (*ev) return run_eval(eval, common);
        if (*di) return run_dist(dist);
        if (*co) return run_cond(cond, common);
        return run_check(check, common);
    } catch (const std::exception& e) {
        std::cerr << "hyperprob: " << e.what() << "\n";
        return kInputError;
    }
}
