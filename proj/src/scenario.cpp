#include "hyperprob/scenario.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hyperprob/error.hpp"

namespace hyperprob {

using nlohmann::json;

namespace {

[[noreturn]] void field_error(const std::string& source, const std::string& path, const std::string& why) {
    throw Error(ErrorCode::ParseError, source + ": field " + path + ": " + why);
}

const json& require(const json& obj, const char* key, const std::string& path, const std::string& source) {
    const auto it = obj.find(key);
    if (it == obj.end()) field_error(source, path, std::string("missing \"") + key + "\"");
    return *it;
}

double weight_at(const json& j, const std::string& path, const std::string& source) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        try {
            return parse_real(j.get<std::string>());
        } catch (const Error& e) {
            field_error(source, path, e.what());
        }
    }
    field_error(source, path, "expected a number or a \"p/q\" string");
}

std::vector<double> weight_list(const json& j, const std::string& path, const std::string& source) {
    if (!j.is_array()) field_error(source, path, "expected an array");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(weight_at(j[i], path + "[" + std::to_string(i) + "]", source));
    }
    return out;
}

HyperNum literal_at(const json& j, const std::string& path, const std::string& source) {
    if (j.is_number()) return HyperNum::real(j.get<double>());
    if (j.is_string()) {
        try {
            return parse_hyper(j.get<std::string>());
        } catch (const Error& e) {
            field_error(source, path, e.what());
        }
    }
    field_error(source, path, "expected a hyperbolic literal string or a number");
}

std::size_t outcome_at(const json& j, const SampleSpace& space, const std::string& path,
                       const std::string& source) {
    if (j.is_number_unsigned()) {
        const auto i = j.get<std::size_t>();
        if (i >= space.size()) field_error(source, path, "outcome index " + std::to_string(i) + " out of range");
        return i;
    }
    if (j.is_string()) {
        try {
            return space.index_of(j.get<std::string>());
        } catch (const Error& e) {
            field_error(source, path, e.what());
        }
    }
    field_error(source, path, "expected an outcome index or label");
}

Partition partition_at(const json& j, const SampleSpace& space, const std::string& path,
                       const std::string& source) {
    if (!j.is_array()) field_error(source, path, "expected an array of cells");
    std::vector<Event> cells;
    for (std::size_t c = 0; c < j.size(); ++c) {
        const std::string cpath = path + "[" + std::to_string(c) + "]";
        if (!j[c].is_array()) field_error(source, cpath, "expected an array of outcomes");
        std::vector<std::size_t> members;
        for (std::size_t k = 0; k < j[c].size(); ++k) {
            members.push_back(outcome_at(j[c][k], space, cpath + "[" + std::to_string(k) + "]", source));
        }
        cells.emplace_back(std::move(members));
    }
    try {
        return Partition(space.size(), std::move(cells));
    } catch (const Error& e) {
        field_error(source, path, e.what());
    }
}

std::string line_col(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

const DRandomVar& Scenario::variable(const std::string& name) const {
    const auto it = variables.find(name);
    if (it == variables.end()) throw Error(ErrorCode::InvalidArgument, "no variable named \"" + name + "\"");
    return it->second;
}

const Partition& Scenario::partition(const std::string& name) const {
    const auto it = partitions.find(name);
    if (it == partitions.end()) throw Error(ErrorCode::InvalidArgument, "no partition named \"" + name + "\"");
    return it->second;
}

Tolerance tolerance_from_env() {
    const char* raw = std::getenv("HYPERPROB_TOL");
    if (raw == nullptr || *raw == '\0') return {};
    double eps = 0;
    try {
        eps = parse_real(raw);
    } catch (const Error&) {
        throw Error(ErrorCode::InvalidArgument, std::string("HYPERPROB_TOL is not a number: ") + raw);
    }
    return Tolerance(eps);
}

std::string describe_violations(const ValidationReport& r) {
    std::string out;
    for (const auto& v : r.violations) {
        if (!out.empty()) out += "; ";
        out += "axiom (" + std::string(v.axiom == 1 ? "i" : v.axiom == 2 ? "ii" : "iii") + "): " + v.detail;
    }
    return out;
}

Scenario parse_scenario(std::string_view text, std::string_view source_name, LoadOptions opts) {
    const std::string source(source_name);
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, source + ": " + line_col(text, e.byte) + ": malformed JSON");
    }
    if (!doc.is_object()) field_error(source, "<root>", "expected an object");

    const json& jspace = require(doc, "space", "space", source);
    const json& outcomes = require(jspace, "outcomes", "space.outcomes", source);
    if (!outcomes.is_array() || outcomes.empty()) field_error(source, "space.outcomes", "expected a nonempty array");
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        if (!outcomes[i].is_string()) {
            field_error(source, "space.outcomes[" + std::to_string(i) + "]", "expected a string label");
        }
        labels.push_back(outcomes[i].get<std::string>());
    }
    std::optional<SampleSpace> space;
    try {
        space.emplace(std::move(labels));
    } catch (const Error& e) {
        field_error(source, "space.outcomes", e.what());
    }

    const json& jm = require(doc, "measure", "measure", source);
    MassMode mass = MassMode::One;
    if (const auto it = jm.find("mass"); it != jm.end()) {
        if (!it->is_string()) field_error(source, "measure.mass", "expected \"one\", \"e\" or \"edagger\"");
        try {
            mass = parse_mass_mode(it->get<std::string>());
        } catch (const Error& e) {
            field_error(source, "measure.mass", e.what());
        }
    }
    auto w1 = weight_list(require(jm, "w1", "measure.w1", source), "measure.w1", source);
    auto w2 = weight_list(require(jm, "w2", "measure.w2", source), "measure.w2", source);
    std::optional<DMeasure> measure;
    try {
        measure.emplace(*space, std::move(w1), std::move(w2), mass);
    } catch (const Error& e) {
        field_error(source, "measure", e.what());
    }

    Tolerance tol = tolerance_from_env();
    if (const auto it = doc.find("tolerance"); it != doc.end()) {
        if (!it->is_number()) field_error(source, "tolerance", "expected a number");
        try {
            tol = Tolerance(it->get<double>());
        } catch (const Error& e) {
            field_error(source, "tolerance", e.what());
        }
    }
    if (opts.tolerance_override) tol = *opts.tolerance_override;

    std::map<std::string, DRandomVar> variables;
    if (const auto it = doc.find("variables"); it != doc.end()) {
        if (!it->is_object()) field_error(source, "variables", "expected an object");
        for (const auto& [name, jv] : it->items()) {
            const std::string path = "variables." + name;
            const json& vals = require(jv, "values", path + ".values", source);
            if (!vals.is_array()) field_error(source, path + ".values", "expected an array");
            std::vector<HyperNum> values;
            for (std::size_t i = 0; i < vals.size(); ++i) {
                values.push_back(literal_at(vals[i], path + ".values[" + std::to_string(i) + "]", source));
            }
            try {
                variables.emplace(name, DRandomVar(*space, std::move(values)));
            } catch (const Error& e) {
                field_error(source, path, e.what());
            }
        }
    }

    std::map<std::string, Partition> partitions;
    if (const auto it = doc.find("partition"); it != doc.end()) {
        partitions.emplace("P", partition_at(*it, *space, "partition", source));
    }
    if (const auto it = doc.find("partitions"); it != doc.end()) {
        if (!it->is_object()) field_error(source, "partitions", "expected an object");
        for (const auto& [name, jp] : it->items()) {
            if (partitions.count(name) != 0) field_error(source, "partitions." + name, "duplicate partition name");
            partitions.emplace(name, partition_at(jp, *space, "partitions." + name, source));
        }
    }

    if (opts.check_axioms) {
        const auto report = validate_axioms(*measure, tol);
        if (!report.ok()) throw Error(ErrorCode::AxiomViolation, source + ": " + describe_violations(report));
    }

    return Scenario{*space, std::move(*measure), std::move(variables), std::move(partitions), tol, source};
}

Scenario load_scenario(const std::filesystem::path& path, LoadOptions opts) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, path.string() + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path.string(), opts);
}

}  // namespace hyperprob
