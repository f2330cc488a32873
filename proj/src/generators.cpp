#include "hyperprob/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hyperprob/error.hpp"

namespace hyperprob {

namespace {

bool first_live(MassMode m) { return m != MassMode::EDagger; }
bool second_live(MassMode m) { return m != MassMode::E; }

// Positive weights over the outcomes allowed by mask, normalized to 1.
std::vector<double> normalized_weights(Rng& rng, const std::vector<bool>& allowed) {
    std::vector<double> w(allowed.size(), 0.0);
    double total = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!allowed[i]) continue;
        w[i] = 0.05 + rng.uniform();
        total += w[i];
    }
    if (total == 0) throw Error(ErrorCode::InvalidArgument, "no outcome can carry weight");
    for (auto& x : w) x /= total;
    return w;
}

std::vector<bool> random_support(Rng& rng, std::size_t n, double zero_fraction) {
    std::vector<bool> allowed(n);
    for (std::size_t i = 0; i < n; ++i) allowed[i] = !rng.chance(zero_fraction);
    if (std::none_of(allowed.begin(), allowed.end(), [](bool b) { return b; })) allowed[rng.below(n)] = true;
    return allowed;
}

std::vector<double> dyadic_weights(Rng& rng, std::size_t n, unsigned log2_denominator) {
    const std::uint64_t total = std::uint64_t{1} << log2_denominator;
    std::vector<std::uint64_t> cuts(n - 1);
    for (auto& c : cuts) c = rng.below(total + 1);
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> w(n);
    std::uint64_t prev = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        w[i] = std::ldexp(static_cast<double>(cuts[i] - prev), -static_cast<int>(log2_denominator));
        prev = cuts[i];
    }
    w[n - 1] = std::ldexp(static_cast<double>(total - prev), -static_cast<int>(log2_denominator));
    return w;
}

double dyadic(Rng& rng, unsigned bits, double range) {
    const double scale = std::ldexp(1.0, static_cast<int>(bits));
    const auto span = static_cast<std::uint64_t>(2 * range * scale) + 1;
    return (static_cast<double>(rng.below(span)) - range * scale) / scale;
}

}  // namespace

HyperNum random_hypernum(Rng& rng, double lo, double hi) {
    const double u = rng.uniform(lo, hi);
    return {u, rng.uniform(lo, hi)};
}

HyperNum random_dyadic_hypernum(Rng& rng, unsigned bits, double range) {
    const double u = dyadic(rng, bits, range);
    return {u, dyadic(rng, bits, range)};
}

DMeasure random_measure(Rng& rng, const SampleSpace& space, MassMode mass, double zero_fraction) {
    const std::size_t n = space.size();
    std::vector<double> w1(n, 0.0), w2(n, 0.0);
    if (first_live(mass)) w1 = normalized_weights(rng, random_support(rng, n, zero_fraction));
    if (second_live(mass)) w2 = normalized_weights(rng, random_support(rng, n, zero_fraction));
    return DMeasure(space, std::move(w1), std::move(w2), mass);
}

DMeasure random_dyadic_measure(Rng& rng, const SampleSpace& space, MassMode mass, unsigned log2_denominator) {
    const std::size_t n = space.size();
    std::vector<double> w1(n, 0.0), w2(n, 0.0);
    if (first_live(mass)) w1 = dyadic_weights(rng, n, log2_denominator);
    if (second_live(mass)) w2 = dyadic_weights(rng, n, log2_denominator);
    return DMeasure(space, std::move(w1), std::move(w2), mass);
}

DMeasure random_measure_with_cells(Rng& rng, const SampleSpace& space, const Partition& p,
                                   std::span<const NumberClass> cell_classes, MassMode mass) {
    if (cell_classes.size() != p.size()) {
        throw Error(ErrorCode::LengthMismatch, "one class per partition cell is required");
    }
    if (p.space_size() != space.size()) throw Error(ErrorCode::InvalidPartition, "partition does not fit the space");
    const std::size_t n = space.size();
    std::vector<bool> allow1(n, false), allow2(n, false);
    for (std::size_t c = 0; c < p.size(); ++c) {
        const auto k = cell_classes[c];
        const bool in1 = k == NumberClass::Invertible || k == NumberClass::ZeroDivisorE;
        const bool in2 = k == NumberClass::Invertible || k == NumberClass::ZeroDivisorEDagger;
        if ((in1 && !first_live(mass)) || (in2 && !second_live(mass))) {
            throw Error(ErrorCode::InvalidArgument, "cell class is incompatible with the mass mode");
        }
        for (const auto i : p[c].members()) {
            allow1[i] = in1;
            allow2[i] = in2;
        }
    }
    std::vector<double> w1(n, 0.0), w2(n, 0.0);
    if (first_live(mass)) w1 = normalized_weights(rng, allow1);
    if (second_live(mass)) w2 = normalized_weights(rng, allow2);
    return DMeasure(space, std::move(w1), std::move(w2), mass);
}

DRandomVar random_variable(Rng& rng, const SampleSpace& space, double lo, double hi) {
    std::vector<HyperNum> values;
    values.reserve(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) values.push_back(random_hypernum(rng, lo, hi));
    return DRandomVar(space, std::move(values));
}

DRandomVar random_dyadic_variable(Rng& rng, const SampleSpace& space, unsigned bits, double range) {
    std::vector<HyperNum> values;
    values.reserve(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) values.push_back(random_dyadic_hypernum(rng, bits, range));
    return DRandomVar(space, std::move(values));
}

Partition random_partition(Rng& rng, std::size_t n, std::size_t max_cells) {
    if (n == 0 || max_cells == 0) throw Error(ErrorCode::InvalidArgument, "empty partition request");
    const std::size_t k = 1 + rng.below(std::min(n, max_cells));
    std::vector<std::size_t> label(n);
    for (auto& l : label) l = rng.below(k);
    // Relabel in order of first appearance so every used label is a cell.
    std::vector<long> remap(k, -1);
    std::vector<std::vector<std::size_t>> cells;
    for (std::size_t i = 0; i < n; ++i) {
        if (remap[label[i]] < 0) {
            remap[label[i]] = static_cast<long>(cells.size());
            cells.emplace_back();
        }
        cells[static_cast<std::size_t>(remap[label[i]])].push_back(i);
    }
    std::vector<Event> events;
    for (auto& c : cells) events.emplace_back(std::move(c));
    return Partition(n, std::move(events));
}

Event random_event(Rng& rng, std::size_t n) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i) {
        if (rng.chance(0.5)) members.push_back(i);
    }
    return Event(std::move(members));
}

ProductScenario product_scenario(Rng& rng, std::size_t nx, std::size_t ny, MassMode mass) {
    const auto live_weights = [&](std::size_t n, bool live) {
        std::vector<double> w(n, 0.0);
        if (!live) return w;
        double total = 0;
        for (auto& x : w) total += (x = 0.05 + rng.uniform());
        for (auto& x : w) x /= total;
        return w;
    };
    const auto a1 = live_weights(nx, first_live(mass));
    const auto b1 = live_weights(ny, first_live(mass));
    const auto a2 = live_weights(nx, second_live(mass));
    const auto b2 = live_weights(ny, second_live(mass));
    std::vector<HyperNum> xs(nx), ys(ny);
    for (auto& z : xs) z = random_hypernum(rng, -3, 3);
    for (auto& z : ys) z = random_hypernum(rng, -3, 3);

    std::vector<std::string> labels;
    std::vector<double> w1, w2;
    std::vector<HyperNum> xv, yv;
    for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < ny; ++j) {
            labels.push_back(std::to_string(i) + "," + std::to_string(j));
            w1.push_back(a1[i] * b1[j]);
            w2.push_back(a2[i] * b2[j]);
            xv.push_back(xs[i]);
            yv.push_back(ys[j]);
        }
    }
    SampleSpace space(std::move(labels));
    DMeasure m(space, std::move(w1), std::move(w2), mass);
    DRandomVar x(space, std::move(xv));
    DRandomVar y(space, std::move(yv));
    return {space, std::move(m), std::move(x), std::move(y)};
}

}  // namespace hyperprob
