// Hyperbolic arithmetic, order, modulus, supremum, balls and literals.

#include <array>

#include "check_registry.hpp"
#include "hyperprob/error.hpp"
#include "hyperprob/generators.hpp"

namespace hyperprob::detail {

namespace {

constexpr int kDraws = 10000;

CheckResult ring_laws(const Scenario&, Rng rng) {
    Tracker t("algebra.ring_laws", 1e-12);
    for (int i = 0; i < kDraws; ++i) {
        const HyperNum x = random_hypernum(rng), y = random_hypernum(rng), z = random_hypernum(rng);
        t.residual(rel_diff((x + y) + z, x + (y + z)));
        t.residual(rel_diff((x * y) * z, x * (y * z)));
        t.residual(rel_diff(x + y, y + x));
        t.residual(rel_diff(x * y, y * x));
        t.residual(rel_diff(x * (y + z), x * y + x * z));
        t.residual(rel_diff(x + kZero, x));
        t.residual(rel_diff(x * kOne, x));
        t.residual(rel_diff(x + (-x), kZero));
        // Cross-check the idempotent product against the cartesian rule
        // (a + bk)(c + dk) = (ac + bd) + (ad + bc)k.
        const double a = x.a(), b = x.b(), c = y.a(), d = y.b();
        t.residual(rel_diff(x * y, HyperNum::from_cartesian(a * c + b * d, a * d + b * c)));
    }
    return t.finish();
}

CheckResult conjugation(const Scenario&, Rng rng) {
    Tracker t("algebra.conjugation", 1e-12);
    for (int i = 0; i < kDraws; ++i) {
        const HyperNum x = random_hypernum(rng), y = random_hypernum(rng);
        t.residual(rel_diff(conjugate(x + y), conjugate(x) + conjugate(y)));
        t.residual(rel_diff(conjugate(conjugate(x)), x));
        t.residual(rel_diff(conjugate(x * y), conjugate(x) * conjugate(y)));
        t.residual(rel_diff(conjugate(x), HyperNum::from_cartesian(x.a(), -x.b())));
    }
    return t.finish();
}

CheckResult norm_is_real(const Scenario&, Rng rng) {
    Tracker t("algebra.norm_is_real", 1e-12);
    for (int i = 0; i < kDraws; ++i) {
        const HyperNum z = random_hypernum(rng);
        const HyperNum n = z * conjugate(z);
        t.residual(std::fabs(n.b()) / std::max(1.0, std::fabs(n.a())));
        // z z' = a^2 - b^2.
        const double expect = z.a() * z.a() - z.b() * z.b();
        t.residual(std::fabs(n.a() - expect) / std::max({1.0, std::fabs(expect), z.a() * z.a()}));
    }
    return t.finish();
}

CheckResult inverses(const Scenario& s, Rng rng) {
    Tracker t("algebra.inverse", 1e-12);
    for (int i = 0; i < kDraws; ++i) {
        const HyperNum z = random_hypernum(rng);
        if (classify(z, s.tolerance) != NumberClass::Invertible) continue;
        const HyperNum w = inverse(z, s.tolerance);
        t.residual(rel_diff(z * w, kOne));
        // z^-1 = z' / (z z').
        const HyperNum norm = z * conjugate(z);
        t.residual(rel_diff(w, conjugate(z) * (1.0 / norm.a())));
    }
    for (int i = 0; i < 100; ++i) {
        const double lambda = rng.uniform(0.1, 10);
        for (const HyperNum z : {lambda * kE, lambda * kEDagger, kZero}) {
            bool threw = false;
            try {
                (void)inverse(z, s.tolerance);
            } catch (const Error& e) {
                threw = e.code() == ErrorCode::ZeroOrZeroDivisor;
            }
            t.expect(threw, "inverse of " + format_hyper(z) + " did not raise ZeroOrZeroDivisor");
        }
    }
    return t.finish();
}

CheckResult zero_divisors(const Scenario& s, Rng rng) {
    Tracker t("algebra.zero_divisors", 1e-12);
    for (int i = 0; i < kDraws; ++i) {
        const double lambda = rng.uniform(-10, 10);
        if (s.tolerance.is_zero(lambda)) continue;
        const HyperNum ze = lambda * kE;
        const HyperNum zd = lambda * kEDagger;
        t.expect(classify(ze, s.tolerance) == NumberClass::ZeroDivisorE, "lambda e misclassified");
        t.expect(classify(zd, s.tolerance) == NumberClass::ZeroDivisorEDagger, "lambda e' misclassified");
        for (const auto& z : {ze, zd}) {
            t.expect(is_zero_divisor(z, s.tolerance) && !(z == kZero), "zero divisor flag");
            t.residual(size_of(z * conjugate(z)));
        }
        // Any z with z z' = 0 is a multiple of e or e'.
        const HyperNum x = random_hypernum(rng);
        const bool norm_zero = s.tolerance.is_zero((x * conjugate(x)).a());
        const auto c = classify(x, s.tolerance);
        if (c == NumberClass::ZeroDivisorE || c == NumberClass::ZeroDivisorEDagger) {
            t.expect(!(x == kZero), "zero classified as zero divisor");
        }
        if (!norm_zero) t.expect(c == NumberClass::Invertible, "nonzero norm but not invertible");
    }
    t.expect(classify(HyperNum::from_cartesian(3, 3), s.tolerance) == NumberClass::ZeroDivisorE, "3+3k");
    t.expect(classify(HyperNum::from_cartesian(0.5, -0.5), s.tolerance) == NumberClass::ZeroDivisorEDagger,
             "0.5-0.5k");
    t.expect(classify(kOne, s.tolerance) == NumberClass::Invertible, "1");
    return t.finish();
}

// Sign pattern of y - x, computed without compare.
OrderRelation sign_oracle(const HyperNum& x, const HyperNum& y, double eps) {
    const auto sgn = [eps](double d) { return d > eps ? 1 : d < -eps ? -1 : 0; };
    const int su = sgn(y.u() - x.u());
    const int sv = sgn(y.v() - x.v());
    if (su == 0 && sv == 0) return OrderRelation::Equal;
    if (su >= 0 && sv >= 0) return OrderRelation::Less;
    if (su <= 0 && sv <= 0) return OrderRelation::Greater;
    return OrderRelation::Incomparable;
}

bool le(OrderRelation r) { return r == OrderRelation::Less || r == OrderRelation::Equal; }

std::vector<HyperNum> grid_around(const HyperNum& alpha) {
    std::vector<HyperNum> g;
    for (int i = -10; i <= 10; ++i) {
        for (int j = -10; j <= 10; ++j) g.emplace_back(alpha.u() + 0.25 * i, alpha.v() + 0.25 * j);
    }
    return g;
}

CheckResult order_axioms(const Scenario& s, Rng rng) {
    Tracker t("algebra.order_axioms", 0);
    for (int k = 0; k < 10; ++k) {
        const HyperNum alpha = random_dyadic_hypernum(rng, 2, 4);
        const auto grid = grid_around(alpha);
        std::vector<OrderRelation> vs_alpha;
        for (const auto& z : grid) vs_alpha.push_back(compare(z, alpha, s.tolerance));
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto& x = grid[i];
            t.expect_lazy(compare(x, x, s.tolerance) == OrderRelation::Equal,
                          [&] { return "reflexivity at " + format_hyper(x); });
            for (std::size_t j = 0; j < grid.size(); ++j) {
                const auto& y = grid[j];
                const auto xy = compare(x, y, s.tolerance);
                const auto yx = compare(y, x, s.tolerance);
                bool ok = xy == sign_oracle(x, y, s.tolerance.eps);
                ok = ok && (xy == OrderRelation::Less) == (yx == OrderRelation::Greater);
                ok = ok && (xy == OrderRelation::Incomparable) == (yx == OrderRelation::Incomparable);
                ok = ok && !(xy == OrderRelation::Equal && !(x == y));
                // Transitivity through alpha: x <= alpha <= y implies x <= y.
                if (le(vs_alpha[i]) && le(compare(alpha, y, s.tolerance))) ok = ok && le(xy);
                t.expect_lazy(ok, [&] { return "order axiom fails for " + format_hyper(x) + ", " + format_hyper(y); });
            }
        }
    }
    return t.finish();
}

CheckResult four_quarters(const Scenario& s, Rng rng) {
    Tracker t("algebra.four_quarters", 0);
    for (int k = 0; k < 10; ++k) {
        const HyperNum alpha = random_dyadic_hypernum(rng, 2, 4);
        const auto grid = grid_around(alpha);
        std::array<std::size_t, 4> quarter{};  // <= alpha, > alpha, two incomparable quarters
        for (const auto& z : grid) {
            const double du = z.u() - alpha.u();
            const double dv = z.v() - alpha.v();
            const auto r = compare(z, alpha, s.tolerance);
            const bool in_le = le(r);
            const bool in_gt = r == OrderRelation::Greater;
            const bool in_inc = r == OrderRelation::Incomparable;
            t.expect(int(in_le) + int(in_gt) + int(in_inc) == 1, "regions overlap or leave a gap");
            t.expect(in_le == (du <= 0 && dv <= 0), "<= region disagrees with signs");
            t.expect(in_gt == (du >= 0 && dv >= 0 && !(du == 0 && dv == 0)), "> region disagrees with signs");
            if (in_le) ++quarter[0];
            if (in_gt) ++quarter[1];
            if (in_inc) ++quarter[du > 0 ? 2 : 3];
        }
        // Each quarter owns 10 x 10 interior grid points plus its share of
        // the axes: 121 for <=, 120 for >, 100 for each incomparable quarter.
        t.expect(quarter[0] == 121 && quarter[1] == 120 && quarter[2] == 100 && quarter[3] == 100,
                 "quarter sizes on the grid");

        DRandomVar x(SampleSpace::indexed(grid.size()), grid);
        const auto regions = classify_regions(x, alpha, s.tolerance);
        const auto n = grid.size();
        t.expect(regions.le.unite(regions.gt).unite(regions.incmp) == Event::all(n), "regions cover the space");
        t.expect(regions.le.disjoint_with(regions.gt) && regions.le.disjoint_with(regions.incmp) &&
                     regions.gt.disjoint_with(regions.incmp),
                 "regions are disjoint");
        t.expect(regions.lt.subset_of(regions.le) && regions.gt.subset_of(regions.ge), "strict within lax");
        t.expect(regions.le.size() == quarter[0] && regions.gt.size() == quarter[1] &&
                     regions.incmp.size() == quarter[2] + quarter[3],
                 "classify_regions agrees with the grid count");
    }
    return t.finish();
}

CheckResult modulus_and_sup(const Scenario& s, Rng rng) {
    Tracker t("algebra.modulus_sup", 0);
    for (int i = 0; i < kDraws; ++i) {
        const HyperNum z = random_hypernum(rng);
        const HyperNum m = modulus(z);
        t.expect(is_nonnegative(m, s.tolerance) && le(compare(kZero, m, s.tolerance)), "modulus outside D+");
        t.expect(m.u() == std::fabs(z.u()) && m.v() == std::fabs(z.v()), "modulus is not componentwise");
    }
    for (int i = 0; i < 1000; ++i) {
        std::vector<HyperNum> zs(1 + rng.below(8));
        for (auto& z : zs) z = random_hypernum(rng);
        const HyperNum sup = sup_d(zs);
        double mu = zs[0].u(), mv = zs[0].v();
        for (const auto& z : zs) {
            t.expect(le(compare(z, sup, s.tolerance)), "sup is not an upper bound");
            mu = std::max(mu, z.u());
            mv = std::max(mv, z.v());
        }
        t.expect(sup == HyperNum(mu, mv), "sup is not the componentwise max");
    }
    bool threw = false;
    try {
        (void)sup_d({});
    } catch (const Error& e) {
        threw = e.code() == ErrorCode::EmptySet;
    }
    t.expect(threw, "empty sup did not raise EmptySet");
    return t.finish();
}

CheckResult balls(const Scenario& s, Rng rng) {
    Tracker t("algebra.balls", 0);
    const double eps = s.tolerance.eps;
    for (int i = 0; i < kDraws; ++i) {
        const HyperNum c = random_hypernum(rng, -3, 3);
        const HyperNum r{rng.uniform(0.1, 2), rng.uniform(0.1, 2)};
        const HyperNum z = random_hypernum(rng, -5, 5);
        const bool inside = std::fabs(z.u() - c.u()) < r.u() && std::fabs(z.v() - c.v()) < r.v();
        t.expect(ball_contains(c, r, z, s.tolerance) == inside, "rectangle membership");

        const double lambda = r.u();
        const HyperNum on_axis{z.u(), c.v()};
        t.expect(ball_contains(c, lambda * kE, on_axis, s.tolerance) == (std::fabs(z.u() - c.u()) < lambda),
                 "e-radius interval membership");
        t.expect(ball_contains(c, lambda * kE, z, s.tolerance) ==
                     (std::fabs(z.v() - c.v()) <= eps && std::fabs(z.u() - c.u()) < lambda),
                 "e-radius pins the second component");
        const HyperNum on_dagger{c.u(), z.v()};
        t.expect(ball_contains(c, lambda * kEDagger, on_dagger, s.tolerance) == (std::fabs(z.v() - c.v()) < lambda),
                 "e'-radius interval membership");
    }
    for (const HyperNum bad : {kZero, HyperNum{-1, 1}, HyperNum{1, -0.5}}) {
        bool threw = false;
        try {
            (void)ball_contains(kZero, bad, kZero, s.tolerance);
        } catch (const Error& e) {
            threw = e.code() == ErrorCode::InvalidRadius;
        }
        t.expect(threw, "radius " + format_hyper(bad) + " accepted");
    }
    return t.finish();
}

CheckResult literals(const Scenario&, Rng rng) {
    Tracker t("algebra.literals", 0);
    for (int i = 0; i < kDraws; ++i) {
        // Dyadic components keep a = (u+v)/2 and b = (u-v)/2 exact, so both
        // textual forms round-trip bit for bit.
        const HyperNum z = random_dyadic_hypernum(rng, 10, 100);
        t.expect_lazy(parse_hyper(format_hyper(z)) == z, [&] { return "cartesian round trip of " + format_hyper(z); });
        t.expect_lazy(parse_hyper(format_idempotent(z)) == z,
                      [&] { return "idempotent round trip of " + format_idempotent(z); });
        t.expect(HyperNum::from_cartesian(z.a(), z.b()) == z, "cartesian view round trip");
    }
    for (const char* bad : {"2+k+", "", "k2", "1++k", "[1,2", "abc", "1+2"}) {
        bool threw = false;
        try {
            (void)parse_hyper(bad);
        } catch (const Error& e) {
            threw = e.code() == ErrorCode::ParseError;
        }
        t.expect(threw, std::string("malformed literal \"") + bad + "\" accepted");
    }
    return t.finish();
}

CheckResult powers(const Scenario&, Rng rng) {
    Tracker t("algebra.int_pow", 1e-12);
    for (int i = 0; i < kDraws; ++i) {
        const HyperNum z = random_hypernum(rng, -2, 2);
        const unsigned r = static_cast<unsigned>(rng.below(8));
        HyperNum naive = kOne;
        for (unsigned k = 0; k < r; ++k) naive = naive * z;
        t.residual(rel_diff(int_pow(z, r), naive));
    }
    t.residual(size_of(int_pow(kUnitK, 2) - kOne));
    t.residual(size_of(int_pow(kE, 3) - kE));
    return t.finish();
}

}  // namespace

std::vector<CheckDef> algebra_checks() {
    return {{"algebra.ring_laws", ring_laws},       {"algebra.conjugation", conjugation},
            {"algebra.norm_is_real", norm_is_real}, {"algebra.inverse", inverses},
            {"algebra.zero_divisors", zero_divisors}, {"algebra.order_axioms", order_axioms},
            {"algebra.four_quarters", four_quarters}, {"algebra.modulus_sup", modulus_and_sup},
            {"algebra.balls", balls},               {"algebra.literals", literals},
            {"algebra.int_pow", powers}};
}

}  // namespace hyperprob::detail
