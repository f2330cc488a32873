#pragma once

// Hyperbolic (split-complex) numbers z = a + bk, k*k = 1.
//
// Values are stored in the idempotent basis e = (1+k)/2, e' = (1-k)/2:
//
//     z = u e + v e',   u = a + b,   v = a - b
//
// so that addition, multiplication and inversion act componentwise. The
// cartesian pair (a, b) is only a view.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace hyperprob {

/// Absolute tolerance used for every zero/sign decision. eps = 0 is exact.
struct Tolerance {
    double eps = 1e-9;

    constexpr Tolerance() = default;
    explicit Tolerance(double e);

    constexpr bool is_zero(double x) const { return x <= eps && x >= -eps; }
};

class HyperNum {
public:
    constexpr HyperNum() = default;
    constexpr HyperNum(double u, double v) : u_(u), v_(v) {}

    /// z = a + bk. Throws NonFinite.
    static HyperNum from_cartesian(double a, double b);
    /// z = u e + v e'. Throws NonFinite.
    static HyperNum from_idempotent(double u, double v);
    static constexpr HyperNum real(double x) { return {x, x}; }

    constexpr double u() const { return u_; }
    constexpr double v() const { return v_; }
    constexpr double a() const { return (u_ + v_) / 2; }
    constexpr double b() const { return (u_ - v_) / 2; }

    bool is_finite() const;

    constexpr HyperNum& operator+=(const HyperNum& o) {
        u_ += o.u_;
        v_ += o.v_;
        return *this;
    }
    constexpr HyperNum& operator-=(const HyperNum& o) {
        u_ -= o.u_;
        v_ -= o.v_;
        return *this;
    }
    constexpr HyperNum& operator*=(const HyperNum& o) {
        u_ *= o.u_;
        v_ *= o.v_;
        return *this;
    }
    constexpr HyperNum& operator*=(double s) {
        u_ *= s;
        v_ *= s;
        return *this;
    }

    friend constexpr bool operator==(const HyperNum&, const HyperNum&) = default;

private:
    double u_ = 0;
    double v_ = 0;
};

inline constexpr HyperNum kZero{0, 0};
inline constexpr HyperNum kOne{1, 1};
inline constexpr HyperNum kE{1, 0};
inline constexpr HyperNum kEDagger{0, 1};
inline constexpr HyperNum kUnitK{1, -1};

constexpr HyperNum operator+(HyperNum x, const HyperNum& y) { return x += y; }
constexpr HyperNum operator-(HyperNum x, const HyperNum& y) { return x -= y; }
constexpr HyperNum operator*(HyperNum x, const HyperNum& y) { return x *= y; }
constexpr HyperNum operator*(HyperNum x, double s) { return x *= s; }
constexpr HyperNum operator*(double s, HyperNum x) { return x *= s; }
constexpr HyperNum operator-(const HyperNum& x) { return {-x.u(), -x.v()}; }

constexpr HyperNum add(const HyperNum& x, const HyperNum& y) { return x + y; }
constexpr HyperNum mul(const HyperNum& x, const HyperNum& y) { return x * y; }
constexpr HyperNum neg(const HyperNum& x) { return -x; }

/// a + bk -> a - bk, i.e. swaps the idempotent components.
constexpr HyperNum conjugate(const HyperNum& z) { return {z.v(), z.u()}; }

enum class NumberClass { Zero, ZeroDivisorE, ZeroDivisorEDagger, Invertible };

NumberClass classify(const HyperNum& z, Tolerance tol = {});
bool is_zero_divisor(const HyperNum& z, Tolerance tol = {});

/// Throws ZeroOrZeroDivisor unless classify(z) == Invertible.
HyperNum inverse(const HyperNum& z, Tolerance tol = {});

/// Result of x vs y under the partial order x <= y iff y - x is in D+.
enum class OrderRelation { Less, Equal, Greater, Incomparable };

OrderRelation compare(const HyperNum& x, const HyperNum& y, Tolerance tol = {});

/// True when compare(x, y) is Less or Equal.
bool precedes_or_equal(const HyperNum& x, const HyperNum& y, Tolerance tol = {});
/// Both components >= -eps.
bool is_nonnegative(const HyperNum& z, Tolerance tol = {});

/// Hyperbolic modulus |u| e + |v| e'.
HyperNum modulus(const HyperNum& z);

/// Componentwise supremum of a finite set. Throws EmptySet.
HyperNum sup_d(std::span<const HyperNum> zs);

/// Open ball of hyperbolic radius. An invertible radius gives the open
/// rectangle |u - cu| < ru, |v - cv| < rv. A radius r e (resp. r e') gives
/// the open interval of half-width r on the e axis through the centre (the
/// other component must match the centre within tol). Throws InvalidRadius
/// for a zero radius or one outside D+.
bool ball_contains(const HyperNum& center, const HyperNum& radius, const HyperNum& z,
                   Tolerance tol = {});

/// z^r componentwise; z^0 = 1.
HyperNum int_pow(const HyperNum& z, unsigned r);

std::string_view to_string(NumberClass c) noexcept;
std::string_view to_string(OrderRelation r) noexcept;

// -- literals ---------------------------------------------------------------

/// Accepts cartesian "A+Bk", "A-Bk", "A", "Bk", "k", "-k" and idempotent
/// "[U,V]". Throws ParseError.
HyperNum parse_hyper(std::string_view text);

/// Cartesian form with shortest round-trip decimals, e.g. "2+1k".
std::string format_hyper(const HyperNum& z);
/// Idempotent form "[U,V]".
std::string format_idempotent(const HyperNum& z);

/// Shortest round-trip decimal for a double ("-0" printed as "0").
std::string format_real(double x);

/// Parses a decimal or "p/q" rational string. Throws ParseError.
double parse_real(std::string_view text);

/// Lexicographic order on (u, v); used for map keys.
struct HyperLess {
    bool operator()(const HyperNum& x, const HyperNum& y) const {
        return x.u() < y.u() || (x.u() == y.u() && x.v() < y.v());
    }
};

}  // namespace hyperprob
