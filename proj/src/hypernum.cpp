#include "hyperprob/hypernum.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "hyperprob/error.hpp"

namespace hyperprob {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::ZeroOrZeroDivisor: return "ZeroOrZeroDivisor";
        case ErrorCode::EmptySet: return "EmptySet";
        case ErrorCode::InvalidRadius: return "InvalidRadius";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::SpaceMismatch: return "SpaceMismatch";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::NullConditioningEvent: return "NullConditioningEvent";
        case ErrorCode::UnsupportedPoint: return "UnsupportedPoint";
        case ErrorCode::TruncationExceeded: return "TruncationExceeded";
        case ErrorCode::InvalidParameters: return "InvalidParameters";
        case ErrorCode::EventsNotDisjoint: return "EventsNotDisjoint";
        case ErrorCode::InvalidPartition: return "InvalidPartition";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::AxiomViolation: return "AxiomViolation";
        case ErrorCode::SpaceTooLarge: return "SpaceTooLarge";
    }
    return "Unknown";
}

Tolerance::Tolerance(double e) : eps(e) {
    if (!(e >= 0) || !std::isfinite(e)) {
        throw Error(ErrorCode::InvalidArgument, "tolerance must be a finite nonnegative real");
    }
}

HyperNum HyperNum::from_cartesian(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw Error(ErrorCode::NonFinite, "cartesian components must be finite");
    }
    return {a + b, a - b};
}

HyperNum HyperNum::from_idempotent(double u, double v) {
    if (!std::isfinite(u) || !std::isfinite(v)) {
        throw Error(ErrorCode::NonFinite, "idempotent components must be finite");
    }
    return {u, v};
}

bool HyperNum::is_finite() const { return std::isfinite(u_) && std::isfinite(v_); }

NumberClass classify(const HyperNum& z, Tolerance tol) {
    const bool u0 = tol.is_zero(z.u());
    const bool v0 = tol.is_zero(z.v());
    if (u0 && v0) return NumberClass::Zero;
    if (v0) return NumberClass::ZeroDivisorE;
    if (u0) return NumberClass::ZeroDivisorEDagger;
    return NumberClass::Invertible;
}

bool is_zero_divisor(const HyperNum& z, Tolerance tol) {
    const auto c = classify(z, tol);
    return c == NumberClass::ZeroDivisorE || c == NumberClass::ZeroDivisorEDagger;
}

HyperNum inverse(const HyperNum& z, Tolerance tol) {
    if (classify(z, tol) != NumberClass::Invertible) {
        throw Error(ErrorCode::ZeroOrZeroDivisor, format_hyper(z) + " has no inverse");
    }
    return {1.0 / z.u(), 1.0 / z.v()};
}

OrderRelation compare(const HyperNum& x, const HyperNum& y, Tolerance tol) {
    const double du = y.u() - x.u();
    const double dv = y.v() - x.v();
    const int su = tol.is_zero(du) ? 0 : (du > 0 ? 1 : -1);
    const int sv = tol.is_zero(dv) ? 0 : (dv > 0 ? 1 : -1);
    if (su == 0 && sv == 0) return OrderRelation::Equal;
    if (su >= 0 && sv >= 0) return OrderRelation::Less;
    if (su <= 0 && sv <= 0) return OrderRelation::Greater;
    return OrderRelation::Incomparable;
}

bool precedes_or_equal(const HyperNum& x, const HyperNum& y, Tolerance tol) {
    const auto r = compare(x, y, tol);
    return r == OrderRelation::Less || r == OrderRelation::Equal;
}

bool is_nonnegative(const HyperNum& z, Tolerance tol) {
    return z.u() >= -tol.eps && z.v() >= -tol.eps;
}

HyperNum modulus(const HyperNum& z) { return {std::fabs(z.u()), std::fabs(z.v())}; }

HyperNum sup_d(std::span<const HyperNum> zs) {
    if (zs.empty()) throw Error(ErrorCode::EmptySet, "supremum of an empty set");
    double su = zs.front().u();
    double sv = zs.front().v();
    for (const auto& z : zs.subspan(1)) {
        su = std::max(su, z.u());
        sv = std::max(sv, z.v());
    }
    return {su, sv};
}

bool ball_contains(const HyperNum& center, const HyperNum& radius, const HyperNum& z,
                   Tolerance tol) {
    if (!is_nonnegative(radius, Tolerance(0.0))) {
        throw Error(ErrorCode::InvalidRadius, "radius " + format_hyper(radius) + " is not in D+");
    }
    const double du = std::fabs(z.u() - center.u());
    const double dv = std::fabs(z.v() - center.v());
    switch (classify(radius, tol)) {
        case NumberClass::Zero:
            throw Error(ErrorCode::InvalidRadius, "radius must be nonzero");
        case NumberClass::Invertible:
            return du < radius.u() && dv < radius.v();
        case NumberClass::ZeroDivisorE:
            return tol.is_zero(z.v() - center.v()) && du < radius.u();
        case NumberClass::ZeroDivisorEDagger:
            return tol.is_zero(z.u() - center.u()) && dv < radius.v();
    }
    return false;
}

HyperNum int_pow(const HyperNum& z, unsigned r) {
    HyperNum result = kOne;
    HyperNum base = z;
    while (r != 0) {
        if (r & 1u) result *= base;
        base *= base;
        r >>= 1;
    }
    return result;
}

std::string_view to_string(NumberClass c) noexcept {
    switch (c) {
        case NumberClass::Zero: return "zero";
        case NumberClass::ZeroDivisorE: return "zero_divisor_e";
        case NumberClass::ZeroDivisorEDagger: return "zero_divisor_edagger";
        case NumberClass::Invertible: return "invertible";
    }
    return "?";
}

std::string_view to_string(OrderRelation r) noexcept {
    switch (r) {
        case OrderRelation::Less: return "less";
        case OrderRelation::Equal: return "equal";
        case OrderRelation::Greater: return "greater";
        case OrderRelation::Incomparable: return "incomparable";
    }
    return "?";
}

// -- literals ---------------------------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

[[noreturn]] void bad_literal(std::string_view text, std::string_view why) {
    throw Error(ErrorCode::ParseError,
                "malformed hyperbolic literal \"" + std::string(text) + "\": " + std::string(why));
}

// Whole-string decimal; a leading '+' is allowed.
std::optional<double> to_double(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) return std::nullopt;
    }
    if (s.empty()) return std::nullopt;
    double out = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(out)) {
        return std::nullopt;
    }
    return out;
}

}  // namespace

HyperNum parse_hyper(std::string_view text) {
    const std::string_view s = trim(text);
    if (s.empty()) bad_literal(text, "empty");

    if (s.front() == '[') {
        if (s.back() != ']') bad_literal(text, "missing ']'");
        const auto body = s.substr(1, s.size() - 2);
        const auto comma = body.find(',');
        if (comma == std::string_view::npos || body.find(',', comma + 1) != std::string_view::npos) {
            bad_literal(text, "expected [U,V]");
        }
        const auto u = to_double(body.substr(0, comma));
        const auto v = to_double(body.substr(comma + 1));
        if (!u || !v) bad_literal(text, "bad component");
        return {*u, *v};
    }

    if (s.back() != 'k') {
        const auto a = to_double(s);
        if (!a) bad_literal(text, "bad real part");
        return HyperNum::from_cartesian(*a, 0.0);
    }

    const auto body = s.substr(0, s.size() - 1);
    // Split at the last sign that is not leading and not an exponent sign.
    std::size_t split = std::string_view::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    const auto real_part = split == std::string_view::npos ? std::string_view{} : body.substr(0, split);
    auto coeff_part = split == std::string_view::npos ? body : body.substr(split);

    double a = 0;
    if (split != std::string_view::npos) {
        const auto parsed = to_double(real_part);
        if (!parsed) bad_literal(text, "bad real part");
        a = *parsed;
    }
    coeff_part = trim(coeff_part);
    double b = 0;
    if (coeff_part.empty() || coeff_part == "+") {
        b = 1;
    } else if (coeff_part == "-") {
        b = -1;
    } else {
        const auto parsed = to_double(coeff_part);
        if (!parsed) bad_literal(text, "bad k coefficient");
        b = *parsed;
    }
    return HyperNum::from_cartesian(a, b);
}

std::string format_real(double x) {
    if (x == 0) return "0";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

std::string format_hyper(const HyperNum& z) {
    const double b = z.b();
    std::string out = format_real(z.a());
    out += std::signbit(b) && b != 0 ? '-' : '+';
    out += format_real(std::fabs(b));
    out += 'k';
    return out;
}

std::string format_idempotent(const HyperNum& z) {
    return "[" + format_real(z.u()) + "," + format_real(z.v()) + "]";
}

double parse_real(std::string_view text) {
    const auto s = trim(text);
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) {
        const auto x = to_double(s);
        if (!x) throw Error(ErrorCode::ParseError, "bad real \"" + std::string(text) + "\"");
        return *x;
    }
    const auto num = to_double(s.substr(0, slash));
    const auto den = to_double(s.substr(slash + 1));
    if (!num || !den || *den == 0) {
        throw Error(ErrorCode::ParseError, "bad rational \"" + std::string(text) + "\"");
    }
    return *num / *den;
}

}  // namespace hyperprob
