#include "dwb/lvfamily.hpp"

namespace dwb {

namespace {

void require_order(unsigned n) {
    if (n == 0) throw FamilyError("n must be a positive integer (got 0)");
}

// n - n*x -+ y
XYPoly cofactor(unsigned n, Family family) {
    const long nn = static_cast<long>(n);
    const XYPoly y = XYPoly::y();
    XYPoly k = XYPoly(nn) - XYPoly::x() * XYPoly(nn);
    return family == Family::MinusY ? k - y : k + y;
}

XYPoly leading_term(unsigned n) {
    return XYPoly::term(pochhammer(BPoly::b() + BPoly(1), n), n, 0);
}

Rat rat_pochhammer(const Rat& c, unsigned count) {
    Rat acc(1);
    for (unsigned k = 0; k < count; ++k) acc *= c + Rat(static_cast<long>(k));
    return acc;
}

}  // namespace

std::string_view to_string(Family f) { return f == Family::MinusY ? "minus" : "plus"; }

std::optional<Family> parse_family(std::string_view text) {
    if (text == "minus" || text == "MinusY") return Family::MinusY;
    if (text == "plus" || text == "PlusY") return Family::PlusY;
    return std::nullopt;
}

LVSystem build_system(unsigned n, Family family) {
    require_order(n);
    const XYPoly x = XYPoly::x();
    const XYPoly y = XYPoly::y();
    LVSystem s;
    s.n = n;
    s.family = family;
    s.P = x - x * x;
    XYPoly q = XYPoly(static_cast<long>(n)) * y + XYPoly(BPoly::b()) * x * y;
    s.Q = family == Family::MinusY ? q - y * y : q + y * y;
    return s;
}

InvariantCurve build_invariant_curve(unsigned n, Family family) {
    require_order(n);
    const mpz_class scale = factorial(n - 1);
    XYPoly F = leading_term(n);
    for (unsigned v = 0; v < n; ++v) {
        // (n+b-v+1)_v * (n-1)! / v!, with the alternating sign
        const BPoly base = BPoly::b() + BPoly(static_cast<long>(n - v + 1));
        Rat c(scale, factorial(v));
        if ((n + v) % 2 == 1) c = -c;
        if (family == Family::PlusY) c = -c;
        F += XYPoly::term(pochhammer(base, v) * c, v, 1);
    }
    return InvariantCurve{std::move(F), cofactor(n, family), n, family};
}

XYPoly verify_invariance(const InvariantCurve& curve, const LVSystem& system) {
    if (curve.n != system.n || curve.family != system.family)
        throw FamilyError("curve (n=" + std::to_string(curve.n) + ", " + std::string(to_string(curve.family)) +
                          ") does not belong to system (n=" + std::to_string(system.n) + ", " +
                          std::string(to_string(system.family)) + ")");
    return lie_derivative(curve.F, system.P, system.Q) - curve.K * curve.F;
}

XYPoly lemma2_residual(const XYPoly& F, unsigned n) {
    require_order(n);
    const XYPoly x = XYPoly::x();
    const XYPoly lead = leading_term(n);
    const XYPoly lead_dx = XYPoly::term(pochhammer(BPoly::b() + BPoly(1), n), n - 1, 0);
    const XYPoly n_plus_b(BPoly::b() + BPoly(static_cast<long>(n)));
    return (XYPoly(1) - x) * partial(F, Var::X) - cofactor(n, Family::MinusY) * lead_dx + n_plus_b * (F - lead);
}

XYPoly check_lemma2(unsigned n) { return lemma2_residual(build_invariant_curve(n, Family::MinusY).F, n); }

XYPoly euler_y_residual(const XYPoly& F, unsigned n) {
    require_order(n);
    return XYPoly::y() * partial(F, Var::Y) - F + leading_term(n);
}

XYPoly check_euler_y(unsigned n, Family family) { return euler_y_residual(build_invariant_curve(n, family).F, n); }

Rat pochhammer_lemma_residual(const Rat& c, unsigned v) {
    if (v == 0) throw FamilyError("pochhammer lemma needs v >= 1");
    const Rat vm1_fact(factorial(v - 1));
    const Rat v_fact(factorial(v));
    const Rat p1 = rat_pochhammer(c + Rat(1), v);
    return p1 / vm1_fact + rat_pochhammer(c, v + 1) / v_fact - (c + Rat(static_cast<long>(v))) * p1 / v_fact;
}

}  // namespace dwb
