#include <doctest.h>

#include <cmath>

#include "dwb/poly2.hpp"
#include "gen.hpp"

using dwb::BPoly;
using dwb::Rat;
using dwb::Var;
using dwb::XYPoly;

namespace {

Rat q(long p, long d) { return Rat(mpz_class(p), mpz_class(d)); }

Rat power(const Rat& v, std::uint32_t e) {
    Rat acc(1);
    for (std::uint32_t k = 0; k < e; ++k) acc *= v;
    return acc;
}

// Exact value at (b, x, y) by summing terms one by one.
Rat value(const XYPoly& p, const Rat& b, const Rat& x, const Rat& y) {
    Rat acc;
    for (const auto& [m, c] : p.terms()) acc += c.eval(b) * power(x, m.i) * power(y, m.j);
    return acc;
}

// Sum of |term| values, the natural scale for rounding error.
double magnitude(const XYPoly& p, const Rat& x, const Rat& y) {
    double acc = 0.0;
    for (const auto& [m, c] : p.terms())
        acc += std::fabs((c.constant() * power(x, m.i) * power(y, m.j)).to_double());
    return acc;
}

const XYPoly X = XYPoly::x();
const XYPoly Y = XYPoly::y();
const BPoly B = BPoly::b();

}  // namespace

TEST_CASE("terms are kept in descending grlex order, x before y") {
    const XYPoly p = Y + X + XYPoly(1) + X * Y + Y * Y + X * X;
    std::vector<std::pair<unsigned, unsigned>> seen;
    for (const auto& [m, c] : p.terms()) seen.emplace_back(m.i, m.j);
    const std::vector<std::pair<unsigned, unsigned>> want{{2, 0}, {1, 1}, {0, 2}, {1, 0}, {0, 1}, {0, 0}};
    CHECK(seen == want);
    CHECK(p.total_degree() == 2);
    CHECK(XYPoly().total_degree() == -1);
    CHECK((X * X * Y).degree_in(Var::X) == 2);
    CHECK((X * X * Y).degree_in(Var::Y) == 1);
}

TEST_CASE("canonical rendering") {
    const XYPoly F = XYPoly::term((B + BPoly(1)) * (B + BPoly(2)), 2, 0) + XYPoly::term(-(B + BPoly(2)), 1, 1) + Y;
    CHECK(F.str() == "(b^2+3*b+2)*x^2 + (-(b+2))*x*y + y");
    CHECK((XYPoly::term(B + BPoly(1), 1, 0) - Y).str() == "(b+1)*x + (-1)*y");
    CHECK(XYPoly().str() == "0");
    CHECK(XYPoly(q(-3, 2)).str() == "(-3/2)");
}

TEST_CASE("render_affine puts the constant first") {
    CHECK(dwb::render_affine(XYPoly(2) - Rat(2) * X - Y) == "2 - 2*x - y");
    CHECK(dwb::render_affine(XYPoly(1) - X + Y) == "1 - x + y");
    CHECK(dwb::render_affine(-X) == "-x");
    CHECK(dwb::render_affine(XYPoly()) == "0");
    CHECK(dwb::render_affine(q(1, 2) * Y + XYPoly(-3)) == "-3 + 1/2*y");
    CHECK_THROWS_AS(dwb::render_affine(X * Y), std::domain_error);
    CHECK_THROWS_AS(dwb::render_affine(B * X), std::domain_error);
}

TEST_CASE("ring operations agree with pointwise evaluation") {
    for (int k = 0; k < 200; ++k) {
        const XYPoly p = gen::xypoly(), r = gen::xypoly();
        const Rat b = gen::rat(), x = gen::rat(), y = gen::rat();
        CHECK(value(p + r, b, x, y) == value(p, b, x, y) + value(r, b, x, y));
        CHECK(value(p - r, b, x, y) == value(p, b, x, y) - value(r, b, x, y));
        CHECK(value(p * r, b, x, y) == value(p, b, x, y) * value(r, b, x, y));
        CHECK((p - p).is_zero());
    }
}

TEST_CASE("partial derivatives") {
    CHECK(dwb::partial(X * X * Y, Var::X) == Rat(2) * X * Y);
    CHECK(dwb::partial(X * X * Y, Var::Y) == X * X);
    CHECK(dwb::partial(XYPoly(5), Var::X).is_zero());
    for (int k = 0; k < 200; ++k) {
        const XYPoly p = gen::xypoly(), r = gen::xypoly();
        for (Var v : {Var::X, Var::Y}) {
            CHECK(dwb::partial(p * r, v) == dwb::partial(p, v) * r + p * dwb::partial(r, v));
            CHECK(dwb::partial(p + r, v) == dwb::partial(p, v) + dwb::partial(r, v));
        }
        CHECK(dwb::partial(dwb::partial(p, Var::X), Var::Y) == dwb::partial(dwb::partial(p, Var::Y), Var::X));
    }
}

TEST_CASE("Lie derivative is a derivation") {
    for (int k = 0; k < 100; ++k) {
        const XYPoly P = gen::xypoly(2), Q = gen::xypoly(2), f = gen::xypoly(2), g = gen::xypoly(2);
        const XYPoly lhs = dwb::lie_derivative(f * g, P, Q);
        CHECK(lhs == dwb::lie_derivative(f, P, Q) * g + f * dwb::lie_derivative(g, P, Q));
    }
    CHECK(dwb::lie_derivative(X, X, Y) == X);
}

TEST_CASE("specialize_b and reflect_y") {
    for (int k = 0; k < 100; ++k) {
        const XYPoly p = gen::xypoly();
        const Rat b = gen::rat(), x = gen::rat(), y = gen::rat();
        const XYPoly s = dwb::specialize_b(p, b);
        CHECK(s.is_b_free());
        CHECK(value(s, Rat(0), x, y) == value(p, b, x, y));
        CHECK(value(dwb::reflect_y(p), b, x, y) == value(p, b, x, -y));
        CHECK(dwb::reflect_y(dwb::reflect_y(p)) == p);
    }
}

TEST_CASE("y_coefficient splits a polynomial linear in y") {
    const XYPoly F = Y * (XYPoly(1) - Rat(2) * X) + Rat(2) * X * X;
    CHECK(F.y_coefficient(1) == XYPoly(1) - Rat(2) * X);
    CHECK(F.y_coefficient(0) == Rat(2) * X * X);
    CHECK(F.y_coefficient(2).is_zero());
}

TEST_CASE("numeric evaluation matches exact evaluation") {
    for (int k = 0; k < 200; ++k) {
        const XYPoly p = dwb::specialize_b(gen::xypoly(4), gen::rat());
        const Rat x = gen::rat(4), y = gen::rat(4);
        const double exact = value(p, Rat(0), x, y).to_double();
        const double scale = magnitude(p, x, y) + 1e-300;
        CHECK(std::fabs(dwb::eval_xy(p, x.to_double(), y.to_double()) - exact) <= 1e-13 * scale);
        const dwb::Real wide = dwb::WideXY(p)(dwb::to_real(x), dwb::to_real(y));
        CHECK(std::fabs(dwb::to_double(wide) - exact) <= 3e-16 * scale + 1e-300);
    }
    CHECK_THROWS_AS(dwb::NumericXY(B * X), dwb::NotSpecialized);
    CHECK_THROWS_AS(dwb::max_abs_coefficient(B * X), dwb::NotSpecialized);
    CHECK(dwb::max_abs_coefficient(Rat(-7) * X + Y) == 7.0);
}
