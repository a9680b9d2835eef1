#include <doctest.h>

#include <cmath>

#include "dwb/darboux.hpp"
#include "dwb/dynamics.hpp"

using dwb::Family;
using dwb::Rat;
using dwb::Real;

namespace {

Rat q(long p, long d) { return Rat(mpz_class(p), mpz_class(d)); }

struct Setup {
    dwb::InvariantCurve curve;
    dwb::NumericSystem sys;
    dwb::FirstIntegral H;
};

Setup setup(unsigned n, Family fam, const Rat& b0) {
    const auto quad = dwb::standard_quadruple(n, fam);
    return {dwb::build_invariant_curve(n, fam), dwb::specialize_system(dwb::build_system(n, fam), b0),
            dwb::assemble_first_integral(quad, dwb::solve_cofactor_kernel(quad).at(0))};
}

double dbl(Real v) { return dwb::to_double(v); }

// x' = x(1-x) decouples: x(t) = x0 e^t / (1 - x0 + x0 e^t).
double logistic(double x0, double t) { return x0 * std::exp(t) / (1.0 - x0 + x0 * std::exp(t)); }

}  // namespace

TEST_CASE("solve_on_curve") {
    const auto c1 = dwb::build_invariant_curve(1, Family::MinusY);
    CHECK(dbl(dwb::solve_on_curve(c1, Rat(1), 1)) == 2.0);
    for (unsigned n = 1; n <= 6; ++n)
        for (Family fam : {Family::MinusY, Family::PlusY})
            CHECK(dbl(dwb::solve_on_curve(dwb::build_invariant_curve(n, fam), q(1, 3), 0)) == 0.0);

    // F = y(1-2x) + 2x^2 at b = 0, so y0 = -2x0^2/(1-2x0) = -1/4 at x0 = 1/4
    const auto c2 = dwb::build_invariant_curve(2, Family::MinusY);
    CHECK(dbl(dwb::solve_on_curve(c2, Rat(0), dwb::to_real(q(1, 4)))) == -0.25);
    CHECK_THROWS_AS(dwb::solve_on_curve(c2, Rat(0), dwb::to_real(q(1, 2))), dwb::DegeneratePoint);

    // the returned point lies on the specialized curve
    for (unsigned n = 1; n <= 5; ++n)
        for (Family fam : {Family::MinusY, Family::PlusY})
            for (double x0 : {0.1, 0.3, 0.9}) {
                const auto c = dwb::build_invariant_curve(n, fam);
                const Rat b0 = q(3, 7);
                const Real y0 = dwb::solve_on_curve(c, b0, x0);
                const auto F = dwb::specialize_b(c.F, b0);
                CHECK(std::fabs(dbl(dwb::WideXY(F)(x0, y0))) / dwb::max_abs_coefficient(F) < 1e-28);
            }
}

TEST_CASE("integrate records a well-formed trajectory") {
    const auto s = setup(2, Family::MinusY, q(1, 2));
    const auto tr = dwb::integrate(s.sys, 0.5, 1, 5.0, 1e-3);
    CHECK(tr.states.size() == 5001);
    CHECK(tr.times.size() == tr.states.size());
    CHECK(tr.step == 1e-3);
    CHECK(tr.method == "rk4");
    CHECK_FALSE(tr.blowup);
    CHECK(dbl(tr.times.back()) == 5.0);
    for (std::size_t k = 1; k < tr.times.size(); ++k) CHECK(tr.times[k] > tr.times[k - 1]);

    // a step that does not divide t_end shortens the last step
    const auto odd = dwb::integrate(s.sys, 0.5, 1, 1.0, 0.3);
    CHECK(odd.states.size() == 5);
    CHECK(dbl(odd.times.back()) == 1.0);
}

TEST_CASE("x follows the logistic law") {
    for (double x0 : {0.1, 0.5, 0.9}) {
        const auto s = setup(3, Family::MinusY, q(1, 2));
        const auto tr = dwb::integrate(s.sys, x0, 0.7, 5.0, 1e-3);
        double worst = 0.0;
        for (std::size_t k = 0; k < tr.states.size(); ++k)
            worst = std::max(worst, std::fabs(dbl(tr.states[k][0]) - logistic(x0, dbl(tr.times[k]))));
        CHECK(worst < 1e-13);
    }
}

TEST_CASE("equilibria stay fixed") {
    for (unsigned n = 1; n <= 5; ++n)
        for (const Rat& b0 : {Rat(0), q(1, 2), Rat(1), q(-1, 2)}) {
            const auto s = setup(n, Family::MinusY, b0);
            const double nb = static_cast<double>(n) + b0.to_double();
            for (const auto& p : std::vector<std::array<double, 2>>{{0, 0}, {1, 0}, {0, double(n)}, {1, nb}}) {
                const auto tr = dwb::integrate(s.sys, p[0], p[1], 5.0, 1e-3);
                double worst = 0.0;
                for (const auto& st : tr.states)
                    worst = std::max({worst, std::fabs(dbl(st[0]) - p[0]), std::fabs(dbl(st[1]) - p[1])});
                CHECK(worst < 1e-9);
            }
        }
}

TEST_CASE("integrate rejects bad configuration") {
    const auto s = setup(1, Family::MinusY, Rat(0));
    CHECK_THROWS_AS(dwb::integrate(s.sys, 0.5, 0.5, 5.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(dwb::integrate(s.sys, 0.5, 0.5, 5.0, -1e-3), std::invalid_argument);
    CHECK_THROWS_AS(dwb::integrate(s.sys, 0.5, 0.5, 0.0, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(dwb::integrate(s.sys, 0.5, 0.5, NAN, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(dwb::integrate(s.sys, dwb::to_real(INFINITY), 0.5, 1.0, 1e-3), std::invalid_argument);
}

TEST_CASE("finite-time blowup truncates instead of crashing") {
    // y' = y(1 + y) near x = 0 escapes before t = ln 2
    const auto s = setup(1, Family::PlusY, Rat(0));
    const auto tr = dwb::integrate(s.sys, 0.5, 1, 5.0, 1e-3);
    CHECK(tr.blowup);
    CHECK_FALSE(tr.blowup_reason.empty());
    CHECK(dbl(tr.times.back()) < 1.0);
    for (const auto& st : tr.states) CHECK(std::fabs(dbl(st[1])) <= 1e9);

    const auto rep = dwb::audit(s.curve, s.H, tr, s.sys);
    CHECK(rep.degenerate);
}

TEST_CASE("audit on an equilibrium of the curve") {
    const auto s = setup(2, Family::MinusY, q(1, 2));
    const auto tr = dwb::integrate(s.sys, 0, 0, 1.0, 1e-2);
    const auto rep = dwb::audit(s.curve, s.H, tr, s.sys);
    CHECK(rep.max_abs_F_residual == 0.0);
    CHECK(rep.max_logH_drift == 0.0);
    CHECK(rep.degenerate);  // y = 0 makes log|y| singular
}

TEST_CASE("on-curve start: F stays small, the integral is flagged") {
    const auto s = setup(2, Family::MinusY, q(1, 2));
    const Real y0 = dwb::solve_on_curve(s.curve, q(1, 2), 0.5);
    const auto r1 = dwb::audit(s.curve, s.H, dwb::integrate(s.sys, 0.5, y0, 5.0, 1e-3), s.sys);
    const auto r2 = dwb::audit(s.curve, s.H, dwb::integrate(s.sys, 0.5, y0, 5.0, 5e-4), s.sys);
    CHECK(r1.max_abs_F_residual < 1e-6);
    CHECK(r1.degenerate);
    REQUIRE(r2.max_abs_F_residual > 0.0);
    CHECK(r1.max_abs_F_residual / r2.max_abs_F_residual >= 8.0);
}

TEST_CASE("off-curve start conserves log H") {
    const auto s = setup(2, Family::MinusY, q(1, 2));
    const auto a1 = dwb::audit_detailed(s.curve, s.H, dwb::integrate(s.sys, 0.5, 1, 5.0, 1e-3), s.sys);
    const auto a2 = dwb::audit_detailed(s.curve, s.H, dwb::integrate(s.sys, 0.5, 1, 5.0, 5e-4), s.sys);
    CHECK_FALSE(a1.report.degenerate);
    CHECK(a1.report.max_logH_drift < 1e-6);
    CHECK(a1.report.max_logH_drift / a2.report.max_logH_drift >= 8.0);
    CHECK(a1.series.logH.size() == 5001);

    // logH at t = 0 by hand: log 1 + (5/2) log(1/2) - log|f4(1/2, 1)|
    const auto f4 = dwb::specialize_b(s.curve.F, q(1, 2));
    const double f = dwb::eval_xy(f4, 0.5, 1.0);
    CHECK(std::fabs(dbl(a1.series.logH[0]) - (2.5 * std::log(0.5) - std::log(std::fabs(f)))) < 1e-14);
    // the residual is normalized by the largest coefficient of F(b0)
    CHECK(std::fabs(dbl(a1.series.F_residual[0]) - f / dwb::max_abs_coefficient(f4)) < 1e-15);
}

TEST_CASE("degenerate parameter values") {
    CHECK(dwb::degenerate_b_values(1) == std::vector<Rat>{Rat(-1)});
    CHECK(dwb::degenerate_b_values(3) == std::vector<Rat>{Rat(-1), Rat(-2), Rat(-3)});
    CHECK_FALSE(dwb::is_degenerate_b(2, Rat(-3)));
    CHECK(dwb::is_degenerate_b(2, Rat(-2)));
    for (unsigned n = 1; n <= 10; ++n) {
        std::vector<Rat> roots;
        const dwb::BPoly lead = dwb::pochhammer(dwb::BPoly::b() + dwb::BPoly(1), n);
        for (long c = -1; c >= -static_cast<long>(n); --c)
            if (lead.eval(Rat(c)).is_zero()) roots.emplace_back(c);
        CHECK(dwb::degenerate_b_values(n) == roots);
    }

    const auto s = setup(2, Family::MinusY, Rat(-1));
    const auto rep = dwb::audit(s.curve, s.H, dwb::integrate(s.sys, 0.5, 1, 1.0, 1e-3), s.sys);
    CHECK(rep.degenerate);
    REQUIRE_FALSE(rep.reasons.empty());
    CHECK(rep.reasons[0].find("(b+1)_2") != std::string::npos);
}

TEST_CASE("singularity guard uses the raw factor value") {
    dwb::GuardConfig g;
    g.singular_threshold = 1e-12;
    const auto s = setup(1, Family::MinusY, Rat(1));
    // (1/2, 1) lies on F = 2x - y
    const auto rep = dwb::audit(s.curve, s.H, dwb::integrate(s.sys, 0.5, 1, 1.0, 1e-3), s.sys, g);
    CHECK(rep.degenerate);
}
