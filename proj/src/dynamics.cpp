#include "dwb/dynamics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace dwb {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

NumericSystem specialize_system(const LVSystem& system, const Rat& b0) {
    NumericSystem s;
    s.n = system.n;
    s.b_exact = b0;
    s.b0 = b0.to_double();
    s.family = system.family;
    s.P = specialize_b(system.P, b0);
    s.Q = specialize_b(system.Q, b0);
    s.p_ = WideXY(s.P);
    s.q_ = WideXY(s.Q);
    return s;
}

Real solve_on_curve(const InvariantCurve& curve, const Rat& b0, Real x0, const GuardConfig& guards) {
    const XYPoly F = specialize_b(curve.F, b0);
    const Real s = WideXY(F.y_coefficient(1))(x0, 0);
    const Real t = WideXY(F.y_coefficient(0))(x0, 0);
    if (!(real_abs(s) > guards.singular_threshold))
        throw DegeneratePoint("y-coefficient S(x) of F vanishes at x0 = " + fmt(to_double(x0)) +
                              " (b = " + b0.str() + "); no unique point of the curve above x0");
    return -t / s;
}

Trajectory integrate(const NumericSystem& sys, Real x0, Real y0, double t_end, double h,
                     const GuardConfig& guards) {
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("step h must be positive and finite");
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be positive and finite");
    if (!real_finite(x0) || !real_finite(y0)) throw std::invalid_argument("initial state must be finite");

    long long steps = std::llround(t_end / h);
    if (steps < 1 || std::fabs(static_cast<double>(steps) * h - t_end) > 1e-9 * t_end)
        steps = static_cast<long long>(std::ceil(t_end / h));

    Trajectory tr;
    tr.step = h;
    tr.times.reserve(static_cast<std::size_t>(steps) + 1);
    tr.states.reserve(static_cast<std::size_t>(steps) + 1);
    tr.times.push_back(0);
    tr.states.push_back({x0, y0});

    const Real H = h;
    const Real T = t_end;
    Real x = x0;
    Real y = y0;
    for (long long k = 1; k <= steps; ++k) {
        const Real t_prev = static_cast<Real>(k - 1) * H;
        const Real t_next = k == steps ? T : static_cast<Real>(k) * H;
        const Real dt = t_next - t_prev;
        const Real half = dt / 2;
        const auto k1 = sys.field(x, y);
        const auto k2 = sys.field(x + half * k1[0], y + half * k1[1]);
        const auto k3 = sys.field(x + half * k2[0], y + half * k2[1]);
        const auto k4 = sys.field(x + dt * k3[0], y + dt * k3[1]);
        const Real xn = x + dt / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
        const Real yn = y + dt / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
        if (!real_finite(xn) || !real_finite(yn)) {
            tr.blowup = true;
            tr.blowup_reason = "non-finite state at t = " + fmt(to_double(t_next));
            break;
        }
        if (real_abs(xn) > guards.blowup_threshold || real_abs(yn) > guards.blowup_threshold) {
            tr.blowup = true;
            tr.blowup_reason =
                "state left |x|,|y| <= " + fmt(guards.blowup_threshold) + " at t = " + fmt(to_double(t_next));
            break;
        }
        x = xn;
        y = yn;
        tr.times.push_back(t_next);
        tr.states.push_back({x, y});
    }
    return tr;
}

AuditResult audit_detailed(const InvariantCurve& curve, const FirstIntegral& integral, const Trajectory& traj,
                           const NumericSystem& sys, const GuardConfig& guards) {
    AuditResult out;
    ConservationReport& rep = out.report;

    if (is_degenerate_b(curve.n, sys.b_exact)) {
        rep.degenerate = true;
        rep.reasons.push_back("(b+1)_" + std::to_string(curve.n) + " vanishes at b = " + sys.b_exact.str() +
                              "; the curve drops below degree " + std::to_string(curve.n));
    }
    if (traj.blowup) {
        rep.degenerate = true;
        rep.reasons.push_back("integration stopped: " + traj.blowup_reason);
    }

    const XYPoly F = specialize_b(curve.F, sys.b_exact);
    const WideXY f_eval(F);
    const Real f_scale = max_abs_coefficient(F);

    struct Factor {
        WideXY eval;
        Real exponent;
        std::string name;
    };
    std::vector<Factor> factors;
    for (const auto& [f, e] : integral.factors)
        factors.push_back({WideXY(specialize_b(f, sys.b_exact)), to_real(e.eval(sys.b_exact)), f.str()});

    const Real nan = nanq("");
    bool singular_reported = false;
    Real log_ref = nan;
    Real max_r = 0;
    Real max_drift = 0;
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        const auto [x, y] = traj.states[k];
        const Real r = f_scale > 0 ? f_eval(x, y) / f_scale : Real(0);
        out.series.F_residual.push_back(r);
        if (real_abs(r) > max_r) max_r = real_abs(r);

        Real lh = 0;
        for (const auto& fac : factors) {
            if (fac.exponent == 0) continue;
            const Real v = fac.eval(x, y);
            if (!(real_abs(v) >= guards.singular_threshold)) {
                lh = nan;
                if (!singular_reported) {
                    rep.degenerate = true;
                    rep.reasons.push_back("log singularity: factor " + fac.name + " ~ 0 at t = " +
                                          fmt(to_double(traj.times[k])));
                    singular_reported = true;
                }
                break;
            }
            lh += fac.exponent * real_log(real_abs(v));
        }
        out.series.logH.push_back(lh);
        if (isnanq(lh)) continue;
        if (isnanq(log_ref)) log_ref = lh;
        if (real_abs(lh - log_ref) > max_drift) max_drift = real_abs(lh - log_ref);
    }
    rep.max_abs_F_residual = to_double(max_r);
    rep.max_logH_drift = to_double(max_drift);
    return out;
}

ConservationReport audit(const InvariantCurve& curve, const FirstIntegral& integral, const Trajectory& traj,
                         const NumericSystem& sys, const GuardConfig& guards) {
    return audit_detailed(curve, integral, traj, sys, guards).report;
}

std::vector<Rat> degenerate_b_values(unsigned n) {
    std::vector<Rat> out;
    for (unsigned k = 1; k <= n; ++k) out.emplace_back(-static_cast<long>(k));
    return out;
}

bool is_degenerate_b(unsigned n, const Rat& b0) {
    return pochhammer(BPoly::b() + BPoly(1), n).eval(b0).is_zero();
}

}  // namespace dwb
