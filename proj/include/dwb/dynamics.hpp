// Numeric cross-checks: trajectories of a specialized system, invariance of
// {F = 0} and conservation of the Darboux first integral along them.
#ifndef DWB_DYNAMICS_HPP
#define DWB_DYNAMICS_HPP

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "dwb/darboux.hpp"
#include "dwb/lvfamily.hpp"

namespace dwb {

struct GuardConfig {
    double singular_threshold = 1e-12;  // log singularity / vanishing S(x0)
    double blowup_threshold = 1e9;      // |x| or |y| beyond this aborts integration
};

/// Raised when no unique point of the curve lies above x0.
class DegeneratePoint : public std::domain_error {
public:
    explicit DegeneratePoint(const std::string& what) : std::domain_error(what) {}
};

struct NumericSystem {
    unsigned n = 0;
    Rat b_exact;
    double b0 = 0.0;
    Family family = Family::MinusY;
    XYPoly P;
    XYPoly Q;

    std::array<Real, 2> field(Real x, Real y) const { return {p_(x, y), q_(x, y)}; }

    friend NumericSystem specialize_system(const LVSystem& system, const Rat& b0);

private:
    WideXY p_;
    WideXY q_;
};

NumericSystem specialize_system(const LVSystem& system, const Rat& b0);

/// The y with F(x0, y) = 0 at b = b0. F is linear in y, F = S(x)*y + T(x).
/// Throws DegeneratePoint when |S(x0)| is below the singular threshold.
Real solve_on_curve(const InvariantCurve& curve, const Rat& b0, Real x0, const GuardConfig& guards = {});

/// States are kept in binary128: near the node (1, n+b) the first integral is
/// ill-conditioned enough that double rounding of the state alone shows up
/// as ~1e-5 drift in log H.
struct Trajectory {
    std::vector<Real> times;
    std::vector<std::array<Real, 2>> states;
    double step = 0.0;
    std::string method = "rk4";
    bool blowup = false;
    std::string blowup_reason;
};

/// Classical fixed-step RK4 from t = 0 to t_end. Stops early, keeping the
/// samples so far and setting `blowup`, when the state leaves the guard box
/// or turns non-finite. Throws std::invalid_argument for h <= 0, t_end <= 0
/// or non-finite initial data.
Trajectory integrate(const NumericSystem& sys, Real x0, Real y0, double t_end, double h,
                     const GuardConfig& guards = {});

struct ConservationReport {
    double max_abs_F_residual = 0.0;  // normalized by the largest |coefficient| of F(b0)
    double max_logH_drift = 0.0;
    bool degenerate = false;
    std::vector<std::string> reasons;
};

struct AuditSeries {
    std::vector<Real> F_residual;  // signed, normalized
    std::vector<Real> logH;        // NaN where a factor is singular
};

struct AuditResult {
    ConservationReport report;
    AuditSeries series;
};

AuditResult audit_detailed(const InvariantCurve& curve, const FirstIntegral& integral, const Trajectory& traj,
                           const NumericSystem& sys, const GuardConfig& guards = {});

ConservationReport audit(const InvariantCurve& curve, const FirstIntegral& integral, const Trajectory& traj,
                         const NumericSystem& sys, const GuardConfig& guards = {});

/// Roots of (b+1)_n: -1, -2, ..., -n.
std::vector<Rat> degenerate_b_values(unsigned n);

bool is_degenerate_b(unsigned n, const Rat& b0);

}  // namespace dwb

#endif  // DWB_DYNAMICS_HPP
