// The two Lotka-Volterra families x' = x(1-x), y' = y(n + b*x -+ y) and
// their explicit degree-n invariant curves.
#ifndef DWB_LVFAMILY_HPP
#define DWB_LVFAMILY_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dwb/poly2.hpp"

namespace dwb {

/// Sign of the y^2 term in the second equation.
enum class Family { MinusY, PlusY };

std::string_view to_string(Family f);
/// Accepts "minus"/"plus" (also "MinusY"/"PlusY").
std::optional<Family> parse_family(std::string_view text);

/// Raised for invalid orders (n = 0) or mismatched curve/system pairs.
class FamilyError : public std::invalid_argument {
public:
    explicit FamilyError(const std::string& what) : std::invalid_argument(what) {}
};

struct LVSystem {
    unsigned n = 0;
    Family family = Family::MinusY;
    XYPoly P;
    XYPoly Q;
};

struct InvariantCurve {
    XYPoly F;
    XYPoly K;
    unsigned n = 0;
    Family family = Family::MinusY;
};

/// P = x - x^2, Q = n*y + b*x*y -+ y^2. Throws FamilyError for n = 0.
LVSystem build_system(unsigned n, Family family);

/// F = s*y*(n-1)! * sum_{v<n} (-1)^(n+v) (n+b-v+1)_v x^v / v! + (b+1)_n x^n,
/// s = +1 for MinusY and -1 for PlusY; K = n - n*x -+ y.
/// Throws FamilyError for n = 0.
InvariantCurve build_invariant_curve(unsigned n, Family family);

/// P*F_x + Q*F_y - K*F. Zero certifies invariance for every b at once.
XYPoly verify_invariance(const InvariantCurve& curve, const LVSystem& system);

/// (1-x)F_x - (n-nx-y)(b+1)_n x^(n-1) + (n+b)(F - (b+1)_n x^n) for the MinusY curve.
XYPoly check_lemma2(unsigned n);
/// Same identity evaluated on a caller-supplied F (used for fault injection).
XYPoly lemma2_residual(const XYPoly& F, unsigned n);

/// y*F_y - F + (b+1)_n x^n.
XYPoly check_euler_y(unsigned n, Family family);
XYPoly euler_y_residual(const XYPoly& F, unsigned n);

/// Rising-factorial identity, in exact rationals:
/// (c+1)_v/(v-1)! + (c)_(v+1)/v! - (c+v)(c+1)_v/v!. Requires v >= 1.
Rat pochhammer_lemma_residual(const Rat& c, unsigned v);

}  // namespace dwb

#endif  // DWB_LVFAMILY_HPP
