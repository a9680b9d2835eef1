// Sparse bivariate polynomials in (x, y) over Q[b].
#ifndef DWB_POLY2_HPP
#define DWB_POLY2_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dwb/exact.hpp"
#include "dwb/real.hpp"

namespace dwb {

/// Exponent pair x^i y^j.
struct Monomial {
    std::uint32_t i = 0;
    std::uint32_t j = 0;

    std::uint32_t degree() const { return i + j; }
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded lexicographic order, descending, x before y:
/// x^2, x*y, y^2, x, y, 1.
struct GrlexDescending {
    bool operator()(const Monomial& a, const Monomial& b) const {
        if (a.degree() != b.degree()) return a.degree() > b.degree();
        return a.i > b.i;
    }
};

enum class Var { X, Y };

/// Raised when a numeric evaluation meets a coefficient that still depends on b.
class NotSpecialized : public std::domain_error {
public:
    explicit NotSpecialized(const std::string& what) : std::domain_error(what) {}
};

class XYPoly {
public:
    using Terms = std::map<Monomial, BPoly, GrlexDescending>;

    XYPoly() = default;
    XYPoly(const BPoly& c);  // NOLINT(google-explicit-constructor)
    XYPoly(const Rat& c) : XYPoly(BPoly(c)) {}  // NOLINT(google-explicit-constructor)
    XYPoly(long c) : XYPoly(BPoly(c)) {}        // NOLINT(google-explicit-constructor)
    XYPoly(int c) : XYPoly(BPoly(c)) {}         // NOLINT(google-explicit-constructor)

    static XYPoly x();
    static XYPoly y();
    static XYPoly term(const BPoly& c, std::uint32_t i, std::uint32_t j);

    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    /// -1 for the zero polynomial.
    int total_degree() const;
    int degree_in(Var v) const;
    BPoly coeff(std::uint32_t i, std::uint32_t j) const;
    /// True when every coefficient is a constant in b.
    bool is_b_free() const;

    /// Coefficient of y^j as a polynomial in x alone.
    XYPoly y_coefficient(std::uint32_t j) const;

    XYPoly operator-() const;
    XYPoly& operator+=(const XYPoly& o);
    XYPoly& operator-=(const XYPoly& o);
    XYPoly& operator*=(const BPoly& s);

    friend XYPoly operator+(XYPoly a, const XYPoly& b) { return a += b; }
    friend XYPoly operator-(XYPoly a, const XYPoly& b) { return a -= b; }
    friend XYPoly operator*(const XYPoly& a, const XYPoly& b);
    friend XYPoly operator*(XYPoly a, const BPoly& s) { return a *= s; }
    friend XYPoly operator*(const BPoly& s, XYPoly a) { return a *= s; }
    friend XYPoly operator*(XYPoly a, const Rat& s) { return a *= BPoly(s); }
    friend XYPoly operator*(const Rat& s, XYPoly a) { return a *= BPoly(s); }

    friend bool operator==(const XYPoly&, const XYPoly&) = default;

    /// Canonical rendering: terms in descending grlex order joined by " + ",
    /// each written "(coef)*monomial" with a unit coefficient omitted, e.g.
    /// "(b^2+3*b+2)*x^2 + (-(b+2))*x*y + y".
    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const XYPoly& p) { return os << p.str(); }

private:
    void add_term(const Monomial& m, const BPoly& c);
    Terms t_;
};

XYPoly partial(const XYPoly& p, Var v);

/// P*F_x + Q*F_y.
XYPoly lie_derivative(const XYPoly& F, const XYPoly& P, const XYPoly& Q);

/// Evaluates every coefficient at b = b0 and drops the terms that vanish.
XYPoly specialize_b(const XYPoly& p, const Rat& b0);

/// p(x, -y).
XYPoly reflect_y(const XYPoly& p);

/// Largest |coefficient| of a b-free polynomial, as a double. Throws
/// NotSpecialized otherwise.
double max_abs_coefficient(const XYPoly& p);

/// Human form for b-free polynomials of total degree <= 1, constant first:
/// "2 - 2*x - y". Throws std::domain_error for anything else.
std::string render_affine(const XYPoly& p);

/// Evaluator for a b-free XYPoly: Horner in x for every power of y, then
/// Horner in y. T is double or Real.
template <class T>
class BasicNumericXY {
public:
    BasicNumericXY() = default;
    /// Throws NotSpecialized if p still depends on b.
    explicit BasicNumericXY(const XYPoly& p) {
        if (!p.is_b_free()) throw NotSpecialized("polynomial still depends on b: " + p.str());
        for (const auto& [m, c] : p.terms()) {
            if (rows_.size() <= m.j) rows_.resize(m.j + 1);
            auto& row = rows_[m.j];
            if (row.size() <= m.i) row.resize(m.i + 1, T(0));
            row[m.i] = rat_to<T>(c.constant());
        }
    }

    T operator()(T x, T y) const {
        T acc = 0;
        for (auto rj = rows_.rbegin(); rj != rows_.rend(); ++rj) {
            T row = 0;
            for (auto ci = rj->rbegin(); ci != rj->rend(); ++ci) row = row * x + *ci;
            acc = acc * y + row;
        }
        return acc;
    }

private:
    // rows_[j][i] = coefficient of x^i y^j
    std::vector<std::vector<T>> rows_;
};

using NumericXY = BasicNumericXY<double>;
using WideXY = BasicNumericXY<Real>;

/// Throws NotSpecialized when p is not b-free.
double eval_xy(const XYPoly& p, double x0, double y0);

}  // namespace dwb

#endif  // DWB_POLY2_HPP
