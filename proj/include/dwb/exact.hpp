// Exact scalar and parameter arithmetic: rationals, Q[b] and Q(b).
#ifndef DWB_EXACT_HPP
#define DWB_EXACT_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dwb {

/// Raised for division by an exact zero (Rat or BRat).
class DivisionByZero : public std::domain_error {
public:
    explicit DivisionByZero(const std::string& what) : std::domain_error(what) {}
};

/// Raised when a string does not parse as an exact rational.
class ParseError : public std::invalid_argument {
public:
    explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
class Rat {
public:
    Rat() = default;
    Rat(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
    Rat(int v) : v_(v) {}   // NOLINT(google-explicit-constructor)
    Rat(const mpz_class& num, const mpz_class& den);
    explicit Rat(const mpz_class& v) : v_(v) {}
    explicit Rat(const mpq_class& v);

    /// Parses "p", "p/q", or a decimal literal such as "-0.125" or "1e-3".
    /// Decimals are read exactly from their digits.
    static Rat parse(std::string_view text);
    /// Exact binary value of a finite double.
    static Rat from_double(double v);

    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }
    double to_double() const { return v_.get_d(); }
    std::string str() const { return v_.get_str(); }

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat& operator+=(const Rat& o);
    Rat& operator-=(const Rat& o);
    Rat& operator*=(const Rat& o);
    /// Throws DivisionByZero when o is zero.
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        const int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

private:
    mpq_class v_{0};
};

Rat abs(const Rat& r);

/// n! as an exact integer.
mpz_class factorial(unsigned n);

/// Univariate polynomial in the parameter b with rational coefficients.
/// coeffs()[i] is the coefficient of b^i; the highest stored coefficient is
/// nonzero and the zero polynomial has no coefficients.
class BPoly {
public:
    BPoly() = default;
    BPoly(const Rat& c);  // NOLINT(google-explicit-constructor)
    BPoly(long c) : BPoly(Rat(c)) {}  // NOLINT(google-explicit-constructor)
    BPoly(int c) : BPoly(Rat(c)) {}   // NOLINT(google-explicit-constructor)
    explicit BPoly(std::vector<Rat> coeffs);
    BPoly(std::initializer_list<Rat> coeffs) : BPoly(std::vector<Rat>(coeffs)) {}

    /// The indeterminate b.
    static BPoly b();

    const std::vector<Rat>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    Rat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rat(); }
    Rat leading() const { return c_.empty() ? Rat() : c_.back(); }
    /// Constant term value; only meaningful when is_constant().
    Rat constant() const { return coeff(0); }

    /// Horner evaluation at b = b0.
    Rat eval(const Rat& b0) const;

    BPoly operator-() const;
    BPoly& operator+=(const BPoly& o);
    BPoly& operator-=(const BPoly& o);
    BPoly& operator*=(const BPoly& o);
    BPoly& operator*=(const Rat& s);

    friend BPoly operator+(BPoly a, const BPoly& b) { return a += b; }
    friend BPoly operator-(BPoly a, const BPoly& b) { return a -= b; }
    friend BPoly operator*(const BPoly& a, const BPoly& b);
    friend BPoly operator*(BPoly a, const Rat& s) { return a *= s; }
    friend BPoly operator*(const Rat& s, BPoly a) { return a *= s; }

    friend bool operator==(const BPoly&, const BPoly&) = default;

    /// Canonical text, descending powers: "b^2+3*b+2", "1/2*b-1", "0".
    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const BPoly& p) { return os << p.str(); }

private:
    void trim();
    std::vector<Rat> c_;
};

/// Euclidean division over Q: a = q*d + r with deg r < deg d.
/// Throws DivisionByZero when d is zero.
struct BPolyDivMod {
    BPoly quotient;
    BPoly remainder;
};
BPolyDivMod divmod(const BPoly& a, const BPoly& d);

/// Exact quotient a/d; throws std::domain_error if d does not divide a.
BPoly divexact(const BPoly& a, const BPoly& d);

/// Rational content: the positive rational c with p = +-c * pp, where pp has
/// coprime integer coefficients and positive leading coefficient and the sign
/// is that of the leading coefficient of p.
Rat content(const BPoly& p);
BPoly primitive_part(const BPoly& p);

/// Monic gcd over Q (zero only when both inputs are zero). Uses the
/// primitive remainder sequence over Z.
BPoly gcd(const BPoly& a, const BPoly& b);

/// Rising factorial base (base+1) ... (base+count-1); count = 0 gives 1.
BPoly pochhammer(const BPoly& base, unsigned count);

/// Element of Q(b): num/den, reduced, with monic denominator.
class BRat {
public:
    BRat() : den_(1) {}
    BRat(const BPoly& p) : num_(p), den_(1) {}  // NOLINT(google-explicit-constructor)
    BRat(const Rat& r) : num_(r), den_(1) {}    // NOLINT(google-explicit-constructor)
    BRat(long c) : BRat(Rat(c)) {}              // NOLINT(google-explicit-constructor)
    BRat(int c) : BRat(Rat(c)) {}               // NOLINT(google-explicit-constructor)
    /// Throws DivisionByZero when den is zero.
    BRat(const BPoly& num, const BPoly& den);

    const BPoly& num() const { return num_; }
    const BPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    /// Value at b0. Throws DivisionByZero if b0 is a pole.
    Rat eval(const Rat& b0) const;

    BRat operator-() const;
    BRat& operator+=(const BRat& o);
    BRat& operator-=(const BRat& o);
    BRat& operator*=(const BRat& o);
    BRat& operator/=(const BRat& o);

    friend BRat operator+(BRat a, const BRat& b) { return a += b; }
    friend BRat operator-(BRat a, const BRat& b) { return a -= b; }
    friend BRat operator*(BRat a, const BRat& b) { return a *= b; }
    friend BRat operator/(BRat a, const BRat& b) { return a /= b; }

    friend bool operator==(const BRat&, const BRat&) = default;

    /// "b+2" for polynomials, "(b+1)/(b^2-2)" otherwise.
    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const BRat& r) { return os << r.str(); }

    /// Re-applies the canonical form to raw parts without a validity check on
    /// the stored state; exposed for idempotence testing.
    static BRat normalize(const BPoly& num, const BPoly& den) { return BRat(num, den); }

private:
    BPoly num_;
    BPoly den_;
};

}  // namespace dwb

#endif  // DWB_EXACT_HPP
