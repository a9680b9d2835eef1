// Darboux first integrals from invariant curves and their cofactors.
#ifndef DWB_DARBOUX_HPP
#define DWB_DARBOUX_HPP

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "dwb/lvfamily.hpp"

namespace dwb {

struct CurvePair {
    XYPoly f;
    XYPoly K;
};

/// f1 = x, f2 = y, f3 = 1 - x, f4 = the degree-n curve, with cofactors.
struct DarbouxQuadruple {
    std::array<CurvePair, 4> entries;
    unsigned n = 0;
    Family family = Family::MinusY;

    std::vector<XYPoly> cofactors() const;
};

/// Exponents (lambda_1, ..., lambda_k) over Q(b).
struct ExponentVector {
    std::vector<BRat> lambdas;

    bool is_zero() const;
    /// Scaled so that entry `index` is 1; if that entry is zero, the first
    /// nonzero entry is set to 1 instead.
    ExponentVector normalized_at(std::size_t index) const;
    /// "(0, 1, b+2, -1)"
    std::string str() const;

    friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
};

struct FirstIntegral {
    std::vector<std::pair<XYPoly, BRat>> factors;

    /// "(y)^(1) * (-x + 1)^(b+2) * (...)^(-1)"
    std::string str() const;
};

class NotInKernel : public std::invalid_argument {
public:
    explicit NotInKernel(const std::string& what) : std::invalid_argument(what) {}
};

DarbouxQuadruple standard_quadruple(unsigned n, Family family);

/// sum_i lambda_i K_i, collected per monomial over Q(b). Empty map means zero.
std::map<Monomial, BRat, GrlexDescending> cofactor_combination(std::span<const XYPoly> cofactors,
                                                               std::span<const BRat> lambdas);

/// Basis of { lambda : sum lambda_i K_i = 0 } by fraction-free elimination
/// over Q[b]. Each basis vector is normalized at `normalize_index` (lambda_2
/// by default). An empty result means no Darboux combination exists.
std::vector<ExponentVector> solve_cofactor_kernel(std::span<const XYPoly> cofactors,
                                                  std::size_t normalize_index = 1);
std::vector<ExponentVector> solve_cofactor_kernel(const DarbouxQuadruple& quadruple);

/// Throws NotInKernel when sum v_i K_i != 0.
FirstIntegral assemble_first_integral(const DarbouxQuadruple& quadruple, const ExponentVector& v);

struct IrrationalB {};
using BValue = std::variant<Rat, IrrationalB>;

struct RationalIntegral {
    mpz_class scale;                  // q: exponents = q * v(b0)
    std::vector<mpz_class> exponents;
};
struct NonRational {};
using Rationality = std::variant<RationalIntegral, NonRational>;

/// For b0 = p/q substitutes into v and clears denominators, giving integer
/// exponents; the irrational marker yields NonRational.
Rationality classify_rationality(const ExponentVector& v, const BValue& b0);

/// sum_i e_i K_i(b0) with integer exponents, computed exactly.
XYPoly specialized_combination(std::span<const XYPoly> cofactors, std::span<const mpz_class> exponents,
                               const Rat& b0);

}  // namespace dwb

#endif  // DWB_DARBOUX_HPP
