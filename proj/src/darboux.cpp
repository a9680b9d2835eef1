#include "dwb/darboux.hpp"

#include <algorithm>
#include <limits>

namespace dwb {

std::vector<XYPoly> DarbouxQuadruple::cofactors() const {
    std::vector<XYPoly> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.K);
    return out;
}

bool ExponentVector::is_zero() const {
    return std::all_of(lambdas.begin(), lambdas.end(), [](const BRat& l) { return l.is_zero(); });
}

ExponentVector ExponentVector::normalized_at(std::size_t index) const {
    if (is_zero()) return *this;
    std::size_t pick = index;
    if (pick >= lambdas.size() || lambdas[pick].is_zero()) {
        pick = static_cast<std::size_t>(
            std::find_if(lambdas.begin(), lambdas.end(), [](const BRat& l) { return !l.is_zero(); }) -
            lambdas.begin());
    }
    const BRat s = lambdas[pick];
    ExponentVector out;
    for (const auto& l : lambdas) out.lambdas.push_back(l / s);
    return out;
}

std::string ExponentVector::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (i) s += ", ";
        s += lambdas[i].str();
    }
    return s + ")";
}

std::string FirstIntegral::str() const {
    if (factors.empty()) return "1";
    std::string s;
    for (const auto& [f, e] : factors) {
        if (!s.empty()) s += " * ";
        s += "(" + f.str() + ")^(" + e.str() + ")";
    }
    return s;
}

DarbouxQuadruple standard_quadruple(unsigned n, Family family) {
    InvariantCurve curve = build_invariant_curve(n, family);
    const XYPoly x = XYPoly::x();
    const XYPoly y = XYPoly::y();
    DarbouxQuadruple q;
    q.n = n;
    q.family = family;
    // Cofactors of the coordinate lines are read off the vector field:
    // P = x*(1-x), Q = y*K2, and (1-x)' = -x*(1-x).
    const XYPoly k2 = XYPoly(static_cast<long>(n)) + XYPoly(BPoly::b()) * x + (family == Family::MinusY ? -y : y);
    q.entries[0] = {x, XYPoly(1) - x};
    q.entries[1] = {y, k2};
    q.entries[2] = {XYPoly(1) - x, -x};
    q.entries[3] = {std::move(curve.F), std::move(curve.K)};
    return q;
}

std::map<Monomial, BRat, GrlexDescending> cofactor_combination(std::span<const XYPoly> cofactors,
                                                               std::span<const BRat> lambdas) {
    if (cofactors.size() != lambdas.size())
        throw std::invalid_argument("cofactor/exponent count mismatch");
    std::map<Monomial, BRat, GrlexDescending> acc;
    for (std::size_t i = 0; i < cofactors.size(); ++i) {
        if (lambdas[i].is_zero()) continue;
        for (const auto& [m, c] : cofactors[i].terms()) {
            acc[m] += lambdas[i] * BRat(c);
            if (acc[m].is_zero()) acc.erase(m);
        }
    }
    return acc;
}

namespace {

using Row = std::vector<BPoly>;

// Divides a row by the gcd of its entries and by their common rational
// content, leaving coprime integer coefficients.
void make_primitive(Row& row) {
    BPoly g;
    for (const auto& e : row)
        if (!e.is_zero()) g = g.is_zero() ? e : gcd(g, e);
    if (g.is_zero()) return;
    if (g.degree() > 0)
        for (auto& e : row)
            if (!e.is_zero()) e = divexact(e, g);
    mpz_class num = 0;
    mpz_class den = 1;
    for (const auto& e : row) {
        if (e.is_zero()) continue;
        const Rat c = content(e);
        const mpz_class cn = c.numerator();
        const mpz_class cd = c.denominator();
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), cn.get_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), cd.get_mpz_t());
    }
    const Rat scale(den, num);
    for (auto& e : row) e *= scale;
}

}  // namespace

std::vector<ExponentVector> solve_cofactor_kernel(std::span<const XYPoly> cofactors, std::size_t normalize_index) {
    const std::size_t cols = cofactors.size();

    std::vector<Monomial> monomials;
    for (const auto& k : cofactors)
        for (const auto& [m, c] : k.terms())
            if (std::find(monomials.begin(), monomials.end(), m) == monomials.end()) monomials.push_back(m);
    std::sort(monomials.begin(), monomials.end(), GrlexDescending{});

    std::vector<Row> a(monomials.size(), Row(cols));
    for (std::size_t r = 0; r < monomials.size(); ++r)
        for (std::size_t c = 0; c < cols; ++c) a[r][c] = cofactors[c].coeff(monomials[r].i, monomials[r].j);

    std::vector<bool> row_used(a.size(), false);
    std::vector<std::optional<std::size_t>> pivot_row_of(cols);

    for (;;) {
        // Lowest b-degree pivot; ties go to the earlier column, then row.
        int best_deg = std::numeric_limits<int>::max();
        std::size_t pr = 0;
        std::size_t pc = 0;
        for (std::size_t c = 0; c < cols; ++c) {
            if (pivot_row_of[c]) continue;
            for (std::size_t r = 0; r < a.size(); ++r) {
                if (row_used[r] || a[r][c].is_zero()) continue;
                if (a[r][c].degree() < best_deg) {
                    best_deg = a[r][c].degree();
                    pr = r;
                    pc = c;
                }
            }
        }
        if (best_deg == std::numeric_limits<int>::max()) break;

        row_used[pr] = true;
        pivot_row_of[pc] = pr;
        make_primitive(a[pr]);
        const BPoly p = a[pr][pc];
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r == pr || a[r][pc].is_zero()) continue;
            const BPoly f = a[r][pc];
            for (std::size_t c = 0; c < cols; ++c) a[r][c] = p * a[r][c] - f * a[pr][c];
            make_primitive(a[r]);
        }
    }

    std::vector<ExponentVector> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (pivot_row_of[free]) continue;
        ExponentVector v;
        v.lambdas.assign(cols, BRat());
        v.lambdas[free] = BRat(1);
        for (std::size_t c = 0; c < cols; ++c) {
            if (!pivot_row_of[c]) continue;
            const Row& row = a[*pivot_row_of[c]];
            if (!row[free].is_zero()) v.lambdas[c] = -BRat(row[free], row[c]);
        }
        basis.push_back(v.normalized_at(normalize_index));
    }
    return basis;
}

std::vector<ExponentVector> solve_cofactor_kernel(const DarbouxQuadruple& quadruple) {
    const auto ks = quadruple.cofactors();
    return solve_cofactor_kernel(ks);
}

FirstIntegral assemble_first_integral(const DarbouxQuadruple& quadruple, const ExponentVector& v) {
    const auto ks = quadruple.cofactors();
    if (v.lambdas.size() != ks.size())
        throw NotInKernel("exponent vector has " + std::to_string(v.lambdas.size()) + " entries, expected " +
                          std::to_string(ks.size()));
    if (v.is_zero()) throw NotInKernel("the zero exponent vector gives no first integral");
    if (!cofactor_combination(ks, v.lambdas).empty())
        throw NotInKernel("sum of lambda_i K_i is not zero for " + v.str());
    FirstIntegral h;
    for (std::size_t i = 0; i < ks.size(); ++i)
        if (!v.lambdas[i].is_zero()) h.factors.emplace_back(quadruple.entries[i].f, v.lambdas[i]);
    return h;
}

Rationality classify_rationality(const ExponentVector& v, const BValue& b0) {
    if (std::holds_alternative<IrrationalB>(b0)) return NonRational{};
    const Rat& b = std::get<Rat>(b0);
    std::vector<Rat> values;
    mpz_class q = 1;
    for (const auto& l : v.lambdas) {
        values.push_back(l.eval(b));
        const mpz_class d = values.back().denominator();
        mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), d.get_mpz_t());
    }
    RationalIntegral out;
    out.scale = q;
    for (const auto& val : values) out.exponents.push_back((val * Rat(q)).numerator());
    return out;
}

XYPoly specialized_combination(std::span<const XYPoly> cofactors, std::span<const mpz_class> exponents,
                               const Rat& b0) {
    if (cofactors.size() != exponents.size()) throw std::invalid_argument("cofactor/exponent count mismatch");
    XYPoly sum;
    for (std::size_t i = 0; i < cofactors.size(); ++i)
        sum += specialize_b(cofactors[i], b0) * BPoly(Rat(exponents[i]));
    return sum;
}

}  // namespace dwb
