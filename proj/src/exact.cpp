#include "dwb/exact.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <utility>

namespace dwb {

// ---------------------------------------------------------------- Rat

Rat::Rat(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rat::Rat(const mpq_class& v) : v_(v) { v_.canonicalize(); }

Rat Rat::parse(std::string_view text) {
    std::string s(text);
    auto fail = [&] { return ParseError("not an exact rational: '" + s + "'"); };
    if (s.empty()) throw fail();

    const auto slash = s.find('/');
    if (slash != std::string::npos) {
        const std::string a = s.substr(0, slash);
        const std::string b = s.substr(slash + 1);
        auto is_int = [](const std::string& t) {
            std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
            if (i >= t.size()) return false;
            return std::all_of(t.begin() + static_cast<std::ptrdiff_t>(i), t.end(),
                               [](unsigned char c) { return std::isdigit(c) != 0; });
        };
        if (!is_int(a) || !is_int(b)) throw fail();
        mpz_class num(a[0] == '+' ? a.substr(1) : a, 10);
        mpz_class den(b[0] == '+' ? b.substr(1) : b, 10);
        if (den == 0) throw DivisionByZero("rational with zero denominator: '" + s + "'");
        return Rat(num, den);
    }

    // [sign] digits [. digits] [(e|E) [sign] digits]
    std::size_t i = 0;
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') {
        negative = s[i] == '-';
        ++i;
    }
    std::string digits;
    long frac_len = 0;
    bool seen_digit = false;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        digits += s[i++];
        seen_digit = true;
    }
    if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            digits += s[i++];
            ++frac_len;
            seen_digit = true;
        }
    }
    if (!seen_digit) throw fail();
    long exponent = 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            eneg = s[i] == '-';
            ++i;
        }
        if (i >= s.size()) throw fail();
        std::string ed;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ed += s[i++];
        if (ed.empty() || ed.size() > 6) throw fail();
        exponent = std::stol(ed);
        if (eneg) exponent = -exponent;
    }
    if (i != s.size()) throw fail();

    mpz_class num(digits, 10);
    if (negative) num = -num;
    const long scale = exponent - frac_len;
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    return scale < 0 ? Rat(num, pow10) : Rat(mpz_class(num * pow10));
}

Rat Rat::from_double(double v) {
    if (!std::isfinite(v)) throw std::domain_error("non-finite value has no exact rational");
    return Rat(mpq_class(v));
}

Rat& Rat::operator+=(const Rat& o) {
    v_ += o.v_;
    return *this;
}
Rat& Rat::operator-=(const Rat& o) {
    v_ -= o.v_;
    return *this;
}
Rat& Rat::operator*=(const Rat& o) {
    v_ *= o.v_;
    return *this;
}
Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw DivisionByZero("rational division by zero");
    v_ /= o.v_;
    return *this;
}

Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }

mpz_class factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

// ---------------------------------------------------------------- BPoly

BPoly::BPoly(const Rat& c) {
    if (!c.is_zero()) c_.push_back(c);
}

BPoly::BPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

BPoly BPoly::b() { return BPoly({Rat(0), Rat(1)}); }

void BPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rat BPoly::eval(const Rat& b0) const {
    Rat acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * b0 + *it;
    return acc;
}

BPoly BPoly::operator-() const {
    BPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

BPoly& BPoly::operator+=(const BPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

BPoly& BPoly::operator-=(const BPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

BPoly operator*(const BPoly& a, const BPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rat> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return BPoly(std::move(out));
}

BPoly& BPoly::operator*=(const BPoly& o) { return *this = *this * o; }

BPoly& BPoly::operator*=(const Rat& s) {
    if (s.is_zero()) {
        c_.clear();
        return *this;
    }
    for (auto& c : c_) c *= s;
    return *this;
}

std::string BPoly::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
        const Rat& c = c_[k];
        if (c.is_zero()) continue;
        const Rat mag = abs(c);
        if (c.sign() < 0) os << '-';
        else if (!first) os << '+';
        if (k == 0) {
            os << mag;
        } else {
            if (mag != Rat(1)) os << mag << '*';
            os << 'b';
            if (k > 1) os << '^' << k;
        }
        first = false;
    }
    return os.str();
}

BPolyDivMod divmod(const BPoly& a, const BPoly& d) {
    if (d.is_zero()) throw DivisionByZero("polynomial division by zero");
    std::vector<Rat> r = a.coeffs();
    const auto dd = static_cast<std::size_t>(d.degree());
    if (r.size() <= dd) return {BPoly(), a};
    std::vector<Rat> q(r.size() - dd);
    const Rat lead = d.leading();
    for (std::size_t k = r.size(); k-- > dd;) {
        if (r[k].is_zero()) continue;
        const Rat f = r[k] / lead;
        q[k - dd] = f;
        for (std::size_t j = 0; j <= dd; ++j) r[k - dd + j] -= f * d.coeffs()[j];
    }
    return {BPoly(std::move(q)), BPoly(std::move(r))};
}

BPoly divexact(const BPoly& a, const BPoly& d) {
    auto [q, r] = divmod(a, d);
    if (!r.is_zero()) throw std::domain_error("divexact: " + d.str() + " does not divide " + a.str());
    return q;
}

Rat content(const BPoly& p) {
    if (p.is_zero()) return Rat();
    mpz_class g = 0;
    mpz_class l = 1;
    for (const auto& c : p.coeffs()) {
        if (c.is_zero()) continue;
        const mpz_class num = c.numerator();
        const mpz_class den = c.denominator();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
    }
    return Rat(g, l);
}

BPoly primitive_part(const BPoly& p) {
    if (p.is_zero()) return p;
    Rat c = content(p);
    if (p.leading().sign() < 0) c = -c;
    BPoly out = p;
    out *= Rat(1) / c;
    return out;
}

namespace {

BPoly primitive_prem(const BPoly& a, const BPoly& d) {
    // Same primitive part as the pseudo-remainder prem(a, d) over Z.
    return primitive_part(divmod(a, d).remainder);
}

}  // namespace

BPoly gcd(const BPoly& a, const BPoly& b) {
    if (a.is_zero() && b.is_zero()) return {};
    BPoly u = primitive_part(a);
    BPoly v = primitive_part(b);
    if (u.degree() < v.degree()) std::swap(u, v);
    while (!v.is_zero()) {
        BPoly r = primitive_prem(u, v);
        u = std::move(v);
        v = std::move(r);
    }
    return u * (Rat(1) / u.leading());
}

BPoly pochhammer(const BPoly& base, unsigned count) {
    BPoly acc(1);
    for (unsigned k = 0; k < count; ++k) acc *= base + BPoly(Rat(static_cast<long>(k)));
    return acc;
}

// ---------------------------------------------------------------- BRat

BRat::BRat(const BPoly& num, const BPoly& den) {
    if (den.is_zero()) throw DivisionByZero("rational function with zero denominator");
    if (num.is_zero()) {
        den_ = BPoly(1);
        return;
    }
    const BPoly g = gcd(num, den);
    BPoly n = divexact(num, g);
    BPoly d = divexact(den, g);
    const Rat lead = d.leading();
    n *= Rat(1) / lead;
    d *= Rat(1) / lead;
    num_ = std::move(n);
    den_ = std::move(d);
}

Rat BRat::eval(const Rat& b0) const {
    const Rat d = den_.eval(b0);
    if (d.is_zero()) throw DivisionByZero("b = " + b0.str() + " is a pole of " + str());
    return num_.eval(b0) / d;
}

BRat BRat::operator-() const {
    BRat r = *this;
    r.num_ = -r.num_;
    return r;
}

BRat& BRat::operator+=(const BRat& o) {
    if (den_ == o.den_) return *this = BRat(num_ + o.num_, den_);
    return *this = BRat(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

BRat& BRat::operator-=(const BRat& o) { return *this += -o; }

BRat& BRat::operator*=(const BRat& o) {
    return *this = BRat(num_ * o.num_, den_ * o.den_);
}

BRat& BRat::operator/=(const BRat& o) {
    if (o.is_zero()) throw DivisionByZero("division by the zero rational function");
    return *this = BRat(num_ * o.den_, den_ * o.num_);
}

std::string BRat::str() const {
    if (is_polynomial()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

}  // namespace dwb
