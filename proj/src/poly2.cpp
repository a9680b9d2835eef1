#include "dwb/poly2.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dwb {

namespace {

std::string render_monomial(const Monomial& m) {
    std::string s;
    auto put = [&s](char v, std::uint32_t e) {
        if (e == 0) return;
        if (!s.empty()) s += '*';
        s += v;
        if (e > 1) s += '^' + std::to_string(e);
    };
    put('x', m.i);
    put('y', m.j);
    return s;
}

std::string render_coefficient(const BPoly& c) {
    if (c.is_constant() || c.leading().sign() > 0) return c.str();
    return "-(" + (-c).str() + ")";
}

}  // namespace

XYPoly::XYPoly(const BPoly& c) {
    if (!c.is_zero()) t_.emplace(Monomial{0, 0}, c);
}

XYPoly XYPoly::x() { return term(BPoly(1), 1, 0); }
XYPoly XYPoly::y() { return term(BPoly(1), 0, 1); }

XYPoly XYPoly::term(const BPoly& c, std::uint32_t i, std::uint32_t j) {
    XYPoly p;
    if (!c.is_zero()) p.t_.emplace(Monomial{i, j}, c);
    return p;
}

void XYPoly::add_term(const Monomial& m, const BPoly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = t_.try_emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
}

int XYPoly::total_degree() const {
    // Grlex descending puts a top-degree monomial first.
    return t_.empty() ? -1 : static_cast<int>(t_.begin()->first.degree());
}

int XYPoly::degree_in(Var v) const {
    int d = -1;
    for (const auto& [m, c] : t_) d = std::max(d, static_cast<int>(v == Var::X ? m.i : m.j));
    return d;
}

BPoly XYPoly::coeff(std::uint32_t i, std::uint32_t j) const {
    auto it = t_.find(Monomial{i, j});
    return it == t_.end() ? BPoly() : it->second;
}

bool XYPoly::is_b_free() const {
    return std::all_of(t_.begin(), t_.end(), [](const auto& kv) { return kv.second.is_constant(); });
}

XYPoly XYPoly::y_coefficient(std::uint32_t j) const {
    XYPoly out;
    for (const auto& [m, c] : t_)
        if (m.j == j) out.t_.emplace(Monomial{m.i, 0}, c);
    return out;
}

XYPoly XYPoly::operator-() const {
    XYPoly r = *this;
    for (auto& [m, c] : r.t_) c = -c;
    return r;
}

XYPoly& XYPoly::operator+=(const XYPoly& o) {
    for (const auto& [m, c] : o.t_) add_term(m, c);
    return *this;
}

XYPoly& XYPoly::operator-=(const XYPoly& o) {
    for (const auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
}

XYPoly& XYPoly::operator*=(const BPoly& s) {
    if (s.is_zero()) {
        t_.clear();
        return *this;
    }
    for (auto& [m, c] : t_) c *= s;
    return *this;
}

XYPoly operator*(const XYPoly& a, const XYPoly& b) {
    XYPoly out;
    for (const auto& [ma, ca] : a.t_)
        for (const auto& [mb, cb] : b.t_) out.add_term(Monomial{ma.i + mb.i, ma.j + mb.j}, ca * cb);
    return out;
}

std::string XYPoly::str() const {
    if (t_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : t_) {
        if (!out.empty()) out += " + ";
        const std::string mono = render_monomial(m);
        if (mono.empty()) {
            out += "(" + render_coefficient(c) + ")";
        } else if (c == BPoly(1)) {
            out += mono;
        } else {
            out += "(" + render_coefficient(c) + ")*" + mono;
        }
    }
    return out;
}

XYPoly partial(const XYPoly& p, Var v) {
    XYPoly out;
    for (const auto& [m, c] : p.terms()) {
        const std::uint32_t e = v == Var::X ? m.i : m.j;
        if (e == 0) continue;
        const Monomial dm = v == Var::X ? Monomial{m.i - 1, m.j} : Monomial{m.i, m.j - 1};
        out += XYPoly::term(c * Rat(static_cast<long>(e)), dm.i, dm.j);
    }
    return out;
}

XYPoly lie_derivative(const XYPoly& F, const XYPoly& P, const XYPoly& Q) {
    return P * partial(F, Var::X) + Q * partial(F, Var::Y);
}

XYPoly specialize_b(const XYPoly& p, const Rat& b0) {
    XYPoly out;
    for (const auto& [m, c] : p.terms()) out += XYPoly::term(BPoly(c.eval(b0)), m.i, m.j);
    return out;
}

XYPoly reflect_y(const XYPoly& p) {
    XYPoly out;
    for (const auto& [m, c] : p.terms()) out += XYPoly::term(m.j % 2 ? -c : c, m.i, m.j);
    return out;
}

double max_abs_coefficient(const XYPoly& p) {
    if (!p.is_b_free()) throw NotSpecialized("polynomial still depends on b: " + p.str());
    double best = 0.0;
    for (const auto& [m, c] : p.terms()) best = std::max(best, std::fabs(c.constant().to_double()));
    return best;
}

std::string render_affine(const XYPoly& p) {
    if (!p.is_b_free() || p.total_degree() > 1)
        throw std::domain_error("not an affine b-free polynomial: " + p.str());
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    const std::pair<Monomial, const char*> order[] = {{{0, 0}, ""}, {{1, 0}, "x"}, {{0, 1}, "y"}};
    for (const auto& [m, name] : order) {
        const Rat c = p.coeff(m.i, m.j).constant();
        if (c.is_zero()) continue;
        const Rat mag = abs(c);
        if (first) {
            if (c.sign() < 0) os << '-';
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        if (*name == '\0') {
            os << mag;
        } else {
            if (mag != Rat(1)) os << mag << '*';
            os << name;
        }
        first = false;
    }
    return os.str();
}

double eval_xy(const XYPoly& p, double x0, double y0) { return NumericXY(p)(x0, y0); }

}  // namespace dwb
