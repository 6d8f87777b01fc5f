#include "fermat3/bipoly.hpp"

#include <json.hpp>

#include <tuple>

namespace fermat3 {

BiPoly BiPoly::from_monomials(const std::vector<std::tuple<int, int, BigRat>>& terms)
{
    BiPoly r;
    for (const auto& [i, j, v] : terms) r.set(i, j, r.coeff(i, j) + v);
    r.trim();
    return r;
}

int BiPoly::degx() const { return static_cast<int>(c.size()) - 1; }

int BiPoly::degy() const
{
    int d = -1;
    for (const auto& row : c) d = std::max(d, static_cast<int>(row.size()) - 1);
    return d;
}

bool BiPoly::is_zero() const
{
    for (const auto& row : c)
        for (const auto& q : row)
            if (q != 0) return false;
    return true;
}

BigRat BiPoly::coeff(int i, int j) const
{
    if (i < 0 || j < 0) return BigRat(0);
    if (static_cast<std::size_t>(i) >= c.size()) return BigRat(0);
    if (static_cast<std::size_t>(j) >= c[i].size()) return BigRat(0);
    return c[i][j];
}

void BiPoly::set(int i, int j, const BigRat& v)
{
    if (static_cast<std::size_t>(i) >= c.size()) c.resize(i + 1);
    if (static_cast<std::size_t>(j) >= c[i].size()) c[i].resize(j + 1, BigRat(0));
    c[i][j] = v;
}

void BiPoly::trim()
{
    for (auto& row : c)
        while (!row.empty() && row.back() == 0) row.pop_back();
    while (!c.empty() && c.back().empty()) c.pop_back();
}

DensePoly BiPoly::eval_x(const BigRat& a) const
{
    std::vector<BigRat> out(static_cast<std::size_t>(std::max(degy(), -1) + 1), BigRat(0));
    BigRat xp(1);
    for (const auto& row : c) {
        for (std::size_t j = 0; j < row.size(); ++j) out[j] += row[j] * xp;
        xp *= a;
    }
    return DensePoly(std::move(out), "y");
}

DensePoly BiPoly::eval_y(const BigRat& b) const
{
    std::vector<BigRat> out(c.size(), BigRat(0));
    for (std::size_t i = 0; i < c.size(); ++i) {
        BigRat yp(1);
        for (std::size_t j = 0; j < c[i].size(); ++j) {
            out[i] += c[i][j] * yp;
            yp *= b;
        }
    }
    return DensePoly(std::move(out), "x");
}

BigRat BiPoly::eval(const BigRat& x, const BigRat& y) const { return eval_y(y)(x); }

DensePoly BiPoly::x_coeff(int k) const
{
    if (k < 0 || static_cast<std::size_t>(k) >= c.size()) return DensePoly({}, "y");
    return DensePoly(c[k], "y");
}

DensePoly BiPoly::y_coeff(int k) const
{
    std::vector<BigRat> out(c.size(), BigRat(0));
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = coeff(static_cast<int>(i), k);
    return DensePoly(std::move(out), "x");
}

bool BiPoly::operator==(const BiPoly& o) const
{
    int dx = std::max(degx(), o.degx()), dy = std::max(degy(), o.degy());
    for (int i = 0; i <= dx; ++i)
        for (int j = 0; j <= dy; ++j)
            if (coeff(i, j) != o.coeff(i, j)) return false;
    return true;
}

BiPoly operator+(const BiPoly& a, const BiPoly& b)
{
    BiPoly r = a;
    for (int i = 0; i <= b.degx(); ++i)
        for (int j = 0; j <= b.degy(); ++j)
            if (b.coeff(i, j) != 0) r.set(i, j, r.coeff(i, j) + b.coeff(i, j));
    r.trim();
    return r;
}

BiPoly operator-(const BiPoly& a, const BiPoly& b)
{
    BiPoly r = a;
    for (int i = 0; i <= b.degx(); ++i)
        for (int j = 0; j <= b.degy(); ++j)
            if (b.coeff(i, j) != 0) r.set(i, j, r.coeff(i, j) - b.coeff(i, j));
    r.trim();
    return r;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b)
{
    BiPoly r;
    for (int i = 0; i <= a.degx(); ++i)
        for (int j = 0; j <= a.degy(); ++j) {
            BigRat av = a.coeff(i, j);
            if (av == 0) continue;
            for (int k = 0; k <= b.degx(); ++k)
                for (int l = 0; l <= b.degy(); ++l) {
                    BigRat bv = b.coeff(k, l);
                    if (bv == 0) continue;
                    r.set(i + k, j + l, r.coeff(i + k, j + l) + av * bv);
                }
        }
    r.trim();
    return r;
}

BiPoly operator*(const BigRat& s, const BiPoly& a)
{
    BiPoly r = a;
    for (auto& row : r.c)
        for (auto& q : row) q *= s;
    r.trim();
    return r;
}

BiPoly g_relation()
{
    // (y^2+3y+9) x^3 - (y+6)^3
    return BiPoly::from_monomials({
        {3, 2, BigRat(1)},
        {3, 1, BigRat(3)},
        {3, 0, BigRat(9)},
        {0, 3, BigRat(-1)},
        {0, 2, BigRat(-18)},
        {0, 1, BigRat(-108)},
        {0, 0, BigRat(-216)},
    });
}

std::string bipoly_to_json(const BiPoly& a)
{
    nlohmann::ordered_json j;
    j["vars"] = std::vector<std::string>{"x", "y"};
    std::vector<std::vector<std::string>> grid;
    for (int i = 0; i <= a.degx(); ++i) {
        std::vector<std::string> row;
        for (int k = 0; k <= a.degy(); ++k) row.push_back(to_decimal(a.coeff(i, k)));
        grid.push_back(std::move(row));
    }
    j["coeffs"] = grid;
    return j.dump();
}

// --- Eisenstein layer -------------------------------------------------------

Eis operator+(const Eis& a, const Eis& b) { return Eis(a.u + b.u, a.v + b.v); }
Eis operator-(const Eis& a, const Eis& b) { return Eis(a.u - b.u, a.v - b.v); }
Eis operator*(const Eis& a, const Eis& b)
{
    // (u1 + v1 w)(u2 + v2 w), w^2 = -1 - w
    return Eis(a.u * b.u - a.v * b.v, a.u * b.v + a.v * b.u - a.v * b.v);
}

EisPoly EisPoly::from_monomials(const std::vector<std::tuple<int, int, Eis>>& terms)
{
    EisPoly r;
    for (const auto& [i, j, v] : terms) r.set(i, j, r.coeff(i, j) + v);
    r.trim();
    return r;
}

Eis EisPoly::coeff(int i, int j) const
{
    if (i < 0 || j < 0) return Eis();
    if (static_cast<std::size_t>(i) >= c.size()) return Eis();
    if (static_cast<std::size_t>(j) >= c[i].size()) return Eis();
    return c[i][j];
}

void EisPoly::set(int i, int j, const Eis& v)
{
    if (static_cast<std::size_t>(i) >= c.size()) c.resize(i + 1);
    if (static_cast<std::size_t>(j) >= c[i].size()) c[i].resize(j + 1, Eis());
    c[i][j] = v;
}

void EisPoly::trim()
{
    for (auto& row : c)
        while (!row.empty() && row.back() == Eis()) row.pop_back();
    while (!c.empty() && c.back().empty()) c.pop_back();
}

std::vector<Eis> EisPoly::eval_y(const Eis& b) const
{
    std::vector<Eis> out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        Eis acc, yp(1, 0);
        for (std::size_t j = 0; j < c[i].size(); ++j) {
            acc = acc + c[i][j] * yp;
            yp = yp * b;
        }
        out[i] = acc;
    }
    return out;
}

bool EisPoly::operator==(const EisPoly& o) const
{
    int dx = std::max<int>(c.size(), o.c.size());
    for (int i = 0; i < dx; ++i) {
        std::size_t w = std::max(i < (int)c.size() ? c[i].size() : 0,
                                 i < (int)o.c.size() ? o.c[i].size() : 0);
        for (std::size_t j = 0; j < w; ++j)
            if (!(coeff(i, j) == o.coeff(i, j))) return false;
    }
    return true;
}

EisPoly operator+(const EisPoly& a, const EisPoly& b)
{
    EisPoly r = a;
    for (int i = 0; i < (int)b.c.size(); ++i)
        for (int j = 0; j < (int)b.c[i].size(); ++j)
            r.set(i, j, r.coeff(i, j) + b.c[i][j]);
    r.trim();
    return r;
}

EisPoly operator-(const EisPoly& a, const EisPoly& b)
{
    EisPoly r = a;
    for (int i = 0; i < (int)b.c.size(); ++i)
        for (int j = 0; j < (int)b.c[i].size(); ++j)
            r.set(i, j, r.coeff(i, j) - b.c[i][j]);
    r.trim();
    return r;
}

EisPoly operator*(const EisPoly& a, const EisPoly& b)
{
    EisPoly r;
    for (int i = 0; i < (int)a.c.size(); ++i)
        for (int j = 0; j < (int)a.c[i].size(); ++j) {
            if (a.c[i][j] == Eis()) continue;
            for (int k = 0; k < (int)b.c.size(); ++k)
                for (int l = 0; l < (int)b.c[k].size(); ++l) {
                    if (b.c[k][l] == Eis()) continue;
                    r.set(i + k, j + l, r.coeff(i + k, j + l) + a.c[i][j] * b.c[k][l]);
                }
        }
    r.trim();
    return r;
}

EisPoly operator*(const Eis& s, const EisPoly& a)
{
    EisPoly r = a;
    for (auto& row : r.c)
        for (auto& q : row) q = s * q;
    r.trim();
    return r;
}

// g(x, c1*y + c0) as an EisPoly in (x, y), for Eisenstein constants c1, c0.
static EisPoly g_at_linear_y(const Eis& c1, const Eis& c0)
{
    EisPoly y = EisPoly::from_monomials({{0, 1, c1}, {0, 0, c0}});
    EisPoly one = EisPoly::from_monomials({{0, 0, Eis(1, 0)}});
    EisPoly x3 = EisPoly::from_monomials({{3, 0, Eis(1, 0)}});
    EisPoly ypl6 = y + Eis(6, 0) * one;
    EisPoly quad = y * y + Eis(3, 0) * y + Eis(9, 0) * one;
    return quad * x3 - ypl6 * ypl6 * ypl6;
}

EisPoly lemma51_lhs()
{
    // 81*sqrt(-3)*g(x, w^2 y); w^2 = -1 - w
    Eis w2(-1, -1);
    return (Eis(81, 0) * Eis::sqrt_minus3()) * g_at_linear_y(w2, Eis(0, 0));
}

EisPoly lemma51_rhs()
{
    // (y-3)^3 g(x, w*s1(y)) with s1(y) = 3(y+6)/(y-3):
    //   [ 9w^2 (y+6)^2 (y-3) + 9w (y+6)(y-3)^2 + 9(y-3)^3 ] x^3
    //   - ( 3w(y+6) + 6(y-3) )^3
    Eis w(0, 1), w2(-1, -1);
    EisPoly one = EisPoly::from_monomials({{0, 0, Eis(1, 0)}});
    EisPoly x3 = EisPoly::from_monomials({{3, 0, Eis(1, 0)}});
    EisPoly yp6 = EisPoly::from_monomials({{0, 1, Eis(1, 0)}, {0, 0, Eis(6, 0)}});
    EisPoly ym3 = EisPoly::from_monomials({{0, 1, Eis(1, 0)}, {0, 0, Eis(-3, 0)}});
    EisPoly bracket = (Eis(9, 0) * w2) * (yp6 * yp6 * ym3) + (Eis(9, 0) * w) * (yp6 * ym3 * ym3) +
                      Eis(9, 0) * (ym3 * ym3 * ym3);
    EisPoly lin = (Eis(3, 0) * w) * yp6 + Eis(6, 0) * ym3;
    return bracket * x3 - lin * lin * lin;
}

bool lemma51_check() { return lemma51_lhs() == lemma51_rhs(); }

} // namespace fermat3
