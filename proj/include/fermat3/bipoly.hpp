#pragma once

#include "fermat3/poly.hpp"

#include <vector>

namespace fermat3 {

// Bivariate polynomial over the rationals; c[i][j] = coefficient of x^i y^j.
struct BiPoly {
    std::vector<std::vector<BigRat>> c; // rectangular grid
    BiPoly() = default;
    static BiPoly zero() { return BiPoly{}; }
    static BiPoly from_monomials(const std::vector<std::tuple<int, int, BigRat>>& terms);

    int degx() const;
    int degy() const;
    bool is_zero() const;
    BigRat coeff(int i, int j) const;
    void set(int i, int j, const BigRat& v);
    void trim();

    // Specialize one variable, leaving a univariate polynomial in the other.
    DensePoly eval_x(const BigRat& a) const; // polynomial in y
    DensePoly eval_y(const BigRat& b) const; // polynomial in x
    BigRat eval(const BigRat& x, const BigRat& y) const;

    // Coefficients of x^k as a polynomial in y (and vice versa).
    DensePoly x_coeff(int k) const;
    DensePoly y_coeff(int k) const;

    bool operator==(const BiPoly& o) const;
};

BiPoly operator+(const BiPoly& a, const BiPoly& b);
BiPoly operator-(const BiPoly& a, const BiPoly& b);
BiPoly operator*(const BiPoly& a, const BiPoly& b);
BiPoly operator*(const BigRat& s, const BiPoly& a);

// The curve relation g(x,y) = (y^2+3y+9) x^3 - (y+6)^3.
BiPoly g_relation();

std::string bipoly_to_json(const BiPoly& a);

enum class Var { x, y };

struct ResultantOptions {
    bool parallel = true;
    int certify_points = 3;
};

// Sylvester resultant with respect to the eliminated variable, computed by
// evaluation-interpolation over word primes with CRT, plus a certification
// pass at fresh points with a fresh prime. The result is univariate in the
// remaining variable.
DensePoly resultant(const BiPoly& A, const BiPoly& B, Var eliminate,
                    const ResultantOptions& opt = {});

// Resultant of a univariate polynomial (in the eliminated variable) against
// a bivariate one; used by the pre-periodic recursion Res_y(s(y), g(x,y)).
DensePoly resultant_uni_bi(const DensePoly& A, const BiPoly& B, Var eliminate,
                           const ResultantOptions& opt = {});

// --- Eisenstein-integer polynomials ----------------------------------------

// u + v*w with w^2 + w + 1 = 0.
struct Eis {
    BigInt u{0}, v{0};
    Eis() = default;
    Eis(BigInt a, BigInt b) : u(std::move(a)), v(std::move(b)) {}
    static Eis omega() { return Eis(0, 1); }
    static Eis sqrt_minus3() { return Eis(1, 2); } // 1 + 2w
    bool operator==(const Eis& o) const { return u == o.u && v == o.v; }
};
Eis operator+(const Eis& a, const Eis& b);
Eis operator-(const Eis& a, const Eis& b);
Eis operator*(const Eis& a, const Eis& b);

// Bivariate polynomial with Eisenstein-integer coefficients.
struct EisPoly {
    std::vector<std::vector<Eis>> c;
    static EisPoly from_monomials(const std::vector<std::tuple<int, int, Eis>>& terms);
    Eis coeff(int i, int j) const;
    void set(int i, int j, const Eis& v);
    void trim();
    std::vector<Eis> eval_y(const Eis& b) const; // coefficients in x
    bool operator==(const EisPoly& o) const;
};
EisPoly operator+(const EisPoly& a, const EisPoly& b);
EisPoly operator-(const EisPoly& a, const EisPoly& b);
EisPoly operator*(const EisPoly& a, const EisPoly& b);
EisPoly operator*(const Eis& s, const EisPoly& a);

// 81*sqrt(-3)*g(x, w^2 y) = (y-3)^3 g(x, w*s1(y)) after clearing the (y-3)^3
// denominator of s1(y) = 3(y+6)/(y-3); both sides expanded over Z[w].
bool lemma51_check();
EisPoly lemma51_lhs();
EisPoly lemma51_rhs();

} // namespace fermat3
