#pragma once

#include "fermat3/bigint.hpp"

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace fermat3 {

// Univariate polynomial with exact rational coefficients, ascending degree.
// Invariant: the leading (last) coefficient is nonzero unless the polynomial
// is zero (empty coefficient vector).
struct DensePoly {
    std::vector<BigRat> c;
    std::string var = "x";

    DensePoly() = default;
    explicit DensePoly(std::vector<BigRat> coeffs, std::string v = "x")
        : c(std::move(coeffs)), var(std::move(v))
    {
        normalize();
    }

    static DensePoly from_ints(std::initializer_list<long> asc, std::string v = "x");
    static DensePoly from_strings(const std::vector<std::string>& asc, std::string v = "x");
    static DensePoly x_power(std::size_t k, std::string v = "x");
    static DensePoly constant(const BigRat& a, std::string v = "x");

    void normalize()
    {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    BigRat coeff(std::size_t i) const { return i < c.size() ? c[i] : BigRat(0); }
    const BigRat& lc() const { return c.back(); }
    bool is_monic() const { return !c.empty() && c.back() == 1; }
    bool is_integral() const;

    BigRat operator()(const BigRat& x) const;

    bool operator==(const DensePoly& o) const { return c == o.c; }
};

DensePoly operator+(const DensePoly& a, const DensePoly& b);
DensePoly operator-(const DensePoly& a, const DensePoly& b);
DensePoly operator-(const DensePoly& a);
DensePoly operator*(const DensePoly& a, const DensePoly& b);
DensePoly operator*(const BigRat& s, const DensePoly& a);

DensePoly derivative(const DensePoly& a);
DensePoly monic(const DensePoly& a);
DensePoly pow_poly(const DensePoly& a, unsigned e);

// Quotient and remainder over the rationals.
void divrem(const DensePoly& a, const DensePoly& b, DensePoly& q, DensePoly& r);

// Exact division; throws value_error if the remainder is nonzero.
DensePoly exact_div(const DensePoly& a, const DensePoly& b);
bool divides(const DensePoly& b, const DensePoly& a);

// Monic gcd over the rationals. Uses a multi-modular method for integer
// inputs (the iterated resultants make the Euclidean chain explode).
DensePoly gcd_poly(const DensePoly& a, const DensePoly& b);

// If a = c*b^2 with c a positive rational and b monic, returns b.
// Throws value_error("not a scaled square") otherwise.
DensePoly poly_sqrt(const DensePoly& a);

// sum_j a_j * num^j * den^(deg a - j); clears the denominator of a rational
// substitution a(num/den).
DensePoly homogeneous_subst(const DensePoly& a, const DensePoly& num, const DensePoly& den);

DensePoly compose(const DensePoly& a, const DensePoly& inner);
DensePoly shift_arg(const DensePoly& a, const BigRat& t); // a(x+t)

// For integer polynomials: content and primitive part.
BigInt int_content(const DensePoly& a);
DensePoly primitive_part(const DensePoly& a); // clears denominators first

// Number of distinct real roots, by Sturm's theorem (exact).
int count_real_roots(const DensePoly& a);

// Irreducibility of the reduction mod p (p a word prime not dividing lc).
// Returns false also when the reduction is degenerate (lc vanishes).
bool is_irreducible_mod_p(const DensePoly& a, std::uint64_t p);

std::string poly_to_json(const DensePoly& a);
DensePoly poly_from_json(const std::string& text);

// F_d(x) = (x^3-27)^h * H(x^3(x^3-24)^3 / (x^3-27)), deg 12h.
DensePoly build_Fd(const DensePoly& H);
// G_d(x) = (x^3-27)^{3h} * H(x^3(x^3+216)^3 / (x^3-27)^3), deg 12h.
DensePoly build_Gd(const DensePoly& H);

// r(x) = P(x^3)/p(x), P(y) = Res_z(p(z), y - z^3); equals p(wx)p(w^2 x)
// for w a primitive cube root of unity, with no Eisenstein arithmetic.
DensePoly cube_twist_cofactor(const DensePoly& p);

} // namespace fermat3
