#pragma once

#include "fermat3/bigint.hpp"
#include "fermat3/poly.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace fermat3 {

// Polynomial over the field with three elements, coefficients ascending.
struct F3Poly {
    std::vector<std::uint8_t> c;

    F3Poly() = default;
    explicit F3Poly(std::vector<std::uint8_t> coeffs) : c(std::move(coeffs)) { normalize(); }
    static F3Poly from_string(const std::string& digits); // "2,2,2,1" ascending
    static F3Poly x_power(std::size_t k);

    void normalize()
    {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    std::uint8_t coeff(std::size_t i) const { return i < c.size() ? c[i] : 0; }
    bool is_monic() const { return !c.empty() && c.back() == 1; }
    std::string to_string() const;
    std::string pretty() const; // human form, descending powers

    bool operator==(const F3Poly& o) const { return c == o.c; }
    bool operator<(const F3Poly& o) const; // lexicographic on (degree, c0, c1, ...)
};

F3Poly operator+(const F3Poly& a, const F3Poly& b);
F3Poly operator-(const F3Poly& a, const F3Poly& b);
F3Poly operator*(const F3Poly& a, const F3Poly& b);
void divrem_f3(const F3Poly& a, const F3Poly& b, F3Poly& q, F3Poly& r);
F3Poly gcd_f3(F3Poly a, F3Poly b); // monic
F3Poly derivative_f3(const F3Poly& a);
F3Poly powmod_f3(const F3Poly& base, const BigInt& e, const F3Poly& mod);
F3Poly mulmod_f3(const F3Poly& a, const F3Poly& b, const F3Poly& mod);
F3Poly monic_f3(const F3Poly& a);
F3Poly inv_mod_f3(const F3Poly& a, const F3Poly& mod);

// Reduction of an integer polynomial mod 3.
F3Poly reduce_mod3(const DensePoly& a);

bool is_irreducible_f3(const F3Poly& f);

// Complete factorization: squarefree split, distinct-degree split, then
// randomized equal-degree split with exponent (3^n-1)/2. Deterministic for a
// fixed seed; factors sorted canonically.
std::vector<std::pair<F3Poly, int>> factor_f3(const F3Poly& f, std::uint64_t seed = 3);

// Number of monic irreducible polynomials of degree n over F_3, by the
// Moebius formula n*N_3(n) = sum_{k|n} mu(n/k) 3^k.
long count_N3(int n);

// All monic irreducibles of degree n, in lexicographic order.
std::vector<F3Poly> irreducibles_f3(int n);

// Dimension over F_3 of the span of the residues 1/rho^{3^i} for all roots
// rho of all given moduli, inside one common degree-n extension.
// Preconditions: all moduli irreducible of equal degree n, none equal to x.
int ell_rank(const std::vector<F3Poly>& moduli);

struct Cor2Report {
    int n = 0;
    bool disjoint = true;
    bool exhaustive = true;
    bool degrees_uniform = true;       // every nontrivial factor has degree n
    std::string offending;             // first overlap / omission, if any
    std::map<long, std::vector<F3Poly>> sets; // d -> S_d
    std::map<long, bool> companions_match_mod_x2; // reported, never asserted
    bool passed() const { return disjoint && exhaustive && degrees_uniform; }
};

// Verifies the partition of degree-n irreducibles among the class
// polynomials mod 3 (one polynomial per discriminant d in D_n).
Cor2Report corollary2_audit(int n, const std::map<long, F3Poly>& class_polys);

std::string cor2_report_json(const Cor2Report& r);

} // namespace fermat3
