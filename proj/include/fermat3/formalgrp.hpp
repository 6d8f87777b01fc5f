#pragma once

#include "fermat3/bigint.hpp"
#include "fermat3/padic.hpp"

#include <string>
#include <vector>

namespace fermat3 {

// Truncated power series over Q: coefficients for z^0..z^order.
struct TruncSeries {
    std::vector<BigRat> c;
    int order = 0;
    static TruncSeries zero(int order)
    {
        TruncSeries s;
        s.order = order;
        s.c.assign(order + 1, BigRat(0));
        return s;
    }
    BigRat coeff(int k) const { return k >= 0 && k <= order ? c[k] : BigRat(0); }
};

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
TruncSeries scale(const BigRat& s, const TruncSeries& a);
// substitution a(inner) for inner with zero constant term
TruncSeries compose_series(const TruncSeries& a, const TruncSeries& inner);
// reciprocal of a unit series (nonzero constant term)
TruncSeries invert_unit_series(const TruncSeries& a);

// Bivariate, truncated by total degree.
struct BiTruncSeries {
    // c[i][j] = coefficient of z1^i z2^j, stored for i+j <= order
    std::vector<std::vector<BigRat>> c;
    int order = 0;
    static BiTruncSeries zero(int order);
    BigRat coeff(int i, int j) const;
    void set(int i, int j, const BigRat& v);
    BiTruncSeries transpose() const;
    bool operator==(const BiTruncSeries& o) const;
};

BiTruncSeries operator+(const BiTruncSeries& a, const BiTruncSeries& b);
BiTruncSeries operator-(const BiTruncSeries& a, const BiTruncSeries& b);
BiTruncSeries operator*(const BiTruncSeries& a, const BiTruncSeries& b);
BiTruncSeries scale(const BigRat& s, const BiTruncSeries& a);
// univariate phi composed with a bivariate argument of positive order
BiTruncSeries compose_uni_bi(const TruncSeries& phi, const BiTruncSeries& arg);
BiTruncSeries invert_unit_bi(const BiTruncSeries& a);

// Trivariate, total degree truncation; only what associativity needs.
struct TriTruncSeries {
    std::vector<BigRat> c; // indexed by rank(i,j,k)
    int order = 0;
    static TriTruncSeries zero(int order);
    static std::size_t rank(int i, int j, int k);
    BigRat coeff(int i, int j, int k) const;
    void set(int i, int j, int k, const BigRat& v);
    bool operator==(const TriTruncSeries& o) const;
};

TriTruncSeries operator+(const TriTruncSeries& a, const TriTruncSeries& b);
TriTruncSeries operator-(const TriTruncSeries& a, const TriTruncSeries& b);
TriTruncSeries operator*(const TriTruncSeries& a, const TriTruncSeries& b);
// bivariate F composed with two trivariate arguments of positive order
TriTruncSeries compose_bi_tri(const BiTruncSeries& F, const TriTruncSeries& A,
                              const TriTruncSeries& B, bool parallel = true);
TriTruncSeries embed_var_tri(int which, int order); // z1, z2 or z3

// --- the formal group of E -------------------------------------------------------

// w(z): unique solution of w = z^3 + 9w^2 - 27w^3 with w = z^3 + O(z^6).
TruncSeries w_series(int order);
// the c_k of w(z) = z^3(1 + sum 3^k c_k z^{3k}); asserts integrality
std::vector<BigInt> w_ck(int kmax);
// i(z) = -z * sum_k 3^{2k} w(z)^k.
TruncSeries i_series(int order);
// F_E(z1,z2) = i(z3), z3 = -z1-z2-9*lambda^2(1-9nu)/(1-27lambda^3).
BiTruncSeries FE_series(int order);

// x(z) = z T(1/z) + 6z and y(z) = T(1/z) + 6 from the t_k series; returned
// as z^2 x(z) and z^3 y(z), which are honest power series.
TruncSeries x_series_scaled(int order);
TruncSeries y_series_scaled(int order);

std::string series_json(const TruncSeries& s);
std::string biseries_json(const BiTruncSeries& s);

} // namespace fermat3
