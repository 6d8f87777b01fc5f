#pragma once

#include "fermat3/bigint.hpp"
#include "fermat3/poly.hpp"

#include <mpfr.h>

#include <string>
#include <vector>

namespace fermat3 {

// Arbitrary-precision real with a certified absolute error bound carried
// alongside (small always-rounded-up mpfr). Backed by MPFR.
class Real {
  public:
    explicit Real(mpfr_prec_t bits = 64);
    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept;
    ~Real();

    static Real of_long(long v, mpfr_prec_t bits);
    static Real of_int(const BigInt& v, mpfr_prec_t bits);
    static Real of_rat(const BigRat& v, mpfr_prec_t bits);
    static Real pi(mpfr_prec_t bits);

    mpfr_prec_t bits() const { return mpfr_get_prec(v_); }
    mpfr_srcptr value() const { return v_; }
    mpfr_srcptr err() const { return e_; }

    bool is_zero() const { return mpfr_zero_p(v_); }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // log2 of value/error magnitude, for reports
    double log2_abs() const;
    double log2_err() const;

    Real neg() const;
    Real abs() const;
    Real add(const Real& o) const;
    Real sub(const Real& o) const;
    Real mul(const Real& o) const;
    Real div(const Real& o) const; // requires |o| certified nonzero
    Real mul_long(long k) const;
    Real sqrt() const; // nonnegative input
    Real exp() const;  // requires error <= 1/2
    void sincos(Real& s, Real& c) const;

    // true if |value| <= error bound (indistinguishable from zero)
    bool within_err_of_zero() const;
    // round to nearest integer; fails unless distance+err < margin
    bool to_integer(BigInt& out, double margin = 0.25) const;
    // enlarge the error bound by 2^l2 (certified tail bounds)
    void add_err_log2(double l2);

  private:
    mpfr_t v_;
    mpfr_t e_;
    void bump_err_ulp();
    friend class Complex;
};

struct Complex {
    Real re, im;
    explicit Complex(mpfr_prec_t bits = 64) : re(bits), im(bits) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    Complex add(const Complex& o) const { return {re.add(o.re), im.add(o.im)}; }
    Complex sub(const Complex& o) const { return {re.sub(o.re), im.sub(o.im)}; }
    Complex neg() const { return {re.neg(), im.neg()}; }
    Complex mul(const Complex& o) const;
    Complex div(const Complex& o) const;
    Complex mul_real(const Real& r) const { return {re.mul(r), im.mul(r)}; }
    Complex add_long(long k) const;
    Complex pow3() const { return mul(*this).mul(*this); }
    Real abs_upper() const; // |re|+|im|, an upper bound for |z|
    Real err_upper() const; // err(re)+err(im), bounds |numeric - true|
    bool within_err_of_zero() const;
};

// exp(2*pi*i*(re + i*im)) with re exact rational (reduced mod 1 exactly).
Complex exp2pii(const BigRat& re, const Real& im, mpfr_prec_t bits);

// Dedekind eta at tau = re + i*im (re exact rational, im > 0); q-product
// truncated when the certified tail bound drops below 2^-(bits+16).
Complex eta(const BigRat& re, const Real& im, mpfr_prec_t bits, long* terms_out = nullptr);

// Klein j from the Eisenstein q-expansions; requires |q| <= 0.01.
Complex eisenstein_j(const BigRat& re, const Real& im, mpfr_prec_t bits);

// f(z) = 3 + (eta(z/9)/eta(z))^3 and g(z) = 3 + (3 eta(3z)/eta(z/3))^3,
// for z = re + i*im.
Complex f_of(const BigRat& re, const Real& im, mpfr_prec_t bits);
Complex g_of(const BigRat& re, const Real& im, mpfr_prec_t bits);

// CM point w = k + sqrt(-d)/2 (d even) or (k+sqrt(-d))/2 (d odd), with
// k = 1 (mod 6) and k^2 = -d resp. -d/4 (mod 9); optionally adjusted by
// +18 steps until 9 exactly divides N(w).
struct CMPoint {
    long d = 0;
    long k = 0;
    BigRat re;     // exact real part
    long norm = 0; // N(w)
    Real imag(mpfr_prec_t bits) const; // sqrt(d)/2
};
CMPoint select_w(long d, bool require_9_norm);

struct ClasspolyResult {
    DensePoly H;
    mpfr_prec_t bits_used = 0;
    double min_margin_log2 = 0; // worst-case rounding margin, log2
};

// H_{-d} by evaluation of j at the reduced forms and certified rounding;
// precision doubles until two consecutive runs agree exactly.
ClasspolyResult ring_class_poly(long d, mpfr_prec_t bits_hint = 0, bool parallel = true);

std::string classpoly_json(const ClasspolyResult& r, long d);

struct NumericCheck {
    std::string name;
    double log2_residual; // log2 |computed expression|
    double log2_bound;    // log2 of the certified error bound
    bool pass;
};

struct ModularSuiteReport {
    long d;
    std::vector<NumericCheck> checks;
    bool all_pass() const
    {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// Numeric verification of the parametrization identities at the CM point:
// Fer_3 membership, the two j-identities, the modular equation for f^3,
// sigma1(f(z)) = g(z/3) and T-compatibility at a random z, the C_19 point,
// |p_d(f(w))|, and H_{-d}(j(w)). p_d and H come from the exact pipeline.
ModularSuiteReport modular_identity_suite(long d, const DensePoly& pd, const DensePoly& H,
                                          mpfr_prec_t bits, std::uint64_t seed);

std::string suite_json(const ModularSuiteReport& r);

} // namespace fermat3
