#pragma once

#include "fermat3/f3.hpp"
#include "fermat3/poly.hpp"

#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace fermat3 {

// Ring of integers of the degree-n unramified extension of Q_3, truncated:
// Z_3[y]/(M(y), 3^prec) with M the naive {0,1,2} monic lift of an
// irreducible modulus mod 3. n = 1 gives plain Z_3.
struct UnramCtx {
    int n = 1;
    F3Poly gbar;
    std::vector<BigInt> M; // monic lift, length n+1
};
using RingPtr = std::shared_ptr<const UnramCtx>;

RingPtr make_ring(const F3Poly& irreducible_mod3);
RingPtr z3_ring();

struct P3Elem {
    RingPtr ring;
    int prec = 0;           // coefficients known modulo 3^prec
    std::vector<BigInt> c;  // length ring->n, reduced into [0, 3^prec)

    static P3Elem from_int(RingPtr r, const BigInt& v, int prec);
    static P3Elem generator(RingPtr r, int prec); // class of y

    int degree_bound() const { return ring->n; }
    void reduce();
    P3Elem truncated(int new_prec) const;

    // 3-adic valuation: min over coordinates, capped at prec when the
    // element is indistinguishable from zero at this precision.
    int valuation() const;
    bool is_zero_at_prec() const { return valuation() >= prec; }

    F3Poly residue_mod3() const;

    // Scalar (degree-0) projection; throws unless all higher coordinates
    // vanish at working precision.
    BigInt scalar() const;
    bool is_scalar() const;
    BigInt scalar_balanced() const { return balanced_mod(scalar(), pow3(prec)); }

    std::string json() const; // {"prec":N,"coeffs":["r0",...]} balanced
    bool operator==(const P3Elem& o) const;
};

P3Elem operator+(const P3Elem& a, const P3Elem& b);
P3Elem operator-(const P3Elem& a, const P3Elem& b);
P3Elem operator-(const P3Elem& a);
P3Elem operator*(const P3Elem& a, const P3Elem& b);
P3Elem mul_int(const P3Elem& a, const BigInt& k);
P3Elem mul_pow3(const P3Elem& a, int k);  // prec grows by k
P3Elem div_pow3(const P3Elem& a, int k);  // exact; prec drops by k
P3Elem inv_unit(const P3Elem& a);         // requires valuation 0
P3Elem pow_elem(const P3Elem& a, const BigInt& e);

// Laurent layer: value = u * 3^e with u integral; absolute precision of the
// value is u.prec + e. Used by the elliptic-curve backend, where chord
// slopes routinely leave the integral ring.
struct P3Laurent {
    P3Elem u;
    long e = 0;

    static P3Laurent of(const P3Elem& x) { return P3Laurent{x, 0}; }
    long abs_prec() const { return static_cast<long>(u.prec) + e; }
    long valuation() const { return static_cast<long>(u.valuation()) + e; }
    bool is_zero_at_prec() const { return u.is_zero_at_prec(); }
    void normalize(); // strip 3-powers of u into e
    P3Elem to_integral() const; // requires valuation >= 0
    std::string json() const;
};

P3Laurent operator+(const P3Laurent& a, const P3Laurent& b);
P3Laurent operator-(const P3Laurent& a, const P3Laurent& b);
P3Laurent operator-(const P3Laurent& a);
P3Laurent operator*(const P3Laurent& a, const P3Laurent& b);
P3Laurent operator/(const P3Laurent& a, const P3Laurent& b);
P3Laurent laurent_int(RingPtr r, long v, int prec);

// --- the paper's series ------------------------------------------------------

// b_1 = 3, b_k = (3k-4)(3k-7)...5*2 + 2*(3k-5)(3k-8)...4*1 for k >= 2.
BigInt bk_value(int k);
// t_k = 3^{2k-1} b_k / k!, an integer divisible by 3^k.
BigInt tk_value(int k);
// All t_k with 3-adic valuation below prec (enough to evaluate T mod 3^prec).
const std::vector<BigInt>& t_coeffs(int prec);

// T(z) = z^3 - 15 - sum_{k>=2} t_k z^{3-3k}; requires v(z) = 0 here.
P3Elem T_eval(const P3Elem& z);
// General form on v(z) <= 0.
P3Laurent T_eval(const P3Laurent& z);
// S(z) = (z+6) * (27/(z^2+3z+9))^{1/3} / 3; requires v(z-3) >= 3.
P3Elem S_eval(const P3Elem& z);
// s1(z) = 3 + 27/(z-3); requires v(z-3) = 0.
P3Elem sigma1(const P3Elem& z);

// Unique cube root of a unit; digit-by-digit refinement, one digit of
// precision lost. Throws value_error("no cube root mod 27") for non-cubes.
P3Elem cube_root_unit(const P3Elem& u);

// Hensel lift of sqrt(-d) in Z_3; the sign convention picks the lift whose
// balanced representative mod 9 is positive.
P3Elem embed_sqrt(long d, int prec);

// --- periodic points ---------------------------------------------------------

struct PeriodicPoint {
    long d = 0;
    int n = 1;
    RingPtr ring;
    std::vector<P3Elem> orbit; // [xi, T(xi), ..., T^{n-1}(xi)]
};

// Fixed-point iteration x <- T^n(x) from the canonical lift of a root of the
// given irreducible factor of H_{-d} mod 3; iteration budget 2*prec sweeps.
PeriodicPoint lift_periodic(long d, const F3Poly& factor_mod3, int prec);

// One orbit per irreducible factor of H mod 3 (all factors must have equal
// degree and H(0) must be a unit mod 3).
std::vector<PeriodicPoint> lift_all_orbits(long d, const DensePoly& H, int prec);

// --- reconstruction ----------------------------------------------------------

struct QuadCoeff {
    BigRat a, b; // a + b*sqrt(-d)
    bool operator==(const QuadCoeff& o) const { return a == o.a && b == o.b; }
};
using QuadPoly = std::vector<QuadCoeff>; // ascending degree, monic

QuadPoly conj_quad(const QuadPoly& m);
std::string quadpoly_json(const QuadPoly& m, long d);

BigRat reconstruct_rational(const P3Elem& x, const BigInt& height);
std::optional<QuadCoeff> reconstruct_quadfield(const P3Elem& x, const P3Elem& sqrt_md,
                                               const BigInt& height);

// --- the polynomial constructions ---------------------------------------------

struct PadicOptions {
    int prec = 128;
    int prec_cap = 1024;
};

// p_d = prod over unit periodic points (x - xi)(x - s1(xi)); certified:
// monic integer of degree 2h, functional equation of the s1-involution,
// p_d(3) = 3^{3h}, p_d = x^h H_{-d} (mod 3).
DensePoly pd_padic(long d, const DensePoly& H, const PadicOptions& opt = {});

// q_d = prod over unit periodic points (x - g)(x - 3/g), g^3 = xi - 3;
// certified: x^{2h} q_d(3/x) = 3^h q_d(x) exactly, q_d(0) = 3^h,
// q_d = p_d (mod 3).
DensePoly qd_padic(long d, const DensePoly& H, const PadicOptions& opt = {});

// m_d = prod over unit periodic points (x - xi), coefficients reconstructed
// in Q(sqrt(-d)); certified by m_d * conj(m_d) = p_d exactly.
QuadPoly md_padic(long d, const DensePoly& H, const PadicOptions& opt = {});

struct TraceValues {
    P3Elem tr1; // Tr 1/alpha, a Z_3 scalar
    P3Elem tr2; // Tr 1/(alpha * alpha^tau)
};
TraceValues trace_values(const std::vector<PeriodicPoint>& orbits);

// valuation of a Z_3 scalar, capped at its precision
int z3_valuation(const P3Elem& x);

} // namespace fermat3
