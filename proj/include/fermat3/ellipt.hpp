#pragma once

#include "fermat3/modarith.hpp"
#include "fermat3/padic.hpp"
#include "fermat3/poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fermat3 {

// E: Y^2 - 9Y = X^3 - 27, group law over pluggable field backends.
// A backend provides: Elem, from_long, add, sub, mul, div, neg, eq, is_zero.
template <class F>
struct ECPoint {
    bool inf = true;
    typename F::Elem x{}, y{};
    static ECPoint infinity() { return ECPoint{}; }
    static ECPoint at(typename F::Elem px, typename F::Elem py)
    {
        ECPoint p;
        p.inf = false;
        p.x = std::move(px);
        p.y = std::move(py);
        return p;
    }
};

template <class F>
bool ec_on_curve(const F& f, const ECPoint<F>& p)
{
    if (p.inf) return true;
    auto lhs = f.sub(f.mul(p.y, p.y), f.mul(f.from_long(9), p.y));
    auto rhs = f.sub(f.mul(f.mul(p.x, p.x), p.x), f.from_long(27));
    return f.eq(lhs, rhs);
}

// -(x, y) = (x, 9-y)
template <class F>
ECPoint<F> ec_neg(const F& f, const ECPoint<F>& p)
{
    if (p.inf) return p;
    return ECPoint<F>::at(p.x, f.sub(f.from_long(9), p.y));
}

template <class F>
ECPoint<F> ec_add(const F& f, const ECPoint<F>& p, const ECPoint<F>& q)
{
    if (p.inf) return q;
    if (q.inf) return p;
    typename F::Elem lambda;
    if (f.eq(p.x, q.x)) {
        if (f.eq(f.add(p.y, q.y), f.from_long(9))) return ECPoint<F>::infinity();
        // tangent: 3x^2 / (2y - 9)
        auto num = f.mul(f.from_long(3), f.mul(p.x, p.x));
        auto den = f.sub(f.add(p.y, p.y), f.from_long(9));
        lambda = f.div(num, den);
    } else {
        lambda = f.div(f.sub(q.y, p.y), f.sub(q.x, p.x));
    }
    auto x3 = f.sub(f.sub(f.mul(lambda, lambda), p.x), q.x);
    auto y3 = f.add(f.sub(f.from_long(9), p.y), f.mul(lambda, f.sub(p.x, x3)));
    return ECPoint<F>::at(x3, y3);
}

template <class F>
ECPoint<F> ec_mul(const F& f, long k, ECPoint<F> p)
{
    if (k < 0) {
        p = ec_neg(f, p);
        k = -k;
    }
    ECPoint<F> r = ECPoint<F>::infinity();
    while (k) {
        if (k & 1) r = ec_add(f, r, p);
        p = ec_add(f, p, p);
        k >>= 1;
    }
    return r;
}

// Fer_3 <-> E: x = 9b/(a(b-3)), y = 9b/(b-3); inverse a = y/x, b = 3y/(y-9).
template <class F>
ECPoint<F> fer3_to_E(const F& f, const typename F::Elem& a, const typename F::Elem& b)
{
    if (f.is_zero(a) || f.is_zero(b) || f.eq(a, f.from_long(3)) || f.eq(b, f.from_long(3)))
        throw value_error("degenerate Fer_3 point");
    auto bm3 = f.sub(b, f.from_long(3));
    auto y = f.div(f.mul(f.from_long(9), b), bm3);
    auto x = f.div(y, a);
    return ECPoint<F>::at(x, y);
}

template <class F>
std::pair<typename F::Elem, typename F::Elem> E_to_fer3(const F& f, const ECPoint<F>& p)
{
    if (p.inf || f.is_zero(p.x) || f.eq(p.y, f.from_long(9)))
        throw value_error("degenerate point for the Fer_3 chart");
    auto a = f.div(p.y, p.x);
    auto b = f.div(f.mul(f.from_long(3), p.y), f.sub(p.y, f.from_long(9)));
    return {a, b};
}

// --- concrete backends --------------------------------------------------------

struct RatField {
    using Elem = BigRat;
    Elem from_long(long v) const { return BigRat(v); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem div(const Elem& a, const Elem& b) const
    {
        if (b == 0) throw value_error("division by zero");
        return a / b;
    }
    Elem neg(const Elem& a) const { return -a; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    bool is_zero(const Elem& a) const { return a == 0; }
};

// a + b*sqrt(-d) with rational a, b
struct QuadElem {
    BigRat a{0}, b{0};
    bool operator==(const QuadElem& o) const { return a == o.a && b == o.b; }
};

struct QuadField {
    long d;
    using Elem = QuadElem;
    explicit QuadField(long dd) : d(dd) {}
    Elem from_long(long v) const { return {BigRat(v), BigRat(0)}; }
    Elem from_coeff(const QuadCoeff& c) const { return {c.a, c.b}; }
    Elem add(const Elem& x, const Elem& y) const { return {x.a + y.a, x.b + y.b}; }
    Elem sub(const Elem& x, const Elem& y) const { return {x.a - y.a, x.b - y.b}; }
    Elem mul(const Elem& x, const Elem& y) const
    {
        return {x.a * y.a - BigRat(d) * x.b * y.b, x.a * y.b + x.b * y.a};
    }
    Elem neg(const Elem& x) const { return {-x.a, -x.b}; }
    Elem conj(const Elem& x) const { return {x.a, -x.b}; }
    Elem div(const Elem& x, const Elem& y) const
    {
        BigRat n = y.a * y.a + BigRat(d) * y.b * y.b;
        if (n == 0) throw value_error("division by zero");
        Elem t = mul(x, conj(y));
        return {t.a / n, t.b / n};
    }
    bool eq(const Elem& x, const Elem& y) const { return x == y; }
    bool is_zero(const Elem& x) const { return x.a == 0 && x.b == 0; }
};

struct FpField {
    u64 p;
    using Elem = u64;
    explicit FpField(u64 prime) : p(prime) {}
    Elem from_long(long v) const
    {
        long m = v % static_cast<long>(p);
        if (m < 0) m += static_cast<long>(p);
        return static_cast<u64>(m);
    }
    Elem add(Elem a, Elem b) const { return PrimeField(p).add(a, b); }
    Elem sub(Elem a, Elem b) const { return PrimeField(p).sub(a, b); }
    Elem mul(Elem a, Elem b) const { return PrimeField(p).mul(a, b); }
    Elem div(Elem a, Elem b) const
    {
        if (b == 0) throw value_error("division by zero");
        return PrimeField(p).mul(a, PrimeField(p).inv(b));
    }
    Elem neg(Elem a) const { return PrimeField(p).neg(a); }
    bool eq(Elem a, Elem b) const { return a == b; }
    bool is_zero(Elem a) const { return a == 0; }
};

// truncated 3-adic backend (Laurent layer over an unramified ring)
struct P3Field {
    RingPtr ring;
    long min_prec;  // precision floor; breaching it signals a retry
    int work_prec;  // precision used for injected constants
    using Elem = P3Laurent;
    P3Field(RingPtr r, long floor_prec, int wprec = 192)
        : ring(std::move(r)), min_prec(floor_prec), work_prec(wprec)
    {
    }
    Elem from_long(long v) const { return laurent_int(ring, v, work_prec); }
    Elem guard(Elem e) const
    {
        if (e.abs_prec() < min_prec)
            throw precision_error("3-adic precision fell below the floor");
        return e;
    }
    Elem add(const Elem& a, const Elem& b) const { return guard(a + b); }
    Elem sub(const Elem& a, const Elem& b) const { return guard(a - b); }
    Elem mul(const Elem& a, const Elem& b) const { return guard(a * b); }
    Elem div(const Elem& a, const Elem& b) const { return guard(a / b); }
    Elem neg(const Elem& a) const { return -a; }
    bool eq(const Elem& a, const Elem& b) const { return (a - b).is_zero_at_prec(); }
    bool is_zero(const Elem& a) const { return a.is_zero_at_prec(); }
};

// --- the trace point Q_K -------------------------------------------------------

struct QKResult {
    long d = 0;
    bool is_infinity = false;
    QuadCoeff x, y;        // coordinates in Q(sqrt(-d))
    std::string verdict;    // "nontrivial" / "trivial: ..."
    int prec_used = 0;
};

// Q_K = sum over Galois conjugates of P_d; orbit sums first (they land in
// Z_3), then the cross-orbit sum, then exact reconstruction in K, certified
// by the exact on-curve identity.
QKResult QK(long d, const DensePoly& H, const PadicOptions& opt = {});

std::string qk_json(const QKResult& r);

// Lemma 6.1 sampling over prime fields: P + Q = (3, 9).
struct Lemma61Report {
    int trials = 0;
    int checked = 0;
    int failures = 0;
};
Lemma61Report lemma61_check(int trials, std::uint64_t seed);

// --- the nontriviality criteria engine ------------------------------------------

struct CriteriaVerdict {
    long d = 0;
    long h = 0;
    int v_tr1 = 0;            // valuation of Tr(1/alpha)
    bool thm65 = false;       // v = 0
    bool thm71 = false;       // v <= 1
    bool thm75 = false;       // Tr1 + 9 Tr1^2 - 9 Tr2 != 0 (mod 27)
    BigInt coeff_h1;          // coefficient of x^{h+1} in p_d
    BigInt hprime0_mod3;      // H'(0) mod 3
    BigInt hprime6_mod9;      // H'(6) mod 9
    std::string verdict;      // "nontrivial by ..." or "inconclusive"
};

// Evaluates Theorem 6.5, Theorem 7.1 (with the H'(0), H'(6) and p_d
// coefficient cross-checks; disagreement is a hard failure), then the
// Theorem 7.5 congruence. For 3 not dividing h the verdict cites Theorem 6.2.
CriteriaVerdict criteria_engine(long d, const DensePoly& H, const DensePoly& pd,
                                const PadicOptions& opt = {});

std::string criteria_json(const CriteriaVerdict& v);

// --- the d = 2132 example -------------------------------------------------------

struct Demo2132Report {
    bool residues_match = false;
    bool sum_matches = false;
    bool sqrt_check = false;
    std::vector<long> roots;
    long sum_x = 0, sum_y = 0;
    bool pass() const { return residues_match && sum_matches && sqrt_check; }
};

// Reduces the fixture m_2132 mod the prime of norm 569 with sqrt(-533) = -6,
// checks the 12 printed residues, converts each to a Fer_3 pair and an
// E-point, and sums to (13, 462).
Demo2132Report reduce_2132_demo(const QuadPoly& m2132);

std::string demo2132_json(const Demo2132Report& r);

// the paper's m_2132, used as a fixture after validation against md_padic
QuadPoly m2132_fixture();
// the paper's m_419 (for tests)
QuadPoly m419_fixture();

} // namespace fermat3
