#include "fermat3/cmfloat.hpp"
#include "fermat3/modarith.hpp"
#include "fermat3/qforms.hpp"

#include <json.hpp>
#include <omp.h>

#include <algorithm>
#include <cmath>

namespace fermat3 {

static constexpr mpfr_prec_t ERR_PREC = 32;

Real::Real(mpfr_prec_t bits)
{
    mpfr_init2(v_, std::max<mpfr_prec_t>(bits, MPFR_PREC_MIN));
    mpfr_set_zero(v_, 1);
    mpfr_init2(e_, ERR_PREC);
    mpfr_set_zero(e_, 1);
}

Real::Real(const Real& o)
{
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
    mpfr_init2(e_, ERR_PREC);
    mpfr_set(e_, o.e_, MPFR_RNDU);
}

Real::Real(Real&& o) noexcept
{
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_init2(e_, ERR_PREC);
    mpfr_swap(v_, o.v_);
    mpfr_swap(e_, o.e_);
}

Real& Real::operator=(const Real& o)
{
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
        mpfr_set(e_, o.e_, MPFR_RNDU);
    }
    return *this;
}

Real& Real::operator=(Real&& o) noexcept
{
    mpfr_swap(v_, o.v_);
    mpfr_swap(e_, o.e_);
    return *this;
}

Real::~Real()
{
    mpfr_clear(v_);
    mpfr_clear(e_);
}

void Real::bump_err_ulp()
{
    if (mpfr_zero_p(v_)) return;
    mpfr_t u;
    mpfr_init2(u, ERR_PREC);
    mpfr_set_ui_2exp(u, 1, mpfr_get_exp(v_) - mpfr_get_prec(v_), MPFR_RNDU);
    mpfr_add(e_, e_, u, MPFR_RNDU);
    mpfr_clear(u);
}

void Real::add_err_log2(double l2)
{
    mpfr_t t;
    mpfr_init2(t, ERR_PREC);
    mpfr_set_d(t, l2, MPFR_RNDU);
    mpfr_exp2(t, t, MPFR_RNDU);
    mpfr_add(e_, e_, t, MPFR_RNDU);
    mpfr_clear(t);
}

Real Real::of_long(long v, mpfr_prec_t bits)
{
    Real r(bits);
    int inexact = mpfr_set_si(r.v_, v, MPFR_RNDN);
    if (inexact != 0) r.bump_err_ulp();
    return r;
}

Real Real::of_int(const BigInt& v, mpfr_prec_t bits)
{
    Real r(bits);
    int inexact = mpfr_set_z(r.v_, v.get_mpz_t(), MPFR_RNDN);
    if (inexact != 0) r.bump_err_ulp();
    return r;
}

Real Real::of_rat(const BigRat& v, mpfr_prec_t bits)
{
    Real r(bits);
    int inexact = mpfr_set_q(r.v_, v.get_mpq_t(), MPFR_RNDN);
    if (inexact != 0) r.bump_err_ulp();
    return r;
}

Real Real::pi(mpfr_prec_t bits)
{
    Real r(bits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    r.bump_err_ulp();
    return r;
}

double Real::log2_abs() const
{
    if (mpfr_zero_p(v_)) return -1e9;
    mpfr_t t;
    mpfr_init2(t, 64);
    mpfr_abs(t, v_, MPFR_RNDU);
    mpfr_log2(t, t, MPFR_RNDN);
    double r = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    return r;
}

double Real::log2_err() const
{
    if (mpfr_zero_p(e_)) return -1e9;
    mpfr_t t;
    mpfr_init2(t, 64);
    mpfr_log2(t, e_, MPFR_RNDU);
    double r = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    return r;
}

Real Real::neg() const
{
    Real r = *this;
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
}

Real Real::abs() const
{
    Real r = *this;
    mpfr_abs(r.v_, r.v_, MPFR_RNDN);
    return r;
}

Real Real::add(const Real& o) const
{
    Real r(std::max(bits(), o.bits()));
    mpfr_add(r.v_, v_, o.v_, MPFR_RNDN);
    mpfr_add(r.e_, e_, o.e_, MPFR_RNDU);
    r.bump_err_ulp();
    return r;
}

Real Real::sub(const Real& o) const
{
    Real r(std::max(bits(), o.bits()));
    mpfr_sub(r.v_, v_, o.v_, MPFR_RNDN);
    mpfr_add(r.e_, e_, o.e_, MPFR_RNDU);
    r.bump_err_ulp();
    return r;
}

Real Real::mul(const Real& o) const
{
    Real r(std::max(bits(), o.bits()));
    mpfr_mul(r.v_, v_, o.v_, MPFR_RNDN);
    // |a| eb + |b| ea + ea eb
    mpfr_t t, aa, bb;
    mpfr_init2(t, ERR_PREC);
    mpfr_init2(aa, ERR_PREC);
    mpfr_init2(bb, ERR_PREC);
    mpfr_abs(aa, v_, MPFR_RNDU);
    mpfr_abs(bb, o.v_, MPFR_RNDU);
    mpfr_mul(t, aa, o.e_, MPFR_RNDU);
    mpfr_set(r.e_, t, MPFR_RNDU);
    mpfr_mul(t, bb, e_, MPFR_RNDU);
    mpfr_add(r.e_, r.e_, t, MPFR_RNDU);
    mpfr_mul(t, e_, o.e_, MPFR_RNDU);
    mpfr_add(r.e_, r.e_, t, MPFR_RNDU);
    mpfr_clear(t);
    mpfr_clear(aa);
    mpfr_clear(bb);
    r.bump_err_ulp();
    return r;
}

Real Real::mul_long(long k) const
{
    Real r = *this;
    mpfr_mul_si(r.v_, r.v_, k, MPFR_RNDN);
    mpfr_mul_si(r.e_, r.e_, std::labs(k), MPFR_RNDU);
    r.bump_err_ulp();
    return r;
}

Real Real::div(const Real& o) const
{
    // require |o| > err(o)
    mpfr_t ob;
    mpfr_init2(ob, ERR_PREC);
    mpfr_abs(ob, o.v_, MPFR_RNDD);
    if (mpfr_cmp(ob, o.e_) <= 0) {
        mpfr_clear(ob);
        throw precision_error("division by a value indistinguishable from zero");
    }
    Real r(std::max(bits(), o.bits()));
    mpfr_div(r.v_, v_, o.v_, MPFR_RNDN);
    // (ea + |r| eb) / (|o| - eb)
    mpfr_t t, rb, den;
    mpfr_init2(t, ERR_PREC);
    mpfr_init2(rb, ERR_PREC);
    mpfr_init2(den, ERR_PREC);
    mpfr_abs(rb, r.v_, MPFR_RNDU);
    mpfr_mul(t, rb, o.e_, MPFR_RNDU);
    mpfr_add(t, t, e_, MPFR_RNDU);
    mpfr_sub(den, ob, o.e_, MPFR_RNDD);
    mpfr_div(r.e_, t, den, MPFR_RNDU);
    mpfr_clear(t);
    mpfr_clear(rb);
    mpfr_clear(den);
    mpfr_clear(ob);
    r.bump_err_ulp();
    return r;
}

Real Real::sqrt() const
{
    if (!mpfr_zero_p(e_)) throw value_error("sqrt only used on exact inputs here");
    if (mpfr_sgn(v_) < 0) throw value_error("sqrt of negative value");
    Real r(bits());
    mpfr_sqrt(r.v_, v_, MPFR_RNDN);
    r.bump_err_ulp();
    return r;
}

Real Real::exp() const
{
    mpfr_t half;
    mpfr_init2(half, ERR_PREC);
    mpfr_set_d(half, 0.5, MPFR_RNDN);
    if (mpfr_cmp(e_, half) > 0) {
        mpfr_clear(half);
        throw precision_error("exp argument error bound too large");
    }
    mpfr_clear(half);
    Real r(bits());
    mpfr_exp(r.v_, v_, MPFR_RNDN);
    // e^x(e^t - 1) <= 2 t e^x for t <= 1/2
    mpfr_t t, rb;
    mpfr_init2(t, ERR_PREC);
    mpfr_init2(rb, ERR_PREC);
    mpfr_abs(rb, r.v_, MPFR_RNDU);
    mpfr_mul(t, rb, e_, MPFR_RNDU);
    mpfr_mul_ui(t, t, 2, MPFR_RNDU);
    mpfr_set(r.e_, t, MPFR_RNDU);
    mpfr_clear(t);
    mpfr_clear(rb);
    r.bump_err_ulp();
    return r;
}

void Real::sincos(Real& s, Real& c) const
{
    Real rs(bits()), rc(bits());
    mpfr_sin_cos(rs.v_, rc.v_, v_, MPFR_RNDN);
    mpfr_set(rs.e_, e_, MPFR_RNDU);
    mpfr_set(rc.e_, e_, MPFR_RNDU);
    rs.bump_err_ulp();
    rc.bump_err_ulp();
    s = std::move(rs);
    c = std::move(rc);
}

bool Real::within_err_of_zero() const
{
    mpfr_t a;
    mpfr_init2(a, ERR_PREC);
    mpfr_abs(a, v_, MPFR_RNDU);
    bool r = mpfr_cmp(a, e_) <= 0;
    mpfr_clear(a);
    return r;
}

bool Real::to_integer(BigInt& out, double margin) const
{
    mpfr_t n, d;
    mpfr_init2(n, mpfr_get_prec(v_));
    mpfr_round(n, v_);
    mpfr_init2(d, ERR_PREC);
    mpfr_sub(d, v_, n, MPFR_RNDA);
    mpfr_abs(d, d, MPFR_RNDU);
    mpfr_add(d, d, e_, MPFR_RNDU);
    bool ok = mpfr_cmp_d(d, margin) < 0;
    if (ok) mpfr_get_z(out.get_mpz_t(), n, MPFR_RNDN);
    mpfr_clear(n);
    mpfr_clear(d);
    return ok;
}

Complex Complex::mul(const Complex& o) const
{
    return {re.mul(o.re).sub(im.mul(o.im)), re.mul(o.im).add(im.mul(o.re))};
}

Complex Complex::div(const Complex& o) const
{
    Real den = o.re.mul(o.re).add(o.im.mul(o.im));
    Complex num = mul(Complex{o.re, o.im.neg()});
    return {num.re.div(den), num.im.div(den)};
}

Complex Complex::add_long(long k) const
{
    Complex r = *this;
    r.re = re.add(Real::of_long(k, re.bits()));
    return r;
}

Real Complex::abs_upper() const
{
    Real r = re.abs().add(im.abs());
    return r;
}

Real Complex::err_upper() const
{
    mpfr_t t;
    mpfr_init2(t, ERR_PREC);
    mpfr_add(t, re.err(), im.err(), MPFR_RNDU);
    Real r(ERR_PREC);
    mpfr_set(r.v_, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

bool Complex::within_err_of_zero() const
{
    return re.within_err_of_zero() && im.within_err_of_zero();
}

Complex exp2pii(const BigRat& re, const Real& im, mpfr_prec_t bits)
{
    // angle = 2*pi*frac(re), modulus = exp(-2*pi*im)
    BigRat frac = re;
    BigInt fl;
    mpz_fdiv_q(fl.get_mpz_t(), frac.get_num().get_mpz_t(), frac.get_den().get_mpz_t());
    frac -= BigRat(fl);
    Real two_pi = Real::pi(bits).mul_long(2);
    Real angle = two_pi.mul(Real::of_rat(frac, bits));
    Real s(bits), c(bits);
    angle.sincos(s, c);
    Real mod = two_pi.mul(im).neg().exp();
    return {mod.mul(c), mod.mul(s)};
}

Complex eta(const BigRat& re, const Real& im, mpfr_prec_t bits, long* terms_out)
{
    if (im.sign() <= 0) throw value_error("eta needs Im(tau) > 0");
    Complex q = exp2pii(re, im, bits);
    BigRat re24 = re / 24;
    Real im24 = im.mul(Real::of_rat(BigRat(1, 24), bits));
    Complex q24 = exp2pii(re24, im24, bits);

    // |q| upper bound as double exponent for the tail rule
    Real qa = q.abs_upper();
    double qlog = qa.log2_abs();
    if (qlog > -0.07) throw precision_error("eta: |q| too close to 1");

    Complex prod{Real::of_long(1, bits), Real::of_long(0, bits)};
    Complex qk = q;
    long terms = 0;
    double tail = qlog;
    double target = -static_cast<double>(bits) - 16;
    while (tail > target) {
        Complex term{Real::of_long(1, bits).sub(qk.re), qk.im.neg()};
        prod = prod.mul(term);
        qk = qk.mul(q);
        ++terms;
        tail += qlog;
    }
    // |prod_{n>M}(1-q^n) - 1| <= 4 |q|^{M+1} for |q| <= 1/2, scaled by |prod|
    double tail_log2 = (terms + 1) * qlog + 2 + std::max(0.0, prod.abs_upper().log2_abs());
    prod.re.add_err_log2(tail_log2);
    prod.im.add_err_log2(tail_log2);
    if (terms_out) *terms_out = terms;
    return q24.mul(prod);
}

Complex eisenstein_j(const BigRat& re, const Real& im, mpfr_prec_t bits)
{
    Complex q = exp2pii(re, im, bits);
    double qlog = q.abs_upper().log2_abs();
    if (qlog > std::log2(0.01)) throw precision_error("eisenstein_j: |q| > 0.01");

    // sigma_3, sigma_5 sieve
    auto sigma = [](long M, int k) {
        std::vector<u64> s(static_cast<std::size_t>(M) + 1, 0);
        for (long d = 1; d <= M; ++d) {
            u64 dp = 1;
            for (int i = 0; i < k; ++i) dp *= static_cast<u64>(d);
            for (long n = d; n <= M; n += d) s[static_cast<std::size_t>(n)] += dp;
        }
        return s;
    };
    long M = 24;
    {
        // smallest M >= 24 with (M+1)^6 |q|^{M+1} < 2^{-bits-20}
        double target = -static_cast<double>(bits) - 20;
        while (6 * std::log2(static_cast<double>(M + 1)) + (M + 1) * qlog > target) ++M;
    }
    auto s3 = sigma(M, 3);
    auto s5 = sigma(M, 5);

    Complex e4{Real::of_long(1, bits), Real::of_long(0, bits)};
    Complex e6 = e4;
    Complex qk = q;
    for (long n = 1; n <= M; ++n) {
        Complex t4 = qk.mul_real(Real::of_long(240L * static_cast<long>(s3[n]), bits));
        Complex t6 = qk.mul_real(Real::of_long(504L * static_cast<long>(s5[n]), bits));
        e4 = e4.add(t4);
        e6 = e6.sub(t6);
        qk = qk.mul(q);
    }
    // tail bounds: 480 (M+1)^4 |q|^{M+1} and 1008 (M+1)^6 |q|^{M+1}
    auto add_tail = [&](Complex& z, double log2bound) {
        z.re.add_err_log2(log2bound);
        z.im.add_err_log2(log2bound);
    };
    add_tail(e4, std::log2(480.0) + 4 * std::log2(static_cast<double>(M + 1)) + (M + 1) * qlog);
    add_tail(e6, std::log2(1008.0) + 6 * std::log2(static_cast<double>(M + 1)) + (M + 1) * qlog);

    Complex a = e4.pow3();
    Complex b = e6.mul(e6);
    Complex delta_num = a.sub(b); // 1728 * Delta / q-normalization
    return a.mul_real(Real::of_long(1728, bits)).div(delta_num);
}

Complex f_of(const BigRat& re, const Real& im, mpfr_prec_t bits)
{
    Real im9 = im.mul(Real::of_rat(BigRat(1, 9), bits));
    Complex top = eta(re / 9, im9, bits);
    Complex bot = eta(re, im, bits);
    return top.div(bot).pow3().add_long(3);
}

Complex g_of(const BigRat& re, const Real& im, mpfr_prec_t bits)
{
    Real im3 = im.mul_long(3);
    Complex top = eta(re * 3, im3, bits).mul_real(Real::of_long(3, bits));
    Real imd3 = im.mul(Real::of_rat(BigRat(1, 3), bits));
    Complex bot = eta(re / 3, imd3, bits);
    return top.div(bot).pow3().add_long(3);
}

Real CMPoint::imag(mpfr_prec_t bits) const
{
    return Real::of_long(d, bits).sqrt().mul(Real::of_rat(BigRat(1, 2), bits));
}

CMPoint select_w(long d, bool require_9_norm)
{
    if (((d % 3) + 3) % 3 != 2 || !valid_disc(d)) throw value_error("select_w: invalid d");
    bool even = d % 2 == 0;
    long target = even ? (((-d / 4) % 9) + 9) % 9 : (((-d) % 9) + 9) % 9;
    long k = 1;
    while ((k * k) % 9 != target) {
        k += 6;
        if (k > 1000) throw value_error("select_w: no k found"); // cannot happen
    }
    auto norm_of = [&](long kk) { return even ? kk * kk + d / 4 : (kk * kk + d) / 4; };
    if (require_9_norm) {
        int tries = 0;
        while (true) {
            long N = norm_of(k);
            if (N % 9 == 0 && N % 27 != 0) break;
            k += 18;
            if (++tries > 200) throw value_error("select_w: no k with 9 || N(w)");
        }
    }
    CMPoint w;
    w.d = d;
    w.k = k;
    w.re = even ? BigRat(k) : BigRat(k, 2);
    w.norm = norm_of(k);
    return w;
}

ClasspolyResult ring_class_poly(long d, mpfr_prec_t bits_hint, bool parallel)
{
    auto forms = class_list(d);
    long h = static_cast<long>(forms.size());
    mpfr_prec_t B = bits_hint;
    if (B == 0) {
        double est = 0;
        for (const auto& f : forms)
            est += 3.1416 * std::sqrt(static_cast<double>(d)) /
                   (to_long(f.a) * 0.693147);
        B = static_cast<mpfr_prec_t>(std::max(192.0, 32.0 * h + est + 64));
    }

    auto run = [&](mpfr_prec_t bits, DensePoly& out, double& min_margin) -> bool {
        std::vector<Complex> roots; // j values for b >= 0 forms
        std::vector<int> kind;      // 0 = real (ambiguous), 1 = conjugate pair
        std::vector<const QuadForm*> use;
        for (const auto& f : forms)
            if (f.b >= 0) use.push_back(&f);
        roots.assign(use.size(), Complex(bits));
        kind.assign(use.size(), 0);
        bool ok = true;
        #pragma omp parallel for schedule(dynamic) if (parallel)
        for (long i = 0; i < static_cast<long>(use.size()); ++i) {
            const QuadForm& f = *use[i];
            BigRat re(-f.b, 2 * f.a);
            re.canonicalize();
            Real im = Real::of_int(BigInt(d), bits).sqrt().div(Real::of_int(2 * f.a, bits));
            try {
                roots[i] = eisenstein_j(re, im, bits);
            } catch (const precision_error&) {
                #pragma omp atomic write
                ok = false;
            }
            bool ambiguous = f.b == 0 || f.a == f.b || f.a == f.c;
            kind[i] = ambiguous ? 0 : 1;
        }
        if (!ok) return false;
        // polynomial with Real coefficients, ascending
        std::vector<Real> coeffs{Real::of_long(1, bits)};
        auto mul_linear = [&](const Real& c0) {
            // *(x + c0)
            std::vector<Real> next(coeffs.size() + 1, Real(bits));
            for (std::size_t i = 0; i < coeffs.size(); ++i) {
                next[i + 1] = next[i + 1].add(coeffs[i]);
                next[i] = next[i].add(coeffs[i].mul(c0));
            }
            coeffs = std::move(next);
        };
        auto mul_quadratic = [&](const Real& c1, const Real& c0) {
            // *(x^2 + c1 x + c0)
            std::vector<Real> next(coeffs.size() + 2, Real(bits));
            for (std::size_t i = 0; i < coeffs.size(); ++i) {
                next[i + 2] = next[i + 2].add(coeffs[i]);
                next[i + 1] = next[i + 1].add(coeffs[i].mul(c1));
                next[i] = next[i].add(coeffs[i].mul(c0));
            }
            coeffs = std::move(next);
        };
        for (std::size_t i = 0; i < use.size(); ++i) {
            if (kind[i] == 0) {
                if (!roots[i].im.within_err_of_zero()) return false;
                mul_linear(roots[i].re.neg());
            } else {
                // (x - j)(x - conj j) = x^2 - 2 Re j x + |j|^2
                Real c1 = roots[i].re.mul_long(-2);
                Real c0 = roots[i].re.mul(roots[i].re).add(roots[i].im.mul(roots[i].im));
                mul_quadratic(c1, c0);
            }
        }
        if (static_cast<long>(coeffs.size()) != h + 1) return false;
        std::vector<BigRat> ic(coeffs.size());
        min_margin = 1e9;
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            BigInt z;
            if (!coeffs[i].to_integer(z, 0.25)) return false;
            // margin: distance-plus-error must stay below 1/4; log gap recorded
            double le = coeffs[i].log2_err();
            min_margin = std::min(min_margin, -2.0 - le);
            ic[i] = BigRat(z);
        }
        out = DensePoly(std::move(ic), "x");
        return true;
    };

    for (; B <= (mpfr_prec_t(1) << 22); B *= 2) {
        DensePoly h1, h2;
        double m1 = 0, m2 = 0;
        if (!run(B, h1, m1)) continue;
        if (!run(B * 2, h2, m2)) continue;
        if (h1 == h2) {
            ClasspolyResult r;
            r.H = h1;
            r.bits_used = B;
            r.min_margin_log2 = std::min(m1, m2);
            return r;
        }
    }
    throw precision_error("ring_class_poly: no stable result up to the precision cap");
}

std::string classpoly_json(const ClasspolyResult& r, long d)
{
    nlohmann::ordered_json j;
    j["d"] = d;
    j["poly"] = nlohmann::json::parse(poly_to_json(r.H));
    j["bits"] = static_cast<long>(r.bits_used);
    j["rounding_margin_log2"] = r.min_margin_log2;
    return j.dump();
}

// --- identity suite -----------------------------------------------------------

namespace {

Complex poly_at(const DensePoly& p, const Complex& z, mpfr_prec_t bits)
{
    Complex acc{Real::of_long(0, bits), Real::of_long(0, bits)};
    for (std::size_t i = p.c.size(); i-- > 0;) {
        acc = acc.mul(z);
        acc.re = acc.re.add(Real::of_rat(p.c[i], bits));
    }
    return acc;
}

NumericCheck residual_check(const std::string& name, const Complex& resid, mpfr_prec_t bits)
{
    NumericCheck c;
    c.name = name;
    c.log2_residual = resid.abs_upper().log2_abs();
    c.log2_bound = resid.err_upper().log2_abs();
    // the bound itself must be meaningful, not vacuous
    c.pass = resid.within_err_of_zero() && c.log2_bound < -static_cast<double>(bits) / 4;
    return c;
}

} // namespace

ModularSuiteReport modular_identity_suite(long d, const DensePoly& pd, const DensePoly& H,
                                          mpfr_prec_t bits, std::uint64_t seed)
{
    ModularSuiteReport rep;
    rep.d = d;
    CMPoint w = select_w(d, false);
    Real im = w.imag(bits);
    Complex F = f_of(w.re, im, bits);
    Complex G = g_of(w.re, im, bits);
    Complex F3 = F.pow3(), G3 = G.pow3();

    // Fer_3 membership: 27 F^3 + 27 G^3 - F^3 G^3
    {
        Complex r = F3.mul_real(Real::of_long(27, bits))
                        .add(G3.mul_real(Real::of_long(27, bits)))
                        .sub(F3.mul(G3));
        rep.checks.push_back(residual_check("fer3_membership", r, bits));
    }
    Complex jw = eisenstein_j(w.re, im, bits);
    // (2.7a): j(w) (F^3 - 27) - F^3 (F^3-24)^3
    {
        Complex t = F3.add_long(-24);
        Complex r = jw.mul(F3.add_long(-27)).sub(F3.mul(t.pow3()));
        rep.checks.push_back(residual_check("j_eq_2_7a", r, bits));
    }
    // (2.7b): j(w/3) (F^3-27)^3 - F^3 (F^3+216)^3
    {
        BigRat re3 = w.re / 3;
        Real im3 = im.mul(Real::of_rat(BigRat(1, 3), bits));
        Complex jw3 = eisenstein_j(re3, im3, bits);
        Complex r = jw3.mul(F3.add_long(-27).pow3()).sub(F3.mul(F3.add_long(216).pow3()));
        rep.checks.push_back(residual_check("j_eq_2_7b", r, bits));
    }
    // (2.6) for A = F^3: A(A-24)^3 - j(w)(A-27)
    {
        Complex A = F3;
        Complex r = A.mul(A.add_long(-24).pow3()).sub(jw.mul(A.add_long(-27)));
        rep.checks.push_back(residual_check("modular_eq_2_6", r, bits));
    }
    // random z in the upper half-plane
    Rng rng(seed);
    BigRat zre(rng.range(-40, 40), 100);
    zre.canonicalize();
    Real zim = Real::of_rat(BigRat(90 + rng.range(0, 80), 100), bits);
    // (2.8): (f(z)-3) g(z/3) = 3(f(z)+6) cleared of the denominator
    {
        Complex fz = f_of(zre, zim, bits);
        BigRat re3 = zre / 3;
        Real im3 = zim.mul(Real::of_rat(BigRat(1, 3), bits));
        Complex gz3 = g_of(re3, im3, bits);
        Complex r = fz.add_long(-3).mul(gz3).sub(fz.add_long(6).mul_real(Real::of_long(3, bits)));
        rep.checks.push_back(residual_check("sigma1_2_8", r, bits));
    }
    // Lemma 5.2 compatibility: g(f(z/3), f(z)) = 0 with g(x,y)=(y^2+3y+9)x^3-(y+6)^3
    {
        Complex fz = f_of(zre, zim, bits);
        BigRat re3 = zre / 3;
        Real im3 = zim.mul(Real::of_rat(BigRat(1, 3), bits));
        Complex fz3 = f_of(re3, im3, bits);
        Complex quad = fz.mul(fz).add(fz.mul_real(Real::of_long(3, bits))).add_long(9);
        Complex r = quad.mul(fz3.pow3()).sub(fz.add_long(6).pow3());
        rep.checks.push_back(residual_check("T_compat_5_2", r, bits));
    }
    // C_19: z^3 w^3 (z^6+9z^3+27)(w^6+9w^3+27) = 729 with z^3 = F-3, w^3 = G-3
    {
        Complex zc = F.add_long(-3), wc = G.add_long(-3);
        Complex t1 = zc.mul(zc).add(zc.mul_real(Real::of_long(9, bits))).add_long(27);
        Complex t2 = wc.mul(wc).add(wc.mul_real(Real::of_long(9, bits))).add_long(27);
        Complex r = zc.mul(wc).mul(t1).mul(t2).add_long(-729);
        rep.checks.push_back(residual_check("c19_point", r, bits));
    }
    // |p_d(f(w))| below tolerance
    {
        Complex r = poly_at(pd, F, bits);
        rep.checks.push_back(residual_check("pd_at_f_w", r, bits));
    }
    // j(w) is a root of the class polynomial
    {
        Complex r = poly_at(H, jw, bits);
        rep.checks.push_back(residual_check("classpoly_root", r, bits));
    }
    return rep;
}

std::string suite_json(const ModularSuiteReport& r)
{
    nlohmann::ordered_json j;
    j["d"] = r.d;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["log2_residual"] = c.log2_residual;
        e["log2_bound"] = c.log2_bound;
        e["pass"] = c.pass;
        arr.push_back(e);
    }
    j["checks"] = arr;
    j["all_pass"] = r.all_pass();
    return j.dump();
}

} // namespace fermat3
