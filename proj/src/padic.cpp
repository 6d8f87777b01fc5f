#include "fermat3/padic.hpp"
#include "fermat3/lattice.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <mutex>

namespace fermat3 {

RingPtr make_ring(const F3Poly& irreducible_mod3)
{
    if (!is_irreducible_f3(irreducible_mod3))
        throw value_error("modulus is not irreducible over F_3");
    auto ctx = std::make_shared<UnramCtx>();
    ctx->n = irreducible_mod3.degree();
    ctx->gbar = irreducible_mod3;
    ctx->M.assign(ctx->n + 1, 0);
    for (int i = 0; i <= ctx->n; ++i) ctx->M[i] = irreducible_mod3.coeff(i);
    return ctx;
}

RingPtr z3_ring()
{
    static RingPtr r = make_ring(F3Poly::x_power(1));
    return r;
}

P3Elem P3Elem::from_int(RingPtr r, const BigInt& v, int prec)
{
    P3Elem e;
    e.ring = std::move(r);
    e.prec = prec;
    e.c.assign(e.ring->n, 0);
    BigInt m = pow3(prec);
    e.c[0] = ((v % m) + m) % m;
    return e;
}

P3Elem P3Elem::generator(RingPtr r, int prec)
{
    if (r->n < 2) throw value_error("generator needs extension degree >= 2");
    P3Elem e;
    e.ring = std::move(r);
    e.prec = prec;
    e.c.assign(e.ring->n, 0);
    e.c[1] = 1;
    return e;
}

void P3Elem::reduce()
{
    const int n = ring->n;
    BigInt m = pow3(prec);
    // fold down powers >= n using the monic modulus
    for (std::size_t k = c.size(); k-- > static_cast<std::size_t>(n);) {
        BigInt f = c[k];
        if (f != 0)
            for (int j = 0; j < n; ++j) c[k - n + j] -= f * ring->M[j];
        c[k] = 0;
    }
    c.resize(n);
    for (auto& x : c) {
        x %= m;
        if (x < 0) x += m;
    }
}

P3Elem P3Elem::truncated(int new_prec) const
{
    if (new_prec > prec) throw value_error("cannot raise precision by truncation");
    P3Elem e = *this;
    e.prec = new_prec;
    BigInt m = pow3(new_prec);
    for (auto& x : e.c) x %= m;
    return e;
}

int P3Elem::valuation() const
{
    int v = prec;
    for (const auto& x : c)
        if (x != 0) v = std::min(v, static_cast<int>(val3(x)));
    return v;
}

F3Poly P3Elem::residue_mod3() const
{
    std::vector<std::uint8_t> r(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        r[i] = static_cast<std::uint8_t>(BigInt(c[i] % 3).get_ui());
    return F3Poly(std::move(r));
}

bool P3Elem::is_scalar() const
{
    for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i] != 0) return false;
    return true;
}

BigInt P3Elem::scalar() const
{
    if (!is_scalar()) throw value_error("element is not in the base ring Z_3");
    return c[0];
}

std::string P3Elem::json() const
{
    nlohmann::ordered_json j;
    j["prec"] = prec;
    std::vector<std::string> cs;
    BigInt m = pow3(prec);
    for (const auto& x : c) cs.push_back(to_decimal(balanced_mod(x, m)));
    j["coeffs"] = cs;
    return j.dump();
}

bool P3Elem::operator==(const P3Elem& o) const
{
    if (ring.get() != o.ring.get()) return false;
    int p = std::min(prec, o.prec);
    BigInt m = pow3(p);
    for (std::size_t i = 0; i < c.size(); ++i)
        if ((c[i] - o.c[i]) % m != 0) return false;
    return true;
}

static void check_rings(const P3Elem& a, const P3Elem& b)
{
    if (a.ring.get() != b.ring.get()) throw value_error("mixed unramified rings");
}

P3Elem operator+(const P3Elem& a, const P3Elem& b)
{
    check_rings(a, b);
    P3Elem r = a;
    r.prec = std::min(a.prec, b.prec);
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
    r.reduce();
    return r;
}

P3Elem operator-(const P3Elem& a, const P3Elem& b)
{
    check_rings(a, b);
    P3Elem r = a;
    r.prec = std::min(a.prec, b.prec);
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
    r.reduce();
    return r;
}

P3Elem operator-(const P3Elem& a)
{
    P3Elem r = a;
    for (auto& x : r.c) x = -x;
    r.reduce();
    return r;
}

P3Elem operator*(const P3Elem& a, const P3Elem& b)
{
    check_rings(a, b);
    P3Elem r;
    r.ring = a.ring;
    r.prec = std::min(a.prec, b.prec);
    r.c.assign(2 * a.ring->n - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    r.reduce();
    return r;
}

P3Elem mul_int(const P3Elem& a, const BigInt& k)
{
    P3Elem r = a;
    for (auto& x : r.c) x *= k;
    r.reduce();
    return r;
}

P3Elem mul_pow3(const P3Elem& a, int k)
{
    if (k == 0) return a;
    P3Elem r = a;
    r.prec = a.prec + k;
    BigInt f = pow3(k);
    for (auto& x : r.c) x *= f;
    return r;
}

P3Elem div_pow3(const P3Elem& a, int k)
{
    if (k == 0) return a;
    if (a.prec <= k) throw precision_error("no precision left after division by 3^k");
    P3Elem r = a;
    r.prec = a.prec - k;
    BigInt f = pow3(k);
    for (auto& x : r.c) {
        if (x % f != 0) throw value_error("inexact division by power of 3");
        x /= f;
    }
    return r;
}

P3Elem inv_unit(const P3Elem& a)
{
    if (a.valuation() != 0) throw value_error("inverse of a non-unit");
    F3Poly rbar = inv_mod_f3(a.residue_mod3(), a.ring->gbar);
    P3Elem x;
    x.ring = a.ring;
    x.prec = a.prec;
    x.c.assign(a.ring->n, 0);
    for (int i = 0; i <= rbar.degree(); ++i) x.c[i] = rbar.coeff(i);
    P3Elem one = P3Elem::from_int(a.ring, 1, a.prec);
    for (int iter = 0; iter < 64; ++iter) {
        P3Elem err = one - a * x;
        if (err.is_zero_at_prec()) return x;
        x = x + x * err; // x(2 - a x)
    }
    throw precision_error("unit inverse iteration failed to converge");
}

P3Elem pow_elem(const P3Elem& a, const BigInt& e)
{
    P3Elem r = P3Elem::from_int(a.ring, 1, a.prec);
    P3Elem b = a;
    BigInt k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return r;
}

// --- Laurent ------------------------------------------------------------------

void P3Laurent::normalize()
{
    if (u.is_zero_at_prec()) return;
    int v = u.valuation();
    if (v > 0) {
        u = div_pow3(u, v);
        e += v;
    }
}

P3Elem P3Laurent::to_integral() const
{
    P3Laurent t = *this;
    t.normalize();
    if (t.e < 0) {
        if (t.u.is_zero_at_prec()) {
            // indistinguishable from zero; return zero at what precision remains
            long p = t.abs_prec();
            if (p <= 0) throw precision_error("no precision left in to_integral");
            return P3Elem::from_int(t.u.ring, 0, static_cast<int>(p));
        }
        throw value_error("element has negative valuation");
    }
    return mul_pow3(t.u, static_cast<int>(t.e));
}

std::string P3Laurent::json() const
{
    nlohmann::ordered_json j = nlohmann::json::parse(u.json());
    j["exp3"] = e;
    return j.dump();
}

static void align(const P3Laurent& a, const P3Laurent& b, P3Elem& ua, P3Elem& ub, long& e)
{
    e = std::min(a.e, b.e);
    ua = a.e == e ? a.u : mul_pow3(a.u, static_cast<int>(a.e - e));
    ub = b.e == e ? b.u : mul_pow3(b.u, static_cast<int>(b.e - e));
}

P3Laurent operator+(const P3Laurent& a, const P3Laurent& b)
{
    P3Elem ua, ub;
    long e;
    align(a, b, ua, ub, e);
    P3Laurent r{ua + ub, e};
    r.normalize();
    return r;
}

P3Laurent operator-(const P3Laurent& a, const P3Laurent& b)
{
    P3Elem ua, ub;
    long e;
    align(a, b, ua, ub, e);
    P3Laurent r{ua - ub, e};
    r.normalize();
    return r;
}

P3Laurent operator-(const P3Laurent& a) { return P3Laurent{-a.u, a.e}; }

P3Laurent operator*(const P3Laurent& a, const P3Laurent& b)
{
    P3Laurent r{a.u * b.u, a.e + b.e};
    r.normalize();
    return r;
}

P3Laurent operator/(const P3Laurent& a, const P3Laurent& b)
{
    P3Laurent bb = b;
    bb.normalize();
    if (bb.u.is_zero_at_prec()) throw precision_error("division by 3-adically indistinguishable zero");
    P3Laurent r{a.u * inv_unit(bb.u), a.e - bb.e};
    r.normalize();
    return r;
}

P3Laurent laurent_int(RingPtr r, long v, int prec)
{
    return P3Laurent{P3Elem::from_int(std::move(r), v, prec), 0};
}

// --- series coefficients -------------------------------------------------------

BigInt bk_value(int k)
{
    if (k < 1) throw value_error("bk_value needs k >= 1");
    if (k == 1) return 3;
    BigInt p1 = 1, p2 = 1;
    for (int t = 3 * k - 4; t >= 2; t -= 3) p1 *= t;
    for (int t = 3 * k - 5; t >= 1; t -= 3) p2 *= t;
    return p1 + 2 * p2;
}

BigInt tk_value(int k)
{
    BigInt num = pow3(2 * k - 1) * bk_value(k);
    BigInt fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(k));
    if (num % fact != 0) throw value_error("t_k is not an integer"); // cannot happen
    return num / fact;
}

const std::vector<BigInt>& t_coeffs(int prec)
{
    static std::mutex mu;
    static std::map<int, std::vector<BigInt>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(prec);
    if (it != cache.end()) return it->second;
    // v3(t_k) >= (3k-1)/2, but is not monotone in k, so run to the
    // guaranteed cutoff rather than stopping at the first large valuation.
    int kend = (2 * prec + 1) / 3 + 2;
    std::vector<BigInt> v{0, tk_value(1)}; // index k
    for (int k = 2; k <= kend; ++k) v.push_back(tk_value(k));
    return cache.emplace(prec, std::move(v)).first->second;
}

// --- the maps T, S, sigma1 ------------------------------------------------------

P3Elem T_eval(const P3Elem& z)
{
    if (z.valuation() != 0) throw value_error("T_eval needs |z|_3 = 1 on the ring path");
    const auto& tk = t_coeffs(z.prec);
    P3Elem z3 = z * z * z;
    P3Elem w3 = inv_unit(z3);
    P3Elem acc = z3 - P3Elem::from_int(z.ring, 15, z.prec);
    P3Elem pw = w3;
    for (std::size_t k = 2; k < tk.size(); ++k) {
        acc = acc - mul_int(pw, tk[k]);
        if (k + 1 < tk.size()) pw = pw * w3;
    }
    return acc;
}

P3Laurent T_eval(const P3Laurent& z0)
{
    P3Laurent z = z0;
    z.normalize();
    if (z.valuation() > 0) throw value_error("T_eval needs |z|_3 >= 1");
    if (z.e == 0) return P3Laurent::of(T_eval(z.u));
    int prec = z.u.prec;
    const auto& tk = t_coeffs(prec + static_cast<int>(-z.e) * 8); // margin for growing terms
    P3Laurent z3 = z * z * z;
    P3Laurent w3 = laurent_int(z.u.ring, 1, prec) / z3;
    P3Laurent acc = z3 - laurent_int(z.u.ring, 15, prec);
    P3Laurent pw = w3;
    for (std::size_t k = 2; k < tk.size(); ++k) {
        acc = acc - pw * P3Laurent{P3Elem::from_int(z.u.ring, tk[k], prec), 0};
        if (k + 1 < tk.size()) pw = pw * w3;
    }
    return acc;
}

P3Elem S_eval(const P3Elem& z)
{
    P3Elem zm3 = z - P3Elem::from_int(z.ring, 3, z.prec);
    if (zm3.valuation() < 3 && !zm3.is_zero_at_prec())
        throw value_error("S_eval needs z in the disk D_3");
    P3Elem q = z * z + mul_int(z, 3) + P3Elem::from_int(z.ring, 9, z.prec);
    P3Elem unit = div_pow3(q, 3); // q = 27 * unit
    P3Elem croot = cube_root_unit(inv_unit(unit));
    P3Elem zp6 = z + P3Elem::from_int(z.ring, 6, z.prec);
    return div_pow3(zp6, 1) * croot;
}

P3Elem sigma1(const P3Elem& z)
{
    P3Elem t = z - P3Elem::from_int(z.ring, 3, z.prec);
    if (t.valuation() != 0)
        throw value_error("sigma1 at z with non-unit z-3");
    P3Elem r = mul_pow3(inv_unit(t), 3);
    return P3Elem::from_int(z.ring, 3, r.prec) + r;
}

P3Elem cube_root_unit(const P3Elem& u)
{
    if (u.valuation() != 0) throw value_error("cube root of a non-unit");
    if (u.prec < 4) throw precision_error("cube root needs at least 4 digits");
    const int P = u.prec;
    const int n = u.ring->n;
    // residue cube root: cubing is the Frobenius, so the root is u^(3^(n-1))
    F3Poly rbar = u.residue_mod3();
    for (int i = 0; i < n - 1; ++i) rbar = mulmod_f3(mulmod_f3(rbar, rbar, u.ring->gbar), rbar, u.ring->gbar);
    P3Elem x;
    x.ring = u.ring;
    x.prec = P;
    x.c.assign(n, 0);
    for (int i = 0; i <= rbar.degree(); ++i) x.c[i] = rbar.coeff(i);

    for (int guard = 0; guard <= P + 2; ++guard) {
        P3Elem diff = u - x * x * x;
        if (diff.is_zero_at_prec()) break;
        int m = diff.valuation();
        if (m < 2) throw value_error("no cube root mod 27");
        P3Elem delta = div_pow3(diff, m);
        F3Poly xb = x.residue_mod3();
        F3Poly x2inv = inv_mod_f3(mulmod_f3(xb, xb, u.ring->gbar), u.ring->gbar);
        F3Poly tbar = mulmod_f3(delta.residue_mod3(), x2inv, u.ring->gbar);
        P3Elem step;
        step.ring = u.ring;
        step.prec = P;
        step.c.assign(n, 0);
        for (int i = 0; i <= tbar.degree(); ++i) step.c[i] = tbar.coeff(i);
        x = x + mul_pow3(step, m - 1).truncated(P);
    }
    // the root is certified one digit short of working precision
    P3Elem out = x.truncated(P - 1);
    P3Elem check = out * out * out - u.truncated(P - 1);
    if (!check.is_zero_at_prec()) throw value_error("cube root verification failed");
    return out;
}

P3Elem embed_sqrt(long d, int prec)
{
    if (((d % 3) + 3) % 3 != 2) throw value_error("embed_sqrt needs d = 2 (mod 3)");
    RingPtr r = z3_ring();
    P3Elem a = P3Elem::from_int(r, BigInt(-d), prec);
    P3Elem x = P3Elem::from_int(r, 1, prec);
    P3Elem half = inv_unit(P3Elem::from_int(r, 2, prec));
    for (int iter = 0; iter < 64; ++iter) {
        P3Elem err = x * x - a;
        if (err.is_zero_at_prec()) break;
        x = (x + a * inv_unit(x)) * half;
    }
    if (!(x * x - a).is_zero_at_prec()) throw precision_error("sqrt lift failed");
    BigInt b9 = balanced_mod(x.c[0] % 9, BigInt(9));
    if (b9 < 0) x = -x;
    return x;
}

// --- periodic points -------------------------------------------------------------

PeriodicPoint lift_periodic(long d, const F3Poly& factor_mod3, int prec)
{
    int n = factor_mod3.degree();
    if (n < 1) throw value_error("constant modulus");
    if (factor_mod3.coeff(0) == 0) throw value_error("root 0 cannot be a unit periodic point");
    PeriodicPoint pp;
    pp.d = d;
    pp.n = n;
    P3Elem x;
    if (n == 1) {
        pp.ring = z3_ring();
        // root of x + c0 is -c0
        x = P3Elem::from_int(pp.ring, BigInt(-(long)factor_mod3.coeff(0)), prec);
    } else {
        pp.ring = make_ring(factor_mod3);
        x = P3Elem::generator(pp.ring, prec);
    }
    bool converged = false;
    for (int sweep = 0; sweep < 2 * prec; ++sweep) {
        P3Elem next = x;
        for (int i = 0; i < n; ++i) next = T_eval(next);
        if (next == x) {
            converged = true;
            x = next;
            break;
        }
        x = next;
    }
    if (!converged) throw precision_error("periodic-point iteration did not converge");
    pp.orbit.push_back(x);
    for (int i = 1; i < n; ++i) pp.orbit.push_back(T_eval(pp.orbit.back()));
    // minimality: T^k(xi) != xi for 0 < k < n
    for (int k = 1; k < n; ++k)
        if (pp.orbit[k] == pp.orbit[0]) throw value_error("period is not minimal");
    if (pp.orbit[0].valuation() != 0) throw value_error("periodic point is not a unit");
    return pp;
}

std::vector<PeriodicPoint> lift_all_orbits(long d, const DensePoly& H, int prec)
{
    F3Poly Hbar = reduce_mod3(H);
    if (Hbar.degree() != H.degree())
        throw value_error("class polynomial degree drops mod 3");
    if (Hbar.coeff(0) == 0) throw value_error("3 divides H(0): d is not 2 (mod 3)");
    auto factors = factor_f3(Hbar);
    int n = factors.front().first.degree();
    for (const auto& [g, mult] : factors) {
        if (mult != 1) throw value_error("class polynomial mod 3 is not squarefree");
        if (g.degree() != n) throw value_error("class polynomial mod 3 has mixed factor degrees");
    }
    std::vector<PeriodicPoint> out;
    for (const auto& [g, mult] : factors) out.push_back(lift_periodic(d, g, prec));
    return out;
}

// --- assembling integer polynomials ----------------------------------------------

namespace {

// product of (x - r) over the orbit, coefficients projected to Z_3 scalars
std::vector<BigInt> orbit_product_scalars(const std::vector<P3Elem>& roots, int& prec_out)
{
    RingPtr ring = roots[0].ring;
    int prec = roots[0].prec;
    for (const auto& r : roots) prec = std::min(prec, r.prec);
    std::vector<P3Elem> coef{P3Elem::from_int(ring, 1, prec)};
    for (const auto& r : roots) {
        std::vector<P3Elem> next(coef.size() + 1, P3Elem::from_int(ring, 0, prec));
        for (std::size_t i = 0; i < coef.size(); ++i) {
            next[i + 1] = next[i + 1] + coef[i];
            next[i] = next[i] - r * coef[i];
        }
            coef = std::move(next);
    }
    // coef is ascending; leading coefficient is 1
    std::vector<BigInt> out;
    prec_out = prec;
    for (auto& e : coef) {
        prec_out = std::min(prec_out, e.prec);
        if (!e.is_scalar())
            throw precision_error("orbit product has nonconstant coordinates");
        out.push_back(e.scalar());
    }
    return out;
}

std::vector<BigInt> mul_mod3N(const std::vector<BigInt>& a, const std::vector<BigInt>& b,
                              const BigInt& m)
{
    std::vector<BigInt> c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % m;
    }
    return c;
}

DensePoly balanced_poly(const std::vector<BigInt>& coeffs, const BigInt& m)
{
    std::vector<BigRat> out(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) out[i] = BigRat(balanced_mod(coeffs[i], m));
    return DensePoly(std::move(out), "x");
}

bool pd_certify(const DensePoly& p, const DensePoly& H)
{
    long h = H.degree();
    if (p.degree() != 2 * h || !p.is_monic() || !p.is_integral()) return false;
    // norm: p(3) = 3^{3h}
    if (p(BigRat(3)) != BigRat(pow3(static_cast<unsigned long>(3 * h)))) return false;
    // functional equation of the involution s1
    DensePoly num = DensePoly::from_ints({18, 3}); // 3(x+6)
    DensePoly den = DensePoly::from_ints({-3, 1}); // x-3
    DensePoly lhs = homogeneous_subst(p, num, den);
    DensePoly rhs = BigRat(pow3(static_cast<unsigned long>(3 * h))) * p;
    if (!(lhs == rhs)) return false;
    // p = x^h H (mod 3)
    F3Poly want = F3Poly::x_power(static_cast<std::size_t>(h)) * reduce_mod3(H);
    if (!(reduce_mod3(p) == want)) return false;
    return true;
}

bool qd_certify(const DensePoly& q, const DensePoly& H)
{
    long h = H.degree();
    if (q.degree() != 2 * h || !q.is_monic() || !q.is_integral()) return false;
    if (q.coeff(0) != BigRat(pow3(static_cast<unsigned long>(h)))) return false;
    // x^{2h} q(3/x) = 3^h q(x): coefficientwise 3^{2h-j} q_{2h-j} = 3^h q_j
    for (long j = 0; j <= 2 * h; ++j) {
        BigRat lhs = BigRat(pow3(static_cast<unsigned long>(2 * h - j))) * q.coeff(2 * h - j);
        BigRat rhs = BigRat(pow3(static_cast<unsigned long>(h))) * q.coeff(j);
        if (lhs != rhs) return false;
    }
    F3Poly want = F3Poly::x_power(static_cast<std::size_t>(h)) * reduce_mod3(H);
    if (!(reduce_mod3(q) == want)) return false;
    return true;
}

} // namespace

DensePoly pd_padic(long d, const DensePoly& H, const PadicOptions& opt)
{
    for (int prec = opt.prec; prec <= opt.prec_cap; prec *= 2) {
        try {
            auto orbits = lift_all_orbits(d, H, prec);
            int pmin = prec;
            std::vector<BigInt> acc{1};
            BigInt m = pow3(prec);
            for (const auto& orb : orbits) {
                int p1 = prec, p2 = prec;
                auto f = orbit_product_scalars(orb.orbit, p1);
                std::vector<P3Elem> conj;
                for (const auto& xi : orb.orbit) conj.push_back(sigma1(xi));
                auto ft = orbit_product_scalars(conj, p2);
                pmin = std::min({pmin, p1, p2});
                acc = mul_mod3N(acc, f, m);
                acc = mul_mod3N(acc, ft, m);
            }
            BigInt mm = pow3(pmin);
            for (auto& x : acc) x %= mm;
            DensePoly p = balanced_poly(acc, mm);
            if (pd_certify(p, H)) return p;
        } catch (const precision_error&) {
            // fall through to doubled precision
        }
    }
    throw precision_error("pd_padic: certification failed up to the precision cap (d=" +
                          std::to_string(d) + ")");
}

DensePoly qd_padic(long d, const DensePoly& H, const PadicOptions& opt)
{
    for (int prec = opt.prec; prec <= opt.prec_cap; prec *= 2) {
        try {
            auto orbits = lift_all_orbits(d, H, prec);
            int pmin = prec;
            std::vector<BigInt> acc{1};
            BigInt m = pow3(prec);
            for (const auto& orb : orbits) {
                std::vector<P3Elem> gam, gam2;
                for (const auto& xi : orb.orbit) {
                    P3Elem g = cube_root_unit(xi - P3Elem::from_int(xi.ring, 3, xi.prec));
                    gam.push_back(g);
                    gam2.push_back(mul_int(inv_unit(g), 3));
                }
                int p1 = prec, p2 = prec;
                auto f = orbit_product_scalars(gam, p1);
                auto ft = orbit_product_scalars(gam2, p2);
                pmin = std::min({pmin, p1, p2});
                acc = mul_mod3N(acc, f, m);
                acc = mul_mod3N(acc, ft, m);
            }
            BigInt mm = pow3(pmin);
            for (auto& x : acc) x %= mm;
            DensePoly q = balanced_poly(acc, mm);
            if (qd_certify(q, H)) return q;
        } catch (const precision_error&) {
        }
    }
    throw precision_error("qd_padic: certification failed up to the precision cap (d=" +
                          std::to_string(d) + ")");
}

QuadPoly conj_quad(const QuadPoly& m)
{
    QuadPoly r = m;
    for (auto& c : r) c.b = -c.b;
    return r;
}

static QuadPoly quad_mul(const QuadPoly& a, const QuadPoly& b, long d)
{
    QuadPoly r(a.size() + b.size() - 1, QuadCoeff{BigRat(0), BigRat(0)});
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j].a += a[i].a * b[j].a - BigRat(d) * a[i].b * b[j].b;
            r[i + j].b += a[i].a * b[j].b + a[i].b * b[j].a;
        }
    return r;
}

std::string quadpoly_json(const QuadPoly& m, long d)
{
    nlohmann::ordered_json j;
    j["d"] = d;
    nlohmann::ordered_json cs = nlohmann::ordered_json::array();
    for (const auto& c : m) {
        nlohmann::ordered_json e;
        e["a"] = to_decimal(c.a);
        e["b"] = to_decimal(c.b);
        cs.push_back(e);
    }
    j["coeffs"] = cs;
    return j.dump();
}

QuadPoly md_padic(long d, const DensePoly& H, const PadicOptions& opt)
{
    DensePoly p = pd_padic(d, H, opt);
    for (int prec = opt.prec; prec <= opt.prec_cap; prec *= 2) {
        try {
            auto orbits = lift_all_orbits(d, H, prec);
            P3Elem s = embed_sqrt(d, prec);
            int pmin = prec;
            std::vector<BigInt> acc{1};
            BigInt m = pow3(prec);
            for (const auto& orb : orbits) {
                int p1 = prec;
                auto f = orbit_product_scalars(orb.orbit, p1);
                pmin = std::min(pmin, p1);
                acc = mul_mod3N(acc, f, m);
            }
            BigInt mm = pow3(pmin);
            BigInt sres = s.c[0] % mm;
            QuadPoly md;
            bool ok = true;
            // try growing heights; the product certification is the arbiter
            BigInt height = 1024;
            BigInt hcap;
            mpz_root(hcap.get_mpz_t(), mm.get_mpz_t(), 3);
            for (auto& x : acc) x %= mm;
            for (const auto& x : acc) {
                std::optional<QuadRecon> got;
                for (BigInt hh = height; hh <= hcap * 4; hh *= 16) {
                    got = reconstruct_quad_lattice(x, sres, mm, hh);
                    if (got) break;
                }
                if (!got) {
                    ok = false;
                    break;
                }
                BigRat a(got->a, got->c), b(got->b, got->c);
                a.canonicalize();
                b.canonicalize();
                md.push_back(QuadCoeff{a, b});
            }
            if (ok) {
                QuadPoly prod = quad_mul(md, conj_quad(md), d);
                bool match = static_cast<long>(prod.size()) == p.degree() + 1;
                if (match)
                    for (std::size_t i = 0; i < prod.size(); ++i)
                        if (prod[i].b != 0 || prod[i].a != p.coeff(i)) match = false;
                if (match) return md;
            }
        } catch (const precision_error&) {
        }
    }
    throw precision_error("md_padic: reconstruction failed up to the precision cap (d=" +
                          std::to_string(d) + ")");
}

TraceValues trace_values(const std::vector<PeriodicPoint>& orbits)
{
    int prec = orbits[0].orbit[0].prec;
    for (const auto& o : orbits)
        for (const auto& x : o.orbit) prec = std::min(prec, x.prec);
    BigInt m = pow3(prec);
    BigInt t1 = 0, t2 = 0;
    for (const auto& o : orbits) {
        P3Elem s1 = P3Elem::from_int(o.ring, 0, prec);
        P3Elem s2 = s1;
        int n = o.n;
        for (int k = 0; k < n; ++k) {
            s1 = s1 + inv_unit(o.orbit[k]);
            s2 = s2 + inv_unit(o.orbit[k] * o.orbit[(k + 1) % n]);
        }
        t1 = (t1 + s1.scalar()) % m;
        t2 = (t2 + s2.scalar()) % m;
    }
    TraceValues tv;
    tv.tr1 = P3Elem::from_int(z3_ring(), t1, prec);
    tv.tr2 = P3Elem::from_int(z3_ring(), t2, prec);
    return tv;
}

int z3_valuation(const P3Elem& x) { return x.valuation(); }

BigRat reconstruct_rational(const P3Elem& x, const BigInt& height)
{
    BigInt m = pow3(x.prec);
    auto got = reconstruct_rational_lattice(x.scalar(), m, height);
    if (!got) throw value_error("rational reconstruction failed within the height budget");
    return *got;
}

std::optional<QuadCoeff> reconstruct_quadfield(const P3Elem& x, const P3Elem& sqrt_md,
                                               const BigInt& height)
{
    int prec = std::min(x.prec, sqrt_md.prec);
    BigInt m = pow3(prec);
    auto got = reconstruct_quad_lattice(x.scalar() % m, sqrt_md.scalar() % m, m, height);
    if (!got) return std::nullopt;
    BigRat a(got->a, got->c), b(got->b, got->c);
    a.canonicalize();
    b.canonicalize();
    return QuadCoeff{a, b};
}

} // namespace fermat3
