#include "fermat3/poly.hpp"
#include "fermat3/modarith.hpp"

#include <json.hpp>

#include <algorithm>

namespace fermat3 {

DensePoly DensePoly::from_ints(std::initializer_list<long> asc, std::string v)
{
    std::vector<BigRat> c;
    for (long x : asc) c.emplace_back(x);
    return DensePoly(std::move(c), std::move(v));
}

DensePoly DensePoly::from_strings(const std::vector<std::string>& asc, std::string v)
{
    std::vector<BigRat> c;
    for (const auto& s : asc) c.push_back(parse_rat(s));
    return DensePoly(std::move(c), std::move(v));
}

DensePoly DensePoly::x_power(std::size_t k, std::string v)
{
    std::vector<BigRat> c(k + 1, BigRat(0));
    c[k] = 1;
    return DensePoly(std::move(c), std::move(v));
}

DensePoly DensePoly::constant(const BigRat& a, std::string v)
{
    return DensePoly({a}, std::move(v));
}

bool DensePoly::is_integral() const
{
    for (const auto& q : c)
        if (q.get_den() != 1) return false;
    return true;
}

BigRat DensePoly::operator()(const BigRat& x) const
{
    BigRat r(0);
    for (std::size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
}

DensePoly operator+(const DensePoly& a, const DensePoly& b)
{
    std::vector<BigRat> c(std::max(a.c.size(), b.c.size()), BigRat(0));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
    return DensePoly(std::move(c), a.var);
}

DensePoly operator-(const DensePoly& a, const DensePoly& b)
{
    std::vector<BigRat> c(std::max(a.c.size(), b.c.size()), BigRat(0));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
    return DensePoly(std::move(c), a.var);
}

DensePoly operator-(const DensePoly& a)
{
    DensePoly r = a;
    for (auto& q : r.c) q = -q;
    return r;
}

DensePoly operator*(const DensePoly& a, const DensePoly& b)
{
    if (a.is_zero() || b.is_zero()) return DensePoly({}, a.var);
    std::vector<BigRat> c(a.c.size() + b.c.size() - 1, BigRat(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
    }
    return DensePoly(std::move(c), a.var);
}

DensePoly operator*(const BigRat& s, const DensePoly& a)
{
    DensePoly r = a;
    for (auto& q : r.c) q *= s;
    r.normalize();
    return r;
}

DensePoly derivative(const DensePoly& a)
{
    if (a.c.size() <= 1) return DensePoly({}, a.var);
    std::vector<BigRat> c(a.c.size() - 1);
    for (std::size_t i = 1; i < a.c.size(); ++i) c[i - 1] = BigRat(i) * a.c[i];
    return DensePoly(std::move(c), a.var);
}

DensePoly monic(const DensePoly& a)
{
    if (a.is_zero()) return a;
    return BigRat(1) / a.lc() * a;
}

DensePoly pow_poly(const DensePoly& a, unsigned e)
{
    DensePoly r = DensePoly::constant(1, a.var);
    DensePoly base = a;
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

void divrem(const DensePoly& a, const DensePoly& b, DensePoly& q, DensePoly& r)
{
    if (b.is_zero()) throw value_error("division by zero polynomial");
    r = a;
    q = DensePoly({}, a.var);
    if (a.degree() < b.degree()) return;
    q.c.assign(a.c.size() - b.c.size() + 1, BigRat(0));
    BigRat inv = BigRat(1) / b.lc();
    for (std::size_t k = a.c.size(); k-- > b.c.size() - 1;) {
        if (k >= r.c.size() || r.c[k] == 0) continue;
        BigRat f = r.c[k] * inv;
        q.c[k - (b.c.size() - 1)] = f;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            r.c[k - (b.c.size() - 1) + j] -= f * b.c[j];
    }
    q.normalize();
    r.normalize();
}

DensePoly exact_div(const DensePoly& a, const DensePoly& b)
{
    DensePoly q, r;
    divrem(a, b, q, r);
    if (!r.is_zero()) throw value_error("inexact polynomial division");
    return q;
}

bool divides(const DensePoly& b, const DensePoly& a)
{
    if (a.is_zero()) return true;
    if (b.is_zero() || b.degree() > a.degree()) return false;
    DensePoly q, r;
    divrem(a, b, q, r);
    return r.is_zero();
}

BigInt int_content(const DensePoly& a)
{
    BigInt g = 0;
    for (const auto& q : a.c) {
        if (q.get_den() != 1) throw value_error("content of non-integral polynomial");
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num().get_mpz_t());
    }
    return g == 0 ? BigInt(1) : g;
}

DensePoly primitive_part(const DensePoly& a)
{
    if (a.is_zero()) return a;
    BigInt den(1);
    for (const auto& q : a.c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
    DensePoly b = BigRat(den) * a;
    BigInt cont = int_content(b);
    if (b.lc() < 0) cont = -cont;
    return BigRat(1, cont) * b;
}

// --- modular gcd ---------------------------------------------------------

static std::vector<u64> poly_mod_p(const DensePoly& a, const PrimeField& F)
{
    std::vector<u64> r(a.c.size());
    for (std::size_t i = 0; i < a.c.size(); ++i) r[i] = F.reduce(a.c[i].get_num());
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

static std::vector<u64> gcd_mod_p(std::vector<u64> a, std::vector<u64> b, const PrimeField& F)
{
    while (!b.empty()) {
        std::size_t db = b.size() - 1;
        u64 binv = F.inv(b.back());
        for (std::size_t k = a.size(); k-- > db;) {
            u64 q = F.mul(a[k], binv);
            if (q == 0) continue;
            for (std::size_t j = 0; j <= db; ++j)
                a[k - db + j] = F.sub(a[k - db + j], F.mul(q, b[j]));
        }
        a.resize(db);
        while (!a.empty() && a.back() == 0) a.pop_back();
        std::swap(a, b);
    }
    if (!a.empty()) {
        u64 inv = F.inv(a.back());
        for (auto& x : a) x = F.mul(x, inv);
    }
    return a;
}

static DensePoly gcd_rational_euclid(DensePoly a, DensePoly b)
{
    while (!b.is_zero()) {
        DensePoly q, r;
        divrem(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

DensePoly gcd_poly(const DensePoly& a, const DensePoly& b)
{
    if (a.is_zero() && b.is_zero()) throw value_error("gcd of two zero polynomials");
    if (a.is_zero()) return monic(b);
    if (b.is_zero()) return monic(a);
    DensePoly pa = primitive_part(a), pb = primitive_part(b);
    if (pa.degree() + pb.degree() <= 16) return gcd_rational_euclid(pa, pb);

    BigInt gamma;
    mpz_gcd(gamma.get_mpz_t(), pa.lc().get_num().get_mpz_t(), pb.lc().get_num().get_mpz_t());

    int dmin = std::min(pa.degree(), pb.degree()) + 1;
    std::vector<CrtAccumulator> crt;
    DensePoly prev;
    bool have_prev = false;
    std::size_t prime_index = 0;
    while (prime_index < 256) {
        u64 p = modular_primes(1, prime_index++)[0];
        PrimeField F(p);
        if (F.reduce(pa.lc().get_num()) == 0 || F.reduce(pb.lc().get_num()) == 0) continue;
        auto g = gcd_mod_p(poly_mod_p(pa, F), poly_mod_p(pb, F), F);
        int dg = static_cast<int>(g.size()) - 1;
        if (dg == 0) return DensePoly::constant(1, a.var);
        if (dg > dmin) continue; // unlucky prime
        if (dg < dmin) {
            dmin = dg;
            crt.assign(g.size(), CrtAccumulator{});
            have_prev = false;
        }
        u64 gm = F.reduce(gamma);
        for (std::size_t i = 0; i < g.size(); ++i) crt[i].add(F.mul(g[i], gm), p);
        std::vector<BigRat> cand(crt.size());
        for (std::size_t i = 0; i < crt.size(); ++i) cand[i] = BigRat(crt[i].balanced());
        DensePoly candidate = primitive_part(DensePoly(std::move(cand), a.var));
        if (have_prev && candidate == prev && divides(candidate, pa) && divides(candidate, pb))
            return monic(candidate);
        prev = candidate;
        have_prev = true;
    }
    return gcd_rational_euclid(pa, pb); // should not be reached
}

// --- square root ----------------------------------------------------------

DensePoly poly_sqrt(const DensePoly& a)
{
    if (a.is_zero() || a.degree() % 2 != 0)
        throw value_error("not a scaled square");
    BigRat c = a.lc();
    if (c <= 0) throw value_error("not a scaled square");
    DensePoly ah = monic(a);
    std::size_t m = static_cast<std::size_t>(a.degree()) / 2;
    std::vector<BigRat> b(m + 1, BigRat(0));
    b[m] = 1;
    // Coefficient of x^{m+k} in B^2 is 2*b_k plus an ordered sum over pairs
    // with both indices strictly between k and m.
    for (std::size_t k = m; k-- > 0;) {
        BigRat acc = ah.coeff(m + k);
        for (std::size_t i = k + 1; i < m; ++i) {
            std::size_t j = m + k - i;
            if (j > k && j < m) acc -= b[i] * b[j];
        }
        b[k] = acc / 2;
    }
    DensePoly B(std::move(b), a.var);
    if (!(B * B == ah)) throw value_error("not a scaled square");
    return B;
}

// --- substitutions --------------------------------------------------------

DensePoly homogeneous_subst(const DensePoly& a, const DensePoly& num, const DensePoly& den)
{
    if (a.is_zero()) return a;
    std::size_t m = static_cast<std::size_t>(a.degree());
    std::vector<DensePoly> np(m + 1), dp(m + 1);
    np[0] = dp[0] = DensePoly::constant(1, num.var);
    for (std::size_t i = 1; i <= m; ++i) {
        np[i] = np[i - 1] * num;
        dp[i] = dp[i - 1] * den;
    }
    DensePoly acc({}, num.var);
    for (std::size_t j = 0; j <= m; ++j) {
        if (a.c[j] == 0) continue;
        acc = acc + a.c[j] * (np[j] * dp[m - j]);
    }
    return acc;
}

DensePoly compose(const DensePoly& a, const DensePoly& inner)
{
    DensePoly r({}, inner.var);
    for (std::size_t i = a.c.size(); i-- > 0;)
        r = r * inner + DensePoly::constant(a.c[i], inner.var);
    return r;
}

DensePoly shift_arg(const DensePoly& a, const BigRat& t)
{
    return compose(a, DensePoly({t, BigRat(1)}, a.var));
}

// --- Sturm ----------------------------------------------------------------

static int sign_at_inf(const DensePoly& p, bool plus)
{
    if (p.is_zero()) return 0;
    int s = sgn(p.lc());
    if (!plus && (p.degree() % 2 == 1)) s = -s;
    return s;
}

int count_real_roots(const DensePoly& a)
{
    if (a.is_zero()) throw value_error("real roots of zero polynomial");
    if (a.degree() == 0) return 0;
    DensePoly sq = exact_div(a, gcd_poly(a, derivative(a)));
    std::vector<DensePoly> chain{sq, derivative(sq)};
    while (!chain.back().is_zero() && chain.back().degree() > 0) {
        DensePoly q, r;
        divrem(chain[chain.size() - 2], chain.back(), q, r);
        chain.push_back(-r);
    }
    auto variations = [&](bool plus) {
        int v = 0, last = 0;
        for (const auto& p : chain) {
            int s = sign_at_inf(p, plus);
            if (s == 0) continue;
            if (last != 0 && s != last) ++v;
            last = s;
        }
        return v;
    };
    return variations(false) - variations(true);
}

// --- mod-p irreducibility ---------------------------------------------------

static std::vector<u64> mulmod_poly(const std::vector<u64>& a, const std::vector<u64>& b,
                                    const std::vector<u64>& f, const PrimeField& F)
{
    std::vector<u64> c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
    }
    std::size_t df = f.size() - 1;
    for (std::size_t k = c.size(); k-- > df;) {
        u64 q = c[k]; // f monic
        if (q == 0) continue;
        for (std::size_t j = 0; j < df; ++j)
            c[k - df + j] = F.sub(c[k - df + j], F.mul(q, f[j]));
        c[k] = 0;
    }
    c.resize(df);
    return c;
}

static std::vector<u64> powmod_poly(std::vector<u64> base, u64 e, const std::vector<u64>& f,
                                    const PrimeField& F)
{
    std::vector<u64> r(f.size() - 1, 0);
    r[0] = 1;
    while (e) {
        if (e & 1) r = mulmod_poly(r, base, f, F);
        base = mulmod_poly(base, base, f, F);
        e >>= 1;
    }
    return r;
}

bool is_irreducible_mod_p(const DensePoly& a, u64 p)
{
    PrimeField F(p);
    DensePoly pa = primitive_part(a);
    std::vector<u64> f = poly_mod_p(pa, F);
    if (f.size() != pa.c.size()) return false; // degree dropped
    std::size_t n = f.size() - 1;
    if (n == 0) return false;
    // make monic
    u64 inv = F.inv(f.back());
    for (auto& x : f) x = F.mul(x, inv);
    if (n == 1) return true;

    std::vector<u64> x(n, 0);
    if (n > 1) x[1] = 1;
    auto frob_iter = [&](std::size_t k) {
        std::vector<u64> t = x;
        for (std::size_t i = 0; i < k; ++i) t = powmod_poly(t, p, f, F);
        return t;
    };
    if (frob_iter(n) != x) return false;
    for (std::size_t q = 2; q <= n; ++q) {
        if (n % q != 0) continue;
        bool prime = true;
        for (std::size_t d = 2; d * d <= q; ++d)
            if (q % d == 0) prime = false;
        if (!prime) continue;
        std::vector<u64> t = frob_iter(n / q);
        // gcd(t - x, f) must be 1
        std::vector<u64> diff = t;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = F.sub(diff[1], 1);
        while (!diff.empty() && diff.back() == 0) diff.pop_back();
        auto g = gcd_mod_p(f, diff, F);
        if (g.size() != 1) return false;
    }
    return true;
}

// --- JSON -------------------------------------------------------------------

std::string poly_to_json(const DensePoly& a)
{
    nlohmann::ordered_json j;
    j["var"] = a.var;
    std::vector<std::string> coeffs;
    for (const auto& q : a.c) coeffs.push_back(to_decimal(q));
    j["coeffs"] = coeffs;
    return j.dump();
}

DensePoly poly_from_json(const std::string& text)
{
    auto j = nlohmann::json::parse(text);
    std::vector<std::string> coeffs = j.at("coeffs").get<std::vector<std::string>>();
    return DensePoly::from_strings(coeffs, j.value("var", "x"));
}

// --- the paper's fixed substitutions ---------------------------------------

static DensePoly x3_shift(long add) // x^3 + add
{
    return DensePoly::from_ints({add, 0, 0, 1});
}

DensePoly build_Fd(const DensePoly& H)
{
    if (!H.is_monic() || !H.is_integral())
        throw value_error("class polynomial must be monic with integer coefficients");
    DensePoly num = DensePoly::from_ints({0, 0, 0, 1}) * pow_poly(x3_shift(-24), 3);
    return homogeneous_subst(H, num, x3_shift(-27));
}

DensePoly build_Gd(const DensePoly& H)
{
    if (!H.is_monic() || !H.is_integral())
        throw value_error("class polynomial must be monic with integer coefficients");
    DensePoly num = DensePoly::from_ints({0, 0, 0, 1}) * pow_poly(x3_shift(216), 3);
    return homogeneous_subst(H, num, pow_poly(x3_shift(-27), 3));
}

DensePoly cube_twist_cofactor(const DensePoly& p)
{
    if (!p.is_monic() || !p.is_integral() || p.coeff(0) == 0)
        throw value_error("expected monic integer polynomial with nonzero constant term");
    std::size_t m = static_cast<std::size_t>(p.degree());
    // Power sums of the roots via Newton's identities.
    std::vector<BigRat> e(m + 1); // elementary symmetric, signed from coefficients
    for (std::size_t i = 0; i <= m; ++i) {
        e[i] = p.coeff(m - i);
        if (i % 2 == 1) e[i] = -e[i];
    }
    std::vector<BigRat> s(3 * m + 1, BigRat(0)); // s[k] = sum of k-th powers
    for (std::size_t k = 1; k <= 3 * m; ++k) {
        BigRat acc = k <= m ? BigRat(k) * e[k] * (k % 2 ? BigRat(1) : BigRat(-1)) : BigRat(0);
        // Newton: s_k = e1 s_{k-1} - e2 s_{k-2} + ... + (-1)^{k-1} k e_k
        BigRat sum(0);
        for (std::size_t i = 1; i < k && i <= m; ++i) {
            BigRat term = e[i] * s[k - i];
            if (i % 2 == 0) term = -term;
            sum += term;
        }
        s[k] = sum + acc;
    }
    // P(y) = prod (y - root^3): rebuild elementary symmetric functions of the
    // cubed roots from their power sums s[3k].
    std::vector<BigRat> ec(m + 1);
    ec[0] = 1;
    for (std::size_t k = 1; k <= m; ++k) {
        BigRat acc(0);
        for (std::size_t i = 1; i <= k; ++i) {
            BigRat term = ec[k - i] * s[3 * i];
            if (i % 2 == 0) term = -term;
            acc += term;
        }
        ec[k] = acc / BigRat(k);
    }
    std::vector<BigRat> pc(m + 1);
    for (std::size_t i = 0; i <= m; ++i) {
        pc[m - i] = ec[i];
        if (i % 2 == 1) pc[m - i] = -pc[m - i];
    }
    DensePoly P(std::move(pc), p.var);
    DensePoly Px3 = compose(P, DensePoly::from_ints({0, 0, 0, 1}));
    return exact_div(Px3, p);
}

} // namespace fermat3
