#include "fermat3/f3.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace fermat3 {

F3Poly F3Poly::from_string(const std::string& digits)
{
    std::vector<std::uint8_t> c;
    std::stringstream ss(digits);
    std::string tok;
    while (std::getline(ss, tok, ','))
        c.push_back(static_cast<std::uint8_t>(std::stoi(tok) % 3));
    return F3Poly(std::move(c));
}

F3Poly F3Poly::x_power(std::size_t k)
{
    std::vector<std::uint8_t> c(k + 1, 0);
    c[k] = 1;
    return F3Poly(std::move(c));
}

std::string F3Poly::to_string() const
{
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += ',';
        s += static_cast<char>('0' + c[i]);
    }
    return s;
}

std::string F3Poly::pretty() const
{
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i] == 0) continue;
        if (!s.empty()) s += "+";
        if (i == 0 || c[i] != 1) s += static_cast<char>('0' + c[i]);
        if (i >= 1) s += "x";
        if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
}

bool F3Poly::operator<(const F3Poly& o) const
{
    if (c.size() != o.c.size()) return c.size() < o.c.size();
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != o.c[i]) return c[i] < o.c[i];
    return false;
}

static std::uint8_t m3(int v) { return static_cast<std::uint8_t>(((v % 3) + 3) % 3); }

F3Poly operator+(const F3Poly& a, const F3Poly& b)
{
    std::vector<std::uint8_t> c(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = m3(a.coeff(i) + b.coeff(i));
    return F3Poly(std::move(c));
}

F3Poly operator-(const F3Poly& a, const F3Poly& b)
{
    std::vector<std::uint8_t> c(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = m3(a.coeff(i) - b.coeff(i));
    return F3Poly(std::move(c));
}

F3Poly operator*(const F3Poly& a, const F3Poly& b)
{
    if (a.is_zero() || b.is_zero()) return F3Poly();
    std::vector<std::uint8_t> c(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            c[i + j] = m3(c[i + j] + a.c[i] * b.c[j]);
    }
    return F3Poly(std::move(c));
}

void divrem_f3(const F3Poly& a, const F3Poly& b, F3Poly& q, F3Poly& r)
{
    if (b.is_zero()) throw value_error("division by zero polynomial over F3");
    r = a;
    q = F3Poly();
    if (a.degree() < b.degree()) return;
    q.c.assign(a.c.size() - b.c.size() + 1, 0);
    std::uint8_t inv = b.c.back() == 1 ? 1 : 2; // inverse in F3
    for (std::size_t k = a.c.size(); k-- > b.c.size() - 1;) {
        std::uint8_t f = m3(r.coeff(k) * inv);
        if (f == 0) continue;
        q.c[k - (b.c.size() - 1)] = f;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            r.c[k - (b.c.size() - 1) + j] = m3(r.c[k - (b.c.size() - 1) + j] - f * b.c[j]);
    }
    q.normalize();
    r.normalize();
}

F3Poly monic_f3(const F3Poly& a)
{
    if (a.is_zero() || a.c.back() == 1) return a;
    F3Poly r = a;
    for (auto& x : r.c) x = m3(x * 2);
    return r;
}

F3Poly gcd_f3(F3Poly a, F3Poly b)
{
    while (!b.is_zero()) {
        F3Poly q, r;
        divrem_f3(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return monic_f3(a);
}

F3Poly derivative_f3(const F3Poly& a)
{
    if (a.c.size() <= 1) return F3Poly();
    std::vector<std::uint8_t> c(a.c.size() - 1, 0);
    for (std::size_t i = 1; i < a.c.size(); ++i) c[i - 1] = m3(static_cast<int>(i) * a.c[i]);
    return F3Poly(std::move(c));
}

F3Poly mulmod_f3(const F3Poly& a, const F3Poly& b, const F3Poly& mod)
{
    F3Poly q, r;
    divrem_f3(a * b, mod, q, r);
    return r;
}

F3Poly powmod_f3(const F3Poly& base, const BigInt& e, const F3Poly& mod)
{
    F3Poly r(std::vector<std::uint8_t>{1});
    F3Poly b = base;
    BigInt k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = mulmod_f3(r, b, mod);
        b = mulmod_f3(b, b, mod);
        k >>= 1;
    }
    return r;
}

F3Poly inv_mod_f3(const F3Poly& a, const F3Poly& mod)
{
    F3Poly r0 = mod, r1 = a, s0, s1(std::vector<std::uint8_t>{1});
    while (!r1.is_zero()) {
        F3Poly q, r;
        divrem_f3(r0, r1, q, r);
        F3Poly s2 = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.degree() != 0) throw value_error("non-invertible element mod f");
    std::uint8_t lcinv = r0.c[0] == 1 ? 1 : 2;
    F3Poly out = s0;
    for (auto& x : out.c) x = static_cast<std::uint8_t>((x * lcinv) % 3);
    out.normalize();
    F3Poly q, r;
    divrem_f3(out, mod, q, r);
    return r;
}

F3Poly reduce_mod3(const DensePoly& a)
{
    if (!a.is_integral()) throw value_error("mod-3 reduction of non-integral polynomial");
    std::vector<std::uint8_t> c(a.c.size(), 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        BigInt r = a.c[i].get_num() % 3;
        if (r < 0) r += 3;
        c[i] = static_cast<std::uint8_t>(r.get_ui());
    }
    return F3Poly(std::move(c));
}

bool is_irreducible_f3(const F3Poly& f)
{
    int n = f.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    F3Poly x = F3Poly::x_power(1);
    // x^{3^n} == x mod f, and gcd(x^{3^{n/q}} - x, f) == 1 for primes q | n.
    F3Poly t = x;
    for (int i = 0; i < n; ++i) t = powmod_f3(t, 3, f);
    if (!(t == mulmod_f3(x, F3Poly(std::vector<std::uint8_t>{1}), f))) return false;
    for (int q = 2; q <= n; ++q) {
        if (n % q) continue;
        bool prime = true;
        for (int d = 2; d * d <= q; ++d)
            if (q % d == 0) prime = false;
        if (!prime) continue;
        F3Poly u = x;
        for (int i = 0; i < n / q; ++i) u = powmod_f3(u, 3, f);
        if (gcd_f3(u - x, f).degree() != 0) return false;
    }
    return true;
}

// --- factorization ----------------------------------------------------------

// Squarefree decomposition in characteristic 3; returns (squarefree, mult).
static std::vector<std::pair<F3Poly, int>> squarefree_f3(const F3Poly& f0)
{
    std::vector<std::pair<F3Poly, int>> out;
    F3Poly f = monic_f3(f0);
    int cube_mult = 1;
    while (f.degree() > 0) {
        F3Poly d = derivative_f3(f);
        if (d.is_zero()) {
            // f is a polynomial in x^3: take the cube root (Frobenius is the
            // identity on F_3 coefficients).
            std::vector<std::uint8_t> c(f.c.size() / 3 + 1, 0);
            for (std::size_t i = 0; i < f.c.size(); i += 3) c[i / 3] = f.c[i];
            f = F3Poly(std::move(c));
            cube_mult *= 3;
            continue;
        }
        F3Poly g = gcd_f3(f, d);
        F3Poly w = [&] {
            F3Poly q, r;
            divrem_f3(f, g, q, r);
            return q;
        }();
        int i = 1;
        while (w.degree() > 0) {
            F3Poly y = gcd_f3(w, g);
            F3Poly fac;
            {
                F3Poly q, r;
                divrem_f3(w, y, q, r);
                fac = q;
            }
            if (fac.degree() > 0) out.emplace_back(fac, i * cube_mult);
            {
                F3Poly q, r;
                divrem_f3(g, y, q, r);
                g = q;
            }
            w = std::move(y);
            ++i;
        }
        if (g.degree() == 0) break;
        f = g; // remaining part is a polynomial in x^3 times units
    }
    return out;
}

// Distinct-degree split of a squarefree monic polynomial.
static std::vector<std::pair<F3Poly, int>> ddf_f3(const F3Poly& f0)
{
    std::vector<std::pair<F3Poly, int>> out; // (product of degree-d irreducibles, d)
    F3Poly f = f0;
    F3Poly x = F3Poly::x_power(1);
    F3Poly h = x;
    int d = 0;
    while (f.degree() >= 2 * (d + 1)) {
        ++d;
        h = powmod_f3(h, 3, f);
        F3Poly g = gcd_f3(h - x, f);
        if (g.degree() > 0) {
            out.emplace_back(g, d);
            F3Poly q, r;
            divrem_f3(f, g, q, r);
            f = q;
            if (f.degree() > 0) {
                F3Poly q2, r2;
                divrem_f3(h, f, q2, r2);
                h = r2;
            }
        }
    }
    if (f.degree() > 0) out.emplace_back(f, f.degree());
    return out;
}

// Equal-degree split (Cantor-Zassenhaus, odd characteristic).
static void edf_f3(const F3Poly& f, int d, Rng& rng, std::vector<F3Poly>& out)
{
    if (f.degree() == d) {
        out.push_back(monic_f3(f));
        return;
    }
    BigInt e = (pow3(static_cast<unsigned long>(d)) - 1) / 2;
    for (;;) {
        std::vector<std::uint8_t> rc(static_cast<std::size_t>(f.degree()), 0);
        for (auto& x : rc) x = static_cast<std::uint8_t>(rng.below(3));
        F3Poly a(std::move(rc));
        if (a.degree() < 1) continue;
        F3Poly b = powmod_f3(a, e, f) - F3Poly(std::vector<std::uint8_t>{1});
        F3Poly g = gcd_f3(b, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            F3Poly q, r;
            divrem_f3(f, g, q, r);
            edf_f3(g, d, rng, out);
            edf_f3(q, d, rng, out);
            return;
        }
    }
}

std::vector<std::pair<F3Poly, int>> factor_f3(const F3Poly& f, std::uint64_t seed)
{
    if (f.is_zero()) throw value_error("factoring the zero polynomial");
    Rng rng(seed);
    std::vector<std::pair<F3Poly, int>> out;
    // Pull out powers of x first (common in the class-polynomial reductions).
    F3Poly g = monic_f3(f);
    int xmult = 0;
    while (!g.is_zero() && g.c[0] == 0) {
        g.c.erase(g.c.begin());
        ++xmult;
    }
    if (xmult) out.emplace_back(F3Poly::x_power(1), xmult);
    for (auto& [sq, mult] : squarefree_f3(g))
        for (auto& [prod, d] : ddf_f3(sq)) {
            std::vector<F3Poly> irr;
            edf_f3(prod, d, rng, irr);
            for (auto& p : irr) out.emplace_back(p, mult);
        }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        return a.first < b.first;
    });
    // merge equal factors
    std::vector<std::pair<F3Poly, int>> merged;
    for (auto& fm : out) {
        if (!merged.empty() && merged.back().first == fm.first)
            merged.back().second += fm.second;
        else
            merged.push_back(fm);
    }
    return merged;
}

long count_N3(int n)
{
    if (n < 1) throw value_error("count_N3 needs n >= 1");
    long acc = 0;
    for (int k = 1; k <= n; ++k) {
        if (n % k) continue;
        long p3 = 1;
        for (int i = 0; i < k; ++i) p3 *= 3;
        acc += mobius(n / k) * p3;
    }
    return acc / n;
}

std::vector<F3Poly> irreducibles_f3(int n)
{
    std::vector<F3Poly> out;
    long total = 1;
    for (int i = 0; i < n; ++i) total *= 3;
    for (long v = 0; v < total; ++v) {
        std::vector<std::uint8_t> c(static_cast<std::size_t>(n) + 1, 0);
        long t = v;
        for (int i = 0; i < n; ++i) {
            c[i] = static_cast<std::uint8_t>(t % 3);
            t /= 3;
        }
        c[n] = 1;
        F3Poly f(std::move(c));
        if (is_irreducible_f3(f)) out.push_back(f);
    }
    return out;
}

// --- arithmetic in F_{3^n} ---------------------------------------------------

namespace {

struct ExtField {
    F3Poly modulus;
    int n;
};

using ExtElem = F3Poly; // residue of degree < n

ExtElem ext_mul(const ExtField& F, const ExtElem& a, const ExtElem& b)
{
    return mulmod_f3(a, b, F.modulus);
}

ExtElem ext_inv(const ExtField& F, const ExtElem& a)
{
    // extended Euclid in F3[x]
    F3Poly r0 = F.modulus, r1 = a, s0, s1(std::vector<std::uint8_t>{1});
    while (!r1.is_zero()) {
        F3Poly q, r;
        divrem_f3(r0, r1, q, r);
        F3Poly s2 = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.degree() != 0) throw value_error("non-invertible element in F_{3^n}");
    std::uint8_t lcinv = r0.c[0] == 1 ? 1 : 2;
    F3Poly out = s0;
    for (auto& x : out.c) x = static_cast<std::uint8_t>((x * lcinv) % 3);
    out.normalize();
    F3Poly q, r;
    divrem_f3(out, F.modulus, q, r);
    return r;
}

ExtElem ext_frobenius(const ExtField& F, const ExtElem& a)
{
    return powmod_f3(a, 3, F.modulus);
}

// Polynomials over F_{3^n}, coefficients ascending.
struct ExtPoly {
    std::vector<ExtElem> c;
    void normalize()
    {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    int degree() const { return static_cast<int>(c.size()) - 1; }
};

ExtPoly ext_poly_mul(const ExtField& F, const ExtPoly& a, const ExtPoly& b)
{
    ExtPoly r;
    if (a.c.empty() || b.c.empty()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, ExtElem());
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = r.c[i + j] + ext_mul(F, a.c[i], b.c[j]);
    r.normalize();
    return r;
}

void ext_poly_divrem(const ExtField& F, const ExtPoly& a, const ExtPoly& b, ExtPoly& q, ExtPoly& r)
{
    r = a;
    q = ExtPoly{};
    if (a.degree() < b.degree()) return;
    q.c.assign(a.c.size() - b.c.size() + 1, ExtElem());
    ExtElem lcinv = ext_inv(F, b.c.back());
    for (std::size_t k = a.c.size(); k-- > b.c.size() - 1;) {
        ExtElem f = ext_mul(F, r.c[k], lcinv);
        if (f.is_zero()) continue;
        q.c[k - (b.c.size() - 1)] = f;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            r.c[k - (b.c.size() - 1) + j] = r.c[k - (b.c.size() - 1) + j] - ext_mul(F, f, b.c[j]);
    }
    q.normalize();
    r.normalize();
}

ExtPoly ext_poly_gcd(const ExtField& F, ExtPoly a, ExtPoly b)
{
    while (!b.c.empty()) {
        ExtPoly q, r;
        ext_poly_divrem(F, a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.c.empty()) {
        ExtElem inv = ext_inv(F, a.c.back());
        for (auto& x : a.c) x = ext_mul(F, x, inv);
    }
    return a;
}

ExtPoly ext_poly_powmod(const ExtField& F, ExtPoly base, BigInt e, const ExtPoly& mod)
{
    ExtPoly r;
    r.c = {ExtElem(std::vector<std::uint8_t>{1})};
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) {
            ExtPoly q, rem;
            ext_poly_divrem(F, ext_poly_mul(F, r, base), mod, q, rem);
            r = std::move(rem);
        }
        ExtPoly q, rem;
        ext_poly_divrem(F, ext_poly_mul(F, base, base), mod, q, rem);
        base = std::move(rem);
        e >>= 1;
    }
    return r;
}

// One root of a polynomial that splits into linear factors over F_{3^n}.
ExtElem ext_find_root(const ExtField& F, ExtPoly f, Rng& rng)
{
    while (f.degree() > 1) {
        // random element a of F_{3^n}; split with a shifted power map
        std::vector<std::uint8_t> rc(static_cast<std::size_t>(F.n), 0);
        for (auto& x : rc) x = static_cast<std::uint8_t>(rng.below(3));
        ExtPoly lin;
        lin.c = {ExtElem(std::move(rc)), ExtElem(std::vector<std::uint8_t>{1})};
        BigInt e = (pow3(static_cast<unsigned long>(F.n)) - 1) / 2;
        ExtPoly b = ext_poly_powmod(F, lin, e, f);
        if (b.c.empty()) continue;
        b.c[0] = b.c[0] - ExtElem(std::vector<std::uint8_t>{1});
        b.normalize();
        ExtPoly g = ext_poly_gcd(F, f, b);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            if (2 * g.degree() <= f.degree())
                f = std::move(g);
            else {
                ExtPoly q, r;
                ext_poly_divrem(F, f, g, q, r);
                f = std::move(q);
            }
        }
    }
    // f = x - root (monic up to unit)
    ExtElem lcinv = ext_inv(F, f.c[1]);
    ExtElem root = ext_mul(F, f.c[0], lcinv);
    // negate
    F3Poly neg = F3Poly() - root;
    return neg;
}

} // namespace

int ell_rank(const std::vector<F3Poly>& moduli)
{
    if (moduli.empty()) throw value_error("ell_rank needs at least one modulus");
    int n = moduli[0].degree();
    for (const auto& m : moduli) {
        if (!is_irreducible_f3(m)) throw value_error("ell_rank: reducible modulus");
        if (m.degree() != n) throw value_error("ell_rank: moduli of unequal degree");
        if (m == F3Poly::x_power(1)) throw value_error("ell_rank: modulus x has root 0");
    }

    std::vector<std::vector<std::uint8_t>> vecs; // residues as F3 row vectors
    Rng rng(3);
    if (n == 1) {
        for (const auto& m : moduli) {
            // root of x + c0 is -c0; residue is its inverse in F3
            std::uint8_t root = m3(-static_cast<int>(m.c[0]));
            std::uint8_t inv = root == 1 ? 1 : 2;
            vecs.push_back({inv});
        }
    } else {
        ExtField F{irreducibles_f3(n).front(), n};
        for (const auto& m : moduli) {
            ExtPoly fm;
            for (auto d : m.c) fm.c.push_back(d ? F3Poly(std::vector<std::uint8_t>{d}) : F3Poly());
            ExtElem rho = ext_find_root(F, fm, rng);
            ExtElem r = ext_inv(F, rho);
            for (int i = 0; i < n; ++i) {
                std::vector<std::uint8_t> row(static_cast<std::size_t>(n), 0);
                for (int k = 0; k <= r.degree(); ++k) row[static_cast<std::size_t>(k)] = r.c[k];
                vecs.push_back(std::move(row));
                r = ext_frobenius(F, r);
            }
        }
    }

    // Gaussian elimination over F3.
    int rank = 0;
    std::size_t cols = static_cast<std::size_t>(n);
    for (std::size_t col = 0; col < cols; ++col) {
        std::size_t pivot = vecs.size();
        for (std::size_t i = rank; i < vecs.size(); ++i)
            if (vecs[i][col] != 0) {
                pivot = i;
                break;
            }
        if (pivot == vecs.size()) continue;
        std::swap(vecs[rank], vecs[pivot]);
        std::uint8_t inv = vecs[rank][col] == 1 ? 1 : 2;
        for (auto& x : vecs[rank]) x = m3(x * inv);
        for (std::size_t i = 0; i < vecs.size(); ++i) {
            if (i == static_cast<std::size_t>(rank) || vecs[i][col] == 0) continue;
            std::uint8_t f = vecs[i][col];
            for (std::size_t j = 0; j < cols; ++j) vecs[i][j] = m3(vecs[i][j] - f * vecs[rank][j]);
        }
        ++rank;
    }
    return rank;
}

Cor2Report corollary2_audit(int n, const std::map<long, F3Poly>& class_polys)
{
    Cor2Report rep;
    rep.n = n;
    std::map<F3Poly, long> seen;
    for (const auto& [d, H] : class_polys) {
        auto factors = factor_f3(H);
        std::vector<F3Poly> sd;
        for (const auto& [g, mult] : factors) {
            if (g == F3Poly::x_power(1)) continue;
            if (g.degree() != n) {
                rep.degrees_uniform = false;
                if (rep.offending.empty())
                    rep.offending = "degree " + std::to_string(g.degree()) + " factor " +
                                    g.pretty() + " of H_{-" + std::to_string(d) + "}";
                continue;
            }
            if (mult != 1) rep.degrees_uniform = false;
            auto it = seen.find(g);
            if (it != seen.end()) {
                rep.disjoint = false;
                if (rep.offending.empty())
                    rep.offending = g.pretty() + " divides both H_{-" + std::to_string(it->second) +
                                    "} and H_{-" + std::to_string(d) + "}";
            }
            seen[g] = d;
            sd.push_back(g);
        }
        // companion congruence mod x^2: reported only
        bool match = true;
        for (std::size_t i = 1; i < sd.size(); ++i)
            if (sd[i].coeff(0) != sd[0].coeff(0) || sd[i].coeff(1) != sd[0].coeff(1)) match = false;
        rep.companions_match_mod_x2[d] = match;
        rep.sets[d] = std::move(sd);
    }
    auto all = irreducibles_f3(n);
    for (const auto& g : all) {
        if (n == 1 && g == F3Poly::x_power(1)) continue;
        if (!seen.count(g)) {
            rep.exhaustive = false;
            if (rep.offending.empty())
                rep.offending = g.pretty() + " divides no listed class polynomial";
        }
    }
    return rep;
}

std::string cor2_report_json(const Cor2Report& r)
{
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["disjoint"] = r.disjoint;
    j["exhaustive"] = r.exhaustive;
    j["degrees_uniform"] = r.degrees_uniform;
    j["passed"] = r.passed();
    if (!r.offending.empty()) j["offending"] = r.offending;
    nlohmann::ordered_json sets;
    for (const auto& [d, sd] : r.sets) {
        std::vector<std::string> v;
        for (const auto& g : sd) v.push_back(g.to_string());
        sets[std::to_string(d)] = v;
    }
    j["S_d"] = sets;
    nlohmann::ordered_json comp;
    for (const auto& [d, m] : r.companions_match_mod_x2) comp[std::to_string(d)] = m;
    j["companions_match_mod_x2"] = comp;
    return j.dump();
}

} // namespace fermat3
