#include "fermat3/dynamics.hpp"
#include "fermat3/f3.hpp"
#include "fermat3/modarith.hpp"

#include <json.hpp>
#include <omp.h>

#include <iostream>

namespace fermat3 {

namespace {

long pow3l(int n)
{
    long r = 1;
    for (int i = 0; i < n; ++i) r *= 3;
    return r;
}

// g(a, y) mod p as a polynomial in y: -y^3 + (a^3-18)y^2 + (3a^3-108)y + (9a^3-216)
std::vector<u64> g_first_mod_p(u64 a, const PrimeField& F)
{
    u64 a3 = F.mul(F.mul(a, a), a);
    std::vector<u64> c(4);
    c[3] = F.neg(1);
    c[2] = F.sub(a3, F.reduce(BigInt(18)));
    c[1] = F.sub(F.mul(3, a3), F.reduce(BigInt(108)));
    c[0] = F.sub(F.mul(9, a3), F.reduce(BigInt(216)));
    return c;
}

// g(x, b) mod p as a polynomial in x: (b^2+3b+9) x^3 - (b+6)^3
std::vector<u64> g_second_mod_p(u64 b, const PrimeField& F)
{
    u64 lc = F.add(F.add(F.mul(b, b), F.mul(3, b)), 9);
    u64 b6 = F.add(b, 6);
    u64 cst = F.neg(F.mul(F.mul(b6, b6), b6));
    return {cst, 0, 0, lc};
}

// One chain value R_n(a) mod p; false on a mod-p degree accident.
bool chain_value_mod_p(int n, u64 a, const PrimeField& F, u64& out)
{
    std::vector<u64> cur = g_first_mod_p(a, F); // R^{(1)}(a, x_1)
    for (int k = 2; k < n; ++k) {
        if (static_cast<long>(cur.size()) - 1 != pow3l(k - 1)) return false;
        long degk = pow3l(k);
        std::vector<u64> xs, ys;
        xs.reserve(degk + 1);
        for (u64 b = 0; static_cast<long>(xs.size()) < degk + 1; ++b) {
            if (b >= F.p) return false;
            auto gb = g_second_mod_p(b, F);
            if (gb[3] == 0) continue; // b^2+3b+9 vanished mod p
            xs.push_back(b);
            ys.push_back(resultant_mod_p(cur, gb, F));
        }
        cur = interpolate_mod_p(xs, ys, F);
        while (!cur.empty() && cur.back() == 0) cur.pop_back();
    }
    if (static_cast<long>(cur.size()) - 1 != pow3l(n - 1)) return false;
    auto ga = g_second_mod_p(a, F);
    if (ga[3] == 0) return false;
    out = resultant_mod_p(cur, ga, F);
    return true;
}

} // namespace

DensePoly iterated_resultant(int n, const DynamicsOptions& opt)
{
    if (n < 1 || n > opt.nmax) throw value_error("iterated_resultant: n exceeds the cap");
    if (n == 5 && opt.warn_n5)
        std::cerr << "note: R_5 has degree 485; this takes a while\n";
    if (n == 1) {
        // R_1 = g(x, x)
        BiPoly g = g_relation();
        DensePoly r({}, "x");
        for (int i = 0; i <= g.degx(); ++i)
            for (int j = 0; j <= g.degy(); ++j)
                if (g.coeff(i, j) != 0)
                    r = r + g.coeff(i, j) * DensePoly::x_power(static_cast<std::size_t>(i + j));
        return r;
    }

    long D = 2 * pow3l(n) - 1;
    std::vector<long> nodes(D + 1 + 8);
    for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = static_cast<long>(i);
    std::size_t npts = static_cast<std::size_t>(D + 1);

    std::vector<CrtAccumulator> crt(npts);
    std::vector<BigInt> prev, coeffs;
    bool have_prev = false, stable = false;
    std::size_t prime_index = 0;

    while (!stable) {
        if (prime_index > 8192) throw value_error("R_n reconstruction did not stabilize");
        u64 p = modular_primes(1, prime_index++)[0];
        PrimeField F(p);
        std::vector<u64> xs(npts), ys(npts);
        bool ok = true;
        #pragma omp parallel for schedule(dynamic) if (opt.parallel)
        for (long i = 0; i < static_cast<long>(npts); ++i) {
            u64 a = F.reduce(BigInt(nodes[i]));
            xs[i] = a;
            u64 v = 0;
            if (!chain_value_mod_p(n, a, F, v)) {
                #pragma omp atomic write
                ok = false;
            }
            ys[i] = v;
        }
        if (!ok) continue;
        auto cf = interpolate_mod_p(xs, ys, F);
        cf.resize(npts, 0);
        for (std::size_t i = 0; i < npts; ++i) crt[i].add(cf[i], p);
        std::vector<BigInt> cand(npts);
        for (std::size_t i = 0; i < npts; ++i) cand[i] = crt[i].balanced();
        if (have_prev && cand == prev) {
            coeffs = std::move(cand);
            stable = true;
        } else {
            prev = std::move(cand);
            have_prev = true;
        }
    }

    // certification at fresh nodes with a fresh prime
    {
        u64 p = modular_primes(1, prime_index + 1)[0];
        PrimeField F(p);
        std::vector<u64> cmod(coeffs.size());
        for (std::size_t i = 0; i < coeffs.size(); ++i) cmod[i] = F.reduce(coeffs[i]);
        int done = 0;
        for (std::size_t i = npts; i < nodes.size() && done < 3; ++i) {
            u64 a = F.reduce(BigInt(nodes[i]));
            u64 v = 0;
            if (!chain_value_mod_p(n, a, F, v)) continue;
            if (v != eval_mod_p(cmod, a, F))
                throw value_error("R_n certification failed");
            ++done;
        }
    }

    std::vector<BigRat> out(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) out[i] = BigRat(coeffs[i]);
    return DensePoly(std::move(out), "x");
}

DensePoly period_poly(int n, const std::map<int, DensePoly>& R)
{
    DensePoly num = DensePoly::constant(1);
    DensePoly den = DensePoly::constant(1);
    for (int k = 1; k <= n; ++k) {
        if (n % k) continue;
        int mu = mobius(n / k);
        if (mu == 0) continue;
        const auto it = R.find(k);
        if (it == R.end()) throw value_error("period_poly: missing R_k for k | n");
        if (mu == 1)
            num = num * it->second;
        else
            den = den * it->second;
    }
    DensePoly P = exact_div(num, den);
    if (P.lc() < 0) P = BigRat(-1) * P;
    // certified squarefree
    if (gcd_poly(P, derivative(P)).degree() != 0)
        throw value_error("period polynomial is not squarefree");
    return P;
}

StructuralReport structural_checks(int n, const DensePoly& Rn, const DensePoly& Pn,
                                   const std::vector<std::pair<long, DensePoly>>& pds)
{
    StructuralReport rep;
    rep.n = n;
    rep.deg_Rn = Rn.degree();
    rep.deg_ok = Rn.degree() == 2 * pow3l(n) - 1;

    // (-1)^{n-1} (x^{2*3^n-1} - x^{3^n}) mod 3
    {
        F3Poly got = reduce_mod3(Rn);
        std::vector<std::uint8_t> want(static_cast<std::size_t>(2 * pow3l(n) - 1) + 1, 0);
        std::uint8_t one = (n % 2 == 1) ? 1 : 2;
        want[static_cast<std::size_t>(2 * pow3l(n) - 1)] = one;
        want[static_cast<std::size_t>(pow3l(n))] = static_cast<std::uint8_t>(3 - one);
        rep.mod3_ok = got == F3Poly(std::move(want));
    }
    rep.squarefree = gcd_poly(Rn, derivative(Rn)).degree() == 0;

    rep.deg_Pn = Pn.degree();
    long expected = n == 1 ? 5 : 2 * static_cast<long>(n) * count_N3(n);
    rep.pn_deg_ok = Pn.degree() == expected;

    DensePoly prod = DensePoly::constant(1);
    for (const auto& [d, pd] : pds) {
        rep.d_list.push_back(d);
        prod = prod * pd;
    }
    if (n == 1) prod = prod * DensePoly::from_ints({-3, 1}); // the fixed point z = 3
    rep.product_ok = monic(Pn) == prod;
    return rep;
}

std::string structural_json(const StructuralReport& r)
{
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["deg_Rn"] = r.deg_Rn;
    j["deg_ok"] = r.deg_ok;
    j["mod3_shape_ok"] = r.mod3_ok;
    j["squarefree"] = r.squarefree;
    j["deg_Pn"] = r.deg_Pn;
    j["pn_deg_ok"] = r.pn_deg_ok;
    j["product_ok"] = r.product_ok;
    j["d_list"] = r.d_list;
    j["pass"] = r.pass();
    return j.dump();
}

DensePoly pd_gcd(const DensePoly& Pn, const DensePoly& H)
{
    return gcd_poly(Pn, build_Fd(H));
}

PreperiodicResult preperiodic_sd(long d, const DensePoly& pd, int level,
                                 const ResultantOptions& ropt)
{
    if (level < 1) throw value_error("preperiodic level must be >= 1");
    PreperiodicResult res;
    res.d = d;
    res.rd = cube_twist_cofactor(pd);
    if (level == 1) return res;

    BiPoly g = g_relation();
    DensePoly r2 = resultant_uni_bi(res.rd, g, Var::y, ropt);
    res.c_constants.push_back(r2.lc());
    DensePoly sd = poly_sqrt(r2); // throws "not a scaled square" on failure
    res.s_levels.push_back(sd);
    for (int r = 3; r <= level; ++r) {
        DensePoly next = resultant_uni_bi(res.s_levels.back(), g, Var::y, ropt);
        res.c_constants.push_back(next.lc());
        DensePoly snext = monic(next);
        if (!snext.is_integral()) throw value_error("pre-periodic level polynomial not integral");
        res.s_levels.push_back(snext);
    }
    if (sd.degree() <= 30) res.real_roots_s2 = count_real_roots(sd);
    for (u64 p : {5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL,
                  41ULL, 43ULL, 47ULL, 53ULL, 59ULL, 61ULL, 67ULL, 71ULL, 73ULL, 79ULL,
                  83ULL, 89ULL, 97ULL, 101ULL, 103ULL, 107ULL, 109ULL, 113ULL}) {
        if (is_irreducible_mod_p(sd, p)) {
            res.irreducibility_prime = p;
            break;
        }
    }
    return res;
}

std::string preperiodic_json(const PreperiodicResult& r)
{
    nlohmann::ordered_json j;
    j["d"] = r.d;
    j["rd"] = nlohmann::json::parse(poly_to_json(r.rd));
    nlohmann::ordered_json lv = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < r.s_levels.size(); ++i) {
        nlohmann::ordered_json e;
        e["level"] = static_cast<int>(i) + 2;
        e["degree"] = r.s_levels[i].degree();
        e["c"] = to_decimal(r.c_constants[i]);
        e["poly"] = nlohmann::json::parse(poly_to_json(r.s_levels[i]));
        lv.push_back(e);
    }
    j["levels"] = lv;
    if (r.real_roots_s2 >= 0) j["real_roots_s2"] = r.real_roots_s2;
    j["irreducibility"] = r.irreducibility_prime
                              ? "certified mod " + std::to_string(r.irreducibility_prime)
                              : "consistent";
    return j.dump();
}

} // namespace fermat3
