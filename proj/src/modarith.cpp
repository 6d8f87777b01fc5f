#include "fermat3/modarith.hpp"

namespace fermat3 {

std::vector<u64> modular_primes(std::size_t count, std::size_t skip)
{
    static std::vector<u64> cache;
    std::size_t need = count + skip;
    if (cache.size() < need) {
        BigInt p = cache.empty() ? BigInt("4611686018427387904") /* 2^62 */
                                 : BigInt((unsigned long)cache.back());
        while (cache.size() < need) {
            mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
            cache.push_back(p.get_ui());
        }
    }
    return std::vector<u64>(cache.begin() + skip, cache.begin() + need);
}

static void strip_mod(std::vector<u64>& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

u64 resultant_mod_p(std::vector<u64> a, std::vector<u64> b, const PrimeField& F)
{
    strip_mod(a);
    strip_mod(b);
    if (a.empty() || b.empty()) return 0;
    u64 res = 1;
    if (a.size() < b.size()) {
        if (((a.size() - 1) * (b.size() - 1)) & 1) res = F.neg(res);
        std::swap(a, b);
    }
    while (b.size() > 1) {
        // a mod b
        std::size_t da = a.size() - 1, db = b.size() - 1;
        u64 binv = F.inv(b.back());
        std::vector<u64> r = a;
        for (std::size_t k = da + 1; k-- > db;) {
            u64 q = F.mul(r[k], binv);
            if (q == 0) continue;
            for (std::size_t j = 0; j <= db; ++j)
                r[k - db + j] = F.sub(r[k - db + j], F.mul(q, b[j]));
        }
        r.resize(db);
        strip_mod(r);
        std::size_t dr = r.empty() ? 0 : r.size() - 1;
        if (r.empty()) return 0; // common factor
        res = F.mul(res, F.pow(b.back(), static_cast<u64>(da - dr)));
        if ((da * db) & 1) res = F.neg(res);
        a = std::move(b);
        b = std::move(r);
    }
    // b is a nonzero constant
    res = F.mul(res, F.pow(b[0], static_cast<u64>(a.size() - 1)));
    return res;
}

std::vector<u64> interpolate_mod_p(const std::vector<u64>& xs, const std::vector<u64>& ys,
                                   const PrimeField& F)
{
    std::size_t n = xs.size();
    std::vector<u64> dd = ys; // divided differences in place
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n; i-- > level;) {
            u64 num = F.sub(dd[i], dd[i - 1]);
            u64 den = F.sub(xs[i], xs[i - level]);
            dd[i] = F.mul(num, F.inv(den));
        }
    // Expand Newton form.
    std::vector<u64> coeffs{dd[n - 1]};
    for (std::size_t i = n - 1; i-- > 0;) {
        // coeffs = coeffs*(x - xs[i]) + dd[i]
        coeffs.insert(coeffs.begin(), 0);
        u64 xi = xs[i];
        for (std::size_t j = 0; j + 1 < coeffs.size(); ++j)
            coeffs[j] = F.sub(coeffs[j], F.mul(xi, coeffs[j + 1]));
        coeffs[0] = F.add(coeffs[0], dd[i]);
    }
    return coeffs;
}

u64 eval_mod_p(const std::vector<u64>& coeffs, u64 x, const PrimeField& F)
{
    u64 r = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) r = F.add(F.mul(r, x), coeffs[i]);
    return r;
}

} // namespace fermat3
