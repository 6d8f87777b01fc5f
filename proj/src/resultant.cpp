#include "fermat3/bipoly.hpp"
#include "fermat3/modarith.hpp"

#include <omp.h>

namespace fermat3 {

namespace {

// Integer bivariate polynomial, rows indexed by the eliminated variable:
// rows[k] = coefficient of elim^k, a DensePoly in the kept variable.
struct ElimView {
    std::vector<DensePoly> rows;
    int deg_elim() const { return static_cast<int>(rows.size()) - 1; }
};

ElimView make_view(const BiPoly& A, Var eliminate, BigInt& denominator)
{
    // Clear denominators; the caller rescales at the end.
    BigInt den(1);
    for (const auto& row : A.c)
        for (const auto& q : row) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
    BiPoly B = BigRat(den) * A;
    denominator = den;
    ElimView v;
    int d = eliminate == Var::x ? B.degx() : B.degy();
    for (int k = 0; k <= d; ++k)
        v.rows.push_back(eliminate == Var::x ? B.x_coeff(k) : B.y_coeff(k));
    while (!v.rows.empty() && v.rows.back().is_zero()) v.rows.pop_back();
    return v;
}

std::vector<u64> specialize_mod_p(const ElimView& v, u64 b, const PrimeField& F)
{
    std::vector<u64> out(v.rows.size(), 0);
    for (std::size_t k = 0; k < v.rows.size(); ++k) {
        u64 acc = 0, bp = 1;
        const auto& cs = v.rows[k].c;
        for (std::size_t j = 0; j < cs.size(); ++j) {
            acc = F.add(acc, F.mul(F.reduce(cs[j].get_num()), bp));
            bp = F.mul(bp, b);
        }
        out[k] = acc;
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

} // namespace

DensePoly resultant(const BiPoly& A, const BiPoly& B, Var eliminate, const ResultantOptions& opt)
{
    if (A.is_zero() || B.is_zero()) throw value_error("degenerate input: zero polynomial");
    BigInt denA, denB;
    ElimView va = make_view(A, eliminate, denA);
    ElimView vb = make_view(B, eliminate, denB);
    int da = va.deg_elim(), db = vb.deg_elim();
    if (da < 0 || db < 0) throw value_error("degenerate input: zero polynomial");

    std::string kept = eliminate == Var::x ? "y" : "x";
    int dka = 0, dkb = 0; // degrees in the kept variable
    for (const auto& r : va.rows) dka = std::max(dka, r.degree());
    for (const auto& r : vb.rows) dkb = std::max(dkb, r.degree());
    int bound = da * dkb + db * dka;

    // Rescale at the end: Res(cA, cB) = cA^db * cB^da * Res(A, B).
    BigRat scale = BigRat(1) / (BigRat(pow_int(denA, db)) * BigRat(pow_int(denB, da)));

    if (da == 0 || db == 0) {
        // Res = lc^deg of the other; both univariate in the kept variable.
        DensePoly base = da == 0 ? va.rows[0] : vb.rows[0];
        int e = da == 0 ? db : da;
        return scale * pow_poly(base, static_cast<unsigned>(e));
    }

    // Evaluation nodes: consecutive integers, skipping points where either
    // leading coefficient in the eliminated variable vanishes.
    std::vector<long> nodes;
    const DensePoly& lca = va.rows.back();
    const DensePoly& lcb = vb.rows.back();
    for (long t = 0; static_cast<int>(nodes.size()) < bound + 1 + opt.certify_points; ++t) {
        if (lca(BigRat(t)) == 0 || lcb(BigRat(t)) == 0) continue;
        nodes.push_back(t);
    }
    std::size_t npts = static_cast<std::size_t>(bound + 1);

    std::vector<CrtAccumulator> crt(npts + 0);
    std::vector<BigInt> prev;
    bool have_prev = false, stable = false;
    std::vector<BigInt> coeffs;
    std::size_t prime_index = 0;

    crt.assign(static_cast<std::size_t>(bound + 1), CrtAccumulator{});
    while (!stable) {
        if (prime_index > 4096) throw value_error("resultant reconstruction did not stabilize");
        u64 p = modular_primes(1, prime_index++)[0];
        PrimeField F(p);
        std::vector<u64> xs(npts), ys(npts);
        bool ok = true;
        #pragma omp parallel for schedule(dynamic) if (opt.parallel)
        for (long i = 0; i < static_cast<long>(npts); ++i) {
            u64 b = F.reduce(BigInt(nodes[i]));
            auto sa = specialize_mod_p(va, b, F);
            auto sb = specialize_mod_p(vb, b, F);
            if (static_cast<int>(sa.size()) - 1 != da || static_cast<int>(sb.size()) - 1 != db) {
                #pragma omp atomic write
                ok = false;
                xs[i] = b;
                ys[i] = 0;
            } else {
                xs[i] = b;
                ys[i] = resultant_mod_p(sa, sb, F);
            }
        }
        if (!ok) continue; // leading coefficient vanished mod p at a node
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

    // Certification pass: fresh prime, fresh nodes, compare against the
    // reconstructed polynomial.
    {
        u64 p = modular_primes(1, prime_index + 1)[0];
        PrimeField F(p);
        std::vector<u64> cmod(coeffs.size());
        for (std::size_t i = 0; i < coeffs.size(); ++i) cmod[i] = F.reduce(coeffs[i]);
        int done = 0;
        for (std::size_t i = npts; i < nodes.size() && done < opt.certify_points; ++i) {
            u64 b = F.reduce(BigInt(nodes[i]));
            auto sa = specialize_mod_p(va, b, F);
            auto sb = specialize_mod_p(vb, b, F);
            if (static_cast<int>(sa.size()) - 1 != da || static_cast<int>(sb.size()) - 1 != db)
                continue;
            if (resultant_mod_p(sa, sb, F) != eval_mod_p(cmod, b, F))
                throw value_error("resultant certification failed");
            ++done;
        }
    }

    std::vector<BigRat> out(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) out[i] = BigRat(coeffs[i]);
    return scale * DensePoly(std::move(out), kept);
}

DensePoly resultant_uni_bi(const DensePoly& A, const BiPoly& B, Var eliminate,
                           const ResultantOptions& opt)
{
    BiPoly a;
    for (int k = 0; k <= A.degree(); ++k) {
        if (A.coeff(k) == 0) continue;
        if (eliminate == Var::x)
            a.set(k, 0, A.coeff(k));
        else
            a.set(0, k, A.coeff(k));
    }
    a.trim();
    return resultant(a, B, eliminate, opt);
}

} // namespace fermat3
