#include "fermat3/formalgrp.hpp"

#include <json.hpp>
#include <omp.h>

namespace fermat3 {

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b)
{
    int ord = std::min(a.order, b.order);
    TruncSeries r = TruncSeries::zero(ord);
    for (int i = 0; i <= ord; ++i) r.c[i] = a.coeff(i) + b.coeff(i);
    return r;
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b)
{
    int ord = std::min(a.order, b.order);
    TruncSeries r = TruncSeries::zero(ord);
    for (int i = 0; i <= ord; ++i) r.c[i] = a.coeff(i) - b.coeff(i);
    return r;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b)
{
    int ord = std::min(a.order, b.order);
    TruncSeries r = TruncSeries::zero(ord);
    for (int i = 0; i <= ord; ++i) {
        if (a.coeff(i) == 0) continue;
        for (int j = 0; i + j <= ord; ++j) r.c[i + j] += a.coeff(i) * b.coeff(j);
    }
    return r;
}

TruncSeries scale(const BigRat& s, const TruncSeries& a)
{
    TruncSeries r = a;
    for (auto& q : r.c) q *= s;
    return r;
}

TruncSeries compose_series(const TruncSeries& a, const TruncSeries& inner)
{
    if (inner.coeff(0) != 0) throw value_error("composition needs zero constant term");
    int ord = std::min(a.order, inner.order);
    TruncSeries r = TruncSeries::zero(ord);
    // Horner from the top
    for (int i = std::min(a.order, ord); i >= 0; --i) {
        r = r * inner;
        r.c[0] += a.coeff(i);
    }
    return r;
}

TruncSeries invert_unit_series(const TruncSeries& a)
{
    if (a.coeff(0) == 0) throw value_error("reciprocal of a non-unit series");
    TruncSeries r = TruncSeries::zero(a.order);
    BigRat inv0 = BigRat(1) / a.c[0];
    r.c[0] = inv0;
    for (int k = 1; k <= a.order; ++k) {
        BigRat acc(0);
        for (int i = 1; i <= k; ++i) acc += a.coeff(i) * r.c[k - i];
        r.c[k] = -acc * inv0;
    }
    return r;
}

// --- bivariate -------------------------------------------------------------------

BiTruncSeries BiTruncSeries::zero(int order)
{
    BiTruncSeries s;
    s.order = order;
    s.c.assign(order + 1, {});
    for (int i = 0; i <= order; ++i) s.c[i].assign(order + 1 - i, BigRat(0));
    return s;
}

BigRat BiTruncSeries::coeff(int i, int j) const
{
    if (i < 0 || j < 0 || i + j > order) return BigRat(0);
    return c[i][j];
}

void BiTruncSeries::set(int i, int j, const BigRat& v)
{
    if (i + j > order) return;
    c[i][j] = v;
}

BiTruncSeries BiTruncSeries::transpose() const
{
    BiTruncSeries r = zero(order);
    for (int i = 0; i <= order; ++i)
        for (int j = 0; i + j <= order; ++j) r.c[j][i] = c[i][j];
    return r;
}

bool BiTruncSeries::operator==(const BiTruncSeries& o) const
{
    int ord = std::min(order, o.order);
    for (int i = 0; i <= ord; ++i)
        for (int j = 0; i + j <= ord; ++j)
            if (coeff(i, j) != o.coeff(i, j)) return false;
    return true;
}

BiTruncSeries operator+(const BiTruncSeries& a, const BiTruncSeries& b)
{
    int ord = std::min(a.order, b.order);
    BiTruncSeries r = BiTruncSeries::zero(ord);
    for (int i = 0; i <= ord; ++i)
        for (int j = 0; i + j <= ord; ++j) r.c[i][j] = a.coeff(i, j) + b.coeff(i, j);
    return r;
}

BiTruncSeries operator-(const BiTruncSeries& a, const BiTruncSeries& b)
{
    int ord = std::min(a.order, b.order);
    BiTruncSeries r = BiTruncSeries::zero(ord);
    for (int i = 0; i <= ord; ++i)
        for (int j = 0; i + j <= ord; ++j) r.c[i][j] = a.coeff(i, j) - b.coeff(i, j);
    return r;
}

BiTruncSeries operator*(const BiTruncSeries& a, const BiTruncSeries& b)
{
    int ord = std::min(a.order, b.order);
    BiTruncSeries r = BiTruncSeries::zero(ord);
    for (int i1 = 0; i1 <= ord; ++i1)
        for (int j1 = 0; i1 + j1 <= ord; ++j1) {
            const BigRat& av = a.coeff(i1, j1);
            if (av == 0) continue;
            for (int i2 = 0; i1 + j1 + i2 <= ord; ++i2)
                for (int j2 = 0; i1 + j1 + i2 + j2 <= ord; ++j2) {
                    const BigRat& bv = b.coeff(i2, j2);
                    if (bv == 0) continue;
                    r.c[i1 + i2][j1 + j2] += av * bv;
                }
        }
    return r;
}

BiTruncSeries scale(const BigRat& s, const BiTruncSeries& a)
{
    BiTruncSeries r = a;
    for (auto& row : r.c)
        for (auto& q : row) q *= s;
    return r;
}

BiTruncSeries compose_uni_bi(const TruncSeries& phi, const BiTruncSeries& arg)
{
    if (arg.coeff(0, 0) != 0) throw value_error("composition needs zero constant term");
    BiTruncSeries r = BiTruncSeries::zero(arg.order);
    for (int i = std::min(phi.order, arg.order); i >= 0; --i) {
        r = r * arg;
        r.c[0][0] += phi.coeff(i);
    }
    return r;
}

BiTruncSeries invert_unit_bi(const BiTruncSeries& a)
{
    BigRat a0 = a.coeff(0, 0);
    if (a0 == 0) throw value_error("reciprocal of a non-unit series");
    // geometric series in u = 1 - a/a0
    BiTruncSeries u = scale(BigRat(-1) / a0, a);
    u.c[0][0] += 1;
    BiTruncSeries r = BiTruncSeries::zero(a.order);
    r.c[0][0] = 1;
    BiTruncSeries pw = u;
    for (int k = 1; k <= a.order; ++k) {
        r = r + pw;
        if (k < a.order) pw = pw * u;
    }
    return scale(BigRat(1) / a0, r);
}

// --- trivariate ------------------------------------------------------------------

TriTruncSeries TriTruncSeries::zero(int order)
{
    TriTruncSeries s;
    s.order = order;
    std::size_t n = 0;
    for (int t = 0; t <= order; ++t) n += static_cast<std::size_t>(t + 1) * (t + 2) / 2;
    s.c.assign(n, BigRat(0));
    return s;
}

std::size_t TriTruncSeries::rank(int i, int j, int k)
{
    int t = i + j + k;
    std::size_t base = 0;
    for (int s = 0; s < t; ++s) base += static_cast<std::size_t>(s + 1) * (s + 2) / 2;
    // within total degree t, rank by (i, j)
    std::size_t off = 0;
    for (int a = 0; a < i; ++a) off += static_cast<std::size_t>(t - a + 1);
    off += static_cast<std::size_t>(j);
    return base + off;
}

BigRat TriTruncSeries::coeff(int i, int j, int k) const
{
    if (i < 0 || j < 0 || k < 0 || i + j + k > order) return BigRat(0);
    return c[rank(i, j, k)];
}

void TriTruncSeries::set(int i, int j, int k, const BigRat& v)
{
    if (i + j + k > order) return;
    c[rank(i, j, k)] = v;
}

bool TriTruncSeries::operator==(const TriTruncSeries& o) const
{
    int ord = std::min(order, o.order);
    for (int i = 0; i <= ord; ++i)
        for (int j = 0; i + j <= ord; ++j)
            for (int k = 0; i + j + k <= ord; ++k)
                if (coeff(i, j, k) != o.coeff(i, j, k)) return false;
    return true;
}

TriTruncSeries operator+(const TriTruncSeries& a, const TriTruncSeries& b)
{
    int ord = std::min(a.order, b.order);
    TriTruncSeries r = TriTruncSeries::zero(ord);
    for (int i = 0; i <= ord; ++i)
        for (int j = 0; i + j <= ord; ++j)
            for (int k = 0; i + j + k <= ord; ++k)
                r.set(i, j, k, a.coeff(i, j, k) + b.coeff(i, j, k));
    return r;
}

TriTruncSeries operator-(const TriTruncSeries& a, const TriTruncSeries& b)
{
    int ord = std::min(a.order, b.order);
    TriTruncSeries r = TriTruncSeries::zero(ord);
    for (int i = 0; i <= ord; ++i)
        for (int j = 0; i + j <= ord; ++j)
            for (int k = 0; i + j + k <= ord; ++k)
                r.set(i, j, k, a.coeff(i, j, k) - b.coeff(i, j, k));
    return r;
}

TriTruncSeries operator*(const TriTruncSeries& a, const TriTruncSeries& b)
{
    int ord = std::min(a.order, b.order);
    TriTruncSeries r = TriTruncSeries::zero(ord);
    for (int i1 = 0; i1 <= ord; ++i1)
        for (int j1 = 0; i1 + j1 <= ord; ++j1)
            for (int k1 = 0; i1 + j1 + k1 <= ord; ++k1) {
                const BigRat av = a.coeff(i1, j1, k1);
                if (av == 0) continue;
                int rem = ord - i1 - j1 - k1;
                for (int i2 = 0; i2 <= rem; ++i2)
                    for (int j2 = 0; i2 + j2 <= rem; ++j2)
                        for (int k2 = 0; i2 + j2 + k2 <= rem; ++k2) {
                            const BigRat bv = b.coeff(i2, j2, k2);
                            if (bv == 0) continue;
                            std::size_t idx = TriTruncSeries::rank(i1 + i2, j1 + j2, k1 + k2);
                            r.c[idx] += av * bv;
                        }
            }
    return r;
}

TriTruncSeries embed_var_tri(int which, int order)
{
    TriTruncSeries r = TriTruncSeries::zero(order);
    if (which == 1) r.set(1, 0, 0, BigRat(1));
    if (which == 2) r.set(0, 1, 0, BigRat(1));
    if (which == 3) r.set(0, 0, 1, BigRat(1));
    return r;
}

TriTruncSeries compose_bi_tri(const BiTruncSeries& F, const TriTruncSeries& A,
                              const TriTruncSeries& B, bool parallel)
{
    if (A.coeff(0, 0, 0) != 0 || B.coeff(0, 0, 0) != 0)
        throw value_error("composition needs zero constant terms");
    int ord = std::min({F.order, A.order, B.order});
    // precompute powers A^i, B^j
    std::vector<TriTruncSeries> ap(ord + 1, TriTruncSeries::zero(ord));
    std::vector<TriTruncSeries> bp(ord + 1, TriTruncSeries::zero(ord));
    ap[0].set(0, 0, 0, BigRat(1));
    bp[0].set(0, 0, 0, BigRat(1));
    for (int i = 1; i <= ord; ++i) ap[i] = ap[i - 1] * A;
    for (int j = 1; j <= ord; ++j) bp[j] = bp[j - 1] * B;

    TriTruncSeries r = TriTruncSeries::zero(ord);
    std::vector<std::pair<int, int>> tasks;
    for (int i = 0; i <= ord; ++i)
        for (int j = 0; i + j <= ord; ++j)
            if (F.coeff(i, j) != 0) tasks.emplace_back(i, j);

    std::vector<TriTruncSeries> partial;
    int nthreads = parallel ? omp_get_max_threads() : 1;
    partial.assign(nthreads, TriTruncSeries::zero(ord));
    #pragma omp parallel for schedule(dynamic) num_threads(nthreads) if (parallel)
    for (long t = 0; t < static_cast<long>(tasks.size()); ++t) {
        auto [i, j] = tasks[t];
        TriTruncSeries term = ap[i] * bp[j];
        const BigRat f = F.coeff(i, j);
        auto& acc = partial[omp_get_thread_num()];
        for (std::size_t idx = 0; idx < acc.c.size(); ++idx) acc.c[idx] += f * term.c[idx];
    }
    for (const auto& p : partial)
        for (std::size_t idx = 0; idx < r.c.size(); ++idx) r.c[idx] += p.c[idx];
    return r;
}

// --- the formal group -------------------------------------------------------------

TruncSeries w_series(int order)
{
    if (order < 3) throw value_error("w_series needs order >= 3");
    TruncSeries w = TruncSeries::zero(order);
    w.c[3] = 1;
    for (int iter = 0; iter <= order / 3 + 2; ++iter) {
        // w <- z^3 + 9w^2 - 27w^3
        TruncSeries w2 = w * w;
        TruncSeries w3 = w2 * w;
        TruncSeries next = TruncSeries::zero(order);
        next.c[3] = 1;
        for (int i = 0; i <= order; ++i)
            next.c[i] += BigRat(9) * w2.c[i] - BigRat(27) * w3.c[i];
        if (next.c == w.c) break;
        w = std::move(next);
    }
    // defining equation residual must vanish identically
    TruncSeries resid = w;
    {
        TruncSeries w2 = w * w;
        TruncSeries w3 = w2 * w;
        for (int i = 0; i <= order; ++i) resid.c[i] -= BigRat(9) * w2.c[i] - BigRat(27) * w3.c[i];
        resid.c[3] -= 1;
    }
    for (const auto& q : resid.c)
        if (q != 0) throw value_error("w-series did not satisfy its defining equation");
    return w;
}

std::vector<BigInt> w_ck(int kmax)
{
    TruncSeries w = w_series(3 * kmax + 3);
    std::vector<BigInt> out;
    for (int k = 1; k <= kmax; ++k) {
        BigRat ck = w.coeff(3 + 3 * k) / BigRat(pow3(static_cast<unsigned long>(k)));
        if (!is_integer(ck)) throw value_error("c_k is not an integer");
        out.push_back(ck.get_num());
    }
    return out;
}

TruncSeries i_series(int order)
{
    TruncSeries w = w_series(std::max(order, 3));
    TruncSeries acc = TruncSeries::zero(order);
    acc.c[0] = 1;
    TruncSeries sum = TruncSeries::zero(order);
    // sum_k 3^{2k} w^k
    TruncSeries wk = TruncSeries::zero(order);
    wk.c[0] = 1;
    BigRat f(1);
    for (int k = 0; 3 * k <= order; ++k) {
        TruncSeries term = scale(f, wk);
        sum = sum + term;
        wk = wk * w;
        f *= 9;
    }
    // i(z) = -z * sum
    TruncSeries r = TruncSeries::zero(order);
    for (int i = 0; i + 1 <= order; ++i) r.c[i + 1] = -sum.c[i];
    return r;
}

BiTruncSeries FE_series(int order)
{
    if (order < 4) throw value_error("FE_series needs order >= 4");
    TruncSeries w = w_series(order);
    // lambda = sum_m w_m * (z1^{m-1} + z1^{m-2} z2 + ... + z2^{m-1})
    BiTruncSeries lambda = BiTruncSeries::zero(order);
    for (int m = 1; m <= order; ++m) {
        if (w.coeff(m) == 0) continue;
        for (int i = 0; i <= m - 1 && i <= order; ++i)
            if (i + (m - 1 - i) <= order)
                lambda.c[i][m - 1 - i] += w.coeff(m);
    }
    // nu = w(z1) - lambda z1
    BiTruncSeries nu = BiTruncSeries::zero(order);
    for (int i = 0; i <= order; ++i) nu.c[i][0] = w.coeff(i);
    {
        BiTruncSeries lz = BiTruncSeries::zero(order);
        for (int i = 0; i + 1 <= order; ++i)
            for (int j = 0; i + 1 + j <= order; ++j) lz.c[i + 1][j] = lambda.c[i][j];
        nu = nu - lz;
    }
    // z3 = -z1 - z2 - 9 lambda^2 (1 - 9 nu) / (1 - 27 lambda^3)
    BiTruncSeries l2 = lambda * lambda;
    BiTruncSeries l3 = l2 * lambda;
    BiTruncSeries one = BiTruncSeries::zero(order);
    one.c[0][0] = 1;
    BiTruncSeries num = scale(BigRat(9), l2) * (one - scale(BigRat(9), nu));
    BiTruncSeries den = one - scale(BigRat(27), l3);
    BiTruncSeries frac = num * invert_unit_bi(den);
    BiTruncSeries z3 = BiTruncSeries::zero(order);
    z3.c[1][0] = -1;
    z3.c[0][1] = -1;
    z3 = z3 - frac;
    // F_E = i(z3)
    TruncSeries is = i_series(order);
    return compose_uni_bi(is, z3);
}

TruncSeries x_series_scaled(int order)
{
    // z^2 x(z) = 1 - sum_{k>=1} t_k z^{3k}
    TruncSeries r = TruncSeries::zero(order);
    r.c[0] = 1;
    for (int k = 1; 3 * k <= order; ++k) r.c[3 * k] = BigRat(-tk_value(k));
    return r;
}

TruncSeries y_series_scaled(int order)
{
    // z^3 y(z) = 1 - sum_{k>=1} t_k z^{3k}
    return x_series_scaled(order);
}

std::string series_json(const TruncSeries& s)
{
    nlohmann::ordered_json j;
    j["order"] = s.order;
    std::vector<std::string> cs;
    for (const auto& q : s.c) cs.push_back(to_decimal(q));
    j["coeffs"] = cs;
    return j.dump();
}

std::string biseries_json(const BiTruncSeries& s)
{
    nlohmann::ordered_json j;
    j["order"] = s.order;
    nlohmann::ordered_json m;
    for (int i = 0; i <= s.order; ++i)
        for (int k = 0; i + k <= s.order; ++k)
            if (s.coeff(i, k) != 0)
                m["(" + std::to_string(i) + "," + std::to_string(k) + ")"] =
                    to_decimal(s.coeff(i, k));
    j["coeffs"] = m;
    return j.dump();
}

} // namespace fermat3
