#include "fermat3/lattice.hpp"

#include <algorithm>

namespace fermat3 {

namespace {

BigInt dot(const std::vector<BigInt>& a, const std::vector<BigInt>& b)
{
    BigInt s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

BigInt norm2(const std::vector<BigInt>& a) { return dot(a, a); }

BigInt rounded_div(const BigInt& num, const BigInt& den)
{
    // nearest integer to num/den
    BigInt q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (2 * r >= den) q += 1;
    return q;
}

} // namespace

std::array<std::array<BigInt, 2>, 2> gauss_reduce_2d(std::array<std::array<BigInt, 2>, 2> b)
{
    std::vector<BigInt> u{b[0][0], b[0][1]}, v{b[1][0], b[1][1]};
    if (norm2(u) > norm2(v)) std::swap(u, v);
    for (;;) {
        BigInt n = norm2(u);
        if (n == 0) break;
        BigInt q = rounded_div(dot(u, v), n);
        v[0] -= q * u[0];
        v[1] -= q * u[1];
        if (norm2(v) >= n) break;
        std::swap(u, v);
    }
    return {{{u[0], u[1]}, {v[0], v[1]}}};
}

std::vector<std::vector<BigInt>> lll_reduce(std::vector<std::vector<BigInt>> b)
{
    const std::size_t n = b.size();
    auto mu_num = std::vector<std::vector<BigRat>>(n, std::vector<BigRat>(n, BigRat(0)));
    std::vector<BigRat> B(n); // squared lengths of Gram-Schmidt vectors
    std::vector<std::vector<BigRat>> star(n);

    auto gram_schmidt = [&]() {
        for (std::size_t i = 0; i < n; ++i) {
            star[i].assign(b[i].size(), BigRat(0));
            for (std::size_t k = 0; k < b[i].size(); ++k) star[i][k] = BigRat(b[i][k]);
            for (std::size_t j = 0; j < i; ++j) {
                BigRat num(0);
                for (std::size_t k = 0; k < b[i].size(); ++k) num += BigRat(b[i][k]) * star[j][k];
                mu_num[i][j] = B[j] == 0 ? BigRat(0) : num / B[j];
                for (std::size_t k = 0; k < b[i].size(); ++k)
                    star[i][k] -= mu_num[i][j] * star[j][k];
            }
            B[i] = BigRat(0);
            for (std::size_t k = 0; k < star[i].size(); ++k) B[i] += star[i][k] * star[i][k];
        }
    };

    gram_schmidt();
    std::size_t k = 1;
    int guard = 0;
    while (k < n && ++guard < 10000) {
        // size reduction
        for (std::size_t j = k; j-- > 0;) {
            BigRat mu = mu_num[k][j];
            BigInt q = rounded_div(mu.get_num(), mu.get_den());
            if (q != 0) {
                for (std::size_t t = 0; t < b[k].size(); ++t) b[k][t] -= q * b[j][t];
                gram_schmidt();
            }
        }
        // Lovasz condition with delta = 3/4
        BigRat lhs = B[k];
        BigRat rhs = (BigRat(3, 4) - mu_num[k][k - 1] * mu_num[k][k - 1]) * B[k - 1];
        if (lhs >= rhs) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            gram_schmidt();
            k = std::max<std::size_t>(1, k - 1);
        }
    }
    std::sort(b.begin(), b.end(),
              [](const auto& x, const auto& y) { return norm2(x) < norm2(y); });
    return b;
}

std::optional<BigRat> reconstruct_rational_lattice(const BigInt& x, const BigInt& m,
                                                   const BigInt& height)
{
    // lattice {(a, c) : a = c*x (mod m)}
    auto red = gauss_reduce_2d({{{m, BigInt(0)}, {x, BigInt(1)}}});
    for (const auto& v : red) {
        const BigInt& a = v[0];
        const BigInt& c = v[1];
        if (c == 0) continue;
        if (abs(a) > height || abs(c) > height) continue;
        if ((a - c * x) % m != 0) continue;
        BigRat q(a, c);
        q.canonicalize();
        return q;
    }
    return std::nullopt;
}

std::optional<QuadRecon> reconstruct_quad_lattice(const BigInt& x, const BigInt& s,
                                                  const BigInt& m, const BigInt& height)
{
    // lattice {(a, b, c) : a + b*s - c*x = 0 (mod m)}
    std::vector<std::vector<BigInt>> basis = {
        {m, BigInt(0), BigInt(0)},
        {-s, BigInt(1), BigInt(0)},
        {x, BigInt(0), BigInt(1)},
    };
    auto red = lll_reduce(std::move(basis));
    // try single vectors, then small combinations
    std::vector<std::vector<BigInt>> candidates = red;
    for (std::size_t i = 0; i < red.size(); ++i)
        for (std::size_t j = 0; j < red.size(); ++j) {
            if (i == j) continue;
            std::vector<BigInt> v(3);
            for (int t = 0; t < 3; ++t) v[t] = red[i][t] + red[j][t];
            candidates.push_back(v);
            for (int t = 0; t < 3; ++t) v[t] = red[i][t] - red[j][t];
            candidates.push_back(v);
        }
    for (auto& v : candidates) {
        BigInt a = v[0], b = v[1], c = v[2];
        if (c == 0) continue;
        if (c < 0) {
            a = -a;
            b = -b;
            c = -c;
        }
        if (abs(a) > height || abs(b) > height || abs(c) > height) continue;
        if ((a + b * s - c * x) % m != 0) continue;
        return QuadRecon{a, b, c};
    }
    return std::nullopt;
}

} // namespace fermat3
