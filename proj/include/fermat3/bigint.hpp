#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fermat3 {

// Exact arithmetic kernel, backed by GMP. BigRat is always kept in lowest
// terms with positive denominator (mpq_class canonical form).
using BigInt = mpz_class;
using BigRat = mpq_class;

struct value_error : std::runtime_error {
    explicit value_error(const std::string& m) : std::runtime_error(m) {}
};
struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& m) : std::runtime_error(m) {}
};

inline std::string to_decimal(const BigInt& z) { return z.get_str(); }
inline std::string to_decimal(const BigRat& q) { return q.get_str(); }

inline BigInt parse_int(const std::string& s)
{
    return BigInt(s);
}

inline BigRat parse_rat(const std::string& s)
{
    BigRat q(s);
    q.canonicalize();
    return q;
}

inline BigInt pow_int(const BigInt& b, unsigned long e)
{
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline BigInt pow3(unsigned long e) { return pow_int(3, e); }

// 3-adic valuation of a nonzero integer.
inline long val3(const BigInt& z)
{
    if (z == 0) throw value_error("val3 of zero");
    BigInt t = z;
    long v = 0;
    while (mpz_divisible_ui_p(t.get_mpz_t(), 3)) {
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), 3);
        ++v;
    }
    return v;
}

inline bool is_integer(const BigRat& q) { return q.get_den() == 1; }

inline long to_long(const BigInt& z)
{
    if (!z.fits_slong_p()) throw value_error("integer too large for long");
    return z.get_si();
}

// Balanced representative of r modulo m, in (-m/2, m/2].
inline BigInt balanced_mod(const BigInt& r, const BigInt& m)
{
    BigInt x = r % m;
    if (x < 0) x += m;
    if (2 * x > m) x -= m;
    return x;
}

inline int mobius(int n)
{
    int mu = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            mu = -mu;
        }
    }
    if (n > 1) mu = -mu;
    return mu;
}

// Deterministic 64-bit generator (xoshiro-style splitmix) for seeded
// randomized algorithms; all default seeds in the artifact are fixed.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed + 0x9e3779b97f4a7c15ULL) {}
    std::uint64_t next()
    {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t n) { return next() % n; }
    long range(long lo, long hi) // inclusive
    {
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
};

} // namespace fermat3
