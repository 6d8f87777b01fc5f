#pragma once

#include "fermat3/bigint.hpp"

#include <cstdint>
#include <vector>

namespace fermat3 {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Arithmetic modulo a word-sized prime (< 2^62).
struct PrimeField {
    u64 p;
    explicit PrimeField(u64 prime) : p(prime) {}
    u64 add(u64 a, u64 b) const { u64 s = a + b; return s >= p ? s - p : s; }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
    u64 mul(u64 a, u64 b) const { return static_cast<u64>((u128)a * b % p); }
    u64 neg(u64 a) const { return a ? p - a : 0; }
    u64 pow(u64 a, u64 e) const
    {
        u64 r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    u64 inv(u64 a) const { return pow(a, p - 2); }
    u64 reduce(const BigInt& z) const
    {
        BigInt r = z % BigInt((unsigned long)p);
        if (r < 0) r += BigInt((unsigned long)p);
        return r.get_ui();
    }
};

// Deterministic stream of ~62-bit primes for multi-modular work.
std::vector<u64> modular_primes(std::size_t count, std::size_t skip = 0);

// Resultant of two univariate polynomials over F_p (coefficients ascending),
// Sylvester-determinant convention.
u64 resultant_mod_p(std::vector<u64> a, std::vector<u64> b, const PrimeField& F);

// Newton interpolation through (xs[i], ys[i]) over F_p; returns ascending
// coefficients of the unique polynomial of degree < xs.size().
std::vector<u64> interpolate_mod_p(const std::vector<u64>& xs, const std::vector<u64>& ys,
                                   const PrimeField& F);

u64 eval_mod_p(const std::vector<u64>& coeffs, u64 x, const PrimeField& F);

// Incremental CRT with balanced lift.
struct CrtAccumulator {
    BigInt value{0};   // residue in [0, modulus)
    BigInt modulus{1};
    void add(u64 residue, u64 prime)
    {
        BigInt p((unsigned long)prime);
        // Solve x = value (mod modulus), x = residue (mod p).
        BigInt minv;
        BigInt m = modulus % p;
        mpz_invert(minv.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        BigInt t = ((BigInt((unsigned long)residue) - value) * minv) % p;
        if (t < 0) t += p;
        value += modulus * t;
        modulus *= p;
    }
    BigInt balanced() const { return balanced_mod(value, modulus); }
};

} // namespace fermat3
