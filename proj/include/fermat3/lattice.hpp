#pragma once

#include "fermat3/bigint.hpp"

#include <array>
#include <optional>
#include <vector>

namespace fermat3 {

// Gauss-Lagrange reduction of a rank-2 integer lattice; returns a shortest
// basis vector first.
std::array<std::array<BigInt, 2>, 2> gauss_reduce_2d(std::array<std::array<BigInt, 2>, 2> basis);

// LLL reduction (delta = 3/4) for small integer bases, rows are vectors.
std::vector<std::vector<BigInt>> lll_reduce(std::vector<std::vector<BigInt>> basis);

// Rational reconstruction: smallest a/c with a = c*x (mod m), |a|,|c| <= height.
std::optional<BigRat> reconstruct_rational_lattice(const BigInt& x, const BigInt& m,
                                                   const BigInt& height);

// Quadratic-field reconstruction: (a + b*s)/c = x (mod m) with small a,b,c;
// s is the modular image of sqrt(-d).
struct QuadRecon {
    BigInt a, b, c;
};
std::optional<QuadRecon> reconstruct_quad_lattice(const BigInt& x, const BigInt& s,
                                                  const BigInt& m, const BigInt& height);

} // namespace fermat3
