#pragma once

#include "fermat3/bipoly.hpp"
#include "fermat3/poly.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace fermat3 {

struct DynamicsOptions {
    int nmax = 5;          // R_n cap; deg R_5 = 485
    bool parallel = true;  // OpenMP over evaluation nodes
    bool warn_n5 = true;   // runtime warning when n = 5 is requested
};

// Exact iterated resultant R_n(x) = R^{(n)}(x, x), computed by specializing
// x at integer nodes, running the univariate resultant chain per node modulo
// word primes, interpolating, and CRT-combining until two consecutive
// reconstructions agree; certified by re-evaluating the chain at fresh nodes
// with a fresh prime.
DensePoly iterated_resultant(int n, const DynamicsOptions& opt = {});

// P_n = prod_{k|n} R_k^{mu(n/k)} by exact division; certified squarefree.
DensePoly period_poly(int n, const std::map<int, DensePoly>& R);

struct StructuralReport {
    int n = 0;
    long deg_Rn = 0;
    bool deg_ok = false;        // deg R_n = 2*3^n - 1
    bool mod3_ok = false;       // R_n = (-1)^{n-1} x^{3^n-1}(x^{3^n}-x) (mod 3)
    bool squarefree = false;    // gcd(R_n, R_n') = 1
    long deg_Pn = 0;
    bool pn_deg_ok = false;     // deg P_n = 2n N_3(n)
    bool product_ok = false;    // P_n = prod over D_n of p_d, exactly
    std::vector<long> d_list;
    bool pass() const { return deg_ok && mod3_ok && squarefree && pn_deg_ok && product_ok; }
};

StructuralReport structural_checks(int n, const DensePoly& Rn, const DensePoly& Pn,
                                   const std::vector<std::pair<long, DensePoly>>& pds);

std::string structural_json(const StructuralReport& r);

// Cross-method extraction: monic gcd(P_n, F_d) with F_d built from H_{-d}.
DensePoly pd_gcd(const DensePoly& Pn, const DensePoly& H);

struct PreperiodicResult {
    long d = 0;
    DensePoly rd;                     // level 1, degree 4h
    std::vector<DensePoly> s_levels;  // s^{(2)}, s^{(3)}, ... (ascending level)
    std::vector<BigRat> c_constants;  // extraction constant per level >= 2
    int real_roots_s2 = -1;           // exact count when computed (-1 = skipped)
    std::uint64_t irreducibility_prime = 0;     // 0 = no certificate found ("consistent")
};

// r_d = p_d(wx)p_d(w^2 x) via the cube-twist cofactor; s_d by square
// extraction of Res_y(r_d(y), g(x,y)); deeper levels by the resultant
// recursion divided by its leading constant.
PreperiodicResult preperiodic_sd(long d, const DensePoly& pd, int level,
                                 const ResultantOptions& ropt = {});

std::string preperiodic_json(const PreperiodicResult& r);

} // namespace fermat3
