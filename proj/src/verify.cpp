#include "fermat3/verify.hpp"
#include "fermat3/f3.hpp"
#include "fermat3/formalgrp.hpp"

#include <json.hpp>

#include <chrono>
#include <set>
#include <sstream>

namespace fermat3 {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

DensePoly ints(std::initializer_list<long> asc) { return DensePoly::from_ints(asc); }

} // namespace

const DensePoly& fixture_pd(long d)
{
    static const std::map<long, DensePoly> m = [] {
        std::map<long, DensePoly> t;
        t.emplace(23, ints({675, 405, 441, 191, 65, 11, 1}));
        t.emplace(44, ints({1188, -1188, 180, 172, 126, 20, 1}));
        t.emplace(59, ints({6912, -3456, 144, -40, 208, 22, 1}));
        t.emplace(83, ints({43200, -12960, 576, -1384, 560, 6, 1}));
        t.emplace(92, ints({75141, -20493, 1071, -2567, 841, -13, 1}));
        t.emplace(104, ints({24681024, 10730880, 46267200, 17611776, 4056480, -1971936, -806960,
                             -125456, 30440, 11008, 724, -44, 1}));
        t.emplace(107, ints({172800, -43200, 2736, -6184, 1680, -74, 1}));
        t.emplace(419, DensePoly::from_strings(
                           {"2886917746065408", "382092054626304", "706394569310208",
                            "-229506313420800", "24881284988928", "-59155454435328",
                            "8483079352320", "-3440158470144", "1601000957952", "-291034399744",
                            "75000228864", "-19699084288", "5572113408", "-83424320", "210116832",
                            "-7296032", "1598844", "1938", "1"}));
        return t;
    }();
    auto it = m.find(d);
    if (it == m.end()) throw value_error("no p_d fixture for this d");
    return it->second;
}

const DensePoly& fixture_qd(long d)
{
    static const std::map<long, DensePoly> m = [] {
        std::map<long, DensePoly> t;
        t.emplace(104, ints({729, 972, 810, 432, 666, 408, 106, 136, 74, 16, 10, 4, 1}));
        t.emplace(116, ints({729, -486, 324, 918, -36, 42, 290, 14, -4, 34, 4, -2, 1}));
        t.emplace(152, ints({729, 1458, 729, 1026, 1026, 66, 601, 22, 114, 38, 9, 6, 1}));
        t.emplace(212, ints({729, 2916, 6156, 6858, 5436, 3324, 1826, 1108, 604, 254, 76, 12, 1}));
        t.emplace(515, ints({729, 5832, 14499, 216, 14094, -3192, 7207, -1064, 1566, 8, 179, 24, 1}));
        t.emplace(707, ints({729, -2430, 37422, 32292, 37314, 20922, 4582, 6974, 4146, 1196, 462,
                             -10, 1}));
        t.emplace(419, ints({19683, 118098, 144342, -67068, 304722, -109998, 129195, 40572, -17532,
                             45656, -5844, 4508, 4785, -1358, 1254, -92, 66, 18, 1}));
        t.emplace(491, ints({19683, -32805, 352107, 304722, 257337, 297027, 285147, 157266, 109554,
                             85772, 36518, 17474, 10561, 3667, 1059, 418, 161, -5, 1}));
        t.emplace(563, ints({19683, -124659, 411156, 557685, -265356, 150741, 473283, -94194,
                             -12720, 140654, -4240, -10466, 17529, 1861, -1092, 765, 188, -19, 1}));
        t.emplace(1187, ints({19683, 334611, 7409556, 17404875, 25171884, 22654971, 17488683,
                              15211746, 9836040, 5162354, 3278680, 1690194, 647729, 279691, 103588,
                              23875, 3388, 51, 1}));
        t.emplace(2003, ints({19683, -616734, 70661970, 255555324, 662142438, 1094898546,
                              1165316571, 960968268, 719218092, 464084648, 239739364, 106774252,
                              43159873, 13517266, 2724866, 350556, 32310, -94, 1}));
        return t;
    }();
    auto it = m.find(d);
    if (it == m.end()) throw value_error("no q_d fixture for this d");
    return it->second;
}

std::vector<long> props73_74_list()
{
    return {104,  116,  152,  212,  515,  707,            // h = 6
            419,  491,  563,  1187, 2003,                 // h = 9
            440,  680,  728,  1067, 1235, 1547, 1892,     // h = 12, ord 6
            1955, 2132, 2387, 2555, 2627, 2795, 2867,     //
            356,  731,  755,  932,  1208, 1355, 1763,     // h = 12, ord 12
            2468, 2723, 4907};
}

namespace {

DensePoly paper_R1()
{
    return ints({-3, 1}) * ints({6, 4, 1}) * ints({12, 2, 1});
}

DensePoly paper_R2()
{
    return BigRat(-1) * (paper_R1() * ints({576, 48, 28, -12, 1}) * ints({450, 60, 26, -8, 1}) *
                         ints({180, 60, 26, 2, 1}));
}

DensePoly paper_R3()
{
    DensePoly r = paper_R1();
    for (long d : {23L, 44L, 59L, 83L, 107L, 92L, 104L}) r = r * fixture_pd(d);
    return r;
}

bool same_up_to_sign(const DensePoly& a, const DensePoly& b)
{
    return a == b || a == BigRat(-1) * b;
}

CriterionResult crit1(Workspace& ws)
{
    auto t0 = Clock::now();
    CriterionResult r{1, "R_1 and R_2 match the printed factorizations", false, 0, 1.0, ""};
    bool ok1 = ws.Rn(1) == paper_R1(); // (4.13) is printed with a plus sign
    bool ok2 = same_up_to_sign(ws.Rn(2), paper_R2());
    r.pass = ok1 && ok2;
    r.seconds = elapsed(t0);
    r.detail = ok1 && ok2 ? "exact match" : "mismatch";
    return r;
}

CriterionResult crit2(Workspace& ws)
{
    auto t0 = Clock::now();
    CriterionResult r{2, "R_3 equals the product of the printed factors", false, 0, 30.0, ""};
    r.pass = same_up_to_sign(ws.Rn(3), paper_R3());
    r.seconds = elapsed(t0);
    return r;
}

CriterionResult crit3(Workspace& ws)
{
    auto t0 = Clock::now();
    CriterionResult r{3, "degrees, mod-3 shape, squarefree period polynomials (n <= 4)", false, 0,
                      600.0, ""};
    bool ok = true;
    std::ostringstream os;
    for (int n = 1; n <= 4; ++n) {
        StructuralReport rep = structural_checks(n, ws.Rn(n), ws.Pn(n), {});
        bool here = rep.deg_ok && rep.mod3_ok && rep.squarefree && rep.pn_deg_ok;
        if (n == 1) here = rep.deg_ok && rep.mod3_ok && rep.squarefree; // P_1 = R_1
        ok = ok && here;
        os << "n=" << n << (here ? " ok; " : " FAIL; ");
    }
    r.pass = ok;
    r.detail = os.str();
    r.seconds = elapsed(t0);
    return r;
}

CriterionResult crit4(Workspace& ws)
{
    auto t0 = Clock::now();
    CriterionResult r{4, "class-number relation (4.23) for n = 1..6", false, 0, 120.0, ""};
    bool ok = true;
    std::ostringstream os;
    for (int n = 1; n <= 6; ++n) {
        auto rep = verify_relation(n);
        ok = ok && rep.pass;
        os << "n=" << n << ": " << rep.sum << "=" << rep.expected << " deuring " << rep.deuring_lhs
           << "=" << rep.deuring_rhs << "; ";
    }
    (void)ws;
    r.pass = ok;
    r.detail = os.str();
    r.seconds = elapsed(t0);
    return r;
}

CriterionResult crit5(Workspace& ws)
{
    auto t0 = Clock::now();
    CriterionResult r{5, "p_d: nine printed polynomials and gcd cross-extraction", false, 0, 0, ""};
    bool ok = true;
    std::ostringstream os;
    for (long d : {23L, 44L, 59L, 83L, 92L, 104L, 107L, 419L}) {
        if (!(ws.pd(d) == fixture_pd(d))) {
            ok = false;
            os << "p_" << d << " mismatch; ";
        }
    }
    for (int n = 1; n <= 4; ++n)
        for (const auto& e : ws.Dn(n)) {
            DensePoly viagcd = pd_gcd(ws.Pn(n), ws.H(e.d));
            if (!(viagcd == ws.pd(e.d))) {
                ok = false;
                os << "gcd disagrees at d=" << e.d << "; ";
            }
        }
    r.pass = ok;
    r.detail = os.str().empty() ? "exact equality, both methods agree" : os.str();
    r.seconds = elapsed(t0);
    return r;
}

CriterionResult crit6(Workspace& ws)
{
    auto t0 = Clock::now();
    CriterionResult r{6, "q_d: eleven printed polynomials, (3.7), q_d(0) = 3^h", false, 0, 0, ""};
    bool ok = true;
    std::ostringstream os;
    for (long d : {104L, 116L, 152L, 212L, 515L, 707L, 419L, 491L, 563L, 1187L, 2003L}) {
        const DensePoly& q = ws.qd(d);
        if (!(q == fixture_qd(d))) {
            ok = false;
            os << "q_" << d << " mismatch; ";
        }
        long h = ws.H(d).degree();
        if (q.coeff(0) != BigRat(pow3(static_cast<unsigned long>(h)))) {
            ok = false;
            os << "q_" << d << "(0) != 3^h; ";
        }
        // (3.7) holds exactly (also enforced by the construction's certificate)
        for (long j = 0; j <= 2 * h; ++j)
            if (BigRat(pow3(static_cast<unsigned long>(2 * h - j))) * q.coeff(2 * h - j) !=
                BigRat(pow3(static_cast<unsigned long>(h))) * q.coeff(j)) {
                ok = false;
                os << "q_" << d << " fails (3.7); ";
            }
    }
    r.pass = ok;
    r.detail = os.str().empty() ? "exact equality" : os.str();
    r.seconds = elapsed(t0);
    return r;
}

CriterionResult crit7(Workspace& ws)
{
    auto t0 = Clock::now();
    CriterionResult r{7, "class polynomials: d = 8, 11 and p_d = x^h H_{-d} (mod 3)", false, 0, 0,
                      ""};
    bool ok = ws.H(8) == ints({-8000, 1}) && ws.H(11) == ints({32768, 1});
    std::ostringstream os;
    if (!ok) os << "H_8/H_11 mismatch; ";
    for (int n = 1; n <= 4; ++n)
        for (const auto& e : ws.Dn(n)) {
            F3Poly want = F3Poly::x_power(static_cast<std::size_t>(e.h)) * reduce_mod3(ws.H(e.d));
            if (!(reduce_mod3(ws.pd(e.d)) == want)) {
                ok = false;
                os << "congruence fails at d=" << e.d << "; ";
            }
        }
    r.pass = ok;
    r.detail = os.str().empty() ? "all congruences exact" : os.str();
    r.seconds = elapsed(t0);
    return r;
}

CriterionResult crit8(Workspace& ws)
{
    auto t0 = Clock::now();
    CriterionResult r{8, "Q_K: four printed values; on-curve and nontrivial for d <= 200", false, 0,
                      0, ""};
    bool ok = true;
    std::ostringstream os;
    auto expect = [&](long d, const char* xa, const char* xb, const char* ya, const char* yb) {
        QKResult q = QK(d, ws.H(d), ws.padic_options());
        bool good = !q.is_infinity && q.x.a == parse_rat(xa) && q.x.b == parse_rat(xb) &&
                    q.y.a == parse_rat(ya) && q.y.b == parse_rat(yb);
        if (!good) {
            ok = false;
            os << "Q_K(" << d << ") mismatch: " << qk_json(q) << "; ";
        }
    };
    expect(23, "1", "0", "9/2", "1/2");
    expect(59, "-2", "0", "9/2", "1/2");
    expect(83, "-8", "0", "9/2", "5/2");
    expect(107, "-26/9", "0", "9/2", "29/54");

    for (long d = 1; d <= 200; ++d) {
        if (d % 3 != 2 || !valid_disc(d)) continue;
        if (class_number(d) % 3 == 0) continue;
        QKResult q = QK(d, ws.H(d), ws.padic_options());
        // reconstruction certifies the exact on-curve identity; nontrivial
        // means distinct from O, (3,0), (3,9)
        if (q.is_infinity || q.verdict != "nontrivial") {
            ok = false;
            os << "Q_K(" << d << ") " << q.verdict << "; ";
        }
        // a rational Q_K must be [h](3,0) (equation (6.3))
        if (!q.is_infinity && q.x.b == 0 && q.y.b == 0) {
            QuadField K(d);
            auto P = ECPoint<QuadField>::at(K.from_coeff(q.x), K.from_coeff(q.y));
            auto T = ec_mul(K, class_number(d),
                            ECPoint<QuadField>::at(K.from_long(3), K.from_long(0)));
            if (!(T.inf == P.inf && (T.inf || (K.eq(T.x, P.x) && K.eq(T.y, P.y))))) {
                ok = false;
                os << "rational Q_K(" << d << ") != [h](3,0); ";
            }
        }
    }
    r.pass = ok;
    r.detail = os.str().empty() ? "all exact" : os.str();
    r.seconds = elapsed(t0);
    return r;
}

CriterionResult crit9(Workspace& ws)
{
    auto t0 = Clock::now();
    CriterionResult r{9, "criteria engine verdicts match the paper", false, 0, 0, ""};
    bool ok = true;
    std::ostringstream os;
    auto run = [&](long d) { return criteria_engine(d, ws.H(d), ws.pd(d), ws.padic_options()); };
    for (long d : {23L, 59L, 83L}) {
        auto v = run(d);
        if (v.verdict != "nontrivial by Theorem 6.5") {
            ok = false;
            os << "d=" << d << ": " << v.verdict << "; ";
        }
    }
    {
        auto v = run(107);
        bool coeff_fact = v.coeff_h1 == 1680 && v.coeff_h1 % 9 == 6;
        if (v.verdict != "nontrivial by Theorem 7.1" || !coeff_fact) {
            ok = false;
            os << "d=107: " << v.verdict << " coeff " << v.coeff_h1 << "; ";
        }
    }
    {
        auto v = run(419);
        bool coeff_fact = v.coeff_h1 == BigInt("75000228864") && v.coeff_h1 % 9 == 6;
        if (v.verdict != "nontrivial by Theorem 7.1" || !coeff_fact) {
            ok = false;
            os << "d=419: " << v.verdict << " coeff " << to_decimal(v.coeff_h1) << "; ";
        }
    }
    {
        auto v = run(2132);
        if (v.thm71 || v.verdict != "nontrivial by Theorem 7.5") {
            ok = false;
            os << "d=2132: " << v.verdict << "; ";
        }
    }
    for (long d : props73_74_list()) {
        auto v = run(d);
        if (v.verdict.rfind("nontrivial", 0) != 0) {
            ok = false;
            os << "d=" << d << ": " << v.verdict << "; ";
        }
    }
    r.pass = ok;
    r.detail = os.str().empty() ? "all verdicts as printed" : os.str();
    r.seconds = elapsed(t0);
    return r;
}

CriterionResult crit10(Workspace& ws)
{
    (void)ws;
    auto t0 = Clock::now();
    CriterionResult r{10, "formal group: printed coefficients, (7.2), (7.3), group laws", false, 0,
                      5.0, ""};
    bool ok = true;
    std::ostringstream os;
    TruncSeries w = w_series(24);
    const long printed[] = {1, 9, 135, 2430, 48114, 1010394, 22084326};
    for (int k = 0; k < 7; ++k)
        if (w.coeff(3 + 3 * k) != BigRat(printed[k])) ok = false;
    if (!ok) os << "w-series mismatch; ";

    BiTruncSeries F = FE_series(20);
    for (int i = 0; i <= 20 && ok; ++i)
        for (int j = 0; i + j <= 20; ++j) {
            BigRat c = F.coeff(i, j);
            if (!is_integer(c)) {
                ok = false;
                os << "non-integral coefficient; ";
                break;
            }
            BigRat lin = ((i == 1 && j == 0) || (i == 0 && j == 1)) ? BigRat(1) : BigRat(0);
            if ((c - lin).get_num() % 9 != 0) {
                ok = false;
                os << "(7.2) fails; ";
                break;
            }
            BigRat cub = ((i == 3 && j == 1) || (i == 1 && j == 3)) ? BigRat(9) : BigRat(0);
            if ((c - lin - cub).get_num() % 27 != 0) {
                ok = false;
                os << "(7.3) fails; ";
                break;
            }
        }
    if (!(F == F.transpose())) {
        ok = false;
        os << "not commutative; ";
    }
    {
        TriTruncSeries A = embed_var_tri(1, 20), B = embed_var_tri(2, 20), C = embed_var_tri(3, 20);
        auto lhs = compose_bi_tri(F, compose_bi_tri(F, A, B), C);
        auto rhs = compose_bi_tri(F, A, compose_bi_tri(F, B, C));
        if (!(lhs == rhs)) {
            ok = false;
            os << "not associative; ";
        }
    }
    r.pass = ok;
    r.detail = os.str().empty() ? "all identities hold to order 20" : os.str();
    r.seconds = elapsed(t0);
    return r;
}

CriterionResult crit11(Workspace& ws)
{
    auto t0 = Clock::now();
    CriterionResult r{11, "d = 2132: residues mod 569 and the sum (13,462)", false, 0, 1.0, ""};
    auto rep = reduce_2132_demo(m2132_fixture());
    r.pass = rep.pass();
    std::ostringstream os;
    os << "sum (" << rep.sum_x << "," << rep.sum_y << ")";
    r.detail = os.str();
    r.seconds = elapsed(t0);
    (void)ws;
    return r;
}

CriterionResult crit12(Workspace& ws)
{
    auto t0 = Clock::now();
    CriterionResult r{12, "ell-rank: d = 5219 bound, cubic normal-basis failures, ell = 3", false,
                      0, 0, ""};
    bool ok = true;
    std::ostringstream os;
    // The printed mod-3 factorization of p_5219 has three octics. The paper's
    // ell = 7 is reproduced as the maximum over them; the factor the paper
    // labels "third" is the rank-6 one (see the report).
    F3Poly o1 = F3Poly::from_string("1,0,0,1,0,0,0,2,1");
    F3Poly o2 = F3Poly::from_string("1,0,2,0,2,1,0,0,1");
    F3Poly o3 = F3Poly::from_string("1,0,1,2,1,1,2,1,1");
    int r1 = ell_rank({o1}), r2 = ell_rank({o2}), r3 = ell_rank({o3});
    int mx = std::max({r1, r2, r3});
    if (mx != 7) {
        ok = false;
        os << "max rank " << mx << "; ";
    }
    os << "per-octic ranks " << r1 << "," << r2 << "," << r3 << "; ";
    // the n = 3 normal-basis failures
    std::set<std::string> fails;
    for (const auto& c : irreducibles_f3(3))
        if (ell_rank({c}) < 3) fails.insert(c.to_string());
    if (fails != std::set<std::string>{"2,0,1,1", "1,0,2,1"}) {
        ok = false;
        os << "cubic failures differ; ";
    }
    // ell = 3 for d in {23, 59, 83, 104} from the computed class polynomials
    for (long d : {23L, 59L, 83L, 104L}) {
        std::vector<F3Poly> moduli;
        for (const auto& [g, mult] : factor_f3(reduce_mod3(ws.H(d)), ws.config().seed))
            moduli.push_back(g);
        if (ell_rank(moduli) != 3) {
            ok = false;
            os << "ell(" << d << ") != 3; ";
        }
    }
    r.pass = ok;
    r.detail = os.str();
    r.seconds = elapsed(t0);
    return r;
}

CriterionResult crit13(Workspace& ws)
{
    auto t0 = Clock::now();
    CriterionResult r{13, "seeded property suites (3-adic, conjugacy, Lemma 6.1, curve law)",
                      false, 0, 0, ""};
    bool ok = true;
    std::ostringstream os;
    Rng rng(ws.config().seed);
    int prec = 48;

    // g(z, T(z)) = 0 for 200 random units across extension degrees 1..6
    {
        int bad = 0;
        for (int t = 0; t < 200; ++t) {
            int n = 1 + static_cast<int>(rng.below(6));
            RingPtr ring;
            if (n == 1)
                ring = z3_ring();
            else {
                F3Poly g;
                do {
                    std::vector<std::uint8_t> c(n + 1, 0);
                    for (int i = 0; i < n; ++i) c[i] = static_cast<std::uint8_t>(rng.below(3));
                    c[n] = 1;
                    g = F3Poly(std::move(c));
                } while (!is_irreducible_f3(g));
                ring = make_ring(g);
            }
            P3Elem z;
            z.ring = ring;
            z.prec = prec;
            z.c.assign(ring->n, 0);
            BigInt m = pow3(prec);
            do {
                for (auto& x : z.c) {
                    BigInt v = 0;
                    for (int i = 0; i < prec; ++i) v = v * 3 + rng.below(3);
                    x = v % m;
                }
            } while (z.valuation() != 0);
            P3Elem T = T_eval(z);
            P3Elem lhs = (T * T + mul_int(T, 3) + P3Elem::from_int(ring, 9, prec)) * z * z * z;
            P3Elem rhs = pow_elem(T + P3Elem::from_int(ring, 6, prec), 3);
            if (!(lhs - rhs).is_zero_at_prec()) ++bad;
        }
        if (bad) {
            ok = false;
            os << bad << " failures in g(z,T(z)); ";
        }
    }
    // conjugacy (4.20): S(sigma1(z)) = sigma1(T(z)) on 100 random units
    {
        int bad = 0;
        for (int t = 0; t < 100; ++t) {
            int n = 1 + static_cast<int>(rng.below(3));
            RingPtr ring = n == 1 ? z3_ring() : make_ring(irreducibles_f3(n).front());
            P3Elem z;
            z.ring = ring;
            z.prec = prec;
            z.c.assign(ring->n, 0);
            BigInt m = pow3(prec);
            do {
                for (auto& x : z.c) {
                    BigInt v = 0;
                    for (int i = 0; i < prec; ++i) v = v * 3 + rng.below(3);
                    x = v % m;
                }
            } while (z.valuation() != 0);
            P3Elem lhs = S_eval(sigma1(z));
            P3Elem rhs = sigma1(T_eval(z));
            if (!(lhs == rhs)) ++bad;
        }
        if (bad) {
            ok = false;
            os << bad << " failures in (4.20); ";
        }
    }
    // Lemma 6.1 sampling
    {
        auto rep = lemma61_check(500, ws.config().seed);
        if (rep.failures) {
            ok = false;
            os << rep.failures << " failures in Lemma 6.1; ";
        }
        os << "lemma61 " << rep.checked << " cases; ";
    }
    // associativity fuzz over F_1009 on 1000 triples
    {
        FpField f(1009);
        PrimeField F(1009);
        auto rand_point = [&]() {
            for (;;) {
                u64 x = rng.below(1009);
                // y^2 - 9y = x^3 - 27
                u64 c = F.sub(F.mul(F.mul(x, x), x), 27 % 1009);
                // discriminant 81 + 4c
                u64 disc = F.add(81 % 1009, F.mul(4, c));
                u64 s = F.pow(disc, (1009 + 1) / 4); // 1009 = 3 (mod 4)
                if (F.mul(s, s) != disc) continue;
                u64 y = F.mul(F.add(9, s), F.inv(2));
                return ECPoint<FpField>::at(x, y);
            }
        };
        int bad = 0;
        for (int t = 0; t < 1000; ++t) {
            auto P = rand_point(), Q = rand_point(), R = rand_point();
            auto a = ec_add(f, ec_add(f, P, Q), R);
            auto b = ec_add(f, P, ec_add(f, Q, R));
            bool same = a.inf == b.inf && (a.inf || (a.x == b.x && a.y == b.y));
            if (!same) ++bad;
        }
        if (bad) {
            ok = false;
            os << bad << " associativity failures; ";
        }
    }
    r.pass = ok;
    r.detail = os.str().empty() ? "zero failures" : os.str();
    r.seconds = elapsed(t0);
    return r;
}

CriterionResult crit14(Workspace& ws)
{
    auto t0 = Clock::now();
    CriterionResult r{14, "numeric modular suite for d = 23, 59, 83", false, 0, 60.0, ""};
    bool ok = true;
    std::ostringstream os;
    mpfr_prec_t bits = ws.config().float_bits ? ws.config().float_bits : 320;
    for (long d : {23L, 59L, 83L}) {
        auto rep = modular_identity_suite(d, ws.pd(d), ws.H(d), bits, ws.config().seed);
        if (!rep.all_pass()) {
            ok = false;
            for (const auto& c : rep.checks)
                if (!c.pass) os << "d=" << d << " " << c.name << "; ";
        }
    }
    r.pass = ok;
    r.detail = os.str().empty() ? "all residuals below certified bounds" : os.str();
    r.seconds = elapsed(t0);
    return r;
}

CriterionResult crit_full_extras(Workspace& ws)
{
    auto t0 = Clock::now();
    CriterionResult r{15, "[full] composition laws d <= 500, class-polynomial stability d <= 3000",
                      false, 0, 0, ""};
    bool ok = true;
    std::ostringstream os;
    // every class has order dividing h, composition commutes (spot sample)
    Rng rng(ws.config().seed);
    for (long d = 1; d <= 500; ++d) {
        if (!valid_disc(d)) continue;
        auto forms = class_list(d);
        long h = static_cast<long>(forms.size());
        for (const auto& f : forms) {
            if (!(power(f, h) == reduce(principal_form(d)))) {
                ok = false;
                os << "order does not divide h at d=" << d << "; ";
            }
        }
        if (!forms.empty()) {
            const auto& f1 = forms[rng.below(forms.size())];
            const auto& f2 = forms[rng.below(forms.size())];
            if (!(compose(f1, f2) == compose(f2, f1))) {
                ok = false;
                os << "composition not commutative at d=" << d << "; ";
            }
        }
    }
    // stability sweep: the double-run agreement inside ring_class_poly is the
    // check; here it is exercised across the range
    for (long d = 2; d <= 3000; ++d) {
        if (d % 3 != 2 || !valid_disc(d)) continue;
        ws.classpoly(d);
    }
    r.pass = ok;
    r.detail = os.str().empty() ? "ok" : os.str();
    r.seconds = elapsed(t0);
    return r;
}

} // namespace

std::vector<CriterionResult> run_acceptance(Workspace& ws, bool full)
{
    std::vector<CriterionResult> rs;
    rs.push_back(crit1(ws));
    rs.push_back(crit2(ws));
    rs.push_back(crit3(ws));
    rs.push_back(crit4(ws));
    rs.push_back(crit5(ws));
    rs.push_back(crit6(ws));
    rs.push_back(crit7(ws));
    rs.push_back(crit8(ws));
    rs.push_back(crit9(ws));
    rs.push_back(crit10(ws));
    rs.push_back(crit11(ws));
    rs.push_back(crit12(ws));
    rs.push_back(crit13(ws));
    rs.push_back(crit14(ws));
    if (full) rs.push_back(crit_full_extras(ws));
    return rs;
}

std::string acceptance_json(const std::vector<CriterionResult>& rs)
{
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rs) {
        nlohmann::ordered_json e;
        e["id"] = r.id;
        e["name"] = r.name;
        e["pass"] = r.pass;
        e["seconds"] = r.seconds;
        if (r.budget > 0) e["budget_seconds"] = r.budget;
        e["detail"] = r.detail;
        arr.push_back(e);
    }
    nlohmann::ordered_json j;
    j["criteria"] = arr;
    bool all = true;
    for (const auto& r : rs) all = all && r.pass && r.within_budget();
    j["all_pass"] = all;
    return j.dump();
}

std::string acceptance_text(const std::vector<CriterionResult>& rs)
{
    std::ostringstream os;
    for (const auto& r : rs) {
        os << (r.pass && r.within_budget() ? "[PASS] " : "[FAIL] ") << "criterion " << r.id << ": "
           << r.name << " (" << r.seconds << "s";
        if (r.budget > 0) os << " / budget " << r.budget << "s";
        os << ") " << r.detail << "\n";
    }
    return os.str();
}

} // namespace fermat3
