#pragma once

#include "fermat3/bigint.hpp"

#include <string>
#include <vector>

namespace fermat3 {

// Primitive positive-definite binary quadratic form a x^2 + b xy + c y^2 of
// discriminant b^2 - 4ac = -d < 0.
struct QuadForm {
    BigInt a, b, c;
    QuadForm() = default;
    QuadForm(BigInt a_, BigInt b_, BigInt c_) : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {}
    BigInt disc() const { return b * b - 4 * a * c; }
    bool is_reduced() const;
    bool operator==(const QuadForm& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(const QuadForm& o) const;
    std::string json() const;
};

// -d must be a valid discriminant: d > 0, -d = 0 or 1 (mod 4).
bool valid_disc(long d);

QuadForm principal_form(long d);
QuadForm reduce(QuadForm f);
QuadForm compose(const QuadForm& f1, const QuadForm& f2); // reduced result
QuadForm inverse(const QuadForm& f);
QuadForm power(const QuadForm& f, long e);

// All reduced primitive forms of discriminant -d, sorted.
std::vector<QuadForm> class_list(long d);
long class_number(long d);

// Order of the class of the prime form (3, b, (b^2+d)/12) in the class
// group; requires d = 2 (mod 3) so that 3 splits.
int prime3_order(long d);

struct DnEntry {
    long d;
    long h;
    int n;
};

// All d <= 4*3^n with d = 2 (mod 3), -d = 0 or 1 (mod 4), ord(prime-3
// class) = n. The search bound comes from primitive representations
// 4^r * 3^n = x^2 + d y^2 with y >= 1 and r in {0,1}.
std::vector<DnEntry> enumerate_Dn(int n);

struct RelationReport {
    int n = 0;
    long sum = 0;       // sum of h(-d) over D_n
    long expected = 0;  // n*N_3(n), or 2 for n = 1
    std::vector<DnEntry> d_list;
    long deuring_lhs = 0; // sum over k | n of the level-k sums
    long deuring_rhs = 0; // 3^n - 1
    bool pass = false;
};

RelationReport verify_relation(int n);

std::string relation_report_json(const RelationReport& r);
std::string dn_json(const std::vector<DnEntry>& v);

} // namespace fermat3
