#include "fermat3/qforms.hpp"
#include "fermat3/f3.hpp"

#include <json.hpp>

#include <algorithm>

namespace fermat3 {

bool QuadForm::is_reduced() const
{
    BigInt ab = abs(b);
    if (!(ab <= a && a <= c)) return false;
    if ((ab == a || a == c) && b < 0) return false;
    return true;
}

bool QuadForm::operator<(const QuadForm& o) const
{
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    return c < o.c;
}

std::string QuadForm::json() const
{
    nlohmann::ordered_json j;
    j["a"] = to_decimal(a);
    j["b"] = to_decimal(b);
    j["c"] = to_decimal(c);
    j["disc"] = to_decimal(disc());
    return j.dump();
}

bool valid_disc(long d)
{
    if (d <= 0) return false;
    long m = ((-d) % 4 + 4) % 4;
    return m == 0 || m == 1;
}

QuadForm principal_form(long d)
{
    if (!valid_disc(d)) throw value_error("invalid discriminant");
    if (d % 4 == 0) return QuadForm(1, 0, BigInt(d) / 4);
    return QuadForm(1, 1, BigInt(d + 1) / 4);
}

static void normalize_form(QuadForm& f)
{
    // bring b into (-a, a]
    BigInt two_a = 2 * f.a;
    BigInt r = f.b % two_a;
    if (r < 0) r += two_a;
    if (r > f.a) r -= two_a;
    BigInt D = f.disc();
    f.b = r;
    f.c = (r * r - D) / (4 * f.a);
}

QuadForm reduce(QuadForm f)
{
    if (f.a <= 0 || f.disc() >= 0) throw value_error("form not positive definite");
    normalize_form(f);
    while (f.a > f.c) {
        f = QuadForm(f.c, -f.b, f.a);
        normalize_form(f);
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
    return f;
}

QuadForm inverse(const QuadForm& f) { return reduce(QuadForm(f.a, -f.b, f.c)); }

QuadForm compose(const QuadForm& f1, const QuadForm& f2)
{
    if (f1.disc() != f2.disc()) throw value_error("composition of unequal discriminants");
    // Dirichlet composition (see Cohen, alg. 5.4.7): with s = (b1+b2)/2,
    // g = gcd(a1,a2), d = gcd(g,s) = v1*g + w*s, the composed form is
    // a3 = a1 a2 / d^2, b3 = b2 + 2 (a2/d) (v (s-b2) - w c2).
    BigInt s = (f1.b + f2.b) / 2;
    BigInt g, u0, v0;
    mpz_gcdext(g.get_mpz_t(), u0.get_mpz_t(), v0.get_mpz_t(), f1.a.get_mpz_t(), f2.a.get_mpz_t());
    BigInt dd, v1, w;
    mpz_gcdext(dd.get_mpz_t(), v1.get_mpz_t(), w.get_mpz_t(), g.get_mpz_t(), s.get_mpz_t());
    BigInt v = v0 * v1;
    BigInt a2d = f2.a / dd;
    QuadForm r;
    r.a = f1.a * a2d / dd;
    BigInt t = ((s - f2.b) * v - w * f2.c) * a2d * 2;
    r.b = f2.b + t;
    BigInt D = f1.disc();
    r.c = (r.b * r.b - D) / (4 * r.a);
    return reduce(r);
}

QuadForm power(const QuadForm& f, long e)
{
    long d = -to_long(f.disc());
    QuadForm r = principal_form(d);
    QuadForm base = reduce(f);
    while (e > 0) {
        if (e & 1) r = compose(r, base);
        base = compose(base, base);
        e >>= 1;
    }
    return r;
}

std::vector<QuadForm> class_list(long d)
{
    if (!valid_disc(d)) throw value_error("invalid discriminant");
    std::vector<QuadForm> forms;
    long bstart = (d % 2 == 0) ? 0 : 1;
    for (long b = bstart; b * b <= d / 3; b += 2) {
        long num = b * b + d;
        if (num % 4 != 0) continue;
        long m = num / 4;
        for (long a = std::max(b, 1L); a * a <= m; ++a) {
            if (m % a != 0) continue;
            long c = m / a;
            long g = std::__gcd(std::__gcd(a, b), c);
            if (g != 1) continue;
            forms.emplace_back(a, b, c);
            if (b != 0 && a != b && a != c) forms.emplace_back(a, -b, c);
        }
    }
    std::sort(forms.begin(), forms.end());
    return forms;
}

long class_number(long d) { return static_cast<long>(class_list(d).size()); }

int prime3_order(long d)
{
    if (!valid_disc(d)) throw value_error("invalid discriminant");
    if (d % 3 != 2) throw value_error("3 does not split: d must be 2 (mod 3)");
    long b = -1;
    for (long t = 0; t < 12; ++t)
        if ((t * t + d) % 12 == 0) {
            b = t;
            break;
        }
    if (b < 0) throw value_error("no prime form above 3"); // cannot happen for valid d
    QuadForm p3 = reduce(QuadForm(3, b, BigInt((b * b + d)) / 12));
    QuadForm id = reduce(principal_form(d));
    QuadForm acc = p3;
    int n = 1;
    while (!(acc == id)) {
        acc = compose(acc, p3);
        ++n;
        if (n > 100000) throw value_error("runaway order computation");
    }
    return n;
}

std::vector<DnEntry> enumerate_Dn(int n)
{
    if (n < 1) throw value_error("enumerate_Dn needs n >= 1");
    long bound = 4;
    for (int i = 0; i < n; ++i) bound *= 3;
    std::vector<DnEntry> out;
    for (long d = 1; d <= bound; ++d) {
        if (d % 3 != 2 || !valid_disc(d)) continue;
        if (prime3_order(d) != n) continue;
        out.push_back({d, class_number(d), n});
    }
    return out;
}

RelationReport verify_relation(int n)
{
    RelationReport rep;
    rep.n = n;
    rep.d_list = enumerate_Dn(n);
    rep.sum = 0;
    for (const auto& e : rep.d_list) rep.sum += e.h;
    rep.expected = n == 1 ? 2 : static_cast<long>(n) * count_N3(n);
    rep.deuring_lhs = 0;
    for (int k = 1; k <= n; ++k) {
        if (n % k) continue;
        if (k == 1)
            rep.deuring_lhs += 2;
        else {
            long s = 0;
            for (const auto& e : enumerate_Dn(k)) s += e.h;
            rep.deuring_lhs += s;
        }
    }
    long p3 = 1;
    for (int i = 0; i < n; ++i) p3 *= 3;
    rep.deuring_rhs = p3 - 1;
    rep.pass = rep.sum == rep.expected && rep.deuring_lhs == rep.deuring_rhs;
    return rep;
}

std::string relation_report_json(const RelationReport& r)
{
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["sum"] = r.sum;
    j["expected"] = r.expected;
    nlohmann::ordered_json dl = nlohmann::ordered_json::array();
    for (const auto& e : r.d_list) {
        nlohmann::ordered_json je;
        je["d"] = e.d;
        je["h"] = e.h;
        je["n"] = e.n;
        dl.push_back(je);
    }
    j["d_list"] = dl;
    j["deuring_lhs"] = r.deuring_lhs;
    j["deuring_rhs"] = r.deuring_rhs;
    j["pass"] = r.pass;
    return j.dump();
}

std::string dn_json(const std::vector<DnEntry>& v)
{
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& e : v) {
        nlohmann::ordered_json je;
        je["d"] = e.d;
        je["h"] = e.h;
        je["n"] = e.n;
        arr.push_back(je);
    }
    return arr.dump();
}

} // namespace fermat3
