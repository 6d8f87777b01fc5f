#pragma once

#include "fermat3/cmfloat.hpp"
#include "fermat3/dynamics.hpp"
#include "fermat3/ellipt.hpp"
#include "fermat3/padic.hpp"
#include "fermat3/qforms.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace fermat3 {

struct RunConfig {
    int padic_prec = 128;     // 3-adic digits
    long float_bits = 0;      // 0 = per-d automatic
    int nmax = 5;             // resultant cap
    std::uint64_t seed = 3;
    std::string verify_level = "fast"; // fast | full
    bool json = true;
    bool parallel = true;

    void validate() const
    {
        if (padic_prec < 32) throw value_error("padic precision must be at least 32");
        if (float_bits != 0 && float_bits < 64) throw value_error("float bits must be at least 64");
    }
    static RunConfig from_env(); // FERMAT3_SEED override
};

// Caching pipeline: class polynomials feed the 3-adic constructions, the
// resultant chain feeds the structural checks. Values are computed once per
// run and shared between subcommands of verify-all.
class Workspace {
  public:
    explicit Workspace(RunConfig cfg = {});
    const RunConfig& config() const { return cfg_; }

    const ClasspolyResult& classpoly(long d);
    const DensePoly& H(long d) { return classpoly(d).H; }
    const DensePoly& pd(long d);
    const DensePoly& qd(long d);
    const QuadPoly& md(long d);
    const DensePoly& Rn(int n);
    const DensePoly& Pn(int n);
    const std::vector<DnEntry>& Dn(int n);
    TraceValues traces(long d);
    PadicOptions padic_options() const;

  private:
    RunConfig cfg_;
    std::map<long, ClasspolyResult> hs_;
    std::map<long, DensePoly> pds_, qds_;
    std::map<long, QuadPoly> mds_;
    std::map<int, DensePoly> rns_, pns_;
    std::map<int, std::vector<DnEntry>> dns_;
};

} // namespace fermat3
