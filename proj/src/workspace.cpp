#include "fermat3/workspace.hpp"

#include <cstdlib>

namespace fermat3 {

RunConfig RunConfig::from_env()
{
    RunConfig cfg;
    if (const char* s = std::getenv("FERMAT3_SEED")) cfg.seed = std::strtoull(s, nullptr, 10);
    return cfg;
}

Workspace::Workspace(RunConfig cfg) : cfg_(std::move(cfg)) { cfg_.validate(); }

PadicOptions Workspace::padic_options() const
{
    PadicOptions o;
    o.prec = cfg_.padic_prec;
    o.prec_cap = std::max(1024, cfg_.padic_prec);
    return o;
}

const ClasspolyResult& Workspace::classpoly(long d)
{
    auto it = hs_.find(d);
    if (it != hs_.end()) return it->second;
    auto r = ring_class_poly(d, static_cast<mpfr_prec_t>(cfg_.float_bits), cfg_.parallel);
    return hs_.emplace(d, std::move(r)).first->second;
}

const DensePoly& Workspace::pd(long d)
{
    auto it = pds_.find(d);
    if (it != pds_.end()) return it->second;
    DensePoly p = pd_padic(d, H(d), padic_options());
    return pds_.emplace(d, std::move(p)).first->second;
}

const DensePoly& Workspace::qd(long d)
{
    auto it = qds_.find(d);
    if (it != qds_.end()) return it->second;
    DensePoly q = qd_padic(d, H(d), padic_options());
    return qds_.emplace(d, std::move(q)).first->second;
}

const QuadPoly& Workspace::md(long d)
{
    auto it = mds_.find(d);
    if (it != mds_.end()) return it->second;
    QuadPoly m = md_padic(d, H(d), padic_options());
    return mds_.emplace(d, std::move(m)).first->second;
}

const DensePoly& Workspace::Rn(int n)
{
    auto it = rns_.find(n);
    if (it != rns_.end()) return it->second;
    DynamicsOptions opt;
    opt.nmax = cfg_.nmax;
    opt.parallel = cfg_.parallel;
    DensePoly r = iterated_resultant(n, opt);
    return rns_.emplace(n, std::move(r)).first->second;
}

const DensePoly& Workspace::Pn(int n)
{
    auto it = pns_.find(n);
    if (it != pns_.end()) return it->second;
    std::map<int, DensePoly> rs;
    for (int k = 1; k <= n; ++k)
        if (n % k == 0) rs.emplace(k, Rn(k));
    DensePoly p = period_poly(n, rs);
    return pns_.emplace(n, std::move(p)).first->second;
}

const std::vector<DnEntry>& Workspace::Dn(int n)
{
    auto it = dns_.find(n);
    if (it != dns_.end()) return it->second;
    return dns_.emplace(n, enumerate_Dn(n)).first->second;
}

TraceValues Workspace::traces(long d)
{
    auto orbits = lift_all_orbits(d, H(d), cfg_.padic_prec);
    return trace_values(orbits);
}

} // namespace fermat3
