#include "oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace oracle {

using brim::Exponent;
using brim::Int;
using brim::ModuleSpec;
using brim::MonomialIdeal;

std::vector<Exponent> minimalize_pairwise(std::vector<Exponent> gens)
{
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    auto divides = [](const Exponent& a, const Exponent& b) {
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i] > b[i])
                return false;
        return true;
    };
    std::vector<Exponent> keep;
    for (size_t i = 0; i < gens.size(); ++i) {
        bool redundant = false;
        for (size_t j = 0; j < gens.size() && !redundant; ++j)
            redundant = i != j && divides(gens[j], gens[i]) && gens[j] != gens[i];
        if (!redundant)
            keep.push_back(gens[i]);
    }
    return keep;
}

long long colength_ie(const MonomialIdeal& I)
{
    const int d = I.dim();
    const auto& gens = I.gens();
    if (I.is_unit())
        return 0;
    if (gens.size() > 20)
        throw std::invalid_argument("oracle colength limited to 20 generators");

    // Axis bounds from the pure powers among the generators.
    std::vector<long long> box(static_cast<size_t>(d), -1);
    for (const auto& g : gens) {
        int support = 0, pos = -1;
        for (int i = 0; i < d; ++i)
            if (g[static_cast<size_t>(i)] > 0) {
                ++support;
                pos = i;
            }
        if (support == 1) {
            long long e = g[static_cast<size_t>(pos)];
            auto& b = box[static_cast<size_t>(pos)];
            b = (b < 0) ? e : std::min(b, e);
        }
    }
    for (long long b : box)
        if (b < 0)
            throw std::invalid_argument("oracle colength requires an m-primary ideal");

    long long total_box = 1;
    for (long long b : box)
        total_box *= b;

    // |ideal ∩ box| by inclusion-exclusion over generator-cone intersections;
    // lcm of a subset is the componentwise max.
    long long in_ideal = 0;
    const size_t subsets = size_t{1} << gens.size();
    std::vector<long long> lcm(static_cast<size_t>(d));
    for (size_t mask = 1; mask < subsets; ++mask) {
        std::fill(lcm.begin(), lcm.end(), 0);
        int bits = 0;
        for (size_t g = 0; g < gens.size(); ++g) {
            if (!(mask >> g & 1))
                continue;
            ++bits;
            for (int i = 0; i < d; ++i)
                lcm[static_cast<size_t>(i)] =
                    std::max<long long>(lcm[static_cast<size_t>(i)], gens[g][static_cast<size_t>(i)]);
        }
        long long cone = 1;
        for (int i = 0; i < d; ++i)
            cone *= std::max<long long>(0, box[static_cast<size_t>(i)] - lcm[static_cast<size_t>(i)]);
        in_ideal += (bits % 2 == 1) ? cone : -cone;
    }
    return total_box - in_ideal;
}

namespace {

// All n >= 0 with |n| = total, visited without library helpers.
void compositions(long long total, int parts, std::vector<long long>& n, size_t pos,
                  const std::function<void(const std::vector<long long>&)>& fn)
{
    if (pos + 1 == n.size()) {
        n[pos] = total;
        fn(n);
        return;
    }
    for (long long v = 0; v <= total; ++v) {
        n[pos] = v;
        compositions(total - v, parts, n, pos + 1, fn);
    }
}

MonomialIdeal power_iterated(const MonomialIdeal& I, long long e, brim::IdealCache& cache)
{
    MonomialIdeal acc = MonomialIdeal::unit(I.dim());
    for (long long t = 0; t < e; ++t)
        acc = ideal_product(acc, I, cache);
    return acc;
}

Int J_colength_direct(const ModuleSpec& C, long long p, const std::vector<long long>& n,
                      brim::IdealCache& cache)
{
    MonomialIdeal J = MonomialIdeal::zero(C.dim);
    std::vector<long long> i(n.size());
    compositions(p, C.rank(), i, 0, [&](const std::vector<long long>& iv) {
        for (size_t j = 0; j < iv.size(); ++j)
            if (iv[j] > n[j])
                return;
        MonomialIdeal term = MonomialIdeal::unit(C.dim);
        for (size_t j = 0; j < iv.size(); ++j)
            term = ideal_product(term, power_iterated(C.ideals[j], iv[j], cache), cache);
        J = ideal_sum(J, term);
    });
    if (J.is_zero())
        throw std::domain_error("oracle: empty exponent set");
    return Int(colength_ie(J));
}

}  // namespace

Int Lambda_direct(const ModuleSpec& C, long long p, long long q)
{
    brim::IdealCache local;  // fresh arithmetic, no shared state with the library
    Int total = 0;
    std::vector<long long> n(static_cast<size_t>(C.rank()));
    compositions(p + q, C.rank(), n, 0, [&](const std::vector<long long>& nv) {
        total += J_colength_direct(C, p, nv, local);
    });
    return total;
}

Int lambda_direct(const ModuleSpec& C, long long p) { return Lambda_direct(C, p, 0); }

Int Lambda_region_direct(const ModuleSpec& C, const brim::RegionSpec& region)
{
    brim::IdealCache local;
    Int total = 0;
    std::vector<long long> n(static_cast<size_t>(C.rank()));
    compositions(region.p + region.q, C.rank(), n, 0, [&](const std::vector<long long>& nv) {
        if (region.contains(nv))
            total += J_colength_direct(C, region.p, nv, local);
    });
    return total;
}

}  // namespace oracle
