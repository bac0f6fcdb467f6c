#include "brim/engine.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace brim {

namespace {

RegionSpec make(RegionSpec::Kind kind, int k, std::vector<int> A, long long p, long long q)
{
    RegionSpec r;
    r.kind = kind;
    r.k = k;
    r.A = std::move(A);
    std::sort(r.A.begin(), r.A.end());
    r.p = p;
    r.q = q;
    return r;
}

}  // namespace

RegionSpec RegionSpec::full_region(long long p, long long q)
{
    return make(Kind::full, 0, {}, p, q);
}
RegionSpec RegionSpec::level(int k, long long p, long long q)
{
    return make(Kind::level, k, {}, p, q);
}
RegionSpec RegionSpec::block(int k, std::vector<int> A, long long p, long long q)
{
    return make(Kind::block, k, std::move(A), p, q);
}
RegionSpec RegionSpec::block_low(int k, std::vector<int> A, long long p, long long q)
{
    return make(Kind::block_low, k, std::move(A), p, q);
}
RegionSpec RegionSpec::block_high(int k, std::vector<int> A, long long p, long long q)
{
    return make(Kind::block_high, k, std::move(A), p, q);
}
RegionSpec RegionSpec::prefix(int k, long long p, long long q)
{
    return make(Kind::prefix, k, {}, p, q);
}

void RegionSpec::validate(int r) const
{
    if (p < 0 || q < 0)
        throw std::invalid_argument("region needs p, q >= 0");
    if (kind == Kind::full)
        return;
    if (k < (kind == Kind::level ? 0 : 1) || k > r)
        throw std::invalid_argument("region level k out of range");
    bool uses_A = kind == Kind::block || kind == Kind::block_low || kind == Kind::block_high;
    if (!uses_A) {
        if (!A.empty())
            throw std::invalid_argument("region kind takes no subset");
        return;
    }
    if (static_cast<int>(A.size()) != r - k)
        throw std::invalid_argument("block subset must have size r-k");
    for (size_t i = 0; i < A.size(); ++i) {
        if (A[i] < 0 || A[i] >= r)
            throw std::invalid_argument("block subset index out of range");
        if (i > 0 && A[i] == A[i - 1])
            throw std::invalid_argument("block subset has repeated index");
    }
}

bool RegionSpec::contains(const std::vector<long long>& n) const
{
    switch (kind) {
    case Kind::full:
        return true;
    case Kind::level: {
        int over = 0;
        for (long long v : n)
            over += v > p;
        return over == k;
    }
    case Kind::block:
    case Kind::block_low:
    case Kind::block_high: {
        size_t ai = 0;
        long long in_A = 0;
        for (size_t i = 0; i < n.size(); ++i) {
            bool inside = ai < A.size() && A[ai] == static_cast<int>(i);
            if (inside) {
                if (n[i] > p)
                    return false;
                in_A += n[i];
                ++ai;
            } else if (n[i] <= p) {
                return false;
            }
        }
        if (kind == Kind::block)
            return true;
        return (kind == Kind::block_low) == (in_A <= p);
    }
    case Kind::prefix: {
        long long tail = 0;
        for (size_t i = 0; i < n.size(); ++i) {
            if (static_cast<int>(i) < k) {
                if (n[i] <= p)
                    return false;
            } else {
                tail += n[i];
            }
        }
        return tail <= p;
    }
    }
    return false;
}

std::string RegionSpec::str() const
{
    std::ostringstream os;
    auto subset = [this] {
        std::ostringstream s;
        s << "{";
        for (size_t i = 0; i < A.size(); ++i) {
            if (i)
                s << ",";
            s << A[i] + 1;
        }
        s << "}";
        return s.str();
    };
    switch (kind) {
    case Kind::full:
        os << "H";
        break;
    case Kind::level:
        os << "H^(" << k << ")";
        break;
    case Kind::block:
        os << "D_" << subset() << "^(" << k << ")";
        break;
    case Kind::block_low:
        os << "E_" << subset() << "-^(" << k << ")";
        break;
    case Kind::block_high:
        os << "E_" << subset() << "+^(" << k << ")";
        break;
    case Kind::prefix:
        os << "Delta^(" << k << ")";
        break;
    }
    os << "[p=" << p << ",q=" << q << "]";
    return os.str();
}

std::vector<std::vector<int>> subsets_of_size(int r, int m)
{
    if (m < 0 || m > r)
        throw std::invalid_argument("subset size out of range");
    std::vector<std::vector<int>> out;
    std::vector<int> pick(static_cast<size_t>(m));
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        out.push_back(pick);
        int i = m - 1;
        while (i >= 0 && pick[static_cast<size_t>(i)] == r - m + i)
            --i;
        if (i < 0)
            break;
        ++pick[static_cast<size_t>(i)];
        for (int j = i + 1; j < m; ++j)
            pick[static_cast<size_t>(j)] = pick[static_cast<size_t>(j - 1)] + 1;
    }
    return out;
}

void for_each_composition(long long total, int parts,
                          const std::function<void(const std::vector<long long>&)>& fn)
{
    if (total < 0 || parts < 1)
        throw std::invalid_argument("bad composition parameters");
    std::vector<long long> n(static_cast<size_t>(parts), 0);
    // Descend part by part; the last part absorbs the remainder.
    auto rec = [&](auto&& self, int pos, long long remaining) -> void {
        if (pos == parts - 1) {
            n[static_cast<size_t>(pos)] = remaining;
            fn(n);
            return;
        }
        for (long long v = 0; v <= remaining; ++v) {
            n[static_cast<size_t>(pos)] = v;
            self(self, pos + 1, remaining - v);
        }
    };
    rec(rec, 0, total);
}

Int lambda_value(const ModuleSpec& C, long long p, IdealCache& cache)
{
    if (p < 0)
        throw std::invalid_argument("lambda needs p >= 0");
    Int total = 0;
    for_each_composition(p, C.rank(), [&](const std::vector<long long>& i) {
        MonomialIdeal prod = MonomialIdeal::unit(C.dim);
        for (int j = 0; j < C.rank(); ++j)
            prod = ideal_product(
                prod, ideal_power(C.ideals[static_cast<size_t>(j)],
                                  static_cast<int>(i[static_cast<size_t>(j)]), cache),
                cache);
        total += colength(prod, cache);
    });
    return total;
}

BrEngine::BrEngine(ModuleSpec C, IdealCache& cache) : module_(std::move(C)), cache_(cache) {}

size_t BrEngine::VecHash::operator()(const std::vector<long long>& v) const noexcept
{
    size_t h = 1469598103934665603ull;
    for (long long x : v) {
        h ^= static_cast<size_t>(static_cast<unsigned long long>(x));
        h *= 1099511628211ull;
    }
    return h;
}

MonomialIdeal BrEngine::J_ideal(long long p, const std::vector<long long>& n)
{
    const int r = rank();
    if (static_cast<int>(n.size()) != r)
        throw std::invalid_argument("composition arity does not match module rank");
    if (p < 0)
        throw std::invalid_argument("J needs p >= 0");
    long long total = 0;
    for (long long v : n) {
        if (v < 0)
            throw std::invalid_argument("composition entries must be nonnegative");
        total += v;
    }
    if (total < p)
        throw std::domain_error("J undefined: |n| < p leaves no admissible exponent");

    // Only min(n_i, p) matters: |i| = p forces every i_j <= p.
    std::vector<long long> m(n.size());
    for (size_t i = 0; i < n.size(); ++i)
        m[i] = std::min(n[i], p);

    MonomialIdeal acc = MonomialIdeal::zero(dim());
    auto rec = [&](auto&& self, int pos, long long remaining, const MonomialIdeal& partial) -> void {
        if (pos == r - 1) {
            if (remaining > m[static_cast<size_t>(pos)])
                return;
            MonomialIdeal prod = ideal_product(
                partial,
                ideal_power(module_.ideals[static_cast<size_t>(pos)],
                            static_cast<int>(remaining), cache_),
                cache_);
            // Skip terms already inside the accumulated sum.
            if (!acc.contains_ideal(prod))
                acc = ideal_sum(acc, prod);
            return;
        }
        // Capacity pruning: the remaining positions can absorb at most their
        // truncated caps.
        long long cap = 0;
        for (size_t j = static_cast<size_t>(pos) + 1; j < m.size(); ++j)
            cap += m[j];
        long long lo = std::max<long long>(0, remaining - cap);
        long long hi = std::min<long long>(remaining, m[static_cast<size_t>(pos)]);
        for (long long v = lo; v <= hi; ++v) {
            MonomialIdeal next = ideal_product(
                partial,
                ideal_power(module_.ideals[static_cast<size_t>(pos)], static_cast<int>(v),
                            cache_),
                cache_);
            self(self, pos + 1, remaining - v, next);
        }
    };
    rec(rec, 0, p, MonomialIdeal::unit(dim()));
    return acc;
}

Int BrEngine::truncated_colength(long long p, std::vector<long long> m)
{
    std::vector<long long> key;
    key.reserve(m.size() + 1);
    key.push_back(p);
    key.insert(key.end(), m.begin(), m.end());
    auto it = j_colengths_.find(key);
    if (it != j_colengths_.end())
        return it->second;
    long long value = colength(J_ideal(p, m), cache_);
    j_colengths_.emplace(std::move(key), value);
    return value;
}

Int BrEngine::lambda(long long p) { return lambda_value(module_, p, cache_); }

Int BrEngine::Lambda(long long p, long long q)
{
    if (p < 0 || q < 0)
        throw std::invalid_argument("Lambda needs p, q >= 0");
    const int r = rank();
    // Sum over truncation classes m in [0,p]^r. The class of m consists of
    // the n in H_{p,q} with min(n_i, p) = m_i: entries with m_i = p are free
    // to exceed p, the rest are pinned, so the class size is a composition
    // count.
    Int total = 0;
    std::vector<long long> m(static_cast<size_t>(r), 0);
    while (true) {
        long long pinned = 0;
        int free_slots = 0;
        for (long long v : m) {
            if (v == p)
                ++free_slots;
            else
                pinned += v;
        }
        Int count;
        if (free_slots == 0) {
            count = (pinned == p + q) ? 1 : 0;
        } else {
            // Distribute the surplus T over free entries (each >= p).
            long long T = p + q - pinned - static_cast<long long>(free_slots) * p;
            count = binomial_comb(Int(T + free_slots - 1), free_slots - 1);
        }
        if (count != 0)
            total += count * truncated_colength(p, m);

        int i = 0;
        while (i < r) {
            if (++m[static_cast<size_t>(i)] <= p)
                break;
            m[static_cast<size_t>(i)] = 0;
            ++i;
        }
        if (i == r)
            break;
    }
    return total;
}

Int BrEngine::Lambda_region(const RegionSpec& region)
{
    region.validate(rank());
    Int total = 0;
    for_each_composition(region.p + region.q, rank(), [&](const std::vector<long long>& n) {
        if (!region.contains(n))
            return;
        std::vector<long long> m(n.size());
        for (size_t i = 0; i < n.size(); ++i)
            m[i] = std::min(n[i], region.p);
        total += truncated_colength(region.p, m);
    });
    return total;
}

MonomialIdeal BrEngine::prefix_sum_ideal(int k) const
{
    MonomialIdeal B = module_.ideals[0];
    for (int j = 1; j < k; ++j)
        B = ideal_sum(B, module_.ideals[static_cast<size_t>(j)]);
    return B;
}

namespace {

void check_closed_form_args(int k, long long p, long long q, int r)
{
    if (k < 1 || k > r)
        throw std::invalid_argument("closed form needs 1 <= k <= r");
    if (p < 1 || q < (p + 1) * r)
        throw std::invalid_argument("closed form needs p >= 1 and q >= (p+1)r");
}

}  // namespace

Int BrEngine::delta_closed_direct(int k, long long p, long long q)
{
    const int r = rank();
    check_closed_form_args(k, p, q, r);
    MonomialIdeal B = prefix_sum_ideal(k);
    std::vector<MonomialIdeal> tail_sums;  // B + I_j for j > k
    for (int j = k; j < r; ++j)
        tail_sums.push_back(ideal_sum(B, module_.ideals[static_cast<size_t>(j)]));

    Int total = 0;
    // Tails (n_{k+1}..n_r) with sigma <= p; the slack variable makes it a
    // composition of p into r-k+1 parts.
    for_each_composition(p, r - k + 1, [&](const std::vector<long long>& t) {
        long long sigma = 0;
        for (size_t j = 0; j + 1 < t.size(); ++j)
            sigma += t[j];
        MonomialIdeal a = ideal_power(B, static_cast<int>(p - sigma), cache_);
        for (size_t j = 0; j + 1 < t.size(); ++j)
            a = ideal_product(a, ideal_power(tail_sums[j], static_cast<int>(t[j]), cache_),
                              cache_);
        total += binomial_comb(Int(q - (k - 1) * p - 1 - sigma), k - 1) * colength(a, cache_);
    });
    return total;
}

Int BrEngine::delta_closed_module(int k, long long p, long long q)
{
    const int r = rank();
    check_closed_form_args(k, p, q, r);
    MonomialIdeal B = prefix_sum_ideal(k);
    std::vector<MonomialIdeal> corner_ideals{B};
    for (int j = k; j < r; ++j)
        corner_ideals.push_back(ideal_sum(B, module_.ideals[static_cast<size_t>(j)]));
    ModuleSpec corner(dim(), corner_ideals);

    Int main_term = binomial_comb(Int(q - (k - 1) * p - 1), k - 1) * lambda_value(corner, p, cache_);

    // Correction: weight w(sigma) = sum_{i=0}^{sigma-1} C(q-(k-1)p-2-i, k-2)
    // applied to the same ideals as the direct form.
    std::vector<Int> weight(static_cast<size_t>(p) + 1, Int(0));
    for (long long sigma = 1; sigma <= p; ++sigma)
        weight[static_cast<size_t>(sigma)] =
            weight[static_cast<size_t>(sigma - 1)] +
            binomial_comb(Int(q - (k - 1) * p - 2 - (sigma - 1)), k - 2);

    Int correction = 0;
    for_each_composition(p, r - k + 1, [&](const std::vector<long long>& t) {
        long long sigma = 0;
        for (size_t j = 0; j + 1 < t.size(); ++j)
            sigma += t[j];
        if (sigma == 0)
            return;
        MonomialIdeal a = ideal_power(B, static_cast<int>(p - sigma), cache_);
        for (size_t j = 0; j + 1 < t.size(); ++j)
            a = ideal_product(a, ideal_power(corner_ideals[j + 1], static_cast<int>(t[j]), cache_),
                              cache_);
        correction += weight[static_cast<size_t>(sigma)] * colength(a, cache_);
    });
    return main_term - correction;
}

ModuleSpec BrEngine::L_module(const std::vector<int>& A) const
{
    const int r = rank();
    std::vector<bool> in_A(static_cast<size_t>(r), false);
    for (int idx : A) {
        if (idx < 0 || idx >= r)
            throw std::invalid_argument("subset index out of range");
        if (in_A[static_cast<size_t>(idx)])
            throw std::invalid_argument("subset has repeated index");
        in_A[static_cast<size_t>(idx)] = true;
    }
    if (static_cast<int>(A.size()) == r)
        throw std::invalid_argument("subset must be proper");

    MonomialIdeal B = MonomialIdeal::zero(dim());
    for (int s = 0; s < r; ++s)
        if (!in_A[static_cast<size_t>(s)])
            B = ideal_sum(B, module_.ideals[static_cast<size_t>(s)]);

    std::vector<MonomialIdeal> summands{B};
    std::vector<int> sorted_A = A;
    std::sort(sorted_A.begin(), sorted_A.end());
    for (int j : sorted_A)
        summands.push_back(ideal_sum(B, module_.ideals[static_cast<size_t>(j)]));
    return ModuleSpec(dim(), std::move(summands));
}

Int BrEngine::subset_lambda_sum(int k, long long p)
{
    const int r = rank();
    if (k < 1 || k > r)
        throw std::invalid_argument("subset sum needs 1 <= k <= r");
    Int total = 0;
    for (const auto& A : subsets_of_size(r, r - k))
        total += lambda_value(L_module(A), p, cache_);
    return total;
}

Int BrEngine::subset_correction(int k, long long p, long long q)
{
    const int r = rank();
    check_closed_form_args(k, p, q, r);
    if (k == 1 || k == r)
        return 0;  // lower binomial index -1, resp. no tail indices

    std::vector<Int> weight(static_cast<size_t>(p) + 1, Int(0));
    for (long long sigma = 1; sigma <= p; ++sigma)
        weight[static_cast<size_t>(sigma)] =
            weight[static_cast<size_t>(sigma - 1)] +
            binomial_comb(Int(q - (k - 1) * p - 2 - (sigma - 1)), k - 2);

    Int total = 0;
    for (const auto& A : subsets_of_size(r, r - k)) {
        std::vector<bool> in_A(static_cast<size_t>(r), false);
        for (int idx : A)
            in_A[static_cast<size_t>(idx)] = true;
        MonomialIdeal B = MonomialIdeal::zero(dim());
        for (int s = 0; s < r; ++s)
            if (!in_A[static_cast<size_t>(s)])
                B = ideal_sum(B, module_.ideals[static_cast<size_t>(s)]);
        std::vector<MonomialIdeal> shifted;  // B + I_j for j in A
        for (int j : A)
            shifted.push_back(ideal_sum(B, module_.ideals[static_cast<size_t>(j)]));

        for_each_composition(p, static_cast<int>(A.size()) + 1,
                             [&](const std::vector<long long>& t) {
                                 long long sigma = 0;
                                 for (size_t j = 0; j + 1 < t.size(); ++j)
                                     sigma += t[j];
                                 if (sigma == 0)
                                     return;
                                 MonomialIdeal a =
                                     ideal_power(B, static_cast<int>(p - sigma), cache_);
                                 for (size_t j = 0; j + 1 < t.size(); ++j)
                                     a = ideal_product(
                                         a,
                                         ideal_power(shifted[j], static_cast<int>(t[j]), cache_),
                                         cache_);
                                 total += weight[static_cast<size_t>(sigma)] * colength(a, cache_);
                             });
    }
    return total;
}

Int BrEngine::minus_region_closed(int k, long long p, long long q)
{
    check_closed_form_args(k, p, q, rank());
    return binomial_comb(Int(q - (k - 1) * p - 1), k - 1) * subset_lambda_sum(k, p) -
           subset_correction(k, p, q);
}

Int BrEngine::lambda_remainder(int k, long long p, long long q)
{
    const int r = rank();
    check_closed_form_args(k, p, q, r);
    Int total = Lambda(p, q);
    for (int i = 1; i <= k; ++i)
        total -= binomial_comb(Int(q - (r - i) * p - 1), r - i) * subset_lambda_sum(r - i + 1, p);
    return total;
}

}  // namespace brim
