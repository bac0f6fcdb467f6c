#pragma once

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "brim/ideal.hpp"
#include "brim/numeric.hpp"

namespace brim {

/// A subset of the index set H_{p,q} = {n >= 0 : |n| = p+q}, named by how the
/// entries of n compare to p:
///   full       all of H
///   level      H^(k)       = {n : #{i : n_i > p} = k}
///   block      D_A^(k)     = {n : n_i > p for i not in A, n_i <= p for i in A}
///   block_low  E_{A-}^(k)  = block members with sum_{i in A} n_i <= p
///   block_high E_{A+}^(k)  = block members with sum_{i in A} n_i > p
///   prefix     Delta^(k)   = {n : n_1..n_k > p, n_{k+1}+...+n_r <= p}
/// For block kinds #A must equal r-k; prefix uses A = {k+1..r} implicitly.
struct RegionSpec {
    enum class Kind { full, level, block, block_low, block_high, prefix };

    Kind kind = Kind::full;
    int k = 0;
    std::vector<int> A;  // sorted 0-based indices, block kinds only
    long long p = 0;
    long long q = 0;

    static RegionSpec full_region(long long p, long long q);
    static RegionSpec level(int k, long long p, long long q);
    static RegionSpec block(int k, std::vector<int> A, long long p, long long q);
    static RegionSpec block_low(int k, std::vector<int> A, long long p, long long q);
    static RegionSpec block_high(int k, std::vector<int> A, long long p, long long q);
    static RegionSpec prefix(int k, long long p, long long q);

    void validate(int r) const;  // throws std::invalid_argument when malformed
    bool contains(const std::vector<long long>& n) const;
    std::string str() const;
};

/// All size-m subsets of {0..r-1} in lexicographic order.
std::vector<std::vector<int>> subsets_of_size(int r, int m);

/// Visits every n >= 0 with |n| = total over `parts` entries.
void for_each_composition(long long total, int parts,
                          const std::function<void(const std::vector<long long>&)>& fn);

/// Ordinary Buchsbaum-Rim function of a direct sum of cyclic modules:
/// lambda(p) = sum over |i| = p of colength(I_1^{i_1} ... I_r^{i_r}).
Int lambda_value(const ModuleSpec& C, long long p, IdealCache& cache = IdealCache::global());

/// Evaluator for the Buchsbaum-Rim function Lambda(p,q) of one module and the
/// region/closed-form apparatus around it. Memoizes per-module work; create
/// one engine per module (engines sharing the global IdealCache still share
/// ideal arithmetic and colengths).
class BrEngine {
public:
    explicit BrEngine(ModuleSpec C, IdealCache& cache = IdealCache::global());

    const ModuleSpec& module() const { return module_; }
    int rank() const { return module_.rank(); }
    int dim() const { return module_.dim; }

    /// Standard admissible-region threshold: q >= (p+1) * r.
    long long q_min(long long p) const { return (p + 1) * rank(); }

    /// J(p,n) = sum over {i : |i| = p, 0 <= i <= n} of I^i, minimalized.
    /// Depends only on (p, min(n_i, p)); throws std::domain_error when |n| < p.
    MonomialIdeal J_ideal(long long p, const std::vector<long long>& n);

    /// Lambda(p,0).
    Int lambda(long long p);

    /// Lambda(p,q) = sum over n in H_{p,q} of colength(J(p,n)). Aggregated by
    /// the truncation class m = min(n, p): each class contributes a single
    /// colength times the number of n realizing it.
    Int Lambda(long long p, long long q);

    /// Restriction of the Lambda sum to one region, composition by composition.
    Int Lambda_region(const RegionSpec& region);

    // --- closed forms over the prefix region Delta^(k): require q >= (p+1)r ---

    /// Weighted tail sum: over tails (n_{k+1}..n_r) with sigma <= p,
    /// C(q-(k-1)p-1-sigma, k-1) * colength(B^{p-sigma} * prod_j (B+I_j)^{n_j})
    /// with B = I_1+...+I_k.
    Int delta_closed_direct(int k, long long p, long long q);

    /// Same value computed through the corner module:
    /// C(q-(k-1)p-1, k-1) * lambda_{L_k}(p) minus the double-sum correction,
    /// L_k = R/B + sum_{j>k} R/(B+I_j).
    Int delta_closed_module(int k, long long p, long long q);

    /// Closed form for Lambda over the union of the low blocks at level k
    /// (for k in {r-1, r} the high blocks are empty, so this is all of H^(k)):
    /// C(q-(k-1)p-1, k-1) * g_k(p) - h_k(p,q).
    Int minus_region_closed(int k, long long p, long long q);

    /// g_k(p) = sum over #A = r-k of lambda_{L_A}(p).
    Int subset_lambda_sum(int k, long long p);

    /// h_k(p,q): the double-sum correction aggregated over #A = r-k; zero for
    /// k = 1 (binomial lower index -1) and k = r (no tail indices).
    Int subset_correction(int k, long long p, long long q);

    /// F_k(p,q) = Lambda(p,q) - sum_{i=1}^k C(q-(r-i)p-1, r-i) * g_{r-i+1}(p).
    Int lambda_remainder(int k, long long p, long long q);

    /// L_A = R/B + sum_{j in A} R/(B+I_j) with B = sum_{s not in A} I_s.
    /// Requires A to be a proper subset of {0..r-1}.
    ModuleSpec L_module(const std::vector<int>& A) const;

private:
    struct VecHash {
        size_t operator()(const std::vector<long long>& v) const noexcept;
    };

    Int truncated_colength(long long p, std::vector<long long> m);
    MonomialIdeal prefix_sum_ideal(int k) const;  // I_1 + ... + I_k

    ModuleSpec module_;
    IdealCache& cache_;
    std::unordered_map<std::vector<long long>, long long, VecHash> j_colengths_;
};

}  // namespace brim
