#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace brim {

// Exponent vector of a monomial in d variables; entry i is the exponent of x_i.
using Exponent = std::vector<int>;

class IdealCache;

/// Monomial ideal given by its minimal generators, kept minimalized and
/// lexicographically sorted so that equal ideals compare equal.
class MonomialIdeal {
public:
    MonomialIdeal(int dim, std::vector<Exponent> raw_gens);

    static MonomialIdeal zero(int dim) { return MonomialIdeal(dim, {}); }
    static MonomialIdeal unit(int dim)
    {
        return MonomialIdeal(dim, {Exponent(static_cast<size_t>(dim), 0)});
    }

    int dim() const { return dim_; }
    const std::vector<Exponent>& gens() const { return gens_; }

    bool is_zero() const { return gens_.empty(); }
    bool is_unit() const;

    // Membership of the monomial x^e: some generator divides it.
    bool contains(const Exponent& e) const;
    // other is contained in this ideal (checked generator-wise).
    bool contains_ideal(const MonomialIdeal& other) const;

    // A pure power of every axis appears among the generators.
    bool is_m_primary() const;

    // Minimal pure-power exponent per axis; the standard monomials all live
    // in the box prod [0, box[i]). Throws if the ideal is not m-primary.
    std::vector<int> bounding_box() const;

    // Content key used for memoization: dim followed by the flattened gens.
    std::vector<int> cache_key() const;

    friend bool operator==(const MonomialIdeal& a, const MonomialIdeal& b)
    {
        return a.dim_ == b.dim_ && a.gens_ == b.gens_;
    }
    friend bool operator<(const MonomialIdeal& a, const MonomialIdeal& b)
    {
        if (a.dim_ != b.dim_)
            return a.dim_ < b.dim_;
        return a.gens_ < b.gens_;
    }

    std::string str() const;  // e.g. "(x^2, x*y, y^3)"

private:
    int dim_;
    std::vector<Exponent> gens_;
};

/// Content-addressed memo for ideal products, powers and colengths.
/// Not synchronized: share within one worker or create one per worker.
/// The entry count is capped by the BRIM_CACHE_CAP environment variable
/// (default 1<<20); exceeding the cap clears the cache.
class IdealCache {
public:
    IdealCache();

    static IdealCache& global();

    const MonomialIdeal* find_product(const std::vector<int>& key) const;
    void store_product(std::vector<int> key, MonomialIdeal value);

    bool find_colength(const std::vector<int>& key, long long& out) const;
    void store_colength(std::vector<int> key, long long value);

    size_t size() const;
    void clear();

private:
    void enforce_cap();

    struct KeyHash {
        size_t operator()(const std::vector<int>& v) const noexcept;
    };

    size_t cap_;
    std::unordered_map<std::vector<int>, MonomialIdeal, KeyHash> products_;
    std::unordered_map<std::vector<int>, long long, KeyHash> colengths_;
};

/// Drops generators dominated by another and sorts; the generated ideal is unchanged.
MonomialIdeal minimalize(const std::vector<Exponent>& raw_gens, int dim);

MonomialIdeal ideal_sum(const MonomialIdeal& a, const MonomialIdeal& b);
MonomialIdeal ideal_product(const MonomialIdeal& a, const MonomialIdeal& b,
                            IdealCache& cache = IdealCache::global());
MonomialIdeal ideal_power(const MonomialIdeal& a, int n,
                          IdealCache& cache = IdealCache::global());

/// Number of standard monomials: lattice points outside the ideal.
/// Throws std::domain_error if the ideal is not m-primary (infinite colength).
long long colength(const MonomialIdeal& ideal, IdealCache& cache = IdealCache::global());

inline bool is_m_primary(const MonomialIdeal& ideal) { return ideal.is_m_primary(); }

/// Deterministic generator of a non-unit m-primary ideal: one pure power per
/// axis with exponent in [1, max_pure_power], plus extra_gens random interior
/// generators, minimalized.
MonomialIdeal random_m_primary_ideal(int dim, int max_pure_power, int extra_gens,
                                     std::uint64_t seed);

/// Parses "x^2, x*y, y^3" style generator lists. Variables are x,y,z for
/// dim <= 3 or x1..xd in general; '*' and whitespace between factors are
/// optional. Throws std::invalid_argument on unknown variables, malformed
/// exponents or an empty generator list.
MonomialIdeal parse_ideal(const std::string& text, int dim);

/// Direct sum of cyclic modules R/I_1 + ... + R/I_r given by m-primary
/// monomial ideals over a common ambient dimension.
struct ModuleSpec {
    ModuleSpec(int dim, std::vector<MonomialIdeal> ideals);

    int rank() const { return static_cast<int>(ideals.size()); }
    std::vector<int> cache_key() const;

    int dim;
    std::vector<MonomialIdeal> ideals;
};

ModuleSpec random_module_spec(int dim, int rank, int max_pure_power, int extra_gens,
                              std::uint64_t seed);

}  // namespace brim
