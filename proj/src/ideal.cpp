#include "brim/ideal.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace brim {

namespace {

bool divides(const Exponent& a, const Exponent& b)
{
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i])
            return false;
    return true;
}

int degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

std::vector<Exponent> minimal_generators(std::vector<Exponent> gens, int dim)
{
    for (const auto& g : gens) {
        if (static_cast<int>(g.size()) != dim)
            throw std::invalid_argument("generator arity does not match dim");
        for (int e : g)
            if (e < 0)
                throw std::invalid_argument("negative exponent in generator");
    }
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    if (gens.empty())
        return gens;

    if (dim == 2) {
        // Pareto sweep: after sorting lex, keep gens with strictly decreasing
        // second coordinate.
        std::vector<Exponent> keep;
        for (const auto& g : gens) {
            if (!keep.empty() && keep.back()[1] <= g[1])
                continue;
            keep.push_back(g);
        }
        return keep;
    }

    // A monomial is redundant iff a generator of smaller or equal degree
    // divides it, so a degree-sorted sweep needs only earlier survivors.
    std::stable_sort(gens.begin(), gens.end(), [](const Exponent& a, const Exponent& b) {
        return degree(a) < degree(b);
    });
    std::vector<Exponent> keep;
    for (const auto& g : gens) {
        bool redundant = false;
        for (const auto& k : keep) {
            if (divides(k, g)) {
                redundant = true;
                break;
            }
        }
        if (!redundant)
            keep.push_back(g);
    }
    std::sort(keep.begin(), keep.end());
    return keep;
}

}  // namespace

MonomialIdeal::MonomialIdeal(int dim, std::vector<Exponent> raw_gens) : dim_(dim)
{
    if (dim < 1)
        throw std::invalid_argument("dim must be positive");
    gens_ = minimal_generators(std::move(raw_gens), dim);
}

bool MonomialIdeal::is_unit() const
{
    return gens_.size() == 1 && degree(gens_[0]) == 0;
}

bool MonomialIdeal::contains(const Exponent& e) const
{
    if (static_cast<int>(e.size()) != dim_)
        throw std::invalid_argument("monomial arity does not match dim");
    for (const auto& g : gens_)
        if (divides(g, e))
            return true;
    return false;
}

bool MonomialIdeal::contains_ideal(const MonomialIdeal& other) const
{
    if (other.dim_ != dim_)
        throw std::invalid_argument("ideal dims differ");
    for (const auto& g : other.gens_)
        if (!contains(g))
            return false;
    return true;
}

bool MonomialIdeal::is_m_primary() const
{
    if (is_unit())
        return false;
    std::vector<bool> axis(static_cast<size_t>(dim_), false);
    for (const auto& g : gens_) {
        int support = 0, pos = -1;
        for (int i = 0; i < dim_; ++i) {
            if (g[static_cast<size_t>(i)] > 0) {
                ++support;
                pos = i;
            }
        }
        if (support == 1)
            axis[static_cast<size_t>(pos)] = true;
    }
    return std::all_of(axis.begin(), axis.end(), [](bool b) { return b; });
}

std::vector<int> MonomialIdeal::bounding_box() const
{
    if (!is_m_primary())
        throw std::domain_error("ideal is not m-primary: " + str());
    std::vector<int> box(static_cast<size_t>(dim_), 0);
    for (const auto& g : gens_) {
        int support = 0, pos = -1;
        for (int i = 0; i < dim_; ++i) {
            if (g[static_cast<size_t>(i)] > 0) {
                ++support;
                pos = i;
            }
        }
        if (support == 1) {
            int& b = box[static_cast<size_t>(pos)];
            int e = g[static_cast<size_t>(pos)];
            b = (b == 0) ? e : std::min(b, e);
        }
    }
    return box;
}

std::vector<int> MonomialIdeal::cache_key() const
{
    std::vector<int> key;
    key.reserve(1 + gens_.size() * static_cast<size_t>(dim_));
    key.push_back(dim_);
    for (const auto& g : gens_)
        key.insert(key.end(), g.begin(), g.end());
    return key;
}

std::string MonomialIdeal::str() const
{
    auto var_name = [this](int i) {
        if (dim_ <= 3) {
            static const char* names[] = {"x", "y", "z"};
            return std::string(names[i]);
        }
        return "x" + std::to_string(i + 1);
    };
    std::ostringstream os;
    os << "(";
    for (size_t gi = 0; gi < gens_.size(); ++gi) {
        if (gi)
            os << ", ";
        const auto& g = gens_[gi];
        if (degree(g) == 0) {
            os << "1";
            continue;
        }
        bool first = true;
        for (int i = 0; i < dim_; ++i) {
            int e = g[static_cast<size_t>(i)];
            if (e == 0)
                continue;
            if (!first)
                os << "*";
            first = false;
            os << var_name(i);
            if (e > 1)
                os << "^" << e;
        }
    }
    os << ")";
    return os.str();
}

MonomialIdeal minimalize(const std::vector<Exponent>& raw_gens, int dim)
{
    return MonomialIdeal(dim, raw_gens);
}

MonomialIdeal ideal_sum(const MonomialIdeal& a, const MonomialIdeal& b)
{
    if (a.dim() != b.dim())
        throw std::invalid_argument("ideal dims differ");
    std::vector<Exponent> gens = a.gens();
    const auto& bg = b.gens();
    gens.insert(gens.end(), bg.begin(), bg.end());
    return MonomialIdeal(a.dim(), std::move(gens));
}

namespace {

MonomialIdeal product_raw(const MonomialIdeal& a, const MonomialIdeal& b)
{
    if (a.is_zero() || b.is_zero())
        return MonomialIdeal::zero(a.dim());
    std::vector<Exponent> gens;
    gens.reserve(a.gens().size() * b.gens().size());
    for (const auto& ga : a.gens()) {
        for (const auto& gb : b.gens()) {
            Exponent e(ga.size());
            for (size_t i = 0; i < e.size(); ++i)
                e[i] = ga[i] + gb[i];
            gens.push_back(std::move(e));
        }
    }
    return MonomialIdeal(a.dim(), std::move(gens));
}

std::vector<int> pair_key(int tag, const MonomialIdeal& a, const MonomialIdeal& b)
{
    std::vector<int> key{tag};
    auto ka = a.cache_key(), kb = b.cache_key();
    key.push_back(static_cast<int>(ka.size()));
    key.insert(key.end(), ka.begin(), ka.end());
    key.insert(key.end(), kb.begin(), kb.end());
    return key;
}

}  // namespace

MonomialIdeal ideal_product(const MonomialIdeal& a, const MonomialIdeal& b, IdealCache& cache)
{
    if (a.dim() != b.dim())
        throw std::invalid_argument("ideal dims differ");
    // Canonicalize the order so I*J and J*I share a cache entry.
    const MonomialIdeal& lo = (b < a) ? b : a;
    const MonomialIdeal& hi = (b < a) ? a : b;
    auto key = pair_key(1, lo, hi);
    if (const MonomialIdeal* hit = cache.find_product(key))
        return *hit;
    MonomialIdeal result = product_raw(lo, hi);
    cache.store_product(std::move(key), result);
    return result;
}

MonomialIdeal ideal_power(const MonomialIdeal& a, int n, IdealCache& cache)
{
    if (n < 0)
        throw std::invalid_argument("ideal power must be nonnegative");
    if (n == 0)
        return MonomialIdeal::unit(a.dim());
    if (n == 1)
        return a;
    MonomialIdeal half = ideal_power(a, n / 2, cache);
    MonomialIdeal result = ideal_product(half, half, cache);
    if (n % 2)
        result = ideal_product(result, a, cache);
    return result;
}

long long colength(const MonomialIdeal& ideal, IdealCache& cache)
{
    if (ideal.is_unit())
        return 0;  // R/R has length zero; arises as I^0, J(0, n)
    std::vector<int> key = ideal.cache_key();
    key.insert(key.begin(), 2);
    long long cached = 0;
    if (cache.find_colength(key, cached))
        return cached;

    std::vector<int> box = ideal.bounding_box();  // throws if not m-primary
    const int d = ideal.dim();
    // Walk the bounding box in odometer order and count monomials outside
    // the ideal.
    long long count = 0;
    Exponent e(static_cast<size_t>(d), 0);
    while (true) {
        if (!ideal.contains(e))
            ++count;
        int i = 0;
        while (i < d) {
            if (++e[static_cast<size_t>(i)] < box[static_cast<size_t>(i)])
                break;
            e[static_cast<size_t>(i)] = 0;
            ++i;
        }
        if (i == d)
            break;
    }
    cache.store_colength(std::move(key), count);
    return count;
}

MonomialIdeal random_m_primary_ideal(int dim, int max_pure_power, int extra_gens,
                                     std::uint64_t seed)
{
    if (dim < 1 || max_pure_power < 1 || extra_gens < 0)
        throw std::invalid_argument("bad random ideal parameters");
    std::mt19937_64 rng(seed);
    // Portable uniform draw in [1, n] by rejection; std::uniform_int_distribution
    // is not specified identically across standard libraries.
    auto draw = [&rng](int n) {
        const std::uint64_t bound = (~std::uint64_t{0}) - (~std::uint64_t{0}) % static_cast<std::uint64_t>(n);
        std::uint64_t v;
        do {
            v = rng();
        } while (v >= bound);
        return static_cast<int>(v % static_cast<std::uint64_t>(n)) + 1;
    };

    std::vector<Exponent> gens;
    std::vector<int> pure(static_cast<size_t>(dim));
    for (int i = 0; i < dim; ++i) {
        Exponent g(static_cast<size_t>(dim), 0);
        pure[static_cast<size_t>(i)] = draw(max_pure_power);
        g[static_cast<size_t>(i)] = pure[static_cast<size_t>(i)];
        gens.push_back(std::move(g));
    }
    for (int k = 0; k < extra_gens; ++k) {
        // Interior point of the box spanned by the pure powers, if the box
        // has interior room on some axis.
        Exponent g(static_cast<size_t>(dim), 0);
        bool nonzero = false;
        for (int i = 0; i < dim; ++i) {
            int hi = pure[static_cast<size_t>(i)];
            int e = draw(hi + 1) - 1;  // in [0, hi]
            if (e >= hi)
                e = hi - 1;
            g[static_cast<size_t>(i)] = e;
            nonzero = nonzero || e > 0;
        }
        if (nonzero)
            gens.push_back(std::move(g));
    }
    return MonomialIdeal(dim, std::move(gens));
}

namespace {

// One monomial: product of var^exp factors, '*' optional.
Exponent parse_monomial(const std::string& tok, int dim)
{
    Exponent e(static_cast<size_t>(dim), 0);
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < tok.size() && std::isspace(static_cast<unsigned char>(tok[i])))
            ++i;
    };
    skip_ws();
    if (i == tok.size())
        throw std::invalid_argument("empty monomial");
    if (tok[i] == '1' && dim >= 1) {
        // Constant monomial "1" (the unit ideal).
        ++i;
        skip_ws();
        if (i != tok.size())
            throw std::invalid_argument("malformed monomial: " + tok);
        return e;
    }
    bool saw_factor = false;
    while (i < tok.size()) {
        skip_ws();
        if (i == tok.size())
            break;
        if (tok[i] == '*') {
            if (!saw_factor)
                throw std::invalid_argument("malformed monomial: " + tok);
            ++i;
            skip_ws();
        }
        if (i == tok.size())
            throw std::invalid_argument("malformed monomial: " + tok);
        int var = -1;
        char c = tok[i];
        if (c == 'x' || c == 'y' || c == 'z') {
            ++i;
            if (c == 'x' && i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) {
                // x<k> indexing form
                size_t j = i;
                while (j < tok.size() && std::isdigit(static_cast<unsigned char>(tok[j])))
                    ++j;
                var = std::stoi(tok.substr(i, j - i)) - 1;
                i = j;
            } else {
                if (dim > 3)
                    throw std::invalid_argument("use x1..x" + std::to_string(dim) +
                                                " for dim > 3: " + tok);
                var = c - 'x';
            }
        } else {
            throw std::invalid_argument("unknown variable in monomial: " + tok);
        }
        if (var < 0 || var >= dim)
            throw std::invalid_argument("variable out of range in monomial: " + tok);
        int exp = 1;
        skip_ws();
        if (i < tok.size() && tok[i] == '^') {
            ++i;
            skip_ws();
            size_t j = i;
            while (j < tok.size() && std::isdigit(static_cast<unsigned char>(tok[j])))
                ++j;
            if (j == i)
                throw std::invalid_argument("missing exponent in monomial: " + tok);
            exp = std::stoi(tok.substr(i, j - i));
            i = j;
        }
        e[static_cast<size_t>(var)] += exp;
        saw_factor = true;
    }
    if (!saw_factor)
        throw std::invalid_argument("empty monomial");
    return e;
}

}  // namespace

MonomialIdeal parse_ideal(const std::string& text, int dim)
{
    std::string body = text;
    // Allow surrounding parentheses.
    auto l = body.find_first_not_of(" \t\n\r");
    auto r = body.find_last_not_of(" \t\n\r");
    if (l == std::string::npos)
        throw std::invalid_argument("empty generator list");
    body = body.substr(l, r - l + 1);
    if (body.front() == '(' && body.back() == ')')
        body = body.substr(1, body.size() - 2);

    std::vector<Exponent> gens;
    size_t start = 0;
    while (start <= body.size()) {
        size_t comma = body.find(',', start);
        std::string tok =
            body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (tok.find_first_not_of(" \t\n\r") != std::string::npos)
            gens.push_back(parse_monomial(tok, dim));
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    if (gens.empty())
        throw std::invalid_argument("empty generator list");
    return MonomialIdeal(dim, std::move(gens));
}

ModuleSpec::ModuleSpec(int dim_in, std::vector<MonomialIdeal> ideals_in)
    : dim(dim_in), ideals(std::move(ideals_in))
{
    if (ideals.empty())
        throw std::invalid_argument("module needs at least one ideal");
    for (const auto& I : ideals) {
        if (I.dim() != dim)
            throw std::invalid_argument("ideal dim does not match module dim");
        if (!I.is_m_primary())
            throw std::domain_error("module ideal is not m-primary: " + I.str());
    }
}

std::vector<int> ModuleSpec::cache_key() const
{
    std::vector<int> key{dim, rank()};
    for (const auto& I : ideals) {
        auto k = I.cache_key();
        key.push_back(static_cast<int>(k.size()));
        key.insert(key.end(), k.begin(), k.end());
    }
    return key;
}

ModuleSpec random_module_spec(int dim, int rank, int max_pure_power, int extra_gens,
                              std::uint64_t seed)
{
    if (rank < 1)
        throw std::invalid_argument("rank must be positive");
    std::vector<MonomialIdeal> ideals;
    ideals.reserve(static_cast<size_t>(rank));
    for (int i = 0; i < rank; ++i) {
        // Offset the seed per component; mixing constant keeps streams apart.
        ideals.push_back(random_m_primary_ideal(
            dim, max_pure_power, extra_gens,
            seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(i + 1)));
    }
    return ModuleSpec(dim, std::move(ideals));
}

IdealCache::IdealCache() : cap_(1u << 20)
{
    if (const char* env = std::getenv("BRIM_CACHE_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0)
            cap_ = static_cast<size_t>(v);
    }
}

IdealCache& IdealCache::global()
{
    static IdealCache instance;
    return instance;
}

size_t IdealCache::KeyHash::operator()(const std::vector<int>& v) const noexcept
{
    // FNV-1a over the int entries.
    size_t h = 1469598103934665603ull;
    for (int x : v) {
        h ^= static_cast<size_t>(static_cast<unsigned int>(x));
        h *= 1099511628211ull;
    }
    return h;
}

const MonomialIdeal* IdealCache::find_product(const std::vector<int>& key) const
{
    auto it = products_.find(key);
    return it == products_.end() ? nullptr : &it->second;
}

void IdealCache::store_product(std::vector<int> key, MonomialIdeal value)
{
    products_.emplace(std::move(key), std::move(value));
    enforce_cap();
}

bool IdealCache::find_colength(const std::vector<int>& key, long long& out) const
{
    auto it = colengths_.find(key);
    if (it == colengths_.end())
        return false;
    out = it->second;
    return true;
}

void IdealCache::store_colength(std::vector<int> key, long long value)
{
    colengths_.emplace(std::move(key), value);
    enforce_cap();
}

size_t IdealCache::size() const { return products_.size() + colengths_.size(); }

void IdealCache::clear()
{
    products_.clear();
    colengths_.clear();
}

void IdealCache::enforce_cap()
{
    if (products_.size() + colengths_.size() > cap_)
        clear();
}

}  // namespace brim
