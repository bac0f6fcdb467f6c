#pragma once

#include <map>
#include <string>
#include <vector>

#include "brim/numeric.hpp"

namespace brim {

/// Sparse multivariate polynomial with rational coefficients.
/// Terms are keyed by exponent tuples of fixed arity; zero coefficients are
/// never stored, so equal polynomials compare equal.
class RatPoly {
public:
    using Key = std::vector<int>;

    explicit RatPoly(int arity);
    static RatPoly constant(int arity, const Rat& c);
    static RatPoly variable(int arity, int index);

    int arity() const { return arity_; }
    const std::map<Key, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Total degree; -1 for the zero polynomial.
    int degree() const;
    // Degree in a single variable; -1 for the zero polynomial.
    int degree_in(int var) const;

    Rat coeff(const Key& key) const;
    void add_term(const Key& key, const Rat& c);

    Rat eval(const std::vector<Rat>& point) const;
    Rat eval_int(const std::vector<Int>& point) const;

    RatPoly& operator+=(const RatPoly& o);
    RatPoly& operator-=(const RatPoly& o);
    RatPoly& operator*=(const RatPoly& o);
    RatPoly& operator*=(const Rat& c);

    friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
    friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
    friend RatPoly operator*(RatPoly a, const RatPoly& b) { return a *= b; }
    friend RatPoly operator*(RatPoly a, const Rat& c) { return a *= c; }
    friend bool operator==(const RatPoly& a, const RatPoly& b)
    {
        return a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }

    /// Human-readable form in the given variable names, highest degree first.
    std::string str(const std::vector<std::string>& vars) const;

    /// JSON object {"2,0": "7/2", ...}: comma-joined exponent tuple -> "num/den".
    std::string to_json() const;
    static RatPoly from_json(const std::string& json, int arity);

private:
    int arity_;
    std::map<Key, Rat> terms_;
};

/// Coefficient of x^k extracted from a univariate polynomial.
Rat coeff_of(const RatPoly& p, int k);

/// Coefficient of x^a y^b extracted from a bivariate polynomial.
Rat coeff_of(const RatPoly& p, int a, int b);

}  // namespace brim
