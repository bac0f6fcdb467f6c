#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace brim {

// All arithmetic in the fitting and multiplicity layers is exact.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

enum class BinomialConvention {
    combinatorial,  // zero unless 0 <= k <= n
    polynomial      // falling factorial n(n-1)...(n-k+1)/k!, any integer n
};

Int factorial(int n);

// Binomial coefficient of an integer argument. Both conventions return zero
// for k < 0 (the empty-sum convention); they agree whenever n >= k >= 0.
Int binomial(const Int& n, long k, BinomialConvention convention);

inline Int binomial_comb(const Int& n, long k)
{
    return binomial(n, k, BinomialConvention::combinatorial);
}

inline std::string int_str(const Int& v) { return v.str(); }

Int int_from_str(const std::string& s);

// Rationals serialize as "num/den" with den >= 1 and gcd(num, den) = 1.
std::string rat_str(const Rat& v);
Rat rat_from_str(const std::string& s);

inline Int rat_num(const Rat& v) { return boost::multiprecision::numerator(v); }
inline Int rat_den(const Rat& v) { return boost::multiprecision::denominator(v); }

inline bool rat_is_integer(const Rat& v) { return rat_den(v) == 1; }

inline Int rat_to_int(const Rat& v)
{
    if (!rat_is_integer(v))
        throw std::domain_error("rat_to_int: value " + rat_str(v) + " is not an integer");
    return rat_num(v);
}

}  // namespace brim
