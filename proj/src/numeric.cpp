#include "brim/numeric.hpp"

namespace brim {

Int factorial(int n)
{
    if (n < 0)
        throw std::invalid_argument("factorial: negative argument");
    Int r = 1;
    for (int i = 2; i <= n; ++i)
        r *= i;
    return r;
}

Int binomial(const Int& n, long k, BinomialConvention convention)
{
    if (k < 0)
        return 0;
    if (convention == BinomialConvention::combinatorial && (n < 0 || n < k))
        return 0;
    Int num = 1;
    for (long t = 0; t < k; ++t)
        num *= n - t;
    return num / factorial(static_cast<int>(k));  // falling factorial is divisible by k!
}

Int int_from_str(const std::string& s)
{
    return Int(s);
}

std::string rat_str(const Rat& v)
{
    return rat_num(v).str() + "/" + rat_den(v).str();
}

Rat rat_from_str(const std::string& s)
{
    auto slash = s.find('/');
    if (slash == std::string::npos)
        return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0)
        throw std::invalid_argument("rat_from_str: zero denominator in '" + s + "'");
    if (den < 0) {  // the two-argument constructor requires a positive denominator
        num = -num;
        den = -den;
    }
    return Rat(num, den);
}

}  // namespace brim
