#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace nilpot {

// Exact scalars. Rat is kept in canonical form (gcd(|p|,q)=1, q>=1) by GMP;
// every constructor below canonicalizes explicitly since mpq_class(p,q) does not.
using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1)
{
    if (den == 0)
        throw std::invalid_argument("rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat(const Int &num, const Int &den = 1)
{
    if (den == 0)
        throw std::invalid_argument("rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rat &r) { return r.get_den() == 1; }

inline Int to_int(const Rat &r)
{
    if (!is_integer(r))
        throw std::invalid_argument("to_int: not an integer: " + r.get_str());
    return r.get_num();
}

// serialization is always "p/q", with "/q" omitted when q = 1
inline std::string rat_str(const Rat &r)
{
    if (is_integer(r))
        return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rat rat_parse(const std::string &s)
{
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return rat(Int(s));
        return rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    } catch (const std::invalid_argument &) {
        throw std::invalid_argument("rat_parse: bad rational '" + s + "'");
    }
}

} // namespace nilpot
