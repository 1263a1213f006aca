#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>
#include <vector>

namespace gkz {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

inline RatVec to_rat(const IntVec& v) {
    RatVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    return r;
}

inline bool is_integer(const Rat& q) { return denominator(q) == 1; }

inline bool is_integer_vec(const RatVec& v) {
    for (const Rat& q : v)
        if (!is_integer(q)) return false;
    return true;
}

inline IntVec to_int(const RatVec& v) {
    IntVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = numerator(v[i]);
    return r;
}

// Serializes without a decimal point: "-3" or "1/2".
inline std::string rat_to_string(const Rat& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

// Accepts "n" and "p/q"; throws std::invalid_argument on anything else.
Rat parse_rat(const std::string& s);

inline Rat dot(const RatVec& a, const RatVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline RatVec vec_sub(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline RatVec vec_add(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline bool is_zero_vec(const RatVec& v) {
    for (const Rat& q : v)
        if (q != 0) return false;
    return true;
}

inline bool is_zero_vec(const IntVec& v) {
    for (const Int& q : v)
        if (q != 0) return false;
    return true;
}

}  // namespace gkz
