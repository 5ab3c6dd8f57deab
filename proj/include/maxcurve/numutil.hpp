#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "maxcurve/errors.hpp"

// Small exact integer helpers shared by the field and genus machinery.
// Everything here is deterministic and sized for "desk scale" inputs
// (Q below 2^31, exponents below 2^63).

namespace maxcurve {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

// x^e with overflow detection; raises degree_overflow if the result
// would not fit in a u64.
inline u64 ipow_checked(u64 x, u32 e) {
    u64 r = 1;
    for (u32 i = 0; i < e; ++i) {
        if (x != 0 && r > UINT64_MAX / x)
            raise(errc::degree_overflow, "integer power overflows 64 bits");
        r *= x;
    }
    return r;
}

inline u64 ipow(u64 x, u32 e) {
    u64 r = 1;
    while (e) {
        if (e & 1) r *= x;
        x *= x;
        e >>= 1;
    }
    return r;
}

// (a * b) mod m without overflow for m < 2^63.
inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

inline u64 powmod_u64(u64 base, u64 e, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (e) {
        if (e & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        e >>= 1;
    }
    return r;
}

// Deterministic trial-division primality; ample for p and for factoring
// Q-1 with Q < 2^31 (the CLI resource bound keeps us well inside this).
inline bool is_prime_u64(u64 v) {
    if (v < 2) return false;
    for (u64 d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

// Distinct prime factors, ascending (trial division).
inline std::vector<u64> prime_factors(u64 v) {
    std::vector<u64> out;
    for (u64 d = 2; d * d <= v; ++d) {
        if (v % d == 0) {
            out.push_back(d);
            while (v % d == 0) v /= d;
        }
    }
    if (v > 1) out.push_back(v);
    return out;
}

// All divisors of v, ascending.
inline std::vector<u64> divisors(u64 v) {
    std::vector<u64> small, large;
    for (u64 d = 1; d * d <= v; ++d) {
        if (v % d == 0) {
            small.push_back(d);
            if (d != v / d) large.push_back(v / d);
        }
    }
    for (auto it = large.rbegin(); it != large.rend(); ++it) small.push_back(*it);
    return small;
}

inline u64 gcd_u64(u64 a, u64 b) { return std::gcd(a, b); }

// Writes q = p^e with p prime; rejects anything that is not a prime power.
inline std::pair<u32, u32> split_prime_power(u64 q) {
    if (q < 2) raise(errc::bad_param, "q must be a prime power >= 2");
    const auto pf = prime_factors(q);
    if (pf.size() != 1) raise(errc::not_prime, "q is not a prime power");
    const u64 p = pf[0];
    u32 e = 0;
    u64 v = q;
    while (v > 1) {
        v /= p;
        ++e;
    }
    if (ipow(p, e) != q) raise(errc::not_prime, "q is not a prime power");
    return {static_cast<u32>(p), e};
}

} // namespace maxcurve
