#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "maxcurve/errors.hpp"
#include "maxcurve/numutil.hpp"

// Genus bookkeeping for the curve tower and its quotient covers.  All
// intermediate arithmetic runs in arbitrary precision (GMP) and results
// are range-checked on the way back to 64-bit.

namespace maxcurve::genus {

inline i64 to_i64(const mpz_class& z, const char* what) {
    if (!z.fits_slong_p()) raise(errc::degree_overflow, std::string(what) + " exceeds 64 bits");
    return static_cast<i64>(z.get_si());
}

inline u64 to_u64(const mpz_class& z, const char* what) {
    if (z < 0 || !z.fits_ulong_p())
        raise(errc::degree_overflow, std::string(what) + " does not fit u64");
    return static_cast<u64>(z.get_ui());
}

inline mpz_class zpow(u64 base, u32 e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

inline void require_tower_params(u64 q, u32 n) {
    if (q < 2) raise(errc::bad_param, "q must be at least 2");
    if (n % 2 == 0) raise(errc::n_is_even, "n must be odd");
    if (n < 3) raise(errc::bad_param, "n must be >= 3");
}

// g = (q-1)(q^(n+1) + q^n - q^2)/2, the genus of the degree-(q^n+1)/(q+1)
// Kummer cover of the Hermitian curve counted by count_xn.
inline i64 genus_xn(u64 q, u32 n) {
    require_tower_params(q, n);
    mpz_class g = (mpz_class(q) - 1) * (zpow(q, n + 1) + zpow(q, n) - zpow(q, 2)) / 2;
    return to_i64(g, "genus");
}

inline i64 genus_hermitian(u64 q) {
    if (q < 2) raise(errc::bad_param, "q must be at least 2");
    return to_i64(mpz_class(q) * (mpz_class(q) - 1) / 2, "genus");
}

inline u64 tower_m(u64 q, u32 n) {
    require_tower_params(q, n);
    return to_u64((zpow(q, n) + 1) / (mpz_class(q) + 1), "m");
}

// Genus of the intermediate field K(eta, z): (m-1)(q+1)/2.
inline i64 genus_etaz(u64 q, u32 n) {
    return to_i64((mpz_class(tower_m(q, n)) - 1) * (mpz_class(q) + 1) / 2, "genus");
}

// Genus of the intermediate field K(rho, z): (m-1)(q^2-1)/2.
inline i64 genus_rhoz(u64 q, u32 n) {
    return to_i64((mpz_class(tower_m(q, n)) - 1) * (mpz_class(q) * q - 1) / 2, "genus");
}

// One ramified locus of a tame Kummer extension: valuation d of the
// defining function, total degree deg of the places sharing it.
struct RamSpot {
    i64 d;
    u64 deg;
};

// Riemann-Hurwitz for a degree-k Kummer extension of a genus-g function
// field, all ramification tame:
//   g' = 1 + k(g-1) + (1/2) * Sum_i (k - gcd(k, d_i)) * deg_i
// charP guards against wild spots (p | k); pass 0 to skip the check.
inline i64 genus_rh_kummer(i64 baseGenus, u64 k, const std::vector<RamSpot>& ram, u32 charP) {
    if (k == 0) raise(errc::bad_param, "k must be positive");
    if (charP != 0 && k % charP == 0)
        raise(errc::wild_ramification, "p divides the Kummer degree");
    mpz_class acc = 0;
    for (const auto& spot : ram) {
        const u64 ad = spot.d < 0 ? static_cast<u64>(-spot.d) : static_cast<u64>(spot.d);
        acc += mpz_class(k - gcd_u64(k, ad)) * mpz_class(spot.deg);
    }
    if (mpz_class(acc % 2) != 0)
        raise(errc::bad_param, "ramification contribution is odd (data inconsistent)");
    mpz_class g = 1 + mpz_class(k) * (mpz_class(baseGenus) - 1) + acc / 2;
    return to_i64(g, "genus");
}

// Hasse-Weil upper bound total Q + 1 + 2 g sqrtQ; maximality means the
// rational place count hits this exactly.
inline u64 hasse_weil_total(u64 Q, i64 g, u64 sqrtQ) {
    mpz_class t = mpz_class(Q) + 1 + 2 * mpz_class(g) * mpz_class(sqrtQ);
    return to_u64(t, "Hasse-Weil total");
}

// Ramification of the degree-m cover of the Hermitian curve counted by
// count_xn, for the Riemann-Hurwitz cross-check.  The defining function
// y (x^{q^2} - x) / (x^{q+1} - 1) has a simple zero at each of the
// q^3 - q finite rational Hermitian places (both the q + 1 places with
// y = 0, where the valuations of the three factors are 1, q+1 and q+1,
// and the (q^2-q-1)(q+1) generic ones, where only x^{q^2} - x vanishes),
// and a pole of order q^2 - q at each of the q + 1 places at infinity.
inline std::vector<RamSpot> xn_ramification(u64 q) {
    return {{1, q * q * q - q}, {-static_cast<i64>(q * q - q), q + 1}};
}

// Ramification of the degree-(q^n+1) cover of the s-line with defining
// function s^{q+1} - s = s (s-1)^q: a simple zero at 0, a zero of order
// q at 1, and a pole of order q + 1 at infinity.
inline std::vector<RamSpot> etaz_ramification(u64 q) {
    return {{1, 1}, {static_cast<i64>(q), 1}, {-static_cast<i64>(q + 1), 1}};
}

// Ramification of the degree-m cover of the s-line with defining function
// (s^{q^2-1} - 1)/s^{q-1}: simple zeros at the (q^2-1)-th roots of unity,
// a pole of order q - 1 at 0 and one of order q^2 - q at infinity.
inline std::vector<RamSpot> rhoz_ramification(u64 q) {
    return {{1, q * q - 1},
            {-static_cast<i64>(q - 1), 1},
            {-static_cast<i64>(q * q - q), 1}};
}

// One quotient curve of the tower: parameters (k1 | q+1, k2 | m), its
// Kummer degree k = (q^n+1)/k2, the three gcd invariants entering the
// closed genus formula, and the genus itself.
struct SpectrumEntry {
    u64 k1, k2;
    u64 k;
    u64 delta1, delta2, delta3;
    i64 genus;
    bool inPublishedList;
};

// Genus values reported in the literature for specific (q, n); the
// spectrum command flags entries whose genus appears here.
inline const std::vector<i64>* published_genus_list(u64 q, u32 n) {
    static const std::map<std::pair<u64, u32>, std::vector<i64>> lists = {
        {{4, 5}, {32, 156, 302, 1506, 1532}},
        {{4, 7}, {212, 842, 1056, 4206, 24572}},
        {{5, 5}, {6242, 12484, 18724}},
        {{7, 5}, {243, 485, 969, 1941, 4563, 9125, 18249, 36501, 50403, 100805, 201609}},
    };
    auto it = lists.find({q, n});
    return it == lists.end() ? nullptr : &it->second;
}

inline void require_divisor_pair(u64 q, u32 n, u64 k1, u64 k2) {
    require_tower_params(q, n);
    if (k1 == 0 || (q + 1) % k1 != 0) raise(errc::bad_param, "k1 must divide q+1");
    const u64 m = tower_m(q, n);
    if (k2 == 0 || m % k2 != 0) raise(errc::bad_param, "k2 must divide m");
}

// Closed-form genus of the quotient curve attached to (k1, k2):
//   g = 1 + (1/2) [ -d1 - (q+1)/k1 + (q^2-1)(q^n+1)/(k1 k2)
//                   - ((q^2-1)/k1) d2 + ((q+1)/k1) d2 - d3 ]
// with k = (q^n+1)/k2, d1 = gcd(k, (q+1)/k1), d2 = gcd(k, q+1),
// d3 = gcd(k, (q^2-1)/k1).
inline SpectrumEntry subcover_entry(u64 q, u32 n, u64 k1, u64 k2) {
    require_divisor_pair(q, n, k1, k2);
    const mpz_class qn1 = zpow(q, n) + 1;
    const mpz_class k = qn1 / mpz_class(k2);
    const u64 ku = to_u64(k, "k");
    const u64 d1 = gcd_u64(ku, (q + 1) / k1);
    const u64 d2 = gcd_u64(ku, q + 1);
    const u64 d3 = gcd_u64(ku, (q * q - 1) / k1);
    mpz_class twice = -mpz_class(d1) - mpz_class((q + 1) / k1)
                      + (mpz_class(q) * q - 1) * qn1 / (mpz_class(k1) * mpz_class(k2))
                      - mpz_class((q * q - 1) / k1) * mpz_class(d2)
                      + mpz_class((q + 1) / k1) * mpz_class(d2) - mpz_class(d3);
    if (twice % 2 != 0) raise(errc::bad_param, "genus formula gave an odd numerator");
    SpectrumEntry entry{k1, k2, ku, d1, d2, d3, to_i64(1 + twice / 2, "genus"), false};
    if (const auto* list = published_genus_list(q, n))
        entry.inPublishedList =
            std::find(list->begin(), list->end(), entry.genus) != list->end();
    return entry;
}

// Ramification layout of the quotient cover over the projective line,
// suitable for the Riemann-Hurwitz cross-check: with A = (q+1)/k1 and
// B = (q^2-1)/k1, the defining function has a zero of order A at s = 0,
// simple zeros at the A-th roots of unity, zeros of order q+1 at the
// remaining B-th roots of unity, and a pole of order qB at infinity.
inline std::vector<RamSpot> subcover_ramification(u64 q, u32 n, u64 k1, u64 k2) {
    require_divisor_pair(q, n, k1, k2);
    const u64 A = (q + 1) / k1;
    const u64 B = (q * q - 1) / k1;
    return {
        {static_cast<i64>(A), 1},
        {1, A},
        {static_cast<i64>(q + 1), B - A},
        {-static_cast<i64>(q * B), 1},
    };
}

// All quotient genera for (q, n): one entry per distinct genus, witness
// pair chosen lexicographically least in (k1, k2), sorted by genus.
inline std::vector<SpectrumEntry> spectrum(u64 q, u32 n) {
    require_tower_params(q, n);
    const u64 m = tower_m(q, n);
    std::vector<SpectrumEntry> all;
    for (u64 k1 : divisors(q + 1))
        for (u64 k2 : divisors(m)) all.push_back(subcover_entry(q, n, k1, k2));
    std::sort(all.begin(), all.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
        if (a.genus != b.genus) return a.genus < b.genus;
        if (a.k1 != b.k1) return a.k1 < b.k1;
        return a.k2 < b.k2;
    });
    std::vector<SpectrumEntry> out;
    for (const auto& e : all)
        if (out.empty() || out.back().genus != e.genus) out.push_back(e);
    return out;
}

} // namespace maxcurve::genus
