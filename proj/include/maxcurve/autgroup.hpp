#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "maxcurve/curves.hpp"
#include "maxcurve/gf.hpp"

// The symmetry groups of the tower curves: the line-stabilizer matrix
// groups over F_{q^2}, their lifts twisting the z-coordinate by roots of
// unity, and executable checks that they act on the curve, on the model
// function u, and on the q+1 directions at infinity as claimed.

namespace maxcurve::autgroup {

using curves::AffinePoint;
using gf::FieldCtx;
using gf::idx_t;

// One symmetry: (x, y, z) -> (a x + b y, c x + d y, xi z) with the matrix
// entries in F_{q^2} and xi^(q^n+1) = 1; zeta = xi^m is the factor the
// model function u picks up.
struct GroupElement {
    idx_t a, b, c, d;
    idx_t xi;
    idx_t zeta;

    friend bool operator==(const GroupElement& g, const GroupElement& h) {
        return g.a == h.a && g.b == h.b && g.c == h.c && g.d == h.d && g.xi == h.xi;
    }
    friend bool operator<(const GroupElement& g, const GroupElement& h) {
        auto key = [](const GroupElement& e) {
            return std::array<idx_t, 5>{e.a, e.b, e.c, e.d, e.xi};
        };
        return key(g) < key(h);
    }
};

namespace detail {

inline idx_t norm(const FieldCtx& F, idx_t a) { return F.pow_u(a, F.q() + 1); }
inline idx_t conj(const FieldCtx& F, idx_t a) { return F.frob(a, 1); }

} // namespace detail

// All (a, c^q; c, a^q) with a^(q+1) - c^(q+1) = 1: the determinant-one
// slice, isomorphic to SL(2,q).  Deterministic (a, c ascending) order.
inline std::vector<GroupElement> enumerate_sl(const FieldCtx& F) {
    const idx_t one = 1;
    std::vector<GroupElement> out;
    const auto sub2 = F.subfield(2);
    for (idx_t a : sub2)
        for (idx_t c : sub2) {
            if (F.sub(detail::norm(F, a), detail::norm(F, c)) != one) continue;
            out.push_back({a, detail::conj(F, c), c, detail::conj(F, a), 1, 1});
        }
    return out;
}

// The full line stabilizer in normal form: (a, zeta c^q; c, zeta a^q) with
// a^(q+1) - c^(q+1) = 1 and zeta^(q+1) = 1.
inline std::vector<GroupElement> enumerate_ml_normal_form(const FieldCtx& F) {
    const idx_t one = 1;
    std::vector<GroupElement> out;
    const auto sub2 = F.subfield(2);
    const auto zetas = F.roots_of_unity(F.q() + 1);
    for (idx_t a : sub2)
        for (idx_t c : sub2) {
            if (F.sub(detail::norm(F, a), detail::norm(F, c)) != one) continue;
            const idx_t cq = detail::conj(F, c);
            const idx_t aq = detail::conj(F, a);
            for (idx_t z : zetas)
                out.push_back({a, F.mul(z, cq), c, F.mul(z, aq), 1, z});
        }
    return out;
}

// The same group from its original description: all (a,b,c,d) with
// d^(q+1) - b^(q+1) = 1, a^(q+1) - c^(q+1) = 1 and a^q b = c^q d.
// Enumerates the two norm-condition pair lists and filters their product;
// zeta is recovered as the determinant.
inline std::vector<GroupElement> enumerate_ml_direct(const FieldCtx& F) {
    const idx_t one = 1;
    const auto sub2 = F.subfield(2);
    std::vector<std::pair<idx_t, idx_t>> ac, bd;
    for (idx_t u : sub2)
        for (idx_t v : sub2) {
            if (F.sub(detail::norm(F, u), detail::norm(F, v)) == one) {
                ac.push_back({u, v}); // (a, c): a^(q+1) - c^(q+1) = 1
                bd.push_back({v, u}); // (b, d): d^(q+1) - b^(q+1) = 1
            }
        }
    std::vector<GroupElement> out;
    for (auto [a, c] : ac) {
        const idx_t aq = detail::conj(F, a);
        const idx_t cq = detail::conj(F, c);
        for (auto [b, d] : bd) {
            if (F.mul(aq, b) != F.mul(cq, d)) continue;
            const idx_t det = F.sub(F.mul(a, d), F.mul(b, c));
            out.push_back({a, b, c, d, 1, det});
        }
    }
    return out;
}

// The lifted group: every line-stabilizer matrix combined with every
// z-twist xi such that xi^m equals the matrix's zeta.  Parameterized by
// (xi, a, c): zeta := xi^m ranges over all (q+1)-th roots of unity m
// times as xi runs over the (q^n+1)-th roots.
inline std::vector<GroupElement> enumerate_g(const FieldCtx& F) {
    if (!F.is_tower()) raise(errc::bad_param, "lifts require a tower field context");
    const idx_t one = 1;
    std::vector<GroupElement> out;
    const auto sub2 = F.subfield(2);
    const u64 kOrder = ipow(F.q(), F.n()) + 1;
    for (idx_t xi : F.roots_of_unity(kOrder)) {
        const idx_t z = F.pow_u(xi, F.m());
        for (idx_t a : sub2)
            for (idx_t c : sub2) {
                if (F.sub(detail::norm(F, a), detail::norm(F, c)) != one) continue;
                out.push_back({a, F.mul(z, detail::conj(F, c)), c,
                               F.mul(z, detail::conj(F, a)), xi, z});
            }
    }
    return out;
}

inline u64 expected_sl_order(u64 q) { return q * q * q - q; }
inline u64 expected_ml_order(u64 q) { return q * (q - 1) * (q + 1) * (q + 1); }
inline u64 expected_lift_count(u64 q, u32 n) {
    return (q * q * q - q) * (ipow(q, n) + 1);
}

// ---- the action --------------------------------------------------------------

inline AffinePoint act(const FieldCtx& F, const GroupElement& g, const AffinePoint& P) {
    return {F.add(F.mul(g.a, P.x), F.mul(g.b, P.y)),
            F.add(F.mul(g.c, P.x), F.mul(g.d, P.y)), F.mul(g.xi, P.z)};
}

// Near-miss variant of the action with the second coordinate read as
// (c+d)y.  Deliberately wrong: verify_action demonstrates that the
// membership test has the power to reject a mistranscribed formula.
inline AffinePoint act_literal_variant(const FieldCtx& F, const GroupElement& g,
                                       const AffinePoint& P) {
    return {F.add(F.mul(g.a, P.x), F.mul(g.b, P.y)),
            F.add(F.mul(g.c, P.y), F.mul(g.d, P.y)), F.mul(g.xi, P.z)};
}

// Strict affine membership test: over x with x^(q+1) = 1 the only point
// is (x, 0, 0); elsewhere both defining equations must hold.
inline bool on_xn(const FieldCtx& F, const AffinePoint& P) {
    const u64 q = F.q();
    const idx_t c = F.sub(F.pow_u(P.x, q + 1), 1);
    if (c == 0) return P.y == 0 && P.z == 0;
    if (F.pow_u(P.y, q + 1) != c) return false;
    return F.mul(F.pow_u(P.z, F.m()), c) == F.mul(P.y, F.sub(F.frob(P.x, 2), P.x));
}

inline GroupElement identity_element() { return {1, 0, 0, 1, 1, 1}; }

inline GroupElement compose(const FieldCtx& F, const GroupElement& g,
                            const GroupElement& h) {
    GroupElement r;
    r.a = F.add(F.mul(g.a, h.a), F.mul(g.b, h.c));
    r.b = F.add(F.mul(g.a, h.b), F.mul(g.b, h.d));
    r.c = F.add(F.mul(g.c, h.a), F.mul(g.d, h.c));
    r.d = F.add(F.mul(g.c, h.b), F.mul(g.d, h.d));
    r.xi = F.mul(g.xi, h.xi);
    r.zeta = F.mul(g.zeta, h.zeta);
    return r;
}

// A small generating set: the q-1 unipotents (alpha+1, alpha; -alpha,
// 1-alpha) for trace-zero alpha != 0, a norm-one torus generator
// diag(a, a^q), the antidiagonal element with c^(q+1) = -1, and the
// identity matrix twisted by a primitive (q^n+1)-th root of unity.
inline std::vector<GroupElement> generators(const FieldCtx& F) {
    if (!F.is_tower()) raise(errc::bad_param, "lifts require a tower field context");
    const u64 q = F.q();
    std::vector<GroupElement> gens;
    for (idx_t al : F.subfield(2)) {
        if (al == 0 || F.add(F.frob(al, 1), al) != 0) continue;
        gens.push_back({F.add(al, 1), al, F.neg(al), F.sub(1, al), 1, 1});
    }
    const auto zetas = F.roots_of_unity(q + 1);
    if (zetas.size() > 1) {
        const idx_t a = zetas[1]; // generator of the norm-one circle
        gens.push_back({a, 0, 0, detail::conj(F, a), 1, 1});
    }
    const idx_t cw = F.dth_roots(F.neg(1), q + 1).at(0);
    gens.push_back({0, detail::conj(F, cw), cw, 0, 1, 1});
    const u64 kOrder = ipow(q, F.n()) + 1;
    const idx_t xi0 = F.roots_of_unity(kOrder).at(1);
    gens.push_back({1, 0, 0, F.pow_u(xi0, F.m()), xi0, F.pow_u(xi0, F.m())});
    return gens;
}

// ---- verification reports -----------------------------------------------------

struct OrderReport {
    u64 slSize = 0, mlSize = 0;
    u64 slExpected = 0, mlExpected = 0;
    bool normalFormAgrees = false; // direct enumeration == normal form, as sets
    bool slIsDetOneSlice = false;  // S_l == { g in M_l : zeta = 1 }
    bool detEqualsZeta = false;    // det g == zeta for every g in M_l
    bool pass = false;
};

inline OrderReport verify_orders(const FieldCtx& F) {
    OrderReport r;
    const u64 q = F.q();
    auto sl = enumerate_sl(F);
    auto mlA = enumerate_ml_direct(F);
    auto mlB = enumerate_ml_normal_form(F);
    r.slSize = sl.size();
    r.mlSize = mlB.size();
    r.slExpected = expected_sl_order(q);
    r.mlExpected = expected_ml_order(q);
    std::sort(mlA.begin(), mlA.end());
    std::sort(mlB.begin(), mlB.end());
    r.normalFormAgrees = mlA == mlB;
    r.detEqualsZeta = true;
    for (const auto& g : mlB) {
        const idx_t det = F.sub(F.mul(g.a, g.d), F.mul(g.b, g.c));
        if (det != g.zeta) {
            r.detEqualsZeta = false;
            break;
        }
    }
    std::vector<GroupElement> zeta1;
    for (const auto& g : mlB)
        if (g.zeta == 1) zeta1.push_back(g);
    std::sort(sl.begin(), sl.end());
    r.slIsDetOneSlice = sl == zeta1;
    r.pass = r.slSize == r.slExpected && r.mlSize == r.mlExpected &&
             r.normalFormAgrees && r.slIsDetOneSlice && r.detEqualsZeta;
    return r;
}

struct ActionReport {
    u64 points = 0;
    u64 generatorCount = 0;
    bool identityFixesAll = false;
    bool generatorsPreserve = false;
    bool literalVariantFails = false; // the (c+d)y near-miss breaks the curve
    u64 utwistChecked = 0;
    bool utwistHolds = false;
    bool pass = false;
    std::string detail;
};

// Exhaustive action check: every generator maps every affine rational
// point onto the curve; u transforms by zeta where defined; the (c+d)y
// near-miss variant of the action must fail for at least one (g, P).
inline ActionReport verify_action(const FieldCtx& F, unsigned threads = 1) {
    (void)threads;
    ActionReport r;
    const auto pts = curves::enumerate_xn_points(F);
    const auto gens = generators(F);
    r.points = pts.size();
    r.generatorCount = gens.size();

    r.identityFixesAll = true;
    const auto id = identity_element();
    for (const auto& P : pts) {
        const auto Q = act(F, id, P);
        if (Q.x != P.x || Q.y != P.y || Q.z != P.z) {
            r.identityFixesAll = false;
            break;
        }
    }

    r.generatorsPreserve = true;
    for (const auto& g : gens) {
        for (const auto& P : pts) {
            if (!on_xn(F, act(F, g, P))) {
                r.generatorsPreserve = false;
                r.detail = "generator image off the curve";
                break;
            }
        }
        if (!r.generatorsPreserve) break;
    }

    // u-twist: u(g P) = zeta_g u(P) wherever both are defined.
    const u64 q = F.q();
    r.utwistHolds = true;
    for (const auto& g : gens) {
        for (const auto& P : pts) {
            if (F.sub(F.pow_u(P.x, q + 1), 1) == 0) continue;
            const auto Q = act(F, g, P);
            if (F.sub(F.pow_u(Q.x, q + 1), 1) == 0) continue;
            const idx_t u0 = curves::eval_u(F, P.x, P.y);
            const idx_t u1 = curves::eval_u(F, Q.x, Q.y);
            if (u1 != F.mul(g.zeta, u0)) {
                r.utwistHolds = false;
                r.detail = "u-twist mismatch";
                break;
            }
            ++r.utwistChecked;
        }
        if (!r.utwistHolds) break;
    }

    // The near-miss action must break on some element and point.
    r.literalVariantFails = false;
    for (const auto& g : gens) {
        if (r.literalVariantFails) break;
        for (const auto& P : pts)
            if (!on_xn(F, act_literal_variant(F, g, P))) {
                r.literalVariantFails = true;
                break;
            }
    }

    r.pass = r.identityFixesAll && r.generatorsPreserve && r.utwistHolds &&
             r.literalVariantFails;
    if (r.pass) r.detail.clear();
    return r;
}

struct ClosureReport {
    u64 size = 0;
    u64 expected = 0;
    bool closedUnderComposition = false;
    bool normalFormInvariant = false; // every element satisfies b = zeta c^q etc.
    bool matchesEnumeration = false;  // <generators> == enumerate_g, as sets
    bool pass = false;
};

// Breadth-first closure of the generator set under composition; verifies
// the subgroup generated is exactly the enumerated lift group.
inline ClosureReport verify_closure(const FieldCtx& F) {
    ClosureReport r;
    const u64 q = F.q();
    r.expected = expected_lift_count(q, F.n());

    const auto gens = generators(F);
    std::vector<GroupElement> all;
    std::vector<GroupElement> frontier{identity_element()};
    std::unordered_set<u64> seen;

    const auto sub2 = F.subfield(2);
    const u64 kOrder = ipow(q, F.n()) + 1;
    const auto xis = F.roots_of_unity(kOrder);
    auto sortedXis = xis;
    std::sort(sortedXis.begin(), sortedXis.end());
    const u64 S = sub2.size();
    auto ordinal = [&](idx_t v, const std::vector<idx_t>& sorted) -> u64 {
        const auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
        if (it == sorted.end() || *it != v) raise(errc::bad_param, "element outside table");
        return static_cast<u64>(it - sorted.begin());
    };
    auto key = [&](const GroupElement& g) {
        u64 k = ordinal(g.a, sub2);
        k = k * S + ordinal(g.b, sub2);
        k = k * S + ordinal(g.c, sub2);
        k = k * S + ordinal(g.d, sub2);
        return k * kOrder + ordinal(g.xi, sortedXis);
    };

    seen.insert(key(identity_element()));
    all.push_back(identity_element());
    while (!frontier.empty()) {
        std::vector<GroupElement> next;
        for (const auto& g : frontier)
            for (const auto& h : gens) {
                const auto gh = compose(F, g, h);
                if (seen.insert(key(gh)).second) {
                    next.push_back(gh);
                    all.push_back(gh);
                }
            }
        frontier = std::move(next);
    }
    r.size = all.size();

    r.normalFormInvariant = true;
    for (const auto& g : all) {
        const idx_t z = F.pow_u(g.xi, F.m());
        if (g.zeta != z || g.b != F.mul(z, detail::conj(F, g.c)) ||
            g.d != F.mul(z, detail::conj(F, g.a))) {
            r.normalFormInvariant = false;
            break;
        }
    }

    // Closure under composition: checked structurally — all products of a
    // closed BFS set with the generators are in the set; verify a sample
    // of arbitrary pairwise products as well.
    r.closedUnderComposition = true;
    const u64 step = all.size() < 64 ? 1 : all.size() / 64;
    for (u64 i = 0; i < all.size(); i += step)
        for (u64 j = 0; j < all.size(); j += step)
            if (!seen.count(key(compose(F, all[i], all[j])))) {
                r.closedUnderComposition = false;
                break;
            }

    auto listed = enumerate_g(F);
    std::sort(listed.begin(), listed.end());
    std::sort(all.begin(), all.end());
    r.matchesEnumeration = listed == all;

    r.pass = r.size == r.expected && r.normalFormInvariant &&
             r.closedUnderComposition && r.matchesEnumeration;
    return r;
}

struct OrbitReport {
    u64 directions = 0;
    bool wellDefined = false;       // images satisfy the norm condition
    bool eachElementPermutes = false;
    bool transitive = false;
    bool sharpSubgroup = false;     // diag(1, zeta) slice is sharply transitive
    u64 distinctPermutations = 0;
    bool pass = false;
};

// Action on the q+1 infinite directions beta with beta^(q+1) = 1:
// beta -> (c + d beta)/(a + b beta).
inline OrbitReport verify_orbit_infinity(const FieldCtx& F) {
    OrbitReport r;
    const u64 q = F.q();
    const auto betas = F.roots_of_unity(q + 1);
    auto sorted = betas;
    std::sort(sorted.begin(), sorted.end());
    r.directions = betas.size();

    const auto ml = enumerate_ml_normal_form(F);
    r.wellDefined = true;
    r.eachElementPermutes = true;
    std::set<std::vector<u64>> perms;
    std::vector<bool> reached(betas.size(), false);
    auto indexOf = [&](idx_t b) -> u64 {
        const auto it = std::lower_bound(sorted.begin(), sorted.end(), b);
        return (it != sorted.end() && *it == b) ? static_cast<u64>(it - sorted.begin())
                                                : static_cast<u64>(-1);
    };
    for (const auto& g : ml) {
        std::vector<u64> img;
        std::vector<bool> hit(betas.size(), false);
        for (idx_t b : sorted) {
            const idx_t den = F.add(g.a, F.mul(g.b, b));
            if (den == 0) {
                r.wellDefined = false;
                break;
            }
            const idx_t nb = F.div(F.add(g.c, F.mul(g.d, b)), den);
            const u64 at = indexOf(nb);
            if (at == static_cast<u64>(-1)) {
                r.wellDefined = false;
                break;
            }
            if (hit[at]) r.eachElementPermutes = false;
            hit[at] = true;
            img.push_back(at);
            if (sorted[0] == b) reached[at] = true;
        }
        if (!r.wellDefined) break;
        perms.insert(img);
    }
    r.distinctPermutations = perms.size();
    r.transitive =
        r.wellDefined && std::all_of(reached.begin(), reached.end(), [](bool v) { return v; });

    // diag(1, zeta) elements: beta -> zeta beta; sharply transitive means
    // each ordered pair of directions is connected by exactly one of them.
    if (r.wellDefined) {
        r.sharpSubgroup = true;
        for (idx_t b1 : sorted)
            for (idx_t b2 : sorted) {
                u64 count = 0;
                for (idx_t z : betas)
                    if (F.mul(z, b1) == b2) ++count;
                if (count != 1) {
                    r.sharpSubgroup = false;
                    break;
                }
            }
    }

    r.pass = r.wellDefined && r.eachElementPermutes && r.transitive && r.sharpSubgroup;
    return r;
}

} // namespace maxcurve::autgroup
