#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>
#include <vector>

#include "maxcurve/curves.hpp"
#include "maxcurve/genus.hpp"

using maxcurve::MathError;
using maxcurve::errc;
using maxcurve::i64;
using maxcurve::u32;
using maxcurve::u64;
using maxcurve::gf::FieldCtx;
using maxcurve::gf::idx_t;
using maxcurve::poly::DensePoly;
using maxcurve::poly::RationalFn;
namespace curves = maxcurve::curves;
namespace genus = maxcurve::genus;

namespace {

// c(x) = (x^{q^2} - x)/(x^{q+1} - 1) wherever defined; the tower curve is
// z^m = y * c(x) with y^{q+1} = x^{q+1} - 1.
idx_t tower_c(const FieldCtx& F, idx_t x) {
    const u64 q = F.q();
    const idx_t num = F.sub(F.pow_u(x, q * q), x);
    const idx_t den = F.sub(F.pow_u(x, q + 1), 1);
    return F.div(num, den);
}

// Brute-force count of the affine solutions of the full tower system by
// three nested scans compressed to O(Q^2): for each x the number of valid
// (y, z) pairs factors through table lookups.
u64 brute_force_xn_total(const FieldCtx& F) {
    const u64 q = F.q(), Q = F.Q(), m = F.m();
    // mth-power fiber sizes: cnt[v] = #{z : z^m = v}.
    std::vector<u32> cnt(Q, 0);
    for (u64 z = 0; z < Q; ++z) cnt[F.pow_u(static_cast<idx_t>(z), m)]++;
    u64 total = 0;
    for (u64 x = 0; x < Q; ++x) {
        const idx_t rhs = F.sub(F.pow_u(static_cast<idx_t>(x), q + 1), 1);
        if (rhs == 0) {
            total += 1; // y = 0 forces z = 0: one point per ramified x
            continue;
        }
        const idx_t c = tower_c(F, static_cast<idx_t>(x));
        for (u64 y = 0; y < Q; ++y) {
            if (F.pow_u(static_cast<idx_t>(y), q + 1) != rhs) continue;
            total += cnt[F.mul(static_cast<idx_t>(y), c)];
        }
    }
    return total + (q + 1); // one place at infinity per branch
}

const FieldCtx& ctx(u64 q, u32 n) {
    static std::map<std::pair<u64, u32>, std::unique_ptr<const FieldCtx>> cache;
    auto key = std::make_pair(q, n);
    auto it = cache.find(key);
    if (it == cache.end()) {
        u32 p = static_cast<u32>(q), e = 1;
        if (q == 4) p = 2, e = 2;
        if (q == 9) p = 3, e = 2;
        it = cache.emplace(key, FieldCtx::build(p, e, n)).first;
    }
    return *it->second;
}

} // namespace

TEST_CASE("tower curve counts hit the Hasse-Weil bound", "[curves]") {
    auto r23 = curves::count_xn(ctx(2, 3));
    CHECK(r23.family == "xn");
    CHECK(r23.Q == 64);
    CHECK(r23.sqrtQ == 8);
    CHECK(r23.genus == 10);
    CHECK(r23.hwTarget == 225);
    CHECK(r23.total == 225);
    CHECK(r23.infinitePlaces == 3);
    CHECK(r23.ramifiedPlaces == 6);
    CHECK(r23.splitPlaces == 216);
    CHECK(r23.maximal);

    auto r25 = curves::count_xn(ctx(2, 5));
    CHECK(r25.total == 3969);
    CHECK(r25.infinitePlaces == 3);
    CHECK(r25.ramifiedPlaces == 6);
    CHECK(r25.splitPlaces == 3960);
    CHECK(r25.maximal);

    auto r33 = curves::count_xn(ctx(3, 3));
    CHECK(r33.total == 6076);
    CHECK(r33.infinitePlaces == 4);
    CHECK(r33.ramifiedPlaces == 24);
    CHECK(r33.splitPlaces == 6048);
    CHECK(r33.maximal);
}

TEST_CASE("tower curve count matches a brute-force model scan", "[curves]") {
    for (auto [q, n] : {std::pair<u64, u32>{2, 3}, {3, 3}}) {
        const FieldCtx& F = ctx(q, n);
        CHECK(curves::count_xn(F).total == brute_force_xn_total(F));
    }
}

TEST_CASE("same-genus variant curve is maximal with its own breakdown", "[curves]") {
    auto r23 = curves::count_ggs(ctx(2, 3));
    CHECK(r23.family == "ggs");
    CHECK(r23.total == 225);
    CHECK(r23.infinitePlaces == 1);
    CHECK(r23.ramifiedPlaces == 8);
    CHECK(r23.splitPlaces == 216);
    CHECK(r23.maximal);

    auto r25 = curves::count_ggs(ctx(2, 5));
    CHECK(r25.total == 3969);
    CHECK(r25.ramifiedPlaces == 8);
    CHECK(r25.maximal);

    auto r33 = curves::count_ggs(ctx(3, 3));
    CHECK(r33.total == 6076);
    CHECK(r33.infinitePlaces == 1);
    CHECK(r33.ramifiedPlaces == 27);
    CHECK(r33.maximal);
}

TEST_CASE("Hermitian reference curve counts q^3 + 1 points", "[curves]") {
    for (u64 q : {2, 3, 4, 5}) {
        auto r = curves::count_hermitian(q);
        CHECK(r.family == "hermitian");
        CHECK(r.Q == q * q);
        CHECK(r.sqrtQ == q);
        CHECK(r.total == q * q * q + 1);
        CHECK(r.maximal);
        CHECK(r.infinitePlaces == q + 1);
    }
    // Direct affine double loop over x, y in F_{q^2}, using the
    // Artin-Schreier model y^q + y = x^{q+1} of the same curve (one place
    // at infinity, so affine + 1 must equal the census total).
    auto Fp = FieldCtx::build_plain(2, 1, 2);
    const FieldCtx& F = *Fp;
    u64 affine = 0;
    for (idx_t x = 0; x < F.Q(); ++x)
        for (idx_t y = 0; y < F.Q(); ++y)
            if (F.add(F.frob(y, 1), y) == F.pow_u(x, 3)) ++affine;
    CHECK(affine + 1 == curves::count_hermitian(2).total);
}

TEST_CASE("both line quotients are maximal with frozen breakdowns", "[curves]") {
    auto e23 = curves::count_etaz(ctx(2, 3));
    CHECK(e23.family == "etaz");
    CHECK(e23.total == 113);
    CHECK(e23.infinitePlaces == 3);
    CHECK(e23.ramifiedPlaces == 2);
    CHECK(e23.splitPlaces == 108);
    CHECK(e23.genus == 3);
    CHECK(e23.maximal);

    auto r23 = curves::count_rhoz(ctx(2, 3));
    CHECK(r23.family == "rhoz");
    CHECK(r23.total == 113);
    CHECK(r23.infinitePlaces == 1);
    CHECK(r23.ramifiedPlaces == 4);
    CHECK(r23.splitPlaces == 108);
    CHECK(r23.genus == 3);
    CHECK(r23.maximal);

    CHECK(curves::count_etaz(ctx(2, 5)).total == 1985);
    CHECK(curves::count_rhoz(ctx(2, 5)).total == 1985);
    CHECK(curves::count_rhoz(ctx(3, 3)).total == 2026);
    CHECK(curves::count_rhoz(ctx(3, 3)).splitPlaces == 2016);
}

TEST_CASE("quotient places split according to the affine fiber count", "[curves]") {
    // Naive model: over every x outside the divisor support, the place
    // splits into #{z : z^k = f(x)} rational points.
    const FieldCtx& F = ctx(2, 3);
    const u64 qn1 = 9; // q^n + 1 for q=2, n=3
    for (bool etaVariant : {true, false}) {
        auto rep = etaVariant ? curves::count_etaz(F) : curves::count_rhoz(F);
        auto x = DensePoly::var(F);
        // etaz: f = s(s-1)^q of degree q+1, k = q^n+1.
        // rhoz: f = (s^{q^2-1} - 1)/s^{q-1}, k = m.
        RationalFn f = etaVariant
                           ? RationalFn(x * (x - DensePoly::one(F)).pow(F.q()),
                                        DensePoly::one(F))
                           : RationalFn(DensePoly::monomial(F, F.q() * F.q() - 1, 1) -
                                            DensePoly::one(F),
                                        DensePoly::monomial(F, F.q() - 1, 1));
        const u64 k = etaVariant ? qn1 : F.m();
        auto support = curves::derive_support(F, f);
        std::set<idx_t> supportX;
        for (const auto& dat : support)
            if (!dat.atInfinity) supportX.insert(dat.place);
        u64 split = 0;
        for (idx_t s = 0; s < F.Q(); ++s) {
            if (supportX.count(s)) continue;
            const idx_t v = F.div(f.num.eval(s), f.den.eval(s));
            split += F.dth_roots(v, k).size();
        }
        INFO(rep.family);
        CHECK(split == rep.splitPlaces);
    }
}

TEST_CASE("divisor support derivation on a worked example", "[curves]") {
    const FieldCtx& F = ctx(2, 3);
    // f = T^3 - T = T (T - 1)^2 over characteristic 2.
    auto x = DensePoly::var(F);
    RationalFn f(x.pow(3) - x, DensePoly::one(F));
    auto sup = curves::derive_support(F, f);
    REQUIRE(sup.size() == 3);
    CHECK_FALSE(sup[0].atInfinity);
    CHECK(sup[0].place == 0);
    CHECK(sup[0].d == 1);
    CHECK(sup[0].unitResidue == 1);
    CHECK_FALSE(sup[1].atInfinity);
    CHECK(sup[1].place == 1);
    CHECK(sup[1].d == 2);
    CHECK(sup[1].unitResidue == 1);
    CHECK(sup[2].atInfinity);
    CHECK(sup[2].d == -3);
    CHECK(sup[2].unitResidue == 1);

    // A constant function has empty divisor support.
    RationalFn c(DensePoly::constant(F, F.generator()), DensePoly::one(F));
    CHECK(curves::derive_support(F, c).empty());
}

TEST_CASE("generic quotient counter validates its inputs", "[curves]") {
    const FieldCtx& F = ctx(2, 3);
    auto x = DensePoly::var(F);
    RationalFn f(x * (x - DensePoly::one(F)).pow(2), DensePoly::one(F));

    // k must divide Q - 1.
    CHECK_THROWS_AS(curves::count_kummer_p1(F, 5, f), MathError);

    // Declared support must match the derived one.
    std::vector<curves::RamificationDatum> wrong = {{false, 0, 2, 1}};
    try {
        curves::count_kummer_p1(F, 9, f, &wrong);
        FAIL("expected support_inconsistent");
    } catch (const MathError& e) {
        CHECK(e.code() == errc::support_inconsistent);
    }

    // With the correct declared support the count is accepted.
    auto sup = curves::derive_support(F, f);
    CHECK_NOTHROW(curves::count_kummer_p1(F, 9, f, &sup));
}

TEST_CASE("counts are independent of thread count and table strategy", "[curves]") {
    const FieldCtx& F = ctx(3, 3);
    auto one = curves::count_xn(F, 1);
    auto four = curves::count_xn(F, 4);
    CHECK(one.total == four.total);
    CHECK(one.splitPlaces == four.splitPlaces);
    CHECK(one.ramifiedPlaces == four.ramifiedPlaces);
    CHECK(one.infinitePlaces == four.infinitePlaces);

    // Same field with tables disabled: identical report.
    auto Pp = FieldCtx::build(3, 1, 3, 2);
    REQUIRE(Pp->strategy() == std::string("powmod"));
    auto pm = curves::count_xn(*Pp);
    CHECK(pm.total == one.total);
    CHECK(pm.splitPlaces == one.splitPlaces);
    CHECK(curves::count_etaz(*Pp).total == curves::count_etaz(F).total);
}

TEST_CASE("quotient by a divisor pair keeps maximality", "[curves]") {
    const FieldCtx& F = ctx(4, 5);
    auto r = curves::count_subcover(F, 5, 41, 4);
    CHECK(r.family == "subcover");
    CHECK(r.k1 == 5);
    CHECK(r.k2 == 41);
    CHECK(r.genus == 32);
    CHECK(r.total == 1114113); // 4^10 + 1 + 2*32*4^5
    CHECK(r.maximal);
    CHECK_THROWS_AS(curves::count_subcover(F, 2, 1), MathError); // 2 does not divide q+1
}

TEST_CASE("point enumeration agrees with the count report", "[curves]") {
    const FieldCtx& F = ctx(2, 3);
    auto pts = curves::enumerate_xn_points(F);
    auto rep = curves::count_xn(F);
    CHECK(pts.size() == rep.total - rep.infinitePlaces);
    CHECK(pts.size() == 222);
    // Every enumerated point satisfies both defining equations (checked via
    // the membership conditions the enumerator is supposed to guarantee).
    const u64 q = F.q(), m = F.m();
    for (const auto& P : pts) {
        const idx_t rhs = F.sub(F.pow_u(P.x, q + 1), 1);
        CHECK(F.pow_u(P.y, q + 1) == rhs);
        if (rhs == 0) {
            CHECK(P.y == 0);
            CHECK(P.z == 0);
        } else {
            CHECK(F.pow_u(P.z, m) == F.mul(P.y, tower_c(F, P.x)));
        }
    }
    // u = y (x^{q^2} - x)/(x^{q+1} - 1) is undefined on the ramified fiber.
    CHECK_THROWS_AS(curves::eval_u(F, 1, 0), MathError);
    for (const auto& P : pts)
        if (F.pow_u(P.x, q + 1) != 1)
            CHECK(F.pow_u(P.z, m) == curves::eval_u(F, P.x, P.y));
}

TEST_CASE("birational maps to the twisted models check out", "[curves]") {
    auto phi2 = curves::verify_phi(2);
    CHECK(phi2.pass);
    CHECK(phi2.checked == 4186);
    CHECK(phi2.skipped == 6);

    auto phi3 = curves::verify_phi(3);
    CHECK(phi3.pass);
    CHECK(phi3.checked == 6071);
    CHECK(phi3.skipped == 4);

    auto psi3 = curves::verify_psi(3);
    CHECK(psi3.pass);
    CHECK(psi3.checked == 504);

    CHECK_THROWS_AS(curves::verify_psi(4), MathError); // tower exponent must be odd
}
