#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <memory>
#include <set>
#include <vector>

#include "maxcurve/autgroup.hpp"
#include "maxcurve/curves.hpp"

using maxcurve::MathError;
using maxcurve::u32;
using maxcurve::u64;
using maxcurve::gf::FieldCtx;
using maxcurve::gf::idx_t;
namespace aut = maxcurve::autgroup;
namespace curves = maxcurve::curves;

namespace {

const FieldCtx& ctx(u64 q, u32 n) {
    static std::map<std::pair<u64, u32>, std::unique_ptr<const FieldCtx>> cache;
    auto key = std::make_pair(q, n);
    auto it = cache.find(key);
    if (it == cache.end()) {
        u32 p = static_cast<u32>(q), e = 1;
        if (q == 4) p = 2, e = 2;
        it = cache.emplace(key, FieldCtx::build(p, e, n)).first;
    }
    return *it->second;
}

} // namespace

TEST_CASE("matrix group orders match the closed forms", "[autgroup]") {
    struct Expect {
        u64 q;
        u64 sl, ml;
    };
    for (auto [q, sl, ml] : {Expect{2, 6, 18}, {3, 24, 96}, {4, 60, 300}, {5, 120, 720}}) {
        const FieldCtx& F = ctx(q, 3);
        CHECK(aut::expected_sl_order(q) == sl);
        CHECK(aut::expected_ml_order(q) == ml);
        auto r = aut::verify_orders(F);
        INFO("q = " << q);
        CHECK(r.slSize == sl);
        CHECK(r.mlSize == ml);
        CHECK(r.normalFormAgrees);
        CHECK(r.slIsDetOneSlice);
        CHECK(r.detEqualsZeta);
        CHECK(r.pass);
    }
}

TEST_CASE("lift group sizes match q(q^2-1)(q^n+1)", "[autgroup]") {
    CHECK(aut::expected_lift_count(2, 3) == 54);
    CHECK(aut::expected_lift_count(2, 5) == 198);
    CHECK(aut::expected_lift_count(3, 3) == 672);
    CHECK(aut::expected_lift_count(3, 5) == 5856);
    CHECK(aut::enumerate_g(ctx(2, 3)).size() == 54);
    CHECK(aut::enumerate_g(ctx(3, 3)).size() == 672);
}

TEST_CASE("group law sanity on the enumerated lift group", "[autgroup]") {
    const FieldCtx& F = ctx(2, 3);
    auto G = aut::enumerate_g(F);
    REQUIRE(G.size() == 54);
    const auto id = aut::identity_element();

    std::set<aut::GroupElement> all(G.begin(), G.end());
    CHECK(all.size() == G.size()); // no duplicates
    CHECK(all.count(id) == 1);

    // Identity laws and closure; composition against a fixed sample to
    // keep this quadratic check small.
    for (const auto& g : G) {
        CHECK(aut::compose(F, g, id) == g);
        CHECK(aut::compose(F, id, g) == g);
        bool hasInverse = false;
        for (const auto& h : G)
            if (aut::compose(F, g, h) == id) {
                hasInverse = true;
                break;
            }
        CHECK(hasInverse);
    }
    for (size_t i = 0; i < G.size(); i += 7)
        for (size_t j = 0; j < G.size(); j += 5)
            CHECK(all.count(aut::compose(F, G[i], G[j])) == 1);

    // Associativity on a coarse triple sample.
    for (size_t i = 0; i < G.size(); i += 11)
        for (size_t j = 0; j < G.size(); j += 13)
            for (size_t k = 0; k < G.size(); k += 17)
                CHECK(aut::compose(F, aut::compose(F, G[i], G[j]), G[k]) ==
                      aut::compose(F, G[i], aut::compose(F, G[j], G[k])));
}

TEST_CASE("the action maps curve points to curve points", "[autgroup]") {
    const FieldCtx& F = ctx(2, 3);
    auto G = aut::enumerate_g(F);
    auto pts = curves::enumerate_xn_points(F);
    REQUIRE(pts.size() == 222);

    // Full group x sampled points: every image stays on the curve, and the
    // action by composition is compatible with act-then-act.
    for (const auto& g : G) {
        for (size_t pi = 0; pi < pts.size(); pi += 23) {
            auto img = aut::act(F, g, pts[pi]);
            CHECK(aut::on_xn(F, img));
            for (size_t hj = 0; hj < G.size(); hj += 19) {
                const auto& h = G[hj];
                auto lhs = aut::act(F, aut::compose(F, g, h), pts[pi]);
                auto rhs = aut::act(F, g, aut::act(F, h, pts[pi]));
                CHECK(lhs.x == rhs.x);
                CHECK(lhs.y == rhs.y);
                CHECK(lhs.z == rhs.z);
            }
        }
    }
}

TEST_CASE("exhaustive action verification passes where frozen", "[autgroup]") {
    auto r23 = aut::verify_action(ctx(2, 3));
    CHECK(r23.pass);
    CHECK(r23.points == 222);
    CHECK(r23.identityFixesAll);
    CHECK(r23.generatorsPreserve);
    CHECK(r23.literalVariantFails);
    CHECK(r23.utwistHolds);
    CHECK(r23.utwistChecked == 870);

    auto r33 = aut::verify_action(ctx(3, 3), 2);
    CHECK(r33.pass);
    CHECK(r33.utwistChecked == 30328);
}

TEST_CASE("generator closure reproduces the full lift group", "[autgroup]") {
    auto r = aut::verify_closure(ctx(2, 3));
    CHECK(r.size == 54);
    CHECK(r.expected == 54);
    CHECK(r.closedUnderComposition);
    CHECK(r.normalFormInvariant);
    CHECK(r.matchesEnumeration);
    CHECK(r.pass);

    auto r33 = aut::verify_closure(ctx(3, 3));
    CHECK(r33.size == 672);
    CHECK(r33.pass);
}

TEST_CASE("orbit on the infinite directions is sharply transitive", "[autgroup]") {
    auto r23 = aut::verify_orbit_infinity(ctx(2, 3));
    CHECK(r23.directions == 3);
    CHECK(r23.wellDefined);
    CHECK(r23.eachElementPermutes);
    CHECK(r23.transitive);
    CHECK(r23.sharpSubgroup);
    CHECK(r23.distinctPermutations == 6);
    CHECK(r23.pass);

    auto r33 = aut::verify_orbit_infinity(ctx(3, 3));
    CHECK(r33.directions == 4);
    CHECK(r33.distinctPermutations == 24);
    CHECK(r33.pass);
}

TEST_CASE("lift construction requires a tower context", "[autgroup]") {
    auto Fp = FieldCtx::build_plain(2, 1, 2);
    CHECK_THROWS_AS(aut::enumerate_g(*Fp), MathError);
    CHECK_NOTHROW(aut::enumerate_sl(*Fp)); // matrix part only needs F_{q^2}
}
