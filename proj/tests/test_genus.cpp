#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include "maxcurve/genus.hpp"

using maxcurve::MathError;
using maxcurve::errc;
using maxcurve::i64;
using maxcurve::u32;
using maxcurve::u64;
namespace genus = maxcurve::genus;

TEST_CASE("closed-form genera match frozen values", "[genus]") {
    CHECK(genus::genus_xn(2, 3) == 10);
    CHECK(genus::genus_xn(2, 5) == 46);
    CHECK(genus::genus_xn(2, 7) == 190);
    CHECK(genus::genus_xn(3, 3) == 99);
    CHECK(genus::genus_xn(3, 5) == 963);
    CHECK(genus::genus_xn(4, 3) == 456);
    CHECK(genus::genus_xn(4, 5) == 7656);
    CHECK(genus::genus_xn(5, 3) == 1450);

    CHECK(genus::genus_hermitian(2) == 1);
    CHECK(genus::genus_hermitian(3) == 3);
    CHECK(genus::genus_hermitian(4) == 6);
    CHECK(genus::genus_hermitian(5) == 10);

    CHECK(genus::tower_m(2, 3) == 3);
    CHECK(genus::tower_m(2, 5) == 11);
    CHECK(genus::tower_m(3, 3) == 7);
    CHECK(genus::tower_m(4, 5) == 205);

    CHECK(genus::genus_etaz(2, 3) == 3);
    CHECK(genus::genus_etaz(2, 5) == 15);
    CHECK(genus::genus_etaz(3, 3) == 12);
    CHECK(genus::genus_etaz(3, 5) == 120);
    CHECK(genus::genus_etaz(4, 5) == 510);

    CHECK(genus::genus_rhoz(2, 3) == 3);
    CHECK(genus::genus_rhoz(2, 5) == 15);
    CHECK(genus::genus_rhoz(3, 3) == 24);
    CHECK(genus::genus_rhoz(3, 5) == 240);
    CHECK(genus::genus_rhoz(4, 5) == 1530);
}

TEST_CASE("parameter validation for tower shapes", "[genus]") {
    CHECK_THROWS_AS(genus::genus_xn(2, 4), MathError); // n must be odd
    CHECK_THROWS_AS(genus::genus_xn(2, 1), MathError); // n must be >= 3
    CHECK_THROWS_AS(genus::genus_xn(1, 3), MathError); // q must be >= 2
    CHECK_NOTHROW(genus::genus_xn(8, 3));              // prime powers q = p^e work
    CHECK_NOTHROW(genus::genus_xn(9, 3));
    CHECK_NOTHROW(genus::genus_xn(25, 3));
}

TEST_CASE("Riemann-Hurwitz over the Hermitian curve reproduces the tower genus",
          "[genus]") {
    for (u64 q : {2, 3, 4, 5, 7, 8, 9}) {
        for (u32 n : {3, 5, 7}) {
            const u64 m = genus::tower_m(q, n);
            const i64 viaRH = genus::genus_rh_kummer(genus::genus_hermitian(q), m,
                                                     genus::xn_ramification(q), 0);
            CHECK(viaRH == genus::genus_xn(q, n));
        }
    }
}

TEST_CASE("Riemann-Hurwitz over the line reproduces both quotient genera", "[genus]") {
    for (u64 q : {2, 3, 4, 5, 7}) {
        for (u32 n : {3, 5, 7}) {
            const u64 k = maxcurve::ipow(q, n) + 1;
            CHECK(genus::genus_rh_kummer(0, k, genus::etaz_ramification(q), 0) ==
                  genus::genus_etaz(q, n));
            const u64 m = genus::tower_m(q, n);
            CHECK(genus::genus_rh_kummer(0, m, genus::rhoz_ramification(q), 0) ==
                  genus::genus_rhoz(q, n));
        }
    }
}

TEST_CASE("genus_rh_kummer rejects inconsistent data", "[genus]") {
    auto code = [](auto&& fn) {
        try {
            fn();
        } catch (const MathError& e) {
            return e.code();
        }
        return errc::ctx_mismatch; // marker for "did not throw"
    };
    CHECK(code([] { genus::genus_rh_kummer(0, 0, {}, 0); }) == errc::bad_param);
    CHECK(code([] { genus::genus_rh_kummer(0, 4, {{1, 1}}, 2); }) ==
          errc::wild_ramification);
    // k - gcd(k, d) summed over the support must be even; k=2 over a single
    // simple zero gives contribution 1.
    CHECK(code([] { genus::genus_rh_kummer(0, 2, {{1, 1}}, 0); }) == errc::bad_param);
    // Unramified cover of the line: g = 1 - k + 0, negative for k > 1.
    CHECK(genus::genus_rh_kummer(1, 5, {}, 0) == 1);
}

TEST_CASE("Hasse-Weil totals", "[genus]") {
    CHECK(genus::hasse_weil_total(64, 10, 8) == 225);
    CHECK(genus::hasse_weil_total(1024, 46, 32) == 3969);
    CHECK(genus::hasse_weil_total(729, 99, 27) == 6076);
    CHECK(genus::hasse_weil_total(4, 1, 2) == 9); // Hermitian over F_4
}

TEST_CASE("trivial quotient pair gives back the full tower curve", "[genus]") {
    for (u64 q : {2, 3, 4, 5}) {
        for (u32 n : {3, 5}) {
            auto e = genus::subcover_entry(q, n, 1, 1);
            CHECK(e.genus == genus::genus_xn(q, n));
            CHECK(e.k == maxcurve::ipow(q, n) + 1);
        }
    }
}

TEST_CASE("quotient entries agree with Riemann-Hurwitz over the line", "[genus]") {
    for (u64 q : {2, 3, 4, 5}) {
        for (u32 n : {3, 5}) {
            const u64 m = genus::tower_m(q, n);
            for (u64 k1 : maxcurve::divisors(q + 1)) {
                for (u64 k2 : maxcurve::divisors(m)) {
                    auto e = genus::subcover_entry(q, n, k1, k2);
                    auto ram = genus::subcover_ramification(q, n, k1, k2);
                    CHECK(e.genus == genus::genus_rh_kummer(0, e.k, ram, 0));
                }
            }
        }
    }
}

TEST_CASE("divisor-pair validation", "[genus]") {
    CHECK_NOTHROW(genus::require_divisor_pair(4, 5, 5, 41));
    CHECK_THROWS_AS(genus::require_divisor_pair(4, 5, 2, 1), MathError);  // 2 does not divide 5
    CHECK_THROWS_AS(genus::require_divisor_pair(4, 5, 1, 3), MathError);  // 3 does not divide 205
    CHECK_THROWS_AS(genus::require_divisor_pair(4, 5, 0, 1), MathError);
    CHECK_THROWS_AS(genus::require_divisor_pair(4, 5, 1, 0), MathError);
}

TEST_CASE("genus spectrum matches the published lists", "[genus]") {
    struct Fixture {
        u64 q;
        u32 n;
        std::vector<i64> published;
    };
    const std::vector<Fixture> fixtures = {
        {4, 5, {32, 156, 302, 1506, 1532}},
        {4, 7, {212, 842, 1056, 4206, 24572}},
        {5, 5, {6242, 12484, 18724}},
        {7, 5, {243, 485, 969, 1941, 4563, 9125, 18249, 36501, 50403, 100805, 201609}},
    };
    for (const auto& fx : fixtures) {
        auto spec = genus::spectrum(fx.q, fx.n);
        std::set<i64> got;
        for (const auto& e : spec) got.insert(e.genus);
        CHECK(got.size() == spec.size()); // one entry per distinct genus
        for (i64 g : fx.published) {
            INFO("q=" << fx.q << " n=" << fx.n << " genus=" << g);
            CHECK(got.count(g) == 1);
        }
        // The flag marks exactly the published genera.
        for (const auto& e : spec) {
            const bool expect =
                std::find(fx.published.begin(), fx.published.end(), e.genus) !=
                fx.published.end();
            CHECK(e.inPublishedList == expect);
        }
        CHECK(std::is_sorted(spec.begin(), spec.end(),
                             [](const auto& a, const auto& b) { return a.genus < b.genus; }));
    }

    auto spec45 = genus::spectrum(4, 5);
    REQUIRE(spec45.size() == 8);
    CHECK(spec45.front().genus == 2);
    CHECK(spec45.back().genus == genus::genus_xn(4, 5));
    // Parameters without a published list leave every flag unset.
    for (const auto& e : genus::spectrum(2, 3)) CHECK_FALSE(e.inPublishedList);
}
