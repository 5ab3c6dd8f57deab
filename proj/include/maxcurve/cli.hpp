#pragma once

#include <chrono>
#include <cstdlib>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "maxcurve/autgroup.hpp"
#include "maxcurve/curves.hpp"
#include "maxcurve/genus.hpp"
#include "maxcurve/gf.hpp"
#include "maxcurve/identities.hpp"

// Command-line front end.  Every subcommand emits one JSON document on
// standard output with the shape
//     {command, params, items: [{name, expected, actual, pass, ms}], pass}
// and returns 0 when every item passed, 1 when a mathematical check
// failed, and 2 on usage or resource errors (diagnostics go to stderr).
// `spectrum --format csv` emits a CSV table instead.  Everything except
// the per-item ms timings is deterministic for fixed parameters,
// regardless of --threads.

namespace maxcurve::cli {

using gf::FieldCtx;
using nlohmann::ordered_json;

struct CliResult {
    int exitCode = 0;
    std::string out;  // stdout payload (JSON or CSV)
    std::string err;  // stderr diagnostics
};

namespace detail {

// Fields larger than this need --force; the hard cap of the index space
// (2^31) still applies afterwards.
constexpr u64 kResourceBound = u64(1) << 26;

inline u64 env_log_bound() {
    if (const char* s = std::getenv("MAXCURVE_LOG_BOUND")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(s, &end, 10);
        if (end != s && *end == '\0' && v >= 2) return static_cast<u64>(v);
    }
    return gf::kDefaultLogBound;
}

struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    u64 ms() const {
        const auto d = std::chrono::steady_clock::now() - t0;
        return static_cast<u64>(
            std::chrono::duration_cast<std::chrono::milliseconds>(d).count());
    }
};

struct Items {
    ordered_json arr = ordered_json::array();
    bool all = true;

    void add(const std::string& name, ordered_json expected, ordered_json actual,
             bool pass, u64 ms) {
        arr.push_back(ordered_json{{"name", name},
                                   {"expected", std::move(expected)},
                                   {"actual", std::move(actual)},
                                   {"pass", pass},
                                   {"ms", ms}});
        all = all && pass;
    }
    void flag(const std::string& name, bool pass, u64 ms) {
        add(name, 1, pass ? 1 : 0, pass, ms);
    }
};

inline void require_resources(u64 q, u32 degOverQ, bool force) {
    if (force) return;
    mpz_class size = genus::zpow(q, degOverQ);
    if (size > kResourceBound)
        raise(errc::resource_limit, "field of size " + size.get_str() +
                                        " exceeds the default working bound " +
                                        std::to_string(kResourceBound) +
                                        " (pass --force to override)");
}

// ---- per-command item builders ---------------------------------------------

inline void genus_items(u64 q, u32 n, u64 k1, u64 k2, bool subcoverOnly, Items& items) {
    const auto [p, e] = split_prime_power(q);
    (void)e;
    if (!subcoverOnly) {
        Stopwatch sw;
        const i64 closed = genus::genus_xn(q, n);
        const i64 rh = genus::genus_rh_kummer(genus::genus_hermitian(q),
                                              genus::tower_m(q, n),
                                              genus::xn_ramification(q), p);
        items.add("genus-xn-rh", closed, rh, closed == rh, sw.ms());

        Stopwatch swE;
        const i64 closedE = genus::genus_etaz(q, n);
        const i64 rhE = genus::genus_rh_kummer(0, ipow(q, n) + 1,
                                               genus::etaz_ramification(q), p);
        items.add("genus-etaz-rh", closedE, rhE, closedE == rhE, swE.ms());

        Stopwatch swR;
        const i64 closedR = genus::genus_rhoz(q, n);
        const i64 rhR = genus::genus_rh_kummer(0, genus::tower_m(q, n),
                                               genus::rhoz_ramification(q), p);
        items.add("genus-rhoz-rh", closedR, rhR, closedR == rhR, swR.ms());
    }
    if (k1 != 0 || k2 != 0 || subcoverOnly) {
        Stopwatch sw;
        const auto entry = genus::subcover_entry(q, n, k1, k2);
        const i64 rh = genus::genus_rh_kummer(
            0, entry.k, genus::subcover_ramification(q, n, k1, k2), p);
        items.add("genus-subcover-rh", entry.genus, rh, entry.genus == rh, sw.ms());
    }
}

inline void count_item(const FieldCtx* F, const std::string& curve, u64 q, u64 k1,
                       u64 k2, unsigned threads, u64 logBound, Items& items) {
    Stopwatch sw;
    curves::CountReport rep;
    if (curve == "xn") rep = curves::count_xn(*F, threads);
    else if (curve == "ggs") rep = curves::count_ggs(*F, threads);
    else if (curve == "hermitian") rep = curves::count_hermitian(q, logBound);
    else if (curve == "etaz") rep = curves::count_etaz(*F, threads);
    else if (curve == "rhoz") rep = curves::count_rhoz(*F, threads);
    else if (curve == "subcover") rep = curves::count_subcover(*F, k1, k2, threads);
    else raise(errc::bad_param, "unknown curve family '" + curve + "'");
    items.add(curve + "-count", rep.hwTarget, rep.total, rep.maximal, sw.ms());
}

inline void spectrum_items(u64 q, u32 n, Items& items) {
    const auto [p, e] = split_prime_power(q);
    (void)e;
    for (const auto& entry : genus::spectrum(q, n)) {
        Stopwatch sw;
        const i64 rh = genus::genus_rh_kummer(
            0, entry.k, genus::subcover_ramification(q, n, entry.k1, entry.k2), p);
        items.add("subcover-" + std::to_string(entry.k1) + "-" + std::to_string(entry.k2),
                  entry.genus, rh, entry.genus == rh, sw.ms());
    }
}

inline std::string spectrum_csv(u64 q, u32 n) {
    std::ostringstream out;
    out << "k1,k2,k,delta1,delta2,delta3,genus,in_paper_list\n";
    for (const auto& entry : genus::spectrum(q, n))
        out << entry.k1 << ',' << entry.k2 << ',' << entry.k << ',' << entry.delta1
            << ',' << entry.delta2 << ',' << entry.delta3 << ',' << entry.genus << ','
            << (entry.inPublishedList ? "true" : "false") << '\n';
    return out.str();
}

inline void autgroup_items(const FieldCtx& F, const std::string& check,
                           unsigned threads, Items& items) {
    const u64 q = F.q();
    const bool all = check == "all";
    if (all || check == "orders") {
        Stopwatch sw;
        const auto rep = autgroup::verify_orders(F);
        const u64 t = sw.ms();
        items.add("sl-order", rep.slExpected, rep.slSize,
                  rep.slSize == rep.slExpected, t);
        items.add("ml-order", rep.mlExpected, rep.mlSize,
                  rep.mlSize == rep.mlExpected, 0);
        items.flag("ml-normal-form", rep.normalFormAgrees, 0);
        items.flag("sl-det-slice", rep.slIsDetOneSlice, 0);
        items.flag("det-equals-zeta", rep.detEqualsZeta, 0);

        Stopwatch swC;
        const auto clo = autgroup::verify_closure(F);
        items.add("lift-count", clo.expected, clo.size, clo.size == clo.expected,
                  swC.ms());
        items.flag("closure-closed", clo.closedUnderComposition, 0);
        items.flag("closure-normal-form", clo.normalFormInvariant, 0);
        items.flag("closure-matches-enumeration", clo.matchesEnumeration, 0);
        (void)q;
    }
    if (all || check == "action") {
        Stopwatch sw;
        const auto rep = autgroup::verify_action(F, threads);
        const u64 t = sw.ms();
        items.flag("action-identity", rep.identityFixesAll, t);
        items.flag("action-preserves", rep.generatorsPreserve, 0);
        items.add("action-u-twist", rep.utwistChecked,
                  rep.utwistHolds ? rep.utwistChecked : 0, rep.utwistHolds, 0);
        items.flag("action-near-miss-rejected", rep.literalVariantFails, 0);
    }
    if (all || check == "orbit") {
        Stopwatch sw;
        const auto rep = autgroup::verify_orbit_infinity(F);
        const u64 t = sw.ms();
        items.add("orbit-directions", q + 1, rep.directions,
                  rep.directions == q + 1, t);
        items.flag("orbit-well-defined", rep.wellDefined, 0);
        items.flag("orbit-permutes", rep.eachElementPermutes, 0);
        items.flag("orbit-transitive", rep.transitive, 0);
        items.flag("orbit-sharp", rep.sharpSubgroup, 0);
    }
}

inline void identity_items(const FieldCtx& F, const std::string& check,
                           unsigned threads, u64 logBound, bool includeConsistency,
                           Items& items) {
    const u64 q = F.q();
    const u32 n = F.n();
    const u64 qn = ipow(q, n);
    const bool all = check == "all";

    if (all || check == "etacount") {
        Stopwatch sw;
        const auto rep = identities::verify_eta_count(F);
        items.add("eta-count", rep.expected, rep.exhaustive, rep.pass, sw.ms());
    }
    if (all || check == "deltapower") {
        Stopwatch sw;
        const auto rep = identities::verify_delta_power(F);
        items.add("delta-power", qn - q, rep.values, rep.pass, sw.ms());
    }
    if (all || check == "trace") {
        Stopwatch sw;
        const auto rep = identities::verify_trace_condition(F);
        items.add("trace-condition", rep.typeThreeExpected, rep.typeThreeImplied,
                  rep.pass, sw.ms());
    }
    if (all || check == "pvanish") {
        Stopwatch sw;
        const auto rep = identities::verify_P_vanishing(F);
        items.add("p-vanishing", qn - q, rep.values, rep.pass, sw.ms());
    }
    if (all || check == "p1p2") {
        Stopwatch sw;
        const auto rep = identities::verify_P1_eq_P2(q, n);
        items.add("p1p2", q, rep.cCount, rep.pass, sw.ms());
    }
    if (all || check == "splitcount") {
        Stopwatch sw;
        const auto rep = identities::verify_splitting_place_count(F);
        items.add("split-count", rep.powerExpected + rep.parametricExpected,
                  rep.powerFamily + rep.parametricFamily, rep.pass, sw.ms());
    }
    if (includeConsistency) {
        Stopwatch sw;
        const auto rep = identities::verify_split_consistency(F, threads);
        items.add("split-consistency", rep.implied, rep.reported, rep.pass, sw.ms());
    }
    if (check == "phi" || (all && q <= 3)) {
        Stopwatch sw;
        const auto rep = curves::verify_phi(q, logBound);
        items.flag("phi-map", rep.pass, sw.ms());
    }
    if (check == "psi" || (all && q == 2)) {
        if (q != 2) raise(errc::bad_param, "the psi check is specific to q = 2");
        Stopwatch sw;
        const auto rep = curves::verify_psi(n, logBound);
        items.flag("psi-map", rep.pass, sw.ms());
    }
}

}  // namespace detail

// Parses and runs one invocation.  `args` holds the arguments without the
// program name, in natural order.
inline CliResult run_cli(const std::vector<std::string>& args) {
    CLI::App app{"exact verification toolkit for a family of maximal curves"};
    app.require_subcommand(1);

    u64 q = 0;
    u32 n = 0;
    u64 k1 = 0, k2 = 0;
    unsigned threads = 1;
    u64 logBound = detail::env_log_bound();
    bool force = false;
    bool injectFailure = false;
    std::string curve, format = "json", check = "all";

    const auto addCommon = [&](CLI::App* cmd, bool needsN) {
        cmd->add_option("--q", q, "base prime power")->required();
        auto* o = cmd->add_option("--n", n, "tower exponent (odd, >= 3)");
        if (needsN) o->required();
        cmd->add_option("--threads", threads, "worker threads (0 = auto)");
        cmd->add_option("--log-bound", logBound,
                        "largest field size using full log tables");
        cmd->add_flag("--force", force, "override the field size resource bound");
        cmd->add_flag("--inject-failure", injectFailure)->group("");
    };

    auto* cGenus = app.add_subcommand("genus", "closed-form genera against Riemann-Hurwitz");
    addCommon(cGenus, true);
    cGenus->add_option("--k1", k1, "divisor of q+1 selecting a quotient curve");
    cGenus->add_option("--k2", k2, "divisor of m selecting a quotient curve");

    auto* cCount = app.add_subcommand("count", "rational place census of one curve");
    addCommon(cCount, true);
    cCount->add_option("--curve", curve, "curve family")
        ->required()
        ->check(CLI::IsMember({"xn", "ggs", "hermitian", "etaz", "rhoz", "subcover"}));
    cCount->add_option("--k1", k1, "divisor of q+1 (subcover only)");
    cCount->add_option("--k2", k2, "divisor of m (subcover only)");

    auto* cSpectrum = app.add_subcommand("spectrum", "quotient-curve genus spectrum");
    addCommon(cSpectrum, true);
    cSpectrum->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* cAut = app.add_subcommand("autgroup", "automorphism group structure checks");
    addCommon(cAut, true);
    cAut->add_option("--check", check, "which property family to verify")
        ->check(CLI::IsMember({"orders", "action", "orbit", "all"}));

    auto* cIdent = app.add_subcommand("identity", "splitting-criterion verifications");
    addCommon(cIdent, true);
    cIdent->add_option("--check", check, "which identity to verify")
        ->check(CLI::IsMember({"etacount", "deltapower", "trace", "pvanish", "p1p2",
                               "splitcount", "phi", "psi", "all"}));

    auto* cAll = app.add_subcommand("verify-all", "every check for one (q, n)");
    addCommon(cAll, true);

    CliResult res;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        std::ostringstream out, err;
        const int code = app.exit(e, out, err);
        res.out = out.str();
        res.err = err.str();
        res.exitCode = code == 0 ? 0 : 2;
        return res;
    }

    try {
        detail::Items items;
        ordered_json params;
        std::string command;

        if (cGenus->parsed()) {
            command = "genus";
            genus::require_tower_params(q, n);
            if ((k1 == 0) != (k2 == 0))
                raise(errc::bad_param, "--k1 and --k2 must be given together");
            params = {{"q", q}, {"n", n}};
            if (k1 != 0) {
                params["k1"] = k1;
                params["k2"] = k2;
            }
            detail::genus_items(q, n, k1, k2, false, items);
        } else if (cCount->parsed()) {
            command = "count";
            genus::require_tower_params(q, n);
            params = {{"curve", curve}, {"q", q}, {"n", n}};
            if (curve == "subcover") {
                if (k1 == 0 || k2 == 0)
                    raise(errc::bad_param, "--curve subcover needs --k1 and --k2");
                genus::require_divisor_pair(q, n, k1, k2);
                params["k1"] = k1;
                params["k2"] = k2;
            } else if (k1 != 0 || k2 != 0) {
                raise(errc::bad_param, "--k1/--k2 apply only to --curve subcover");
            }
            const auto [p, e] = split_prime_power(q);
            std::unique_ptr<const FieldCtx> F;
            if (curve == "hermitian") {
                detail::require_resources(q, 2, force);
            } else {
                detail::require_resources(q, 2 * n, force);
                F = FieldCtx::build(p, e, n, logBound);
            }
            detail::count_item(F.get(), curve, q, k1, k2, threads, logBound, items);
        } else if (cSpectrum->parsed()) {
            command = "spectrum";
            genus::require_tower_params(q, n);
            split_prime_power(q);
            if (format == "csv") {
                res.out = detail::spectrum_csv(q, n);
                res.exitCode = 0;
                return res;
            }
            params = {{"q", q}, {"n", n}, {"format", format}};
            detail::spectrum_items(q, n, items);
        } else if (cAut->parsed()) {
            command = "autgroup";
            genus::require_tower_params(q, n);
            params = {{"q", q}, {"n", n}, {"check", check}};
            const auto [p, e] = split_prime_power(q);
            detail::require_resources(q, 2 * n, force);
            const auto F = FieldCtx::build(p, e, n, logBound);
            detail::autgroup_items(*F, check, threads, items);
        } else if (cIdent->parsed()) {
            command = "identity";
            genus::require_tower_params(q, n);
            params = {{"q", q}, {"n", n}, {"check", check}};
            const auto [p, e] = split_prime_power(q);
            if (check == "p1p2") {
                detail::Stopwatch sw;
                const auto rep = identities::verify_P1_eq_P2(q, n);
                items.add("p1p2", q, rep.cCount, rep.pass, sw.ms());
            } else if (check == "phi") {
                detail::require_resources(q, 6, force);  // works over F_{q^6}
                detail::Stopwatch sw;
                const auto rep = curves::verify_phi(q, logBound);
                items.flag("phi-map", rep.pass, sw.ms());
            } else if (check == "psi") {
                if (q != 2) raise(errc::bad_param, "the psi check is specific to q = 2");
                detail::require_resources(q, 2 * n, force);
                detail::Stopwatch sw;
                const auto rep = curves::verify_psi(n, logBound);
                items.flag("psi-map", rep.pass, sw.ms());
            } else {
                detail::require_resources(q, 2 * n, force);
                const auto F = FieldCtx::build(p, e, n, logBound);
                detail::identity_items(*F, check, threads, logBound, false, items);
            }
        } else if (cAll->parsed()) {
            command = "verify-all";
            genus::require_tower_params(q, n);
            params = {{"q", q}, {"n", n}};
            const auto [p, e] = split_prime_power(q);
            detail::require_resources(q, 2 * n, force);
            const auto F = FieldCtx::build(p, e, n, logBound);
            detail::genus_items(q, n, 0, 0, false, items);
            for (const char* fam : {"xn", "ggs", "hermitian", "etaz", "rhoz"})
                detail::count_item(F.get(), fam, q, 0, 0, threads, logBound, items);
            detail::spectrum_items(q, n, items);
            detail::autgroup_items(*F, "all", threads, items);
            detail::identity_items(*F, "all", threads, logBound, true, items);
        }

        if (injectFailure && !items.arr.empty()) {
            auto& first = items.arr.at(0);
            first["expected"] = first["expected"].get<i64>() + 1;
            first["pass"] = false;
            items.all = false;
        }

        ordered_json doc{{"command", command},
                         {"params", std::move(params)},
                         {"items", std::move(items.arr)},
                         {"pass", items.all}};
        res.out = doc.dump(2) + "\n";
        res.exitCode = items.all ? 0 : 1;
        return res;
    } catch (const MathError& e) {
        res.err = std::string("error: ") + e.what() + "\n";
        res.exitCode = 2;
        return res;
    } catch (const std::exception& e) {
        res.err = std::string("error: ") + e.what() + "\n";
        res.exitCode = 2;
        return res;
    }
}

}  // namespace maxcurve::cli
