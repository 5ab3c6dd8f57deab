#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "maxcurve/errors.hpp"
#include "maxcurve/numutil.hpp"

// Exact arithmetic in F_Q = F_p[T]/(f), specialized for even-degree towers
// F_{q^{2n}} over F_q (q = p^e, n odd).  Elements are canonical packed
// indices: the coordinate vector (c_0, ..., c_{N-1}) over F_p relative to
// the power basis of the modulus packs to Sum c_i * p^i, so indices run
// exactly over [0, Q).  Multiplicative structure is served by exp/log
// tables (plus Zech logarithms for odd p) when Q fits the configured
// bound; otherwise all operations fall back to polynomial-basis
// arithmetic with square-and-multiply exponentiation.

namespace maxcurve::gf {

using idx_t = u32;

inline constexpr u64 kDefaultLogBound = u64(1) << 22;
inline constexpr u32 kLogNone = 0xFFFFFFFFu; // sentinel: log of zero

namespace detail {

// Dense F_p polynomials as digit vectors (ascending coefficients).
// Only used during context construction (modulus search); everything
// after that runs on packed indices.
using Digits = std::vector<u32>;

inline void fp_normalize(Digits& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Digits fp_mul(const Digits& a, const Digits& b, u32 p) {
    if (a.empty() || b.empty()) return {};
    Digits r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    fp_normalize(r);
    return r;
}

// a mod f, f monic.
inline Digits fp_mod(Digits a, const Digits& f, u32 p) {
    fp_normalize(a);
    const size_t df = f.size() - 1;
    while (a.size() > df) {
        const u32 c = a.back();
        const size_t off = a.size() - 1 - df;
        if (c)
            for (size_t j = 0; j < df; ++j)
                a[off + j] = (a[off + j] + c * (p - f[j])) % p;
        a.pop_back();
        fp_normalize(a);
    }
    return a;
}

inline Digits fp_powmod(Digits base, u64 e, const Digits& f, u32 p) {
    Digits r{1};
    base = fp_mod(std::move(base), f, p);
    while (e) {
        if (e & 1) r = fp_mod(fp_mul(r, base, p), f, p);
        base = fp_mod(fp_mul(base, base, p), f, p);
        e >>= 1;
    }
    return r;
}

inline Digits fp_sub(Digits a, const Digits& b, u32 p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    fp_normalize(a);
    return a;
}

inline Digits fp_gcd(Digits a, Digits b, u32 p) {
    fp_normalize(a);
    fp_normalize(b);
    while (!b.empty()) {
        // Make b monic so fp_mod applies.
        const u32 lead = b.back();
        if (lead != 1) {
            const u32 il = static_cast<u32>(powmod_u64(lead, p - 2, p));
            for (auto& c : b) c = (c * il) % p;
        }
        Digits r = fp_mod(std::move(a), b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Rabin's irreducibility test for monic f of degree >= 1 over F_p.
inline bool fp_irreducible(const Digits& f, u32 p) {
    const u32 D = static_cast<u32>(f.size()) - 1;
    if (D == 0) return false;
    if (D == 1) return true;
    const Digits x{0, 1};
    std::vector<Digits> frob(D + 1); // frob[i] = T^(p^i) mod f
    frob[0] = x;
    for (u32 i = 1; i <= D; ++i) frob[i] = fp_powmod(frob[i - 1], p, f, p);
    if (frob[D] != x) return false;
    for (u64 r : prime_factors(D)) {
        Digits g = fp_gcd(fp_sub(frob[D / r], x, p), f, p);
        if (g.size() != 1) return false;
    }
    return true;
}

} // namespace detail

class FieldElement;

class FieldCtx {
public:
    using u16_t = std::uint16_t;

    // Tower field F_{q^{2n}}, q = p^e, n odd >= 3.  This is the shape the
    // curve constructions live in.
    static std::unique_ptr<const FieldCtx> build(u32 p, u32 e, u32 n,
                                                 u64 logBound = kDefaultLogBound) {
        if (n % 2 == 0) raise(errc::n_is_even, "tower exponent n must be odd");
        if (n < 3) raise(errc::bad_param, "tower exponent n must be >= 3");
        return std::unique_ptr<const FieldCtx>(new FieldCtx(p, e, 2 * n, n, logBound));
    }

    // Plain extension F_{q^k} of F_q = F_{p^e}; used for side fields such
    // as F_{q^2} (Hermitian counts, matrix groups, polynomial identities).
    static std::unique_ptr<const FieldCtx> build_plain(u32 p, u32 e, u32 degOverQ,
                                                       u64 logBound = kDefaultLogBound) {
        if (degOverQ < 1) raise(errc::bad_param, "extension degree must be >= 1");
        return std::unique_ptr<const FieldCtx>(new FieldCtx(p, e, degOverQ, 0, logBound));
    }

    FieldCtx(const FieldCtx&) = delete;
    FieldCtx& operator=(const FieldCtx&) = delete;

    // ---- parameters -----------------------------------------------------

    u32 p() const { return p_; }
    u32 e() const { return e_; }
    u64 q() const { return q_; }
    u32 deg_over_q() const { return degq_; }
    u32 deg_over_p() const { return N_; }
    u64 Q() const { return Q_; }
    bool is_tower() const { return n_ != 0; }
    u32 n() const {
        if (!is_tower()) raise(errc::bad_param, "context is not a tower field");
        return n_;
    }
    // m = (q^n + 1) / (q + 1), the Kummer exponent of the tower curves.
    u64 m() const {
        if (!is_tower()) raise(errc::bad_param, "context is not a tower field");
        return m_;
    }
    const std::vector<u32>& modulus() const { return mod_; }
    idx_t generator() const { return gen_; }
    bool has_tables() const { return hasTables_; }
    const char* strategy() const { return hasTables_ ? "log-table" : "powmod"; }

    std::string description() const {
        std::string s = "F_" + std::to_string(Q_) + " = F_" + std::to_string(p_) + "[T]/(";
        s += poly_string(mod_) + "), g = idx " + std::to_string(gen_);
        s += std::string(", strategy = ") + strategy();
        return s;
    }

    // ---- raw index arithmetic -------------------------------------------

    idx_t add(idx_t a, idx_t b) const {
        if (p_ == 2) return a ^ b;
        if (a == 0) return b;
        if (b == 0) return a;
        if (hasTables_) {
            const u64 la = log_[a], lb = log_[b];
            const u64 d = (lb + (Q_ - 1) - la) % (Q_ - 1);
            const u32 z = zech_[d];
            if (z == kLogNone) return 0;
            return exp_[(la + z) % (Q_ - 1)];
        }
        u32 da[kMaxDeg], db[kMaxDeg];
        unpack(a, da);
        unpack(b, db);
        for (u32 i = 0; i < N_; ++i) da[i] = (da[i] + db[i]) % p_;
        return pack(da);
    }

    idx_t neg(idx_t a) const {
        if (p_ == 2 || a == 0) return a;
        if (hasTables_) return exp_[(u64(log_[a]) + (Q_ - 1) / 2) % (Q_ - 1)];
        u32 d[kMaxDeg];
        unpack(a, d);
        for (u32 i = 0; i < N_; ++i) d[i] = (p_ - d[i]) % p_;
        return pack(d);
    }

    idx_t sub(idx_t a, idx_t b) const {
        if (p_ == 2) return a ^ b;
        return add(a, neg(b));
    }

    idx_t mul(idx_t a, idx_t b) const {
        if (a == 0 || b == 0) return 0;
        if (hasTables_) return exp_[(u64(log_[a]) + log_[b]) % (Q_ - 1)];
        return mul_generic(a, b);
    }

    idx_t inv(idx_t a) const {
        if (a == 0) raise(errc::division_by_zero, "inverse of zero");
        if (hasTables_) {
            const u64 l = log_[a];
            return exp_[(Q_ - 1 - l) % (Q_ - 1)];
        }
        return pow_u(a, Q_ - 2);
    }

    idx_t div(idx_t a, idx_t b) const { return mul(a, inv(b)); }

    idx_t pow_u(idx_t a, u64 e) const {
        if (a == 0) return e == 0 ? 1 : 0;
        e %= (Q_ - 1);
        if (hasTables_) return exp_[mulmod(log_[a], e, Q_ - 1)];
        idx_t r = 1, base = a;
        while (e) {
            if (e & 1) r = mul_generic_z(r, base);
            base = mul_generic_z(base, base);
            e >>= 1;
        }
        return r;
    }

    idx_t pow_i(idx_t a, i64 e) const {
        if (e >= 0) return pow_u(a, static_cast<u64>(e));
        return pow_u(inv(a), static_cast<u64>(-e));
    }

    // a^(q^j): Frobenius with respect to the q-grading.
    idx_t frob(idx_t a, u32 j) const {
        if (a == 0) return a;
        const u64 ex = qpow_[j % degq_];
        if (hasTables_) return exp_[mulmod(log_[a], ex, Q_ - 1)];
        return pow_u(a, ex);
    }

    // Membership in F_{q^k}; k must divide the extension degree over F_q.
    bool in_subfield(idx_t a, u32 k) const {
        if (k == 0 || degq_ % k != 0)
            raise(errc::not_a_subfield, "F_{q^" + std::to_string(k) + "} is not a subfield here");
        return frob(a, k) == a;
    }

    // x != 0 is a d-th power iff x^((Q-1)/d) = 1; d must divide Q-1.
    bool is_dth_power(idx_t a, u64 d) const {
        if (d == 0 || (Q_ - 1) % d != 0)
            raise(errc::d_not_divisor, "d must divide Q-1");
        if (a == 0) raise(errc::zero_input, "residue class of zero is undefined");
        if (hasTables_) return log_[a] % d == 0;
        return pow_u(a, (Q_ - 1) / d) == 1;
    }

    // All solutions of y^d = a, ascending by index ({0} for a = 0, empty
    // when a is not a d-th power).  Without tables a representative root
    // is served from a lazily built map (one pass over F_Q*, O(Q/d)
    // entries, built at most once under a lock).
    std::vector<idx_t> dth_roots(idx_t a, u64 d) const {
        if (d == 0 || (Q_ - 1) % d != 0)
            raise(errc::d_not_divisor, "d must divide Q-1");
        if (a == 0) return {0};
        idx_t root = 0;
        if (hasTables_) {
            const u64 l = log_[a];
            if (l % d != 0) return {};
            root = exp_[l / d];
        } else {
            const auto& rep = root_rep_map(d);
            auto it = rep.find(a);
            if (it == rep.end()) return {};
            root = it->second;
        }
        std::vector<idx_t> out;
        out.reserve(d);
        for (idx_t z : roots_of_unity(d)) out.push_back(mul(root, z));
        std::sort(out.begin(), out.end());
        return out;
    }

    // One solution of y^d = a for a d-th power a != 0 (0 if none exists).
    // Cheaper than dth_roots when the full fiber is not needed.
    idx_t dth_root_any(idx_t a, u64 d) const {
        if (d == 0 || (Q_ - 1) % d != 0)
            raise(errc::d_not_divisor, "d must divide Q-1");
        if (a == 0) raise(errc::zero_input, "no unit root of zero");
        if (hasTables_) {
            const u64 l = log_[a];
            return l % d == 0 ? exp_[l / d] : 0;
        }
        const auto& rep = root_rep_map(d);
        auto it = rep.find(a);
        return it == rep.end() ? 0 : it->second;
    }

    // The d-th roots of unity, d | Q-1, in power order starting at 1.
    std::vector<idx_t> roots_of_unity(u64 d) const {
        if (d == 0 || (Q_ - 1) % d != 0)
            raise(errc::d_not_divisor, "d must divide Q-1");
        const u64 step = (Q_ - 1) / d;
        std::vector<idx_t> out;
        out.reserve(d);
        if (hasTables_) {
            for (u64 j = 0; j < d; ++j) out.push_back(exp_[(j * step) % (Q_ - 1)]);
        } else {
            const idx_t g = pow_u(gen_, step);
            idx_t cur = 1;
            for (u64 j = 0; j < d; ++j) {
                out.push_back(cur);
                cur = mul(cur, g);
            }
        }
        return out;
    }

    // Elements of the subfield F_{q^k}, ascending by index.
    std::vector<idx_t> subfield(u32 k) const {
        if (k == 0 || degq_ % k != 0)
            raise(errc::not_a_subfield, "F_{q^" + std::to_string(k) + "} is not a subfield here");
        const u64 size = ipow(q_, k);
        std::vector<idx_t> out;
        out.reserve(size);
        out.push_back(0);
        const idx_t g = pow_u(gen_, (Q_ - 1) / (size - 1));
        idx_t cur = 1;
        for (u64 i = 0; i < size - 1; ++i) {
            out.push_back(cur);
            cur = mul(cur, g);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    // Discrete log and antilog (table strategy only; internal fast path
    // for the counting kernels).
    u32 logv(idx_t a) const {
        if (!hasTables_) raise(errc::bad_param, "no log tables at this size");
        if (a == 0) raise(errc::zero_input, "log of zero");
        return log_[a];
    }
    idx_t expv(u64 l) const {
        if (!hasTables_) raise(errc::bad_param, "no log tables at this size");
        return exp_[l % (Q_ - 1)];
    }

    // Small-integer embedding (image of v mod p under F_p -> F_Q).
    idx_t of_int(i64 v) const {
        i64 r = v % static_cast<i64>(p_);
        if (r < 0) r += p_;
        return static_cast<idx_t>(r);
    }

    // Coordinate vector over F_p (ascending basis powers).
    std::vector<u16_t> coords(idx_t a) const {
        std::vector<u16_t> out(N_);
        for (u32 i = 0; i < N_; ++i) {
            out[i] = static_cast<u16_t>(a % p_);
            a /= p_;
        }
        return out;
    }

    // ---- distinguished elements ------------------------------------------

    // alpha: the first power of the F_{q^2}* generator that falls outside
    // F_q (deterministic; in practice the first power already does).
    idx_t special_alpha() const {
        if (degq_ % 2 != 0) raise(errc::not_a_subfield, "F_{q^2} is not a subfield here");
        const idx_t h = pow_u(gen_, (Q_ - 1) / (q_ * q_ - 1));
        idx_t cur = h;
        for (u64 i = 1; i < q_ * q_; ++i) {
            if (!in_subfield(cur, 1)) return cur;
            cur = mul(cur, h);
        }
        raise(errc::bad_param, "no element of F_{q^2} outside F_q (q^2 = q?)");
    }

    // rho: least-index element of F_{q^2} with rho^q + rho = 1.
    idx_t special_rho() const {
        for (idx_t x : subfield(2))
            if (add(frob(x, 1), x) == 1) return x;
        raise(errc::bad_param, "no trace-one element found");
    }

    // The q+1 solutions of zeta^(q+1) = 1, ascending by index.
    std::vector<idx_t> zeta_list() const {
        auto out = roots_of_unity(q_ + 1);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    static constexpr u32 kMaxDeg = 32;

    FieldCtx(u32 p, u32 e, u32 degq, u32 n, u64 logBound)
        : p_(p), e_(e), degq_(degq), n_(n) {
        if (!is_prime_u64(p)) raise(errc::not_prime, std::to_string(p) + " is not prime");
        if (e < 1) raise(errc::bad_param, "e must be >= 1");
        N_ = e * degq;
        if (N_ >= kMaxDeg) raise(errc::degree_overflow, "extension degree too large");
        q_ = ipow_checked(p, e);
        Q_ = 1;
        for (u32 i = 0; i < N_; ++i) {
            Q_ *= p;
            if (Q_ > (u64(1) << 31))
                raise(errc::degree_overflow, "field exceeds the 32-bit index space");
        }
        ppow_[0] = 1;
        for (u32 i = 1; i <= N_; ++i) ppow_[i] = ppow_[i - 1] * p;
        if (n_ != 0) m_ = (ipow(q_, n_) + 1) / (q_ + 1);

        find_modulus();
        build_reduction_table();
        qpow_.resize(degq_);
        for (u32 j = 0; j < degq_; ++j)
            qpow_[j] = Q_ > 2 ? powmod_u64(q_, j, Q_ - 1) : 0;
        find_generator();
        if (Q_ <= logBound) build_tables();
    }

    // -- packing ------------------------------------------------------------

    void unpack(idx_t v, u32* d) const {
        for (u32 i = 0; i < N_; ++i) {
            d[i] = v % p_;
            v /= p_;
        }
    }
    idx_t pack(const u32* d) const {
        u64 r = 0;
        for (u32 i = N_; i-- > 0;) r = r * p_ + d[i];
        return static_cast<idx_t>(r);
    }

    // -- generic (table-free) multiplication ---------------------------------

    idx_t mul_generic(idx_t a, idx_t b) const {
        u32 da[kMaxDeg], db[kMaxDeg], acc[2 * kMaxDeg];
        unpack(a, da);
        unpack(b, db);
        for (u32 i = 0; i < 2 * N_; ++i) acc[i] = 0;
        for (u32 i = 0; i < N_; ++i) {
            if (!da[i]) continue;
            for (u32 j = 0; j < N_; ++j) acc[i + j] += da[i] * db[j];
        }
        for (u32 k = 2 * N_ - 2 + 1; k-- > N_;) {
            const u32 c = acc[k] % p_;
            if (!c) continue;
            const u32* red = &red_[(k - N_) * N_];
            for (u32 j = 0; j < N_; ++j) acc[j] += c * red[j];
        }
        u32 out[kMaxDeg];
        for (u32 j = 0; j < N_; ++j) out[j] = acc[j] % p_;
        return pack(out);
    }
    // mul for the pow loop: tolerates zero operands.
    idx_t mul_generic_z(idx_t a, idx_t b) const {
        if (a == 0 || b == 0) return 0;
        return mul_generic(a, b);
    }

    // -- construction pieces --------------------------------------------------

    void find_modulus() {
        mod_.assign(N_ + 1, 0);
        mod_[N_] = 1;
        if (N_ == 1) return; // T itself: F_p as a degree-1 quotient
        detail::Digits f(N_ + 1, 0);
        f[N_] = 1;
        for (u64 k = 0;; ++k) {
            if (k >= ppow_[N_])
                raise(errc::bad_param, "no irreducible modulus found (impossible)");
            u64 v = k;
            u32 sum = 0;
            for (u32 i = 0; i < N_; ++i) {
                f[i] = v % p_;
                sum += f[i];
                v /= p_;
            }
            if (f[0] == 0) continue;            // divisible by T
            if ((sum + 1) % p_ == 0) continue;  // f(1) = 0
            if (detail::fp_irreducible(f, p_)) {
                for (u32 i = 0; i <= N_; ++i) mod_[i] = f[i];
                return;
            }
        }
    }

    void build_reduction_table() {
        // red_ row t (t = 0..N-2) holds T^(N+t) mod f.
        if (N_ < 2) return;
        red_.assign((N_ - 1) * N_, 0);
        std::vector<u32> cur(N_);
        for (u32 j = 0; j < N_; ++j) cur[j] = (p_ - mod_[j]) % p_;
        for (u32 t = 0; t < N_ - 1; ++t) {
            for (u32 j = 0; j < N_; ++j) red_[t * N_ + j] = cur[j];
            if (t + 1 == N_ - 1) break;
            // cur <- T * cur mod f
            const u32 top = cur[N_ - 1];
            for (u32 j = N_; j-- > 1;) cur[j] = cur[j - 1];
            cur[0] = 0;
            if (top)
                for (u32 j = 0; j < N_; ++j)
                    cur[j] = (cur[j] + top * red_[0 * N_ + j]) % p_;
        }
    }

    void find_generator() {
        if (Q_ == 2) {
            gen_ = 1;
            return;
        }
        const auto primes = prime_factors(Q_ - 1);
        for (idx_t v = 2; v < Q_; ++v) {
            bool ok = true;
            for (u64 r : primes) {
                if (pow_u_notab(v, (Q_ - 1) / r) == 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                gen_ = v;
                return;
            }
        }
        raise(errc::bad_param, "no primitive element found (impossible)");
    }

    // pow that never consults tables (used before they exist).
    idx_t pow_u_notab(idx_t a, u64 e) const {
        if (a == 0) return e == 0 ? 1 : 0;
        e %= (Q_ - 1);
        idx_t r = 1, base = a;
        while (e) {
            if (e & 1) r = mul_generic_z(r, base);
            base = mul_generic_z(base, base);
            e >>= 1;
        }
        return r;
    }

    void build_tables() {
        exp_.resize(Q_ - 1);
        log_.assign(Q_, kLogNone);
        u32 dg[kMaxDeg];
        unpack(gen_, dg);
        // sparse digit list of the generator
        std::vector<std::pair<u32, u32>> gterms;
        for (u32 i = 0; i < N_; ++i)
            if (dg[i]) gterms.push_back({i, dg[i]});

        std::vector<u32> cur(N_, 0);
        cur[0] = 1;
        std::vector<u32> acc(2 * N_, 0);
        for (u64 i = 0; i < Q_ - 1; ++i) {
            const idx_t v = pack(cur.data());
            exp_[i] = v;
            log_[v] = static_cast<u32>(i);
            // cur <- cur * g, exploiting the sparsity of g
            std::fill(acc.begin(), acc.end(), 0);
            for (auto [j, c] : gterms)
                for (u32 t = 0; t < N_; ++t) acc[j + t] += c * cur[t];
            for (u32 k = 2 * N_ - 1; k-- > N_;) {
                const u32 c = acc[k] % p_;
                if (!c) continue;
                const u32* red = &red_[(k - N_) * N_];
                for (u32 j = 0; j < N_; ++j) acc[j] += c * red[j];
            }
            for (u32 j = 0; j < N_; ++j) cur[j] = acc[j] % p_;
        }
        hasTables_ = true;
        if (p_ != 2) {
            // Zech logarithms: zech_[k] = log(1 + g^k), sentinel at g^k = -1.
            zech_.assign(Q_ - 1, kLogNone);
            for (u64 k = 0; k < Q_ - 1; ++k) {
                const idx_t x = exp_[k];
                const u32 d0 = x % p_;
                const idx_t y = x - d0 + ((d0 + 1) % p_);
                zech_[k] = (y == 0) ? kLogNone : log_[y];
            }
        }
    }

    const std::unordered_map<idx_t, idx_t>& root_rep_map(u64 d) const {
        std::lock_guard<std::mutex> lk(rootMapMutex_);
        auto it = rootReps_.find(d);
        if (it != rootReps_.end()) return it->second;
        auto& map = rootReps_[d];
        map.reserve((Q_ - 1) / d + 1);
        const idx_t gd = pow_u(gen_, d % (Q_ - 1));
        idx_t cur = 1, root = 1;
        for (u64 i = 0; i < (Q_ - 1) / d; ++i) {
            map.emplace(cur, root);
            cur = mul(cur, gd);
            root = mul(root, gen_);
        }
        return map;
    }

    static std::string poly_string(const std::vector<u32>& f) {
        std::string s;
        for (u32 i = static_cast<u32>(f.size()); i-- > 0;) {
            if (!f[i]) continue;
            if (!s.empty()) s += "+";
            if (i == 0 || f[i] != 1) s += std::to_string(f[i]);
            if (i >= 1) {
                s += "T";
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s.empty() ? "0" : s;
    }

    friend std::string modulus_string(const FieldCtx& ctx);

    u32 p_, e_, degq_, n_, N_ = 0;
    u64 q_ = 0, Q_ = 0, m_ = 0;
    u64 ppow_[kMaxDeg + 1] = {};
    std::vector<u32> mod_;
    std::vector<u32> red_; // (N-1) x N row-major: T^(N+t) mod f
    std::vector<u64> qpow_;
    idx_t gen_ = 0;
    bool hasTables_ = false;
    std::vector<idx_t> exp_;
    std::vector<u32> log_;
    std::vector<u32> zech_;
    mutable std::mutex rootMapMutex_;
    mutable std::map<u64, std::unordered_map<idx_t, idx_t>> rootReps_;
};

inline std::string modulus_string(const FieldCtx& ctx) {
    return FieldCtx::poly_string(ctx.modulus());
}

// Value-style wrapper carrying its context; all mixed-context operations
// raise ctx_mismatch.
class FieldElement {
public:
    FieldElement() = default;
    FieldElement(const FieldCtx& ctx, idx_t v) : ctx_(&ctx), v_(v) {
        if (v >= ctx.Q()) raise(errc::bad_param, "index outside the field");
    }

    const FieldCtx& ctx() const {
        if (!ctx_) raise(errc::bad_param, "default-constructed element has no context");
        return *ctx_;
    }
    idx_t index() const { return v_; }
    bool is_zero() const { return v_ == 0; }
    std::vector<FieldCtx::u16_t> coeffs() const { return ctx().coords(v_); }

    FieldElement pow(i64 e) const { return FieldElement(ctx(), ctx().pow_i(v_, e)); }
    FieldElement inv() const { return FieldElement(ctx(), ctx().inv(v_)); }
    FieldElement frob(u32 j) const { return FieldElement(ctx(), ctx().frob(v_, j)); }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        same(a, b);
        return FieldElement(a.ctx(), a.ctx().add(a.v_, b.v_));
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        same(a, b);
        return FieldElement(a.ctx(), a.ctx().sub(a.v_, b.v_));
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        same(a, b);
        return FieldElement(a.ctx(), a.ctx().mul(a.v_, b.v_));
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
        same(a, b);
        return FieldElement(a.ctx(), a.ctx().div(a.v_, b.v_));
    }
    friend FieldElement operator-(const FieldElement& a) {
        return FieldElement(a.ctx(), a.ctx().neg(a.v_));
    }
    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        same(a, b);
        return a.v_ == b.v_;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

private:
    static void same(const FieldElement& a, const FieldElement& b) {
        if (&a.ctx() != &b.ctx())
            raise(errc::ctx_mismatch, "elements belong to different field contexts");
    }
    const FieldCtx* ctx_ = nullptr;
    idx_t v_ = 0;
};

} // namespace maxcurve::gf
