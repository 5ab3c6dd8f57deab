#pragma once

#include <string>
#include <utility>
#include <vector>

#include "maxcurve/gf.hpp"

// Dense univariate polynomials over a FieldCtx.  Coefficients are stored
// as packed field indices, ascending by degree, with no trailing zeros
// (canonical form); the zero polynomial is the empty vector.

namespace maxcurve::poly {

using gf::FieldCtx;
using gf::idx_t;

class DensePoly {
public:
    explicit DensePoly(const FieldCtx& ctx) : ctx_(&ctx) {}
    DensePoly(const FieldCtx& ctx, std::vector<idx_t> coeffs)
        : ctx_(&ctx), c_(std::move(coeffs)) {
        normalize();
    }

    static DensePoly zero(const FieldCtx& ctx) { return DensePoly(ctx); }
    static DensePoly one(const FieldCtx& ctx) { return DensePoly(ctx, {1}); }
    static DensePoly var(const FieldCtx& ctx) { return DensePoly(ctx, {0, 1}); }
    static DensePoly constant(const FieldCtx& ctx, idx_t c) { return DensePoly(ctx, {c}); }
    static DensePoly monomial(const FieldCtx& ctx, u64 deg, idx_t c) {
        std::vector<idx_t> v(deg + 1, 0);
        v[deg] = c;
        return DensePoly(ctx, std::move(v));
    }

    const FieldCtx& ctx() const { return *ctx_; }
    bool is_zero() const { return c_.empty(); }
    // Degree of the zero polynomial is reported as -1.
    i64 degree() const { return static_cast<i64>(c_.size()) - 1; }
    idx_t coeff(u64 i) const { return i < c_.size() ? c_[i] : 0; }
    idx_t lead() const { return c_.empty() ? 0 : c_.back(); }
    const std::vector<idx_t>& coeffs() const { return c_; }

    friend DensePoly operator+(const DensePoly& a, const DensePoly& b) {
        same(a, b);
        std::vector<idx_t> r(std::max(a.c_.size(), b.c_.size()), 0);
        for (size_t i = 0; i < r.size(); ++i)
            r[i] = a.ctx_->add(a.coeff(i), b.coeff(i));
        return DensePoly(*a.ctx_, std::move(r));
    }
    friend DensePoly operator-(const DensePoly& a, const DensePoly& b) {
        same(a, b);
        std::vector<idx_t> r(std::max(a.c_.size(), b.c_.size()), 0);
        for (size_t i = 0; i < r.size(); ++i)
            r[i] = a.ctx_->sub(a.coeff(i), b.coeff(i));
        return DensePoly(*a.ctx_, std::move(r));
    }
    friend DensePoly operator*(const DensePoly& a, const DensePoly& b) {
        same(a, b);
        if (a.is_zero() || b.is_zero()) return DensePoly(*a.ctx_);
        std::vector<idx_t> r(a.c_.size() + b.c_.size() - 1, 0);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (!a.c_[i]) continue;
            for (size_t j = 0; j < b.c_.size(); ++j)
                if (b.c_[j])
                    r[i + j] = a.ctx_->add(r[i + j], a.ctx_->mul(a.c_[i], b.c_[j]));
        }
        return DensePoly(*a.ctx_, std::move(r));
    }
    DensePoly operator-() const {
        std::vector<idx_t> r(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) r[i] = ctx_->neg(c_[i]);
        return DensePoly(*ctx_, std::move(r));
    }
    DensePoly scaled(idx_t s) const {
        std::vector<idx_t> r(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) r[i] = ctx_->mul(c_[i], s);
        return DensePoly(*ctx_, std::move(r));
    }

    friend bool operator==(const DensePoly& a, const DensePoly& b) {
        same(a, b);
        return a.c_ == b.c_;
    }
    friend bool operator!=(const DensePoly& a, const DensePoly& b) { return !(a == b); }

    // Euclidean division: returns (quotient, remainder).
    static std::pair<DensePoly, DensePoly> divmod(const DensePoly& a, const DensePoly& b) {
        same(a, b);
        if (b.is_zero()) raise(errc::division_by_zero, "polynomial division by zero");
        const FieldCtx& F = *a.ctx_;
        std::vector<idx_t> rem = a.c_;
        std::vector<idx_t> quo(a.c_.size() > b.c_.size() ? a.c_.size() - b.c_.size() + 1 : 1, 0);
        const idx_t invLead = F.inv(b.lead());
        while (rem.size() >= b.c_.size() && !rem.empty()) {
            const idx_t c = F.mul(rem.back(), invLead);
            const size_t off = rem.size() - b.c_.size();
            if (c) {
                quo[off] = c;
                for (size_t j = 0; j < b.c_.size(); ++j)
                    rem[off + j] = F.sub(rem[off + j], F.mul(c, b.c_[j]));
            }
            rem.pop_back();
            while (!rem.empty() && rem.back() == 0) rem.pop_back();
        }
        return {DensePoly(F, std::move(quo)), DensePoly(F, std::move(rem))};
    }
    friend DensePoly operator/(const DensePoly& a, const DensePoly& b) {
        return divmod(a, b).first;
    }
    friend DensePoly operator%(const DensePoly& a, const DensePoly& b) {
        return divmod(a, b).second;
    }

    idx_t eval(idx_t x) const {
        idx_t acc = 0;
        for (size_t i = c_.size(); i-- > 0;) acc = ctx_->add(ctx_->mul(acc, x), c_[i]);
        return acc;
    }

    DensePoly pow(u64 e) const {
        DensePoly r = one(*ctx_), base = *this;
        while (e) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    DensePoly powmod(u64 e, const DensePoly& mod) const {
        DensePoly r = one(*ctx_) % mod, base = *this % mod;
        while (e) {
            if (e & 1) r = (r * base) % mod;
            base = (base * base) % mod;
            e >>= 1;
        }
        return r;
    }

    DensePoly monic() const {
        if (is_zero() || lead() == 1) return *this;
        return scaled(ctx_->inv(lead()));
    }

    static DensePoly gcd(DensePoly a, DensePoly b) {
        same(a, b);
        while (!b.is_zero()) {
            DensePoly r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    // Largest k with (T - root)^k | *this, together with the deflated
    // polynomial; used to read off divisor valuations.
    std::pair<u32, DensePoly> valuation_at(idx_t root) const {
        DensePoly linear(*ctx_, {ctx_->neg(root), 1});
        DensePoly cur = *this;
        u32 v = 0;
        while (!cur.is_zero() && cur.eval(root) == 0) {
            cur = cur / linear;
            ++v;
        }
        return {v, cur};
    }

    std::string to_string(const std::string& var = "T") const {
        if (is_zero()) return "0";
        std::string s;
        for (size_t i = c_.size(); i-- > 0;) {
            if (!c_[i]) continue;
            if (!s.empty()) s += " + ";
            if (i == 0 || c_[i] != 1) s += std::to_string(c_[i]);
            if (i >= 1) {
                s += var;
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

private:
    static void same(const DensePoly& a, const DensePoly& b) {
        if (a.ctx_ != b.ctx_)
            raise(errc::ctx_mismatch, "polynomials belong to different field contexts");
    }
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    const FieldCtx* ctx_;
    std::vector<idx_t> c_;
};

// Rabin irreducibility over the coefficient field of f: f of degree D is
// irreducible over F_s iff T^(s^D) = T (mod f) and gcd(T^(s^(D/r)) - T, f)
// is constant for every prime r | D.
inline bool is_irreducible(const DensePoly& f) {
    const i64 D = f.degree();
    if (D < 1) return false;
    if (D == 1) return true;
    const FieldCtx& F = f.ctx();
    const u64 s = F.Q();
    const DensePoly x = DensePoly::var(F);
    std::vector<DensePoly> frob; // frob[i] = T^(s^(i+1)) mod f
    frob.reserve(D);
    DensePoly cur = x;
    for (i64 i = 0; i < D; ++i) {
        cur = cur.powmod(s, f);
        frob.push_back(cur);
    }
    if (frob[D - 1] != x % f) return false;
    for (u64 r : prime_factors(static_cast<u64>(D))) {
        DensePoly g = DensePoly::gcd(frob[D / r - 1] - x, f);
        if (g.degree() != 0) return false;
    }
    return true;
}

// Simple rational function num/den over a FieldCtx.  No implicit
// normalization: callers supply coprime parts (the counting kernel
// tolerates common factors by computing valuations of both parts).
struct RationalFn {
    DensePoly num;
    DensePoly den;

    RationalFn(DensePoly n, DensePoly d) : num(std::move(n)), den(std::move(d)) {
        if (&num.ctx() != &den.ctx())
            raise(errc::ctx_mismatch, "rational function parts over different contexts");
        if (den.is_zero()) raise(errc::division_by_zero, "rational function with zero denominator");
    }
    const FieldCtx& ctx() const { return num.ctx(); }
};

} // namespace maxcurve::poly
