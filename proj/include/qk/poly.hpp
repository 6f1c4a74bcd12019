#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "qk/scalar.hpp"

namespace qk {

/// Variable slots of the coefficient ring. q is the loop variable; l is the
/// twisting parameter lambda; h is sqrt(hbar); y is the extra vertex parameter.
enum Var : int { VQ = 0, VL = 1, VH = 2, VY = 3 };
inline const char* var_name(int v) {
    static const char* names[4] = {"q", "l", "h", "y"};
    return names[v];
}

/// Sparse polynomial in (q, l, h, y) with Scalar coefficients.
/// Monomial keys pack the four exponents into a uint64 so that the natural
/// key order is lex order with q most significant.
class Poly {
public:
    using Key = std::uint64_t;
    std::map<Key, Scalar> t; // nonzero terms only

    static Key key(int eq, int el, int eh, int ey) {
        return (Key(std::uint16_t(eq)) << 48) | (Key(std::uint16_t(el)) << 32) |
               (Key(std::uint16_t(eh)) << 16) | Key(std::uint16_t(ey));
    }
    static std::array<int, 4> exps(Key k) {
        return {int((k >> 48) & 0xffff), int((k >> 32) & 0xffff),
                int((k >> 16) & 0xffff), int(k & 0xffff)};
    }

    Poly() = default;
    explicit Poly(const Scalar& c) {
        if (c != 0) t.emplace(0, c);
    }
    explicit Poly(long c) : Poly(Scalar(c)) {}

    static Poly monomial(const Scalar& c, int eq, int el = 0, int eh = 0, int ey = 0) {
        Poly p;
        if (c != 0) p.t.emplace(key(eq, el, eh, ey), c);
        return p;
    }
    static Poly var(int v, int e = 1) {
        int ex[4] = {0, 0, 0, 0};
        ex[v] = e;
        return monomial(Scalar(1), ex[0], ex[1], ex[2], ex[3]);
    }

    bool is_zero() const { return t.empty(); }
    bool is_constant() const { return t.empty() || (t.size() == 1 && t.begin()->first == 0); }
    Scalar constant() const {
        auto it = t.find(0);
        return it == t.end() ? Scalar(0) : it->second;
    }

    int degree(int v) const {
        int d = -1;
        for (auto& [k, c] : t) d = std::max(d, exps(k)[v]);
        return d; // -1 for the zero polynomial
    }
    bool depends_on(int v) const {
        for (auto& [k, c] : t)
            if (exps(k)[v] != 0) return true;
        return false;
    }

    void add_term(Key k, const Scalar& c) {
        auto [it, ins] = t.emplace(k, c);
        if (!ins) {
            it->second += c;
            if (it->second == 0) t.erase(it);
        }
    }

    Poly& operator+=(const Poly& o) {
        for (auto& [k, c] : o.t) add_term(k, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (auto& [k, c] : o.t) add_term(k, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(const Poly& a) {
        Poly r;
        for (auto& [k, c] : a.t) r.t.emplace(k, -c);
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r;
        for (auto& [ka, ca] : a.t)
            for (auto& [kb, cb] : b.t) {
                auto ea = exps(ka), eb = exps(kb);
                for (int i = 0; i < 4; ++i)
                    if (ea[i] + eb[i] > 0xffff) throw Error("poly exponent overflow");
                r.add_term(key(ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]),
                           ca * cb);
            }
        return r;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly& scale(const Scalar& c) {
        if (c == 0) {
            t.clear();
            return *this;
        }
        for (auto& [k, v] : t) v *= c;
        return *this;
    }
    friend Poly operator*(Poly a, const Scalar& c) { return a.scale(c); }

    Poly pow(long e) const {
        if (e < 0) throw DegenerateOperand("negative poly power");
        Poly r(Scalar(1)), b = *this;
        while (e > 0) {
            if (e & 1) r *= b;
            if (e >>= 1) b *= b;
        }
        return r;
    }

    bool operator==(const Poly& o) const { return t == o.t; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    /// Leading (lex, q-major) term.
    std::pair<Key, Scalar> lead() const { return *t.rbegin(); }

    /// Substitute variable v by an exact rational value.
    Poly subst(int v, const Scalar& val) const {
        Poly r;
        for (auto& [k, c] : t) {
            auto e = exps(k);
            Scalar nc = c * scalar_pow(val, e[v]);
            e[v] = 0;
            if (nc != 0) r.add_term(key(e[0], e[1], e[2], e[3]), nc);
        }
        return r;
    }

    /// Exact quotient of *this by (x_v - val); requires divisibility
    /// (i.e. subst(v, val) is zero). Classic synthetic division per v-degree.
    Poly divexact_linear(int v, const Scalar& val) const {
        // Collect coefficients by v-degree (each itself a Poly in the rest).
        std::map<int, Poly> by;
        for (auto& [k, c] : t) {
            auto e = exps(k);
            int d = e[v];
            e[v] = 0;
            by[d].add_term(key(e[0], e[1], e[2], e[3]), c);
        }
        int dmax = by.empty() ? 0 : by.rbegin()->first;
        Poly r;
        Poly carry; // running coefficient
        for (int d = dmax; d >= 1; --d) {
            Poly cd = by.count(d) ? by[d] : Poly();
            carry += cd;
            for (auto& [k, c] : carry.t) {
                auto e = exps(k);
                r.add_term(key(e[0], e[1], e[2], e[3]) + (Key(d - 1) << (16 * (3 - v))), c);
            }
            carry.scale(val);
        }
        return r;
    }

    /// Attempt exact division by g; returns quotient if g divides *this.
    std::optional<Poly> divexact(const Poly& g) const {
        if (g.is_zero()) throw DegenerateOperand("division by zero polynomial");
        Poly rem = *this, quot;
        auto [gk, gc] = g.lead();
        auto ge = exps(gk);
        while (!rem.is_zero()) {
            auto [rk, rc] = rem.lead();
            auto re = exps(rk);
            for (int i = 0; i < 4; ++i)
                if (re[i] < ge[i]) return std::nullopt;
            Key qk_ = key(re[0] - ge[0], re[1] - ge[1], re[2] - ge[2], re[3] - ge[3]);
            Scalar qc = rc / gc;
            quot.add_term(qk_, qc);
            Poly m;
            m.t.emplace(qk_, qc);
            rem -= m * g;
        }
        return quot;
    }

    std::string str() const {
        if (t.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = t.rbegin(); it != t.rend(); ++it) {
            auto e = exps(it->first);
            const Scalar& c = it->second;
            if (!first) os << (c >= 0 ? " + " : " - ");
            else if (c < 0) os << "-";
            first = false;
            Scalar a = abs(c);
            bool has_var = e[0] || e[1] || e[2] || e[3];
            if (a != 1 || !has_var) os << a.str();
            bool star = (a != 1 || !has_var);
            for (int v = 0; v < 4; ++v)
                if (e[v]) {
                    if (star) os << "*";
                    os << var_name(v);
                    if (e[v] > 1) os << "^" << e[v];
                    star = true;
                }
        }
        return os.str();
    }
};

} // namespace qk
