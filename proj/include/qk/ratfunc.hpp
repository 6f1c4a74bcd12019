#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "qk/poly.hpp"

namespace qk {

constexpr long QDEG_NEG_INF = LONG_MIN; // q-degree of the zero element

/// Rational function in (q, l, h, y) over the rationals, kept as an expanded
/// numerator over a *factored* denominator. Factors stay granular (they are
/// the (1 - q^m x)-type building blocks of the series coefficients), which
/// makes common-denominator sums and cancellation cheap without any
/// multivariate gcd. Zero testing is exact: the numerator is identically 0.
class RatFunc {
public:
    Poly num;
    std::vector<std::pair<Poly, int>> den; // normalized factors with multiplicities

    RatFunc() = default;
    explicit RatFunc(const Scalar& c) : num(c) {}
    explicit RatFunc(long c) : num(Scalar(c)) {}
    explicit RatFunc(const Poly& p) : num(p) {}
    RatFunc(const Poly& n, const Poly& d) : num(n) { div_by_poly(d); }

    static RatFunc zero() { return RatFunc(); }
    static RatFunc one() { return RatFunc(Scalar(1)); }
    static RatFunc var(int v, int e = 1) { return RatFunc(Poly::var(v, e)); }

    bool is_zero() const { return num.is_zero(); }
    bool is_one() const { return den.empty() && num.is_constant() && num.constant() == 1; }
    bool is_q_free() const {
        if (num.depends_on(VQ)) return false;
        for (auto& [f, m] : den)
            if (f.depends_on(VQ)) return false;
        return true;
    }
    bool is_constant() const {
        if (!num.is_constant()) return false;
        for (auto& [f, m] : den)
            if (!f.is_constant()) return false; // normalized factors are never constant
        return den.empty();
    }
    Scalar constant() const { return num.constant(); }

    long q_degree() const {
        if (num.is_zero()) return QDEG_NEG_INF;
        long d = num.degree(VQ);
        for (auto& [f, m] : den) d -= long(f.degree(VQ)) * m;
        return d;
    }

    Poly den_product() const {
        Poly d(Scalar(1));
        for (auto& [f, m] : den) d *= f.pow(m);
        return d;
    }

    /// Multiply the denominator by polynomial p (i.e. divide the value by p).
    void div_by_poly(Poly p) {
        if (p.is_zero()) throw DegenerateOperand("division by zero");
        if (num.is_zero()) return;
        if (p.is_constant()) {
            num.scale(Scalar(1) / p.constant());
            return;
        }
        Scalar lc = p.lead().second;
        if (lc != 1) {
            p.scale(Scalar(1) / lc);
            num.scale(Scalar(1) / lc);
        }
        // cancel immediately if possible
        if (auto q = num.divexact(p)) {
            num = *q;
            return;
        }
        insert_factor(p, 1);
    }

    void insert_factor(const Poly& f, int mult) {
        auto it = std::lower_bound(den.begin(), den.end(), f,
                                   [](const std::pair<Poly, int>& a, const Poly& b) {
                                       return a.first.t < b.t;
                                   });
        if (it != den.end() && it->first == f) it->second += mult;
        else den.insert(it, {f, mult});
    }

    void reduce() {
        if (num.is_zero()) {
            den.clear();
            return;
        }
        for (auto it = den.begin(); it != den.end();) {
            while (it->second > 0) {
                auto q = num.divexact(it->first);
                if (!q) break;
                num = *q;
                --it->second;
            }
            if (it->second == 0) it = den.erase(it);
            else ++it;
        }
    }

    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero() || b.is_zero()) return RatFunc();
        RatFunc r;
        r.num = a.num * b.num;
        r.den = a.den;
        for (auto& [f, m] : b.den) r.insert_factor(f, m);
        r.reduce();
        return r;
    }
    RatFunc& operator*=(const RatFunc& b) { return *this = *this * b; }

    RatFunc inverse() const {
        if (is_zero()) throw DegenerateOperand("inverse of zero");
        RatFunc r;
        r.num = den_product();
        r.div_by_poly(num);
        return r;
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }
    RatFunc& operator/=(const RatFunc& b) { return *this = *this / b; }

    RatFunc pow(long e) const {
        if (e == 0) return one();
        RatFunc b = e < 0 ? inverse() : *this;
        long n = e < 0 ? -e : e;
        RatFunc r = one();
        while (n > 0) {
            if (n & 1) r *= b;
            if (n >>= 1) b *= b;
        }
        return r;
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        // common denominator: per-factor max multiplicity
        RatFunc r;
        r.den = a.den;
        for (auto& [f, m] : b.den) {
            auto it = std::lower_bound(r.den.begin(), r.den.end(), f,
                                       [](const std::pair<Poly, int>& x, const Poly& y) {
                                           return x.first.t < y.t;
                                       });
            if (it != r.den.end() && it->first == f) it->second = std::max(it->second, m);
            else r.den.insert(it, {f, m});
        }
        auto mult_of = [](const std::vector<std::pair<Poly, int>>& den, const Poly& f) {
            for (auto& [g, m] : den)
                if (g == f) return m;
            return 0;
        };
        Poly na = a.num, nb = b.num;
        for (auto& [f, m] : r.den) {
            int ma = mult_of(a.den, f), mb = mult_of(b.den, f);
            if (m > ma) na *= f.pow(m - ma);
            if (m > mb) nb *= f.pow(m - mb);
        }
        r.num = na + nb;
        r.reduce();
        return r;
    }
    RatFunc& operator+=(const RatFunc& b) { return *this = *this + b; }
    friend RatFunc operator-(const RatFunc& a) {
        RatFunc r = a;
        r.num = -r.num;
        return r;
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    RatFunc& operator-=(const RatFunc& b) { return *this = *this - b; }

    friend RatFunc operator*(RatFunc a, const Scalar& c) {
        if (c == 0) return RatFunc();
        a.num.scale(c);
        return a;
    }

    bool operator==(const RatFunc& o) const {
        if (num.is_zero()) return o.num.is_zero();
        if (o.num.is_zero()) return false;
        if (den == o.den) return num == o.num;
        return num * o.den_product() == o.num * den_product();
    }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    /// Substitute x_v -> val, cancelling removable (x_v - val) powers first.
    /// Throws PoleAtLimit if a genuine pole survives.
    RatFunc subst(int v, const Scalar& val) const {
        if (num.is_zero()) return RatFunc();
        long num_ord = 0;
        Poly n = num;
        while (n.subst(v, val).is_zero()) {
            n = n.divexact_linear(v, val);
            ++num_ord;
        }
        long den_ord = 0;
        std::vector<std::pair<Poly, int>> stripped;
        for (auto& [f, m] : den) {
            Poly g = f;
            while (g.subst(v, val).is_zero()) {
                g = g.divexact_linear(v, val);
                den_ord += m;
            }
            if (!g.is_zero()) stripped.push_back({g, m});
        }
        if (num_ord < den_ord) throw PoleAtLimit("pole at " + std::string(var_name(v)) + " = " + val.str());
        RatFunc r;
        if (num_ord > den_ord) return RatFunc(); // limit is zero
        r.num = n.subst(v, val);
        for (auto& [g, m] : stripped) {
            Poly gs = g.subst(v, val);
            if (gs.is_zero()) throw PoleAtLimit("unexpected pole");
            r.div_by_poly(gs.pow(m));
        }
        return r;
    }

    /// q-coefficient vectors of numerator / expanded denominator, as q-free polys.
    static std::vector<Poly> q_coeffs(const Poly& p) {
        std::vector<Poly> out;
        for (auto& [k, c] : p.t) {
            auto e = Poly::exps(k);
            int d = e[0];
            if (int(out.size()) <= d) out.resize(d + 1);
            out[d].add_term(Poly::key(0, e[1], e[2], e[3]), c);
        }
        if (out.empty()) out.resize(1);
        return out;
    }
    static long q_order(const Poly& p) {
        long o = LONG_MAX;
        for (auto& [k, c] : p.t) o = std::min(o, long(Poly::exps(k)[0]));
        return o;
    }

    /// Laurent expansion at q = 0: returns coefficients of q^s for
    /// s = ord .. M, where ord = q-adic order (may be negative: a pole at 0).
    /// Coefficients are q-free rational functions in the other variables.
    std::pair<long, std::vector<RatFunc>> expand_q0(long M) const {
        if (num.is_zero()) return {0, std::vector<RatFunc>(M + 1)};
        Poly D = den_product();
        long on = q_order(num), od = q_order(D);
        long ord = on - od;
        auto nc = q_coeffs(num), dc = q_coeffs(D);
        nc.erase(nc.begin(), nc.begin() + on);
        dc.erase(dc.begin(), dc.begin() + od);
        long count = M - ord + 1;
        std::vector<RatFunc> out;
        if (count <= 0) return {ord, out};
        RatFunc d0 = RatFunc(dc[0]);
        std::vector<RatFunc> cs;
        for (long s = 0; s < count; ++s) {
            RatFunc acc = s < long(nc.size()) ? RatFunc(nc[s]) : RatFunc();
            for (long j = 1; j <= s && j < long(dc.size()); ++j)
                acc -= cs[s - j] * RatFunc(dc[j]);
            cs.push_back(acc / d0);
        }
        return {ord, cs};
    }

    /// Expansion at q = infinity in u = 1/q: f = sum_{s >= -qdeg} a_s u^s.
    /// Returns {start = -q_degree, coefficients a_start..a_M }.
    std::pair<long, std::vector<RatFunc>> expand_qinf(long M) const {
        if (num.is_zero()) return {0, std::vector<RatFunc>(M + 1)};
        auto mirror = [](const Poly& p) {
            long d = p.degree(VQ);
            Poly r;
            for (auto& [k, c] : p.t) {
                auto e = Poly::exps(k);
                r.add_term(Poly::key(int(d - e[0]), e[1], e[2], e[3]), c);
            }
            return r;
        };
        RatFunc g;
        g.num = mirror(num);
        for (auto& [f, m] : den) {
            Poly fm = mirror(f);
            g.div_by_poly(fm.pow(m));
        }
        long start = -q_degree();
        auto [ord, cs] = g.expand_q0(M - start); // g has u-order 0
        (void)ord;
        std::vector<RatFunc> out;
        for (long s = start; s <= M; ++s) {
            long idx = s - start;
            out.push_back(idx < long(cs.size()) ? cs[idx] : RatFunc());
        }
        return {start, out};
    }

    std::string str() const {
        if (num.is_zero()) return "0";
        std::ostringstream os;
        bool paren = den.size() > 0 && num.t.size() > 1;
        if (paren) os << "(" << num.str() << ")";
        else os << num.str();
        for (auto& [f, m] : den) {
            os << "/(" << f.str() << ")";
            if (m > 1) os << "^" << m;
        }
        return os.str();
    }
};

/// ParamRational is a rational function in the parameter symbols only
/// (lambda, h = sqrt(hbar), y); the loop variable q must not occur.
using ParamRational = RatFunc;

/// The three R-conventions for semi-infinite products, all telescoping with
/// step factor (1 - x q^(stride*s)):
///   ratio_R(a, x):  prod_{s=1..a} (1 - x q^s)            for a >= 0,
///                   1 / prod_{s=a+1..0} (1 - x q^s)      for a < 0.
inline RatFunc ratio_R(long a, const RatFunc& x, long stride = 1) {
    RatFunc r = RatFunc::one();
    if (a >= 0) {
        for (long s = 1; s <= a; ++s)
            r *= RatFunc::one() - x * RatFunc(Poly::var(VQ, int(s * stride)));
    } else {
        for (long s = a + 1; s <= 0; ++s) {
            long e = -s * stride; // factor (1 - x q^{-e})
            RatFunc qinv = e == 0 ? RatFunc::one()
                                  : RatFunc(Poly(Scalar(1)), Poly::var(VQ, int(e)));
            r /= RatFunc::one() - x * qinv;
        }
    }
    return r;
}

/// prod_{m=0..a-1}(1 - x q^m) for a >= 0;  1 / prod_{m=a..-1}(1 - x q^m) for a < 0.
/// (Step factor (1 - x q^a): G(a+1)/G(a) = (1 - x q^a).)
inline RatFunc ratio_G(long a, const RatFunc& x) {
    RatFunc r = RatFunc::one();
    if (a >= 0) {
        for (long m = 0; m < a; ++m)
            r *= RatFunc::one() - x * RatFunc(Poly::var(VQ, int(m)));
    } else {
        for (long m = a; m <= -1; ++m)
            r /= RatFunc::one() - x * RatFunc(Poly(Scalar(1)), Poly::var(VQ, int(-m)));
    }
    return r;
}

} // namespace qk
