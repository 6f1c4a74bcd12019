#pragma once

#include <algorithm>
#include <memory>
#include <vector>

#include "qk/series.hpp"

namespace qk {

/// Equivariant target space in the fixed-point model. Torus characters
/// Lambda_1..Lambda_n are instantiated at generic exact rationals, so every
/// fixed-point datum is an exact Scalar and equality is exact vector equality.
class TargetSpace {
public:
    enum class Kind { Projective, ProductProjective, Grassmannian };

    Kind kind;
    int k = 1; // number of factors / subset size
    int n = 1; // P^{n-1} per factor; ambient dimension for Gr(k,n)
    std::vector<Scalar> lambda;
    std::vector<std::vector<int>> points;        // fixed-point labels (indices into lambda)
    std::vector<std::vector<Scalar>> tweights;   // tangent weights per point
    std::vector<Scalar> lefschetz_den;           // prod_w (1 - w^{-1}) per point
    std::vector<std::vector<Scalar>> gen_values; // generator P_i restriction per point

    static TargetSpace projective(int N, const std::vector<Scalar>& lam) {
        return product_projective(1, N + 1, lam);
    }

    static TargetSpace product_projective(int k, int n, const std::vector<Scalar>& lam) {
        TargetSpace X;
        X.kind = k == 1 ? Kind::Projective : Kind::ProductProjective;
        X.k = k;
        X.n = n;
        X.lambda = lam;
        std::vector<int> f(k, 0);
        while (true) {
            X.points.push_back(f);
            int pos = k - 1;
            while (pos >= 0 && ++f[pos] == n) f[pos--] = 0;
            if (pos < 0) break;
        }
        for (auto& pt : X.points) {
            std::vector<Scalar> w;
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < n; ++j)
                    if (j != pt[i]) w.push_back(lam[j] / lam[pt[i]]);
            X.tweights.push_back(w);
            std::vector<Scalar> gv(k);
            for (int i = 0; i < k; ++i) gv[i] = lam[pt[i]];
            X.gen_values.push_back(gv);
        }
        X.finish();
        return X;
    }

    static TargetSpace grassmannian(int k, int n, const std::vector<Scalar>& lam) {
        TargetSpace X;
        X.kind = Kind::Grassmannian;
        X.k = k;
        X.n = n;
        X.lambda = lam;
        std::vector<int> s(k);
        for (int i = 0; i < k; ++i) s[i] = i;
        while (true) {
            X.points.push_back(s);
            std::vector<Scalar> w;
            std::vector<bool> in(n, false);
            for (int a : s) in[a] = true;
            for (int a : s)
                for (int b = 0; b < n; ++b)
                    if (!in[b]) w.push_back(lam[b] / lam[a]);
            X.tweights.push_back(w);
            std::vector<Scalar> gv(k);
            for (int i = 0; i < k; ++i) gv[i] = lam[s[i]];
            X.gen_values.push_back(gv);
            int pos = k - 1;
            while (pos >= 0 && s[pos] == n - k + pos) --pos;
            if (pos < 0) break;
            ++s[pos];
            for (int i = pos + 1; i < k; ++i) s[i] = s[i - 1] + 1;
        }
        X.finish();
        return X;
    }

    void finish() {
        for (auto& ws : tweights) {
            Scalar d(1);
            for (auto& w : ws) {
                if (w == 1) throw DegenerateLocalization("tangent weight equals 1");
                d *= Scalar(1) - Scalar(1) / w;
            }
            lefschetz_den.push_back(d);
        }
    }

    int num_points() const { return int(points.size()); }
    int dimension() const { return tweights.empty() ? 0 : int(tweights[0].size()); }
};

/// Equivariant K-class in the fixed-point model: one value per fixed point.
struct KClass {
    const TargetSpace* X = nullptr;
    CoeffVec v;

    KClass() = default;
    KClass(const TargetSpace& sp, CoeffVec vals) : X(&sp), v(std::move(vals)) {
        if (int(v.size()) != sp.num_points()) throw ShapeError("KClass length mismatch");
    }
    static KClass one(const TargetSpace& sp) {
        CoeffVec v(sp.num_points(), RatFunc::one());
        return KClass(sp, std::move(v));
    }
    static KClass from_scalars(const TargetSpace& sp, const std::vector<Scalar>& s) {
        CoeffVec v;
        v.reserve(s.size());
        for (auto& x : s) v.emplace_back(x);
        return KClass(sp, std::move(v));
    }
    /// Generator P_i (tautological line of the i-th factor, or its analogue).
    static KClass generator(const TargetSpace& sp, int i, int power = 1) {
        CoeffVec v;
        for (int p = 0; p < sp.num_points(); ++p)
            v.emplace_back(scalar_pow(sp.gen_values[p][i], power));
        return KClass(sp, std::move(v));
    }

    KClass operator*(const KClass& o) const {
        check(o);
        KClass r = *this;
        for (size_t i = 0; i < v.size(); ++i) r.v[i] = v[i] * o.v[i];
        return r;
    }
    KClass operator+(const KClass& o) const {
        check(o);
        KClass r = *this;
        for (size_t i = 0; i < v.size(); ++i) r.v[i] = v[i] + o.v[i];
        return r;
    }
    KClass operator-(const KClass& o) const {
        check(o);
        KClass r = *this;
        for (size_t i = 0; i < v.size(); ++i) r.v[i] = v[i] - o.v[i];
        return r;
    }
    KClass scaled(const RatFunc& f) const {
        KClass r = *this;
        for (auto& x : r.v) x *= f;
        return r;
    }
    bool operator==(const KClass& o) const { return v == o.v; }
    void check(const KClass& o) const {
        if (X != o.X || v.size() != o.v.size()) throw ShapeError("KClass space mismatch");
    }
};

/// Holomorphic-Lefschetz Euler characteristic: sum over fixed points of
/// a(p) / prod_w (1 - w^{-1}).
inline RatFunc euler_characteristic(const TargetSpace& X, const KClass& a) {
    RatFunc acc;
    for (int p = 0; p < X.num_points(); ++p) {
        if (a.v[p].is_zero()) continue;
        acc += a.v[p] * (Scalar(1) / X.lefschetz_den[p]);
    }
    return acc;
}

/// Twisted Poincare pairing (a, b) = chi(X; a b C(V)).
inline RatFunc twisted_pairing(const TargetSpace& X, const KClass& a, const KClass& b,
                               const KClass& twist) {
    return euler_characteristic(X, a * b * twist);
}

namespace detail {
inline std::vector<int> sorted_multiset(const std::vector<int>& f) {
    std::vector<int> m = f;
    std::sort(m.begin(), m.end());
    return m;
}
inline bool is_injective(const std::vector<int>& f) {
    auto m = sorted_multiset(f);
    return std::adjacent_find(m.begin(), m.end()) == m.end();
}
} // namespace detail

/// Check Weyl-invariance of a class on (P^{n-1})^k: the value at f depends
/// only on the multiset f([k]). Exact comparison over all n^k points.
inline bool is_weyl_invariant(const TargetSpace& Y, const CoeffVec& vals) {
    std::map<std::vector<int>, const RatFunc*> seen;
    for (int p = 0; p < Y.num_points(); ++p) {
        auto key = detail::sorted_multiset(Y.points[p]);
        auto [it, ins] = seen.emplace(key, &vals[p]);
        if (!ins && !(*it->second == vals[p])) return false;
    }
    return true;
}

/// The specialization map phi: W-invariant classes on Y = (P^{n-1})^k to
/// classes on Gr(k,n), by restriction to injective tuples.
inline CoeffVec phi_specialize_values(const TargetSpace& Y, const TargetSpace& Gr,
                                      const CoeffVec& vals) {
    if (!is_weyl_invariant(Y, vals)) throw NotWeylInvariant("phi input is not W-invariant");
    std::map<std::vector<int>, RatFunc> by_subset;
    for (int p = 0; p < Y.num_points(); ++p) {
        if (!detail::is_injective(Y.points[p])) continue;
        by_subset.emplace(detail::sorted_multiset(Y.points[p]), vals[p]);
    }
    CoeffVec out;
    for (auto& s : Gr.points) out.push_back(by_subset.at(s));
    return out;
}

inline KClass phi_specialize(const TargetSpace& Y, const TargetSpace& Gr, const KClass& cls) {
    return KClass(Gr, phi_specialize_values(Y, Gr, cls.v));
}

/// phi_Q: collapse Q_i -> Q, specialize coefficientwise, then take the
/// lambda -> 1 limit (propagating PoleAtLimit, which signals a genuine
/// failure of W-invariance downstream).
inline NovikovSeries phi_Q(const TargetSpace& Y, const TargetSpace& Gr,
                           const NovikovSeries& s, bool lambda_limit = true) {
    if (s.dim != Y.num_points()) throw ShapeError("series does not live on Y");
    NovikovSeries collapsed = s.collapse_to_total();
    NovikovSeries out(1, s.trunc, Gr.num_points(), CoeffModel::Diagonal);
    out.one_minus_q_flag = s.one_minus_q_flag;
    for (auto& [d, v] : collapsed.c) {
        CoeffVec g = phi_specialize_values(Y, Gr, v);
        if (lambda_limit)
            for (auto& x : g) x = x.subst(VL, Scalar(1));
        out.add_to(d, g);
    }
    return out;
}

/// Eu_lambda of the root bundle sum_{i != j} P_i / P_j on Y = (P^{n-1})^k:
/// value prod_{i != j} (1 - lambda^{-1} P_j(f) / P_i(f)) at each fixed point.
inline KClass root_twist_class(const TargetSpace& Y) {
    RatFunc linv(Poly(Scalar(1)), Poly::var(VL));
    CoeffVec v;
    for (int p = 0; p < Y.num_points(); ++p) {
        RatFunc val = RatFunc::one();
        for (int i = 0; i < Y.k; ++i)
            for (int j = 0; j < Y.k; ++j) {
                if (i == j) continue;
                Scalar ratio = Y.gen_values[p][j] / Y.gen_values[p][i];
                val *= RatFunc::one() - linv * ratio;
            }
        v.push_back(val);
    }
    return KClass(Y, std::move(v));
}

/// Elementary symmetric polynomial values of a subset of lambdas.
inline Scalar elem_sym(const std::vector<Scalar>& xs, int l) {
    if (l < 0 || l > int(xs.size())) return Scalar(0);
    std::vector<Scalar> e(l + 1, Scalar(0));
    e[0] = 1;
    for (auto& x : xs)
        for (int j = l; j >= 1; --j) e[j] += e[j - 1] * x;
    return e[l];
}

/// Exterior power of the tautological subbundle S on Gr(k,n).
inline KClass wedge_S(const TargetSpace& Gr, int l) {
    CoeffVec v;
    for (auto& s : Gr.points) {
        std::vector<Scalar> xs;
        for (int a : s) xs.push_back(Gr.lambda[a]);
        v.emplace_back(elem_sym(xs, l));
    }
    return KClass(Gr, std::move(v));
}

/// Exterior power of the quotient C^n / S on Gr(k,n).
inline KClass wedge_Q(const TargetSpace& Gr, int l) {
    CoeffVec v;
    for (auto& s : Gr.points) {
        std::vector<bool> in(Gr.n, false);
        for (int a : s) in[a] = true;
        std::vector<Scalar> xs;
        for (int b = 0; b < Gr.n; ++b)
            if (!in[b]) xs.push_back(Gr.lambda[b]);
        v.emplace_back(elem_sym(xs, l));
    }
    return KClass(Gr, std::move(v));
}

} // namespace qk
