#pragma once

#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include "qk/ratfunc.hpp"

namespace qk {

/// Exponent vector of a Novikov monomial Q_1^{d_1} ... Q_k^{d_k}.
struct MultiDegree {
    std::vector<int> d;

    MultiDegree() = default;
    explicit MultiDegree(std::vector<int> v) : d(std::move(v)) {}
    static MultiDegree zero(int rank) { return MultiDegree(std::vector<int>(rank, 0)); }
    static MultiDegree unit(int rank, int i) {
        MultiDegree m = zero(rank);
        m.d[i] = 1;
        return m;
    }

    int rank() const { return int(d.size()); }
    int total() const { return std::accumulate(d.begin(), d.end(), 0); }
    bool operator<(const MultiDegree& o) const { return d < o.d; }
    bool operator==(const MultiDegree& o) const { return d == o.d; }
    MultiDegree operator+(const MultiDegree& o) const {
        MultiDegree r = *this;
        for (size_t i = 0; i < d.size(); ++i) r.d[i] += o.d[i];
        return r;
    }
    bool nonneg() const {
        for (int x : d)
            if (x < 0) return false;
        return true;
    }
};

/// How coefficient vectors multiply.
///  Diagonal:  one slot per torus fixed point; products are entrywise.
///  Nilpotent: slots are coordinates in the basis 1, u, ..., u^{m-1} of
///             Q[u]/(u^m); products are truncated convolution. Used for the
///             non-equivariant model K(P^N) = Q[P]/(1-P)^{N+1}, u = 1-P.
enum class CoeffModel { Diagonal, Nilpotent };

using CoeffVec = std::vector<RatFunc>;

inline CoeffVec coeff_mul(const CoeffVec& a, const CoeffVec& b, CoeffModel model) {
    if (a.size() != b.size()) throw ShapeError("coefficient dimension mismatch");
    size_t m = a.size();
    CoeffVec r(m);
    if (model == CoeffModel::Diagonal) {
        for (size_t i = 0; i < m; ++i)
            if (!a[i].is_zero() && !b[i].is_zero()) r[i] = a[i] * b[i];
    } else {
        for (size_t i = 0; i < m; ++i) {
            if (a[i].is_zero()) continue;
            for (size_t j = 0; i + j < m; ++j)
                if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

inline bool coeff_is_zero(const CoeffVec& v) {
    for (auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

/// Truncated formal power series in the Novikov variables with coefficient
/// vectors of RatFunc entries. Absent degrees are zero. Values are immutable
/// in spirit: operations return new series.
class NovikovSeries {
public:
    int rank = 1;          // number of Novikov variables
    int trunc = 0;         // truncation order in total degree
    int dim = 1;           // coefficient vector length
    CoeffModel model = CoeffModel::Diagonal;
    bool one_minus_q_flag = true; // the (1-q) prefactor, never multiplied in
    std::map<MultiDegree, CoeffVec> c;

    NovikovSeries() = default;
    NovikovSeries(int rank_, int trunc_, int dim_, CoeffModel model_ = CoeffModel::Diagonal)
        : rank(rank_), trunc(trunc_), dim(dim_), model(model_) {}

    static NovikovSeries unit(int rank, int trunc, int dim,
                              CoeffModel model = CoeffModel::Diagonal) {
        NovikovSeries s(rank, trunc, dim, model);
        CoeffVec v(dim);
        if (model == CoeffModel::Diagonal)
            for (auto& x : v) x = RatFunc::one();
        else
            v[0] = RatFunc::one();
        s.c.emplace(MultiDegree::zero(rank), std::move(v));
        return s;
    }

    const CoeffVec* coeff(const MultiDegree& d) const {
        auto it = c.find(d);
        return it == c.end() ? nullptr : &it->second;
    }
    CoeffVec coeff_or_zero(const MultiDegree& d) const {
        auto it = c.find(d);
        return it == c.end() ? CoeffVec(dim) : it->second;
    }

    void set(const MultiDegree& d, CoeffVec v) {
        if (d.total() > trunc || !d.nonneg()) throw ShapeError("degree outside truncation");
        if (int(v.size()) != dim) throw ShapeError("coefficient dimension mismatch");
        if (coeff_is_zero(v)) c.erase(d);
        else c[d] = std::move(v);
    }
    void add_to(const MultiDegree& d, const CoeffVec& v) {
        if (d.total() > trunc) return;
        auto it = c.find(d);
        if (it == c.end()) {
            if (!coeff_is_zero(v)) c.emplace(d, v);
            return;
        }
        for (int i = 0; i < dim; ++i) it->second[i] += v[i];
        if (coeff_is_zero(it->second)) c.erase(it);
    }

    NovikovSeries operator+(const NovikovSeries& o) const {
        require_shape(o);
        NovikovSeries r = *this;
        r.trunc = std::min(trunc, o.trunc);
        for (auto it = r.c.begin(); it != r.c.end();)
            it = it->first.total() > r.trunc ? r.c.erase(it) : std::next(it);
        for (auto& [d, v] : o.c)
            if (d.total() <= r.trunc) r.add_to(d, v);
        return r;
    }
    NovikovSeries operator-(const NovikovSeries& o) const {
        NovikovSeries n = o;
        for (auto& [d, v] : n.c)
            for (auto& x : v) x = -x;
        return *this + n;
    }

    /// Entrywise (fixed-point diagonal) or truncated-convolution product,
    /// with Novikov convolution over multidegrees.
    friend NovikovSeries series_mul(const NovikovSeries& a, const NovikovSeries& b) {
        a.require_shape(b);
        NovikovSeries r(a.rank, std::min(a.trunc, b.trunc), a.dim, a.model);
        for (auto& [da, va] : a.c) {
            if (da.total() > r.trunc) continue;
            for (auto& [db, vb] : b.c) {
                MultiDegree d = da + db;
                if (d.total() > r.trunc) continue;
                r.add_to(d, coeff_mul(va, vb, a.model));
            }
        }
        return r;
    }

    /// Multiply every coefficient by a fixed vector (K-class multiplication).
    NovikovSeries scaled_by(const CoeffVec& v) const {
        NovikovSeries r(rank, trunc, dim, model);
        r.one_minus_q_flag = one_minus_q_flag;
        for (auto& [d, w] : c) r.add_to(d, coeff_mul(w, v, model));
        return r;
    }
    NovikovSeries scaled_by(const RatFunc& f) const {
        NovikovSeries r(rank, trunc, dim, model);
        r.one_minus_q_flag = one_minus_q_flag;
        for (auto& [d, w] : c) {
            CoeffVec v = w;
            for (auto& x : v) x *= f;
            r.add_to(d, v);
        }
        return r;
    }

    bool is_zero() const { return c.empty(); }

    /// Substitute a parameter symbol (never q) in every coefficient.
    NovikovSeries param_subst(int v, const Scalar& val) const {
        NovikovSeries r(rank, trunc, dim, model);
        r.one_minus_q_flag = one_minus_q_flag;
        for (auto& [d, w] : c) {
            CoeffVec nv(dim);
            for (int i = 0; i < dim; ++i) nv[i] = w[i].subst(v, val);
            r.add_to(d, nv);
        }
        return r;
    }

    /// Collapse Q_1..Q_k -> Q (sum coefficients over equal total degree).
    NovikovSeries collapse_to_total() const {
        NovikovSeries r(1, trunc, dim, model);
        r.one_minus_q_flag = one_minus_q_flag;
        for (auto& [d, w] : c) r.add_to(MultiDegree({d.total()}), w);
        return r;
    }

    void require_shape(const NovikovSeries& o) const {
        if (rank != o.rank) throw ShapeError("Novikov rank mismatch");
        if (dim != o.dim) throw ShapeError("fixed-point dimension mismatch");
        if (model != o.model) throw ShapeError("coefficient model mismatch");
    }

    /// All stored degrees, sorted by (total, lex).
    std::vector<MultiDegree> degrees() const {
        std::vector<MultiDegree> out;
        for (auto& [d, v] : c) out.push_back(d);
        std::sort(out.begin(), out.end(), [](const MultiDegree& a, const MultiDegree& b) {
            if (a.total() != b.total()) return a.total() < b.total();
            return a.d < b.d;
        });
        return out;
    }
};

/// All multidegrees of the given rank with total degree exactly t.
inline void compositions(int rank, int t, std::vector<MultiDegree>& out,
                         std::vector<int>& cur, int pos = 0) {
    if (pos == rank - 1) {
        cur[pos] = t;
        out.push_back(MultiDegree(cur));
        return;
    }
    for (int v = 0; v <= t; ++v) {
        cur[pos] = v;
        compositions(rank, t - v, out, cur, pos + 1);
    }
}
inline std::vector<MultiDegree> all_degrees(int rank, int max_total, int min_total = 0) {
    std::vector<MultiDegree> out;
    std::vector<int> cur(rank, 0);
    for (int t = min_total; t <= max_total; ++t) compositions(rank, t, out, cur);
    return out;
}

} // namespace qk
