#pragma once

#include "qk/space.hpp"

namespace qk {

/// One line-bundle summand of a type-I twist: fixed-point (or u-basis)
/// restriction data, the pairing <c1(W), -> against each Novikov direction,
/// and the q-spacing of the Euler factors (stride 1 except for the
/// degree-l hypersurface factors, whose factors sit at q^{l s}).
struct TwistSummand {
    CoeffVec values;        // restriction of W per coefficient slot
    std::vector<int> pairing; // <c1(W), d> coefficients, one per Novikov variable
    int qstride = 1;
};

struct TwistSpec {
    enum class Kind { EulerClass, InverseEulerOfDual, LevelStructure };
    Kind kind;
    int level = 0; // LevelStructure only
    std::vector<TwistSummand> bundle;
};

namespace jdetail {
/// 1 / prod_{j=1..n} prod_{m=1..d} (1 - q^m lam_i/lam_j)
inline RatFunc proj_block(const std::vector<Scalar>& lam, const Scalar& li, int d) {
    RatFunc r = RatFunc::one();
    for (auto& lj : lam)
        for (int m = 1; m <= d; ++m)
            r /= RatFunc::one() - RatFunc(Poly::monomial(li / lj, m));
    return r;
}
} // namespace jdetail

/// Small J-function of P^N (equivariant, untwisted); the (1-q) prefactor is
/// carried as a flag and never multiplied in.
inline NovikovSeries j_projective(const TargetSpace& X, int trunc) {
    NovikovSeries s(1, trunc, X.num_points());
    for (int d = 0; d <= trunc; ++d) {
        CoeffVec v;
        for (int p = 0; p < X.num_points(); ++p)
            v.push_back(jdetail::proj_block(X.lambda, X.gen_values[p][0], d));
        s.set(MultiDegree({d}), std::move(v));
    }
    return s;
}

/// Small J-function of P^N with level structure (P = O(-1), level l):
/// degree-d numerator P^{l d} q^{l C(d,2)}.
inline NovikovSeries j_projective_level(const TargetSpace& X, int level, int trunc) {
    NovikovSeries s(1, trunc, X.num_points());
    for (int d = 0; d <= trunc; ++d) {
        CoeffVec v;
        long qe = long(level) * choose2(d);
        for (int p = 0; p < X.num_points(); ++p) {
            RatFunc c = jdetail::proj_block(X.lambda, X.gen_values[p][0], d);
            c *= RatFunc(scalar_pow(X.gen_values[p][0], long(level) * d));
            if (qe >= 0) c *= RatFunc(Poly::var(VQ, int(qe)));
            else c /= RatFunc(Poly::var(VQ, int(-qe)));
            v.push_back(c);
        }
        s.set(MultiDegree({d}), std::move(v));
    }
    return s;
}

// ---------------------------------------------------------------------------
// Non-equivariant model of K(P^N) = Q[P]/(1-P)^{N+1}: coefficients are
// vectors in the basis 1, u, .., u^N with u = 1-P, and every 1/(1-P q^m) is
// expanded as sum_s q^{ms} (-u)^s / (1-q^m)^{s+1} (finitely many terms).
// ---------------------------------------------------------------------------

/// (1-u)^e truncated to u-order < dim (e may be negative).
inline CoeffVec u_power_of_P(int e, int dim) {
    CoeffVec out(dim);
    if (e >= 0) {
        for (int s = 0; s <= std::min(e, dim - 1); ++s)
            out[s] = RatFunc(Scalar((s % 2 ? -1 : 1) * binomial(e, s)));
    } else {
        // (1-u)^{-m} = sum_s C(m+s-1, s) u^s
        long m = -e;
        for (int s = 0; s < dim; ++s)
            out[s] = RatFunc(Scalar(binomial(m + s - 1, s)));
    }
    return out;
}

/// 1 / (1 - P q^m) expanded in u: sum_s q^{ms} (-1)^s u^s / (1-q^m)^{s+1}.
inline CoeffVec u_inv_one_minus_Pq(int m, int dim) {
    CoeffVec out(dim);
    RatFunc base = RatFunc::one() - RatFunc(Poly::var(VQ, m));
    for (int s = 0; s < dim; ++s) {
        RatFunc c(Poly::monomial(Scalar(s % 2 ? -1 : 1), m * s));
        out[s] = c / base.pow(s + 1);
    }
    return out;
}

/// (1 - c P^e q^j) in u-coordinates (c a coefficient ring element).
inline CoeffVec u_one_minus_cPq(const RatFunc& c, int e, int j, int dim) {
    CoeffVec out = u_power_of_P(e, dim);
    RatFunc f = c * RatFunc(Poly::var(VQ, j));
    for (auto& x : out) x = -(x * f);
    out[0] += RatFunc::one();
    return out;
}

/// Non-equivariant small J-function of P^N in the u-model.
inline NovikovSeries j_projective_u(int N, int trunc) {
    int dim = N + 1;
    NovikovSeries s(1, trunc, dim, CoeffModel::Nilpotent);
    for (int d = 0; d <= trunc; ++d) {
        CoeffVec v(dim);
        v[0] = RatFunc::one();
        for (int m = 1; m <= d; ++m) {
            CoeffVec f = u_inv_one_minus_Pq(m, dim);
            for (int rep = 0; rep < N + 1; ++rep) v = coeff_mul(v, f, CoeffModel::Nilpotent);
        }
        s.set(MultiDegree({d}), std::move(v));
    }
    return s;
}

/// I-function of a complete intersection of degrees l_1..l_r in P^N
/// (non-equivariant u-model, hypersurface class P = O(1), twisting parameter
/// lambda): degree-d factor prod_i prod_{s=1..d} (1 - lambda P^{l_i} q^{l_i s}).
inline NovikovSeries i_complete_intersection(int N, const std::vector<int>& degrees, int trunc) {
    for (int l : degrees)
        if (l < 1) throw ShapeError("complete intersection degrees must be >= 1");
    int dim = N + 1;
    NovikovSeries s = j_projective_u(N, trunc);
    RatFunc lam = RatFunc::var(VL);
    NovikovSeries out(1, trunc, dim, CoeffModel::Nilpotent);
    for (auto& [d, v] : s.c) {
        CoeffVec w = v;
        for (int l : degrees)
            for (int step = 1; step <= d.d[0]; ++step)
                w = coeff_mul(w, u_one_minus_cPq(lam, l, l * step, dim), CoeffModel::Nilpotent);
        out.set(d, std::move(w));
    }
    return out;
}

/// Closed form for the q-degree of the degree-d coefficient of the
/// complete-intersection I-function: (d/2)(d(sum l_i - (N+1)) + sum l_i - (N+1)).
inline Scalar ci_degree_closed_form(int N, const std::vector<int>& degrees, int d) {
    long sl = 0;
    for (int l : degrees) sl += l;
    return Scalar(d) * (Scalar(d) * (sl - (N + 1)) + Scalar(sl - (N + 1))) / 2;
}

/// q-degree of a u-model coefficient vector: max over coordinates.
inline long coeff_q_degree(const CoeffVec& v) {
    long d = QDEG_NEG_INF;
    for (auto& x : v)
        if (!x.is_zero()) d = std::max(d, x.q_degree());
    return d;
}

/// J-function of Gr(k,n) (single Novikov variable): at the subset fixed point
/// S, the degree-d coefficient sums the displayed product over compositions
/// d_1+..+d_k = d with P_i -> Lambda_{a_i}.
inline NovikovSeries j_grassmannian(const TargetSpace& Gr, int trunc) {
    int k = Gr.k;
    NovikovSeries s(1, trunc, Gr.num_points());
    for (int D = 0; D <= trunc; ++D) {
        CoeffVec v(Gr.num_points());
        auto comps = all_degrees(k, D, D);
        for (int p = 0; p < Gr.num_points(); ++p) {
            RatFunc total;
            for (auto& dd : comps) {
                RatFunc term = RatFunc::one();
                for (int i = 0; i < k; ++i)
                    term *= jdetail::proj_block(Gr.lambda, Gr.gen_values[p][i], dd.d[i]);
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j) {
                        if (i == j) continue;
                        RatFunc x(Gr.gen_values[p][i] / Gr.gen_values[p][j]);
                        term *= ratio_R(dd.d[i] - dd.d[j], x);
                    }
                total += term;
            }
            v[p] = total;
        }
        s.set(MultiDegree({D}), std::move(v));
    }
    return s;
}

/// Abelianized twisted J-function on Y = (P^{n-1})^k: k Novikov variables,
/// root factors R(d_i - d_j, lambda P_i/P_j) with lambda symbolic.
inline NovikovSeries jbar_abelianized(const TargetSpace& Y, int trunc) {
    int k = Y.k;
    NovikovSeries s(k, trunc, Y.num_points());
    RatFunc lam = RatFunc::var(VL);
    for (auto& dd : all_degrees(k, trunc)) {
        CoeffVec v(Y.num_points());
        for (int p = 0; p < Y.num_points(); ++p) {
            RatFunc term = RatFunc::one();
            for (int i = 0; i < k; ++i)
                term *= jdetail::proj_block(Y.lambda, Y.gen_values[p][i], dd.d[i]);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) {
                    if (i == j) continue;
                    RatFunc x = lam * (Y.gen_values[p][i] / Y.gen_values[p][j]);
                    term *= ratio_R(dd.d[i] - dd.d[j], x);
                }
            v[p] = term;
        }
        s.set(dd, std::move(v));
    }
    return s;
}

/// Degree lemma value: deg J_d = sum_i ( sum_j C(d_i-d_j+1, 2) - n C(d_i+1, 2) ).
inline long jbar_degree_formula(int n, const MultiDegree& d) {
    long total = 0;
    for (int i = 0; i < d.rank(); ++i) {
        for (int j = 0; j < d.rank(); ++j) total += choose2(d.d[i] - d.d[j] + 1);
        total -= long(n) * choose2(d.d[i] + 1);
    }
    return total;
}

/// Quasimap vertex of T*P^N in the rescaled form \hat I (no hbar prefactor):
/// degree-d coefficient prod_j [prod_{m=0..d-1}(1 - q^m y P/Lam_j)] /
/// [prod_{m=1..d}(1 - q^m P/Lam_j)]. The nu-form prefactor is h^{-(N+1)d}
/// with h = sqrt(hbar), reported by vertex_prefactor_h_exponent.
inline NovikovSeries vertex_tstar_pn(const TargetSpace& X, int trunc) {
    NovikovSeries s(1, trunc, X.num_points());
    RatFunc y = RatFunc::var(VY);
    for (int d = 0; d <= trunc; ++d) {
        CoeffVec v;
        for (int p = 0; p < X.num_points(); ++p) {
            RatFunc c = jdetail::proj_block(X.lambda, X.gen_values[p][0], d);
            for (auto& lj : X.lambda)
                for (int m = 0; m < d; ++m)
                    c *= RatFunc::one() -
                         y * RatFunc(Poly::monomial(X.gen_values[p][0] / lj, m));
            v.push_back(c);
        }
        s.set(MultiDegree({d}), std::move(v));
    }
    return s;
}
inline long vertex_prefactor_h_exponent(int N, int d) { return -long(N + 1) * d; }

/// Generic type-I twist transformer acting on degree-d coefficients.
inline NovikovSeries apply_twist(const NovikovSeries& s, const TwistSpec& tw) {
    NovikovSeries out(s.rank, s.trunc, s.dim, s.model);
    out.one_minus_q_flag = s.one_minus_q_flag;
    RatFunc lam = RatFunc::var(VL);
    for (auto& [d, v] : s.c) {
        CoeffVec w = v;
        for (auto& sm : tw.bundle) {
            if (int(sm.pairing.size()) != s.rank) throw ShapeError("twist pairing rank mismatch");
            long a = 0;
            for (int i = 0; i < s.rank; ++i) a += long(sm.pairing[i]) * d.d[i];
            if (s.model == CoeffModel::Diagonal) {
                CoeffVec f(s.dim);
                for (int p = 0; p < s.dim; ++p) {
                    switch (tw.kind) {
                    case TwistSpec::Kind::EulerClass: {
                        if (a % sm.qstride != 0) throw ShapeError("twist pairing not a stride multiple");
                        f[p] = ratio_R(a / sm.qstride, lam * sm.values[p], sm.qstride);
                        break;
                    }
                    case TwistSpec::Kind::InverseEulerOfDual: {
                        f[p] = ratio_G(a, lam * sm.values[p].inverse());
                        break;
                    }
                    case TwistSpec::Kind::LevelStructure: {
                        long e = -a * tw.level;
                        RatFunc c = sm.values[p].pow(e);
                        long qe = long(tw.level) * choose2(a + 1);
                        if (qe >= 0) c *= RatFunc(Poly::var(VQ, int(qe)));
                        else c /= RatFunc(Poly::var(VQ, int(-qe)));
                        f[p] = c;
                        break;
                    }
                    }
                }
                w = coeff_mul(w, f, s.model);
            } else {
                // u-model: the summand is P^rho with rho = pairing (hypersurface
                // class); only the EulerClass twist is used here.
                if (tw.kind != TwistSpec::Kind::EulerClass)
                    throw ShapeError("only Euler twists are defined in the u-model");
                if (a % sm.qstride != 0) throw ShapeError("twist pairing not a stride multiple");
                long steps = a / sm.qstride;
                if (steps < 0) throw ShapeError("negative Euler pairing in the u-model");
                int e = sm.pairing[0]; // P-power of the summand
                for (long st = 1; st <= steps; ++st)
                    w = coeff_mul(w, u_one_minus_cPq(lam, e, int(st) * sm.qstride, s.dim),
                                  CoeffModel::Nilpotent);
            }
        }
        out.set(d, std::move(w));
    }
    return out;
}

} // namespace qk
