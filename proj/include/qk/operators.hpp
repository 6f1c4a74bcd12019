#pragma once

#include "qk/qdiff.hpp"

namespace qk {

namespace opdetail {
/// (c0 + c1 * P^e Q^a q^{bE}) as an operator with the given shape.
inline DifferenceOperator binomial_factor(const DifferenceOperator& shape, const RatFunc& c0,
                                          const RatFunc& c1, std::vector<int> e,
                                          std::vector<int> a, std::vector<int> b) {
    DifferenceOperator f = shape.shape_clone();
    if (!c0.is_zero())
        f.push(c0, std::vector<int>(shape.num_gens, 0), std::vector<int>(shape.rank, 0),
               std::vector<int>(shape.rank, 0));
    if (!c1.is_zero()) f.push(c1, std::move(e), std::move(a), std::move(b));
    return f;
}
} // namespace opdetail

/// Normalized level-structure operator of P^N (Prop form):
///   prod_i (1 - Lambda_i^{-1} q^{Q d/dQ})  -  Q q^{l Q d/dQ}.
/// It annihilates the log-modified J-series; pass normalized=true to
/// check_annihilation, which commutes it to
///   prod_i (1 - (P/Lambda_i) q^{Q d/dQ}) - Q P^l q^{l Q d/dQ}.
inline DifferenceOperator level_operator_normalized(const TargetSpace& X, int level) {
    DifferenceOperator shape = DifferenceOperator::for_space(X, 1);
    DifferenceOperator lhs = shape.identity_like();
    for (auto& lam : X.lambda)
        lhs = lhs * opdetail::binomial_factor(shape, RatFunc::one(),
                                              -RatFunc(Scalar(1) / lam), {0}, {0}, {1});
    DifferenceOperator rhs = shape.shape_clone();
    rhs.push(RatFunc::one(), {0}, {1}, {level});
    return lhs - rhs;
}

/// Target relation prod_i (1 - P/Lambda_i) = Q P^l as a formal polynomial.
inline RelPoly level_relation_target(const TargetSpace& X, int level) {
    RelPoly lhs = RelPoly::constant(1, 1, RatFunc::one());
    for (auto& lam : X.lambda) {
        RelPoly f = RelPoly::constant(1, 1, RatFunc::one()) -
                    RelPoly::monomial(1, 1, RatFunc(Scalar(1) / lam), {1}, {0});
        lhs = lhs * f;
    }
    return lhs - RelPoly::monomial(1, 1, RatFunc::one(), {level}, {1});
}

/// Complete-intersection operator in the non-equivariant u-model:
///   (1 - P q^{Q d/dQ})^{N+1} - prod_i (1 - lambda P^{l_i} q^{l_i Q d/dQ}) Q.
inline DifferenceOperator ci_operator(int N, const std::vector<int>& degrees) {
    DifferenceOperator shape = DifferenceOperator::for_u_model(N + 1);
    DifferenceOperator lhs = shape.identity_like();
    DifferenceOperator fac =
        opdetail::binomial_factor(shape, RatFunc::one(), -RatFunc::one(), {1}, {0}, {1});
    for (int i = 0; i < N + 1; ++i) lhs = lhs * fac;
    DifferenceOperator rhs = shape.identity_like();
    RatFunc lam = RatFunc::var(VL);
    for (int l : degrees)
        rhs = rhs * opdetail::binomial_factor(shape, RatFunc::one(), -lam, {l}, {0}, {l});
    DifferenceOperator q_op = shape.shape_clone();
    q_op.push(RatFunc::one(), {0}, {1}, {0});
    return lhs - rhs * q_op;
}

/// Target relation (1-P)^{N+1} = Q prod_i (1 - lambda P^{l_i}).
inline RelPoly ci_relation_target(int N, const std::vector<int>& degrees) {
    RelPoly one = RelPoly::constant(1, 1, RatFunc::one());
    RelPoly lhs = one;
    RelPoly f = one - RelPoly::monomial(1, 1, RatFunc::one(), {1}, {0});
    for (int i = 0; i < N + 1; ++i) lhs = lhs * f;
    RelPoly rhs = RelPoly::monomial(1, 1, RatFunc::one(), {0}, {1});
    RatFunc lam = RatFunc::var(VL);
    for (int l : degrees) rhs = rhs * (one - RelPoly::monomial(1, 1, lam, {l}, {0}));
    return lhs - rhs;
}

/// Per-i abelianized q-difference operator on Y = (P^{n-1})^k:
///   prod_{j != i} (1 - lambda q (P_j/P_i) q^{E_j - E_i})
///     * prod_a (1 - (P_i/Lambda_a) q^{E_i})
///   - Q_i prod_{j != i} (1 - lambda q (P_i/P_j) q^{E_i - E_j}).
inline DifferenceOperator abelianized_operator(const TargetSpace& Y, int i) {
    int k = Y.k;
    DifferenceOperator shape = DifferenceOperator::for_space(Y, k);
    RatFunc lq = RatFunc::var(VL) * RatFunc(Poly::var(VQ));
    auto evec = [&](int plus, int minus) {
        std::vector<int> e(k, 0);
        e[plus] += 1;
        e[minus] -= 1;
        return e;
    };
    DifferenceOperator lhs = shape.identity_like();
    for (int j = 0; j < k; ++j) {
        if (j == i) continue;
        std::vector<int> b(k, 0);
        b[j] = 1;
        b[i] = -1;
        lhs = lhs * opdetail::binomial_factor(shape, RatFunc::one(), -lq, evec(j, i),
                                              std::vector<int>(k, 0), b);
    }
    for (auto& lam : Y.lambda) {
        std::vector<int> e(k, 0), b(k, 0);
        e[i] = 1;
        b[i] = 1;
        lhs = lhs * opdetail::binomial_factor(shape, RatFunc::one(),
                                              -RatFunc(Scalar(1) / lam), e,
                                              std::vector<int>(k, 0), b);
    }
    DifferenceOperator rhs = shape.identity_like();
    for (int j = 0; j < k; ++j) {
        if (j == i) continue;
        std::vector<int> b(k, 0);
        b[i] = 1;
        b[j] = -1;
        rhs = rhs * opdetail::binomial_factor(shape, RatFunc::one(), -lq, evec(i, j),
                                              std::vector<int>(k, 0), b);
    }
    DifferenceOperator qi = shape.shape_clone();
    std::vector<int> a(k, 0);
    a[i] = 1;
    qi.push(RatFunc::one(), std::vector<int>(k, 0), a, std::vector<int>(k, 0));
    return lhs - qi * rhs;
}

/// Target relation, denominators cleared:
///   prod_{j != i}(1 - lambda P_j/P_i) prod_a (1 - P_i/Lambda_a)
///     = Q_i prod_{j != i} (1 - lambda P_i/P_j).
inline RelPoly abelianized_relation_target(const TargetSpace& Y, int i) {
    int k = Y.k;
    RelPoly one = RelPoly::constant(k, k, RatFunc::one());
    RatFunc lam = RatFunc::var(VL);
    auto evec = [&](int plus, int minus) {
        std::vector<int> e(k, 0);
        e[plus] += 1;
        e[minus] -= 1;
        return e;
    };
    RelPoly lhs = one;
    for (int j = 0; j < k; ++j)
        if (j != i) lhs = lhs * (one - RelPoly::monomial(k, k, lam, evec(j, i), std::vector<int>(k, 0)));
    for (auto& la : Y.lambda) {
        std::vector<int> e(k, 0);
        e[i] = 1;
        lhs = lhs * (one - RelPoly::monomial(k, k, RatFunc(Scalar(1) / la), e, std::vector<int>(k, 0)));
    }
    RelPoly rhs = one;
    for (int j = 0; j < k; ++j)
        if (j != i) rhs = rhs * (one - RelPoly::monomial(k, k, lam, evec(i, j), std::vector<int>(k, 0)));
    std::vector<int> a(k, 0);
    a[i] = 1;
    rhs = rhs * RelPoly::monomial(k, k, RatFunc::one(), std::vector<int>(k, 0), a);
    return lhs - rhs;
}

/// T*P^N difference operator pair acting on the rescaled vertex \hat I:
///   lhs = prod_j (1 - (P/Lambda_j) q^E),
///   rhs = Q prod_j (1 - y q (P/Lambda_j) q^E),
/// valid as lhs(D \hat I) = rhs(D \hat I) with D = prod_j (1 - y (P/Lambda_j) q^E);
/// the single annihilator of \hat I is (lhs - rhs) * D.
struct TstarOperators {
    DifferenceOperator lhs, rhs, conjugator, annihilator;
};
inline TstarOperators tstar_operators(const TargetSpace& X) {
    DifferenceOperator shape = DifferenceOperator::for_space(X, 1);
    RatFunc y = RatFunc::var(VY);
    RatFunc yq = y * RatFunc(Poly::var(VQ));
    DifferenceOperator lhs = shape.identity_like();
    DifferenceOperator rhs = shape.identity_like();
    DifferenceOperator conj = shape.identity_like();
    for (auto& lam : X.lambda) {
        RatFunc linv(Scalar(1) / lam);
        lhs = lhs * opdetail::binomial_factor(shape, RatFunc::one(), -linv, {1}, {0}, {1});
        rhs = rhs * opdetail::binomial_factor(shape, RatFunc::one(), -yq * linv, {1}, {0}, {1});
        conj = conj * opdetail::binomial_factor(shape, RatFunc::one(), -y * linv, {1}, {0}, {1});
    }
    DifferenceOperator q_op = shape.shape_clone();
    q_op.push(RatFunc::one(), {0}, {1}, {0});
    TstarOperators ops;
    ops.lhs = lhs;
    ops.rhs = q_op * rhs;
    ops.conjugator = conj;
    ops.annihilator = (lhs - ops.rhs) * conj;
    return ops;
}

/// Extracted T*P^N relation: prod_j (1 - P/Lambda_j) - Q prod_j (1 - y P/Lambda_j).
inline RelPoly tstar_relation_target(const TargetSpace& X) {
    RelPoly one = RelPoly::constant(1, 1, RatFunc::one());
    RatFunc y = RatFunc::var(VY);
    RelPoly lhs = one, rhs = RelPoly::monomial(1, 1, RatFunc::one(), {0}, {1});
    for (auto& lam : X.lambda) {
        RatFunc linv(Scalar(1) / lam);
        lhs = lhs * (one - RelPoly::monomial(1, 1, linv, {1}, {0}));
        rhs = rhs * (one - RelPoly::monomial(1, 1, y * linv, {1}, {0}));
    }
    return lhs - rhs;
}

/// Single monomial P_i q^{Q_i d/dQ_i} (the quantum-triviality test operator).
inline DifferenceOperator shifted_generator(const DifferenceOperator& shape, int i) {
    DifferenceOperator f = shape.shape_clone();
    std::vector<int> e(shape.num_gens, 0), b(shape.rank, 0);
    e[i] = 1;
    b[i] = 1;
    f.push(RatFunc::one(), e, std::vector<int>(shape.rank, 0), b);
    return f;
}

/// Elementary symmetric polynomial e_l of the shifted generators.
inline DifferenceOperator elementary_shifted(const DifferenceOperator& shape, int l) {
    int k = shape.num_gens;
    DifferenceOperator acc = shape.shape_clone();
    std::vector<int> idx(l);
    std::function<void(int, int)> rec = [&](int start, int pos) {
        if (pos == l) {
            DifferenceOperator m = shape.identity_like();
            for (int t = 0; t < l; ++t) m = m * shifted_generator(shape, idx[t]);
            acc = acc + m;
            return;
        }
        for (int i = start; i < k; ++i) {
            idx[pos] = i;
            rec(i + 1, pos + 1);
        }
    };
    if (l == 0) return shape.identity_like();
    rec(0, 0);
    return acc;
}

} // namespace qk
