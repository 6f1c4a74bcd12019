#pragma once

#include <optional>
#include <sstream>

#include "qk/jfun.hpp"

namespace qk {

/// Monomial of a finite difference operator:
///   coeff(q,l,h,y) * prod_i P_i^{e_i} * Q^a * prod_i (q^{Q_i d/dQ_i})^{b_i}.
struct ShiftMonomial {
    RatFunc coeff;
    std::vector<int> gen_exp; // e, one per generator
    std::vector<int> nov;     // a >= 0, one per Novikov variable
    std::vector<int> qshift;  // b, one per Novikov variable
};

/// Finite sum of shift monomials together with the generator restriction
/// data needed to materialize P_i-multiplication in a coefficient model.
class DifferenceOperator {
public:
    int rank = 1;
    int dim = 1;
    CoeffModel model = CoeffModel::Diagonal;
    int num_gens = 1;
    // Diagonal model: gen_values[i][p] = value of P_i at fixed point p.
    std::vector<CoeffVec> gen_values;
    std::vector<ShiftMonomial> monos;

    static DifferenceOperator for_space(const TargetSpace& X, int rank) {
        DifferenceOperator op;
        op.rank = rank;
        op.dim = X.num_points();
        op.model = CoeffModel::Diagonal;
        op.num_gens = X.k;
        for (int i = 0; i < X.k; ++i) {
            CoeffVec v;
            for (int p = 0; p < X.num_points(); ++p)
                v.emplace_back(X.gen_values[p][i]);
            op.gen_values.push_back(std::move(v));
        }
        return op;
    }
    static DifferenceOperator for_u_model(int dim) {
        DifferenceOperator op;
        op.rank = 1;
        op.dim = dim;
        op.model = CoeffModel::Nilpotent;
        op.num_gens = 1;
        return op;
    }

    /// Identity (empty product) with the same shape.
    DifferenceOperator identity_like() const {
        DifferenceOperator op = shape_clone();
        op.monos.push_back({RatFunc::one(), std::vector<int>(num_gens, 0),
                            std::vector<int>(rank, 0), std::vector<int>(rank, 0)});
        return op;
    }
    DifferenceOperator shape_clone() const {
        DifferenceOperator op = *this;
        op.monos.clear();
        return op;
    }

    void push(RatFunc c, std::vector<int> e, std::vector<int> a, std::vector<int> b) {
        if (int(e.size()) != num_gens || int(a.size()) != rank || int(b.size()) != rank)
            throw ShapeError("shift monomial shape mismatch");
        monos.push_back({std::move(c), std::move(e), std::move(a), std::move(b)});
    }

    DifferenceOperator operator+(const DifferenceOperator& o) const {
        DifferenceOperator r = *this;
        r.monos.insert(r.monos.end(), o.monos.begin(), o.monos.end());
        r.merge_like();
        return r;
    }
    DifferenceOperator operator-() const {
        DifferenceOperator r = *this;
        for (auto& m : r.monos) m.coeff = -m.coeff;
        return r;
    }
    DifferenceOperator operator-(const DifferenceOperator& o) const { return *this + (-o); }

    /// Operator composition: (A*B) s = A (B s).
    DifferenceOperator operator*(const DifferenceOperator& o) const {
        DifferenceOperator r = shape_clone();
        for (auto& m1 : monos)
            for (auto& m2 : o.monos) {
                ShiftMonomial m;
                long cross = 0;
                for (int i = 0; i < rank; ++i) cross += long(m1.qshift[i]) * m2.nov[i];
                m.coeff = m1.coeff * m2.coeff;
                if (cross > 0) m.coeff *= RatFunc(Poly::var(VQ, int(cross)));
                else if (cross < 0) m.coeff /= RatFunc(Poly::var(VQ, int(-cross)));
                m.gen_exp.resize(num_gens);
                for (int i = 0; i < num_gens; ++i) m.gen_exp[i] = m1.gen_exp[i] + m2.gen_exp[i];
                m.nov.resize(rank);
                m.qshift.resize(rank);
                for (int i = 0; i < rank; ++i) {
                    m.nov[i] = m1.nov[i] + m2.nov[i];
                    m.qshift[i] = m1.qshift[i] + m2.qshift[i];
                }
                r.monos.push_back(std::move(m));
            }
        r.merge_like();
        return r;
    }

    DifferenceOperator scaled(const RatFunc& c) const {
        DifferenceOperator r = *this;
        for (auto& m : r.monos) m.coeff = m.coeff * c;
        return r;
    }

    void merge_like() {
        std::map<std::vector<int>, RatFunc> acc;
        for (auto& m : monos) {
            std::vector<int> key;
            key.insert(key.end(), m.gen_exp.begin(), m.gen_exp.end());
            key.insert(key.end(), m.nov.begin(), m.nov.end());
            key.insert(key.end(), m.qshift.begin(), m.qshift.end());
            acc[key] += m.coeff;
        }
        std::vector<ShiftMonomial> out;
        for (auto& [key, c] : acc) {
            if (c.is_zero()) continue;
            ShiftMonomial m;
            m.coeff = c;
            m.gen_exp.assign(key.begin(), key.begin() + num_gens);
            m.nov.assign(key.begin() + num_gens, key.begin() + num_gens + rank);
            m.qshift.assign(key.begin() + num_gens + rank, key.end());
            out.push_back(std::move(m));
        }
        monos = std::move(out);
    }

    /// K-class multiplication vector for prod_i P_i^{e_i}.
    CoeffVec kvec(const std::vector<int>& e) const {
        if (model == CoeffModel::Diagonal) {
            CoeffVec v(dim, RatFunc::one());
            for (int i = 0; i < num_gens; ++i) {
                if (e[i] == 0) continue;
                for (int p = 0; p < dim; ++p) v[p] *= gen_values[i][p].pow(e[i]);
            }
            return v;
        }
        return u_power_of_P(e[0], dim);
    }

    /// Conjugation through the log-modification: an operator annihilating
    /// the normalized series P^{ln Q / ln q} J corresponds to the operator on
    /// J with every monomial's generator exponents increased by its q-shift.
    DifferenceOperator commuted_from_normalized() const {
        if (num_gens != rank) throw ShapeError("log normalization needs one generator per Novikov variable");
        DifferenceOperator r = *this;
        for (auto& m : r.monos)
            for (int i = 0; i < rank; ++i) m.gen_exp[i] += m.qshift[i];
        r.merge_like();
        return r;
    }
};

/// Apply a difference operator to a truncated series (its (1-q) flag is
/// irrelevant to linear operators and is carried through).
inline NovikovSeries apply_operator(const DifferenceOperator& op, const NovikovSeries& s) {
    if (op.rank != s.rank || op.dim != s.dim || op.model != s.model)
        throw ShapeError("operator/series shape mismatch");
    NovikovSeries out(s.rank, s.trunc, s.dim, s.model);
    out.one_minus_q_flag = s.one_minus_q_flag;
    for (auto& m : op.monos) {
        CoeffVec kv = op.kvec(m.gen_exp);
        for (auto& [d, v] : s.c) {
            MultiDegree target = d;
            long cross = 0;
            for (int i = 0; i < s.rank; ++i) {
                target.d[i] += m.nov[i];
                cross += long(m.qshift[i]) * d.d[i];
            }
            if (!target.nonneg() || target.total() > s.trunc) continue;
            RatFunc c = m.coeff;
            if (cross > 0) c *= RatFunc(Poly::var(VQ, int(cross)));
            else if (cross < 0) c /= RatFunc(Poly::var(VQ, int(-cross)));
            CoeffVec w = coeff_mul(v, kv, s.model);
            for (auto& x : w) x *= c;
            out.add_to(target, w);
        }
    }
    return out;
}

struct AnnihilationReport {
    int verified_order = 0;
    bool pass = false;
    std::vector<std::pair<MultiDegree, bool>> per_degree; // degree -> exact zero?
    std::string first_offender;                            // degree/point and coefficient
};

/// Exact per-degree zero test of (op s), optionally commuting op from its
/// log-normalized form first. Every output degree <= trunc(s) is exactly
/// computable (Novikov powers are non-negative), so the verified order is
/// the series truncation itself.
inline AnnihilationReport check_annihilation(const DifferenceOperator& op,
                                             const NovikovSeries& s, bool normalized) {
    DifferenceOperator real_op = normalized ? op.commuted_from_normalized() : op;
    NovikovSeries r = apply_operator(real_op, s);
    AnnihilationReport rep;
    rep.verified_order = s.trunc;
    rep.pass = true;
    for (auto& d : all_degrees(s.rank, s.trunc)) {
        const CoeffVec* v = r.coeff(d);
        bool zero = (v == nullptr) || coeff_is_zero(*v);
        rep.per_degree.push_back({d, zero});
        if (!zero && rep.pass) {
            rep.pass = false;
            std::ostringstream os;
            os << "degree (";
            for (size_t i = 0; i < d.d.size(); ++i) os << (i ? "," : "") << d.d[i];
            os << ")";
            for (int p = 0; p < s.dim; ++p)
                if (!(*v)[p].is_zero()) {
                    os << " slot " << p << ": " << (*v)[p].str();
                    break;
                }
            rep.first_offender = os.str();
        }
    }
    return rep;
}

struct TrivialityReport {
    bool pass = false;
    std::vector<std::pair<MultiDegree, long>> margins; // -q_degree of each d>0 coefficient
};

/// Quantum triviality hypothesis: every positive-degree coefficient of
/// f(P_i q^{Q_i d/dQ_i}) applied to the flag-excluded series must have
/// negative q-degree (margin >= 1). The margin is reported per degree.
inline TrivialityReport quantum_triviality_check(const DifferenceOperator& f,
                                                 const NovikovSeries& s) {
    NovikovSeries r = apply_operator(f, s);
    TrivialityReport rep;
    rep.pass = true;
    for (auto& [d, v] : r.c) {
        if (d.total() == 0) continue;
        long deg = coeff_q_degree(v);
        long margin = deg == QDEG_NEG_INF ? LONG_MAX : -deg;
        rep.margins.push_back({d, margin});
        if (margin < 1) rep.pass = false;
    }
    return rep;
}

/// Formal polynomial in the generators P_i and Novikov variables Q_i with
/// parameter-rational coefficients; the value of an operator symbol at q=1.
class RelPoly {
public:
    int num_gens = 0, rank = 0;
    std::map<std::vector<int>, RatFunc> t; // key = gen exponents ++ novikov exponents

    RelPoly() = default;
    RelPoly(int g, int r) : num_gens(g), rank(r) {}
    static RelPoly constant(int g, int r, const RatFunc& c) {
        RelPoly p(g, r);
        if (!c.is_zero()) p.t.emplace(std::vector<int>(g + r, 0), c);
        return p;
    }
    static RelPoly monomial(int g, int r, const RatFunc& c, std::vector<int> gexp,
                            std::vector<int> nexp) {
        RelPoly p(g, r);
        std::vector<int> key = std::move(gexp);
        key.insert(key.end(), nexp.begin(), nexp.end());
        if (!c.is_zero()) p.t.emplace(std::move(key), c);
        return p;
    }

    void add_term(const std::vector<int>& key, const RatFunc& c) {
        auto [it, ins] = t.emplace(key, c);
        if (!ins) {
            it->second += c;
            if (it->second.is_zero()) t.erase(it);
        }
    }
    RelPoly operator+(const RelPoly& o) const {
        RelPoly r = *this;
        for (auto& [k, c] : o.t) r.add_term(k, c);
        return r;
    }
    RelPoly operator-(const RelPoly& o) const {
        RelPoly r = *this;
        for (auto& [k, c] : o.t) r.add_term(k, -c);
        return r;
    }
    RelPoly operator*(const RelPoly& o) const {
        RelPoly r(num_gens, rank);
        for (auto& [k1, c1] : t)
            for (auto& [k2, c2] : o.t) {
                std::vector<int> k(k1.size());
                for (size_t i = 0; i < k.size(); ++i) k[i] = k1[i] + k2[i];
                r.add_term(k, c1 * c2);
            }
        return r;
    }
    bool is_zero() const { return t.empty(); }
    bool operator==(const RelPoly& o) const {
        if (t.size() != o.t.size()) return false;
        auto it2 = o.t.begin();
        for (auto it1 = t.begin(); it1 != t.end(); ++it1, ++it2)
            if (it1->first != it2->first || !(it1->second == it2->second)) return false;
        return true;
    }

    RelPoly subst_param(int v, const Scalar& val) const {
        RelPoly r(num_gens, rank);
        for (auto& [k, c] : t) r.add_term(k, c.subst(v, val));
        return r;
    }
    /// y -> h^{-2} substitution (y = hbar^{-1}, h = sqrt(hbar)).
    RelPoly subst_y_hinv2() const {
        RelPoly r(num_gens, rank);
        RatFunc hinv2 = RatFunc(Poly(Scalar(1)), Poly::var(VH, 2));
        for (auto& [k, c] : t) {
            // replace each y power in the coefficient
            RatFunc nc;
            {
                // c = num / prod f^m; substitute y -> 1/h^2 by clearing h-powers
                auto sub_poly = [&](const Poly& p) {
                    RatFunc acc;
                    for (auto& [key, co] : p.t) {
                        auto e = Poly::exps(key);
                        RatFunc term(Poly::monomial(co, e[0], e[1], e[2], 0));
                        term *= hinv2.pow(e[3]);
                        acc += term;
                    }
                    return acc;
                };
                nc = sub_poly(c.num);
                for (auto& [f, m] : c.den) nc /= sub_poly(f).pow(m);
            }
            r.add_term(k, nc);
        }
        return r;
    }
    /// Q_i -> c * Q_i rescale.
    RelPoly rescale_novikov(const RatFunc& cfac) const {
        RelPoly r(num_gens, rank);
        for (auto& [k, c] : t) {
            long a = 0;
            for (int i = 0; i < rank; ++i) a += k[num_gens + i];
            r.add_term(k, c * cfac.pow(a));
        }
        return r;
    }

    std::string str() const {
        if (t.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [k, c] : t) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c.str() << ")";
            for (int i = 0; i < num_gens; ++i)
                if (k[i]) os << "*P" << (i + 1) << (k[i] != 1 ? "^" + std::to_string(k[i]) : "");
            for (int i = 0; i < rank; ++i)
                if (k[num_gens + i])
                    os << "*Q" << (i + 1)
                       << (k[num_gens + i] != 1 ? "^" + std::to_string(k[num_gens + i]) : "");
        }
        return os.str();
    }
};

/// Set q = 1 in the operator symbol, replacing every block P_i q^{Q_i d/dQ_i}
/// by the (classical, triviality-certified) class P_i. Requires the operator
/// to lie in the algebra generated by these blocks and the Q_i, i.e. each
/// monomial's generator exponents equal its q-shifts.
inline RelPoly extract_relation(const DifferenceOperator& op, const TrivialityReport& cert) {
    if (!cert.pass)
        throw UnjustifiedSpecialization("quantum triviality was not verified for this operator");
    if (op.num_gens != op.rank)
        throw UnjustifiedSpecialization("operator generators do not match Novikov rank");
    RelPoly rel(op.num_gens, op.rank);
    for (auto& m : op.monos) {
        if (m.gen_exp != m.qshift)
            throw UnjustifiedSpecialization(
                "operator monomial is not a word in the shifted generators");
        RatFunc c1 = m.coeff.subst(VQ, Scalar(1)); // PoleAtLimit would contradict regularity
        rel = rel + RelPoly::monomial(op.num_gens, op.rank, c1, m.gen_exp, m.nov);
    }
    return rel;
}

} // namespace qk
