#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qk/ratfunc.hpp"
#include "qk/series.hpp"

using namespace qk;

namespace {

RatFunc one_minus_q() { return RatFunc::one() - RatFunc(Poly::var(VQ)); }

/// Deterministic random rational functions: small Laurent-free polynomials
/// over random small rationals divided by products of (1 - c q^m) factors.
struct Rng {
    std::mt19937_64 g;
    explicit Rng(uint64_t seed) : g(seed) {}
    int uniform(int lo, int hi) { return int(g() % uint64_t(hi - lo + 1)) + lo; }
    Scalar rational() {
        int num = uniform(-6, 6);
        int den = uniform(1, 5);
        return Scalar(num, den);
    }
    Poly poly(int maxdeg) {
        Poly p;
        int terms = uniform(1, 3);
        for (int t = 0; t < terms; ++t)
            p += Poly::monomial(rational(), uniform(0, maxdeg), uniform(0, 1));
        return p;
    }
    RatFunc ratfunc() {
        RatFunc r(poly(3));
        int nf = uniform(0, 2);
        for (int i = 0; i < nf; ++i) {
            Poly f = RatFunc::one().num - Poly::monomial(Scalar(uniform(1, 3)), uniform(1, 3));
            if (!f.is_constant()) r.div_by_poly(f);
        }
        return r;
    }
};

} // namespace

TEST_CASE("qrat arithmetic on the spec examples") {
    RatFunc inv = RatFunc::one() / one_minus_q();
    SECTION("1/(1-q) * (1-q) = 1") { REQUIRE((inv * one_minus_q()).is_one()); }
    SECTION("q_degree(1/(1-q)^2) = -2") {
        RatFunc f = RatFunc::one() / (one_minus_q() * one_minus_q());
        REQUIRE(f.q_degree() == -2);
    }
    SECTION("1/(1-q) + 1/(1-q) = 2/(1-q)") {
        RatFunc s = inv + inv;
        REQUIRE(s == RatFunc(Scalar(2)) / one_minus_q());
    }
    SECTION("division by zero is refused") {
        REQUIRE_THROWS_AS(RatFunc::one() / RatFunc::zero(), DegenerateOperand);
    }
}

TEST_CASE("ring axioms on randomized rational-function triples") {
    Rng rng(20240913);
    for (int trial = 0; trial < 40; ++trial) {
        RatFunc a = rng.ratfunc(), b = rng.ratfunc(), c = rng.ratfunc();
        REQUIRE((a + b) * c == a * c + b * c);
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE(a + (b + c) == (a + b) + c);
        REQUIRE(a * b == b * a);
    }
}

TEST_CASE("q-degree is additive on nonzero products") {
    Rng rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        RatFunc a = rng.ratfunc(), b = rng.ratfunc();
        if (a.is_zero() || b.is_zero()) continue;
        REQUIRE((a * b).q_degree() == a.q_degree() + b.q_degree());
    }
}

TEST_CASE("normalization is idempotent") {
    Rng rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        RatFunc a = rng.ratfunc();
        RatFunc b = a;
        b.reduce();
        REQUIRE(a == b);
        b.reduce();
        REQUIRE(a == b);
    }
}

TEST_CASE("parameter limits") {
    RatFunc lam = RatFunc::var(VL);
    SECTION("(1-l^2)/(1-l) at l=1 is the removable value 2") {
        RatFunc f = (RatFunc::one() - lam * lam) / (RatFunc::one() - lam);
        REQUIRE(f.subst(VL, Scalar(1)) == RatFunc(Scalar(2)));
    }
    SECTION("1/(1-l) at l=1 is a true pole") {
        RatFunc f = RatFunc::one() / (RatFunc::one() - lam);
        REQUIRE_THROWS_AS(f.subst(VL, Scalar(1)), PoleAtLimit);
    }
    SECTION("l*(3/2) at l=1 is 3/2") {
        RatFunc f = lam * Scalar(3, 2);
        REQUIRE(f.subst(VL, Scalar(1)) == RatFunc(Scalar(3, 2)));
    }
    SECTION("higher-order removable singularities cancel") {
        // (1-l)^2 (2+l) / (1-l)^2 -> 3
        RatFunc num = (RatFunc::one() - lam) * (RatFunc::one() - lam) * (lam + RatFunc(Scalar(2)));
        RatFunc den = (RatFunc::one() - lam) * (RatFunc::one() - lam);
        REQUIRE((num / den).subst(VL, Scalar(1)) == RatFunc(Scalar(3)));
    }
}

TEST_CASE("expansions at q=0 and q=infinity agree with closed forms") {
    // 1/(1-q) = 1 + q + q^2 + ...
    RatFunc f = RatFunc::one() / one_minus_q();
    auto [ord, cs] = f.expand_q0(4);
    REQUIRE(ord == 0);
    for (auto& c : cs) REQUIRE(c == RatFunc::one());
    // at infinity: 1/(1-q) = -u/(1-u) = -u - u^2 - ... with u = 1/q
    auto [start, ds] = f.expand_qinf(3);
    REQUIRE(start == 1);
    for (auto& c : ds) REQUIRE(c == -RatFunc::one());
}

TEST_CASE("series multiplication on the spec examples") {
    SECTION("(1 + Qc) * 1 = 1 + Qc") {
        NovikovSeries a = NovikovSeries::unit(1, 2, 2);
        CoeffVec c = {RatFunc(Scalar(3)), RatFunc(Scalar(5, 2))};
        a.set(MultiDegree({1}), c);
        NovikovSeries one = NovikovSeries::unit(1, 2, 2);
        NovikovSeries prod = series_mul(a, one);
        REQUIRE(prod.coeff_or_zero(MultiDegree({1})) == c);
        REQUIRE(prod.coeff_or_zero(MultiDegree({0}))[0] == RatFunc::one());
    }
    SECTION("(1+Q)(1-Q) at D=1 is 1") {
        NovikovSeries a = NovikovSeries::unit(1, 1, 1), b = a;
        a.set(MultiDegree({1}), {RatFunc::one()});
        b.set(MultiDegree({1}), {-RatFunc::one()});
        NovikovSeries prod = series_mul(a, b);
        REQUIRE(prod.coeff(MultiDegree({1})) == nullptr);
        REQUIRE(prod.coeff_or_zero(MultiDegree({0}))[0] == RatFunc::one());
    }
    SECTION("entrywise product in the diagonal model") {
        NovikovSeries a(1, 0, 2), b(1, 0, 2);
        a.set(MultiDegree({0}), {RatFunc(Scalar(2)), RatFunc(Scalar(3))});
        b.set(MultiDegree({0}), {RatFunc(Scalar(5)), RatFunc(Scalar(7))});
        auto v = series_mul(a, b).coeff_or_zero(MultiDegree({0}));
        REQUIRE(v[0] == RatFunc(Scalar(10)));
        REQUIRE(v[1] == RatFunc(Scalar(21)));
    }
    SECTION("rank mismatch is a shape error") {
        NovikovSeries a(1, 1, 1), b(2, 1, 1);
        REQUIRE_THROWS_AS(series_mul(a, b), ShapeError);
    }
}

TEST_CASE("series multiplication is associative and commutative up to truncation") {
    Rng rng(4242);
    for (int trial = 0; trial < 10; ++trial) {
        int D = rng.uniform(2, 4);
        auto random_series = [&]() {
            NovikovSeries s(1, D, 2);
            for (int d = 0; d <= D; ++d)
                s.set(MultiDegree({d}), {rng.ratfunc(), rng.ratfunc()});
            return s;
        };
        NovikovSeries a = random_series(), b = random_series(), c = random_series();
        NovikovSeries ab_c = series_mul(series_mul(a, b), c);
        NovikovSeries a_bc = series_mul(a, series_mul(b, c));
        NovikovSeries ba = series_mul(b, a);
        for (auto& d : all_degrees(1, D)) {
            REQUIRE(ab_c.coeff_or_zero(d) == a_bc.coeff_or_zero(d));
            REQUIRE(series_mul(a, b).coeff_or_zero(d) == ba.coeff_or_zero(d));
        }
    }
}
