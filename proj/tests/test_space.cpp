#include <doctest.h>

#include <random>

#include "cocycle/dynamics.hpp"

using namespace cocycle;

namespace {

Rational q(long n, long d = 1) {
    Rational r(n, d);
    r.canonicalize();
    return r;
}

GroupValue rat(long n, long d = 1) { return GroupValue::rational(q(n, d)); }

const MeasureSpec half = MeasureSpec::bernoulli({{q(1, 2), q(1, 2)}});

// bases cover depth 4 so that lifts are possible
CylinderFunction rat_fn(std::size_t depth, std::vector<GroupValue> table) {
    return CylinderFunction(BaseVector::binary(4), depth, GroupTag::rational(), std::move(table));
}

CylinderFunction random_fn(std::mt19937_64& rng, const BaseVector& b, std::size_t depth) {
    std::uniform_int_distribution<long> num(-5, 5), den(1, 3);
    return CylinderFunction::tabulate(b, depth, GroupTag::rational(), [&](std::size_t) { return rat(num(rng), den(rng)); });
}

} // namespace

TEST_CASE("base vectors") {
    BaseVector b = BaseVector::parse("2,3,2");
    CHECK(b.depth() == 3);
    CHECK(b.base(2) == 3);
    CHECK(b.cardinality(2) == 6);
    CHECK(b.cardinality(0) == 1);
    CHECK_FALSE(b.is_binary());
    CHECK(BaseVector::binary(4).is_binary());
    CHECK_THROWS_AS(BaseVector({2, 1}), DomainError);
    CHECK_THROWS_AS(BaseVector::parse("2,x"), ParseError);
}

TEST_CASE("prefix indexing is x_1 fastest") {
    PrefixSpace s(BaseVector::parse("2,3"), 2);
    CHECK(s.size() == 6);
    CHECK(s.index(Prefix({1, 0})) == 1);
    CHECK(s.index(Prefix({0, 1})) == 2);
    CHECK(s.index(Prefix({1, 2})) == 5);
    for (std::size_t i = 0; i < s.size(); ++i)
        CHECK(s.index(s.prefix(i)) == i);
    CHECK(Prefix::parse("0 1 1") == Prefix({0, 1, 1}));
    CHECK(Prefix::parse("011") == Prefix({0, 1, 1}));
    CHECK(Prefix::parse("0,1,1") == Prefix({0, 1, 1}));
    CHECK_THROWS_AS(s.index(Prefix({2, 0})), DomainError);
}

TEST_CASE("eval examples") {
    GroupValue a = rat(1, 3), b = rat(-2);
    CylinderFunction f = rat_fn(1, {a, b});
    CHECK(f.eval(Prefix({0, 0, 0})) == a);
    CHECK(f.eval(Prefix({1, 0, 1})) == b);
    CylinderFunction g = f.lift(3);
    PrefixSpace s3(BaseVector::binary(3), 3);
    for (std::size_t i = 0; i < 8; ++i)
        CHECK(g.eval(s3.prefix(i)) == f.eval(s3.prefix(i)));
    CHECK_THROWS_AS(g.eval(Prefix({0, 1})), DomainError);
}

TEST_CASE("lift examples") {
    GroupValue a = rat(1), b = rat(2);
    CylinderFunction f = rat_fn(1, {a, b});
    CHECK(f.lift(1) == f);
    CHECK(f.lift(2).table() == std::vector<GroupValue>{a, b, a, b});
    CHECK(f.lift(2).lift(4) == f.lift(4));
    CHECK_THROWS_AS(f.lift(3).lift(2), DomainError);
}

TEST_CASE("measure of cylinder sets") {
    PrefixSpace s3(BaseVector::binary(3), 3);
    std::vector<std::size_t> first_zero;
    for (std::size_t i = 0; i < 8; ++i)
        if (s3.digit(i, 1) == 0)
            first_zero.push_back(i);
    CHECK(measure_of_cylinder_set(half, s3, first_zero) == q(1, 2));

    std::vector<std::size_t> point{s3.index(Prefix({0, 1, 1}))};
    CHECK(measure_of_cylinder_set(MeasureSpec::dirac(Prefix({0, 1, 1})), s3, point) == 1);

    MeasureSpec chain = MeasureSpec::markov({q(1, 2), q(1, 2)}, {{q(1, 2), q(1, 2)}, {q(1, 2), q(1, 2)}});
    for (std::size_t i = 0; i < 8; ++i) {
        std::vector<std::size_t> single{i};
        CHECK(measure_of_cylinder_set(chain, s3, single) == q(1, 8));
    }
}

TEST_CASE("measures are normalized and additive") {
    BaseVector b = BaseVector::parse("2,3,2");
    PrefixSpace s(b, 3);
    MeasureSpec m = MeasureSpec::markov({q(1, 3), q(2, 3)}, {{q(1, 4), q(3, 4)}, {q(1, 2), q(1, 2)}});
    MeasureSpec bern = MeasureSpec::bernoulli({{q(1, 3), q(2, 3)}, {q(1, 6), q(1, 3), q(1, 2)}, {q(1, 5), q(4, 5)}});
    MeasureSpec dirac = MeasureSpec::dirac(Prefix({1, 2}));
    MeasureSpec mix = MeasureSpec::mixture({q(1, 4), q(3, 4)}, {bern, dirac});
    for (const MeasureSpec& mu : {MeasureSpec::uniform(), bern, dirac, mix}) {
        Rational total = 0;
        for (const auto& x : mu.masses(s))
            total += x;
        CHECK(total == 1);
    }
    // Markov needs equal bases
    CHECK_THROWS_AS(m.masses(s), DomainError);
    // Bernoulli: product of row weights, computed directly
    CHECK(bern.cylinder_mass(s, s.index(Prefix({1, 2, 0}))) == q(2, 3) * q(1, 2) * q(1, 5));
    // Dirac: zero tail beyond the point
    CHECK(dirac.cylinder_mass(s, s.index(Prefix({1, 2, 0}))) == 1);
    CHECK(dirac.cylinder_mass(s, s.index(Prefix({1, 2, 1}))) == 0);
    CHECK(mix.cylinder_mass(s, s.index(Prefix({1, 2, 0}))) == q(1, 4) * q(1, 15) + q(3, 4));
    // coarser masses are sums of finer ones
    PrefixSpace s2(b, 2);
    auto fine = bern.masses(s);
    for (std::size_t i = 0; i < s2.size(); ++i)
        CHECK(bern.cylinder_mass(s2, i) == fine[i] + fine[i + s2.size()]);

    CHECK_THROWS_AS(MeasureSpec::bernoulli({{q(1, 2), q(1, 3)}}), DomainError);
    CHECK_THROWS_AS(MeasureSpec::mixture({q(1, 2)}, {bern}), DomainError);
    CHECK_THROWS_AS(MeasureSpec::markov({q(1)}, {{q(1, 2)}}), DomainError);
}

TEST_CASE("tau1 examples") {
    CylinderFunction f = rat_fn(1, {rat(3), rat(1, 2)});
    std::vector<MeasureSpec> mus{half};
    CHECK(tau1_membership(f, f, mus, Scalar(q(1, 100)), Scalar(q(1, 100))));
    CylinderFunction one = CylinderFunction::constant(BaseVector::binary(1), 1, rat(1));
    CylinderFunction zero = CylinderFunction::constant(BaseVector::binary(1), 1, rat(0));
    CHECK_FALSE(tau1_membership(one, zero, mus, Scalar(q(1, 2)), Scalar(q(1, 2))));
    CylinderFunction step = rat_fn(1, {rat(0), rat(1)});
    CHECK(tau1_membership(step, zero, mus, Scalar(q(1, 2)), Scalar(q(3, 4))));
    // strict inequalities on both sides
    CHECK_FALSE(tau1_membership(step, zero, mus, Scalar(q(1, 2)), Scalar(q(1, 2))));
    CHECK(exceedance_measure(step, zero, half, Scalar(1)) == Scalar(0));
    CHECK_THROWS_AS(tau1_membership(step, CylinderFunction::constant(BaseVector::binary(1), 1, GroupValue::integer(0)),
                                    mus, Scalar(1), Scalar(1)),
                    GroupMismatch);
}

TEST_CASE("tau3 and tau4 examples") {
    CylinderFunction zero = CylinderFunction::constant(BaseVector::binary(1), 1, rat(0));
    CylinderFunction halfc = CylinderFunction::constant(BaseVector::binary(1), 1, rat(1, 2));
    CylinderFunction two = rat_fn(1, {rat(0), rat(2)});
    CHECK(tau3_functional(two, two, half) == Scalar(0));
    CHECK(tau3_functional(halfc, zero, half) == Scalar(q(1, 2)));
    CHECK(tau3_functional(two, zero, half) == Scalar(q(1, 2)));
    CHECK(tau4_functional(two, two, half) == Scalar(0));
    CHECK(tau4_functional(halfc, zero, half) == Scalar(q(1, 3)));
    CHECK(tau4_functional(two, zero, half) == Scalar(q(1, 3)));
}

TEST_CASE("functional properties on random pairs") {
    std::mt19937_64 rng(3);
    BaseVector b = BaseVector::parse("2,3,2,2");
    for (int t = 0; t < 100; ++t) {
        std::size_t m = 1 + t % 3;
        CylinderFunction f = random_fn(rng, b, m), g = random_fn(rng, b, m + 1);
        MeasureSpec mu = MeasureSpec::bernoulli({{q(1, 3), q(2, 3)}, {q(1, 2), q(1, 4), q(1, 4)}, {q(1, 5), q(4, 5)}});
        Scalar t3 = tau3_functional(f, g, mu), t4 = tau4_functional(f, g, mu);
        CHECK(t4 <= t3);
        CHECK(t3 <= Scalar(1));
        CHECK(tau3_functional(f, f.lift(4), mu) == Scalar(0));
        std::vector<MeasureSpec> mus{mu};
        if (tau1_membership(f, g, mus, Scalar(q(1, 2)), Scalar(q(1, 3))))
            CHECK(tau1_membership(f, g, mus, Scalar(q(1, 2)), Scalar(q(1, 2))));
    }
}

TEST_CASE("topology constants need eps <= 1") {
    // |f - g| = 2 everywhere, eps = 3/2, delta = 9/10: tau3 = 1 < eps*delta
    // yet the exceedance set has full measure.
    CylinderFunction f = CylinderFunction::constant(BaseVector::binary(1), 1, rat(2));
    CylinderFunction g = CylinderFunction::constant(BaseVector::binary(1), 1, rat(0));
    Rational eps = q(3, 2), delta = q(9, 10);
    CHECK(tau3_functional(f, g, half) < Scalar(eps * delta));
    CHECK_FALSE(exceedance_measure(f, g, half, Scalar(eps)) < Scalar(delta));
}

TEST_CASE("aut_distance examples") {
    OdometerModel t2(BaseVector::binary(2));
    PrefixMap t = t2.as_map();
    CHECK(aut_distance(t, t, half) == 0);
    CHECK(aut_distance(PrefixMap::identity(t2.space()), t, half) == 1);

    OdometerModel t3(BaseVector::binary(3));
    PrefixMap p1 = periodic_approx(MarkerSequence(t3), 1).as_map();
    CHECK(aut_distance(p1, t3.as_map(), half) == q(1, 2));
    // counting the inverse maps as well adds {x_1 = 0}
    CHECK(aut_distance(p1, t3.as_map(), half, DisagreementSet::with_inverse) == 1);
    CHECK_THROWS_AS(aut_distance(t, t3.as_map(), half), DomainError);
}

TEST_CASE("prefix maps") {
    OdometerModel t(BaseVector::parse("3,2"));
    PrefixMap m = t.as_map();
    CHECK(m * m.inverse() == PrefixMap::identity(t.space()));
    CHECK(m * m == t.power(2));
    CHECK_THROWS_AS(PrefixMap(t.space(), {0, 0, 1, 2, 3, 4}), DomainError);
    // mu o S for S = T under a non-invariant measure
    MassTable mu(MeasureSpec::bernoulli({{q(1, 2), q(1, 3), q(1, 6)}, {q(1, 4), q(3, 4)}}), t.space());
    MassTable pulled = pushforward_inverse(mu, m);
    for (std::size_t i = 0; i < t.size(); ++i)
        CHECK(pulled[i] == mu[m(i)]);
}
