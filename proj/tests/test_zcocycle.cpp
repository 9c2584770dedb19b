#include <doctest.h>

#include <random>

#include "cocycle/zcocycle.hpp"

using namespace cocycle;

namespace {

Rational q(long n, long d = 1) {
    Rational r(n, d);
    r.canonicalize();
    return r;
}

GroupValue integer(long n) { return GroupValue::integer(Integer(n)); }
GroupValue rat(long n, long d = 1) { return GroupValue::rational(q(n, d)); }

const MeasureSpec half = MeasureSpec::bernoulli({{q(1, 2), q(1, 2)}});

// +1 on x_1 = 0, -1 on x_1 = 1
CylinderFunction alternating(std::size_t depth, const GroupTag& tag = GroupTag::integer()) {
    return CylinderFunction::tabulate(BaseVector::binary(depth), 1, tag, [&](std::size_t i) {
        GroupValue one = tag == GroupTag::integer() ? integer(1) : rat(1);
        return i == 0 ? one : -one;
    });
}

CylinderFunction random_int_fn(std::mt19937_64& rng, const BaseVector& b, std::size_t depth) {
    std::uniform_int_distribution<long> v(-3, 3);
    return CylinderFunction::tabulate(b, depth, GroupTag::integer(), [&](std::size_t) { return integer(v(rng)); });
}

// a(j, x) by walking prefixes with the carry rule; j < 0 walks backwards.
GroupValue walk(const OdometerModel& t, const CylinderFunction& f, std::int64_t j, Prefix x) {
    GroupValue s = GroupValue::zero(f.group());
    if (j >= 0) {
        for (std::int64_t k = 0; k < j; ++k) {
            s += f.eval(x);
            x = t.step(x);
        }
        return s;
    }
    // T^{-1}x is the unique y with step(y) = x
    const PrefixSpace& sp = t.space();
    for (std::int64_t k = 0; k < -j; ++k) {
        Prefix y = x;
        for (std::size_t i = 0; i < sp.size(); ++i)
            if (t.step(sp.prefix(i)) == x)
                y = sp.prefix(i);
        x = y;
        s -= f.eval(x);
    }
    return s;
}

} // namespace

TEST_CASE("evaluate examples") {
    OdometerModel t(BaseVector::binary(3));
    ZCocycle ones(t, CylinderFunction::constant(BaseVector::binary(3), 0, integer(1)));
    CHECK(ones.evaluate(0, Prefix({1, 0, 1})).is_zero());
    CHECK(ones.evaluate(5, Prefix({1, 0, 1})) == integer(5));
    ZCocycle alt(t, alternating(3));
    CHECK(alt.evaluate(2, Prefix({0, 0, 0})).is_zero());
}

TEST_CASE("evaluate agrees with the orbit walk and satisfies the cocycle identity") {
    std::mt19937_64 rng(1);
    for (const char* b : {"2,2,2", "3,2", "2,3,2"}) {
        OdometerModel t(BaseVector::parse(b));
        for (int rep = 0; rep < 5; ++rep) {
            CylinderFunction f = random_int_fn(rng, t.bases(), 1 + rep % t.depth());
            ZCocycle a(t, f);
            auto n = static_cast<std::int64_t>(t.size());
            for (std::size_t x = 0; x < t.size(); ++x) {
                Prefix px = t.space().prefix(x);
                for (std::int64_t j = -n - 2; j <= n + 2; ++j)
                    CHECK(a.evaluate(j, x) == walk(t, f, j, px));
                for (std::int64_t i = -n; i <= n; i += 3)
                    for (std::int64_t j = -n; j <= n; j += 2)
                        CHECK(a.evaluate(i + j, x) == a.evaluate(i, t.shift(x, j)) + a.evaluate(j, x));
            }
        }
    }
}

TEST_CASE("extend_to_full_group examples") {
    OdometerModel t(BaseVector::binary(2));
    CylinderFunction ones = CylinderFunction::constant(BaseVector::binary(2), 0, integer(1));
    ZCocycle a(t, ones);
    CHECK(extend_to_full_group(a, FullGroupElement::power_of_odometer(t, 1)) == ones.lift(t.space()));
    CylinderFunction at_identity = extend_to_full_group(a, FullGroupElement::identity(t));
    for (const auto& v : at_identity.table())
        CHECK(v.is_zero());
    CylinderFunction e = extend_to_full_group(a, periodic_approx(MarkerSequence(t), 1));
    for (std::size_t x = 0; x < 4; ++x)
        CHECK(e.at(x) == integer(t.space().digit(x, 1) == 0 ? 1 : -1));
}

TEST_CASE("extension is a cocycle over compositions") {
    std::mt19937_64 rng(2);
    OdometerModel t(BaseVector::binary(4));
    MarkerSequence m(t);
    std::vector<FullGroupElement> pool{FullGroupElement::power_of_odometer(t, 3), periodic_approx(m, 1),
                                       periodic_approx(m, 2), periodic_approx(m, 3).inverse()};
    ZCocycle a(t, random_int_fn(rng, t.bases(), 4));
    for (const auto& r : pool)
        for (const auto& s : pool) {
            CylinderFunction rs = extend_to_full_group(a, r.compose(s));
            CylinderFunction er = extend_to_full_group(a, r), es = extend_to_full_group(a, s);
            for (std::size_t x = 0; x < t.size(); ++x)
                CHECK(rs.at(x) == er.at(s(x)) + es.at(x));
        }
}

TEST_CASE("coboundary_solve examples") {
    OdometerModel t(BaseVector::binary(3));
    auto zero = coboundary_solve(ZCocycle(t, CylinderFunction::constant(BaseVector::binary(3), 0, integer(0))));
    REQUIRE(zero.is_coboundary());
    CHECK(zero.certificate->spread == Scalar(0));
    for (const auto& v : zero.certificate->transfer.table())
        CHECK(v.is_zero());

    auto alt = coboundary_solve(ZCocycle(t, alternating(3)));
    REQUIRE(alt.is_coboundary());
    CHECK(alt.certificate->spread == Scalar(1));
    for (std::size_t x = 0; x < 8; ++x)
        CHECK(alt.certificate->transfer.at(x) == integer(t.space().digit(x, 1)));

    auto ones = coboundary_solve(ZCocycle(t, CylinderFunction::constant(BaseVector::binary(3), 0, integer(1))));
    CHECK_FALSE(ones.is_coboundary());
    CHECK(ones.cycle_sum == integer(8));
}

TEST_CASE("coboundary decision is sound and complete on random generators") {
    std::mt19937_64 rng(4);
    for (int rep = 0; rep < 300; ++rep) {
        OdometerModel t(BaseVector::parse(rep % 2 ? "2,2,2,2" : "3,2,2"));
        CylinderFunction f = random_int_fn(rng, t.bases(), 1 + rep % t.depth());
        // independent cycle sum: walk the prefixes once around
        GroupValue total = walk(t, f, static_cast<std::int64_t>(t.size()), t.space().prefix(0));
        ZCocycle a(t, f);
        CoboundaryResult r = coboundary_solve(a);
        CHECK(r.cycle_sum == total);
        CHECK(r.is_coboundary() == total.is_zero());
        if (r.is_coboundary()) {
            CHECK(verify_certificate(a, *r.certificate));
            CHECK(r.certificate->transfer.at(0).is_zero());
        } else {
            auto n = static_cast<std::int64_t>(t.size());
            for (std::int64_t k = 1; k <= 8; ++k)
                CHECK(norm(a.evaluate(k * n, rep % t.size())) == Scalar(Rational(k)) * norm(total));
        }
    }
}

TEST_CASE("coboundaries form a subgroup") {
    std::mt19937_64 rng(8);
    OdometerModel t(BaseVector::binary(4));
    for (int rep = 0; rep < 30; ++rep) {
        CylinderFunction c1 = random_int_fn(rng, t.bases(), 4), c2 = random_int_fn(rng, t.bases(), 4);
        auto cob = [&](const CylinderFunction& c) {
            return CylinderFunction::tabulate(t.bases(), 4, GroupTag::integer(),
                                              [&](std::size_t x) { return c.at(t.step(x)) - c.at(x); });
        };
        CylinderFunction f = cob(c1), g = cob(c2);
        auto sum = coboundary_solve(ZCocycle(t, f + g));
        auto neg = coboundary_solve(ZCocycle(t, -f));
        REQUIRE(sum.is_coboundary());
        REQUIRE(neg.is_coboundary());
        // transfers are unique up to the anchor
        for (std::size_t x = 0; x < t.size(); ++x) {
            CHECK(sum.certificate->transfer.at(x) == (c1.at(x) - c1.at(0)) + (c2.at(x) - c2.at(0)));
            CHECK(neg.certificate->transfer.at(x) == -(c1.at(x) - c1.at(0)));
        }
    }
}

TEST_CASE("finite value groups") {
    OdometerModel t(BaseVector::binary(2));
    auto mod = [](long r) { return GroupValue::mod(r, 4); };
    CylinderFunction f(BaseVector::binary(2), 2, GroupTag::mod(4), {mod(1), mod(1), mod(1), mod(1)});
    // 4 * 1 = 0 mod 4: a coboundary in Z/4 although not in Z
    auto r = coboundary_solve(ZCocycle(t, f));
    REQUIRE(r.is_coboundary());
    CHECK(verify_certificate(ZCocycle(t, f), *r.certificate));
    CylinderFunction g(BaseVector::binary(2), 2, GroupTag::mod(4), {mod(1), mod(0), mod(0), mod(0)});
    CHECK_FALSE(coboundary_solve(ZCocycle(t, g)).is_coboundary());
    CHECK_FALSE(find_gh_witness(t, g, Scalar(100)).has_value());
}

TEST_CASE("periodic_coboundary examples") {
    OdometerModel t(BaseVector::binary(2));
    FullGroupElement p1 = periodic_approx(MarkerSequence(t), 1);
    ZCocycle a(t, CylinderFunction::constant(BaseVector::binary(2), 0, integer(1)));
    CylinderFunction g = periodic_coboundary(p1, extend_to_full_group(a, p1));
    for (std::size_t x = 0; x < 4; ++x)
        CHECK(g.at(x) == integer(t.space().digit(x, 1)));

    CylinderFunction zeros = CylinderFunction::constant(BaseVector::binary(2), 2, integer(0));
    CylinderFunction g0 = periodic_coboundary(p1, zeros);
    for (const auto& v : g0.table())
        CHECK(v.is_zero());
    CylinderFunction g1 = periodic_coboundary(FullGroupElement::identity(t), zeros);
    for (const auto& v : g1.table())
        CHECK(v.is_zero());

    // T is not periodic in the infinite model: its one cycle jumps by N
    CHECK_THROWS_AS(periodic_coboundary(FullGroupElement::power_of_odometer(t, 1), zeros), DomainError);
}

TEST_CASE("periodic_coboundary transfers all powers") {
    std::mt19937_64 rng(9);
    OdometerModel t(BaseVector::parse("2,3,2"));
    MarkerSequence m(t);
    ZCocycle a(t, random_int_fn(rng, t.bases(), 3));
    for (std::size_t n = 1; n <= m.count(); ++n) {
        FullGroupElement p = periodic_approx(m, n);
        CylinderFunction g = periodic_coboundary(p, extend_to_full_group(a, p));
        for (std::int64_t k = -4; k <= 4; ++k) {
            FullGroupElement pk = p.power(k);
            CylinderFunction apk = extend_to_full_group(a, pk);
            for (std::size_t x = 0; x < t.size(); ++x)
                CHECK(apk.at(x) == g.at(pk(x)) - g.at(x));
        }
        for (std::size_t x : m.marker(n))
            CHECK(g.at(x).is_zero());
    }
}

TEST_CASE("density sequence") {
    OdometerModel t(BaseVector::binary(4));
    MarkerSequence m(t);
    ZCocycle a(t, alternating(4, GroupTag::rational()));
    CylinderFunction f = a.generator().lift(t.space());
    for (std::size_t n = 1; n <= 3; ++n) {
        DensityStep s = density_sequence(a, m, n);
        CHECK(coboundary_solve(ZCocycle(t, s.big_f_n)).is_coboundary());
        CHECK(tau3_functional(s.big_f_n, f, half) <= Scalar(Rational(1, 1u << n)));
        for (std::size_t x = 0; x < t.size(); ++x)
            if (!m.in_top(n, x))
                CHECK(s.big_f_n.at(x) == f.at(x));
    }
}

TEST_CASE("density rate on random generators") {
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<long> num(-7, 7), den(1, 5);
    OdometerModel t(BaseVector::binary(6));
    MarkerSequence m(t);
    for (int rep = 0; rep < 10; ++rep) {
        ZCocycle a(t, CylinderFunction::tabulate(t.bases(), 6, GroupTag::rational(),
                                                 [&](std::size_t) { return rat(num(rng), den(rng)); }));
        for (std::size_t n = 1; n <= m.count(); ++n) {
            DensityStep s = density_sequence(a, m, n);
            CHECK(tau3_functional(s.big_f_n, a.generator(), half) <= Scalar(Rational(1, 1u << n)));
            CHECK(coboundary_solve(ZCocycle(t, s.big_f_n)).is_coboundary());
            for (std::size_t x = 0; x < t.size(); ++x)
                CHECK(s.f_n.at(x) == s.g_n.at(s.approx(x)) - s.g_n.at(x));
        }
    }
}

TEST_CASE("gh_check examples") {
    OdometerModel t(BaseVector::binary(3));
    CylinderFunction ones = CylinderFunction::constant(BaseVector::binary(3), 0, integer(1));
    GHReport r = gh_check(t, ones, 20);
    CHECK_FALSE(r.coboundary);
    CHECK(r.growth_slope == Scalar(1));
    CHECK(r.empirical_sup == Scalar(41));
    for (std::uint64_t j = 0; j < 20; ++j)
        CHECK(two_sided_sum(t, ones, 5, j) == integer(static_cast<long>(2 * j + 1)));

    GHReport alt = gh_check(t, alternating(3));
    CHECK(alt.coboundary);
    CHECK(alt.horizon == 32);
    CHECK(alt.empirical_sup == Scalar(1));
    CHECK(alt.certificate->spread == Scalar(1));
}

TEST_CASE("gh_check agrees with coboundary_solve and brute-force sums") {
    std::mt19937_64 rng(21);
    for (int rep = 0; rep < 100; ++rep) {
        OdometerModel t(BaseVector::binary(3));
        CylinderFunction h = random_int_fn(rng, t.bases(), 1 + rep % 3);
        if (rep % 2 == 0) {
            CylinderFunction c = random_int_fn(rng, t.bases(), 3);
            h = CylinderFunction::tabulate(t.bases(), 3, GroupTag::integer(),
                                           [&](std::size_t x) { return c.at(t.step(x)) - c.at(x); });
        }
        GHReport r = gh_check(t, h, 24);
        CHECK(r.coboundary == coboundary_solve(ZCocycle(t, h)).is_coboundary());
        Scalar sup(0);
        for (std::size_t x = 0; x < t.size(); ++x)
            for (std::uint64_t j = 0; j <= 24; ++j)
                sup = max(sup, norm(two_sided_sum(t, h, x, j)));
        CHECK(r.empirical_sup == sup);
        if (r.coboundary) {
            CHECK(sup <= r.certificate->spread);
        } else {
            REQUIRE(r.witness.has_value());
            CHECK(two_sided_sum(t, h, r.witness->point, r.witness->j) == r.witness->sum);
            auto w = find_gh_witness(t, h, Scalar(100));
            REQUIRE(w.has_value());
            CHECK(Scalar(100) < w->magnitude);
            CHECK(two_sided_sum(t, h, w->point, w->j) == w->sum);
        }
    }
}

TEST_CASE("skew orbit examples") {
    OdometerModel t(BaseVector::binary(3));
    SkewOrbit zero = skew_orbit(t, CylinderFunction::constant(BaseVector::binary(3), 0, integer(0)), 0, integer(7), 5);
    for (const auto& v : zero.values)
        CHECK(v == integer(7));
    CHECK(zero.radius == Scalar(0));

    SkewOrbit alt = skew_orbit(t, alternating(3), 0, integer(0), 8);
    std::vector<GroupValue> expect{integer(1), integer(0), integer(1), integer(0),
                                   integer(1), integer(0), integer(1), integer(0)};
    CHECK(alt.values == expect);
    CHECK(alt.radius == Scalar(1));

    SkewOrbit ones = skew_orbit(t, CylinderFunction::constant(BaseVector::binary(3), 0, integer(1)), 0, integer(0), 8);
    for (long k = 1; k <= 8; ++k)
        CHECK(ones.values[static_cast<std::size_t>(k - 1)] == integer(k));
    CHECK(ones.radius == Scalar(8));
}

TEST_CASE("skew orbit stays within M + |g0| for coboundaries") {
    std::mt19937_64 rng(31);
    OdometerModel t(BaseVector::binary(4));
    for (int rep = 0; rep < 20; ++rep) {
        CylinderFunction c = random_int_fn(rng, t.bases(), 4);
        CylinderFunction h = CylinderFunction::tabulate(t.bases(), 4, GroupTag::integer(),
                                                        [&](std::size_t x) { return c.at(t.step(x)) - c.at(x); });
        GHReport r = gh_check(t, h);
        SkewOrbit o = skew_orbit(t, h, rep % 16, integer(3), 200);
        CHECK(o.radius <= r.certificate->spread + Scalar(3));
    }
}

TEST_CASE("cocycle metric convergence examples") {
    OdometerModel t(BaseVector::binary(3));
    std::vector<MeasureSpec> mus{half};
    std::mt19937_64 rng(5);
    CylinderFunction f = CylinderFunction::tabulate(t.bases(), 3, GroupTag::rational(),
                                                    [&](std::size_t) { return rat(static_cast<long>(rng() % 5)); });
    std::vector<CylinderFunction> same(4, f);
    for (const auto& row : cocycle_metric_convergence(t, same, f, 3, mus))
        CHECK(row.tau3[0] == Scalar(0));

    std::vector<CylinderFunction> shifted;
    for (unsigned i = 1; i <= 5; ++i)
        shifted.push_back(f + CylinderFunction::constant(t.bases(), 0, GroupValue::rational(Rational(1, 1u << i))));
    auto rows = cocycle_metric_convergence(t, shifted, f, 2, mus);
    for (const auto& row : rows) {
        Rational expect = q(2, 1L << row.i);
        CAPTURE(row.tau3[0].to_string());
        CHECK(row.tau3[0] == Scalar(expect > 1 ? Rational(1) : expect));
    }
    for (const auto& row : cocycle_metric_convergence(t, shifted, f, 0, mus))
        CHECK(row.tau3[0] == Scalar(0));
}
