#include "curvetower/errors.hpp"
#include "curvetower/motivic.hpp"
#include "curvetower/tower.hpp"

#include <doctest.h>

#include <random>

using namespace curvetower;

namespace {

MotivicClass C(const std::string& s) { return MotivicClass::parse(s); }

MotivicClass random_class(std::mt19937& rng) {
    MotivicClass a;
    const int terms = static_cast<int>(rng() % 4);
    for (int i = 0; i < terms; ++i)
        a = a + MotivicClass::lefschetz(static_cast<int>(rng() % 9) - 4).scaled(static_cast<int>(rng() % 7) - 3);
    return a;
}

} // namespace

TEST_CASE("class arithmetic and printing") {
    CHECK(MotivicClass::lefschetz() * MotivicClass::lefschetz(-1) == MotivicClass::constant(1));
    CHECK(C("L - 1") * C("L + 1") == C("L^2 - 1"));
    CHECK(to_string(C("L^2 - 1")) == "L^2 - 1");
    CHECK(to_string(C("3*L^-2 + L - 7")) == "L - 7 + 3*L^-2");
    CHECK(to_string(C("-L")) == "-L");
    CHECK(to_string(MotivicClass()) == "0");
    CHECK(C("L + L - 2*L").is_zero());
    for (auto s : {"L^2 - 1", "-2*L^3 + L^-1", "5", "L", "L^10 - 3*L^4 + 2"}) CHECK(to_string(C(s)) == s);

    CHECK(C("L^3 + L").norm() == 8);
    CHECK(*C("L^3 + L").order() == -3);
    CHECK(C("L^-2").norm() == mpq_class(1, 4));
    CHECK(MotivicClass().norm() == 0);
    CHECK_FALSE(MotivicClass().order());

    CHECK_THROWS_AS(C(""), ParseError);
    CHECK_THROWS_AS(C("L^"), ParseError);
    CHECK_THROWS_AS(C("2 L"), ParseError);
    CHECK_THROWS_AS(C("x"), ParseError);
    CHECK_THROWS_AS(C("3*"), ParseError);
}

TEST_CASE("norm is non-archimedean and submultiplicative") {
    std::mt19937 rng(3);
    for (int i = 0; i < 300; ++i) {
        auto a = random_class(rng), b = random_class(rng);
        CHECK((a + b).norm() <= std::max(a.norm(), b.norm()));
        CHECK((a * b).norm() <= a.norm() * b.norm());
    }
}

TEST_CASE("specialization is a ring morphism") {
    CHECK(specialize(C("L^2 - 1"), 3) == 8);
    CHECK(specialize(C("L^-1"), 2) == mpq_class(1, 2));
    std::mt19937 rng(9);
    for (int i = 0; i < 200; ++i) {
        auto a = random_class(rng), b = random_class(rng);
        for (int q : {2, 3, 5}) {
            CHECK(specialize(a * b, q) == specialize(a, q) * specialize(b, q));
            CHECK(specialize(a + b, q) == specialize(a, q) + specialize(b, q));
        }
    }
    CHECK_THROWS_AS(specialize(C("L"), 0), PreconditionError);
}

TEST_CASE("series expansion") {
    RationalSeries geo{{MotivicClass::constant(1)}, {{1, 1}}};
    auto e = series_expand(geo, 3);
    CHECK(e == std::vector<MotivicClass>{C("1"), C("L"), C("L^2"), C("L^3")});

    RationalSeries poly{{C("2"), C("0"), C("L")}, {}};
    CHECK(series_expand(poly, 4) == std::vector<MotivicClass>{C("2"), C("0"), C("L"), C("0"), C("0")});
    CHECK(series_expand(poly, 1) == std::vector<MotivicClass>{C("2"), C("0")});

    // Product rule against convolution of the separate expansions.
    std::mt19937 rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        auto random_series = [&] {
            RationalSeries s;
            for (int k = 0; k < 3; ++k) s.numerator.push_back(random_class(rng));
            for (int k = 0; k < static_cast<int>(rng() % 3); ++k)
                s.denominator.emplace_back(static_cast<int>(rng() % 4), 1 + rng() % 3);
            return s;
        };
        auto f = random_series(), g = random_series();
        const std::size_t K = 8;
        auto ef = series_expand(f, K), eg = series_expand(g, K), efg = series_expand(f * g, K);
        for (std::size_t n = 0; n <= K; ++n) {
            MotivicClass conv;
            for (std::size_t i = 0; i <= n; ++i) conv = conv + ef[i] * eg[n - i];
            CHECK(efg[n] == conv);
        }
    }
    CHECK_THROWS_AS(series_expand(RationalSeries{{C("1")}, {{-1, 1}}}, 2), PreconditionError);
    CHECK_THROWS_AS(series_expand(RationalSeries{{C("1")}, {{1, 0}}}, 2), PreconditionError);
}

TEST_CASE("series equality by cross-multiplication") {
    MeasureContext ctx(3, 1);
    auto s = mps(C("L + 1"), 2, ctx);
    RationalSeries t = s * RationalSeries{{C("1"), -C("L^2")}, {{2, 1}}};
    CHECK(same_series(s, t));
    CHECK_FALSE(same_series(s, mps(C("L"), 2, ctx)));
    CHECK(to_string(s) == "((L^5 + L^4)*T^2) / (1 - L^2*T)");
    CHECK(to_string(mps(C("0"), 2, ctx)) == "(0) / (1 - L^2*T)");
}

TEST_CASE("measure normalization and MPS recurrence") {
    MeasureContext plane(2, 3);
    CHECK(plane.fibration_rank() == 3);
    const std::uint32_t n = 4;
    CHECK(measure_of_level(MotivicClass::lefschetz(3 * (n + 1)), n, plane) == MotivicClass::constant(1));
    // Multiplying the class by L^c when the level goes up leaves the measure alone.
    auto cls = C("L^7 - L^2 + 3");
    CHECK(measure_of_level(cls, n, plane) == measure_of_level(cls.shifted(3), n + 1, plane));
    CHECK_THROWS_AS(MeasureContext(0, 1), PreconditionError);
    CHECK_THROWS_AS(MeasureContext(2, 0), PreconditionError);

    MeasureContext two(3, 1);
    auto first = series_expand(mps(C("1"), 3, two), 5);
    CHECK(first[3] == C("L^6"));
    CHECK(first[4] == C("L^8"));
    CHECK(first[5] == C("L^10"));
    CHECK(first[0].is_zero());
    CHECK(series_expand(mps(C("0"), 2, two), 6) == std::vector<MotivicClass>(7));
    CHECK_THROWS_AS(mps(C("1"), 0, two), PreconditionError);

    std::mt19937 rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        auto c0 = random_class(rng);
        const auto n0 = 1 + rng() % 5;
        MeasureContext ctx(2 + rng() % 3, 1 + rng() % 4);
        auto ex = series_expand(mps(c0, n0, ctx), n0 + 20);
        for (std::size_t k = n0; k < n0 + 20; ++k) CHECK(ex[k + 1] == ex[k].shifted(ctx.fibration_rank()));
    }
}

TEST_CASE("partial volumes") {
    auto one = volume_partial({{0, C("1")}});
    CHECK(one.value == C("1"));
    auto two = volume_partial({{0, C("1")}, {2, C("L - 1")}});
    CHECK(two.value == C("1 + L^-1 - L^-2"));
    CHECK(two.last_index == 2);
    CHECK(two.tail_log2 == 1 - 3);
    CHECK(volume_partial({}).value.is_zero());

    // With decaying term norms the norms of the partial sums never grow.
    std::map<std::uint32_t, MotivicClass> terms;
    mpq_class last = -1;
    for (std::uint32_t s = 0; s < 12; ++s) {
        terms[s] = C("L^2 - L + 1");
        auto v = volume_partial(terms);
        if (last >= 0) CHECK(v.value.norm() <= last);
        last = v.value.norm();
        CHECK(v.tail_log2 == 2 - static_cast<std::int64_t>(s + 1));
    }
}

TEST_CASE("fitting classes from point counts") {
    auto fit = fit_class_from_counts({{2, 7}, {3, 13}, {5, 31}}, 2);
    REQUIRE(fit);
    CHECK(*fit == C("L^2 + L + 1"));
    // Enumerated counts of the level-3 plane strata for e0 = 1 fit (L + 1) L.
    std::vector<std::pair<mpz_class, mpz_class>> pts;
    for (int q : {2, 3, 5}) {
        EnumerationRequest req;
        req.nvars = 2;
        req.e0 = 1;
        req.level = 3;
        req.q = q;
        pts.emplace_back(q, enumerate_xi(req).count);
    }
    auto line = fit_class_from_counts(pts, 2);
    REQUIRE(line);
    CHECK(*line == C("L^2 + L"));

    CHECK_FALSE(fit_class_from_counts({{2, 1}, {4, 2}}, 3)); // slope 1/2
    CHECK_FALSE(fit_class_from_counts({{2, 7}, {3, 13}, {5, 31}}, 1));
    CHECK(*fit_class_from_counts({{2, 4}, {3, 4}, {7, 4}}, 0) == C("4"));
    CHECK_THROWS_AS(fit_class_from_counts({}, 2), PreconditionError);
    CHECK_THROWS_AS(fit_class_from_counts({{2, 1}, {2, 1}}, 2), PreconditionError);
}
