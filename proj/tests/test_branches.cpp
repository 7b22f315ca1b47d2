#include "curvetower/branches.hpp"
#include "curvetower/errors.hpp"
#include "curvetower/tower.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace curvetower;

namespace {

Parametrization exact_branch(const std::vector<std::vector<std::string>>& comps, std::uint32_t n,
                             const Field& field = Field::rationals()) {
    // Parse once at a generous precision to read the orders, then at the
    // precision the level needs.
    auto loose = Parametrization::parse(comps, 80, field);
    return Parametrization::parse(comps, loose.required_precision(n), field);
}

} // namespace

TEST_CASE("semigroup invariants") {
    auto s = semigroup({6, 7, 10, 15});
    CHECK(s.delta == 8);
    CHECK(s.gaps == std::vector<std::uint64_t>{1, 2, 3, 4, 5, 8, 9, 11});
    CHECK(s.conductor == 12);
    CHECK(milnor(s.delta, 1) == 16);

    auto cusp = semigroup({2, 3});
    CHECK(cusp.delta == 1);
    CHECK(cusp.conductor == 2);
    CHECK(milnor(1, 1) == 2);
    CHECK(milnor(1, 2) == 1); // node

    // Two coprime generators: the conductor is (a-1)(b-1) and half of it are gaps.
    for (std::uint64_t a = 2; a < 9; ++a)
        for (std::uint64_t b = a + 1; b < 14; ++b) {
            if (std::gcd(a, b) != 1) continue;
            auto g = semigroup({a, b});
            CHECK(g.conductor == (a - 1) * (b - 1));
            CHECK(2 * g.delta == g.conductor);
        }

    auto smooth = semigroup({1});
    CHECK(smooth.delta == 0);
    CHECK(smooth.conductor == 0);
    CHECK(milnor(0, 1) == 0);
    // Maximal semigroups: conductor at most twice delta.
    for (std::uint64_t e = 2; e < 8; ++e) {
        std::vector<std::uint64_t> gens;
        for (std::uint64_t a = e; a < 2 * e; ++a) gens.push_back(a);
        auto m = semigroup(gens);
        CHECK(m.conductor <= 2 * m.delta);
        CHECK(m.delta == e - 1);
    }

    CHECK_THROWS_AS(semigroup({4, 6}), PreconditionError);
    CHECK_THROWS_AS(semigroup({}), PreconditionError);
    CHECK_THROWS_AS(milnor(3, 0), PreconditionError);
}

TEST_CASE("valuation count matches iterated sum-sets") {
    const std::vector<std::vector<std::uint64_t>> cases{
        {2, 3}, {3, 4}, {3, 5}, {4, 5, 6}, {4, 6, 13}, {5, 6, 7}, {6, 7, 10, 15}, {7, 8, 9}, {5, 7}, {3, 7, 11}};
    for (auto& g : cases) {
        std::vector<long> gl(g.begin(), g.end());
        auto ours = valuation_hilbert(g, 12);
        auto ref = oracle::sumset_hilbert(gl, 12, 3000);
        REQUIRE(ours.size() == ref.size());
        for (std::size_t t = 0; t < ours.size(); ++t) CHECK(static_cast<long>(ours[t]) == ref[t]);
    }
}

TEST_CASE("parametrization parsing and precision rule") {
    auto p = Parametrization::parse({{"t^2", "t^3 + t^4"}}, 10, Field::rationals());
    CHECK(p.nvars() == 2);
    CHECK(p.component_strings() == std::vector<std::vector<std::string>>{{"t^2", "t^4 + t^3"}});
    CHECK_FALSE(p.monomial_orders());
    auto q = Parametrization::parse({{"t^4", "t^6", "t^13"}}, 20, Field::rationals());
    CHECK(*q.monomial_orders() == std::vector<std::uint64_t>{4, 6, 13});
    // n * 13 vs n * 4 + conductor of <4,6,13>
    CHECK(q.required_precision(3) == std::max<std::uint32_t>(39, 12 + semigroup({4, 6, 13}).conductor));

    CHECK_THROWS_AS(Parametrization::parse({{"1 + t", "t^2"}}, 10, Field::rationals()), PreconditionError);
    CHECK_THROWS_AS(Parametrization::parse({{"0", "0"}}, 10, Field::rationals()), PreconditionError);
    CHECK_THROWS_AS(Parametrization::parse({{"t", "t^2"}, {"t"}}, 10, Field::rationals()), PreconditionError);
    CHECK_THROWS_AS(Parametrization::parse({}, 10, Field::rationals()), PreconditionError);
    CHECK_THROWS_AS(ideal_from_param(Parametrization::parse({{"t^2", "t^3"}}, 5, Field::rationals()), 4),
                    PreconditionError);
}

TEST_CASE("cusp and node ideals") {
    auto cusp = exact_branch({{"t^2", "t^3"}}, 5);
    auto ideal = ideal_from_param(cusp, 5);
    CHECK(ideal.ideal.generator_strings() == std::vector<std::string>{"-x1^3 + x2^2"});
    auto h = hilbert_from_param(cusp, 5);
    CHECK(h.values == std::vector<std::uint64_t>{1, 3, 5, 7, 9});
    CHECK(*h.e0 == 2);
    CHECK(*h.e1 == 1);

    auto node = exact_branch({{"t", "0"}, {"0", "t"}}, 4);
    auto hn = hilbert_from_param(node, 4);
    CHECK(hn.values == std::vector<std::uint64_t>{1, 3, 5, 7});
    CHECK(ideal_from_param(node, 4).ideal.generator_strings() == std::vector<std::string>{"x1*x2"});

    // Three lines through the origin in the plane.
    auto tri = exact_branch({{"t", "0"}, {"0", "t"}, {"t", "t"}}, 5);
    auto ht = hilbert_from_param(tri, 5);
    CHECK(*ht.e0 == 3);
    CHECK(*ht.e1 == 3);
}

TEST_CASE("two routes agree on monomial branches") {
    const std::vector<std::vector<std::uint64_t>> cases{
        {2, 3}, {3, 4}, {3, 5}, {4, 5, 6}, {4, 6, 13}, {5, 6, 7}, {6, 7, 10, 15}, {7, 8, 9}, {5, 7}, {3, 7, 11}};
    const std::uint32_t n = 8;
    for (auto& g : cases) {
        std::vector<std::string> comps;
        for (auto a : g) comps.push_back("t^" + std::to_string(a));
        auto p = exact_branch({comps}, n);
        auto kernel_route = hilbert_from_param(p, n);
        auto val_route = valuation_hilbert(g, n);
        CHECK(kernel_route.values == val_route);
    }
}

TEST_CASE("parametrized ideal is independent of excess precision and field") {
    auto p = exact_branch({{"t^4", "t^6 + t^7"}}, 6);
    auto more = Parametrization::parse(p.component_strings(), p.precision() + 9, Field::rationals());
    auto a = ideal_from_param(p, 6);
    auto b = ideal_from_param(more, 6);
    CHECK(a.spans.rref() == b.spans.rref());
    // The minimal generators reproduce the full kernel span.
    CHECK(ideal_spans(a.ideal, 6).rref() == a.spans.rref());
    auto h = hilbert_from_param(p, 6);
    // semigroup <4,6,13>: e0 = 4
    CHECK(h.values[0] == 1);
    CHECK(h.graded[5] == 4);

    auto f7 = exact_branch({{"t^4", "t^6 + t^7"}}, 6, Field::prime(7));
    CHECK(hilbert_from_param(f7, 6).values == h.values);
}

TEST_CASE("random substitutions of a monomial branch keep the valuation count") {
    // Adding higher-order terms that do not change the semigroup of a
    // branch with two generators leaves the Hilbert function alone.
    std::mt19937 rng(17);
    for (int trial = 0; trial < 6; ++trial) {
        std::string y = "t^5";
        for (int k = 6; k < 9; ++k)
            if (rng() % 2) y += " + " + std::to_string(1 + rng() % 4) + "*t^" + std::to_string(k);
        auto p = exact_branch({{"t^3", y}}, 7);
        CHECK(hilbert_from_param(p, 7).values == valuation_hilbert({3, 5}, 7));
    }
}

TEST_CASE("fiber comparison") {
    const std::uint32_t n = 6;
    auto a = exact_branch({{"t^2", "t^3"}}, n);
    auto b = exact_branch({{"t^2", "t^3 + t^4"}}, n);
    auto space = exact_branch({{"t^3", "t^4", "t^5"}}, n);
    auto plane = exact_branch({{"t^3", "t^4", "0"}}, n);
    auto same = normally_flat_fiber_compare({a, b}, n);
    CHECK(same.normally_flat);
    CHECK(same.same_polynomial);
    CHECK_FALSE(same.mismatch_fiber);

    auto diff = normally_flat_fiber_compare({space, plane}, n);
    CHECK_FALSE(diff.normally_flat);
    CHECK_FALSE(diff.same_polynomial);
    CHECK(*diff.mismatch_fiber == 1);
    CHECK(*diff.mismatch_degree == 1);

    auto mixed = normally_flat_fiber_compare(
        {IdealPresentation::parse({"x1^3 - x2^2"}, 2, Field::rationals(), n), a}, n);
    CHECK(mixed.normally_flat);
    CHECK_THROWS_AS(normally_flat_fiber_compare({}, n), PreconditionError);
}

TEST_CASE("rigidity") {
    CHECK(is_rigid_known(7, 12) == Rigidity::unknown);
    CHECK(is_rigid_known(7, 7) == Rigidity::rigid);
    CHECK(is_rigid_known(7, 6) == Rigidity::rigid);
    CHECK(is_rigid_known(7, 21) == Rigidity::rigid);
    CHECK(is_rigid_known(7, 20) == Rigidity::rigid);
    CHECK(is_rigid_known(2, 1) == Rigidity::rigid);
    CHECK_THROWS_AS(is_rigid_known(7, 100), PreconditionError);
    CHECK_THROWS_AS(is_rigid_known(0, 0), PreconditionError);
    CHECK(to_string(Rigidity::unknown) == "unknown");
    // Agrees with the admissibility table: every admissible pair gets a verdict.
    for (std::uint32_t e0 = 1; e0 < 9; ++e0)
        for (std::int64_t e1 = -2; e1 <= e0 * e0; ++e1) {
            bool adm = false;
            for (std::uint32_t bb = 1; bb <= e0; ++bb) adm = adm || admissible(bb, e0, e1);
            if (adm)
                CHECK_NOTHROW(is_rigid_known(e0, e1));
            else
                CHECK_THROWS(is_rigid_known(e0, e1));
        }
}

TEST_CASE("conductor and delta from the image ring") {
    auto at = [](std::vector<std::vector<std::string>> b, std::uint32_t m) {
        return conductor_from_param(Parametrization::parse(b, m, Field::rationals()));
    };
    auto node = at({{"t", "0"}, {"0", "t"}}, 10);
    REQUIRE(node);
    CHECK(node->conductor == 1);
    CHECK(node->delta == 1);
    auto lines = at({{"t", "0"}, {"0", "t"}, {"t", "t"}}, 10);
    REQUIRE(lines);
    CHECK(lines->conductor == 2);
    CHECK(lines->delta == 3);
    auto cusp = at({{"t^2", "t^3 + t^4"}}, 10);
    REQUIRE(cusp);
    CHECK(cusp->conductor == 2);
    CHECK(cusp->delta == 1);
    // Single monomial branches agree with the semigroup computation.
    for (auto g : std::vector<std::vector<std::uint64_t>>{{3, 4}, {4, 6, 13}, {6, 7, 10, 15}, {5, 7}}) {
        std::vector<std::string> comps;
        for (auto a : g) comps.push_back("t^" + std::to_string(a));
        auto cd = at({comps}, 60);
        REQUIRE(cd);
        auto s = semigroup(g);
        CHECK(cd->conductor == s.conductor);
        CHECK(cd->delta == s.delta);
    }
    // t^6 + t^7 gives the semigroup <4, 6, 13>, not <4, 6>.
    auto bump = at({{"t^4", "t^6 + t^7"}}, 60);
    REQUIRE(bump);
    CHECK(bump->delta == semigroup({4, 6, 13}).delta);
    // A non-birational parametrization never reaches a conductor.
    CHECK_FALSE(at({{"t^2", "t^4"}}, 40));
    CHECK_THROWS_AS(Parametrization::parse({{"t^2", "t^4"}}, 40, Field::rationals()).required_precision(3),
                    PreconditionError);
    // Too little precision to certify.
    CHECK_FALSE(at({{"t^6", "t^7", "t^10", "t^15"}}, 16));
}

TEST_CASE("small parametrized fixtures") {
    auto line = exact_branch({{"t", "0"}}, 4);
    auto li = ideal_from_param(line, 4);
    CHECK(li.ideal.generator_strings() == std::vector<std::string>{"x2"});
    auto hl = hilbert_from_param(line, 4);
    CHECK(hl.values == std::vector<std::uint64_t>{1, 2, 3, 4});
    CHECK(*hl.e0 == 1);
    CHECK(*hl.e1 == 0);

    auto big = exact_branch({{"t^6", "t^7", "t^10", "t^15"}}, 5);
    auto hb = hilbert_from_param(big, 5);
    CHECK(hb.values == valuation_hilbert({6, 7, 10, 15}, 5));

    // Scaling the family parameter of a one-parameter branch family by a
    // nonzero constant leaves the Hilbert data unchanged.
    for (auto form : {std::string("t^9 + %*t^10"), std::string("%*t^10")}) {
        std::vector<std::vector<std::uint64_t>> tables;
        for (int a : {1, 2}) {
            auto z = form;
            z.replace(z.find('%'), 1, std::to_string(a));
            tables.push_back(hilbert_from_param(exact_branch({{"t^7", "t^8", z}}, 6), 6).values);
        }
        CHECK(tables[0] == tables[1]);
    }
}
