#include "oracles.hpp"

#include "curvetower/errors.hpp"
#include "curvetower/linalg.hpp"
#include "curvetower/poly.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace curvetower;

namespace {

const Field Q = Field::rationals();

TruncatedPoly P(const char* s, std::size_t n = 2, std::uint32_t level = 8, Field f = Field::rationals()) {
    return parse_poly(s, n, f, level);
}

TruncatedPoly random_poly(std::mt19937_64& rng, std::size_t nvars, const Field& f, std::uint32_t level,
                          int terms) {
    TruncatedPoly p(nvars, f, level);
    std::uniform_int_distribution<int> coef(-4, 4);
    std::uniform_int_distribution<std::uint32_t> deg(0, level - 1);
    for (int i = 0; i < terms; ++i) {
        auto mons = monomials_of_degree(nvars, deg(rng));
        std::uniform_int_distribution<std::size_t> pick(0, mons.size() - 1);
        p.add_term(mons[pick(rng)], coef(rng));
    }
    return p;
}

} // namespace

TEST_CASE("field arithmetic over F_p and Q") {
    auto f7 = Field::prime(7);
    CHECK(f7.normalize(mpq_class(3, 5)) == 2); // 5 * 2 = 10 = 3
    CHECK(f7.neg(3) == 4);
    CHECK(f7.inv(3) == 5);
    CHECK(Q.div(1, 3) == mpq_class(1, 3));
    CHECK_THROWS_AS(Field::prime(6), PreconditionError);
    CHECK_THROWS_AS(f7.inv(0), PreconditionError);
    CHECK_THROWS_AS(f7.normalize(mpq_class(1, 7)), PreconditionError);
}

TEST_CASE("monomial basis order") {
    MonomialBasis b(2, 3);
    REQUIRE(b.size() == 6);
    CHECK(b[0].degree() == 0);
    CHECK(b[1].exponents() == std::vector<std::uint32_t>{1, 0});
    CHECK(b[2].exponents() == std::vector<std::uint32_t>{0, 1});
    CHECK(b[3].exponents() == std::vector<std::uint32_t>{2, 0});
    CHECK(b[5].exponents() == std::vector<std::uint32_t>{0, 2});
    CHECK(b.degree_begin(2) == 3);
    CHECK(b.index_of(Monomial({1, 1})) == 4);
    CHECK(b.index_of(Monomial({3, 0})) == -1);
    CHECK(count_below(4, 10) == 1001);
}

TEST_CASE("parse and print") {
    auto p = P("x1^3 + 2*x1*x2");
    CHECK(p.terms().size() == 2);
    CHECK(p.coefficient(Monomial({1, 1})) == 2);
    CHECK(to_string(p) == "x1^3 + 2*x1*x2");
    CHECK(to_string(P("x2 - x1^2")) == "-x1^2 + x2");
    CHECK(to_string(P("3/6*x1 - 1")) == "1/2*x1 - 1");
    CHECK(to_string(P("x1*x1 - x1^2")) == "0");
    CHECK(to_string(P(" 5 * x1 ^ 2 * x2 ")) == "5*x1^2*x2");
    CHECK(to_string(parse_series("t^6 + 2*t^7", Q, 20), VariableNames::series()) == "2*t^7 + t^6");
    // Terms at or above the level vanish.
    CHECK(to_string(P("x1^3 + x2^8 + x1*x2^9")) == "x1^3");

    for (const char* s : {"x1^3 + 2*x1*x2", "-x1^2*x2 + 7/3*x2^2 - x1", "x1*x2*x3^2 - 1", "0"}) {
        auto q = parse_poly(s, 3, Q, 10);
        CHECK(parse_poly(to_string(q), 3, Q, 10) == q);
        CHECK(to_string(parse_poly(to_string(q), 3, Q, 10)) == to_string(q));
    }
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(P("x3"), ParseError);
    CHECK_THROWS_AS(P("x0"), ParseError);
    CHECK_THROWS_AS(P("2x1"), ParseError);
    CHECK_THROWS_AS(P("x1^"), ParseError);
    CHECK_THROWS_AS(P("1/0*x1"), ParseError);
    CHECK_THROWS_AS(P(""), ParseError);
    CHECK_THROWS_AS(P("x1 +"), ParseError);
    CHECK_THROWS_AS(P("y1"), ParseError);
    try {
        P("x1 + x9");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 5);
    }
}

TEST_CASE("coefficients over F_p are normalized on input") {
    auto f5 = Field::prime(5);
    auto p = parse_poly("7*x1 - x2 + 1/2*x1*x2", 2, f5, 4);
    CHECK(to_string(p) == "3*x1*x2 + 2*x1 + 4*x2");
    CHECK_THROWS_AS(parse_poly("1/5*x1", 2, f5, 4), PreconditionError);
}

TEST_CASE("truncated multiplication") {
    auto one_plus = P("1 + x1", 1, 3);
    CHECK(to_string(one_plus.pow(5)) == "10*x1^2 + 5*x1 + 1");
    auto a = P("x1^2 - x2^3"), b = P("x1*x2 + x2");
    auto prod = a * b;
    auto ref = oracle::mul(oracle::from_lib(a), oracle::from_lib(b), 8);
    CHECK(oracle::from_lib(prod) == ref);
    CHECK_THROWS_AS(a * P("x1", 2, 7), PreconditionError);
    CHECK_THROWS_AS(a * P("x1", 3, 8), PreconditionError);
    CHECK_THROWS_AS(a + P("x1", 2, 8, Field::prime(3)), PreconditionError);
}

TEST_CASE("ring axioms hold on random elements") {
    std::mt19937_64 rng(11);
    for (auto f : {Q, Field::prime(3), Field::prime(101)}) {
        for (int trial = 0; trial < 30; ++trial) {
            auto a = random_poly(rng, 3, f, 6, 6), b = random_poly(rng, 3, f, 6, 6), c = random_poly(rng, 3, f, 6, 6);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * b == b * a);
            CHECK((a - a).is_zero());
            if (f == Q) CHECK(oracle::from_lib(a * b) == oracle::mul(oracle::from_lib(a), oracle::from_lib(b), 6));
        }
    }
}

TEST_CASE("order and initial form") {
    auto p = P("x1^2 + x2^3 - x1*x2^4");
    CHECK(p.order() == 2u);
    CHECK(to_string(p.initial_form()) == "x1^2");
    CHECK(to_string(P("x1^3 - x2^3 + x2^4").initial_form()) == "x1^3 - x2^3");
    CHECK_THROWS_AS(P("0").initial_form(), PreconditionError);
    CHECK(to_string(P("x1^2 + x2^5").truncated(4)) == "x1^2");
    CHECK_THROWS_AS(P("x1").truncated(9), PreconditionError);
}

TEST_CASE("echelon span per degree") {
    auto basis = MonomialBasis::get(2, 3);
    std::vector<SparseVec> vs;
    for (auto s : {"x1", "x2", "x1 + x2"}) vs.push_back(P(s, 2, 3).to_vector(*basis));
    auto slices = echelon_span(*basis, Q, vs);
    CHECK(slices[0].dim() == 0);
    CHECK(slices[1].dim() == 2);
    CHECK(slices[2].dim() == 0);
    // x1 + x2^2 and x2^2 give slice dims (1 in degree 1, 1 in degree 2).
    vs = {P("x1 + x2^2", 2, 3).to_vector(*basis), P("x2^2", 2, 3).to_vector(*basis)};
    slices = echelon_span(*basis, Q, vs);
    CHECK(slices[1].dim() == 1);
    CHECK(slices[2].dim() == 1);
    CHECK(to_string(slices[1].forms[0]) == "x1");
}

TEST_CASE("echelon rank matches dense elimination and ignores order") {
    std::mt19937_64 rng(5);
    for (long p : {0L, 3L, 7L}) {
        Field f = Field::from_characteristic(static_cast<std::uint64_t>(p));
        for (int trial = 0; trial < 25; ++trial) {
            std::uniform_int_distribution<int> coef(-3, 3), len(1, 9), width(1, 9);
            std::size_t w = static_cast<std::size_t>(width(rng));
            int rows = len(rng);
            std::vector<SparseVec> vs;
            std::vector<std::vector<oracle::Rat>> dense;
            for (int r = 0; r < rows; ++r) {
                SparseVec v;
                std::vector<oracle::Rat> d(w);
                for (std::uint32_t c = 0; c < w; ++c) {
                    int x = coef(rng) * (coef(rng) > 0);
                    Coeff y = f.from_int(x);
                    if (sgn(y) != 0) v.emplace_back(c, y);
                    d[c] = x;
                }
                vs.push_back(v);
                dense.push_back(d);
            }
            auto r = rank_of(f, w, vs);
            CHECK(r == oracle::rank(dense, p));
            Echelon a(f, w), b(f, w);
            for (auto& v : vs) a.insert(v);
            std::shuffle(vs.begin(), vs.end(), rng);
            for (auto& v : vs) b.insert(v);
            CHECK(a.rref() == b.rref());
            for (auto& v : vs) CHECK(a.contains(v));
            for (auto& v : vs) CHECK(a.reduce(v).empty());
        }
    }
}

TEST_CASE("kernel vectors are relations of full dimension") {
    std::mt19937_64 rng(9);
    for (long p : {0L, 5L}) {
        Field f = Field::from_characteristic(static_cast<std::uint64_t>(p));
        for (int trial = 0; trial < 20; ++trial) {
            std::uniform_int_distribution<int> coef(-2, 2);
            const std::size_t w = 4, m = 7;
            std::vector<SparseVec> cols;
            for (std::size_t j = 0; j < m; ++j) {
                SparseVec v;
                for (std::uint32_t c = 0; c < w; ++c) {
                    Coeff y = f.from_int(coef(rng));
                    if (sgn(y) != 0) v.emplace_back(c, y);
                }
                cols.push_back(v);
            }
            auto ker = kernel(f, w, cols);
            CHECK(ker.size() == m - rank_of(f, w, cols));
            for (auto& k : ker) {
                SparseVec acc;
                for (auto& [j, c] : k) acc = axpy(f, acc, c, cols[j]);
                CHECK(acc.empty());
            }
        }
    }
}
