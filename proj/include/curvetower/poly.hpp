#pragma once

#include "curvetower/field.hpp"
#include "curvetower/linalg.hpp"
#include "curvetower/monomial.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace curvetower {

// Element of k[[x1..xN]] / M^level, kept as a sparse map. No stored
// monomial has degree >= level and no stored coefficient is zero.
class TruncatedPoly {
public:
    using TermMap = std::map<Monomial, Coeff>;

    TruncatedPoly(std::size_t nvars, Field field, std::uint32_t level);
    static TruncatedPoly constant(std::size_t nvars, Field field, std::uint32_t level, const Coeff& c);
    static TruncatedPoly term(std::size_t nvars, Field field, std::uint32_t level, const Monomial& m,
                              const Coeff& c);
    // 0-based variable index.
    static TruncatedPoly variable(std::size_t nvars, Field field, std::uint32_t level, std::size_t i);
    static TruncatedPoly from_vector(const MonomialBasis& basis, Field field, const SparseVec& v);

    std::size_t nvars() const noexcept { return nvars_; }
    const Field& field() const noexcept { return field_; }
    std::uint32_t level() const noexcept { return level_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    Coeff coefficient(const Monomial& m) const;

    // Lowest degree carrying a nonzero term; empty for zero.
    std::optional<std::uint32_t> order() const;
    std::uint32_t max_degree() const;
    TruncatedPoly homogeneous_part(std::uint32_t d) const;
    TruncatedPoly initial_form() const;

    void add_term(const Monomial& m, const Coeff& c);

    TruncatedPoly operator+(const TruncatedPoly& o) const;
    TruncatedPoly operator-(const TruncatedPoly& o) const;
    TruncatedPoly operator-() const;
    // Product truncated at the common level.
    TruncatedPoly operator*(const TruncatedPoly& o) const;
    TruncatedPoly scaled(const Coeff& c) const;
    TruncatedPoly times_monomial(const Monomial& m) const;
    TruncatedPoly pow(std::uint32_t e) const;

    // Drops terms of degree >= n; n must not exceed the current level.
    TruncatedPoly truncated(std::uint32_t n) const;
    // Reads the stored terms as an exact polynomial and re-levels to n,
    // truncating when n is smaller.
    TruncatedPoly at_level(std::uint32_t n) const;

    SparseVec to_vector(const MonomialBasis& basis) const;

    friend bool operator==(const TruncatedPoly& a, const TruncatedPoly& b);

private:
    void check_compatible(const TruncatedPoly& o) const;

    std::size_t nvars_;
    Field field_;
    std::uint32_t level_;
    TermMap terms_;
};

// Variables print and parse as x1..xN, or as a single symbol such as t
// for one-variable series.
struct VariableNames {
    std::string symbol = "x";
    bool indexed = true;
    static VariableNames series(std::string s = "t") { return {std::move(s), false}; }
};

TruncatedPoly parse_poly(std::string_view text, std::size_t nvars, const Field& field, std::uint32_t level,
                         const VariableNames& names = {});
// One-variable series in t known modulo t^precision.
TruncatedPoly parse_series(std::string_view text, const Field& field, std::uint32_t precision);

// Terms in decreasing degree-lex order; parse_poly reads the result back.
std::string to_string(const TruncatedPoly& p, const VariableNames& names = {});

// Splits a comma separated generator list.
std::vector<std::string> split_list(std::string_view text, char sep = ',');

// Reduced echelon bases, one per degree block, of the span of vectors
// given in the column order of `basis`. Entry d is the block of initial
// forms of degree d (elements of the span whose lower blocks vanish).
struct DegreeSlice {
    std::uint32_t degree = 0;
    std::vector<TruncatedPoly> forms;
    std::size_t dim() const noexcept { return forms.size(); }
};

std::vector<DegreeSlice> echelon_span(const MonomialBasis& basis, const Field& field,
                                      const std::vector<SparseVec>& vectors);

} // namespace curvetower
