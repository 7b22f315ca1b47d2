#pragma once

#include "curvetower/ideal.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace curvetower {

struct SemigroupData {
    std::vector<std::uint64_t> generators;
    std::vector<std::uint64_t> gaps;
    std::uint64_t delta = 0;     // number of gaps
    std::uint64_t conductor = 0; // every integer >= conductor is an element
    bool contains(std::uint64_t x) const;
};

SemigroupData semigroup(const std::vector<std::uint64_t>& generators);
std::int64_t milnor(std::uint64_t delta, std::uint64_t branches);

// One branch: N series in t, all known modulo t^precision.
struct Branch {
    std::vector<TruncatedPoly> components;
};

class Parametrization {
public:
    Parametrization(std::size_t nvars, Field field, std::uint32_t precision, std::vector<Branch> branches);
    static Parametrization parse(const std::vector<std::vector<std::string>>& branches, std::uint32_t precision,
                                 const Field& field);

    std::size_t nvars() const noexcept { return nvars_; }
    const Field& field() const noexcept { return field_; }
    std::uint32_t precision() const noexcept { return precision_; }
    const std::vector<Branch>& branches() const noexcept { return branches_; }
    std::vector<std::vector<std::string>> component_strings() const;

    // t-orders of the nonzero components of a single-branch input with all
    // components monomials, or empty.
    std::optional<std::vector<std::uint64_t>> monomial_orders() const;
    // Smallest precision for which level n is computed exactly. Throws when
    // the conductor cannot be certified at the current precision.
    std::uint32_t required_precision(std::uint32_t n) const;

private:
    std::size_t nvars_;
    Field field_;
    std::uint32_t precision_;
    std::vector<Branch> branches_;
};

struct ConductorData {
    std::uint32_t conductor; // t^conductor times the normalization lies in the ring
    std::uint64_t delta;
};

// Exact conductor and delta from the image of the coordinate ring, or empty
// when the precision is too low to certify them.
std::optional<ConductorData> conductor_from_param(const Parametrization& param);

struct ParamIdeal {
    IdealPresentation ideal; // minimal generators of (I + M^n) / M^n
    DegreeSpans spans;
    std::uint32_t required_precision;
};

// (I + M^n) / M^n for the ideal I of the parametrized curve.
ParamIdeal ideal_from_param(const Parametrization& param, std::uint32_t n);
HilbertData hilbert_from_param(const Parametrization& param, std::uint32_t n, std::uint32_t window = 2);

// dim O / m^{t+1} for t < n of a monomial branch (t^a1, ..., t^aN): the
// number of semigroup elements with no representation as a sum of t+1
// generators.
std::vector<std::uint64_t> valuation_hilbert(const std::vector<std::uint64_t>& generators, std::uint32_t n);

using Fiber = std::variant<IdealPresentation, Parametrization>;

struct NormalFlatReport {
    bool normally_flat = false;
    bool same_polynomial = false;
    std::optional<std::size_t> mismatch_fiber;
    std::optional<std::uint32_t> mismatch_degree;
    std::vector<HilbertData> tables;
};

NormalFlatReport normally_flat_fiber_compare(const std::vector<Fiber>& fibers, std::uint32_t n);
HilbertData fiber_hilbert(const Fiber& fiber, std::uint32_t n);

enum class Rigidity { rigid, unknown };
std::string to_string(Rigidity r);
Rigidity is_rigid_known(std::uint32_t e0, std::int64_t e1);

} // namespace curvetower
