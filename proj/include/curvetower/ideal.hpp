#pragma once

#include "curvetower/linalg.hpp"
#include "curvetower/poly.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace curvetower {

// The ideal (generators) + M^level of k[[x1..xN]]. Generators are nonzero
// and lie in M. An empty generator list presents M^level itself.
class IdealPresentation {
public:
    IdealPresentation(std::size_t nvars, Field field, std::uint32_t level, std::vector<TruncatedPoly> generators);
    static IdealPresentation parse(const std::vector<std::string>& generators, std::size_t nvars, const Field& field,
                                   std::uint32_t level);
    // Drops generators that vanish at the target level.
    static IdealPresentation from_nonzero(std::size_t nvars, Field field, std::uint32_t level,
                                          const std::vector<TruncatedPoly>& generators);

    std::size_t nvars() const noexcept { return nvars_; }
    const Field& field() const noexcept { return field_; }
    std::uint32_t level() const noexcept { return level_; }
    const std::vector<TruncatedPoly>& generators() const noexcept { return generators_; }

    // Same generators seen in R / M^n, n <= level.
    IdealPresentation truncated(std::uint32_t n) const;
    // Generators read as exact polynomials and re-levelled to n.
    IdealPresentation with_level(std::uint32_t n) const;
    IdealPresentation plus(const IdealPresentation& other) const;

    std::vector<std::string> generator_strings() const;

private:
    std::size_t nvars_;
    Field field_;
    std::uint32_t level_;
    std::vector<TruncatedPoly> generators_;
};

// The image of an ideal in R / M^n as one echelon form over the graded
// column order, from which every truncation is read off.
class DegreeSpans {
public:
    DegreeSpans(std::shared_ptr<const MonomialBasis> basis, Echelon span);
    // Vectors already spanning an ideal of R / M^n.
    static DegreeSpans of_closed_span(std::shared_ptr<const MonomialBasis> basis, const Field& field,
                                      const std::vector<SparseVec>& vectors);

    std::uint32_t level() const noexcept { return basis_->level(); }
    const MonomialBasis& basis() const noexcept { return *basis_; }
    std::shared_ptr<const MonomialBasis> basis_ptr() const noexcept { return basis_; }
    const Echelon& echelon() const noexcept { return span_; }
    const Field& field() const noexcept { return span_.field(); }

    // dim (I + M^{d+1}) / M^{d+1}
    std::size_t cumulative_dim(std::uint32_t d) const;
    // dim I*_d
    std::size_t slice_dim(std::uint32_t d) const;
    DegreeSlice slice(std::uint32_t d) const;
    std::vector<DegreeSlice> slices() const;
    bool contains(const TruncatedPoly& f) const;
    std::vector<SparseVec> rref() const;

private:
    std::shared_ptr<const MonomialBasis> basis_;
    Echelon span_;
    std::vector<std::size_t> pivots_per_degree_;
    mutable std::optional<std::vector<SparseVec>> rref_;
};

DegreeSpans ideal_spans(const IdealPresentation& ideal, std::uint32_t n);

enum class HilbertStatus { ok, not_stabilized, dim_ge_2 };
std::string to_string(HilbertStatus s);

struct HilbertData {
    std::vector<std::uint64_t> values; // dim R / (I + M^{t+1}), t = 0..n-1
    std::vector<std::uint64_t> graded; // first differences
    std::optional<std::int64_t> e0;
    std::optional<std::int64_t> e1;    // values(t) = e0 (t+1) - e1 on the stable tail
    std::optional<std::uint32_t> stab_index;
    HilbertStatus status = HilbertStatus::not_stabilized;
};

// `window` is the number of consecutive equal graded values, ending at
// the last computed degree, needed to declare the tail stable.
HilbertData hilbert_from_values(std::vector<std::uint64_t> values, std::uint32_t window = 2);
HilbertData hilbert_from_spans(const DegreeSpans& spans, std::uint32_t window = 2);
HilbertData hilbert_data(const IdealPresentation& ideal, std::uint32_t n, std::uint32_t window = 2);

struct InitialIdealData {
    std::uint32_t level = 0;
    std::vector<DegreeSlice> slices;                // I*_d for d < level
    std::vector<std::uint32_t> generator_degrees;   // minimal generator degrees of I* below level
    std::size_t nu() const noexcept { return generator_degrees.size(); }
};

InitialIdealData initial_ideal(const IdealPresentation& ideal, std::uint32_t n);
InitialIdealData initial_ideal(const DegreeSpans& spans);

// Echelon of S_1 * slice inside the full column space.
Echelon degree_shift_span(const MonomialBasis& basis, const Field& field, const DegreeSlice& slice);
// Forms of `slice` completing S_1 * lower to a basis; empty lower means none.
std::vector<TruncatedPoly> new_generators_in_degree(const MonomialBasis& basis, const Field& field,
                                                    const DegreeSlice* lower, const DegreeSlice& slice);

struct StandardBasisReport {
    bool is_standard_basis = false;
    std::uint32_t level = 0;
    std::optional<std::uint32_t> failing_degree;
    std::optional<TruncatedPoly> missing_form;
};

StandardBasisReport standard_basis_check(const IdealPresentation& ideal, std::uint32_t n);

std::size_t min_generators(const IdealPresentation& ideal, std::uint32_t n);
// A minimal generating set picked from a closed span, lowest pivots first.
std::vector<TruncatedPoly> minimal_generators(const DegreeSpans& spans);

struct IntersectionResult {
    std::optional<std::uint64_t> value; // empty when no stabilization below n_max
    std::optional<std::uint32_t> stable_from;
    std::vector<std::uint64_t> lengths; // dim R/(I+X+M^{t+1})
};

IntersectionResult intersection_number(const IdealPresentation& ideal, const IdealPresentation& other,
                                       std::uint32_t n_max);

} // namespace curvetower
