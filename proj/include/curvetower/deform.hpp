#pragma once

#include "curvetower/branches.hpp"
#include "curvetower/ideal.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace curvetower {

// f + eps g with eps^2 = 0.
struct DualPoly {
    TruncatedPoly f;
    TruncatedPoly g;

    DualPoly(TruncatedPoly f_part, TruncatedPoly g_part);
    static DualPoly plain(TruncatedPoly f);

    DualPoly operator+(const DualPoly& o) const;
    DualPoly operator-(const DualPoly& o) const;
    DualPoly operator-() const;
    DualPoly operator*(const DualPoly& o) const;
    bool operator==(const DualPoly& o) const { return f == o.f && g == o.g; }
};

// The ideal (f_i + eps g_i) over k[eps].
class FirstOrderDeformation {
public:
    FirstOrderDeformation(IdealPresentation base, std::vector<TruncatedPoly> perturbations);
    static FirstOrderDeformation parse(const std::vector<std::string>& base, const std::vector<std::string>& perturbations,
                                       std::size_t nvars, const Field& field, std::uint32_t level);

    const IdealPresentation& base() const noexcept { return base_; }
    const std::vector<TruncatedPoly>& perturbations() const noexcept { return perturbations_; }
    std::vector<std::uint32_t> orders() const;
    std::vector<std::string> perturbation_strings() const;

private:
    IdealPresentation base_;
    std::vector<TruncatedPoly> perturbations_;
};

// { h mod M^a : h K in I + M^a }. An ideal presented at a level j below a
// stands for its generators plus M^j.
class ColonSpace {
public:
    ColonSpace(DegreeSpans spans) : spans_(std::move(spans)) {}
    std::uint32_t level() const noexcept { return spans_.level(); }
    const DegreeSpans& spans() const noexcept { return spans_; }
    std::size_t dimension() const { return spans_.echelon().rank(); }
    std::size_t codimension() const { return spans_.basis().size() - dimension(); }
    bool contains(const TruncatedPoly& h) const { return spans_.contains(h.at_level(level())); }

private:
    DegreeSpans spans_;
};

// Span of (ideal + M^a) / M^a, padding with M^level when level < a.
DegreeSpans spans_at(const IdealPresentation& ideal, std::uint32_t a);

ColonSpace colon(const IdealPresentation& ambient, const IdealPresentation& divisor, std::uint32_t a);

struct FamilyReport {
    bool family = false;
    std::vector<std::uint32_t> orders;
    std::vector<bool> member;
    std::vector<std::size_t> colon_codimensions; // finite-level tangent data per generator
};

// Colon criterion at level e0 + 1. Requires the base to be a standard basis
// at level e0 + 2 with every generator order at most e0.
FamilyReport is_family_first_order(const FirstOrderDeformation& d, std::uint32_t e0);

struct FlatnessReport {
    bool flat = false;
    std::size_t quotient_dim = 0;  // dim over k of R[eps] / (J + M^n)
    std::size_t expected_dim = 0;  // 2 dim R / (I + M^n)
};

FlatnessReport flatness_direct(const FirstOrderDeformation& d, std::uint32_t n);

// colon(I + M^{e0+1}, I + M^{e0+1-v}, e0+1) == I + M^v for each v.
std::vector<bool> cm_colon_identity(const IdealPresentation& ideal, std::uint32_t e0, const std::vector<std::uint32_t>& vs);

using PolyMatrix = std::vector<std::vector<TruncatedPoly>>;
using DualMatrix = std::vector<std::vector<DualPoly>>;

// The a maximal minors of an a x (a-1) matrix with entries in M.
std::vector<TruncatedPoly> maximal_minors(const PolyMatrix& m);
std::vector<DualPoly> maximal_minors(const DualMatrix& m);
IdealPresentation determinantal_ideal(const PolyMatrix& m);
FirstOrderDeformation determinantal_deformation(const DualMatrix& m);

// Generators given by coefficient lists in powers of a parameter u.
using IdealFamily = std::vector<std::vector<TruncatedPoly>>;
// Branch components given by coefficient lists in powers of u.
using BranchFamily = std::vector<std::vector<std::vector<TruncatedPoly>>>;

IdealPresentation specialize_family(const IdealFamily& family, const Coeff& u, std::size_t nvars, const Field& field,
                                    std::uint32_t level);
Parametrization specialize_family(const BranchFamily& family, const Coeff& u, const Field& field,
                                  std::uint32_t precision);

struct FiberwiseReport {
    std::vector<Coeff> samples;
    std::vector<HilbertData> fibers;
    bool constant = false; // every fiber has the same (e0, e1)
    std::optional<std::size_t> first_mismatch;
};

FiberwiseReport fiberwise_family_check(const std::vector<Fiber>& fibers, const std::vector<Coeff>& samples,
                                       std::uint32_t n);

} // namespace curvetower
