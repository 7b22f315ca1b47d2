#pragma once

#include "curvetower/ideal.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace curvetower {

// How far to push truncation levels when none is given explicitly.
struct CutoffPolicy {
    std::uint32_t n_default = 8;
    std::uint32_t n_max = 24;
    std::uint32_t window = 2;

    static constexpr const char* env_var = "CURVETOWER_CUTOFF";
    // "n_default=8,n_max=24,window=2", any subset of keys.
    static CutoffPolicy parse(const std::string& text);
    static CutoffPolicy from_env();
};

struct AutoHilbert {
    HilbertData data;
    std::uint32_t level = 0;
};

// Generators are read as exact polynomials. Levels grow from n_default
// until the tail stabilizes and the level reaches 2 e0 + 2, capped at n_max.
AutoHilbert hilbert_auto(const IdealPresentation& ideal, const CutoffPolicy& policy);

// L_q = sum_i q^(i-1) x_i for q = 0 .. e0(N-1).
std::vector<TruncatedPoly> candidate_forms(std::size_t nvars, std::uint32_t e0, const Field& field,
                                           std::uint32_t level);
TruncatedPoly candidate_form(std::size_t nvars, std::uint64_t point, const Field& field, std::uint32_t level);
// Every nonzero linear form over a prime field up to scalars, first
// nonzero coefficient 1.
std::vector<TruncatedPoly> all_rational_forms(std::size_t nvars, const Field& field, std::uint32_t level);

enum class FormSearch { automatic, candidates, all_rational };

struct TnCertificate {
    TruncatedPoly form;
    std::uint64_t length_with_form = 0;  // dim R / (J + (L))
    std::vector<std::uint32_t> iso_range; // degrees t where x L is an isomorphism
};

struct TnFailure {
    int condition = 0; // 1: length bound, 2: graded isomorphisms
    std::uint32_t degree = 0;
    std::string detail;
};

struct TnResult {
    bool member = false;
    std::optional<TnCertificate> certificate;
    std::optional<TnFailure> failure;
    std::size_t forms_tried = 0;
};

// J must be presented at level n (so M^n is contained in J).
TnResult tn_membership(const IdealPresentation& J, std::uint32_t n, std::uint32_t e0,
                       FormSearch search = FormSearch::automatic);
TnResult tn_membership(const IdealPresentation& J, std::uint32_t n, std::uint32_t e0,
                       const std::vector<TruncatedPoly>& forms);

struct SuperficialResult {
    bool passes = false;
    std::uint64_t length = 0; // dim R / (I + M^{e0+1} + (L))
    std::vector<std::uint32_t> iso_range;
};

SuperficialResult cm_superficial_test(const IdealPresentation& ideal, const TruncatedPoly& form, std::uint32_t e0,
                                      std::uint32_t n);

struct ShapeReport {
    bool ok = false;
    std::vector<std::uint32_t> generator_degrees;   // of J*, including degree n
    std::vector<std::uint32_t> forbidden_degrees;   // generator degrees inside e0+1 .. n-1
    std::vector<std::uint32_t> slice_identity_failures; // t with J*_t != S_1 J*_{t-1}
};

ShapeReport shape_check(const IdealPresentation& J, std::uint32_t n, std::uint32_t e0);

struct JTildeResult {
    std::vector<TruncatedPoly> generators;
    bool reproduces_initial_ideal = false; // J~ + M^n == J*
    std::optional<std::int64_t> multiplicity;
};

JTildeResult jtilde(const IdealPresentation& J, std::uint32_t n, std::uint32_t e0);

// Pairs (rho0, rho1) bounding e1 for embedding dimension b.
struct AdmissibleRange {
    std::uint32_t b = 0;
    std::uint32_t e0 = 0;
    std::uint32_t r = 0;
    std::int64_t rho0 = 0;
    std::int64_t rho1 = 0;
    bool empty() const noexcept { return rho0 > rho1; }
    bool contains(std::int64_t e1) const noexcept { return rho0 <= e1 && e1 <= rho1; }
};

AdmissibleRange admissible_range(std::uint32_t b, std::uint32_t e0);
bool admissible(std::uint32_t b, std::uint32_t e0, std::int64_t e1);
// All (b, e1) with 1 <= b <= min(N, e0) and e1 admissible.
std::vector<std::pair<std::uint32_t, std::int64_t>> admissible_polys(std::size_t nvars, std::uint32_t e0);

struct StratumResult {
    bool in_stratum = false;
    std::uint32_t window_begin = 0; // degrees r .. e0
    std::uint32_t window_end = 0;
    std::optional<std::uint32_t> first_mismatch;
};

// Compares dim R/(I + M^{t+1}) with F(t) for r <= t <= e0. F is indexed by t.
StratumResult hilbert_stratum_check(const IdealPresentation& ideal, const std::vector<std::uint64_t>& F,
                                    std::uint32_t r, std::uint32_t e0);

// Monomials are numbered from 1 in column order (degree first, x1^d
// first inside a degree).
struct CellIndex {
    std::vector<std::uint32_t> i_block; // p(e0-1) monomials of degree < e0
    std::vector<std::uint32_t> j_block; // e0 monomials of degree e0
    std::uint64_t point = 0;            // selects L_q
};

struct CellResult {
    bool member = false;
    std::size_t rank_deficit = 0;
};

CellResult cell_membership(const IdealPresentation& J, std::uint32_t n, const CellIndex& cell, std::uint32_t e0);

struct EnumerationRequest {
    std::size_t nvars = 2;
    std::uint32_t e0 = 1;
    std::optional<std::int64_t> e1; // defaults to the unique admissible value
    std::uint32_t level = 3;
    std::uint64_t q = 2;
    std::uint64_t budget = 5'000'000;
    std::optional<std::uint64_t> form_shuffle_seed;
};

struct EnumerationResult {
    std::int64_t e1 = 0;
    std::vector<IdealPresentation> ideals; // sorted canonically
    std::uint64_t count = 0;
    std::uint64_t candidates_examined = 0;
};

EnumerationResult enumerate_xi(const EnumerationRequest& request);

} // namespace curvetower
