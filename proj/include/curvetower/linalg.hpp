#pragma once

#include "curvetower/field.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

namespace curvetower {

// Sorted by column, no explicit zeros.
using SparseVec = std::vector<std::pair<std::uint32_t, Coeff>>;

// Incremental row echelon form. Every stored row has a distinct leading
// column (its pivot) with coefficient 1. Since columns are ordered by
// degree, the number of pivots below a column boundary is the rank of the
// projection onto the leading coordinates.
class Echelon {
public:
    Echelon(Field field, std::size_t width);
    Echelon(const Echelon&);
    Echelon& operator=(const Echelon&);
    Echelon(Echelon&&) noexcept;
    Echelon& operator=(Echelon&&) noexcept;
    ~Echelon();

    const Field& field() const noexcept { return field_; }
    std::size_t width() const noexcept { return width_; }
    std::size_t rank() const;

    // Returns true when the vector was independent of the current span.
    bool insert(const SparseVec& v);
    bool contains(const SparseVec& v) const;
    // Normal form modulo the span: no entry sits on a pivot column.
    SparseVec reduce(const SparseVec& v) const;

    std::vector<std::uint32_t> pivots() const;
    std::size_t pivots_below(std::uint32_t column) const;
    bool has_pivot(std::uint32_t column) const;
    // Reduced row echelon basis, sorted by pivot. Canonical for the span.
    std::vector<SparseVec> rref() const;

private:
    struct Impl;
    Field field_;
    std::size_t width_;
    std::unique_ptr<Impl> impl_;
};

// Basis of { c : sum_j c_j columns[j] = 0 } as sparse vectors of length
// columns.size().
std::vector<SparseVec> kernel(const Field& field, std::size_t width, const std::vector<SparseVec>& columns);

std::size_t rank_of(const Field& field, std::size_t width, const std::vector<SparseVec>& vectors);

SparseVec axpy(const Field& field, const SparseVec& x, const Coeff& a, const SparseVec& y); // x + a*y
SparseVec scale(const Field& field, const SparseVec& x, const Coeff& a);
SparseVec shift_columns(const SparseVec& v, std::uint32_t offset);

} // namespace curvetower
