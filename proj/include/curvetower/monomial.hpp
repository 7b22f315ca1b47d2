#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

namespace curvetower {

class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<std::uint32_t> exponents);
    static Monomial one(std::size_t nvars) { return Monomial(std::vector<std::uint32_t>(nvars, 0)); }
    // 0-based variable index.
    static Monomial variable(std::size_t nvars, std::size_t i);

    std::size_t nvars() const noexcept { return exps_.size(); }
    std::uint32_t degree() const noexcept { return degree_; }
    std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
    const std::vector<std::uint32_t>& exponents() const noexcept { return exps_; }

    Monomial operator*(const Monomial& other) const;
    bool divides(const Monomial& other) const;

    // Degree first, then lexicographic with x1 > x2 > ...
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }

private:
    std::vector<std::uint32_t> exps_;
    std::uint32_t degree_ = 0;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept;
};

// All monomials of degree < level in column order: degree ascending and,
// inside one degree, x1^d first. Column indices used by every span
// computation refer to this order.
class MonomialBasis {
public:
    MonomialBasis(std::size_t nvars, std::uint32_t level);
    static std::shared_ptr<const MonomialBasis> get(std::size_t nvars, std::uint32_t level);

    std::size_t nvars() const noexcept { return nvars_; }
    std::uint32_t level() const noexcept { return level_; }
    std::size_t size() const noexcept { return monomials_.size(); }
    const Monomial& operator[](std::size_t i) const { return monomials_[i]; }
    const std::vector<Monomial>& monomials() const noexcept { return monomials_; }

    // First column of degree d, for 0 <= d <= level.
    std::size_t degree_begin(std::uint32_t d) const { return begin_[d]; }
    std::size_t degree_size(std::uint32_t d) const { return begin_[d + 1] - begin_[d]; }
    // Returns -1 when the monomial has degree >= level.
    std::ptrdiff_t index_of(const Monomial& m) const;

private:
    std::size_t nvars_;
    std::uint32_t level_;
    std::vector<Monomial> monomials_;
    std::vector<std::size_t> begin_;
    std::unordered_map<Monomial, std::size_t, MonomialHash> index_;
};

// Monomials of exactly degree d, x1^d first.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, std::uint32_t d);
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);
// dim of polynomials of degree <= t in n variables.
std::uint64_t count_below(std::size_t nvars, std::uint32_t t);

} // namespace curvetower
