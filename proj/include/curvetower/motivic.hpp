#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace curvetower {

// An element of Z[L, 1/L], L the class of the affine line.
class MotivicClass {
public:
    MotivicClass() = default;
    static MotivicClass constant(const mpz_class& c);
    static MotivicClass lefschetz(std::int64_t exponent = 1);
    static MotivicClass parse(const std::string& text);

    const std::map<std::int64_t, mpz_class>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::optional<std::int64_t> top_exponent() const;
    // -top_exponent; the filtration order.
    std::optional<std::int64_t> order() const;
    // 2^top_exponent, and 0 for the zero class.
    mpq_class norm() const;

    MotivicClass operator+(const MotivicClass& o) const;
    MotivicClass operator-(const MotivicClass& o) const;
    MotivicClass operator-() const;
    MotivicClass operator*(const MotivicClass& o) const;
    MotivicClass scaled(const mpz_class& c) const;
    MotivicClass shifted(std::int64_t k) const; // times L^k
    bool operator==(const MotivicClass& o) const { return terms_ == o.terms_; }

private:
    void add_term(std::int64_t e, const mpz_class& c);
    std::map<std::int64_t, mpz_class> terms_;
};

std::string to_string(const MotivicClass& a);
// Point count realization L -> q.
mpq_class specialize(const MotivicClass& a, const mpq_class& q);

// numerator(T) / prod (1 - L^a T^b)
struct RationalSeries {
    std::vector<MotivicClass> numerator;                    // coefficient of T^k at index k
    std::vector<std::pair<std::int64_t, std::uint32_t>> denominator; // (a, b) with a >= 0, b >= 1

    void validate() const;
};

std::string to_string(const RationalSeries& s);
// Coefficients of T^0 .. T^k.
std::vector<MotivicClass> series_expand(const RationalSeries& s, std::size_t k);
// Equality of the represented series by cross-multiplication.
bool same_series(const RationalSeries& a, const RationalSeries& b);
RationalSeries operator*(const RationalSeries& a, const RationalSeries& b);

struct MeasureContext {
    std::uint32_t nvars;
    std::uint32_t e0;
    MeasureContext(std::uint32_t nvars, std::uint32_t e0);
    std::int64_t fibration_rank() const { return static_cast<std::int64_t>(nvars - 1) * e0; }
};

// class_n * L^{-(n+1) c}
MotivicClass measure_of_level(const MotivicClass& class_n, std::uint32_t n, const MeasureContext& ctx);
// class0 L^{c n0} T^{n0} / (1 - L^c T)
RationalSeries mps(const MotivicClass& class0, std::uint32_t n0, const MeasureContext& ctx);

struct PartialVolume {
    MotivicClass value;      // sum over s <= S of term(s) L^{-s}
    std::uint32_t last_index = 0;
    std::int64_t tail_log2 = 0; // the omitted tail has norm at most 2^tail_log2
};

PartialVolume volume_partial(const std::map<std::uint32_t, MotivicClass>& terms);

// Integer polynomial in L through the points (q, count); the fit uses the
// lowest degree that interpolates every point, and gives nothing when the
// interpolant has non-integer coefficients or when max_degree is too small.
std::optional<MotivicClass> fit_class_from_counts(const std::vector<std::pair<mpz_class, mpz_class>>& points,
                                                  std::size_t max_degree);

} // namespace curvetower
