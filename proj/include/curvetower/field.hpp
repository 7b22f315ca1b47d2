#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace curvetower {

// Every coefficient is stored as an exact rational. Over F_p the stored
// value is always the integer representative in [0, p).
using Coeff = mpq_class;

class Field {
public:
    static Field rationals() { return Field(0); }
    static Field prime(std::uint64_t p);
    // 0 selects the rationals, anything else must be a prime.
    static Field from_characteristic(std::uint64_t p);

    bool is_prime() const noexcept { return p_ != 0; }
    std::uint64_t characteristic() const noexcept { return p_; }
    std::string name() const;

    Coeff normalize(const mpq_class& x) const;
    Coeff from_int(long v) const { return normalize(mpq_class(v)); }
    Coeff add(const Coeff& a, const Coeff& b) const;
    Coeff sub(const Coeff& a, const Coeff& b) const;
    Coeff mul(const Coeff& a, const Coeff& b) const;
    Coeff neg(const Coeff& a) const;
    Coeff inv(const Coeff& a) const;
    Coeff div(const Coeff& a, const Coeff& b) const { return mul(a, inv(b)); }

    // Number of elements, only meaningful for prime fields.
    std::uint64_t size() const noexcept { return p_; }

    friend bool operator==(const Field&, const Field&) = default;

private:
    explicit Field(std::uint64_t p) : p_(p) {}
    std::uint64_t p_;
};

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p);
bool is_prime_number(std::uint64_t n);

} // namespace curvetower
