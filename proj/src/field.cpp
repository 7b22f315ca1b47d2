#include "curvetower/field.hpp"

#include "curvetower/errors.hpp"

namespace curvetower {

bool is_prime_number(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) throw PreconditionError("division by zero in F_" + std::to_string(p));
    std::uint64_t result = 1, base = a, e = p - 2;
    while (e > 0) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return result;
}

Field Field::prime(std::uint64_t p) {
    if (!is_prime_number(p))
        throw PreconditionError("characteristic " + std::to_string(p) + " is not a prime");
    if (p >= (1ULL << 31))
        throw PreconditionError("characteristic " + std::to_string(p) + " exceeds 2^31");
    return Field(p);
}

Field Field::from_characteristic(std::uint64_t p) {
    return p == 0 ? rationals() : prime(p);
}

std::string Field::name() const {
    return p_ == 0 ? std::string("Q") : "F_" + std::to_string(p_);
}

namespace {

std::uint64_t reduce_mpz(const mpz_class& z, std::uint64_t p) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
    return r.get_ui();
}

} // namespace

Coeff Field::normalize(const mpq_class& x) const {
    if (p_ == 0) return x;
    std::uint64_t num = reduce_mpz(x.get_num(), p_);
    std::uint64_t den = reduce_mpz(x.get_den(), p_);
    if (den == 0)
        throw PreconditionError("denominator vanishes in " + name());
    return Coeff(static_cast<unsigned long>(num * inverse_mod(den, p_) % p_));
}

Coeff Field::add(const Coeff& a, const Coeff& b) const {
    if (p_ == 0) return a + b;
    return Coeff(static_cast<unsigned long>((a.get_num().get_ui() + b.get_num().get_ui()) % p_));
}

Coeff Field::sub(const Coeff& a, const Coeff& b) const {
    if (p_ == 0) return a - b;
    return Coeff(static_cast<unsigned long>((a.get_num().get_ui() + p_ - b.get_num().get_ui()) % p_));
}

Coeff Field::mul(const Coeff& a, const Coeff& b) const {
    if (p_ == 0) return a * b;
    return Coeff(static_cast<unsigned long>(a.get_num().get_ui() * b.get_num().get_ui() % p_));
}

Coeff Field::neg(const Coeff& a) const {
    if (p_ == 0) return -a;
    return Coeff(static_cast<unsigned long>((p_ - a.get_num().get_ui()) % p_));
}

Coeff Field::inv(const Coeff& a) const {
    if (p_ == 0) {
        if (sgn(a) == 0) throw PreconditionError("division by zero");
        return 1 / a;
    }
    return Coeff(static_cast<unsigned long>(inverse_mod(a.get_num().get_ui(), p_)));
}

} // namespace curvetower
