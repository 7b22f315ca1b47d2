#include "curvetower/monomial.hpp"

#include "curvetower/errors.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <utility>

namespace curvetower {

Monomial::Monomial(std::vector<std::uint32_t> exponents)
    : exps_(std::move(exponents)),
      degree_(std::accumulate(exps_.begin(), exps_.end(), std::uint32_t{0})) {}

Monomial Monomial::variable(std::size_t nvars, std::size_t i) {
    if (i >= nvars) throw PreconditionError("variable index out of range");
    std::vector<std::uint32_t> e(nvars, 0);
    e[i] = 1;
    return Monomial(std::move(e));
}

Monomial Monomial::operator*(const Monomial& other) const {
    if (nvars() != other.nvars()) throw PreconditionError("monomials over different rings");
    std::vector<std::uint32_t> e(exps_);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += other.exps_[i];
    return Monomial(std::move(e));
}

bool Monomial::divides(const Monomial& other) const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] > other.exps_[i]) return false;
    return true;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
    return a.exps_ <=> b.exps_;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto e : m.exponents()) h = (h ^ e) * 1099511628211ULL;
    return h;
}

namespace {

void fill_degree(std::size_t nvars, std::uint32_t remaining, std::size_t pos,
                 std::vector<std::uint32_t>& cur, std::vector<Monomial>& out) {
    if (pos + 1 == nvars) {
        cur[pos] = remaining;
        out.emplace_back(cur);
        return;
    }
    for (std::uint32_t e = remaining + 1; e-- > 0;) {
        cur[pos] = e;
        fill_degree(nvars, remaining - e, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

} // namespace

std::vector<Monomial> monomials_of_degree(std::size_t nvars, std::uint32_t d) {
    std::vector<Monomial> out;
    if (nvars == 0) {
        if (d == 0) out.emplace_back(std::vector<std::uint32_t>{});
        return out;
    }
    std::vector<std::uint32_t> cur(nvars, 0);
    fill_degree(nvars, d, 0, cur, out);
    return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::uint64_t count_below(std::size_t nvars, std::uint32_t t) { return binomial(nvars + t, nvars); }

MonomialBasis::MonomialBasis(std::size_t nvars, std::uint32_t level) : nvars_(nvars), level_(level) {
    if (nvars == 0) throw PreconditionError("ambient dimension must be positive");
    begin_.push_back(0);
    for (std::uint32_t d = 0; d < level; ++d) {
        for (auto& m : monomials_of_degree(nvars, d)) {
            index_.emplace(m, monomials_.size());
            monomials_.push_back(std::move(m));
        }
        begin_.push_back(monomials_.size());
    }
}

std::shared_ptr<const MonomialBasis> MonomialBasis::get(std::size_t nvars, std::uint32_t level) {
    static std::mutex mu;
    static std::map<std::pair<std::size_t, std::uint32_t>, std::shared_ptr<const MonomialBasis>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[{nvars, level}];
    if (!slot) slot = std::make_shared<const MonomialBasis>(nvars, level);
    return slot;
}

std::ptrdiff_t MonomialBasis::index_of(const Monomial& m) const {
    if (m.degree() >= level_) return -1;
    auto it = index_.find(m);
    if (it == index_.end()) throw PreconditionError("monomial from a different ring");
    return static_cast<std::ptrdiff_t>(it->second);
}

} // namespace curvetower
