#include "curvetower/branches.hpp"

#include "curvetower/errors.hpp"
#include "curvetower/tower.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace curvetower {

bool SemigroupData::contains(std::uint64_t x) const {
    if (x >= conductor) return true;
    return !std::binary_search(gaps.begin(), gaps.end(), x);
}

SemigroupData semigroup(const std::vector<std::uint64_t>& generators) {
    if (generators.empty()) throw PreconditionError("semigroup needs at least one generator");
    std::uint64_t g = 0;
    for (auto a : generators) {
        if (a == 0) throw PreconditionError("semigroup generators must be positive");
        g = std::gcd(g, a);
    }
    if (g != 1) throw PreconditionError("generators are not coprime (gcd " + std::to_string(g) + ")");
    SemigroupData s;
    s.generators = generators;
    const auto a1 = *std::min_element(generators.begin(), generators.end());
    if (a1 == 1) return s;
    std::vector<bool> in{true};
    std::uint64_t run = 0;
    for (std::uint64_t x = 1;; ++x) {
        bool member = false;
        for (auto a : generators) member = member || (x >= a && in[x - a]);
        in.push_back(member);
        if (member) {
            if (++run == a1) {
                s.conductor = x + 1 - a1;
                break;
            }
        } else {
            run = 0;
            s.gaps.push_back(x);
        }
    }
    s.delta = s.gaps.size();
    return s;
}

std::int64_t milnor(std::uint64_t delta, std::uint64_t branches) {
    if (branches == 0) throw PreconditionError("a curve has at least one branch");
    return 2 * static_cast<std::int64_t>(delta) - static_cast<std::int64_t>(branches) + 1;
}

Parametrization::Parametrization(std::size_t nvars, Field field, std::uint32_t precision,
                                 std::vector<Branch> branches)
    : nvars_(nvars), field_(field), precision_(precision), branches_(std::move(branches)) {
    if (branches_.empty()) throw PreconditionError("parametrization needs at least one branch");
    if (precision_ == 0) throw PreconditionError("precision must be positive");
    for (auto& b : branches_) {
        if (b.components.size() != nvars_) throw PreconditionError("every branch needs one series per coordinate");
        bool nonzero = false;
        for (auto& c : b.components) {
            if (c.nvars() != 1 || !(c.field() == field_) || c.level() != precision_)
                throw PreconditionError("branch components must be one-variable series at the common precision");
            if (!c.is_zero() && *c.order() == 0) throw PreconditionError("branch components must vanish at t = 0");
            nonzero = nonzero || !c.is_zero();
        }
        if (!nonzero) throw PreconditionError("a branch cannot be constant");
    }
}

Parametrization Parametrization::parse(const std::vector<std::vector<std::string>>& branches,
                                       std::uint32_t precision, const Field& field) {
    if (branches.empty()) throw PreconditionError("parametrization needs at least one branch");
    std::vector<Branch> out;
    for (auto& b : branches) {
        Branch br;
        for (auto& s : b) br.components.push_back(parse_series(s, field, precision));
        out.push_back(std::move(br));
    }
    return Parametrization(branches.front().size(), field, precision, std::move(out));
}

std::vector<std::vector<std::string>> Parametrization::component_strings() const {
    std::vector<std::vector<std::string>> out;
    for (auto& b : branches_) {
        std::vector<std::string> row;
        for (auto& c : b.components) row.push_back(to_string(c, VariableNames::series()));
        out.push_back(std::move(row));
    }
    return out;
}

std::optional<std::vector<std::uint64_t>> Parametrization::monomial_orders() const {
    if (branches_.size() != 1) return std::nullopt;
    std::vector<std::uint64_t> orders;
    for (auto& c : branches_[0].components) {
        if (c.is_zero()) continue;
        if (c.terms().size() != 1 || c.terms().begin()->second != 1) return std::nullopt;
        orders.push_back(*c.order());
    }
    return orders;
}

namespace {

// Elements of the product of the truncated series rings.
using Tuple = std::vector<TruncatedPoly>;

Tuple multiply(const Tuple& a, const Tuple& b) {
    Tuple out;
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] * b[i]);
    return out;
}

SparseVec flatten(const Tuple& x, std::uint32_t m) {
    SparseVec v;
    for (std::size_t b = 0; b < x.size(); ++b)
        for (auto& [mon, c] : x[b].terms()) v.emplace_back(static_cast<std::uint32_t>(b * m + mon.degree()), c);
    return v;
}

Tuple unflatten(const SparseVec& v, std::size_t nbranches, std::uint32_t m, const Field& field) {
    Tuple out(nbranches, TruncatedPoly(1, field, m));
    for (auto& [col, c] : v) out[col / m].add_term(Monomial({col % m}), c);
    return out;
}

// Image of the span of monomials of degree >= from, modulo t^m.
Echelon image_span(const Parametrization& param, std::uint32_t from, std::uint32_t m) {
    const auto& field = param.field();
    const auto nb = param.branches().size();
    const std::size_t width = nb * m;
    std::vector<Tuple> coords(param.nvars());
    for (std::size_t i = 0; i < coords.size(); ++i)
        for (auto& b : param.branches()) coords[i].push_back(b.components[i].at_level(m));
    Echelon image(field, width);
    std::vector<Tuple> layer{Tuple(nb, TruncatedPoly::constant(1, field, m, 1))};
    for (std::uint32_t k = 0; !layer.empty(); ++k) {
        if (k >= from)
            for (auto& x : layer) image.insert(flatten(x, m));
        Echelon next(field, width);
        for (auto& x : layer)
            for (auto& c : coords) next.insert(flatten(multiply(x, c), m));
        layer.clear();
        for (auto& row : next.rref()) layer.push_back(unflatten(row, nb, m, field));
    }
    return image;
}

std::vector<SparseVec> computed_kernel(const Parametrization& param, std::uint32_t n, std::uint32_t m) {
    const auto& field = param.field();
    const auto nb = param.branches().size();
    const auto N = param.nvars();
    const std::size_t width = nb * m;
    std::vector<Tuple> coords(N);
    for (std::size_t i = 0; i < N; ++i)
        for (auto& b : param.branches()) coords[i].push_back(b.components[i].at_level(m));
    auto image_mn = image_span(param, n, m);

    auto basis = MonomialBasis::get(N, n);
    std::vector<Tuple> values(basis->size());
    std::vector<SparseVec> columns(basis->size());
    for (std::size_t j = 0; j < basis->size(); ++j) {
        const auto& mon = (*basis)[j];
        if (mon.degree() == 0) {
            values[j] = Tuple(nb, TruncatedPoly::constant(1, field, m, 1));
        } else {
            std::size_t i = 0;
            while (mon[i] == 0) ++i;
            std::vector<std::uint32_t> e = mon.exponents();
            --e[i];
            values[j] = multiply(values[static_cast<std::size_t>(basis->index_of(Monomial(e)))], coords[i]);
        }
        columns[j] = image_mn.reduce(flatten(values[j], m));
    }
    return kernel(field, width, columns);
}

} // namespace

std::optional<ConductorData> conductor_from_param(const Parametrization& param) {
    const auto P = param.precision();
    const auto nb = param.branches().size();
    auto image = image_span(param, 0, P);
    // Smallest c with t^k e_b in the image for all c <= k < P. Squaring those
    // elements reaches every order in [2c, 2P - 2], so when 2c <= P the whole
    // of t^c times the normalization lies in the local ring.
    std::uint32_t c = P;
    auto deep_in_image = [&](std::uint32_t k) {
        for (std::size_t b = 0; b < nb; ++b)
            if (!image.contains({{static_cast<std::uint32_t>(b * P + k), Coeff(1)}})) return false;
        return true;
    };
    while (c > 0 && deep_in_image(c - 1)) --c;
    if (2 * c > P) return std::nullopt;
    Echelon below(param.field(), nb * static_cast<std::size_t>(c));
    for (auto& row : image.rref()) {
        SparseVec v;
        for (auto& [col, x] : row)
            if (col % P < c) v.emplace_back(static_cast<std::uint32_t>((col / P) * c + col % P), x);
        below.insert(std::move(v));
    }
    return ConductorData{c, nb * c - below.rank()};
}

std::uint32_t Parametrization::required_precision(std::uint32_t n) const {
    std::uint64_t floor = 0, deepest_start = 0, g = 0;
    std::vector<std::uint64_t> orders;
    for (auto& b : branches_) {
        std::uint64_t lo = ~0ULL;
        for (auto& c : b.components) {
            if (c.is_zero()) continue;
            std::uint64_t o = *c.order();
            lo = std::min(lo, o);
            floor = std::max(floor, n * o);
            g = std::gcd(g, o);
            orders.push_back(o);
        }
        deepest_start = std::max(deepest_start, n * lo);
    }
    // t^(n e_b + c) on branch b is x^n times an element of the conductor,
    // where x is a coordinate of minimal order e_b on that branch.
    std::uint64_t conductor = 0;
    if (branches_.size() == 1 && g == 1) {
        conductor = semigroup(orders).conductor;
    } else {
        auto cd = conductor_from_param(*this);
        if (!cd)
            throw PreconditionError("precision " + std::to_string(precision_) +
                                    " does not certify the conductor; raise the precision");
        conductor = cd->conductor;
    }
    return static_cast<std::uint32_t>(std::max(floor, deepest_start + conductor));
}

ParamIdeal ideal_from_param(const Parametrization& param, std::uint32_t n) {
    if (n == 0) throw PreconditionError("level must be positive");
    const auto need = param.required_precision(n);
    if (param.precision() < need)
        throw PreconditionError("precision " + std::to_string(param.precision()) + " is too low for level " +
                                std::to_string(n) + "; need at least " + std::to_string(need));
    auto ker = computed_kernel(param, n, param.precision());
    auto basis = MonomialBasis::get(param.nvars(), n);
    auto spans = DegreeSpans::of_closed_span(basis, param.field(), ker);
    auto gens = minimal_generators(spans);
    return ParamIdeal{IdealPresentation(param.nvars(), param.field(), n, std::move(gens)), std::move(spans), need};
}

HilbertData hilbert_from_param(const Parametrization& param, std::uint32_t n, std::uint32_t window) {
    return hilbert_from_spans(ideal_from_param(param, n).spans, window);
}

std::vector<std::uint64_t> valuation_hilbert(const std::vector<std::uint64_t>& generators, std::uint32_t n) {
    auto s = semigroup(generators);
    const auto a1 = *std::min_element(generators.begin(), generators.end());
    const std::uint64_t bound = s.conductor + static_cast<std::uint64_t>(n + 1) * a1;
    // Longest representation of each value as a sum of generators; -1 off Γ.
    std::vector<std::int64_t> longest(bound, -1);
    longest[0] = 0;
    for (std::uint64_t x = 1; x < bound; ++x)
        for (auto a : generators)
            if (x >= a && longest[x - a] >= 0) longest[x] = std::max(longest[x], longest[x - a] + 1);
    std::vector<std::uint64_t> out;
    for (std::uint32_t t = 0; t < n; ++t)
        out.push_back(static_cast<std::uint64_t>(std::count_if(
            longest.begin(), longest.end(), [&](std::int64_t l) { return l >= 0 && l <= static_cast<std::int64_t>(t); })));
    return out;
}

HilbertData fiber_hilbert(const Fiber& fiber, std::uint32_t n) {
    if (auto* ideal = std::get_if<IdealPresentation>(&fiber)) return hilbert_data(ideal->truncated(n), n);
    return hilbert_from_param(std::get<Parametrization>(fiber), n);
}

NormalFlatReport normally_flat_fiber_compare(const std::vector<Fiber>& fibers, std::uint32_t n) {
    if (fibers.empty()) throw PreconditionError("need at least one fiber");
    NormalFlatReport r;
    for (auto& f : fibers) r.tables.push_back(fiber_hilbert(f, n));
    r.normally_flat = true;
    r.same_polynomial = true;
    const auto& ref = r.tables.front();
    for (std::size_t i = 1; i < r.tables.size(); ++i) {
        const auto& h = r.tables[i];
        r.same_polynomial = r.same_polynomial && h.e0 && ref.e0 && h.e0 == ref.e0 && h.e1 == ref.e1;
        for (std::uint32_t t = 0; t < n && r.normally_flat; ++t) {
            if (h.values[t] != ref.values[t]) {
                r.normally_flat = false;
                r.mismatch_fiber = i;
                r.mismatch_degree = t;
            }
        }
    }
    if (r.tables.size() == 1) r.same_polynomial = ref.e0.has_value();
    return r;
}

std::string to_string(Rigidity r) { return r == Rigidity::rigid ? "rigid" : "unknown"; }

Rigidity is_rigid_known(std::uint32_t e0, std::int64_t e1) {
    if (e0 == 0) throw PreconditionError("multiplicity must be positive");
    bool ok = false;
    for (std::uint32_t b = 1; b <= e0 && !ok; ++b) ok = admissible(b, e0, e1);
    if (!ok)
        throw PreconditionError("(e0, e1) = (" + std::to_string(e0) + ", " + std::to_string(e1) +
                                ") is not admissible");
    const std::int64_t top = static_cast<std::int64_t>(e0) * (e0 - 1) / 2;
    if (e0 <= 5 || e1 == e0 - 1 || e1 == e0 || e1 == top - 1 || e1 == top) return Rigidity::rigid;
    return Rigidity::unknown;
}

} // namespace curvetower
