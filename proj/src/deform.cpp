#include "curvetower/deform.hpp"

#include "curvetower/errors.hpp"

#include <algorithm>
#include <numeric>

namespace curvetower {

DualPoly::DualPoly(TruncatedPoly f_part, TruncatedPoly g_part) : f(std::move(f_part)), g(std::move(g_part)) {
    if (f.nvars() != g.nvars() || !(f.field() == g.field()) || f.level() != g.level())
        throw PreconditionError("dual number parts live in different rings");
}

DualPoly DualPoly::plain(TruncatedPoly f) {
    TruncatedPoly zero(f.nvars(), f.field(), f.level());
    return DualPoly(std::move(f), std::move(zero));
}

DualPoly DualPoly::operator+(const DualPoly& o) const { return DualPoly(f + o.f, g + o.g); }
DualPoly DualPoly::operator-(const DualPoly& o) const { return DualPoly(f - o.f, g - o.g); }
DualPoly DualPoly::operator-() const { return DualPoly(-f, -g); }
DualPoly DualPoly::operator*(const DualPoly& o) const { return DualPoly(f * o.f, f * o.g + g * o.f); }

FirstOrderDeformation::FirstOrderDeformation(IdealPresentation base, std::vector<TruncatedPoly> perturbations)
    : base_(std::move(base)), perturbations_(std::move(perturbations)) {
    if (perturbations_.size() != base_.generators().size())
        throw PreconditionError("need one perturbation per base generator (" +
                                std::to_string(base_.generators().size()) + "), got " +
                                std::to_string(perturbations_.size()));
    for (auto& g : perturbations_)
        if (g.nvars() != base_.nvars() || !(g.field() == base_.field()) || g.level() != base_.level())
            throw PreconditionError("perturbations must live in the ring of the base");
}

FirstOrderDeformation FirstOrderDeformation::parse(const std::vector<std::string>& base,
                                                   const std::vector<std::string>& perturbations, std::size_t nvars,
                                                   const Field& field, std::uint32_t level) {
    std::vector<TruncatedPoly> gs;
    for (auto& s : perturbations) gs.push_back(parse_poly(s, nvars, field, level));
    return FirstOrderDeformation(IdealPresentation::parse(base, nvars, field, level), std::move(gs));
}

std::vector<std::uint32_t> FirstOrderDeformation::orders() const {
    std::vector<std::uint32_t> v;
    for (auto& f : base_.generators()) v.push_back(*f.order());
    return v;
}

std::vector<std::string> FirstOrderDeformation::perturbation_strings() const {
    std::vector<std::string> out;
    for (auto& g : perturbations_) out.push_back(to_string(g));
    return out;
}

namespace {

SparseVec moved_right(SparseVec v, std::size_t offset) {
    for (auto& e : v) e.first += static_cast<std::uint32_t>(offset);
    return v;
}

} // namespace

DegreeSpans spans_at(const IdealPresentation& ideal, std::uint32_t a) {
    if (ideal.level() >= a) return ideal_spans(ideal, a);
    auto basis = MonomialBasis::get(ideal.nvars(), a);
    Echelon span = ideal_spans(ideal.with_level(a), a).echelon();
    for (std::size_t j = basis->degree_begin(ideal.level()); j < basis->size(); ++j)
        span.insert({{static_cast<std::uint32_t>(j), Coeff(1)}});
    return DegreeSpans(basis, std::move(span));
}

ColonSpace colon(const IdealPresentation& ambient, const IdealPresentation& divisor, std::uint32_t a) {
    if (a < 2) throw PreconditionError("colon level must be at least 2");
    if (ambient.nvars() != divisor.nvars() || !(ambient.field() == divisor.field()))
        throw PreconditionError("colon arguments live in different rings");
    const auto& field = ambient.field();
    auto basis = MonomialBasis::get(ambient.nvars(), a);
    const auto target = spans_at(ambient, a);
    const auto divisor_gens = minimal_generators(spans_at(divisor, a));
    const std::size_t D = basis->size();

    std::vector<SparseVec> columns(D);
    for (std::size_t j = 0; j < D; ++j) {
        SparseVec col;
        for (std::size_t l = 0; l < divisor_gens.size(); ++l) {
            auto r = target.echelon().reduce(divisor_gens[l].times_monomial((*basis)[j]).to_vector(*basis));
            auto shifted = moved_right(std::move(r), l * D);
            col.insert(col.end(), shifted.begin(), shifted.end());
        }
        columns[j] = std::move(col);
    }
    auto ker = kernel(field, std::max<std::size_t>(1, divisor_gens.size()) * D, columns);
    return ColonSpace(DegreeSpans::of_closed_span(basis, field, ker));
}

FamilyReport is_family_first_order(const FirstOrderDeformation& d, std::uint32_t e0) {
    const auto& base = d.base();
    if (base.level() < e0 + 2) throw PreconditionError("base must be presented at level e0 + 2 or more");
    auto sb = standard_basis_check(base, e0 + 2);
    if (!sb.is_standard_basis)
        throw PreconditionError("base generators are not a standard basis below level " + std::to_string(e0 + 2));
    FamilyReport r;
    r.orders = d.orders();
    r.family = true;
    const auto top = e0 + 1;
    for (std::size_t i = 0; i < r.orders.size(); ++i) {
        const auto v = r.orders[i];
        if (v > e0) throw PreconditionError("generator order " + std::to_string(v) + " exceeds e0");
        const auto divisor = IdealPresentation::from_nonzero(base.nvars(), base.field(), top - v, base.generators());
        auto space = colon(base, divisor, top);
        const bool in = space.contains(d.perturbations()[i]);
        r.member.push_back(in);
        r.colon_codimensions.push_back(space.codimension());
        r.family = r.family && in;
    }
    return r;
}

FlatnessReport flatness_direct(const FirstOrderDeformation& d, std::uint32_t n) {
    if (n < 3) throw PreconditionError("flatness level must be at least 3");
    const auto& base = d.base();
    if (n > base.level()) throw PreconditionError("flatness level exceeds the presentation level");
    auto basis = MonomialBasis::get(base.nvars(), n);
    const std::size_t D = basis->size();
    Echelon span(base.field(), 2 * D);
    for (std::size_t i = 0; i < base.generators().size(); ++i) {
        const auto f = base.generators()[i].truncated(n);
        const auto g = d.perturbations()[i].truncated(n);
        for (std::size_t j = 0; j < D; ++j) {
            const auto xf = f.times_monomial((*basis)[j]).to_vector(*basis);
            auto both = xf;
            auto eps = moved_right(g.times_monomial((*basis)[j]).to_vector(*basis), D);
            both.insert(both.end(), eps.begin(), eps.end());
            span.insert(std::move(both));
            span.insert(moved_right(xf, D));
        }
    }
    FlatnessReport r;
    r.quotient_dim = 2 * D - span.rank();
    r.expected_dim = 2 * (D - ideal_spans(base, n).echelon().rank());
    r.flat = r.quotient_dim == r.expected_dim;
    return r;
}

std::vector<bool> cm_colon_identity(const IdealPresentation& ideal, std::uint32_t e0,
                                    const std::vector<std::uint32_t>& vs) {
    const auto top = e0 + 1;
    std::vector<bool> out;
    for (auto v : vs) {
        if (v < 1 || v > e0) throw PreconditionError("v must lie in [1, e0]");
        auto lhs = colon(ideal, IdealPresentation::from_nonzero(ideal.nvars(), ideal.field(), top - v,
                                                                ideal.generators()),
                         top);
        auto rhs = spans_at(IdealPresentation::from_nonzero(ideal.nvars(), ideal.field(), v, ideal.generators()), top);
        out.push_back(lhs.spans().rref() == rhs.rref());
    }
    return out;
}

namespace {

template <class T>
void check_shape(const std::vector<std::vector<T>>& m) {
    if (m.size() < 2) throw PreconditionError("determinantal matrix needs at least two rows");
    for (auto& row : m)
        if (row.size() + 1 != m.size()) throw PreconditionError("determinantal matrix must be a x (a-1)");
}

// Determinant by expansion along the first row.
template <class T>
T determinant(const std::vector<std::vector<T>>& m) {
    if (m.size() == 1) return m[0][0];
    T acc = m[0][0] - m[0][0];
    for (std::size_t c = 0; c < m.size(); ++c) {
        std::vector<std::vector<T>> minor;
        for (std::size_t r = 1; r < m.size(); ++r) {
            std::vector<T> row;
            for (std::size_t k = 0; k < m.size(); ++k)
                if (k != c) row.push_back(m[r][k]);
            minor.push_back(std::move(row));
        }
        auto term = m[0][c] * determinant(minor);
        acc = c % 2 == 0 ? acc + term : acc - term;
    }
    return acc;
}

template <class T>
std::vector<T> minors_of(const std::vector<std::vector<T>>& m) {
    check_shape(m);
    std::vector<T> out;
    for (std::size_t skip = 0; skip < m.size(); ++skip) {
        std::vector<std::vector<T>> sub;
        for (std::size_t r = 0; r < m.size(); ++r)
            if (r != skip) sub.push_back(m[r]);
        auto det = determinant(sub);
        out.push_back(skip % 2 == 0 ? det : -det);
    }
    return out;
}

void check_entry(const TruncatedPoly& p) {
    if (!p.is_zero() && *p.order() == 0) throw PreconditionError("matrix entries must lie in the maximal ideal");
}

} // namespace

std::vector<TruncatedPoly> maximal_minors(const PolyMatrix& m) {
    for (auto& row : m)
        for (auto& e : row) check_entry(e);
    return minors_of(m);
}

std::vector<DualPoly> maximal_minors(const DualMatrix& m) {
    for (auto& row : m)
        for (auto& e : row) check_entry(e.f);
    return minors_of(m);
}

IdealPresentation determinantal_ideal(const PolyMatrix& m) {
    auto minors = maximal_minors(m);
    const auto& p = minors.front();
    return IdealPresentation::from_nonzero(p.nvars(), p.field(), p.level(), minors);
}

FirstOrderDeformation determinantal_deformation(const DualMatrix& m) {
    auto minors = maximal_minors(m);
    const auto& p = minors.front().f;
    std::vector<TruncatedPoly> fs, gs;
    for (auto& d : minors) {
        if (d.f.is_zero()) {
            if (!d.g.is_zero()) throw PreconditionError("a minor vanishes on the base but not to first order");
            continue;
        }
        fs.push_back(d.f);
        gs.push_back(d.g);
    }
    return FirstOrderDeformation(IdealPresentation(p.nvars(), p.field(), p.level(), std::move(fs)), std::move(gs));
}

namespace {

TruncatedPoly evaluate(const std::vector<TruncatedPoly>& coeffs, const Coeff& u, const Field& field,
                       std::size_t nvars, std::uint32_t level) {
    TruncatedPoly acc(nvars, field, level);
    Coeff power = field.normalize(Coeff(1));
    for (auto& c : coeffs) {
        acc = acc + c.at_level(level).scaled(power);
        power = field.mul(power, u);
    }
    return acc;
}

} // namespace

IdealPresentation specialize_family(const IdealFamily& family, const Coeff& u, std::size_t nvars,
                                    const Field& field, std::uint32_t level) {
    std::vector<TruncatedPoly> gens;
    for (auto& g : family) gens.push_back(evaluate(g, field.normalize(u), field, nvars, level));
    return IdealPresentation::from_nonzero(nvars, field, level, gens);
}

Parametrization specialize_family(const BranchFamily& family, const Coeff& u, const Field& field,
                                  std::uint32_t precision) {
    if (family.empty()) throw PreconditionError("branch family needs at least one branch");
    std::vector<Branch> branches;
    for (auto& b : family) {
        Branch out;
        for (auto& comp : b) out.components.push_back(evaluate(comp, field.normalize(u), field, 1, precision));
        branches.push_back(std::move(out));
    }
    return Parametrization(family.front().size(), field, precision, std::move(branches));
}

FiberwiseReport fiberwise_family_check(const std::vector<Fiber>& fibers, const std::vector<Coeff>& samples,
                                       std::uint32_t n) {
    if (fibers.empty()) throw PreconditionError("need at least one fiber");
    if (fibers.size() != samples.size()) throw PreconditionError("one sample value per fiber");
    FiberwiseReport r;
    r.samples = samples;
    for (auto& f : fibers) r.fibers.push_back(fiber_hilbert(f, n));
    const auto& ref = r.fibers.front();
    r.constant = ref.e0.has_value();
    for (std::size_t i = 1; i < r.fibers.size() && r.constant; ++i) {
        const auto& h = r.fibers[i];
        if (!h.e0 || h.e0 != ref.e0 || h.e1 != ref.e1) {
            r.constant = false;
            r.first_mismatch = i;
        }
    }
    return r;
}

} // namespace curvetower
