#include "curvetower/ideal.hpp"

#include "curvetower/errors.hpp"

#include <algorithm>

namespace curvetower {

IdealPresentation::IdealPresentation(std::size_t nvars, Field field, std::uint32_t level,
                                     std::vector<TruncatedPoly> generators)
    : nvars_(nvars), field_(field), level_(level), generators_(std::move(generators)) {
    if (nvars == 0) throw PreconditionError("ambient dimension must be positive");
    for (auto& g : generators_) {
        if (g.nvars() != nvars_) throw PreconditionError("generator lives in a different ring");
        if (!(g.field() == field_)) throw PreconditionError("generator over a different field");
        if (g.level() != level_) throw PreconditionError("generator at a different truncation level");
        if (g.is_zero()) throw PreconditionError("zero generator");
        if (*g.order() == 0) throw PreconditionError("generator " + to_string(g) + " is a unit");
    }
}

IdealPresentation IdealPresentation::parse(const std::vector<std::string>& generators, std::size_t nvars,
                                           const Field& field, std::uint32_t level) {
    std::vector<TruncatedPoly> gens;
    for (auto& s : generators) gens.push_back(parse_poly(s, nvars, field, level));
    return from_nonzero(nvars, field, level, gens);
}

IdealPresentation IdealPresentation::from_nonzero(std::size_t nvars, Field field, std::uint32_t level,
                                                  const std::vector<TruncatedPoly>& generators) {
    std::vector<TruncatedPoly> kept;
    for (auto& g : generators) {
        auto h = g.level() > level ? g.truncated(level) : g.at_level(level);
        if (!h.is_zero()) kept.push_back(std::move(h));
    }
    return IdealPresentation(nvars, field, level, std::move(kept));
}

IdealPresentation IdealPresentation::truncated(std::uint32_t n) const {
    if (n > level_) throw PreconditionError("cannot raise the level of a truncated ideal");
    return from_nonzero(nvars_, field_, n, generators_);
}

IdealPresentation IdealPresentation::with_level(std::uint32_t n) const {
    return from_nonzero(nvars_, field_, n, generators_);
}

IdealPresentation IdealPresentation::plus(const IdealPresentation& other) const {
    if (other.nvars_ != nvars_ || !(other.field_ == field_) || other.level_ != level_)
        throw PreconditionError("ideals live in different truncated rings");
    auto gens = generators_;
    gens.insert(gens.end(), other.generators_.begin(), other.generators_.end());
    return IdealPresentation(nvars_, field_, level_, std::move(gens));
}

std::vector<std::string> IdealPresentation::generator_strings() const {
    std::vector<std::string> out;
    for (auto& g : generators_) out.push_back(to_string(g));
    return out;
}

DegreeSpans::DegreeSpans(std::shared_ptr<const MonomialBasis> basis, Echelon span)
    : basis_(std::move(basis)), span_(std::move(span)), pivots_per_degree_(basis_->level(), 0) {
    for (auto p : span_.pivots()) ++pivots_per_degree_[(*basis_)[p].degree()];
}

DegreeSpans DegreeSpans::of_closed_span(std::shared_ptr<const MonomialBasis> basis, const Field& field,
                                        const std::vector<SparseVec>& vectors) {
    Echelon e(field, basis->size());
    for (auto& v : vectors) e.insert(v);
    return DegreeSpans(std::move(basis), std::move(e));
}

std::size_t DegreeSpans::cumulative_dim(std::uint32_t d) const {
    std::size_t s = 0;
    for (std::uint32_t i = 0; i <= d && i < pivots_per_degree_.size(); ++i) s += pivots_per_degree_[i];
    return s;
}

std::size_t DegreeSpans::slice_dim(std::uint32_t d) const {
    return d < pivots_per_degree_.size() ? pivots_per_degree_[d] : 0;
}

std::vector<SparseVec> DegreeSpans::rref() const {
    if (!rref_) rref_ = span_.rref();
    return *rref_;
}

DegreeSlice DegreeSpans::slice(std::uint32_t d) const {
    DegreeSlice s;
    s.degree = d;
    if (d >= level()) return s;
    if (!rref_) rref_ = span_.rref();
    for (auto& row : *rref_) {
        if ((*basis_)[row.front().first].degree() != d) continue;
        SparseVec part;
        for (auto& e : row)
            if ((*basis_)[e.first].degree() == d) part.push_back(e);
        s.forms.push_back(TruncatedPoly::from_vector(*basis_, field(), part));
    }
    return s;
}

std::vector<DegreeSlice> DegreeSpans::slices() const {
    std::vector<DegreeSlice> out;
    for (std::uint32_t d = 0; d < level(); ++d) out.push_back(slice(d));
    return out;
}

bool DegreeSpans::contains(const TruncatedPoly& f) const {
    return span_.contains(f.at_level(level()).to_vector(*basis_));
}

namespace {

// Sparse vector of m * g for a generator already at the basis level.
SparseVec shifted(const MonomialBasis& basis, const TruncatedPoly& g, const Monomial& m) {
    SparseVec v;
    for (auto& [t, c] : g.terms()) {
        if (t.degree() + m.degree() >= basis.level()) break;
        v.emplace_back(static_cast<std::uint32_t>(basis.index_of(t * m)), c);
    }
    std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.first < b.first; });
    return v;
}

Echelon span_of_multiples(const IdealPresentation& ideal, const MonomialBasis& basis, std::uint32_t min_shift) {
    Echelon e(ideal.field(), basis.size());
    const auto n = basis.level();
    std::vector<TruncatedPoly> gens;
    for (auto& g : ideal.generators()) {
        auto h = g.truncated(n);
        if (!h.is_zero()) gens.push_back(std::move(h));
    }
    for (std::uint32_t s = min_shift; s < n; ++s) {
        auto mons = monomials_of_degree(basis.nvars(), s);
        for (auto& g : gens) {
            if (*g.order() + s >= n) continue;
            for (auto& m : mons) e.insert(shifted(basis, g, m));
        }
    }
    return e;
}

} // namespace

DegreeSpans ideal_spans(const IdealPresentation& ideal, std::uint32_t n) {
    if (n > ideal.level())
        throw PreconditionError("level " + std::to_string(n) + " exceeds the presentation level " +
                                std::to_string(ideal.level()));
    if (n == 0) throw PreconditionError("level must be positive");
    auto basis = MonomialBasis::get(ideal.nvars(), n);
    return DegreeSpans(basis, span_of_multiples(ideal, *basis, 0));
}

std::string to_string(HilbertStatus s) {
    switch (s) {
    case HilbertStatus::ok: return "ok";
    case HilbertStatus::not_stabilized: return "not_stabilized";
    case HilbertStatus::dim_ge_2: return "dim_ge_2";
    }
    return "unknown";
}

HilbertData hilbert_from_values(std::vector<std::uint64_t> values, std::uint32_t window) {
    HilbertData h;
    h.values = std::move(values);
    const auto n = h.values.size();
    for (std::size_t t = 0; t < n; ++t) h.graded.push_back(t == 0 ? h.values[0] : h.values[t] - h.values[t - 1]);
    if (n == 0) return h;
    std::size_t t0 = n - 1;
    while (t0 > 0 && h.graded[t0 - 1] == h.graded[n - 1]) --t0;
    if (n - t0 >= std::max<std::uint32_t>(window, 2)) {
        h.status = HilbertStatus::ok;
        auto e0 = static_cast<std::int64_t>(h.graded[n - 1]);
        h.e0 = e0;
        h.e1 = e0 * static_cast<std::int64_t>(n) - static_cast<std::int64_t>(h.values[n - 1]);
        h.stab_index = static_cast<std::uint32_t>(t0);
        return h;
    }
    // Still growing over the whole second half of the range.
    std::size_t start = n / 2;
    bool growing = n - start >= 3;
    for (std::size_t t = start + 1; growing && t < n; ++t) growing = h.graded[t] > h.graded[t - 1];
    h.status = growing ? HilbertStatus::dim_ge_2 : HilbertStatus::not_stabilized;
    return h;
}

HilbertData hilbert_from_spans(const DegreeSpans& spans, std::uint32_t window) {
    std::vector<std::uint64_t> values;
    const auto& basis = spans.basis();
    for (std::uint32_t t = 0; t < spans.level(); ++t)
        values.push_back(basis.degree_begin(t + 1) - spans.cumulative_dim(t));
    return hilbert_from_values(std::move(values), window);
}

HilbertData hilbert_data(const IdealPresentation& ideal, std::uint32_t n, std::uint32_t window) {
    return hilbert_from_spans(ideal_spans(ideal, n), window);
}

Echelon degree_shift_span(const MonomialBasis& basis, const Field& field, const DegreeSlice& slice) {
    Echelon e(field, basis.size());
    if (slice.degree + 1 >= basis.level()) return e;
    for (auto& f : slice.forms) {
        auto g = f.at_level(basis.level());
        for (std::size_t i = 0; i < basis.nvars(); ++i)
            e.insert(shifted(basis, g, Monomial::variable(basis.nvars(), i)));
    }
    return e;
}

std::vector<TruncatedPoly> new_generators_in_degree(const MonomialBasis& basis, const Field& field,
                                                    const DegreeSlice* lower, const DegreeSlice& slice) {
    Echelon e = lower ? degree_shift_span(basis, field, *lower) : Echelon(field, basis.size());
    std::vector<TruncatedPoly> out;
    for (auto& f : slice.forms)
        if (e.insert(f.at_level(basis.level()).to_vector(basis))) out.push_back(f);
    return out;
}

InitialIdealData initial_ideal(const DegreeSpans& spans) {
    InitialIdealData data;
    data.level = spans.level();
    data.slices = spans.slices();
    for (std::uint32_t d = 0; d < data.level; ++d) {
        const DegreeSlice* lower = d == 0 ? nullptr : &data.slices[d - 1];
        auto fresh = new_generators_in_degree(spans.basis(), spans.field(), lower, data.slices[d]);
        data.generator_degrees.insert(data.generator_degrees.end(), fresh.size(), d);
    }
    return data;
}

InitialIdealData initial_ideal(const IdealPresentation& ideal, std::uint32_t n) {
    return initial_ideal(ideal_spans(ideal, n));
}

StandardBasisReport standard_basis_check(const IdealPresentation& ideal, std::uint32_t n) {
    auto spans = ideal_spans(ideal, n);
    std::vector<TruncatedPoly> forms;
    auto truncated = ideal.truncated(n);
    for (auto& g : truncated.generators()) forms.push_back(g.initial_form());
    auto leading = ideal_spans(IdealPresentation(ideal.nvars(), ideal.field(), n, forms), n);
    StandardBasisReport report;
    report.level = n;
    for (std::uint32_t d = 0; d < n; ++d) {
        if (leading.slice_dim(d) == spans.slice_dim(d)) continue;
        report.failing_degree = d;
        auto slice = spans.slice(d);
        for (auto& f : slice.forms) {
            if (!leading.contains(f)) {
                report.missing_form = f;
                break;
            }
        }
        return report;
    }
    report.is_standard_basis = true;
    return report;
}

std::size_t min_generators(const IdealPresentation& ideal, std::uint32_t n) {
    if (n > ideal.level()) throw PreconditionError("level exceeds the presentation level");
    auto basis = MonomialBasis::get(ideal.nvars(), n);
    auto all = span_of_multiples(ideal, *basis, 0);
    auto moved = span_of_multiples(ideal, *basis, 1);
    return all.rank() - moved.rank();
}

std::vector<TruncatedPoly> minimal_generators(const DegreeSpans& spans) {
    const auto& basis = spans.basis();
    Echelon mw(spans.field(), basis.size());
    auto rows = spans.rref();
    for (auto& row : rows) {
        auto f = TruncatedPoly::from_vector(basis, spans.field(), row);
        for (std::size_t i = 0; i < basis.nvars(); ++i)
            mw.insert(shifted(basis, f, Monomial::variable(basis.nvars(), i)));
    }
    std::vector<TruncatedPoly> out;
    for (auto& row : rows)
        if (mw.insert(row)) out.push_back(TruncatedPoly::from_vector(basis, spans.field(), row));
    return out;
}

IntersectionResult intersection_number(const IdealPresentation& ideal, const IdealPresentation& other,
                                       std::uint32_t n_max) {
    auto sum = ideal.truncated(n_max).plus(other.truncated(n_max));
    auto h = hilbert_data(sum, n_max);
    IntersectionResult r;
    r.lengths = h.values;
    for (std::uint32_t t = 1; t < n_max; ++t) {
        if (h.graded[t] == 0) {
            // M^t lies in I + X + M^{t+1}, hence in I + X.
            r.value = h.values[t];
            r.stable_from = t;
            break;
        }
    }
    return r;
}

} // namespace curvetower
