#include "curvetower/tower.hpp"

#include "curvetower/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace curvetower {

CutoffPolicy CutoffPolicy::parse(const std::string& text) {
    CutoffPolicy p;
    for (auto& item : split_list(text)) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw PreconditionError("cutoff entry '" + item + "' is not key=value");
        auto key = item.substr(0, eq);
        key.erase(0, key.find_first_not_of(' '));
        key.erase(key.find_last_not_of(' ') + 1);
        std::uint32_t value = 0;
        try {
            value = static_cast<std::uint32_t>(std::stoul(item.substr(eq + 1)));
        } catch (const std::exception&) {
            throw PreconditionError("cutoff value in '" + item + "' is not a number");
        }
        if (key == "n_default") p.n_default = value;
        else if (key == "n_max") p.n_max = value;
        else if (key == "window") p.window = value;
        else throw PreconditionError("unknown cutoff key '" + key + "'");
    }
    if (p.n_default < 3 || p.n_max < p.n_default || p.window < 2)
        throw PreconditionError("cutoff policy needs 3 <= n_default <= n_max and window >= 2");
    return p;
}

CutoffPolicy CutoffPolicy::from_env() {
    const char* v = std::getenv(env_var);
    return v ? parse(v) : CutoffPolicy{};
}

AutoHilbert hilbert_auto(const IdealPresentation& ideal, const CutoffPolicy& policy) {
    std::uint32_t n = std::min(policy.n_default, policy.n_max);
    for (;;) {
        auto h = hilbert_data(ideal.with_level(n), n, policy.window);
        std::uint32_t next = n;
        if (h.status == HilbertStatus::ok && h.e0 && *h.e0 > 0) {
            next = std::min<std::uint32_t>(std::max<std::uint32_t>(n, static_cast<std::uint32_t>(2 * *h.e0 + 2)),
                                           policy.n_max);
        } else if (h.status != HilbertStatus::ok) {
            next = std::min(2 * n, policy.n_max);
        }
        if (next == n) return {std::move(h), n};
        n = next;
    }
}

TruncatedPoly candidate_form(std::size_t nvars, std::uint64_t point, const Field& field, std::uint32_t level) {
    TruncatedPoly L(nvars, field, level);
    mpq_class power = 1;
    for (std::size_t i = 0; i < nvars; ++i) {
        L.add_term(Monomial::variable(nvars, i), power);
        power *= static_cast<unsigned long>(point);
    }
    return L;
}

std::vector<TruncatedPoly> candidate_forms(std::size_t nvars, std::uint32_t e0, const Field& field,
                                           std::uint32_t level) {
    const std::uint64_t s = static_cast<std::uint64_t>(e0) * (nvars - 1) + 1;
    if (field.is_prime() && field.size() < s)
        throw PreconditionError("need " + std::to_string(s) + " distinct points for the candidate forms but " +
                                field.name() + " has only " + std::to_string(field.size()));
    std::vector<TruncatedPoly> out;
    for (std::uint64_t q = 0; q < s; ++q) out.push_back(candidate_form(nvars, q, field, level));
    return out;
}

std::vector<TruncatedPoly> all_rational_forms(std::size_t nvars, const Field& field, std::uint32_t level) {
    if (!field.is_prime()) throw PreconditionError("only finite fields have a finite list of linear forms");
    const auto p = field.size();
    std::vector<TruncatedPoly> out;
    for (std::size_t lead = 0; lead < nvars; ++lead) {
        const std::size_t rest = nvars - lead - 1;
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < rest; ++i) total *= p;
        for (std::uint64_t code = 0; code < total; ++code) {
            TruncatedPoly L(nvars, field, level);
            L.add_term(Monomial::variable(nvars, lead), 1);
            std::uint64_t c = code;
            for (std::size_t i = lead + 1; i < nvars; ++i) {
                L.add_term(Monomial::variable(nvars, i), static_cast<unsigned long>(c % p));
                c /= p;
            }
            out.push_back(std::move(L));
        }
    }
    return out;
}

namespace {

std::uint64_t colength(const IdealPresentation& ideal, std::uint32_t n) {
    auto spans = ideal_spans(ideal, n);
    return spans.basis().size() - spans.echelon().rank();
}

std::uint64_t graded_dim(const DegreeSpans& spans, std::uint32_t t) {
    return spans.basis().degree_size(t) - spans.slice_dim(t);
}

// x L : S_t / J*_t -> S_{t+1} / J*_{t+1} is an isomorphism of e0-dimensional spaces.
bool graded_iso(const DegreeSpans& spans, const std::vector<DegreeSlice>& slices, const TruncatedPoly& form,
                std::uint32_t t, std::uint64_t e0) {
    if (graded_dim(spans, t) != e0 || graded_dim(spans, t + 1) != e0) return false;
    const auto& basis = spans.basis();
    Echelon e(spans.field(), basis.size());
    for (auto& f : slices[t + 1].forms) e.insert(f.to_vector(basis));
    auto L = form.at_level(basis.level());
    for (auto& m : monomials_of_degree(basis.nvars(), t)) e.insert(L.times_monomial(m).to_vector(basis));
    return e.rank() == basis.degree_size(t + 1);
}

IdealPresentation with_form(const IdealPresentation& J, const TruncatedPoly& form) {
    auto gens = J.generators();
    gens.push_back(form.at_level(J.level()));
    return IdealPresentation(J.nvars(), J.field(), J.level(), std::move(gens));
}

void check_linear(const TruncatedPoly& form, std::size_t nvars) {
    if (form.nvars() != nvars) throw PreconditionError("linear form lives in a different ring");
    for (auto& [m, c] : form.terms())
        if (m.degree() != 1) throw PreconditionError("'" + to_string(form) + "' is not a linear form");
    if (form.is_zero()) throw PreconditionError("linear form is zero");
}

} // namespace

TnResult tn_membership(const IdealPresentation& J, std::uint32_t n, std::uint32_t e0,
                       const std::vector<TruncatedPoly>& forms) {
    if (e0 == 0) throw PreconditionError("multiplicity must be positive");
    if (J.level() != n) throw PreconditionError("ideal must be presented at the level n it contains");
    if (n < e0 + 1) throw PreconditionError("level must be at least e0 + 1");
    TnResult result;
    auto spans = ideal_spans(J, n);
    for (std::uint32_t t = e0 - 1; t < n; ++t) {
        auto d = graded_dim(spans, t);
        if (d != e0) {
            std::ostringstream msg;
            msg << "graded piece of degree " << t << " has dimension " << d << ", expected " << e0;
            result.failure = TnFailure{2, t, msg.str()};
            return result;
        }
    }
    auto slices = spans.slices();
    for (auto& form : forms) {
        check_linear(form, J.nvars());
        ++result.forms_tried;
        auto L = form.at_level(n);
        auto len = colength(with_form(J, L), n);
        if (len > e0) {
            if (!result.failure)
                result.failure = TnFailure{1, 0, "length " + std::to_string(len) + " exceeds " + std::to_string(e0) +
                                                     " for L = " + to_string(L)};
            continue;
        }
        TnCertificate cert{L, len, {}};
        bool ok = true;
        for (std::uint32_t t = e0 - 1; t + 2 <= n; ++t) {
            if (!graded_iso(spans, slices, L, t, e0)) {
                if (!result.failure)
                    result.failure = TnFailure{2, t, "multiplication by " + to_string(L) + " from degree " +
                                                         std::to_string(t) + " is not an isomorphism"};
                ok = false;
                break;
            }
            cert.iso_range.push_back(t);
        }
        if (ok) {
            result.member = true;
            result.certificate = std::move(cert);
            result.failure.reset();
            return result;
        }
    }
    return result;
}

TnResult tn_membership(const IdealPresentation& J, std::uint32_t n, std::uint32_t e0, FormSearch search) {
    std::vector<TruncatedPoly> forms;
    const auto s = static_cast<std::uint64_t>(e0) * (J.nvars() - 1) + 1;
    if (search == FormSearch::all_rational ||
        (search == FormSearch::automatic && J.field().is_prime() && J.field().size() < s))
        forms = all_rational_forms(J.nvars(), J.field(), n);
    else
        forms = candidate_forms(J.nvars(), e0, J.field(), n);
    return tn_membership(J, n, e0, forms);
}

SuperficialResult cm_superficial_test(const IdealPresentation& ideal, const TruncatedPoly& form, std::uint32_t e0,
                                      std::uint32_t n) {
    if (e0 == 0) throw PreconditionError("multiplicity must be positive");
    check_linear(form, ideal.nvars());
    if (ideal.level() < std::max(n, e0 + 1))
        throw PreconditionError("generators must be known to level max(n, e0 + 1)");
    SuperficialResult r;
    auto low = ideal.truncated(e0 + 1);
    r.length = colength(with_form(low, form.at_level(e0 + 1)), e0 + 1);
    r.passes = r.length <= e0;
    if (n >= e0 + 1) {
        auto spans = ideal_spans(ideal, n);
        auto slices = spans.slices();
        for (std::uint32_t t = e0 - 1; t + 2 <= n; ++t) {
            if (!graded_iso(spans, slices, form, t, e0)) break;
            r.iso_range.push_back(t);
        }
    }
    return r;
}

ShapeReport shape_check(const IdealPresentation& J, std::uint32_t n, std::uint32_t e0) {
    if (J.level() != n) throw PreconditionError("ideal must be presented at the level n it contains");
    if (n < e0 + 2) throw PreconditionError("shape check needs n >= e0 + 2");
    auto spans = ideal_spans(J, n);
    auto data = initial_ideal(spans);
    ShapeReport r;
    r.generator_degrees = data.generator_degrees;
    // Degree n generators come from M^n itself.
    auto up = MonomialBasis::get(J.nvars(), n + 1);
    DegreeSlice top = data.slices[n - 1];
    for (auto& f : top.forms) f = f.at_level(n + 1);
    auto shifted = degree_shift_span(*up, J.field(), top);
    r.generator_degrees.insert(r.generator_degrees.end(), up->degree_size(n) - shifted.rank(), n);
    for (auto d : data.generator_degrees)
        if (d >= e0 + 1 && d <= n - 1 &&
            std::find(r.forbidden_degrees.begin(), r.forbidden_degrees.end(), d) == r.forbidden_degrees.end())
            r.forbidden_degrees.push_back(d);
    for (std::uint32_t t = e0 + 1; t <= n - 1; ++t) {
        auto lower = degree_shift_span(spans.basis(), J.field(), data.slices[t - 1]);
        if (lower.rank() != data.slices[t].dim()) r.slice_identity_failures.push_back(t);
    }
    r.ok = r.forbidden_degrees.empty() && r.slice_identity_failures.empty();
    return r;
}

JTildeResult jtilde(const IdealPresentation& J, std::uint32_t n, std::uint32_t e0) {
    if (J.level() != n) throw PreconditionError("ideal must be presented at the level n it contains");
    if (n < e0 + 1) throw PreconditionError("level must be at least e0 + 1");
    auto spans = ideal_spans(J, n);
    auto slices = spans.slices();
    JTildeResult r;
    for (std::uint32_t d = 1; d <= e0 && d < n; ++d) {
        auto fresh = new_generators_in_degree(spans.basis(), J.field(), &slices[d - 1], slices[d]);
        r.generators.insert(r.generators.end(), fresh.begin(), fresh.end());
    }
    IdealPresentation tilde(J.nvars(), J.field(), n, r.generators);
    auto tspans = ideal_spans(tilde, n);
    r.reproduces_initial_ideal = true;
    for (std::uint32_t d = 0; d < n; ++d)
        r.reproduces_initial_ideal = r.reproduces_initial_ideal && tspans.slice_dim(d) == spans.slice_dim(d);
    const std::uint32_t big = std::max<std::uint32_t>(n, 2 * e0 + 2);
    auto h = hilbert_data(tilde.with_level(big), big);
    if (h.status == HilbertStatus::ok) r.multiplicity = h.e0;
    return r;
}

AdmissibleRange admissible_range(std::uint32_t b, std::uint32_t e0) {
    if (b == 0 || e0 == 0) throw PreconditionError("embedding dimension and multiplicity must be positive");
    if (b > e0) throw PreconditionError("embedding dimension " + std::to_string(b) + " exceeds multiplicity " +
                                        std::to_string(e0));
    AdmissibleRange a{b, e0, 0, 0, 0};
    if (b == 1) {
        // A smooth branch; larger multiplicities cannot occur.
        if (e0 > 1) a.rho0 = 1;
        return a;
    }
    std::uint32_t r = 0;
    while (!(binomial(b + r - 1, r) <= e0 && e0 < binomial(b + r, r + 1))) ++r;
    a.r = r;
    a.rho0 = static_cast<std::int64_t>(r + 1) * e0 - static_cast<std::int64_t>(binomial(r + b, r));
    a.rho1 = static_cast<std::int64_t>(e0) * (e0 - 1) / 2 - static_cast<std::int64_t>(b - 1) * (b - 2) / 2;
    return a;
}

bool admissible(std::uint32_t b, std::uint32_t e0, std::int64_t e1) { return admissible_range(b, e0).contains(e1); }

std::vector<std::pair<std::uint32_t, std::int64_t>> admissible_polys(std::size_t nvars, std::uint32_t e0) {
    std::vector<std::pair<std::uint32_t, std::int64_t>> out;
    for (std::uint32_t b = 1; b <= std::min<std::uint32_t>(static_cast<std::uint32_t>(nvars), e0); ++b) {
        auto a = admissible_range(b, e0);
        for (auto e1 = a.rho0; e1 <= a.rho1; ++e1) out.emplace_back(b, e1);
    }
    return out;
}

StratumResult hilbert_stratum_check(const IdealPresentation& ideal, const std::vector<std::uint64_t>& F,
                                    std::uint32_t r, std::uint32_t e0) {
    if (e0 == 0 || r == 0 || r > e0 + 1) throw PreconditionError("need 1 <= r <= e0 + 1");
    StratumResult res;
    res.window_begin = r;
    res.window_end = e0;
    if (r > e0) {
        res.in_stratum = true;
        return res;
    }
    if (F.size() < e0 + 1) throw PreconditionError("F must be given for t = 0 .. e0");
    if (ideal.level() < e0 + 1) throw PreconditionError("generators must be known to level e0 + 1");
    auto h = hilbert_data(ideal.truncated(e0 + 1), e0 + 1);
    for (std::uint32_t t = r; t <= e0; ++t) {
        if (h.values[t] != F[t]) {
            res.first_mismatch = t;
            return res;
        }
    }
    res.in_stratum = true;
    return res;
}

CellResult cell_membership(const IdealPresentation& J, std::uint32_t n, const CellIndex& cell, std::uint32_t e0) {
    if (J.level() != n) throw PreconditionError("ideal must be presented at the level n it contains");
    if (e0 == 0 || n < e0 + 1) throw PreconditionError("need e0 >= 1 and n >= e0 + 1");
    auto spans = ideal_spans(J, n);
    const auto& basis = spans.basis();
    const std::uint64_t len = basis.size() - spans.echelon().rank();
    const std::int64_t e1 = static_cast<std::int64_t>(e0) * n - static_cast<std::int64_t>(len);
    const std::int64_t low = static_cast<std::int64_t>(e0) * e0 - e1; // p(e0 - 1)
    const auto b_e0 = basis.degree_begin(e0), b_next = basis.degree_begin(e0 + 1);

    auto check_block = [](const std::vector<std::uint32_t>& block, std::size_t size, std::size_t lo, std::size_t hi,
                          const char* name) {
        if (block.size() != size)
            throw PreconditionError(std::string("malformed cell index: ") + name + " block needs " +
                                    std::to_string(size) + " entries");
        std::set<std::uint32_t> seen(block.begin(), block.end());
        if (seen.size() != block.size())
            throw PreconditionError(std::string("malformed cell index: repeated entry in ") + name + " block");
        for (auto i : block)
            if (i < lo || i > hi)
                throw PreconditionError(std::string("malformed cell index: ") + name + " entry " + std::to_string(i) +
                                        " outside " + std::to_string(lo) + ".." + std::to_string(hi));
    };
    if (low < 0) throw PreconditionError("ideal colength is inconsistent with e0");
    check_block(cell.i_block, static_cast<std::size_t>(low), 1, b_e0, "i");
    check_block(cell.j_block, e0, b_e0 + 1, b_next, "j");
    const auto s = static_cast<std::uint64_t>(e0) * (J.nvars() - 1) + 1;
    if (cell.point >= s || (J.field().is_prime() && cell.point >= J.field().size()))
        throw PreconditionError("malformed cell index: point selects no candidate form");

    auto L = candidate_form(J.nvars(), cell.point, J.field(), n);
    Echelon e = spans.echelon();
    std::size_t independent = 0, total = 0;
    auto add = [&](const TruncatedPoly& f) {
        ++total;
        if (e.insert(f.to_vector(basis))) ++independent;
    };
    for (auto i : cell.i_block) add(TruncatedPoly::term(J.nvars(), J.field(), n, basis[i - 1], 1));
    for (auto j : cell.j_block) {
        auto f = TruncatedPoly::term(J.nvars(), J.field(), n, basis[j - 1], 1);
        for (std::uint32_t r = 0; r + e0 < n; ++r) {
            add(f);
            f = f * L;
        }
    }
    CellResult res;
    res.rank_deficit = total - independent;
    res.member = total == len && independent == total;
    return res;
}

namespace {

using Canonical = std::vector<SparseVec>;

// Calls fn with the rows (over m coordinates) of every k-dimensional
// subspace of F_q^m, each in reduced echelon form.
void for_each_subspace(std::size_t m, std::size_t k, std::uint64_t q,
                       const std::function<void(const std::vector<std::vector<std::uint64_t>>&)>& fn) {
    if (k > m) return;
    std::vector<std::size_t> piv(k);
    std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t idx, std::size_t start) {
        if (idx == k) {
            std::vector<std::pair<std::size_t, std::size_t>> free; // (row, column)
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t c = piv[r] + 1; c < m; ++c)
                    if (std::find(piv.begin(), piv.end(), c) == piv.end()) free.emplace_back(r, c);
            std::vector<std::uint64_t> digits(free.size(), 0);
            for (;;) {
                std::vector<std::vector<std::uint64_t>> rows(k, std::vector<std::uint64_t>(m, 0));
                for (std::size_t r = 0; r < k; ++r) rows[r][piv[r]] = 1;
                for (std::size_t f = 0; f < free.size(); ++f) rows[free[f].first][free[f].second] = digits[f];
                fn(rows);
                std::size_t f = 0;
                while (f < digits.size() && ++digits[f] == q) digits[f++] = 0;
                if (f == digits.size()) break;
            }
            return;
        }
        for (std::size_t c = start; c + (k - idx) <= m; ++c) {
            piv[idx] = c;
            choose(idx + 1, c + 1);
        }
    };
    choose(0, 0);
}

IdealPresentation presentation_of(const Canonical& rows, std::size_t nvars, const Field& field, std::uint32_t level) {
    auto spans = DegreeSpans::of_closed_span(MonomialBasis::get(nvars, level), field, rows);
    return IdealPresentation(nvars, field, level, minimal_generators(spans));
}

} // namespace

EnumerationResult enumerate_xi(const EnumerationRequest& req) {
    const Field field = Field::prime(req.q);
    const auto N = req.nvars;
    const auto e0 = req.e0;
    if (N == 0 || e0 == 0) throw PreconditionError("ambient dimension and multiplicity must be positive");
    if (req.level < e0 + 1) throw PreconditionError("level must be at least e0 + 1");
    EnumerationResult result;
    auto polys = admissible_polys(N, e0);
    if (req.e1) {
        result.e1 = *req.e1;
    } else {
        std::set<std::int64_t> values;
        for (auto& [b, e1] : polys) values.insert(e1);
        if (values.size() != 1) throw PreconditionError("e1 is not determined by N and e0; pass it explicitly");
        result.e1 = *values.begin();
    }
    bool ok = std::any_of(polys.begin(), polys.end(), [&](auto& pe) { return pe.second == result.e1; });
    if (!ok) return result;

    auto p = [&](std::uint32_t t) { return static_cast<std::int64_t>(e0) * (t + 1) - result.e1; };
    std::vector<Canonical> current{Canonical{}};
    for (std::uint32_t l = 1; l < req.level; ++l) {
        auto below = MonomialBasis::get(N, l);
        auto next_basis = MonomialBasis::get(N, l + 1);
        const std::size_t dS = next_basis->degree_size(l);
        const auto top = monomials_of_degree(N, l);
        std::set<Canonical> next;
        for (auto& node : current) {
            auto gens = minimal_generators(DegreeSpans::of_closed_span(below, field, node));
            const std::size_t slots = gens.size() * dS;
            std::vector<std::uint64_t> digits(slots, 0);
            for (;;) {
                std::vector<TruncatedPoly> lifted;
                for (std::size_t g = 0; g < gens.size(); ++g) {
                    auto f = gens[g].at_level(l + 1);
                    for (std::size_t k = 0; k < dS; ++k)
                        if (digits[g * dS + k]) f.add_term(top[k], static_cast<unsigned long>(digits[g * dS + k]));
                    lifted.push_back(std::move(f));
                }
                auto w0 = ideal_spans(IdealPresentation(N, field, l + 1, lifted), l + 1);
                const std::int64_t dim_w0 = static_cast<std::int64_t>(w0.echelon().rank());
                std::vector<std::size_t> quotient; // degree-l columns without a pivot
                for (std::size_t c = next_basis->degree_begin(l); c < next_basis->degree_begin(l + 1); ++c)
                    if (!w0.echelon().has_pivot(static_cast<std::uint32_t>(c))) quotient.push_back(c);
                std::vector<std::size_t> dims;
                if (l + 1 >= e0) {
                    std::int64_t want = static_cast<std::int64_t>(next_basis->size()) - p(l) - dim_w0;
                    if (want >= 0 && static_cast<std::size_t>(want) <= quotient.size())
                        dims.push_back(static_cast<std::size_t>(want));
                } else {
                    for (std::size_t k = 0; k <= quotient.size(); ++k) dims.push_back(k);
                }
                for (auto k : dims) {
                    for_each_subspace(quotient.size(), k, req.q, [&](const std::vector<std::vector<std::uint64_t>>& rows) {
                        if (++result.candidates_examined > req.budget)
                            throw BudgetExceeded("enumeration budget of " + std::to_string(req.budget) +
                                                 " candidates exhausted at level " + std::to_string(l + 1));
                        Echelon e = w0.echelon();
                        for (auto& row : rows) {
                            SparseVec v;
                            for (std::size_t c = 0; c < row.size(); ++c)
                                if (row[c]) v.emplace_back(static_cast<std::uint32_t>(quotient[c]),
                                                           Coeff(static_cast<unsigned long>(row[c])));
                            e.insert(v);
                        }
                        next.insert(e.rref());
                    });
                }
                std::size_t s = 0;
                while (s < slots && ++digits[s] == req.q) digits[s++] = 0;
                if (s == slots) break;
            }
        }
        current.clear();
        if (l + 1 >= e0 + 1) {
            auto forms = all_rational_forms(N, field, l + 1);
            if (req.form_shuffle_seed) {
                std::mt19937_64 rng(*req.form_shuffle_seed);
                std::shuffle(forms.begin(), forms.end(), rng);
            }
            for (auto& node : next)
                if (tn_membership(presentation_of(node, N, field, l + 1), l + 1, e0, forms).member)
                    current.push_back(node);
        } else {
            current.assign(next.begin(), next.end());
        }
    }
    for (auto& node : current) result.ideals.push_back(presentation_of(node, N, field, req.level));
    result.count = result.ideals.size();
    return result;
}

} // namespace curvetower
