#include "curvetower/poly.hpp"

#include "curvetower/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace curvetower {

TruncatedPoly::TruncatedPoly(std::size_t nvars, Field field, std::uint32_t level)
    : nvars_(nvars), field_(field), level_(level) {
    if (nvars == 0) throw PreconditionError("ambient dimension must be positive");
}

TruncatedPoly TruncatedPoly::constant(std::size_t nvars, Field field, std::uint32_t level, const Coeff& c) {
    return term(nvars, field, level, Monomial::one(nvars), c);
}

TruncatedPoly TruncatedPoly::term(std::size_t nvars, Field field, std::uint32_t level, const Monomial& m,
                                  const Coeff& c) {
    TruncatedPoly p(nvars, field, level);
    p.add_term(m, c);
    return p;
}

TruncatedPoly TruncatedPoly::variable(std::size_t nvars, Field field, std::uint32_t level, std::size_t i) {
    return term(nvars, field, level, Monomial::variable(nvars, i), field.from_int(1));
}

TruncatedPoly TruncatedPoly::from_vector(const MonomialBasis& basis, Field field, const SparseVec& v) {
    TruncatedPoly p(basis.nvars(), field, basis.level());
    for (auto& [c, x] : v) p.add_term(basis[c], x);
    return p;
}

Coeff TruncatedPoly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Coeff(0) : it->second;
}

std::optional<std::uint32_t> TruncatedPoly::order() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first.degree();
}

std::uint32_t TruncatedPoly::max_degree() const {
    return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
}

TruncatedPoly TruncatedPoly::homogeneous_part(std::uint32_t d) const {
    TruncatedPoly p(nvars_, field_, level_);
    for (auto& [m, c] : terms_)
        if (m.degree() == d) p.terms_.emplace(m, c);
    return p;
}

TruncatedPoly TruncatedPoly::initial_form() const {
    auto o = order();
    if (!o) throw PreconditionError("the zero element has no initial form");
    return homogeneous_part(*o);
}

void TruncatedPoly::add_term(const Monomial& m, const Coeff& c) {
    if (m.nvars() != nvars_) throw PreconditionError("monomial from a different ring");
    if (m.degree() >= level_) return;
    Coeff v = field_.normalize(c);
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        if (sgn(v) != 0) terms_.emplace(m, std::move(v));
        return;
    }
    it->second = field_.add(it->second, v);
    if (sgn(it->second) == 0) terms_.erase(it);
}

void TruncatedPoly::check_compatible(const TruncatedPoly& o) const {
    if (nvars_ != o.nvars_) throw PreconditionError("ambient dimension mismatch");
    if (!(field_ == o.field_)) throw PreconditionError("field mismatch");
    if (level_ != o.level_) throw PreconditionError("truncation level mismatch");
}

TruncatedPoly TruncatedPoly::operator+(const TruncatedPoly& o) const {
    check_compatible(o);
    TruncatedPoly r = *this;
    for (auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

TruncatedPoly TruncatedPoly::operator-(const TruncatedPoly& o) const { return *this + (-o); }

TruncatedPoly TruncatedPoly::operator-() const {
    TruncatedPoly r(nvars_, field_, level_);
    for (auto& [m, c] : terms_) r.terms_.emplace(m, field_.neg(c));
    return r;
}

TruncatedPoly TruncatedPoly::operator*(const TruncatedPoly& o) const {
    check_compatible(o);
    TruncatedPoly r(nvars_, field_, level_);
    for (auto& [m1, c1] : terms_) {
        for (auto& [m2, c2] : o.terms_) {
            if (m1.degree() + m2.degree() >= level_) break;
            r.add_term(m1 * m2, field_.mul(c1, c2));
        }
    }
    return r;
}

TruncatedPoly TruncatedPoly::scaled(const Coeff& c) const {
    TruncatedPoly r(nvars_, field_, level_);
    Coeff v = field_.normalize(c);
    if (sgn(v) == 0) return r;
    for (auto& [m, x] : terms_) r.terms_.emplace(m, field_.mul(x, v));
    return r;
}

TruncatedPoly TruncatedPoly::times_monomial(const Monomial& m) const {
    TruncatedPoly r(nvars_, field_, level_);
    for (auto& [t, c] : terms_) {
        Monomial u = t * m;
        if (u.degree() < level_) r.terms_.emplace(std::move(u), c);
    }
    return r;
}

TruncatedPoly TruncatedPoly::pow(std::uint32_t e) const {
    TruncatedPoly r = constant(nvars_, field_, level_, 1);
    for (std::uint32_t i = 0; i < e; ++i) r = r * *this;
    return r;
}

TruncatedPoly TruncatedPoly::truncated(std::uint32_t n) const {
    if (n > level_) throw PreconditionError("cannot raise the truncation level of a truncated element");
    return at_level(n);
}

TruncatedPoly TruncatedPoly::at_level(std::uint32_t n) const {
    TruncatedPoly r(nvars_, field_, n);
    for (auto& [m, c] : terms_)
        if (m.degree() < n) r.terms_.emplace(m, c);
    return r;
}

SparseVec TruncatedPoly::to_vector(const MonomialBasis& basis) const {
    if (basis.nvars() != nvars_) throw PreconditionError("ambient dimension mismatch");
    SparseVec v;
    v.reserve(terms_.size());
    for (auto& [m, c] : terms_) {
        auto i = basis.index_of(m);
        if (i >= 0) v.emplace_back(static_cast<std::uint32_t>(i), c);
    }
    std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.first < b.first; });
    return v;
}

bool operator==(const TruncatedPoly& a, const TruncatedPoly& b) {
    return a.nvars_ == b.nvars_ && a.field_ == b.field_ && a.level_ == b.level_ && a.terms_ == b.terms_;
}

namespace {

class Parser {
public:
    Parser(std::string_view text, std::size_t nvars, const Field& field, std::uint32_t level,
           const VariableNames& names)
        : s_(text), nvars_(nvars), field_(field), level_(level), names_(names) {}

    TruncatedPoly parse() {
        TruncatedPoly p(nvars_, field_, level_);
        skip();
        if (pos_ == s_.size()) fail("empty polynomial");
        bool negative = false;
        if (peek() == '-' || peek() == '+') {
            negative = peek() == '-';
            ++pos_;
        }
        add_term(p, negative);
        for (skip(); pos_ < s_.size(); skip()) {
            char op = peek();
            if (op != '+' && op != '-') fail("expected '+' or '-'");
            ++pos_;
            add_term(p, op == '-');
        }
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    bool at_digit() {
        skip();
        return std::isdigit(static_cast<unsigned char>(peek()));
    }

    mpz_class uint() {
        skip();
        auto start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an unsigned integer");
        return mpz_class(std::string(s_.substr(start, pos_ - start)));
    }

    std::uint32_t small_uint() {
        auto start = pos_;
        mpz_class v = uint();
        if (v > 1000000) {
            pos_ = start;
            fail("exponent or index too large");
        }
        return static_cast<std::uint32_t>(v.get_ui());
    }

    void add_term(TruncatedPoly& p, bool negative) {
        skip();
        mpq_class coeff = 1;
        std::vector<std::uint32_t> exps(nvars_, 0);
        if (at_digit()) {
            mpz_class num = uint();
            mpz_class den = 1;
            skip();
            if (peek() == '/') {
                ++pos_;
                den = uint();
                if (den == 0) fail("zero denominator");
            }
            coeff = mpq_class(num, den);
            coeff.canonicalize();
            skip();
            if (peek() == '*') {
                ++pos_;
                powprod(exps);
            }
        } else {
            powprod(exps);
        }
        if (negative) coeff = -coeff;
        p.add_term(Monomial(std::move(exps)), coeff);
    }

    void powprod(std::vector<std::uint32_t>& exps) {
        for (;;) {
            variable(exps);
            skip();
            if (peek() != '*') return;
            ++pos_;
        }
    }

    void variable(std::vector<std::uint32_t>& exps) {
        skip();
        const auto var_start = pos_;
        if (s_.substr(pos_, names_.symbol.size()) != names_.symbol) fail("expected variable '" + names_.symbol + "'");
        pos_ += names_.symbol.size();
        std::size_t index = 0;
        if (names_.indexed) {
            if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected variable index");
            auto i = small_uint();
            if (i == 0 || i > nvars_) {
                pos_ = var_start;
                fail("variable index " + std::to_string(i) + " out of range 1.." + std::to_string(nvars_));
            }
            index = i - 1;
        }
        std::uint32_t e = 1;
        skip();
        if (peek() == '^') {
            ++pos_;
            e = small_uint();
        }
        exps[index] += e;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    std::size_t nvars_;
    Field field_;
    std::uint32_t level_;
    VariableNames names_;
};

std::string monomial_text(const Monomial& m, const VariableNames& names) {
    std::string out;
    for (std::size_t i = 0; i < m.nvars(); ++i) {
        if (m[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += names.symbol;
        if (names.indexed) out += std::to_string(i + 1);
        if (m[i] > 1) out += '^' + std::to_string(m[i]);
    }
    return out;
}

} // namespace

TruncatedPoly parse_poly(std::string_view text, std::size_t nvars, const Field& field, std::uint32_t level,
                         const VariableNames& names) {
    if (!names.indexed && nvars != 1) throw PreconditionError("a single symbol needs a one-variable ring");
    return Parser(text, nvars, field, level, names).parse();
}

TruncatedPoly parse_series(std::string_view text, const Field& field, std::uint32_t precision) {
    return parse_poly(text, 1, field, precision, VariableNames::series());
}

std::string to_string(const TruncatedPoly& p, const VariableNames& names) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        bool negative = sgn(c) < 0;
        mpq_class a = abs(c);
        if (first) {
            if (negative) out += '-';
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        std::string mon = monomial_text(m, names);
        if (mon.empty()) {
            out += a.get_str();
        } else if (a == 1) {
            out += mon;
        } else {
            out += a.get_str() + "*" + mon;
        }
    }
    return out;
}

std::vector<std::string> split_list(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    auto blank = [](const std::string& s) {
        return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
    };
    if (out.size() == 1 && blank(out[0])) out.clear();
    for (auto& s : out)
        if (blank(s)) throw PreconditionError("empty entry in list '" + std::string(text) + "'");
    return out;
}

std::vector<DegreeSlice> echelon_span(const MonomialBasis& basis, const Field& field,
                                      const std::vector<SparseVec>& vectors) {
    Echelon e(field, basis.size());
    for (auto& v : vectors) e.insert(v);
    std::vector<DegreeSlice> slices(basis.level());
    for (std::uint32_t d = 0; d < basis.level(); ++d) slices[d].degree = d;
    for (auto& row : e.rref()) {
        auto d = basis[row.front().first].degree();
        SparseVec part;
        for (auto& entry : row)
            if (basis[entry.first].degree() == d) part.push_back(entry);
        slices[d].forms.push_back(TruncatedPoly::from_vector(basis, field, part));
    }
    return slices;
}

} // namespace curvetower
