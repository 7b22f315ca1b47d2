#include "curvetower/motivic.hpp"

#include "curvetower/errors.hpp"

#include <algorithm>
#include <cctype>

namespace curvetower {

void MotivicClass::add_term(std::int64_t e, const mpz_class& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MotivicClass MotivicClass::constant(const mpz_class& c) {
    MotivicClass a;
    a.add_term(0, c);
    return a;
}

MotivicClass MotivicClass::lefschetz(std::int64_t exponent) {
    MotivicClass a;
    a.add_term(exponent, 1);
    return a;
}

namespace {

class ClassParser {
public:
    explicit ClassParser(const std::string& text) : s_(text) {}

    MotivicClass run() {
        MotivicClass acc;
        skip();
        if (pos_ == s_.size()) throw ParseError("empty class", pos_);
        bool first = true;
        while (pos_ < s_.size()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip();
            } else if (!first) {
                throw ParseError("expected '+' or '-'", pos_);
            }
            acc = acc + term().scaled(sign);
            first = false;
            skip();
        }
        return acc;
    }

private:
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    mpz_class integer() {
        const auto start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) throw ParseError("expected a number", start);
        return mpz_class(s_.substr(start, pos_ - start));
    }
    std::int64_t exponent() {
        skip();
        int sign = 1;
        if (peek() == '-') {
            sign = -1;
            ++pos_;
        }
        const auto start = pos_;
        auto e = integer();
        if (!e.fits_slong_p()) throw ParseError("exponent out of range", start);
        return sign * e.get_si();
    }
    MotivicClass term() {
        mpz_class coeff = 1;
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coeff = integer();
            have_coeff = true;
            skip();
            if (peek() != '*') return MotivicClass::constant(coeff);
            ++pos_;
            skip();
        }
        if (peek() != 'L') throw ParseError(have_coeff ? "expected 'L'" : "expected a number or 'L'", pos_);
        ++pos_;
        skip();
        std::int64_t e = 1;
        if (peek() == '^') {
            ++pos_;
            e = exponent();
        }
        return MotivicClass::lefschetz(e).scaled(coeff);
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

} // namespace

MotivicClass MotivicClass::parse(const std::string& text) { return ClassParser(text).run(); }

std::optional<std::int64_t> MotivicClass::top_exponent() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.rbegin()->first;
}

std::optional<std::int64_t> MotivicClass::order() const {
    auto t = top_exponent();
    if (!t) return std::nullopt;
    return -*t;
}

mpq_class MotivicClass::norm() const {
    auto t = top_exponent();
    if (!t) return 0;
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(std::llabs(*t)));
    return *t >= 0 ? mpq_class(p) : mpq_class(mpz_class(1), p);
}

MotivicClass MotivicClass::operator+(const MotivicClass& o) const {
    MotivicClass r = *this;
    for (auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

MotivicClass MotivicClass::operator-(const MotivicClass& o) const { return *this + (-o); }

MotivicClass MotivicClass::operator-() const { return scaled(-1); }

MotivicClass MotivicClass::operator*(const MotivicClass& o) const {
    MotivicClass r;
    for (auto& [ea, ca] : terms_)
        for (auto& [eb, cb] : o.terms_) r.add_term(ea + eb, ca * cb);
    return r;
}

MotivicClass MotivicClass::scaled(const mpz_class& c) const {
    MotivicClass r;
    for (auto& [e, x] : terms_) r.add_term(e, x * c);
    return r;
}

MotivicClass MotivicClass::shifted(std::int64_t k) const {
    MotivicClass r;
    for (auto& [e, x] : terms_) r.terms_.emplace(e + k, x);
    return r;
}

std::string to_string(const MotivicClass& a) {
    if (a.is_zero()) return "0";
    std::string out;
    for (auto it = a.terms().rbegin(); it != a.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        mpz_class mag = abs(c);
        if (out.empty())
            out += c < 0 ? "-" : "";
        else
            out += c < 0 ? " - " : " + ";
        if (e == 0) {
            out += mag.get_str();
            continue;
        }
        if (mag != 1) out += mag.get_str() + "*";
        out += "L";
        if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
}

mpq_class specialize(const MotivicClass& a, const mpq_class& q) {
    if (q == 0) throw PreconditionError("cannot specialize L to 0");
    mpq_class acc = 0;
    for (auto& [e, c] : a.terms()) {
        mpq_class p = 1;
        const mpq_class base = e >= 0 ? q : mpq_class(1) / q;
        for (std::int64_t i = 0; i < std::llabs(e); ++i) p *= base;
        acc += p * c;
    }
    acc.canonicalize();
    return acc;
}

void RationalSeries::validate() const {
    for (auto& [a, b] : denominator)
        if (a < 0 || b < 1) throw PreconditionError("denominator factors need a >= 0 and b >= 1");
}

std::string to_string(const RationalSeries& s) {
    std::string num;
    for (std::size_t k = 0; k < s.numerator.size(); ++k) {
        if (s.numerator[k].is_zero()) continue;
        if (!num.empty()) num += " + ";
        std::string c = to_string(s.numerator[k]);
        const bool bare_one = c == "1";
        if (k == 0) {
            num += c;
            continue;
        }
        if (!bare_one) num += (s.numerator[k].terms().size() > 1 ? "(" + c + ")" : c) + "*";
        num += "T";
        if (k != 1) num += "^" + std::to_string(k);
    }
    if (num.empty()) num = "0";
    if (s.denominator.empty()) return num;
    std::string den;
    for (auto& [a, b] : s.denominator) {
        den += "(1 - ";
        if (a != 0) den += a == 1 ? "L*" : "L^" + std::to_string(a) + "*";
        den += b == 1 ? "T" : "T^" + std::to_string(b);
        den += ")";
    }
    return "(" + num + ") / " + den;
}

namespace {

using TPoly = std::vector<MotivicClass>;

TPoly multiply(const TPoly& a, const TPoly& b, std::optional<std::size_t> cap = std::nullopt) {
    if (a.empty() || b.empty()) return {};
    std::size_t len = a.size() + b.size() - 1;
    if (cap) len = std::min(len, *cap + 1);
    TPoly out(len);
    for (std::size_t i = 0; i < a.size() && i < len; ++i)
        for (std::size_t j = 0; j < b.size() && i + j < len; ++j) out[i + j] = out[i + j] + a[i] * b[j];
    return out;
}

TPoly factor_poly(std::int64_t a, std::uint32_t b) {
    TPoly f(b + 1);
    f[0] = MotivicClass::constant(1);
    f[b] = -MotivicClass::lefschetz(a);
    return f;
}

TPoly trimmed(TPoly p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    return p;
}

} // namespace

std::vector<MotivicClass> series_expand(const RationalSeries& s, std::size_t k) {
    s.validate();
    TPoly acc(k + 1);
    for (std::size_t i = 0; i < s.numerator.size() && i <= k; ++i) acc[i] = s.numerator[i];
    for (auto& [a, b] : s.denominator) {
        // Multiply by 1 + x + x^2 + ... with x = L^a T^b.
        TPoly geo(k + 1);
        for (std::size_t j = 0; j * b <= k; ++j) geo[j * b] = MotivicClass::lefschetz(a * static_cast<std::int64_t>(j));
        acc = multiply(acc, geo, k);
    }
    acc.resize(k + 1);
    return acc;
}

bool same_series(const RationalSeries& a, const RationalSeries& b) {
    a.validate();
    b.validate();
    TPoly lhs = a.numerator, rhs = b.numerator;
    for (auto& [x, y] : b.denominator) lhs = multiply(lhs, factor_poly(x, y));
    for (auto& [x, y] : a.denominator) rhs = multiply(rhs, factor_poly(x, y));
    return trimmed(lhs) == trimmed(rhs);
}

RationalSeries operator*(const RationalSeries& a, const RationalSeries& b) {
    RationalSeries r;
    r.numerator = multiply(a.numerator, b.numerator);
    r.denominator = a.denominator;
    r.denominator.insert(r.denominator.end(), b.denominator.begin(), b.denominator.end());
    return r;
}

MeasureContext::MeasureContext(std::uint32_t n, std::uint32_t e) : nvars(n), e0(e) {
    if (nvars == 0) throw PreconditionError("need at least one variable");
    if (e0 == 0) throw PreconditionError("multiplicity must be positive");
}

MotivicClass measure_of_level(const MotivicClass& class_n, std::uint32_t n, const MeasureContext& ctx) {
    return class_n.shifted(-static_cast<std::int64_t>(n + 1) * ctx.fibration_rank());
}

RationalSeries mps(const MotivicClass& class0, std::uint32_t n0, const MeasureContext& ctx) {
    if (n0 < 1) throw PreconditionError("starting level must be at least 1");
    RationalSeries s;
    const auto c = ctx.fibration_rank();
    if (!class0.is_zero()) {
        s.numerator.resize(n0 + 1);
        s.numerator[n0] = class0.shifted(c * n0);
    }
    s.denominator.emplace_back(c, 1);
    return s;
}

PartialVolume volume_partial(const std::map<std::uint32_t, MotivicClass>& terms) {
    PartialVolume v;
    std::optional<std::int64_t> top;
    for (auto& [s, cls] : terms) {
        v.value = v.value + cls.shifted(-static_cast<std::int64_t>(s));
        v.last_index = std::max(v.last_index, s);
        if (auto t = cls.top_exponent()) top = top ? std::max(*top, *t) : *t;
    }
    // Later terms are assumed no larger than the largest supplied class.
    v.tail_log2 = top.value_or(0) - static_cast<std::int64_t>(v.last_index + 1);
    return v;
}

std::optional<MotivicClass> fit_class_from_counts(const std::vector<std::pair<mpz_class, mpz_class>>& points,
                                                  std::size_t max_degree) {
    if (points.empty()) throw PreconditionError("need at least one point count");
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i].first == points[j].first) throw PreconditionError("repeated sample value");
    // Newton divided differences give the interpolant of minimal degree.
    const std::size_t m = points.size();
    std::vector<mpq_class> dd;
    for (auto& p : points) dd.emplace_back(p.second);
    std::vector<mpq_class> newton{dd[0]};
    for (std::size_t level = 1; level < m; ++level) {
        for (std::size_t i = m - 1; i >= level; --i)
            dd[i] = (dd[i] - dd[i - 1]) / mpq_class(points[i].first - points[i - level].first);
        newton.push_back(dd[level]);
    }
    // Expand the Newton form into monomial coefficients.
    std::vector<mpq_class> coeffs{0};
    for (std::size_t k = m; k-- > 0;) {
        std::vector<mpq_class> next(coeffs.size() + 1, 0);
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            next[i + 1] += coeffs[i];
            next[i] -= coeffs[i] * mpq_class(points[k].first);
        }
        next[0] += newton[k];
        coeffs = std::move(next);
    }
    MotivicClass out;
    for (std::size_t e = 0; e < coeffs.size(); ++e) {
        coeffs[e].canonicalize();
        if (coeffs[e] == 0) continue;
        if (coeffs[e].get_den() != 1 || e > max_degree) return std::nullopt;
        out = out + MotivicClass::lefschetz(static_cast<std::int64_t>(e)).scaled(coeffs[e].get_num());
    }
    return out;
}

} // namespace curvetower
