#include "curvetower/linalg.hpp"

#include "curvetower/errors.hpp"

#include <algorithm>
#include <variant>

namespace curvetower {

namespace {

struct RationalOps {
    using T = mpq_class;
    static bool zero(const T& a) { return sgn(a) == 0; }
    T mul(const T& a, const T& b) const { return a * b; }
    T sub(const T& a, const T& b) const { return a - b; }
    T inv(const T& a) const { return 1 / a; }
    T from(const Coeff& c) const { return c; }
    Coeff to(const T& a) const { return a; }
};

struct ModOps {
    using T = std::uint64_t;
    std::uint64_t p;
    static bool zero(T a) { return a == 0; }
    T mul(T a, T b) const { return a * b % p; }
    T sub(T a, T b) const { return (a + p - b) % p; }
    T inv(T a) const { return inverse_mod(a, p); }
    T from(const Coeff& c) const { return c.get_num().get_ui() % p; }
    Coeff to(T a) const { return Coeff(static_cast<unsigned long>(a)); }
};

template <class Ops>
class EchelonT {
public:
    using T = typename Ops::T;
    using Row = std::vector<std::pair<std::uint32_t, T>>;

    EchelonT(Ops ops, std::size_t width) : ops_(ops), pivot_row_(width, -1) {}

    Row convert(const SparseVec& v) const {
        Row r;
        r.reserve(v.size());
        for (auto& [c, x] : v) {
            if (c >= pivot_row_.size()) throw PreconditionError("vector longer than the ambient space");
            T y = ops_.from(x);
            if (!Ops::zero(y)) r.emplace_back(c, std::move(y));
        }
        return r;
    }

    SparseVec back(const Row& r) const {
        SparseVec v;
        v.reserve(r.size());
        for (auto& [c, x] : r) v.emplace_back(c, ops_.to(x));
        return v;
    }

    // r - a*row, both sorted.
    Row sub_scaled(const Row& r, const T& a, const Row& row) const {
        Row out;
        out.reserve(r.size() + row.size());
        std::size_t i = 0, j = 0;
        while (i < r.size() || j < row.size()) {
            if (j == row.size() || (i < r.size() && r[i].first < row[j].first)) {
                out.push_back(r[i++]);
            } else if (i == r.size() || row[j].first < r[i].first) {
                T y = ops_.sub(T(0), ops_.mul(a, row[j].second));
                out.emplace_back(row[j].first, std::move(y));
                ++j;
            } else {
                T y = ops_.sub(r[i].second, ops_.mul(a, row[j].second));
                if (!Ops::zero(y)) out.emplace_back(r[i].first, std::move(y));
                ++i;
                ++j;
            }
        }
        return out;
    }

    // Eliminates pivot columns from position `from` on. With leading_only the
    // loop stops at the first entry without a pivot.
    void reduce_row(Row& r, bool leading_only, std::size_t from = 0, std::int64_t skip = -1) const {
        std::size_t idx = from;
        while (idx < r.size()) {
            auto col = r[idx].first;
            auto pr = pivot_row_[col];
            if (pr < 0 || pr == skip) {
                if (leading_only) return;
                ++idx;
                continue;
            }
            T a = r[idx].second;
            Row tail(r.begin() + static_cast<std::ptrdiff_t>(idx), r.end());
            Row reduced = sub_scaled(tail, a, rows_[static_cast<std::size_t>(pr)]);
            r.resize(idx);
            r.insert(r.end(), reduced.begin(), reduced.end());
        }
    }

    bool insert(const SparseVec& v) {
        Row r = convert(v);
        reduce_row(r, false);
        if (r.empty()) return false;
        T lead_inv = ops_.inv(r.front().second);
        for (auto& e : r) e.second = ops_.mul(e.second, lead_inv);
        pivot_row_[r.front().first] = static_cast<std::int64_t>(rows_.size());
        rows_.push_back(std::move(r));
        return true;
    }

    bool contains(const SparseVec& v) const {
        Row r = convert(v);
        reduce_row(r, true);
        return r.empty();
    }

    SparseVec reduce(const SparseVec& v) const {
        Row r = convert(v);
        reduce_row(r, false);
        return back(r);
    }

    std::size_t rank() const { return rows_.size(); }

    std::vector<std::uint32_t> pivots() const {
        std::vector<std::uint32_t> p;
        for (auto& r : rows_) p.push_back(r.front().first);
        std::sort(p.begin(), p.end());
        return p;
    }

    bool has_pivot(std::uint32_t c) const { return c < pivot_row_.size() && pivot_row_[c] >= 0; }

    std::vector<SparseVec> rref() const {
        std::vector<std::size_t> order(rows_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return rows_[a].front().first > rows_[b].front().first; });
        // Work on a copy that is reduced from the largest pivot down.
        EchelonT copy = *this;
        for (auto i : order) {
            Row& r = copy.rows_[i];
            copy.reduce_row(r, false, 1, static_cast<std::int64_t>(i));
        }
        std::vector<SparseVec> out;
        for (auto it = order.rbegin(); it != order.rend(); ++it) out.push_back(back(copy.rows_[*it]));
        return out;
    }

private:
    Ops ops_;
    std::vector<std::int64_t> pivot_row_;
    std::vector<Row> rows_;
};

} // namespace

struct Echelon::Impl {
    std::variant<EchelonT<RationalOps>, EchelonT<ModOps>> e;
};

Echelon::Echelon(Field field, std::size_t width) : field_(field), width_(width) {
    if (field.is_prime())
        impl_ = std::make_unique<Impl>(Impl{EchelonT<ModOps>(ModOps{field.characteristic()}, width)});
    else
        impl_ = std::make_unique<Impl>(Impl{EchelonT<RationalOps>(RationalOps{}, width)});
}

Echelon::Echelon(const Echelon& o) : field_(o.field_), width_(o.width_), impl_(std::make_unique<Impl>(*o.impl_)) {}
Echelon& Echelon::operator=(const Echelon& o) {
    if (this != &o) {
        field_ = o.field_;
        width_ = o.width_;
        impl_ = std::make_unique<Impl>(*o.impl_);
    }
    return *this;
}
Echelon::Echelon(Echelon&&) noexcept = default;
Echelon& Echelon::operator=(Echelon&&) noexcept = default;
Echelon::~Echelon() = default;

std::size_t Echelon::rank() const {
    return std::visit([](auto& e) { return e.rank(); }, impl_->e);
}
bool Echelon::insert(const SparseVec& v) {
    return std::visit([&](auto& e) { return e.insert(v); }, impl_->e);
}
bool Echelon::contains(const SparseVec& v) const {
    return std::visit([&](auto& e) { return e.contains(v); }, impl_->e);
}
SparseVec Echelon::reduce(const SparseVec& v) const {
    return std::visit([&](auto& e) { return e.reduce(v); }, impl_->e);
}
std::vector<std::uint32_t> Echelon::pivots() const {
    return std::visit([](auto& e) { return e.pivots(); }, impl_->e);
}
bool Echelon::has_pivot(std::uint32_t column) const {
    return std::visit([&](auto& e) { return e.has_pivot(column); }, impl_->e);
}
std::size_t Echelon::pivots_below(std::uint32_t column) const {
    auto p = pivots();
    return static_cast<std::size_t>(std::lower_bound(p.begin(), p.end(), column) - p.begin());
}
std::vector<SparseVec> Echelon::rref() const {
    return std::visit([](auto& e) { return e.rref(); }, impl_->e);
}

std::vector<SparseVec> kernel(const Field& field, std::size_t width, const std::vector<SparseVec>& columns) {
    const auto m = columns.size();
    Echelon e(field, width + m);
    for (std::size_t j = 0; j < m; ++j) {
        SparseVec v = columns[j];
        v.emplace_back(static_cast<std::uint32_t>(width + j), field.from_int(1));
        e.insert(v);
    }
    std::vector<SparseVec> out;
    for (auto& row : e.rref()) {
        if (row.front().first < width) continue;
        out.push_back(shift_columns(row, static_cast<std::uint32_t>(width)));
    }
    return out;
}

std::size_t rank_of(const Field& field, std::size_t width, const std::vector<SparseVec>& vectors) {
    Echelon e(field, width);
    for (auto& v : vectors) e.insert(v);
    return e.rank();
}

SparseVec axpy(const Field& field, const SparseVec& x, const Coeff& a, const SparseVec& y) {
    SparseVec out;
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            out.push_back(x[i++]);
        } else if (i == x.size() || y[j].first < x[i].first) {
            Coeff c = field.mul(a, y[j].second);
            if (sgn(c) != 0) out.emplace_back(y[j].first, c);
            ++j;
        } else {
            Coeff c = field.add(x[i].second, field.mul(a, y[j].second));
            if (sgn(c) != 0) out.emplace_back(x[i].first, c);
            ++i;
            ++j;
        }
    }
    return out;
}

SparseVec scale(const Field& field, const SparseVec& x, const Coeff& a) {
    SparseVec out;
    if (sgn(a) == 0) return out;
    for (auto& [c, v] : x) out.emplace_back(c, field.mul(v, a));
    return out;
}

SparseVec shift_columns(const SparseVec& v, std::uint32_t offset) {
    SparseVec out;
    out.reserve(v.size());
    for (auto& [c, x] : v) {
        if (c < offset) throw PreconditionError("shift would produce a negative column");
        out.emplace_back(c - offset, x);
    }
    return out;
}

} // namespace curvetower
