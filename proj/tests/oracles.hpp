#pragma once

// Independent reference computations used only by the tests. Everything
// here is deliberately naive: dense matrices, explicit enumeration and
// boost rationals instead of the library's GMP-backed sparse elimination.

#include "curvetower/poly.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using Rat = boost::multiprecision::cpp_rational;
using Exps = std::vector<int>;
using Poly = std::map<Exps, Rat>;

inline int deg(const Exps& e) { return std::accumulate(e.begin(), e.end(), 0); }

inline Poly from_lib(const curvetower::TruncatedPoly& p) {
    Poly out;
    for (auto& [m, c] : p.terms()) {
        Exps e(m.exponents().begin(), m.exponents().end());
        out[e] = Rat(c.get_str());
    }
    return out;
}

inline int order(const Poly& p) {
    int o = 1 << 20;
    for (auto& [e, c] : p)
        if (c != 0) o = std::min(o, deg(e));
    return o;
}

inline Poly mul(const Poly& a, const Poly& b, int level) {
    Poly out;
    for (auto& [ea, ca] : a)
        for (auto& [eb, cb] : b) {
            Exps e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            if (deg(e) >= level) continue;
            out[e] += ca * cb;
        }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

inline void all_exps(int nvars, int d, Exps& cur, int pos, std::vector<Exps>& out) {
    if (pos == nvars - 1) {
        cur[pos] = d;
        out.push_back(cur);
        return;
    }
    for (int e = 0; e <= d; ++e) {
        cur[pos] = e;
        all_exps(nvars, d - e, cur, pos + 1, out);
    }
}

inline std::vector<Exps> exps_up_to(int nvars, int maxdeg) {
    std::vector<Exps> out;
    for (int d = 0; d <= maxdeg; ++d) {
        Exps cur(nvars, 0);
        all_exps(nvars, d, cur, 0, out);
    }
    return out;
}

inline Rat reduce_mod(const Rat& x, long p) {
    using boost::multiprecision::cpp_int;
    cpp_int num = boost::multiprecision::numerator(x), den = boost::multiprecision::denominator(x);
    long n = static_cast<long>(((num % p) + p) % p), dd = static_cast<long>(((den % p) + p) % p);
    long inv = 1;
    for (long i = 1; i < p; ++i)
        if (dd * i % p == 1) inv = i;
    return Rat(n * inv % p);
}

// Dense Gaussian elimination; p == 0 means rationals.
inline std::size_t rank(std::vector<std::vector<Rat>> m, long p = 0) {
    if (m.empty()) return 0;
    std::size_t cols = m[0].size(), r = 0;
    if (p != 0)
        for (auto& row : m)
            for (auto& x : row) x = reduce_mod(x, p);
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[r]);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c] / m[r][c];
            if (p != 0) {
                long inv = 1, piv_v = static_cast<long>(boost::multiprecision::numerator(m[r][c]));
                for (long k = 1; k < p; ++k)
                    if (piv_v * k % p == 1) inv = k;
                f = Rat(static_cast<long>(boost::multiprecision::numerator(m[i][c])) * inv % p);
            }
            for (std::size_t k = 0; k < cols; ++k) {
                m[i][k] -= f * m[r][k];
                if (p != 0) m[i][k] = reduce_mod(m[i][k], p);
            }
        }
        ++r;
    }
    return r;
}

// dim R/(I + M^{t+1}) for t < n by explicit per-degree elimination.
inline std::vector<std::uint64_t> hilbert(const std::vector<Poly>& gens, int nvars, int n, long p = 0) {
    std::vector<std::uint64_t> out;
    for (int t = 0; t < n; ++t) {
        auto mons = exps_up_to(nvars, t);
        std::map<Exps, std::size_t> col;
        for (std::size_t i = 0; i < mons.size(); ++i) col[mons[i]] = i;
        std::vector<std::vector<Rat>> rows;
        for (auto& g : gens) {
            int o = order(g);
            if (o > t) continue;
            for (auto& a : exps_up_to(nvars, t - o)) {
                Poly m{{a, Rat(1)}};
                auto prod = mul(g, m, t + 1);
                std::vector<Rat> row(mons.size());
                for (auto& [e, c] : prod) row[col[e]] = c;
                rows.push_back(row);
            }
        }
        out.push_back(mons.size() - rank(rows, p));
    }
    return out;
}

// Standard monomial count for a monomial ideal.
inline std::vector<std::uint64_t> monomial_hilbert(const std::vector<Exps>& gens, int nvars, int n) {
    std::vector<std::uint64_t> out;
    for (int t = 0; t < n; ++t) {
        std::uint64_t count = 0;
        for (auto& e : exps_up_to(nvars, t)) {
            bool in = false;
            for (auto& g : gens) {
                bool div = true;
                for (int i = 0; i < nvars; ++i) div = div && g[i] <= e[i];
                in = in || div;
            }
            if (!in) ++count;
        }
        out.push_back(count);
    }
    return out;
}

// dim I*_d for d < n over F_2 by listing every element of (I + M^{d+1})/M^{d+1}.
inline std::vector<std::size_t> initial_dims_f2(const std::vector<Poly>& gens, int nvars, int n) {
    std::vector<std::size_t> out;
    for (int d = 0; d < n; ++d) {
        std::vector<Poly> mult;
        for (auto& g : gens) {
            int o = order(g);
            if (o > d) continue;
            for (auto& a : exps_up_to(nvars, d - o)) mult.push_back(mul(g, Poly{{a, Rat(1)}}, d + 1));
        }
        if (mult.size() > 22) throw std::runtime_error("oracle enumeration too large");
        std::set<std::set<Exps>> forms;
        for (std::uint64_t mask = 1; mask < (1ULL << mult.size()); ++mask) {
            std::map<Exps, int> acc;
            for (std::size_t i = 0; i < mult.size(); ++i)
                if (mask >> i & 1)
                    for (auto& [e, c] : mult[i]) acc[e] ^= static_cast<int>(boost::multiprecision::numerator(c)) & 1;
            bool low = false;
            std::set<Exps> top;
            for (auto& [e, c] : acc) {
                if (!c) continue;
                if (deg(e) < d) low = true;
                if (deg(e) == d) top.insert(e);
            }
            if (!low && !top.empty()) forms.insert(top);
        }
        // Every nonzero vector of the subspace appears, so its size is 2^dim - 1.
        std::size_t dim = 0;
        while ((std::size_t{1} << dim) - 1 < forms.size()) ++dim;
        out.push_back(dim);
    }
    return out;
}

} // namespace oracle

namespace oracle {

// Brute force over F_q for N = 2: lists every subspace J of R/M^n that is
// an ideal, has dim R/(J + M^{t+1}) = e0 (t+1) - e1 for e0-1 <= t < n and
// passes both conditions for some q-rational linear form. Uses only dense
// modular arithmetic on explicit coordinate vectors.
struct SmallRing {
    int n;
    long q;
    std::vector<Exps> mons;               // degree < n, degree ascending
    std::map<Exps, int> index;
    explicit SmallRing(int level, long field) : n(level), q(field) {
        mons = exps_up_to(2, level - 1);
        for (std::size_t i = 0; i < mons.size(); ++i) index[mons[i]] = static_cast<int>(i);
    }
    using Vec = std::vector<long>;
    std::size_t rank(std::vector<Vec> rows) const {
        std::size_t r = 0, cols = mons.size();
        for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
            std::size_t piv = r;
            while (piv < rows.size() && rows[piv][c] % q == 0) ++piv;
            if (piv == rows.size()) continue;
            std::swap(rows[piv], rows[r]);
            long inv = 1;
            while (rows[r][c] * inv % q != 1) ++inv;
            for (auto& x : rows[r]) x = x * inv % q;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (i == r || rows[i][c] == 0) continue;
                long f = rows[i][c];
                for (std::size_t k = 0; k < cols; ++k) rows[i][k] = ((rows[i][k] - f * rows[r][k]) % q + q) % q;
            }
            ++r;
        }
        return r;
    }
    Vec times_var(const Vec& v, int var) const {
        Vec out(mons.size(), 0);
        for (std::size_t i = 0; i < mons.size(); ++i) {
            if (!v[i]) continue;
            Exps e = mons[i];
            ++e[var];
            if (deg(e) < n) out[index.at(e)] = v[i];
        }
        return out;
    }
    Vec times_linear(const Vec& v, long a, long b) const {
        Vec x = times_var(v, 0), y = times_var(v, 1), out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) out[i] = (a * x[i] + b * y[i]) % q;
        return out;
    }
    // dim of (J + M^{t+1}) / M^{t+1}
    std::size_t trunc_rank(const std::vector<Vec>& J, int t) const {
        std::vector<Vec> rows;
        for (auto v : J) {
            for (std::size_t i = 0; i < mons.size(); ++i)
                if (deg(mons[i]) > t) v[i] = 0;
            rows.push_back(v);
        }
        return rank(rows);
    }
    bool member(const std::vector<Vec>& J, int e0, long e1) const {
        auto unit = [&](std::size_t i) {
            Vec v(mons.size(), 0);
            v[i] = 1;
            return v;
        };
        // ideal closure
        std::size_t r = rank(J);
        for (auto& v : J)
            for (int var = 0; var < 2; ++var) {
                auto rows = J;
                rows.push_back(times_var(v, var));
                if (rank(rows) != r) return false;
            }
        for (int t = e0 - 1; t < n; ++t) {
            std::size_t below = 0;
            for (auto& m : mons) below += deg(m) <= t;
            if (static_cast<long>(below - trunc_rank(J, t)) != static_cast<long>(e0) * (t + 1) - e1) return false;
        }
        // graded pieces: J*_t spanned by degree-t parts of elements of J with no lower terms
        auto slice = [&](int t) {
            std::vector<Vec> out;
            long total = 1;
            for (std::size_t i = 0; i < J.size(); ++i) total *= q;
            for (long code = 1; code < total; ++code) {
                Vec acc(mons.size(), 0);
                long c = code;
                for (auto& v : J) {
                    long a = c % q;
                    c /= q;
                    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = (acc[i] + a * v[i]) % q;
                }
                bool low = false, any = false;
                Vec top(mons.size(), 0);
                for (std::size_t i = 0; i < acc.size(); ++i) {
                    if (!acc[i]) continue;
                    if (deg(mons[i]) < t) low = true;
                    if (deg(mons[i]) == t) {
                        top[i] = acc[i];
                        any = true;
                    }
                }
                if (!low && any) out.push_back(top);
            }
            return out;
        };
        for (long a = 0; a < q; ++a)
            for (long b = 0; b < q; ++b) {
                if (a == 0 && b == 0) continue;
                auto rows = J;
                for (std::size_t i = 0; i < mons.size(); ++i) rows.push_back(times_linear(unit(i), a, b));
                if (static_cast<long>(mons.size() - rank(rows)) > e0) continue;
                bool ok = true;
                for (int t = e0 - 1; ok && t + 2 <= n; ++t) {
                    auto up = slice(t + 1);
                    std::size_t sz = 0;
                    for (auto& m : mons) sz += deg(m) == t + 1;
                    auto rows2 = up;
                    for (std::size_t i = 0; i < mons.size(); ++i)
                        if (deg(mons[i]) == t) rows2.push_back(times_linear(unit(i), a, b));
                    ok = rank(rows2) == sz;
                }
                if (ok) return true;
            }
        return false;
    }
    // Every subspace of dimension k given by reduced echelon rows.
    template <class F>
    void subspaces(std::size_t k, F&& fn) const {
        const std::size_t m = mons.size();
        std::vector<std::size_t> piv(k);
        std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t idx, std::size_t start) {
            if (idx == k) {
                std::vector<std::pair<std::size_t, std::size_t>> free;
                for (std::size_t r = 0; r < k; ++r)
                    for (std::size_t c = piv[r] + 1; c < m; ++c)
                        if (std::find(piv.begin(), piv.end(), c) == piv.end()) free.emplace_back(r, c);
                long total = 1;
                for (std::size_t i = 0; i < free.size(); ++i) total *= q;
                for (long code = 0; code < total; ++code) {
                    std::vector<Vec> rows(k, Vec(m, 0));
                    for (std::size_t r = 0; r < k; ++r) rows[r][piv[r]] = 1;
                    long c = code;
                    for (auto& [r, col] : free) {
                        rows[r][col] = c % q;
                        c /= q;
                    }
                    fn(rows);
                }
                return;
            }
            for (std::size_t c = start; c + (k - idx) <= m; ++c) {
                piv[idx] = c;
                rec(idx + 1, c + 1);
            }
        };
        rec(0, 0);
    }
    long count(int e0, long e1) const {
        long colength = static_cast<long>(e0) * n - e1;
        std::size_t k = mons.size() - static_cast<std::size_t>(colength);
        long c = 0;
        subspaces(k, [&](const std::vector<Vec>& rows) {
            // J must avoid the unit: proper ideals have no constant term pivot.
            if (k > 0 && rows[0][0] != 0) return;
            if (member(rows, e0, e1)) ++c;
        });
        return c;
    }
};

// Counts elements of the semigroup below `bound` that are not a sum of more
// than t generators, via the sets S_k of sums of exactly k generators.
inline std::vector<long> sumset_hilbert(const std::vector<long>& gens, int n, long bound) {
    std::vector<bool> in_gamma(bound, false);
    std::vector<int> deepest(bound, -1);
    std::vector<bool> layer(bound, false);
    layer[0] = true;
    for (int k = 0;; ++k) {
        bool any = false;
        for (long x = 0; x < bound; ++x)
            if (layer[x]) {
                any = true;
                in_gamma[x] = true;
                deepest[x] = k;
            }
        if (!any) break;
        std::vector<bool> next(bound, false);
        for (long x = 0; x < bound; ++x)
            if (layer[x])
                for (long a : gens)
                    if (x + a < bound) next[x + a] = true;
        layer = std::move(next);
    }
    std::vector<long> out;
    for (int t = 0; t < n; ++t) {
        long c = 0;
        for (long x = 0; x < bound; ++x)
            if (in_gamma[x] && deepest[x] <= t) ++c;
        out.push_back(c);
    }
    return out;
}

} // namespace oracle
