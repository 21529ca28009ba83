#include "xmodkit/congruence.hpp"

#include <algorithm>
#include <numeric>

namespace xmodkit {

namespace {

using i64 = std::int64_t;

i64 mod_pos(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

// factor n into prime powers
std::map<i64, int> factorize(i64 n) {
    std::map<i64, int> f;
    for (i64 p = 2; p * p <= n; ++p)
        while (n % p == 0) {
            ++f[p];
            n /= p;
        }
    if (n > 1) ++f[n];
    return f;
}

int valuation(i64 x, i64 p, int cap) {
    if (x == 0) return cap;
    int v = 0;
    while (v < cap && x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

i64 pow_i64(i64 p, int e) {
    i64 r = 1;
    while (e-- > 0) r *= p;
    return r;
}

i64 inv_mod(i64 a, i64 m) {
    i64 t = 0, newt = 1, r = m, newr = mod_pos(a, m);
    while (newr != 0) {
        i64 q = r / newr;
        std::swap(t -= q * newt, newt);
        std::swap(r -= q * newr, newr);
    }
    if (r != 1) throw internal_check_error("inverse of non-unit requested");
    return mod_pos(t, m);
}

// Diagonalization of a matrix over Z/p^e with row operations applied to b
// and column operations accumulated in V (cols x cols). After the run,
// diag[i] holds the p-valuation of the i-th diagonal entry (capped at e).
struct LocalDiag {
    i64 p, pe;
    int e;
    std::vector<std::vector<i64>> m;  // working matrix, entries in [0, pe)
    std::vector<i64> rhs;
    std::vector<std::vector<i64>> v;  // column transform
    std::vector<int> diag;            // valuations of diagonal entries

    LocalDiag(i64 p_, int e_, const std::vector<std::vector<i64>>& a,
              const std::vector<i64>* b, const std::vector<i64>& row_mod)
        : p(p_), pe(pow_i64(p_, e_)), e(e_) {
        const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
        m.assign(rows, std::vector<i64>(cols, 0));
        rhs.assign(rows, 0);
        for (std::size_t i = 0; i < rows; ++i) {
            // embed the mod-p^{v_p(row_mod)} congruence into Z/p^e
            int vi = valuation(row_mod[i], p, e);
            i64 scale = pow_i64(p, e - vi);
            for (std::size_t j = 0; j < cols; ++j) m[i][j] = mod_pos(a[i][j] * scale, pe);
            if (b) rhs[i] = mod_pos((*b)[i] * scale, pe);
        }
        v.assign(cols, std::vector<i64>(cols, 0));
        for (std::size_t j = 0; j < cols; ++j) v[j][j] = 1;
        run();
    }

    void run() {
        const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
        std::size_t k = 0;
        while (k < rows && k < cols) {
            // pivot with minimal valuation in the remaining block
            int best_v = e + 1;
            std::size_t bi = k, bj = k;
            for (std::size_t i = k; i < rows; ++i)
                for (std::size_t j = 0 + k; j < cols; ++j) {
                    int vv = valuation(m[i][j], p, e);
                    if (vv < best_v) {
                        best_v = vv;
                        bi = i;
                        bj = j;
                    }
                }
            if (best_v > e) break;  // remaining block is zero mod p^e
            std::swap(m[k], m[bi]);
            std::swap(rhs[k], rhs[bi]);
            for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][k], m[i][bj]);
            for (std::size_t i = 0; i < cols; ++i) std::swap(v[i][k], v[i][bj]);
            // normalize pivot to exactly p^best_v
            i64 unit = m[k][k] / pow_i64(p, best_v);
            i64 uinv = inv_mod(unit, pe);
            for (std::size_t j = k; j < cols; ++j) m[k][j] = mod_pos(m[k][j] * uinv, pe);
            rhs[k] = mod_pos(rhs[k] * uinv, pe);
            // clear column below and row to the right; all entries have
            // valuation >= best_v so the quotients are exact
            i64 piv = pow_i64(p, best_v);
            for (std::size_t i = k + 1; i < rows; ++i) {
                if (m[i][k] == 0) continue;
                i64 q = m[i][k] / piv;
                for (std::size_t j = k; j < cols; ++j)
                    m[i][j] = mod_pos(m[i][j] - q * m[k][j], pe);
                rhs[i] = mod_pos(rhs[i] - q * rhs[k], pe);
            }
            for (std::size_t j = k + 1; j < cols; ++j) {
                if (m[k][j] == 0) continue;
                i64 q = m[k][j] / piv;
                for (std::size_t i = k; i < rows; ++i)
                    m[i][j] = mod_pos(m[i][j] - q * m[i][k], pe);
                for (std::size_t i = 0; i < cols; ++i)
                    v[i][j] = mod_pos(v[i][j] - q * v[i][k], pe);
            }
            ++k;
        }
        diag.assign(std::min(rows, cols), e);
        for (std::size_t i = 0; i < diag.size(); ++i)
            diag[static_cast<std::size_t>(i)] = valuation(m[i][i], p, e);
    }

    // one solution of D y == rhs (mod p^e) pushed back through V, or nullopt
    std::optional<std::vector<i64>> solve() const {
        const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
        std::vector<i64> y(cols, 0);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i < diag.size() && diag[i] < e) {
                i64 piv = pow_i64(p, diag[i]);
                if (rhs[i] % piv != 0) return std::nullopt;
                y[i] = rhs[i] / piv;
            } else {
                if (mod_pos(rhs[i], pe) != 0) return std::nullopt;
            }
        }
        std::vector<i64> x(cols, 0);
        for (std::size_t j = 0; j < cols; ++j) {
            i64 acc = 0;
            for (std::size_t i = 0; i < cols; ++i) acc = mod_pos(acc + v[j][i] * y[i], pe);
            x[j] = acc;
        }
        return x;
    }

    // generators of {y : D y == 0}, pushed back through V
    std::vector<std::vector<i64>> kernel() const {
        const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
        std::vector<std::vector<i64>> gens;
        auto push_through = [&](std::size_t idx, i64 coeff) {
            std::vector<i64> x(cols, 0);
            for (std::size_t j = 0; j < cols; ++j) x[j] = mod_pos(v[j][idx] * coeff, pe);
            gens.push_back(std::move(x));
        };
        for (std::size_t j = 0; j < cols; ++j) {
            int vj = (j < diag.size()) ? diag[j] : e;
            if (vj >= e)
                push_through(j, 1);  // free column
            else if (vj > 0)
                push_through(j, pow_i64(p, e - vj));
        }
        return gens;
    }
};

}  // namespace

std::optional<std::vector<i64>> solve_congruences(const CongruenceSystem& sys) {
    const std::size_t cols = sys.cols();
    if (sys.rows() == 0 || cols == 0) {
        // no unknowns: solvable iff every congruence already holds
        for (std::size_t i = 0; i < sys.rows(); ++i)
            if (mod_pos(sys.b[i], sys.row_mod[i]) != 0) return std::nullopt;
        return std::vector<i64>(cols, 0);
    }
    i64 big = 1;
    for (i64 mkr : sys.row_mod) big = std::lcm(big, mkr);
    auto primes = factorize(big);
    std::vector<i64> x(cols, 0);
    i64 combined = 1;
    for (auto [p, e] : primes) {
        LocalDiag ld(p, e, sys.a, &sys.b, sys.row_mod);
        auto xp = ld.solve();
        if (!xp) return std::nullopt;
        // CRT-combine with the solution accumulated so far
        i64 pe = ld.pe;
        if (combined == 1) {
            x = *xp;
            combined = pe;
        } else {
            i64 minv = inv_mod(combined % pe, pe);
            for (std::size_t j = 0; j < cols; ++j) {
                i64 t = mod_pos(((*xp)[j] - x[j]) % pe * minv, pe);
                x[j] = x[j] + combined * t;
            }
            combined *= pe;
        }
    }
    // verify, to guard the whole pipeline
    for (std::size_t i = 0; i < sys.rows(); ++i) {
        i64 acc = 0;
        for (std::size_t j = 0; j < cols; ++j)
            acc = mod_pos(acc + mod_pos(sys.a[i][j], sys.row_mod[i]) * mod_pos(x[j], sys.row_mod[i]),
                          sys.row_mod[i]);
        if (acc != mod_pos(sys.b[i], sys.row_mod[i]))
            throw internal_check_error("congruence solver produced a non-solution");
    }
    return x;
}

std::vector<std::vector<i64>> kernel_generators(const CongruenceSystem& sys) {
    const std::size_t cols = sys.cols();
    std::vector<std::vector<i64>> gens;
    if (cols == 0) return gens;
    i64 big = 1;
    for (i64 mkr : sys.row_mod) big = std::lcm(big, mkr);
    auto primes = factorize(big);
    if (primes.empty()) {
        // all congruences are mod 1: everything is a solution
        for (std::size_t j = 0; j < cols; ++j) {
            std::vector<i64> g(cols, 0);
            g[j] = 1;
            gens.push_back(std::move(g));
        }
        return gens;
    }
    for (auto [p, e] : primes) {
        LocalDiag ld(p, e, sys.a, nullptr, sys.row_mod);
        i64 pe = ld.pe;
        i64 rest = big / pe;
        // lift each p-local generator to a global one that vanishes at the
        // other primes: multiply by rest * (rest^{-1} mod p^e)
        i64 lift = (rest == 1) ? 1 : rest * inv_mod(rest % pe, pe);
        for (auto& g : ld.kernel()) {
            for (auto& c : g) c *= lift;
            gens.push_back(std::move(g));
        }
        // p^e * unit vectors are solutions of the p-part for free; combined
        // with lifts at other primes they are covered by those lifts already.
    }
    return gens;
}

void FactoredSize::mul(i64 n) {
    for (auto [p, e] : factorize(n)) exps_[p] += e;
}

FactoredSize& FactoredSize::operator*=(const FactoredSize& o) {
    for (auto [p, e] : o.exps_) exps_[p] += e;
    return *this;
}

FactoredSize& FactoredSize::operator/=(const FactoredSize& o) {
    for (auto [p, e] : o.exps_) {
        exps_[p] -= e;
        if (exps_[p] < 0) throw internal_check_error("inexact division of group sizes");
        if (exps_[p] == 0) exps_.erase(p);
    }
    return *this;
}

std::uint64_t FactoredSize::value() const {
    std::uint64_t r = 1;
    for (auto [p, e] : exps_)
        for (int i = 0; i < e; ++i) {
            if (r > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(p))
                throw budget_error("group size overflows 64 bits");
            r *= static_cast<std::uint64_t>(p);
        }
    return r;
}

FactoredSize image_size(const std::vector<std::vector<i64>>& a, const std::vector<i64>& row_mod) {
    FactoredSize codomain = FactoredSize::one();
    for (i64 mkr : row_mod) codomain.mul(mkr);
    if (a.empty() || a[0].empty()) {
        return FactoredSize::one();
    }
    // |image| = |codomain| / |coker|, coker of [A | diag(row_mod)] over Z
    std::vector<std::vector<i64>> ext(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        ext[i] = a[i];
        for (std::size_t k = 0; k < row_mod.size(); ++k)
            ext[i].push_back(i == k ? row_mod[k] : 0);
    }
    i64 big = 1;
    for (i64 mkr : row_mod) big = std::lcm(big, mkr);
    FactoredSize coker = FactoredSize::one();
    std::vector<i64> unit_mods(row_mod.size(), big);
    for (auto [p, e] : factorize(big)) {
        LocalDiag ld(p, e, ext, nullptr, unit_mods);
        for (int v : ld.diag) coker.mul_prime_power(p, v);
        // rows beyond the diagonal contribute a full p^e each
        if (ext.size() > ld.diag.size())
            coker.mul_prime_power(p, static_cast<int>(ext.size() - ld.diag.size()) * e);
    }
    FactoredSize img = codomain;
    img /= coker;
    return img;
}

}  // namespace xmodkit
