#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "xmodkit/common.hpp"

namespace xmodkit {

// System of simultaneous congruences  sum_j A[i][j] * x_j == b[i]  (mod row_mod[i]),
// with integer unknowns x_j. Solved exactly by diagonalizing the p-part of
// the system over Z/p^e for every prime p dividing any row modulus.
struct CongruenceSystem {
    std::vector<std::vector<std::int64_t>> a;  // rows x cols
    std::vector<std::int64_t> b;
    std::vector<std::int64_t> row_mod;         // each >= 1

    std::size_t rows() const { return a.size(); }
    std::size_t cols() const { return a.empty() ? 0 : a[0].size(); }
};

std::optional<std::vector<std::int64_t>> solve_congruences(const CongruenceSystem& sys);

// Generators of the solution group of A x == 0 (mod row_mod), as integer
// vectors; the solutions of the inhomogeneous system are base + span(gens).
std::vector<std::vector<std::int64_t>> kernel_generators(const CongruenceSystem& sys);

// Order of a finite abelian group tracked as a product of prime powers, so
// intermediate sizes never need to fit in a machine word.
class FactoredSize {
public:
    static FactoredSize one() { return FactoredSize(); }
    void mul_prime_power(std::int64_t p, int e) { exps_[p] += e; }
    void mul(std::int64_t n);
    FactoredSize& operator*=(const FactoredSize& o);
    // division must be exact
    FactoredSize& operator/=(const FactoredSize& o);
    std::uint64_t value() const;  // throws budget_error on overflow
    bool operator==(const FactoredSize& o) const { return exps_ == o.exps_; }

private:
    std::map<std::int64_t, int> exps_;
};

// |{A x : x in Z^N} + Lambda| / |Lambda| complement: the size of the image of
// the map Z^N -> prod Z/row_mod[i] given by A.
FactoredSize image_size(const std::vector<std::vector<std::int64_t>>& a,
                        const std::vector<std::int64_t>& row_mod);

}  // namespace xmodkit
