#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "xmodkit/common.hpp"
#include "xmodkit/group.hpp"

namespace xmodkit {

// A finite left Q-module: abelian coefficient group A with a Q-action given
// by one automorphism table per element of Q.
class GModule {
public:
    GModule(GroupPtr q, GroupPtr a, std::vector<std::vector<int>> action,
            const Budget& budget = {});

    const GroupPtr& q() const { return q_; }
    const GroupPtr& a() const { return a_; }
    const AbelianDecomposition& decomposition() const { return dec_; }
    int act(int u, int x) const { return action_[u][x]; }
    const std::vector<std::vector<int>>& action() const { return action_; }
    bool compatible_with(const GModule& o) const;

private:
    GroupPtr q_, a_;
    std::vector<std::vector<int>> action_;
    AbelianDecomposition dec_;
};

using GModulePtr = std::shared_ptr<const GModule>;

// Normalized n-cochain Q^n -> A, n in {0,1,2,3}. Values on tuples containing
// the identity are 0 and are not stored: the dense table covers tuples of
// non-identity arguments only, ranked in mixed radix base |Q|-1.
class Cochain {
public:
    Cochain(GModulePtr module, int degree);  // zero cochain

    int degree() const { return degree_; }
    const GModulePtr& module() const { return module_; }
    const std::vector<int>& values() const { return values_; }

    int eval(const std::vector<int>& tuple) const;
    void set(const std::vector<int>& tuple, int a_value);
    void set_rank(std::size_t rank, int a_value) { values_[rank] = a_value; }

    bool is_zero() const;
    bool operator==(const Cochain& o) const;

    std::size_t entries() const { return values_.size(); }
    std::vector<int> tuple_of_rank(std::size_t rank) const;
    std::size_t rank_of_tuple(const std::vector<int>& tuple) const;

    friend Cochain add(const Cochain& x, const Cochain& y);
    friend Cochain sub(const Cochain& x, const Cochain& y);
    friend Cochain neg(const Cochain& x);

private:
    GModulePtr module_;
    int degree_;
    std::vector<int> values_;
};

Cochain add(const Cochain& x, const Cochain& y);
Cochain sub(const Cochain& x, const Cochain& y);
Cochain neg(const Cochain& x);

// Bar-resolution coboundary for the convention fixed by the factor-set
// identity: (del f)(u,v,t) = u.f(v,t) - f(uv,t) + f(u,vt) - f(u,v).
// Input degree must be <= 2.
Cochain coboundary(const Cochain& c);

// del c == 0; degree 3 is checked pointwise without materializing degree 4.
bool is_cocycle(const Cochain& c);

// Pullback along psi: Q -> Pi of a cochain over Pi; the result lives over the
// psi-pulled-back module (same A, action u.a = act(psi(u), a)).
GModulePtr pullback_module(const GModulePtr& m, const GroupHom& psi);
Cochain pullback(const Cochain& c, const GroupHom& psi, const GModulePtr& pulled);

// Some g with del g == target, or nullopt. Main path: exact congruence linear
// algebra over the cyclic moduli of A.
std::optional<Cochain> solve_coboundary(const Cochain& target);
// Independent oracle backend: plain enumeration of the candidate cochain
// space (requires |A|^entries <= budget).
std::optional<Cochain> solve_coboundary_exhaustive(const Cochain& target, const Budget& budget = {});

// |H^n| for n in {2,3}, by linear algebra over the moduli of A.
std::uint64_t h_order(const GModulePtr& module, int n);
// Same number by enumerating all cocycles and all coboundaries.
std::uint64_t h_order_exhaustive(const GModulePtr& module, int n, const Budget& budget = {});

// One 2-cocycle per H^2 class, zero cochain first; pairwise non-cohomologous
// and complete (verified against h_order).
std::vector<Cochain> h2_representatives(const GModulePtr& module, const Budget& budget = {});

// All cochains of the given degree, enumerated; throws budget_error if the
// space exceeds the budget.
std::vector<Cochain> enumerate_cochains(const GModulePtr& module, int degree,
                                        const Budget& budget = {});

}  // namespace xmodkit
