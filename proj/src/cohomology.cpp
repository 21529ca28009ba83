#include "xmodkit/cohomology.hpp"

#include <algorithm>

#include "xmodkit/congruence.hpp"

namespace xmodkit {

GModule::GModule(GroupPtr q, GroupPtr a, std::vector<std::vector<int>> action,
                 const Budget& budget)
    : q_(std::move(q)), a_(std::move(a)), action_(std::move(action)) {
    if (!a_->is_abelian()) throw input_error("module coefficients must be abelian");
    if (static_cast<int>(action_.size()) != q_->order())
        throw input_error("module action must list one automorphism per element of Q");
    for (int u = 0; u < q_->order(); ++u) {
        const auto& t = action_[u];
        if (static_cast<int>(t.size()) != a_->order())
            throw input_error("module action table has wrong size at u=" + std::to_string(u));
        std::vector<char> seen(a_->order(), 0);
        for (int x = 0; x < a_->order(); ++x) {
            if (t[x] < 0 || t[x] >= a_->order() || seen[t[x]])
                throw input_error("module action is not a bijection at u=" + std::to_string(u));
            seen[t[x]] = 1;
        }
        for (int x = 0; x < a_->order(); ++x)
            for (int y = 0; y < a_->order(); ++y)
                if (t[a_->op(x, y)] != a_->op(t[x], t[y]))
                    throw input_error("module action is not additive at u=" + std::to_string(u));
    }
    for (int u = 0; u < q_->order(); ++u)
        for (int v = 0; v < q_->order(); ++v)
            for (int x = 0; x < a_->order(); ++x)
                if (action_[q_->op(u, v)][x] != action_[u][action_[v][x]])
                    throw input_error("module action is not a homomorphism Q -> Aut A at (" +
                                      std::to_string(u) + "," + std::to_string(v) + ")");
    dec_ = abelian_decompose(a_, budget);
}

bool GModule::compatible_with(const GModule& o) const {
    return q_->same_table(*o.q_) && a_->same_table(*o.a_) && action_ == o.action_;
}

Cochain::Cochain(GModulePtr module, int degree) : module_(std::move(module)), degree_(degree) {
    if (degree < 0 || degree > 3) throw input_error("cochain degree must be in {0,1,2,3}");
    std::size_t nz = static_cast<std::size_t>(std::max(module_->q()->order() - 1, 0));
    std::size_t count = 1;
    for (int i = 0; i < degree; ++i) count *= nz;
    values_.assign(count, FiniteGroup::identity);
}

std::size_t Cochain::rank_of_tuple(const std::vector<int>& tuple) const {
    const std::size_t nz = static_cast<std::size_t>(module_->q()->order() - 1);
    std::size_t rank = 0;
    for (int u : tuple) rank = rank * nz + static_cast<std::size_t>(u - 1);
    return rank;
}

std::vector<int> Cochain::tuple_of_rank(std::size_t rank) const {
    const std::size_t nz = static_cast<std::size_t>(module_->q()->order() - 1);
    std::vector<int> tuple(static_cast<std::size_t>(degree_));
    for (int i = degree_ - 1; i >= 0; --i) {
        tuple[static_cast<std::size_t>(i)] = static_cast<int>(rank % nz) + 1;
        rank /= nz;
    }
    return tuple;
}

int Cochain::eval(const std::vector<int>& tuple) const {
    for (int u : tuple)
        if (u == FiniteGroup::identity) return FiniteGroup::identity;
    return values_[rank_of_tuple(tuple)];
}

void Cochain::set(const std::vector<int>& tuple, int a_value) {
    for (int u : tuple)
        if (u == FiniteGroup::identity) {
            if (a_value != FiniteGroup::identity)
                throw input_error("normalized cochain cannot be nonzero on identity tuples");
            return;
        }
    values_[rank_of_tuple(tuple)] = a_value;
}

bool Cochain::is_zero() const {
    return std::all_of(values_.begin(), values_.end(),
                       [](int v) { return v == FiniteGroup::identity; });
}

bool Cochain::operator==(const Cochain& o) const {
    return degree_ == o.degree_ && module_->compatible_with(*o.module_) && values_ == o.values_;
}

namespace {

void require_same_module(const Cochain& x, const Cochain& y) {
    if (x.degree() != y.degree() || !x.module()->compatible_with(*y.module()))
        throw input_error("cochain operands live over different modules or degrees");
}

}  // namespace

Cochain add(const Cochain& x, const Cochain& y) {
    require_same_module(x, y);
    Cochain out = x;
    const auto& a = *x.module()->a();
    for (std::size_t r = 0; r < out.values_.size(); ++r)
        out.values_[r] = a.op(x.values_[r], y.values_[r]);
    return out;
}

Cochain sub(const Cochain& x, const Cochain& y) {
    require_same_module(x, y);
    Cochain out = x;
    const auto& a = *x.module()->a();
    for (std::size_t r = 0; r < out.values_.size(); ++r)
        out.values_[r] = a.op(x.values_[r], a.inv(y.values_[r]));
    return out;
}

Cochain neg(const Cochain& x) {
    Cochain out = x;
    const auto& a = *x.module()->a();
    for (auto& v : out.values_) v = a.inv(v);
    return out;
}

namespace {

// (del c) evaluated at one output tuple, for any input degree 0..3
int coboundary_at(const Cochain& c, const std::vector<int>& t) {
    const auto& mod = *c.module();
    const auto& q = *mod.q();
    const auto& a = *mod.a();
    auto actd = [&](int u, int x) { return mod.act(u, x); };
    switch (c.degree()) {
        case 0: {
            int v = c.values()[0];
            return a.op(actd(t[0], v), a.inv(v));
        }
        case 1: {
            int r = actd(t[0], c.eval({t[1]}));
            r = a.op(r, a.inv(c.eval({q.op(t[0], t[1])})));
            r = a.op(r, c.eval({t[0]}));
            return r;
        }
        case 2: {
            int r = actd(t[0], c.eval({t[1], t[2]}));
            r = a.op(r, a.inv(c.eval({q.op(t[0], t[1]), t[2]})));
            r = a.op(r, c.eval({t[0], q.op(t[1], t[2])}));
            r = a.op(r, a.inv(c.eval({t[0], t[1]})));
            return r;
        }
        case 3: {
            int r = actd(t[0], c.eval({t[1], t[2], t[3]}));
            r = a.op(r, a.inv(c.eval({q.op(t[0], t[1]), t[2], t[3]})));
            r = a.op(r, c.eval({t[0], q.op(t[1], t[2]), t[3]}));
            r = a.op(r, a.inv(c.eval({t[0], t[1], q.op(t[2], t[3])})));
            r = a.op(r, c.eval({t[0], t[1], t[2]}));
            return r;
        }
        default:
            throw internal_check_error("bad cochain degree");
    }
}

}  // namespace

Cochain coboundary(const Cochain& c) {
    if (c.degree() > 2) throw input_error("coboundary is materialized only for degrees 0..2");
    Cochain out(c.module(), c.degree() + 1);
    for (std::size_t r = 0; r < out.entries(); ++r)
        out.set_rank(r, coboundary_at(c, out.tuple_of_rank(r)));
    return out;
}

bool is_cocycle(const Cochain& c) {
    if (c.degree() <= 2) return coboundary(c).is_zero();
    // degree 3: scan the degree-4 coboundary pointwise (normalized cochains
    // vanish automatically on identity-containing tuples)
    const int n = c.module()->q()->order();
    std::vector<int> t(4);
    for (t[0] = 1; t[0] < n; ++t[0])
        for (t[1] = 1; t[1] < n; ++t[1])
            for (t[2] = 1; t[2] < n; ++t[2])
                for (t[3] = 1; t[3] < n; ++t[3])
                    if (coboundary_at(c, t) != FiniteGroup::identity) return false;
    return true;
}

GModulePtr pullback_module(const GModulePtr& m, const GroupHom& psi) {
    if (!psi.target()->same_table(*m->q()))
        throw input_error("pullback homomorphism does not land in the module's group");
    std::vector<std::vector<int>> action(psi.source()->order());
    for (int u = 0; u < psi.source()->order(); ++u) action[u] = m->action()[psi(u)];
    return std::make_shared<GModule>(psi.source(), m->a(), std::move(action));
}

Cochain pullback(const Cochain& c, const GroupHom& psi, const GModulePtr& pulled) {
    if (!pulled->a()->same_table(*c.module()->a()))
        throw input_error("pullback target module has different coefficients");
    Cochain out(pulled, c.degree());
    for (std::size_t r = 0; r < out.entries(); ++r) {
        auto t = out.tuple_of_rank(r);
        for (auto& u : t) u = psi(u);
        out.set_rank(r, c.eval(t));
    }
    return out;
}

namespace {

// Build the linear system  del g == target  over the coordinates of A.
// Unknown block j*k + c is coordinate c of g at tuple rank j.
CongruenceSystem coboundary_system(const GModulePtr& mod, int g_degree, const Cochain& target) {
    const auto& dec = mod->decomposition();
    const auto& a = *mod->a();
    const int k = static_cast<int>(dec.moduli.size());
    Cochain probe(mod, g_degree);
    const std::size_t unknowns = probe.entries();
    Cochain out_shape(mod, g_degree + 1);
    const std::size_t eqs = out_shape.entries();

    CongruenceSystem sys;
    sys.a.assign(eqs * static_cast<std::size_t>(k),
                 std::vector<std::int64_t>(unknowns * static_cast<std::size_t>(k), 0));
    sys.b.assign(eqs * static_cast<std::size_t>(k), 0);
    sys.row_mod.assign(eqs * static_cast<std::size_t>(k), 1);

    const auto& q = *mod->q();
    for (std::size_t e = 0; e < eqs; ++e) {
        auto t = out_shape.tuple_of_rank(e);
        // term list: (tuple of g, +/-, acting element or -1 for untwisted)
        struct Term {
            std::vector<int> tup;
            int sign;
            int actor;
        };
        std::vector<Term> terms;
        if (g_degree == 0) {
            terms = {{{}, +1, t[0]}, {{}, -1, -1}};
        } else if (g_degree == 1) {
            terms = {{{t[1]}, +1, t[0]},
                     {{q.op(t[0], t[1])}, -1, -1},
                     {{t[0]}, +1, -1}};
        } else if (g_degree == 2) {
            terms = {{{t[1], t[2]}, +1, t[0]},
                     {{q.op(t[0], t[1]), t[2]}, -1, -1},
                     {{t[0], q.op(t[1], t[2])}, +1, -1},
                     {{t[0], t[1]}, -1, -1}};
        } else {
            throw internal_check_error("coboundary systems are built for degrees 0..2 only");
        }
        for (const auto& term : terms) {
            bool normalized_away = std::any_of(term.tup.begin(), term.tup.end(),
                                               [](int u) { return u == 0; });
            if (normalized_away) continue;
            std::size_t col_block = probe.rank_of_tuple(term.tup) * static_cast<std::size_t>(k);
            // coordinate matrix of the acting automorphism (identity if none)
            for (int cc = 0; cc < k; ++cc) {
                // image of generator cc of A under the action
                std::vector<int> gen(static_cast<std::size_t>(k), 0);
                gen[static_cast<std::size_t>(cc)] = 1;
                int elem = dec.element(gen);
                int img = term.actor >= 0 ? mod->act(term.actor, elem) : elem;
                const auto& coords = dec.coords[img];
                for (int rr = 0; rr < k; ++rr)
                    sys.a[e * k + rr][col_block + static_cast<std::size_t>(cc)] +=
                        term.sign * coords[static_cast<std::size_t>(rr)];
            }
        }
        const auto& tc = dec.coords[target.eval(t)];
        for (int rr = 0; rr < k; ++rr) {
            sys.b[e * k + rr] = tc[static_cast<std::size_t>(rr)];
            sys.row_mod[e * k + rr] = dec.moduli[static_cast<std::size_t>(rr)];
        }
    }
    // A trick for k == 0 (trivial A): no coordinates, no equations needed.
    return sys;
}

Cochain cochain_from_solution(const GModulePtr& mod, int degree,
                              const std::vector<std::int64_t>& x) {
    const auto& dec = mod->decomposition();
    const int k = static_cast<int>(dec.moduli.size());
    Cochain g(mod, degree);
    for (std::size_t j = 0; j < g.entries(); ++j) {
        std::vector<int> coords(static_cast<std::size_t>(k));
        for (int cc = 0; cc < k; ++cc) {
            std::int64_t m = dec.moduli[static_cast<std::size_t>(cc)];
            std::int64_t v = x[j * static_cast<std::size_t>(k) + static_cast<std::size_t>(cc)] % m;
            if (v < 0) v += m;
            coords[static_cast<std::size_t>(cc)] = static_cast<int>(v);
        }
        g.set_rank(j, dec.element(coords));
    }
    return g;
}

// matrix of del_n : C^n -> C^{n+1} (same assembly, no right-hand side)
CongruenceSystem coboundary_matrix(const GModulePtr& mod, int n) {
    Cochain zero_target(mod, n + 1);
    return coboundary_system(mod, n, zero_target);
}

}  // namespace

std::optional<Cochain> solve_coboundary(const Cochain& target) {
    if (target.degree() < 1) throw input_error("solve_coboundary needs target degree >= 1");
    const auto& mod = target.module();
    if (mod->a()->order() == 1) {
        return target.is_zero() ? std::optional<Cochain>(Cochain(mod, target.degree() - 1))
                                : std::nullopt;
    }
    auto sys = coboundary_system(mod, target.degree() - 1, target);
    auto x = solve_congruences(sys);
    if (!x) return std::nullopt;
    Cochain g = cochain_from_solution(mod, target.degree() - 1, *x);
    if (!(coboundary(g) == target))
        throw internal_check_error("solve_coboundary produced a non-solution");
    return g;
}

std::vector<Cochain> enumerate_cochains(const GModulePtr& module, int degree,
                                        const Budget& budget) {
    Cochain probe(module, degree);
    const std::uint64_t an = static_cast<std::uint64_t>(module->a()->order());
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < probe.entries(); ++i) {
        if (total > budget.max_enumeration / std::max<std::uint64_t>(an, 1))
            throw budget_error("cochain space exceeds enumeration budget");
        total *= an;
    }
    std::vector<Cochain> out;
    out.reserve(static_cast<std::size_t>(total));
    Cochain cur(module, degree);
    std::vector<int> digits(probe.entries(), 0);
    while (true) {
        out.push_back(cur);
        std::size_t pos = 0;
        while (pos < digits.size()) {
            if (++digits[pos] < static_cast<int>(an)) break;
            digits[pos] = 0;
            ++pos;
        }
        if (pos == digits.size()) break;
        for (std::size_t j = 0; j < digits.size(); ++j) cur.set_rank(j, digits[j]);
        if (digits.empty()) break;
    }
    return out;
}

std::optional<Cochain> solve_coboundary_exhaustive(const Cochain& target, const Budget& budget) {
    for (const auto& g : enumerate_cochains(target.module(), target.degree() - 1, budget))
        if (coboundary(g) == target) return g;
    return std::nullopt;
}

std::uint64_t h_order(const GModulePtr& module, int n) {
    if (n != 2 && n != 3) throw input_error("h_order supports degrees 2 and 3 only");
    const auto& dec = module->decomposition();
    if (module->a()->order() == 1) return 1;
    // |H^n| = |Z^n| / |B^n|;  |Z^n| = |C^n| / |im del_n|,  |B^n| = |im del_{n-1}|
    FactoredSize cn = FactoredSize::one();
    {
        Cochain probe(module, n);
        for (std::size_t j = 0; j < probe.entries(); ++j)
            for (int m : dec.moduli) cn.mul(m);
    }
    auto upper = coboundary_matrix(module, n);  // builds del_n only for n <= 2
    FactoredSize im_up = image_size(upper.a, upper.row_mod);
    auto lower = coboundary_matrix(module, n - 1);
    FactoredSize im_down = image_size(lower.a, lower.row_mod);
    FactoredSize h = cn;
    h /= im_up;
    h /= im_down;
    return h.value();
}

std::uint64_t h_order_exhaustive(const GModulePtr& module, int n, const Budget& budget) {
    std::uint64_t cocycles = 0;
    for (const auto& c : enumerate_cochains(module, n, budget))
        if (is_cocycle(c)) ++cocycles;
    std::vector<std::vector<int>> seen;
    for (const auto& c : enumerate_cochains(module, n - 1, budget)) {
        auto d = coboundary(c);
        seen.push_back(d.values());
    }
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    if (cocycles % seen.size() != 0)
        throw internal_check_error("cocycle count not divisible by coboundary count");
    return cocycles / seen.size();
}

namespace {

// h_order for degree 3 needs the degree-3 -> 4 coboundary matrix, which the
// materialized Cochain type cannot hold; assemble it directly.
CongruenceSystem degree3_coboundary_matrix(const GModulePtr& mod) {
    const auto& dec = mod->decomposition();
    const auto& q = *mod->q();
    const int k = static_cast<int>(dec.moduli.size());
    const int n = q.order();
    Cochain probe(mod, 3);
    const std::size_t unknowns = probe.entries();
    std::size_t nz = static_cast<std::size_t>(n - 1);
    const std::size_t eqs = nz * nz * nz * nz;

    CongruenceSystem sys;
    sys.a.assign(eqs * static_cast<std::size_t>(k),
                 std::vector<std::int64_t>(unknowns * static_cast<std::size_t>(k), 0));
    sys.b.assign(eqs * static_cast<std::size_t>(k), 0);
    sys.row_mod.assign(eqs * static_cast<std::size_t>(k), 1);

    std::size_t e = 0;
    std::vector<int> t(4);
    for (t[0] = 1; t[0] < n; ++t[0])
        for (t[1] = 1; t[1] < n; ++t[1])
            for (t[2] = 1; t[2] < n; ++t[2])
                for (t[3] = 1; t[3] < n; ++t[3], ++e) {
                    struct Term {
                        std::vector<int> tup;
                        int sign;
                        int actor;
                    };
                    std::vector<Term> terms = {
                        {{t[1], t[2], t[3]}, +1, t[0]},
                        {{q.op(t[0], t[1]), t[2], t[3]}, -1, -1},
                        {{t[0], q.op(t[1], t[2]), t[3]}, +1, -1},
                        {{t[0], t[1], q.op(t[2], t[3])}, -1, -1},
                        {{t[0], t[1], t[2]}, +1, -1}};
                    for (const auto& term : terms) {
                        if (std::any_of(term.tup.begin(), term.tup.end(),
                                        [](int u) { return u == 0; }))
                            continue;
                        std::size_t col_block =
                            probe.rank_of_tuple(term.tup) * static_cast<std::size_t>(k);
                        for (int cc = 0; cc < k; ++cc) {
                            std::vector<int> gen(static_cast<std::size_t>(k), 0);
                            gen[static_cast<std::size_t>(cc)] = 1;
                            int elem = dec.element(gen);
                            int img = term.actor >= 0 ? mod->act(term.actor, elem) : elem;
                            const auto& coords = dec.coords[img];
                            for (int rr = 0; rr < k; ++rr)
                                sys.a[e * k + rr][col_block + static_cast<std::size_t>(cc)] +=
                                    term.sign * coords[static_cast<std::size_t>(rr)];
                        }
                    }
                    for (int rr = 0; rr < k; ++rr)
                        sys.row_mod[e * k + rr] = dec.moduli[static_cast<std::size_t>(rr)];
                }
    return sys;
}

}  // namespace

std::vector<Cochain> h2_representatives(const GModulePtr& module, const Budget& budget) {
    std::vector<Cochain> reps;
    reps.emplace_back(module, 2);
    if (module->a()->order() == 1) return reps;
    const std::uint64_t target = h_order(module, 2);
    if (target == 1) return reps;

    // generators of Z^2 from the kernel of del_2
    auto upper = coboundary_matrix(module, 2);
    auto gens_raw = kernel_generators(upper);
    std::vector<Cochain> gens;
    for (const auto& x : gens_raw) {
        Cochain g = cochain_from_solution(module, 2, x);
        if (!is_cocycle(g)) throw internal_check_error("kernel generator is not a cocycle");
        if (!g.is_zero()) gens.push_back(std::move(g));
    }

    auto cohomologous = [&](const Cochain& x, const Cochain& y) {
        return solve_coboundary(sub(x, y)).has_value();
    };
    // breadth-first walk of H^2 as a quotient: add generators to known class
    // representatives until all classes are found
    std::size_t scanned = 0;
    std::uint64_t steps = 0;
    while (reps.size() < target && scanned < reps.size()) {
        Cochain base = reps[scanned++];
        for (const auto& g : gens) {
            if (++steps > budget.max_enumeration)
                throw budget_error("H^2 class walk exceeded budget");
            Cochain cand = add(base, g);
            bool known = false;
            for (const auto& r : reps)
                if (cohomologous(cand, r)) {
                    known = true;
                    break;
                }
            if (!known) reps.push_back(std::move(cand));
            if (reps.size() == target) break;
        }
    }
    if (reps.size() != target)
        throw internal_check_error("H^2 walk found " + std::to_string(reps.size()) +
                                   " classes, expected " + std::to_string(target));
    return reps;
}

// h_order for n == 3 needs the degree-4 boundary matrix; route through the
// direct assembly above.
namespace detail {
std::uint64_t h3_order_impl(const GModulePtr& module) {
    const auto& dec = module->decomposition();
    FactoredSize cn = FactoredSize::one();
    {
        Cochain probe(module, 3);
        for (std::size_t j = 0; j < probe.entries(); ++j)
            for (int m : dec.moduli) cn.mul(m);
    }
    auto upper = degree3_coboundary_matrix(module);
    FactoredSize im_up = image_size(upper.a, upper.row_mod);
    auto lower = coboundary_matrix(module, 2);
    FactoredSize im_down = image_size(lower.a, lower.row_mod);
    FactoredSize h = cn;
    h /= im_up;
    h /= im_down;
    return h.value();
}
}  // namespace detail

}  // namespace xmodkit
