#include "xmodkit/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace xmodkit {

std::optional<FiniteGroup::TableViolation> FiniteGroup::check_table(
    const std::vector<std::vector<int>>& table) {
    const int n = static_cast<int>(table.size());
    if (n == 0) return TableViolation{"empty table"};
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(table[i].size()) != n)
            return TableViolation{"table is not square", i};
        for (int j = 0; j < n; ++j)
            if (table[i][j] < 0 || table[i][j] >= n)
                return TableViolation{"entry out of range", i, j};
    }
    for (int i = 0; i < n; ++i) {
        if (table[0][i] != i) return TableViolation{"identity row broken (identity must be index 0)", 0, i};
        if (table[i][0] != i) return TableViolation{"identity column broken (identity must be index 0)", i, 0};
    }
    for (int i = 0; i < n; ++i) {
        bool has_inv = false;
        for (int j = 0; j < n; ++j)
            if (table[i][j] == 0 && table[j][i] == 0) has_inv = true;
        if (!has_inv) return TableViolation{"element has no two-sided inverse", i};
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]])
                    return TableViolation{"associativity fails", a, b, c};
    return std::nullopt;
}

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table, std::string label)
    : n_(static_cast<int>(table.size())), label_(std::move(label)) {
    if (auto v = check_table(table)) {
        throw input_error("invalid Cayley table (" + v->what + ") at row " +
                          std::to_string(v->row) + ", col " + std::to_string(v->col) +
                          (v->extra >= 0 ? ", third " + std::to_string(v->extra) : ""));
    }
    table_.resize(static_cast<std::size_t>(n_) * n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) table_[static_cast<std::size_t>(i) * n_ + j] = table[i][j];
    inverse_.assign(n_, 0);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (op(i, j) == identity) inverse_[i] = j;
}

int FiniteGroup::element_order(int a) const {
    int o = 1, x = a;
    while (x != identity) {
        x = op(x, a);
        ++o;
    }
    return o;
}

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < n_; ++a)
        for (int b = a + 1; b < n_; ++b)
            if (op(a, b) != op(b, a)) return false;
    return true;
}

int FiniteGroup::exponent() const {
    int e = 1;
    for (int a = 0; a < n_; ++a) e = std::lcm(e, element_order(a));
    return e;
}

bool FiniteGroup::same_table(const FiniteGroup& other) const {
    return n_ == other.n_ && table_ == other.table_;
}

std::vector<std::vector<int>> FiniteGroup::table_rows() const {
    std::vector<std::vector<int>> rows(n_, std::vector<int>(n_));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) rows[i][j] = op(i, j);
    return rows;
}

// ---- GroupHom --------------------------------------------------------------

GroupHom::GroupHom(GroupPtr source, GroupPtr target, std::vector<int> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    const int n = source_->order();
    if (static_cast<int>(images_.size()) != n)
        throw input_error("homomorphism image list has wrong length");
    for (int a = 0; a < n; ++a)
        if (images_[a] < 0 || images_[a] >= target_->order())
            throw input_error("homomorphism image out of range at element " + std::to_string(a));
    if (images_[FiniteGroup::identity] != FiniteGroup::identity)
        throw input_error("homomorphism does not preserve the identity");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (images_[source_->op(a, b)] != target_->op(images_[a], images_[b]))
                throw input_error("not a homomorphism at pair (" + std::to_string(a) + "," +
                                  std::to_string(b) + ")");
}

bool GroupHom::is_injective() const {
    std::vector<char> seen(target_->order(), 0);
    for (int v : images_) {
        if (seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

bool GroupHom::is_surjective() const {
    std::vector<char> seen(target_->order(), 0);
    for (int v : images_) seen[v] = 1;
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

GroupHom GroupHom::identity_on(GroupPtr g) {
    std::vector<int> im(g->order());
    std::iota(im.begin(), im.end(), 0);
    return GroupHom(g, g, std::move(im));
}

GroupHom GroupHom::trivial(GroupPtr source, GroupPtr target) {
    std::vector<int> im(source->order(), FiniteGroup::identity);
    return GroupHom(std::move(source), std::move(target), std::move(im));
}

GroupHom compose(const GroupHom& g, const GroupHom& f) {
    if (f.target().get() != g.source().get() && !f.target()->same_table(*g.source()))
        throw input_error("composition of homomorphisms with mismatched middle group");
    std::vector<int> im(f.source()->order());
    for (int a = 0; a < f.source()->order(); ++a) im[a] = g(f(a));
    return GroupHom(f.source(), g.target(), std::move(im));
}

// ---- Subgroup --------------------------------------------------------------

Subgroup::Subgroup(GroupPtr parent_, std::vector<int> members_)
    : parent(std::move(parent_)), members(std::move(members_)) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.empty() || members[0] != FiniteGroup::identity)
        throw input_error("subgroup must contain the identity");
    std::vector<char> in(parent->order(), 0);
    for (int m : members) {
        if (m < 0 || m >= parent->order()) throw input_error("subgroup member out of range");
        in[m] = 1;
    }
    for (int a : members) {
        if (!in[parent->inv(a)])
            throw input_error("subgroup not closed under inverse at " + std::to_string(a));
        for (int b : members)
            if (!in[parent->op(a, b)])
                throw input_error("subgroup not closed under product at (" + std::to_string(a) +
                                  "," + std::to_string(b) + ")");
    }
}

bool Subgroup::contains(int a) const {
    return std::binary_search(members.begin(), members.end(), a);
}

int AbelianDecomposition::element(const std::vector<int>& c) const {
    std::size_t rank = 0;
    for (std::size_t i = 0; i < moduli.size(); ++i)
        rank = rank * static_cast<std::size_t>(moduli[i]) + static_cast<std::size_t>(c[i]);
    return element_of_rank[rank];
}

// ---- constructions ---------------------------------------------------------

GroupPtr make_cyclic(int n) {
    if (n < 1) throw input_error("cyclic group order must be >= 1");
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
    return std::make_shared<FiniteGroup>(std::move(t), "Z/" + std::to_string(n));
}

GroupPtr direct_product(const GroupPtr& g, const GroupPtr& h) {
    const int n = g->order(), m = h->order();
    std::vector<std::vector<int>> t(static_cast<std::size_t>(n) * m,
                                    std::vector<int>(static_cast<std::size_t>(n) * m));
    for (int a1 = 0; a1 < n; ++a1)
        for (int b1 = 0; b1 < m; ++b1)
            for (int a2 = 0; a2 < n; ++a2)
                for (int b2 = 0; b2 < m; ++b2)
                    t[a1 * m + b1][a2 * m + b2] = g->op(a1, a2) * m + h->op(b1, b2);
    std::string label = g->label() + " x " + h->label();
    return std::make_shared<FiniteGroup>(std::move(t), std::move(label));
}

SubgroupAsGroup subgroup_as_group(const Subgroup& s) {
    const auto& mem = s.members;  // sorted, identity first
    const int k = static_cast<int>(mem.size());
    std::vector<int> pos(s.parent->order(), -1);
    for (int i = 0; i < k; ++i) pos[mem[i]] = i;
    std::vector<std::vector<int>> t(k, std::vector<int>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) t[i][j] = pos[s.parent->op(mem[i], mem[j])];
    SubgroupAsGroup out;
    out.group = std::make_shared<FiniteGroup>(std::move(t),
                                              s.parent->label() + "-subgroup(" + std::to_string(k) + ")");
    out.embed = mem;
    return out;
}

int SubgroupAsGroup::index_of_member(int parent_elem) const {
    auto it = std::lower_bound(embed.begin(), embed.end(), parent_elem);
    if (it == embed.end() || *it != parent_elem)
        throw internal_check_error("element not in subgroup");
    return static_cast<int>(it - embed.begin());
}

// ---- set-theoretic operations ----------------------------------------------

Subgroup kernel(const GroupHom& f) {
    std::vector<int> mem;
    for (int a = 0; a < f.source()->order(); ++a)
        if (f(a) == FiniteGroup::identity) mem.push_back(a);
    return Subgroup(f.source(), std::move(mem));
}

Subgroup image(const GroupHom& f) {
    std::set<int> mem(f.images().begin(), f.images().end());
    return Subgroup(f.target(), std::vector<int>(mem.begin(), mem.end()));
}

Subgroup center(const GroupPtr& g) {
    std::vector<int> mem;
    for (int a = 0; a < g->order(); ++a) {
        bool central = true;
        for (int b = 0; b < g->order() && central; ++b)
            if (g->op(a, b) != g->op(b, a)) central = false;
        if (central) mem.push_back(a);
    }
    return Subgroup(g, std::move(mem));
}

Subgroup trivial_subgroup(const GroupPtr& g) { return Subgroup(g, {FiniteGroup::identity}); }

Subgroup full_subgroup(const GroupPtr& g) {
    std::vector<int> mem(g->order());
    std::iota(mem.begin(), mem.end(), 0);
    return Subgroup(g, std::move(mem));
}

bool is_normal(const Subgroup& n) {
    const auto& g = *n.parent;
    for (int x = 0; x < g.order(); ++x)
        for (int m : n.members)
            if (!n.contains(g.op(g.op(x, m), g.inv(x)))) return false;
    return true;
}

Subgroup generated_subgroup(const GroupPtr& g, const std::vector<int>& gens) {
    std::vector<char> in(g->order(), 0);
    std::vector<int> frontier{FiniteGroup::identity};
    in[FiniteGroup::identity] = 1;
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int a : frontier)
            for (int s : gens) {
                for (int v : {g->op(a, s), g->op(a, g->inv(s))})
                    if (!in[v]) {
                        in[v] = 1;
                        next.push_back(v);
                    }
            }
        frontier = std::move(next);
    }
    std::vector<int> mem;
    for (int a = 0; a < g->order(); ++a)
        if (in[a]) mem.push_back(a);
    return Subgroup(g, std::move(mem));
}

std::vector<Subgroup> all_subgroups(const GroupPtr& g) {
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> work;
    seen.insert({FiniteGroup::identity});
    work.push_back({FiniteGroup::identity});
    for (std::size_t i = 0; i < work.size(); ++i) {
        std::vector<int> base = work[i];
        for (int x = 0; x < g->order(); ++x) {
            if (std::binary_search(base.begin(), base.end(), x)) continue;
            std::vector<int> gens = base;
            gens.push_back(x);
            auto sub = generated_subgroup(g, gens);
            if (seen.insert(sub.members).second) work.push_back(sub.members);
        }
    }
    std::vector<Subgroup> out;
    out.reserve(work.size());
    for (auto& mem : work) out.emplace_back(g, std::move(mem));
    std::sort(out.begin(), out.end(),
              [](const Subgroup& a, const Subgroup& b) {
                  return a.members.size() < b.members.size() ||
                         (a.members.size() == b.members.size() && a.members < b.members);
              });
    return out;
}

QuotientData quotient(const GroupPtr& g, const Subgroup& n) {
    if (n.parent.get() != g.get() && !n.parent->same_table(*g))
        throw input_error("subgroup does not belong to the given group");
    if (!is_normal(n)) throw input_error("quotient by a non-normal subgroup");
    const int order = g->order();
    std::vector<int> coset_of(order, -1);
    std::vector<std::vector<int>> cosets;
    for (int x = 0; x < order; ++x) {
        if (coset_of[x] >= 0) continue;
        std::vector<int> c;
        for (int m : n.members) c.push_back(g->op(x, m));
        std::sort(c.begin(), c.end());
        for (int y : c) coset_of[y] = static_cast<int>(cosets.size());
        cosets.push_back(std::move(c));
    }
    // order cosets by smallest member; identity coset comes first
    std::vector<int> order_idx(cosets.size());
    std::iota(order_idx.begin(), order_idx.end(), 0);
    std::sort(order_idx.begin(), order_idx.end(),
              [&](int a, int b) { return cosets[a][0] < cosets[b][0]; });
    std::vector<int> remap(cosets.size());
    for (std::size_t i = 0; i < order_idx.size(); ++i) remap[order_idx[i]] = static_cast<int>(i);
    for (int& c : coset_of) c = remap[c];
    std::vector<std::vector<int>> sorted_cosets(cosets.size());
    for (std::size_t i = 0; i < cosets.size(); ++i) sorted_cosets[remap[i]] = std::move(cosets[i]);

    const int m = static_cast<int>(sorted_cosets.size());
    std::vector<std::vector<int>> qt(m, std::vector<int>(m));
    for (int s = 0; s < m; ++s)
        for (int r = 0; r < m; ++r)
            qt[s][r] = coset_of[g->op(sorted_cosets[s][0], sorted_cosets[r][0])];
    auto qg = std::make_shared<FiniteGroup>(std::move(qt), g->label() + "/N");
    std::vector<int> section(m);
    for (int s = 0; s < m; ++s) section[s] = sorted_cosets[s][0];
    GroupHom proj(g, qg, coset_of);
    QuotientData out{qg, std::move(section), std::move(proj), std::move(sorted_cosets)};
    return out;
}

// ---- exhaustive searches -----------------------------------------------------

std::vector<int> generating_set(const FiniteGroup& g) {
    std::vector<int> gens;
    GroupPtr self = std::make_shared<FiniteGroup>(g.table_rows());
    std::vector<char> covered(g.order(), 0);
    covered[0] = 1;
    int covered_count = 1;
    while (covered_count < g.order()) {
        int pick = -1;
        for (int x = 0; x < g.order(); ++x)
            if (!covered[x]) {
                pick = x;
                break;
            }
        gens.push_back(pick);
        auto sub = generated_subgroup(self, gens);
        covered.assign(g.order(), 0);
        covered_count = 0;
        for (int mkr : sub.members) covered[mkr] = 1;
        covered_count = static_cast<int>(sub.members.size());
    }
    return gens;
}

namespace {

// Backtracking over images of a generating set of `g`. Each complete,
// consistent assignment yields a homomorphism; `want_bijective` prunes to
// isomorphisms. Calls sink(images); sink returns false to stop the search.
template <typename Sink>
void search_homs(const FiniteGroup& g, const FiniteGroup& h, bool want_bijective, Sink&& sink) {
    const int n = g.order();
    std::vector<int> gens = generating_set(g);
    if (gens.empty()) {
        std::vector<int> im(n, 0);
        sink(im);
        return;
    }
    // express every element as (previous element, generator applied)
    std::vector<std::pair<int, int>> word(n, {-1, -1});
    {
        std::vector<int> frontier{0};
        std::vector<char> seen(n, 0);
        seen[0] = 1;
        while (!frontier.empty()) {
            std::vector<int> next;
            for (int a : frontier)
                for (std::size_t k = 0; k < gens.size(); ++k) {
                    int v = g.op(a, gens[k]);
                    if (!seen[v]) {
                        seen[v] = 1;
                        word[v] = {a, static_cast<int>(k)};
                        next.push_back(v);
                    }
                }
            frontier = std::move(next);
        }
    }
    std::vector<int> choice(gens.size(), -1);
    std::vector<int> img(n, -1);

    auto rebuild = [&](std::size_t depth) -> bool {
        // propagate images along the word tree; verify hom property on the
        // subgroup generated so far
        std::fill(img.begin(), img.end(), -1);
        img[0] = 0;
        std::vector<int> known{0};
        bool grew = true;
        while (grew) {
            grew = false;
            for (int a = 0; a < n; ++a) {
                if (img[a] >= 0) continue;
                auto [prev, k] = word[a];
                if (prev < 0 || img[prev] < 0) continue;
                if (static_cast<std::size_t>(k) >= depth) continue;
                img[a] = h.op(img[prev], choice[static_cast<std::size_t>(k)]);
                grew = true;
            }
        }
        for (int a = 0; a < n; ++a) {
            if (img[a] < 0) continue;
            for (int b = 0; b < n; ++b) {
                if (img[b] < 0) continue;
                int ab = g.op(a, b);
                if (img[ab] >= 0 && img[ab] != h.op(img[a], img[b])) return false;
            }
        }
        return true;
    };

    bool stopped = false;
    auto dfs = [&](auto&& self, std::size_t depth) -> void {
        if (stopped) return;
        if (depth == gens.size()) {
            if (std::any_of(img.begin(), img.end(), [](int v) { return v < 0; })) return;
            if (want_bijective) {
                std::vector<char> seen(h.order(), 0);
                for (int v : img) {
                    if (seen[v]) return;
                    seen[v] = 1;
                }
                if (h.order() != n) return;
            }
            if (!sink(img)) stopped = true;
            return;
        }
        const int go = g.element_order(gens[depth]);
        for (int cand = 0; cand < h.order() && !stopped; ++cand) {
            const int ho = h.element_order(cand);
            if (want_bijective ? (ho != go) : (go % ho != 0)) continue;
            choice[depth] = cand;
            if (rebuild(depth + 1)) self(self, depth + 1);
        }
        choice[depth] = -1;
    };
    dfs(dfs, 0);
}

}  // namespace

std::vector<GroupHom> automorphism_group(const GroupPtr& g, const Budget& budget) {
    if (g->order() > budget.max_aut_order)
        throw budget_error("automorphism search bound exceeded (order " +
                           std::to_string(g->order()) + " > " +
                           std::to_string(budget.max_aut_order) + ")");
    std::vector<GroupHom> out;
    search_homs(*g, *g, true, [&](const std::vector<int>& im) {
        out.emplace_back(g, g, im);
        return true;
    });
    return out;
}

std::optional<GroupHom> is_isomorphic(const GroupPtr& g, const GroupPtr& h, const Budget& budget) {
    if (g->order() > budget.max_group_order || h->order() > budget.max_group_order)
        throw budget_error("isomorphism search bound exceeded");
    if (g->order() != h->order()) return std::nullopt;
    // quick invariant: multiset of element orders
    std::vector<int> og, oh;
    for (int a = 0; a < g->order(); ++a) og.push_back(g->element_order(a));
    for (int a = 0; a < h->order(); ++a) oh.push_back(h->element_order(a));
    std::sort(og.begin(), og.end());
    std::sort(oh.begin(), oh.end());
    if (og != oh) return std::nullopt;

    std::optional<GroupHom> found;
    search_homs(*g, *h, true, [&](const std::vector<int>& im) {
        found.emplace(g, h, im);
        return false;
    });
    return found;
}

std::vector<GroupHom> all_homomorphisms(const GroupPtr& g, const GroupPtr& h,
                                        const Budget& budget) {
    std::size_t gens = generating_set(*g).size();
    double space = 1;
    for (std::size_t i = 0; i < gens; ++i) space *= h->order();
    if (space > static_cast<double>(budget.max_enumeration))
        throw budget_error("homomorphism enumeration bound exceeded");
    std::vector<GroupHom> out;
    search_homs(*g, *h, false, [&](const std::vector<int>& im) {
        out.emplace_back(g, h, im);
        return true;
    });
    return out;
}

namespace {

void moduli_candidates(int n, int max_factor, std::vector<int>& cur,
                       std::vector<std::vector<int>>& out) {
    if (n == 1) {
        out.push_back(cur);
        return;
    }
    for (int m = std::min(n, max_factor); m >= 2; --m) {
        if (n % m != 0) continue;
        cur.push_back(m);
        moduli_candidates(n / m, m, cur, out);
        cur.pop_back();
    }
}

}  // namespace

AbelianDecomposition abelian_decompose(const GroupPtr& a, const Budget& budget) {
    if (!a->is_abelian()) throw input_error("abelian_decompose requires an abelian group");
    AbelianDecomposition dec;
    dec.group = a;
    if (a->order() == 1) {
        dec.coords = {{}};
        dec.element_of_rank = {0};
        return dec;
    }
    std::vector<std::vector<int>> cands;
    std::vector<int> cur;
    moduli_candidates(a->order(), a->order(), cur, cands);
    // prefer invariant-factor shape (fewest factors, largest first)
    std::sort(cands.begin(), cands.end(), [](const auto& x, const auto& y) {
        return x.size() < y.size() || (x.size() == y.size() && x > y);
    });
    Budget wide = budget;
    wide.max_group_order = std::max(wide.max_group_order, a->order());
    for (const auto& mods : cands) {
        if (mods.size() > 1 && a->exponent() != mods[0]) continue;  // largest factor = exponent
        GroupPtr canon = make_cyclic(mods[0]);
        for (std::size_t i = 1; i < mods.size(); ++i) canon = direct_product(canon, make_cyclic(mods[i]));
        auto iso = is_isomorphic(canon, a, wide);
        if (!iso) continue;
        dec.moduli = mods;
        dec.coords.assign(a->order(), {});
        dec.element_of_rank.assign(a->order(), -1);
        for (int r = 0; r < canon->order(); ++r) {
            std::vector<int> c(mods.size());
            int rest = r;
            for (int i = static_cast<int>(mods.size()) - 1; i >= 0; --i) {
                c[static_cast<std::size_t>(i)] = rest % mods[static_cast<std::size_t>(i)];
                rest /= mods[static_cast<std::size_t>(i)];
            }
            dec.coords[(*iso)(r)] = std::move(c);
            dec.element_of_rank[r] = (*iso)(r);
        }
        // transported addition must match the original table
        for (int x = 0; x < a->order(); ++x)
            for (int y = 0; y < a->order(); ++y) {
                std::vector<int> sum(dec.moduli.size());
                for (std::size_t i = 0; i < dec.moduli.size(); ++i)
                    sum[i] = (dec.coords[x][i] + dec.coords[y][i]) % dec.moduli[i];
                if (dec.element(sum) != a->op(x, y))
                    throw internal_check_error("abelian decomposition does not transport the operation");
            }
        return dec;
    }
    throw internal_check_error("no cyclic decomposition found for abelian group");
}

}  // namespace xmodkit
