#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "xmodkit/common.hpp"

namespace xmodkit {

// Finite group given by its Cayley table over element indices 0..n-1.
// The identity is always index 0; the constructor rejects anything else.
class FiniteGroup {
public:
    explicit FiniteGroup(std::vector<std::vector<int>> table, std::string label = "");

    int order() const { return n_; }
    int op(int a, int b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
    int inv(int a) const { return inverse_[a]; }
    static constexpr int identity = 0;

    int element_order(int a) const;
    bool is_abelian() const;
    int exponent() const;
    bool same_table(const FiniteGroup& other) const;

    const std::string& label() const { return label_; }
    void set_label(std::string l) { label_ = std::move(l); }
    std::vector<std::vector<int>> table_rows() const;

    // Static check used by constructors and by callers that need the
    // violation as data (e.g. factor-set diagnostics) instead of a throw.
    struct TableViolation {
        std::string what;
        int row = -1, col = -1, extra = -1;
    };
    static std::optional<TableViolation> check_table(const std::vector<std::vector<int>>& table);

private:
    int n_;
    std::vector<int> table_;  // flat n*n
    std::vector<int> inverse_;
    std::string label_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Homomorphism between table groups, stored as the image of every element.
// The constructor verifies images[a*b] == images[a]*images[b].
class GroupHom {
public:
    GroupHom(GroupPtr source, GroupPtr target, std::vector<int> images);

    const GroupPtr& source() const { return source_; }
    const GroupPtr& target() const { return target_; }
    int operator()(int a) const { return images_[a]; }
    const std::vector<int>& images() const { return images_; }

    bool is_injective() const;
    bool is_surjective() const;
    bool is_bijective() const { return is_injective() && is_surjective(); }

    static GroupHom identity_on(GroupPtr g);
    static GroupHom trivial(GroupPtr source, GroupPtr target);

private:
    GroupPtr source_, target_;
    std::vector<int> images_;
};

GroupHom compose(const GroupHom& g, const GroupHom& f);  // g after f

// Subset of a parent group, verified closed under product and inverse.
struct Subgroup {
    GroupPtr parent;
    std::vector<int> members;  // sorted ascending, contains 0

    Subgroup(GroupPtr parent_, std::vector<int> members_);
    bool contains(int a) const;
    int order() const { return static_cast<int>(members.size()); }
};

// Coordinates for an abelian group: a bijection with a direct sum of Z/m_i.
struct AbelianDecomposition {
    GroupPtr group;
    std::vector<int> moduli;                // each >= 2; empty for the trivial group
    std::vector<std::vector<int>> coords;   // per element: one coordinate per modulus
    std::vector<int> element_of_rank;       // mixed-radix rank -> element index

    int element(const std::vector<int>& c) const;
};

// ---- constructions -------------------------------------------------------

GroupPtr make_cyclic(int n);
GroupPtr direct_product(const GroupPtr& g, const GroupPtr& h);  // index i*|H|+j

// Materialize a subgroup as a standalone group; embed maps new indices to
// parent indices, identity first.
struct SubgroupAsGroup {
    GroupPtr group;
    std::vector<int> embed;
    int index_of_member(int parent_elem) const;
};
SubgroupAsGroup subgroup_as_group(const Subgroup& s);

// ---- set-theoretic operations --------------------------------------------

Subgroup kernel(const GroupHom& f);
Subgroup image(const GroupHom& f);
Subgroup center(const GroupPtr& g);
Subgroup trivial_subgroup(const GroupPtr& g);
Subgroup full_subgroup(const GroupPtr& g);
bool is_normal(const Subgroup& n);
Subgroup generated_subgroup(const GroupPtr& g, const std::vector<int>& gens);
std::vector<Subgroup> all_subgroups(const GroupPtr& g);

// Quotient by a normal subgroup. Coset indices are ordered by smallest
// member, so the identity coset is index 0 and the section maps it to the
// identity element.
struct QuotientData {
    GroupPtr group;
    std::vector<int> section;      // coset index -> representative element
    GroupHom projection;           // parent -> quotient
    std::vector<std::vector<int>> cosets;  // coset index -> sorted members
};
QuotientData quotient(const GroupPtr& g, const Subgroup& n);

// ---- exhaustive searches ---------------------------------------------------

std::vector<GroupHom> automorphism_group(const GroupPtr& g, const Budget& budget = {});
std::optional<GroupHom> is_isomorphic(const GroupPtr& g, const GroupPtr& h,
                                      const Budget& budget = {});
std::vector<GroupHom> all_homomorphisms(const GroupPtr& g, const GroupPtr& h,
                                        const Budget& budget = {});

AbelianDecomposition abelian_decompose(const GroupPtr& a, const Budget& budget = {});

// Small generating set found greedily (empty for the trivial group).
std::vector<int> generating_set(const FiniteGroup& g);

}  // namespace xmodkit
