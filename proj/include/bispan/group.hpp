#pragma once

#include <optional>
#include <string>
#include <vector>

namespace bispan {

// A finite group given by its multiplication table. Elements are 0..order-1;
// the identity is not required to be 0 for user tables, but every built-in
// constructor puts it there.
class Group
{
  public:
    Group() = default;

    // Validates closure, associativity, identity and inverses.
    static Group from_table(const std::vector<std::vector<int>>& table);
    // Closure of the given permutations (all of equal degree).
    static Group from_permutations(const std::vector<std::vector<int>>& generators);

    int order() const { return n_; }
    int identity() const { return identity_; }
    int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
    int inv(int a) const { return inverse_[a]; }
    int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }
    int element_order(int a) const { return element_order_[a]; }
    bool is_abelian() const;

    std::vector<std::vector<int>> table() const;

    // Greedy small generating set, deterministic.
    const std::vector<int>& generators() const { return generators_; }

    // Sorted list of element orders; an isomorphism invariant.
    std::vector<int> order_profile() const;

    bool operator==(const Group& other) const { return n_ == other.n_ && table_ == other.table_; }

  private:
    void finish();

    int n_ = 0;
    int identity_ = 0;
    std::vector<int> table_;
    std::vector<int> inverse_;
    std::vector<int> element_order_;
    std::vector<int> generators_;
};

Group cyclic_group(int n);
Group direct_product(const Group& a, const Group& b); // element (x, y) -> x * |b| + y
Group dihedral_group(int n);                          // order 2n
Group quaternion_group();
Group dicyclic3_group();                              // C3 x| C4, order 12
Group symmetric_group(int n);
Group alternating_group(int n);

// Parses names such as "1", "C4", "V4", "S3", "D4", "Q8", "A4", "Dic3",
// "C2^3", "C4xC2". Throws std::invalid_argument on unknown names.
Group group_by_name(const std::string& name);

struct NamedGroup
{
    std::string name;
    Group group;
};

// One representative per isomorphism class of groups of order <= max_order
// (supported up to order 12).
std::vector<NamedGroup> small_group_catalog(int max_order);

// ---- subgroups -------------------------------------------------------------

using Subgroup = std::vector<int>; // sorted element list

Subgroup generated_subgroup(const Group& g, const std::vector<int>& gens);
bool is_subgroup(const Group& g, const Subgroup& s);
std::vector<Subgroup> all_subgroups(const Group& g);
Subgroup conjugate_subgroup(const Group& g, const Subgroup& s, int by);
// Lexicographically least conjugate under the elements of `acting`
// (defaults to the whole group when empty).
Subgroup canonical_conjugate(const Group& g, const Subgroup& s, const std::vector<int>& acting = {});
// Conjugacy classes of subgroups of `within` (a subgroup of g) under
// conjugation by `within`; each class listed by its canonical member.
std::vector<Subgroup> subgroup_class_representatives(const Group& g, const Subgroup& within);
// The subgroup as a group in its own right; element i is s[i].
Group subgroup_as_group(const Group& g, const Subgroup& s);

// ---- homomorphisms ---------------------------------------------------------

using Homomorphism = std::vector<int>; // image of every element

// Extends an assignment on `from.generators()` to a homomorphism if one exists.
std::optional<Homomorphism> extend_homomorphism(const Group& from, const Group& to,
                                                const std::vector<int>& generator_images);
std::vector<Homomorphism> all_homomorphisms(const Group& from, const Group& to);
std::optional<Homomorphism> find_isomorphism(const Group& from, const Group& to);
std::vector<Homomorphism> all_isomorphisms(const Group& from, const Group& to);
inline std::vector<Homomorphism> automorphisms(const Group& g) { return all_isomorphisms(g, g); }
bool is_surjective(const Homomorphism& h, int target_order);

} // namespace bispan
