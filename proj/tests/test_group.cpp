#include "doctest.h"

#include "bispan/group.hpp"

#include <set>

using namespace bispan;

namespace {

// brute force over all subsets; independent of the BFS enumeration
int count_subgroups_by_subsets(const Group& g)
{
    int n = g.order(), count = 0;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        Subgroup s;
        for (int x = 0; x < n; ++x)
            if (mask & (1u << x))
                s.push_back(x);
        if (is_subgroup(g, s))
            ++count;
    }
    return count;
}

} // namespace

TEST_CASE("catalog groups have the right orders and are pairwise non-isomorphic")
{
    auto cat = small_group_catalog(12);
    CHECK(cat.size() == 24);
    for (std::size_t i = 0; i < cat.size(); ++i)
        for (std::size_t j = i + 1; j < cat.size(); ++j)
            CHECK_FALSE(find_isomorphism(cat[i].group, cat[j].group).has_value());
    CHECK(group_by_name("D4").order() == 8);
    CHECK(group_by_name("C2^3").order() == 8);
    CHECK(group_by_name("C4xC2").order() == 8);
    CHECK(group_by_name("Dic3").order() == 12);
    CHECK_FALSE(group_by_name("Dic3").is_abelian());
    CHECK_THROWS(group_by_name("Z7"));
}

TEST_CASE("group tables are validated")
{
    CHECK_THROWS(Group::from_table({{0, 1}, {0, 1}}));
    CHECK_THROWS(Group::from_table({{0, 1}, {1, 1}}));
    CHECK_NOTHROW(Group::from_table({{1, 0}, {0, 1}})); // identity at 1
    auto g = Group::from_table({{1, 0}, {0, 1}});
    CHECK(g.identity() == 1);
    CHECK(g.inv(0) == 0);
}

TEST_CASE("subgroup enumeration matches subset brute force")
{
    for (const auto& [name, g] : small_group_catalog(12)) {
        CAPTURE(name);
        CHECK(static_cast<int>(all_subgroups(g).size()) == count_subgroups_by_subsets(g));
    }
    CHECK(all_subgroups(symmetric_group(3)).size() == 6);
    CHECK(all_subgroups(dihedral_group(4)).size() == 10);
    CHECK(all_subgroups(quaternion_group()).size() == 6);
    CHECK(all_subgroups(alternating_group(4)).size() == 10);
}

TEST_CASE("conjugacy classes of subgroups")
{
    auto s3 = symmetric_group(3);
    Subgroup all(s3.order());
    for (int i = 0; i < s3.order(); ++i)
        all[i] = i;
    CHECK(subgroup_class_representatives(s3, all).size() == 4);
    auto d4 = dihedral_group(4);
    Subgroup all4(8);
    for (int i = 0; i < 8; ++i)
        all4[i] = i;
    CHECK(subgroup_class_representatives(d4, all4).size() == 8);
    auto v = group_by_name("V4");
    Subgroup allv{0, 1, 2, 3};
    CHECK(subgroup_class_representatives(direct_product(cyclic_group(2), cyclic_group(2)), allv).size() == 5);
    (void)v;
}

TEST_CASE("homomorphism counts")
{
    CHECK(all_homomorphisms(cyclic_group(2), cyclic_group(2)).size() == 2);
    CHECK(all_homomorphisms(cyclic_group(4), cyclic_group(2)).size() == 2);
    CHECK(all_homomorphisms(symmetric_group(3), cyclic_group(2)).size() == 2);
    CHECK(all_homomorphisms(cyclic_group(2), symmetric_group(3)).size() == 4);
    CHECK(automorphisms(symmetric_group(3)).size() == 6);
    CHECK(automorphisms(group_by_name("V4")).size() == 6);
    CHECK(automorphisms(group_by_name("C2^3")).size() == 168);
    CHECK(automorphisms(quaternion_group()).size() == 24);
    CHECK(automorphisms(dihedral_group(4)).size() == 8);
    for (const auto& h : all_homomorphisms(symmetric_group(3), symmetric_group(3))) {
        auto g = symmetric_group(3);
        for (int a = 0; a < 6; ++a)
            for (int b = 0; b < 6; ++b)
                CHECK(h[g.mul(a, b)] == g.mul(h[a], h[b]));
    }
}
