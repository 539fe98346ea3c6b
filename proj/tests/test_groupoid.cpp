#include "doctest.h"

#include "bispan/groupoid.hpp"

using namespace bispan;

namespace {
GroupoidPtr bg(const char* name) { return from_group(group_by_name(name)); }
}

TEST_CASE("one-object groupoids from groups")
{
    auto one = bg("1");
    CHECK(one->object_count() == 1);
    CHECK(one->morphism_count() == 1);
    CHECK(bg("C2")->morphism_count() == 2);
    CHECK(bg("S3")->morphism_count() == 6);
    CHECK(bg("C2")->summary() == "1 object, 2 morphisms, connected");
}

TEST_CASE("disjoint union and product counts")
{
    auto c2 = bg("C2"), one = bg("1");
    auto e = empty_groupoid();
    auto u = disjoint_union(e, c2);
    CHECK(u->object_count() == 1);
    CHECK(u->morphism_count() == 2);
    auto cc = disjoint_union(c2, c2);
    CHECK(cc->object_count() == 2);
    CHECK(cc->morphism_count() == 4);
    CHECK(cc->component_count() == 2);
    auto oc = disjoint_union(one, c2);
    CHECK(oc->object_count() == 2);
    CHECK(oc->morphism_count() == 3);
    CHECK_NOTHROW(oc->validate());

    auto p = product(c2, c2);
    CHECK_NOTHROW(p->validate());
    CHECK(p->object_count() == 1);
    CHECK(p->morphism_count() == 4);
    CHECK(find_isomorphism(p->vertex_group(0).group, group_by_name("V4")).has_value());
    auto q = product(disjoint_union(one, one), c2);
    CHECK_NOTHROW(q->validate());
    CHECK(q->object_count() == 2);
    CHECK(q->component_count() == 2);
    CHECK(q->vertex_group(0).group.order() == 2);
    CHECK(q->vertex_group(1).group.order() == 2);
    auto r = product(one, bg("S3"));
    CHECK(find_equivalence(r, bg("S3")).has_value());
}

TEST_CASE("iso-comma examples")
{
    auto one = bg("1"), c2 = bg("C2");
    auto ic0 = iso_comma(identity_functor(one), identity_functor(one));
    CHECK(ic0.apex->object_count() == 1);
    CHECK(ic0.apex->morphism_count() == 1);

    auto u = constant_functor(one, c2, 0);
    auto ic1 = iso_comma(u, u);
    CHECK(ic1.apex->object_count() == 2);
    CHECK(ic1.apex->morphism_count() == 2);

    auto ic2 = iso_comma(identity_functor(c2), identity_functor(c2));
    CHECK_NOTHROW(ic2.apex->validate());
    CHECK(ic2.apex->object_count() == 2);
    CHECK(ic2.apex->morphism_count() == 8);
    CHECK(ic2.apex->component_count() == 1);
    CHECK(ic2.apex->vertex_group(0).group.order() == 2);
    CHECK_NOTHROW(ic2.gamma.validate());
}

TEST_CASE("iso-comma satisfies the square equation on every morphism")
{
    auto s3 = bg("S3"), c2 = bg("C2");
    auto incs = enumerate_functors(c2, s3);
    REQUIRE(!incs.empty());
    for (const auto& a : incs)
        for (const auto& b : {identity_functor(s3), constant_functor(bg("1"), s3, 0)}) {
            auto ic = iso_comma(a, b);
            ic.apex->validate();
            ic.p.validate();
            ic.q.validate();
            ic.gamma.validate();
            const auto& G = *s3;
            for (int k = 0; k < ic.apex->morphism_count(); ++k) {
                auto [phi, psi] = ic.morphisms[k];
                int g0 = ic.objects[ic.apex->src(k)].gamma, g1 = ic.objects[ic.apex->tgt(k)].gamma;
                CHECK(G.compose(g1, a(phi)) == G.compose(b(psi), g0));
            }
        }
}

TEST_CASE("find_equivalence")
{
    auto one = bg("1"), c2 = bg("C2"), c3 = bg("C3");
    auto ic = iso_comma(identity_functor(c2), identity_functor(c2));
    auto e = find_equivalence(c2, ic.apex);
    REQUIRE(e.has_value());
    e->forward.validate();
    e->backward.validate();
    e->unit.validate();
    e->counit.validate();
    CHECK_FALSE(find_equivalence(c2, c3).has_value());
    CHECK_FALSE(find_equivalence(disjoint_union(one, one), one).has_value());
    for (auto g : {one, c2, bg("S3"), disjoint_union(c2, one)}) {
        auto self = find_equivalence(g, g);
        REQUIRE(self.has_value());
        CHECK(self->forward == identity_functor(g));
    }
}

TEST_CASE("find_natural_iso")
{
    auto s3 = bg("S3"), c2 = bg("C2"), one = bg("1");
    auto f = identity_functor(s3);
    auto id = find_natural_iso(f, f);
    REQUIRE(id.has_value());
    CHECK(*id == identity_iso(f));
    auto k = constant_functor(one, c2, 0);
    CHECK(find_natural_iso(k, k).has_value());

    // inclusions of two different order-2 subgroups are conjugate
    auto incs = enumerate_functors(c2, s3);
    std::vector<Functor> injective;
    for (const auto& i : incs)
        if (i(1) != s3->identity(0))
            injective.push_back(i);
    REQUIRE(injective.size() == 3);
    for (const auto& a : injective)
        for (const auto& b : injective) {
            auto iso = find_natural_iso(a, b);
            REQUIRE(iso.has_value());
            iso->validate();
        }
    // trivial and injective functors are not isomorphic
    CHECK_FALSE(find_natural_iso(incs.front(), injective.front()).has_value());
    CHECK(enumerate_natural_isos(identity_functor(s3), identity_functor(s3)).size() == 1); // center of S3
    CHECK(enumerate_natural_isos(identity_functor(c2), identity_functor(c2)).size() == 2);
}

TEST_CASE("enumerate_functors counts")
{
    auto one = bg("1"), c2 = bg("C2"), s3 = bg("S3");
    CHECK(enumerate_functors(c2, s3).size() == 4);
    CHECK(enumerate_functors(s3, c2).size() == 2);
    auto two = disjoint_union(one, one);
    CHECK(enumerate_functors(two, c2).size() == 1);
    CHECK(enumerate_functors(c2, two).size() == 2);
    CHECK(enumerate_functors(empty_groupoid(), c2).size() == 1);
    CHECK(enumerate_functors(c2, empty_groupoid()).empty());
    for (const auto& f : enumerate_functors(disjoint_union(c2, one), disjoint_union(s3, c2)))
        f.validate();
}
