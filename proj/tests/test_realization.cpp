#include "doctest.h"

#include "bispan/pool.hpp"
#include "bispan/realization.hpp"

using namespace bispan;

namespace {

GroupoidPtr gp(const char* name) { return groupoid_by_name(name); }

Functor unique_functor(const GroupoidPtr& s, const GroupoidPtr& t)
{
    auto all = enumerate_functors(s, t);
    REQUIRE(all.size() == 1);
    return all.front();
}

// C2 -> S3 onto the `which`-th transposition.
Functor transposition_inclusion(const GroupoidPtr& c2, const GroupoidPtr& s3, int which)
{
    const Group& g = s3->vertex_group(0).group;
    std::vector<int> involutions;
    for (int x = 0; x < g.order(); ++x)
        if (g.element_order(x) == 2)
            involutions.push_back(x);
    REQUIRE(involutions.size() == 3);
    return from_homomorphism(c2, s3, {0, involutions[which]});
}

std::vector<GroupoidPtr> pool()
{
    std::vector<GroupoidPtr> p;
    for (const auto& e : make_pool(default_pool_names()))
        p.push_back(e.groupoid);
    return p;
}

} // namespace

TEST_CASE("realizing functors")
{
    for (const char* n : {"1", "BC2", "BS3", "1+1", "BC2+1"}) {
        auto g = gp(n);
        auto id = identity_functor(g);
        CHECK(same_biset(realize_functor(id, Variance::covariant), identity_biset(g)));
        CHECK(same_biset(realize_functor(id, Variance::contravariant), identity_biset(g)));
    }
    auto u = unique_functor(gp("1"), gp("BC2"));
    auto ru = realize_functor(u, Variance::covariant);
    ru->validate();
    CHECK(ru->size(0, 0) == 2);
    realize_functor(u, Variance::contravariant)->validate();

    // fun_{R^*} for 1 -> BC2 -> BC2 (second functor the identity, then the swap)
    auto c2 = gp("BC2");
    for (const auto& v : enumerate_functors(c2, c2)) {
        auto pair = make_chain({realize_functor(u, Variance::contravariant), realize_functor(v, Variance::contravariant)});
        auto one = make_chain({realize_functor(compose(v, u), Variance::contravariant)});
        auto fun = chain_map(pair, one, 0, 2, 1, rewrite::fun_contravariant(v, u));
        fun.validate();
        CHECK(fun.is_bijective());
        auto back = chain_map(one, pair, 0, 1, 2, rewrite::fun_contravariant_inverse(v, u));
        CHECK(compose(fun, back).is_identity());
        CHECK(compose(back, fun).is_identity());
    }
}

TEST_CASE("adjunction cells")
{
    auto one = gp("1"), c2 = gp("BC2");
    auto u = unique_functor(one, c2);
    auto cells = adjunction_cells(u);
    CHECK(cells.unit_target->result()->size(0, 0) == 2);
    // the unique element goes to the class of [id, id]
    BisetChain::Tuple idid{{0, 0, 0}, {c2->pos_in_hom(c2->identity(0)), c2->pos_in_hom(c2->identity(0))}};
    CHECK(cells.unit(0, 0, 0) == cells.unit_target->class_of(idid));

    auto w = unique_functor(c2, one);
    auto cw = adjunction_cells(w);
    CHECK(cw.counit.to->total_size() == 1);
    CHECK(cw.counit_source->result()->size(0, 0) == 1);

    auto id = adjunction_cells(identity_functor(c2));
    CHECK(id.unit.is_bijective());
    CHECK(id.counit.is_bijective());
}

TEST_CASE("zig-zag identities on small functors")
{
    std::vector<GroupoidPtr> gs{gp("1"), gp("BC2"), gp("BS3"), gp("1+1"), gp("BC2+1")};
    int count = 0;
    for (const auto& s : gs)
        for (const auto& t : gs)
            for (const auto& u : enumerate_functors(s, t)) {
                CHECK(verify_zigzag(u) == "");
                ++count;
            }
    CHECK(count > 50);
}

TEST_CASE("Beck-Chevalley examples")
{
    auto c2 = gp("BC2"), one = gp("1"), s3 = gp("BS3");
    auto id = identity_functor(c2);
    auto m = beck_chevalley_mate(id, id);
    CHECK(m.bijective);
    CHECK(m.matches_pasting);

    auto u = unique_functor(one, c2);
    auto mu = beck_chevalley_mate(u, u);
    CHECK(mu.from->result()->size(0, 0) == 2);
    CHECK(mu.to->result()->size(0, 0) == 2);
    CHECK(mu.bijective);
    CHECK(mu.matches_pasting);

    auto a = unique_functor(one, s3);
    auto b = transposition_inclusion(c2, s3, 0);
    auto mab = beck_chevalley_mate(a, b);
    CHECK(mab.bijective);
    CHECK(mab.matches_pasting);
    // R^*(b) R_!(a) at the single object pair is S3
    CHECK(mab.to->result()->size(0, 0) == 6);
}

TEST_CASE("realizing spans")
{
    auto one = gp("1"), c2 = gp("BC2");
    for (const char* n : {"1", "BC2", "BS3+1"}) {
        auto g = gp(n);
        CHECK(bisets_isomorphic(realize_span(identity_span(g))->result(), identity_biset(g)).has_value());
    }
    auto to_one = unique_functor(c2, one);
    auto defl = realize_span(Span{c2, to_one, to_one})->result();
    CHECK(defl->size(0, 0) == 1);

    auto u = unique_functor(one, c2);
    auto ru = realize_span(Span{one, u, u})->result();
    CHECK(ru->size(0, 0) == 4);
    auto parts = decompose_biset(ru);
    CHECK(parts.size() == 1); // C2 x C2 with both actions free and transitive
    CHECK(transitive_key(*parts[0]).stabilizer.size() == 1);
}

TEST_CASE("realizing 2-cells")
{
    auto c2 = gp("BC2");
    auto id = identity_span(c2);
    auto r = realize_two_cell(identity_two_cell(id));
    CHECK(r.morphism.is_identity());
    CHECK(r.matches_closed_form);

    auto idid = compose_spans(id, id);
    auto iso = find_span_iso(idid, id);
    REQUIRE(iso.has_value());
    auto ri = realize_two_cell(*iso);
    CHECK(ri.morphism.is_bijective());
    CHECK(ri.matches_closed_form);

    // realization respects vertical composition
    Rng rng(31);
    auto p = pool();
    std::uniform_int_distribution<std::size_t> pick(0, p.size() - 1);
    int done = 0;
    for (int i = 0; i < 40 && done < 20; ++i) {
        auto h = p[pick(rng)], g = p[pick(rng)];
        auto s = random_span(h, g, p, rng);
        if (!s)
            continue;
        auto lu = left_unitor(*s);
        auto back = find_span_iso(lu.to, lu.from);
        REQUIRE(back.has_value());
        auto both = vertical(*back, lu);
        auto r1 = realize_two_cell(lu), r2 = realize_two_cell(*back), r12 = realize_two_cell(both);
        CHECK(r1.matches_closed_form);
        CHECK(r2.matches_closed_form);
        CHECK(r12.morphism == compose(r2.morphism, r1.morphism));
        ++done;
    }
    CHECK(done == 20);
}

TEST_CASE("span from a biset")
{
    auto one = gp("1"), c2 = gp("BC2");
    auto r1 = span_from_biset(identity_biset(one));
    CHECK(r1.span.apex->object_count() == 1);
    CHECK(r1.span.apex->morphism_count() == 1);
    CHECK(r1.bijective);

    auto r2 = span_from_biset(identity_biset(c2));
    r2.span.validate();
    CHECK(r2.span.apex->object_count() == 2);
    CHECK(r2.span.apex->morphism_count() == 8);
    CHECK(find_equivalence(r2.span.apex, c2).has_value());
    CHECK(r2.bijective);

    auto free = transitive_biset(one, c2, 0, 0, {0});
    auto r3 = span_from_biset(free);
    CHECK(find_equivalence(r3.span.apex, one).has_value());
    CHECK(r3.bijective);
    CHECK(bisets_isomorphic(realize_span(r3.span)->result(), free).has_value());
}

TEST_CASE("mate compatibility")
{
    auto c2 = gp("BC2"), s3 = gp("BS3");
    auto i0 = transposition_inclusion(c2, s3, 0);
    CHECK(verify_mate_compatibility(identity_iso(i0)) == "");
    auto i1 = transposition_inclusion(c2, s3, 1);
    auto conj = enumerate_natural_isos(i0, i1);
    REQUIRE(!conj.empty());
    for (const auto& a : conj)
        CHECK(verify_mate_compatibility(a) == "");
    for (const char* n : {"1", "BC2", "BS3", "1+1", "BC2+1"})
        CHECK(verify_counit_unitor(gp(n)) == "");
}

TEST_CASE("pseudo-functoriality")
{
    auto one = gp("1"), c2 = gp("BC2");
    auto to_one = unique_functor(c2, one);
    Span defl{c2, to_one, to_one};
    CHECK(verify_pseudofunctor(defl, defl) == "");
    auto c = compositor(defl, defl);
    CHECK(c.from->result()->size(0, 0) == 1);
    CHECK(c.to->result()->size(0, 0) == 1);
    CHECK(verify_pseudofunctor(identity_span(c2), identity_span(c2)) == "");

    Rng rng(41);
    auto p = pool();
    std::uniform_int_distribution<std::size_t> pick(0, p.size() - 1);
    int pairs = 0, triples = 0;
    for (int i = 0; i < 60; ++i) {
        auto a = p[pick(rng)], b = p[pick(rng)], cg = p[pick(rng)], d = p[pick(rng)];
        auto s1 = random_span(cg, d, p, rng), s2 = random_span(b, cg, p, rng);
        if (!s1 || !s2)
            continue;
        CHECK(verify_pseudofunctor(*s1, *s2) == "");
        ++pairs;
        if (i % 4 == 0) {
            auto s3 = random_span(a, b, p, rng);
            if (!s3)
                continue;
            CHECK(verify_associativity(*s1, *s2, *s3) == "");
            ++triples;
        }
    }
    CHECK(pairs > 40);
    CHECK(triples > 5);
}
