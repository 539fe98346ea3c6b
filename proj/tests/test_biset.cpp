#include "doctest.h"

#include "bispan/biset.hpp"
#include "bispan/pool.hpp"
#include "bispan/union_find.hpp"

#include <set>

using namespace bispan;

namespace {

GroupoidPtr gp(const char* name) { return groupoid_by_name(name); }

// Composite sizes glued along every morphism of the middle groupoid (the
// library only unites along generators).
std::vector<int> naive_composite_sizes(const Biset& u, const Biset& v)
{
    const Groupoid& H = *u.source();
    int nk = v.source()->object_count(), ng = u.target()->object_count(), nh = H.object_count();
    std::vector<int> out;
    for (int k = 0; k < nk; ++k)
        for (int g = 0; g < ng; ++g) {
            std::vector<int> first(nh + 1, 0);
            for (int h = 0; h < nh; ++h)
                first[h + 1] = first[h] + u.size(h, g) * v.size(k, h);
            DisjointSet ds(first[nh]);
            for (int a = 0; a < H.morphism_count(); ++a) {
                int h1 = H.src(a), h2 = H.tgt(a);
                // (h1, U(a, id) x, v) ~ (h2, x, V(id, a) v) for x in U(h2, g), v in V(k, h1)
                for (int x = 0; x < u.size(h2, g); ++x)
                    for (int y = 0; y < v.size(k, h1); ++y)
                        ds.unite(first[h1] + u.act_source(a, g, x) * v.size(k, h1) + y,
                                 first[h2] + x * v.size(k, h2) + v.act_target(a, k, y));
            }
            int n = 0;
            ds.canonical_labels(&n);
            out.push_back(n);
        }
    return out;
}

// Orbits using every morphism on both sides.
int naive_orbit_count(const Biset& u)
{
    const Groupoid& H = *u.source();
    const Groupoid& G = *u.target();
    DisjointSet ds(u.total_size());
    for (int h = 0; h < H.object_count(); ++h)
        for (int a = 0; a < G.morphism_count(); ++a)
            for (int x = 0; x < u.size(h, G.src(a)); ++x)
                ds.unite(u.offset(h, G.src(a)) + x, u.offset(h, G.tgt(a)) + u.act_target(a, h, x));
    for (int g = 0; g < G.object_count(); ++g)
        for (int b = 0; b < H.morphism_count(); ++b)
            for (int x = 0; x < u.size(H.tgt(b), g); ++x)
                ds.unite(u.offset(H.tgt(b), g) + x, u.offset(H.src(b), g) + u.act_source(b, g, x));
    int n = 0;
    ds.canonical_labels(&n);
    return n;
}

Subgroup all_elements(const Group& g)
{
    Subgroup s(g.order());
    for (int i = 0; i < g.order(); ++i)
        s[i] = i;
    return s;
}

std::vector<int> all_sizes(const Biset& u)
{
    std::vector<int> s;
    for (int k = 0; k < u.source()->object_count(); ++k)
        for (int g = 0; g < u.target()->object_count(); ++g)
            s.push_back(u.size(k, g));
    return s;
}

} // namespace

TEST_CASE("identity bisets have hom-set values")
{
    for (const char* name : {"1", "BC2", "BS3", "1+1", "BC2+1"}) {
        auto g = gp(name);
        auto id = identity_biset(g);
        id->validate();
        for (int a = 0; a < g->object_count(); ++a)
            for (int b = 0; b < g->object_count(); ++b)
                CHECK(id->size(a, b) == static_cast<int>(g->hom(a, b).size()));
    }
}

TEST_CASE("composing identity bisets")
{
    auto c2 = gp("BC2");
    auto id = identity_biset(c2);
    auto comp = compose_bisets(id, id);
    CHECK(comp->size(0, 0) == 2);
    CHECK(bisets_isomorphic(comp, id).has_value());
}

TEST_CASE("induction then restriction along 1 -> BC2")
{
    auto one = gp("1"), c2 = gp("BC2");
    // values C2 on both sides, free transitive actions
    auto ind = transitive_biset(one, c2, 0, 0, {0});
    auto res = transitive_biset(c2, one, 0, 0, {0});
    CHECK(ind->size(0, 0) == 2);
    CHECK(res->size(0, 0) == 2);
    auto rt = compose_bisets(res, ind);
    CHECK(rt->size(0, 0) == 2);
    auto tr = compose_bisets(ind, res); // glued over 1: the full product C2 x C2
    CHECK(tr->size(0, 0) == 4);
    CHECK(is_transitive(*tr));
    CHECK(transitive_key(*tr).stabilizer.size() == 1);
}

TEST_CASE("composition agrees with gluing along all morphisms")
{
    Rng rng(7);
    std::vector<const char*> names{"1", "BC2", "BC3", "BV4", "BS3", "1+1", "BC2+1"};
    std::uniform_int_distribution<std::size_t> pick(0, names.size() - 1);
    for (int i = 0; i < 60; ++i) {
        auto k = gp(names[pick(rng)]), h = gp(names[pick(rng)]), g = gp(names[pick(rng)]);
        auto u = random_biset(h, g, rng);
        auto v = random_biset(k, h, rng);
        u->validate();
        v->validate();
        auto uv = compose_bisets(u, v);
        uv->validate();
        CHECK(all_sizes(*uv) == naive_composite_sizes(*u, *v));
    }
}

TEST_CASE("composition is associative and unital up to isomorphism")
{
    Rng rng(11);
    std::vector<const char*> names{"1", "BC2", "BC3", "BS3", "1+1", "BC2+1"};
    std::uniform_int_distribution<std::size_t> pick(0, names.size() - 1);
    for (int i = 0; i < 30; ++i) {
        auto a = gp(names[pick(rng)]), b = gp(names[pick(rng)]), c = gp(names[pick(rng)]), d = gp(names[pick(rng)]);
        auto u = random_biset(c, d, rng), v = random_biset(b, c, rng), w = random_biset(a, b, rng);
        auto left = compose_bisets(compose_bisets(u, v), w);
        auto right = compose_bisets(u, compose_bisets(v, w));
        auto iso = bisets_isomorphic(left, right);
        REQUIRE(iso.has_value());
        iso->validate();
        CHECK(iso->is_bijective());
        CHECK(bisets_isomorphic(compose_bisets(identity_biset(d), u), u).has_value());
        CHECK(bisets_isomorphic(compose_bisets(u, identity_biset(c)), u).has_value());

        auto chain = make_chain({u, v, w});
        CHECK(all_sizes(*chain->result()) == all_sizes(*right));
        long long total = 0;
        for (int k = 0; k < a->object_count(); ++k)
            for (int g = 0; g < d->object_count(); ++g) {
                long long brute = 0;
                for (int h1 = 0; h1 < c->object_count(); ++h1)
                    for (int h2 = 0; h2 < b->object_count(); ++h2)
                        brute += static_cast<long long>(u->size(h1, g)) * v->size(h2, h1) * w->size(k, h2);
                CHECK(chain->tuple_count(k, g) == brute);
                total += chain->for_each_tuple(k, g, [&](const BisetChain::Tuple& t) {
                    CHECK(chain->class_of(t) < chain->result()->size(k, g));
                    return true;
                });
                total -= brute;
            }
        CHECK(total == 0);
    }
}

TEST_CASE("identity rewrite gives the identity chain map")
{
    Rng rng(3);
    auto h = gp("BS3"), g = gp("BC2+1");
    auto u = random_biset(h, g, rng), v = random_biset(h, h, rng);
    auto chain = make_chain({u, v});
    auto m = chain_map(chain, chain, 0, 2, 2, [](const BisetChain::Tuple& t) { return t; });
    m.validate();
    CHECK(m.is_identity());
}

TEST_CASE("orbits and decomposition")
{
    Rng rng(5);
    std::vector<const char*> names{"1", "BC2", "BC4", "BS3", "1+1", "BC2+1"};
    std::uniform_int_distribution<std::size_t> pick(0, names.size() - 1);
    for (int i = 0; i < 40; ++i) {
        auto h = gp(names[pick(rng)]), g = gp(names[pick(rng)]);
        auto u = random_biset(h, g, rng, 3);
        int n = 0;
        biset_orbits(*u, &n);
        CHECK(n == naive_orbit_count(*u));
        auto parts = decompose_biset(u);
        CHECK(static_cast<int>(parts.size()) == n);
        auto sum = empty_biset(h, g);
        for (const auto& p : parts) {
            CHECK(is_transitive(*p));
            sum = sum_bisets(sum, p);
        }
        CHECK(bisets_isomorphic(sum, u).has_value());
    }
}

TEST_CASE("tensor products")
{
    auto c2 = gp("BC2");
    auto t = tensor_bisets(identity_biset(c2), identity_biset(c2));
    t->validate();
    CHECK(t->total_size() == 4);
    CHECK(naive_orbit_count(*t) == 1);
    CHECK(bisets_isomorphic(t, identity_biset(product(c2, c2))).has_value());

    Rng rng(9);
    for (int i = 0; i < 20; ++i) {
        auto u = random_biset(gp("BC2"), gp("BC3+1"), rng);
        auto v = random_biset(gp("1+1"), gp("BC2"), rng);
        auto uv = tensor_bisets(u, v);
        uv->validate();
        int n = 0;
        biset_orbits(*uv, &n);
        CHECK(n == naive_orbit_count(*uv));
        CHECK(uv->total_size() == u->total_size() * v->total_size());
    }
}

TEST_CASE("transitive bisets are classified by stabilizer classes")
{
    struct Case
    {
        const char* h;
        const char* g;
        int expected;
    };
    for (auto c : {Case{"1", "1", 1}, Case{"1", "BC2", 2}, Case{"BC2", "BC2", 5}, Case{"BC2", "BS3", 10}}) {
        auto h = gp(c.h), g = gp(c.g);
        auto vg = g->vertex_group(0), vh = h->vertex_group(0);
        Group p = direct_product(vg.group, vh.group);
        auto reps = subgroup_class_representatives(p, all_elements(p));
        // subgroup classes of a product under conjugation = all subgroups / conjugacy
        std::set<Subgroup> classes;
        for (const auto& s : all_subgroups(p))
            classes.insert(canonical_conjugate(p, s));
        CHECK(static_cast<int>(classes.size()) == c.expected);
        CHECK(reps.size() == classes.size());

        std::vector<BisetPtr> made;
        for (const auto& l : classes) {
            auto b = transitive_biset(h, g, 0, 0, l);
            b->validate();
            CHECK(is_transitive(*b));
            CHECK(b->size(0, 0) * static_cast<int>(l.size()) == p.order());
            CHECK(transitive_key(*b).stabilizer == l);
            // a random conjugate gives the same key
            auto moved = conjugate_subgroup(p, l, p.order() - 1);
            CHECK(transitive_key(*transitive_biset(h, g, 0, 0, moved)).stabilizer == l);
            made.push_back(b);
        }
        for (std::size_t i = 0; i < made.size(); ++i)
            for (std::size_t j = i + 1; j < made.size(); ++j)
                CHECK_FALSE(bisets_isomorphic(made[i], made[j]).has_value());
    }
}
