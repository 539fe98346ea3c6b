#include "doctest.h"

#include "bispan/pool.hpp"
#include "bispan/span.hpp"

using namespace bispan;

namespace {

GroupoidPtr gp(const char* name) { return groupoid_by_name(name); }

Functor unique_functor(const GroupoidPtr& s, const GroupoidPtr& t)
{
    auto all = enumerate_functors(s, t);
    REQUIRE(all.size() == 1);
    return all.front();
}

// Exhaustive: some equivalence f with natural isos b => b'f and a'f => a.
bool brute_isomorphic(const Span& s1, const Span& s2)
{
    for (const auto& f : enumerate_functors(s1.apex, s2.apex)) {
        if (!is_equivalence(f))
            continue;
        if (!enumerate_natural_isos(s1.left, compose(s2.left, f)).empty() &&
            !enumerate_natural_isos(compose(s2.right, f), s1.right).empty())
            return true;
    }
    return false;
}

std::vector<GroupoidPtr> small_pool()
{
    std::vector<GroupoidPtr> p;
    for (const char* n : {"1", "BC2", "BC3", "BC4", "BV4", "BS3", "1+1", "BC2+1"})
        p.push_back(gp(n));
    return p;
}

} // namespace

TEST_CASE("identity spans and embeddings")
{
    for (const char* n : {"1", "BC2", "BS3+1"}) {
        auto g = gp(n);
        auto id = identity_span(g);
        id.validate();
        CHECK(id.left == identity_functor(g));
        CHECK(id.right == identity_functor(g));
        auto e = embed(identity_functor(g), Variance::covariant);
        CHECK(e.left == id.left);
        CHECK(e.right == id.right);
    }
    auto u = unique_functor(gp("1"), gp("BC2"));
    auto cov = embed(u, Variance::covariant);
    CHECK(cov.apex->object_count() == 1);
    CHECK(cov.right == u);
    CHECK(cov.left == identity_functor(u.source));
    auto con = embed(u, Variance::contravariant);
    CHECK(con.left == u);
    CHECK(same_groupoid(con.source(), gp("BC2")));
}

TEST_CASE("composition examples")
{
    auto one = gp("1"), c2 = gp("BC2");
    auto to_one = unique_functor(c2, one);
    Span defl{c2, to_one, to_one}; // 1 <- BC2 -> 1
    auto sq = compose_spans(defl, defl);
    sq.validate();
    CHECK(sq.apex->object_count() == 1);
    CHECK(sq.apex->morphism_count() == 4);

    auto u = unique_functor(one, c2);
    auto rt = compose_spans(embed(u, Variance::contravariant), embed(u, Variance::covariant));
    CHECK(rt.apex->object_count() == 2);
    CHECK(rt.apex->morphism_count() == 2);
    CHECK(rt.apex->component_count() == 2);

    CHECK_THROWS_AS(compose_spans(defl, embed(u, Variance::covariant)), std::invalid_argument);
}

TEST_CASE("decomposition")
{
    auto one = gp("1");
    auto two = gp("1+1");
    auto to_one = unique_functor(two, one);
    auto parts = decompose_span({two, to_one, to_one});
    REQUIRE(parts.size() == 2);
    for (const auto& p : parts) {
        CHECK(p.apex->morphism_count() == 1);
        CHECK(spans_isomorphic(p, identity_span(one)));
    }
    auto mixed = gp("BC2+1");
    auto m = unique_functor(mixed, one);
    auto mp = decompose_span({mixed, m, m});
    REQUIRE(mp.size() == 2);
    CHECK(mp[0].apex->morphism_count() == 2);
    CHECK(mp[1].apex->morphism_count() == 1);
    CHECK(decompose_span(identity_span(gp("BS3"))).size() == 1);
    CHECK(spans_isomorphic(sum_spans(mp[0], mp[1]), Span{mixed, m, m}));
}

TEST_CASE("isomorphism examples")
{
    auto one = gp("1"), c2 = gp("BC2");
    auto to_one = unique_functor(c2, one);
    CHECK(spans_isomorphic(identity_span(one), identity_span(one)));
    CHECK_FALSE(spans_isomorphic(identity_span(one), Span{c2, to_one, to_one}));
    auto id = identity_span(c2);
    auto idid = compose_spans(id, id);
    CHECK(idid.apex->object_count() == 2);
    auto iso = find_span_iso(id, idid);
    REQUIRE(iso.has_value());
    iso->validate();
    CHECK(iso->is_invertible());
}

TEST_CASE("isomorphism decision agrees with exhaustive search")
{
    Rng rng(17);
    auto pool = small_pool();
    std::vector<GroupoidPtr> apexes{gp("1"), gp("BC2"), gp("BC3"), gp("BC4"), gp("1+1"), gp("BC2+1")};
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    int agreements = 0, positives = 0;
    for (int i = 0; i < 150; ++i) {
        auto h = pool[pick(rng)], g = pool[pick(rng)];
        auto s1 = random_span(h, g, apexes, rng);
        auto s2 = random_span(h, g, apexes, rng);
        if (!s1 || !s2)
            continue;
        auto fast = find_span_iso(*s1, *s2);
        bool slow = brute_isomorphic(*s1, *s2);
        CHECK(fast.has_value() == slow);
        if (fast) {
            fast->validate();
            ++positives;
        }
        ++agreements;
    }
    CHECK(agreements > 100);
    CHECK(positives > 5);
}

TEST_CASE("unit and associativity laws")
{
    Rng rng(23);
    auto pool = small_pool();
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    int triples = 0;
    for (int i = 0; i < 40; ++i) {
        auto a = pool[pick(rng)], b = pool[pick(rng)], c = pool[pick(rng)], d = pool[pick(rng)];
        auto s1 = random_span(c, d, pool, rng), s2 = random_span(b, c, pool, rng), s3 = random_span(a, b, pool, rng);
        if (!s1 || !s2 || !s3)
            continue;
        ++triples;
        auto lu = left_unitor(*s1);
        lu.validate();
        CHECK(lu.is_invertible());
        auto ru = right_unitor(*s1);
        ru.validate();
        CHECK(ru.is_invertible());
        auto as = associator(*s1, *s2, *s3);
        as.validate();
        CHECK(as.is_invertible());
        CHECK(spans_isomorphic(as.from, as.to));
        CHECK(spans_isomorphic(lu.from, *s1));

        // every span is a_! ∘ b^* of its own legs
        auto factored = compose_spans(embed(s1->right, Variance::covariant), embed(s1->left, Variance::contravariant));
        CHECK(spans_isomorphic(factored, *s1));

        // symmetry and transitivity spot checks
        auto x = compose_spans(*s1, identity_span(c));
        CHECK(spans_isomorphic(*s1, x) == spans_isomorphic(x, *s1));
        CHECK(spans_isomorphic(x, lu.from));

        auto v = vertical(identity_two_cell(as.to), as);
        v.validate();
        CHECK(v.f == as.f);
    }
    CHECK(triples > 20);
}

TEST_CASE("tensor of spans")
{
    auto one = gp("1"), c2 = gp("BC2");
    auto to_one = unique_functor(c2, one);
    Span defl{c2, to_one, to_one};
    auto t = tensor_spans(defl, defl);
    t.validate();
    CHECK(t.apex->morphism_count() == 4);
    CHECK(t.source()->object_count() == 1);
    auto unit = tensor_spans(identity_span(one), defl);
    CHECK(unit.apex->morphism_count() == 2);
}
