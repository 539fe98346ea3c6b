#include "doctest.h"

#include "bispan/io.hpp"
#include "bispan/pool.hpp"
#include "bispan/realization.hpp"
#include "bispan/suites.hpp"

using namespace bispan;

TEST_CASE("groups and groupoids round-trip")
{
    for (const char* name : {"1", "C2", "S3", "D4", "Q8", "A4"}) {
        Group g = group_by_name(name);
        CHECK(group_from_json(group_to_json(g)) == g);
    }
    Group s3 = group_from_json(Json::parse(R"({"perms": [[1, 0, 2], [1, 2, 0]]})"));
    CHECK(s3.order() == 6);
    CHECK_FALSE(s3.is_abelian());
    CHECK_THROWS_AS(group_from_json(Json::parse(R"({"table": [[0, 1], [1, 1]]})")), std::invalid_argument);
    CHECK_THROWS_AS(group_from_json(Json::parse(R"({"cayley": []})")), std::invalid_argument);

    for (const auto& e : make_pool(default_pool_names())) {
        Json doc = groupoid_document(*e.groupoid);
        GroupoidPtr back = load_groupoid(Json::parse(dump(doc)));
        CHECK(*back == *e.groupoid);
    }
    auto c3 = groupoid_from_json(Json::parse(R"({"group": "C3"})"));
    CHECK(c3->morphism_count() == 3);
    CHECK(groupoid_from_json(Json("C2+1"))->object_count() == 2);
    // a missing composite
    Json bad = groupoid_to_json(*groupoid_by_name("BC2"));
    bad["compose"].erase(bad["compose"].size() - 1);
    CHECK_THROWS_AS(groupoid_from_json(bad), std::invalid_argument);
    CHECK_THROWS_AS(load_groupoid(Json::parse(R"({"kind": "span"})")), std::invalid_argument);
    CHECK_THROWS_AS(load_groupoid(Json::parse(R"({"kind": "groupoid", "objects": "x"})")), std::invalid_argument);
}

TEST_CASE("spans, bisets and functors round-trip")
{
    auto pool = make_pool(default_pool_names());
    std::vector<GroupoidPtr> apexes;
    for (const auto& e : pool)
        apexes.push_back(e.groupoid);
    Rng rng(5);
    int spans = 0;
    for (int i = 0; i < 30; ++i) {
        auto h = pool[rng() % pool.size()].groupoid, g = pool[rng() % pool.size()].groupoid;
        if (auto s = random_span(h, g, apexes, rng)) {
            Span back = load_span(Json::parse(dump(span_document(*s))));
            CHECK(*back.apex == *s->apex);
            CHECK(back.left == s->left);
            CHECK(back.right == s->right);
            ++spans;
        }
        BisetPtr u = random_biset(h, g, rng);
        BisetPtr v = load_biset(Json::parse(dump(biset_document(*u))));
        CHECK(*u == *v);
        if (auto f = random_functor(h, g, rng))
            CHECK(load_functor(functor_document(*f)) == *f);
    }
    CHECK(spans > 10);

    // the composite of a loaded span is a span document again
    Span s = identity_span(groupoid_by_name("BS3"));
    Json doc = span_document(compose_spans(s, s));
    CHECK(load_span(doc).apex->object_count() >= 1);

    Json broken = biset_document(*identity_biset(groupoid_by_name("BC2")));
    broken["target_action"][1][0] = Json::array({0, 0});
    CHECK_THROWS_AS(load_biset(broken), std::invalid_argument);
    Json short_sizes = biset_document(*identity_biset(groupoid_by_name("BC2")));
    short_sizes["sizes"] = Json::array();
    CHECK_THROWS_AS(load_biset(short_sizes), std::invalid_argument);
}

TEST_CASE("G-sets, G-spans and matrices round-trip")
{
    Group s3 = group_by_name("S3");
    auto subs = all_subgroups(s3);
    GSet x = GSet::cosets(s3, subs[1]);
    GSet y = disjoint_union(GSet::point(s3), GSet::cosets(s3, subs[0]));
    CHECK(load_gset(gset_document(x)) == x);
    GSpanBasis b = gspan_hom_basis(x, y);
    REQUIRE(b.size() > 0);
    for (const auto& s : b.elements) {
        GSpan back = load_gspan(Json::parse(dump(gspan_document(s))));
        CHECK(gspan_iso(back, s).has_value());
        Matrix m = yoshida_matrix(s);
        CHECK(load_matrix(Json::parse(dump(matrix_document(m)))) == m);
    }
    Matrix q(1, 2);
    q(0, 0) = Rational(-3, 4);
    CHECK(load_matrix(matrix_document(q)) == q);

    Json bad = gspan_document(b.elements[0]);
    bad["left"][0] = 99;
    CHECK_THROWS_AS(load_gspan(bad), std::invalid_argument);
    Json m = matrix_document(q);
    m["entries"][0][0] = "1/0";
    CHECK_THROWS_AS(load_matrix(m), std::invalid_argument);
}

TEST_CASE("groupoid names")
{
    CHECK(canonical_groupoid_name("C2") == "BC2");
    CHECK(canonical_groupoid_name("1") == "1");
    CHECK(canonical_groupoid_name("C2+1") == "BC2+1");
    CHECK(canonical_groupoid_name("BS3 + C2") == "BS3+BC2");
    CHECK_THROWS_AS(canonical_groupoid_name("C2++1"), std::invalid_argument);
    CHECK_THROWS_AS(resolve_groupoid("Z5"), std::invalid_argument);
}
