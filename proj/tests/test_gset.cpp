#include "doctest.h"

#include "bispan/gset.hpp"
#include "bispan/pool.hpp"

#include <numeric>
#include <optional>
#include <random>
#include <set>

using namespace bispan;

namespace {

std::vector<int> everything(const Group& g)
{
    std::vector<int> v(static_cast<std::size_t>(g.order()));
    std::iota(v.begin(), v.end(), 0);
    return v;
}

// Brute iso of transitive spans: try every image of one apex point.
bool brute_transitive_iso(const GSpan& a, const GSpan& b)
{
    if (a.apex.size() != b.apex.size())
        return false;
    const Group& g = a.apex.group();
    for (int t = 0; t < b.apex.size(); ++t) {
        std::vector<int> phi(static_cast<std::size_t>(a.apex.size()), -1);
        bool ok = true;
        for (int e = 0; e < g.order() && ok; ++e) {
            int s = a.apex.act(e, 0), img = b.apex.act(e, t);
            if (phi[s] >= 0 && phi[s] != img)
                ok = false;
            phi[s] = img;
        }
        if (!ok)
            continue;
        std::set<int> image(phi.begin(), phi.end());
        if (image.size() != phi.size())
            continue;
        for (int s = 0; s < a.apex.size() && ok; ++s)
            ok = a.left[s] == b.left[phi[s]] && a.right[s] == b.right[phi[s]];
        if (ok)
            return true;
    }
    return false;
}

// Transitive spans over X x Y from every subgroup (not just representatives),
// every compatible pair of points, classified by brute isomorphism.
std::size_t brute_basis_size(const GSet& x, const GSet& y)
{
    const Group& g = x.group();
    std::vector<GSpan> classes;
    for (const Subgroup& l : all_subgroups(g)) {
        GSet apex = GSet::cosets(g, l);
        for (int a = 0; a < x.size(); ++a)
            for (int b = 0; b < y.size(); ++b) {
                // gl -> g a is well defined iff l fixes a
                std::vector<int> left(static_cast<std::size_t>(apex.size()), -1), right = left;
                bool ok = true;
                for (int e = 0; e < g.order() && ok; ++e) {
                    int c = apex.act(e, 0);
                    if (left[c] >= 0 && (left[c] != x.act(e, a) || right[c] != y.act(e, b)))
                        ok = false;
                    left[c] = x.act(e, a);
                    right[c] = y.act(e, b);
                }
                if (!ok)
                    continue;
                GSpan s{x, y, apex, left, right};
                bool fresh = true;
                for (const auto& c : classes)
                    fresh = fresh && !brute_transitive_iso(c, s);
                if (fresh)
                    classes.push_back(s);
            }
    }
    return classes.size();
}

int orbit_count_on_product(const GSet& x, const GSet& y)
{
    std::set<std::set<std::pair<int, int>>> orbits;
    for (int a = 0; a < x.size(); ++a)
        for (int b = 0; b < y.size(); ++b) {
            std::set<std::pair<int, int>> o;
            for (int e = 0; e < x.group().order(); ++e)
                o.emplace(x.act(e, a), y.act(e, b));
            orbits.insert(o);
        }
    return static_cast<int>(orbits.size());
}

// Random G-set: a sum of 1-3 coset spaces.
GSet random_gset(const Group& g, Rng& rng)
{
    auto subs = all_subgroups(g);
    GSet out = GSet::cosets(g, subs[rng() % subs.size()]);
    int extra = static_cast<int>(rng() % 3);
    for (int i = 0; i < extra; ++i)
        out = disjoint_union(out, GSet::cosets(g, subs[rng() % subs.size()]));
    return out;
}

// Random equivariant map from x: each orbit basepoint goes to a random point
// fixed by its stabilizer.
std::optional<std::vector<int>> random_map(const GSet& x, const GSet& y, Rng& rng)
{
    const Group& g = x.group();
    std::vector<int> f(static_cast<std::size_t>(x.size()), -1);
    for (int s = 0; s < x.size(); ++s) {
        if (f[s] >= 0)
            continue;
        Subgroup stab = x.stabilizer(s);
        std::vector<int> targets;
        for (int t = 0; t < y.size(); ++t)
            if (std::all_of(stab.begin(), stab.end(), [&](int e) { return y.act(e, t) == t; }))
                targets.push_back(t);
        if (targets.empty())
            return std::nullopt;
        int t = targets[rng() % targets.size()];
        for (int e = 0; e < g.order(); ++e)
            f[x.act(e, s)] = y.act(e, t);
    }
    return f;
}

GSpan random_gspan(const GSet& x, const GSet& y, Rng& rng)
{
    for (int attempt = 0; attempt < 20; ++attempt) {
        GSet apex = random_gset(x.group(), rng);
        auto l = random_map(apex, x, rng);
        auto r = random_map(apex, y, rng);
        if (l && r)
            return GSpan{x, y, apex, *l, *r};
    }
    return empty_gspan(x, y);
}

// A random G-set with a random map to y; free orbits always map.
std::pair<GSet, std::vector<int>> random_over(const GSet& y, Rng& rng)
{
    for (int attempt = 0; attempt < 20; ++attempt) {
        GSet a = random_gset(y.group(), rng);
        if (auto f = random_map(a, y, rng))
            return {a, *f};
    }
    GSet a = GSet::cosets(y.group(), {y.group().identity()});
    return {a, *random_map(a, y, rng)};
}

} // namespace

TEST_CASE("G-sets: construction and validation")
{
    Group s3 = group_by_name("S3");
    GSet pt = GSet::point(s3);
    CHECK(pt.size() == 1);
    for (const Subgroup& h : all_subgroups(s3)) {
        GSet x = GSet::cosets(s3, h);
        CHECK(x.size() * static_cast<int>(h.size()) == 6);
        CHECK(x.stabilizer(0) == h);
        int orbits = 0;
        x.orbit_labels(&orbits);
        CHECK(orbits == 1);
    }
    CHECK_THROWS_AS(GSet::build(s3, 2, [](int g, int x) { return g == 1 ? 1 - x : x; }), std::invalid_argument);
    CHECK_THROWS_AS(GSet::build(s3, 2, [](int, int) { return 5; }), std::invalid_argument);
    int r = 0;
    while (s3.element_order(r) != 3)
        ++r;
    CHECK_THROWS_AS(GSet::cosets(s3, {s3.identity(), r}), std::invalid_argument);
    GSet u = disjoint_union(GSet::cosets(s3, {0}), pt);
    CHECK(u.size() == 7);
    CHECK_THROWS_AS(disjoint_union(pt, GSet::point(cyclic_group(2))), std::invalid_argument);
}

TEST_CASE("G-spans: pull-back composition")
{
    Group c2 = cyclic_group(2);
    GSet pt = GSet::point(c2);
    GSet free = GSet::cosets(c2, {0});
    std::vector<int> to_pt(2, 0);
    GSpan ind = covariant_gspan(free, pt, to_pt);
    GSpan res = contravariant_gspan(free, pt, to_pt);
    GSpan both = gspan_compose(ind, res); // pt <- C2 -> pt
    CHECK(both.apex.size() == 2);
    GSpan twice = gspan_compose(both, both);
    CHECK(twice.apex.size() == 4);
    GSpanBasis b = gspan_hom_basis(pt, pt);
    REQUIRE(b.size() == 2);
    LinearHom e = express(b, both);
    LinearHom e2 = express(b, twice);
    CHECK(e.terms.size() == 1);
    CHECK(e2 == Rational(2) * e);
    // res∘ind is C2 x C2 over the free orbit: two free orbits
    GSpan ri = gspan_compose(res, ind);
    CHECK(ri.apex.size() == 4);
    CHECK(decompose_gspan(ri).size() == 2);

    GSpan zero = gspan_compose(both, empty_gspan(pt, pt));
    CHECK(zero.apex.size() == 0);
    CHECK(express(b, zero).is_zero());
    CHECK_THROWS_AS(gspan_compose(ind, ind), std::invalid_argument);
    CHECK_THROWS_AS(covariant_gspan(pt, free, {0}), std::invalid_argument);

    GSpan id = identity_gspan(free);
    CHECK(gspan_iso(gspan_compose(id, res), res).has_value());
    CHECK(gspan_iso(gspan_compose(res, identity_gspan(pt)), res).has_value());
}

TEST_CASE("G-spans: composition is associative and unital up to iso")
{
    Rng rng(7);
    for (const char* name : {"C2", "S3", "V4", "C4"}) {
        Group g = group_by_name(name);
        for (int trial = 0; trial < 15; ++trial) {
            GSet w = random_gset(g, rng), x = random_gset(g, rng), y = random_gset(g, rng), z = random_gset(g, rng);
            GSpan a = random_gspan(w, x, rng), b = random_gspan(x, y, rng), c = random_gspan(y, z, rng);
            GSpan l = gspan_compose(c, gspan_compose(b, a));
            GSpan r = gspan_compose(gspan_compose(c, b), a);
            auto phi = gspan_iso(l, r);
            REQUIRE(phi.has_value());
            CHECK(is_equivariant(l.apex, r.apex, *phi));
            CHECK(gspan_iso(gspan_compose(identity_gspan(x), a), a).has_value());
            CHECK(gspan_iso(gspan_compose(a, identity_gspan(w)), a).has_value());
        }
    }
}

TEST_CASE("G-span hom bases against brute force")
{
    Group c2 = cyclic_group(2);
    CHECK(gspan_hom_basis(GSet::point(c2), GSet::point(c2)).size() == 2);
    Rng rng(11);
    for (const char* name : {"C2", "C3", "S3", "V4", "C4"}) {
        Group g = group_by_name(name);
        auto subs = all_subgroups(g);
        for (const Subgroup& h : subs)
            for (const Subgroup& k : subs) {
                GSet x = GSet::cosets(g, h), y = GSet::cosets(g, k);
                GSpanBasis b = gspan_hom_basis(x, y);
                CHECK(b.size() == brute_basis_size(x, y));
                for (std::size_t i = 0; i < b.size(); ++i) {
                    CHECK(express(b, b.elements[i]) == LinearHom::basis(static_cast<int>(i)));
                    for (std::size_t j = i + 1; j < b.size(); ++j)
                        CHECK_FALSE(brute_transitive_iso(b.elements[i], b.elements[j]));
                }
            }
        for (int trial = 0; trial < 10; ++trial) {
            GSet x = random_gset(g, rng), y = random_gset(g, rng);
            GSpanBasis b = gspan_hom_basis(x, y);
            GSpan s = random_gspan(x, y, rng);
            LinearHom e = express(b, s);
            Rational total = 0;
            for (const auto& [i, c] : e.terms)
                total += c;
            CHECK(total == static_cast<int>(decompose_gspan(s).size()));
            CHECK(yoshida_matrix(b, e) == yoshida_matrix(s));
        }
    }
}

TEST_CASE("Yoshida matrices")
{
    Group c2 = cyclic_group(2);
    GSet pt = GSet::point(c2);
    GSet free = GSet::cosets(c2, {0});
    CHECK(yoshida_matrix(identity_gspan(free)) == Matrix::identity(2));
    GSpan fiber = gspan_compose(covariant_gspan(free, pt, {0, 0}), contravariant_gspan(free, pt, {0, 0}));
    Matrix two(1, 1);
    two(0, 0) = 2;
    CHECK(yoshida_matrix(fiber) == two);

    Rng rng(3);
    for (const char* name : {"C2", "S3", "V4", "C4", "D4"}) {
        Group g = group_by_name(name);
        for (int trial = 0; trial < 12; ++trial) {
            GSet x = random_gset(g, rng), y = random_gset(g, rng), z = random_gset(g, rng);
            GSpan s = random_gspan(x, y, rng), t = random_gspan(y, z, rng);
            CHECK(is_equivariant(yoshida_matrix(s), x, y));
            CHECK(yoshida_matrix(gspan_compose(t, s)) == yoshida_matrix(t) * yoshida_matrix(s));
            CHECK(yoshida_matrix(gspan_sum(s, s)) == yoshida_matrix(s) + yoshida_matrix(s));
            // equivariance against every element, not just generators
            Matrix m = yoshida_matrix(s);
            for (int e = 0; e < g.order(); ++e)
                CHECK(permutation_matrix(y, e) * m == m * permutation_matrix(x, e));

            auto [a, beta] = random_over(y, rng);
            auto [b, gamma] = random_over(y, rng);
            CHECK(check_pullback_identity(a, b, y, beta, gamma));
        }
    }
}

TEST_CASE("Yoshida rank equals double cosets and the hom dimension")
{
    for (const auto& entry : small_group_catalog(12)) {
        const Group& g = entry.group;
        auto subs = all_subgroups(g);
        for (const Subgroup& h : subs)
            for (const Subgroup& k : subs) {
                YoshidaRankReport r = yoshida_rank_check(g, h, k);
                CHECK_MESSAGE(r.ok(), entry.name);
                GSet x = GSet::cosets(g, h), y = GSet::cosets(g, k);
                CHECK(r.hom_dimension == static_cast<std::size_t>(orbit_count_on_product(y, x)));
            }
    }
    Group s3 = group_by_name("S3");
    Subgroup t = generated_subgroup(s3, {s3.generators().back()});
    REQUIRE(t.size() == 2);
    // <t>\S3/<t> has 2 double cosets: <t> and the rest
    YoshidaRankReport r = yoshida_rank_check(s3, t, t);
    CHECK(r.double_cosets == 2);
    CHECK(r.rank == 2);
    CHECK(r.basis_size > r.rank);

    Group c2 = cyclic_group(2);
    YoshidaRankReport z = yoshida_rank_check(c2, {0, 1}, {0, 1}, Scalars::integer);
    CHECK(z.ok());
    CHECK(z.invariant_factors == std::vector<Integer>{1});
    CHECK_THROWS_AS(yoshida_rank_check(s3, {0, 1, 2}, t), std::invalid_argument);
    CHECK_THROWS_AS(double_coset_count(s3, t, {1}), std::invalid_argument);
}

TEST_CASE("cohomological relations generate the kernel")
{
    for (const char* name : {"C2", "C4", "V4", "S3"}) {
        Group g = group_by_name(name);
        CohomologicalReport r = cohomological_kernel_check(g, 2);
        CHECK_MESSAGE(r.ok(), name);
        CHECK(r.subgroups.size() == subgroup_class_representatives(g, everything(g)).size());
        for (const auto& rel : r.relations) {
            CHECK(rel.vanishes);
            CHECK_FALSE(rel.element.is_zero());
        }
        for (const auto& h : r.homs)
            CHECK(h.kernel_rank == h.basis_size - h.rank);
    }
    CohomologicalReport c2 = cohomological_kernel_check(cyclic_group(2));
    REQUIRE(c2.relations.size() == 1);
    CHECK(c2.relations[0].index == 2);
    // hom (C2/C2, C2/C2): basis [pt <- C2 -> pt], Id; kernel rank 1
    for (const auto& h : c2.homs)
        if (c2.subgroups[h.source].size() == 2 && c2.subgroups[h.target].size() == 2) {
            CHECK(h.basis_size == 2);
            CHECK(h.kernel_rank == 1);
        }
}

TEST_CASE("fixed-point functor")
{
    for (const char* name : {"C2", "C3", "S3", "V4", "C4", "D4", "A4"}) {
        FixedPointReport r = fixed_point_functor(group_by_name(name));
        CHECK_MESSAGE(r.ok(), name);
        for (const auto& m : r.maps) {
            if (m.kind == "ind")
                CHECK(m.factor == Rational(static_cast<long>(m.from.size() == 0 ? 0 : m.to.size() / m.from.size())));
            else
                CHECK(m.factor == 1);
        }
    }
    FixedPointReport c2 = fixed_point_functor(cyclic_group(2));
    bool saw = false;
    for (const auto& m : c2.maps)
        if (m.kind == "ind") {
            CHECK(m.factor == 2);
            saw = true;
        }
    CHECK(saw);

    Group s3 = group_by_name("S3");
    FixedPointReport r = fixed_point_functor(s3);
    saw = false;
    for (const auto& m : r.maps)
        if (m.kind == "ind" && m.to.size() == 3 && m.from.size() == 1) {
            CHECK(m.factor == 3);
            saw = true;
        }
    CHECK(saw);
}
