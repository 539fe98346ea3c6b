#include "doctest.h"

#include "bispan/linear.hpp"
#include "bispan/realization.hpp"

#include <set>

using namespace bispan;

namespace {

GroupoidPtr gp(const char* name) { return groupoid_by_name(name); }

Functor unique_functor(const GroupoidPtr& s, const GroupoidPtr& t)
{
    auto all = enumerate_functors(s, t);
    REQUIRE(all.size() == 1);
    return all.front();
}

// Subgroups up to conjugacy by closing every subset, then grouping by
// explicit conjugate sets.
int brute_subgroup_classes(const Group& g)
{
    int n = g.order();
    REQUIRE(n <= 16);
    std::set<std::vector<int>> subgroups;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> s;
        for (int x = 0; x < n; ++x)
            if (mask >> x & 1u)
                s.push_back(x);
        bool closed = true;
        for (int a : s)
            for (int b : s)
                closed = closed && (mask >> g.mul(a, b) & 1u);
        if (closed)
            subgroups.insert(s);
    }
    std::set<std::set<std::vector<int>>> classes;
    for (const auto& s : subgroups) {
        std::set<std::vector<int>> cls;
        for (int c = 0; c < n; ++c) {
            std::vector<int> t;
            for (int x : s)
                t.push_back(g.conj(c, x));
            std::sort(t.begin(), t.end());
            cls.insert(t);
        }
        classes.insert(cls);
    }
    return static_cast<int>(classes.size());
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

// Connected spans with apex BK, |K| <= bound, up to brute-force isomorphism.
int brute_span_classes(const GroupoidPtr& h, const GroupoidPtr& g, int bound)
{
    std::vector<Span> reps;
    for (const auto& k : small_group_catalog(bound)) {
        auto bk = from_group(k.group);
        auto left = enumerate_functors(bk, h);
        auto right = enumerate_functors(bk, g);
        for (const auto& b : left)
            for (const auto& a : right) {
                Span s{bk, b, a};
                bool known = false;
                for (const auto& r : reps)
                    if (r.apex->morphism_count() == bk->morphism_count() && brute_isomorphic(r, s)) {
                        known = true;
                        break;
                    }
                if (!known)
                    reps.push_back(s);
            }
    }
    return static_cast<int>(reps.size());
}

std::vector<PoolEntry> window(std::initializer_list<const char*> names)
{
    std::vector<std::string> v(names.begin(), names.end());
    return make_pool(v);
}

int find_span(const SpanBasis& b, const Span& s)
{
    auto e = express(b, s);
    REQUIRE(e.has_value());
    REQUIRE(e->terms.size() == 1);
    REQUIRE(e->terms.begin()->second == 1);
    return e->terms.begin()->first;
}

} // namespace

TEST_CASE("biset hom bases")
{
    auto one = gp("1"), c2 = gp("BC2"), s3 = gp("BS3");
    CHECK(biset_hom_basis(one, one).size() == 1);
    CHECK(biset_hom_basis(one, c2).size() == 2);
    CHECK(biset_hom_basis(c2, c2).size() == 5);

    // one class per subgroup class of Aut(g0) x Aut(h0), per component pair
    for (auto [h, g] : {std::pair{"BC2", "BS3"}, {"BC3", "BC4"}, {"BV4", "BC2"}, {"BC2+1", "BC2"}}) {
        auto hg = gp(h), gg = gp(g);
        int expected = 0;
        for (int hc = 0; hc < hg->component_count(); ++hc)
            for (int gc = 0; gc < gg->component_count(); ++gc)
                expected += brute_subgroup_classes(direct_product(gg->vertex_group(gg->basepoint(gc)).group,
                                                                  hg->vertex_group(hg->basepoint(hc)).group));
        CHECK(static_cast<int>(biset_hom_basis(hg, gg).size()) == expected);
    }

    auto b = biset_hom_basis(c2, s3);
    for (std::size_t i = 0; i < b.size(); ++i) {
        CHECK(is_transitive(*b.elements[i]));
        for (std::size_t j = i + 1; j < b.size(); ++j)
            CHECK_FALSE(bisets_isomorphic(b.elements[i], b.elements[j]).has_value());
    }

    // completeness: random bisets are sums of basis elements
    Rng rng(5);
    for (int i = 0; i < 30; ++i) {
        auto u = random_biset(c2, s3, rng, 3);
        auto counts = express(b, u);
        int orbits = 0;
        biset_orbits(*u, &orbits);
        int total = 0;
        BisetPtr sum = empty_biset(c2, s3);
        for (std::size_t j = 0; j < counts.size(); ++j)
            for (int c = 0; c < counts[j]; ++c) {
                sum = sum_bisets(sum, b.elements[j]);
                ++total;
            }
        CHECK(total == orbits);
        CHECK(bisets_isomorphic(sum, u).has_value());
    }
}

TEST_CASE("span hom bases")
{
    auto one = gp("1"), c2 = gp("BC2");
    CHECK(span_hom_basis(one, one, 1).size() == 1);
    CHECK(span_hom_basis(one, one, 2).size() == 2);
    CHECK(span_hom_basis(one, c2, 2).size() == 3);
    CHECK_THROWS_AS(span_hom_basis(one, one, 0), std::invalid_argument);

    struct Case
    {
        const char* h;
        const char* g;
        int bound;
    };
    for (auto c : {Case{"1", "1", 4}, Case{"1", "BC2", 4}, Case{"BC2", "BC2", 4}, Case{"BC2", "BC3", 6},
                   Case{"1", "BS3", 6}, Case{"BC2+1", "BC2", 2}, Case{"BV4", "1", 4}}) {
        auto h = gp(c.h), g = gp(c.g);
        auto b = span_hom_basis(h, g, c.bound);
        CHECK_MESSAGE(static_cast<int>(b.size()) == brute_span_classes(h, g, c.bound), c.h, " -> ", c.g);
        for (std::size_t i = 0; i < b.size(); ++i) {
            b.elements[i].validate();
            CHECK(find_span(b, b.elements[i]) == static_cast<int>(i));
        }
    }

    // pairwise non-isomorphic, certified by the span decider and by brute force
    auto b = span_hom_basis(c2, c2, 4);
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i + 1; j < b.size(); ++j) {
            CHECK_FALSE(spans_isomorphic(b.elements[i], b.elements[j]));
            if (b.elements[i].apex->morphism_count() == b.elements[j].apex->morphism_count())
                CHECK_FALSE(brute_isomorphic(b.elements[i], b.elements[j]));
        }

    // a non-skeletal apex with 8 morphisms is still inside bound 2
    auto r = span_from_biset(identity_biset(c2));
    REQUIRE(r.span.apex->morphism_count() == 8);
    int k = find_span(span_hom_basis(c2, c2, 2), r.span);
    CHECK(k == find_span(span_hom_basis(c2, c2, 2), identity_span(c2)));
    CHECK_FALSE(express(span_hom_basis(one, one, 1), Span{c2, unique_functor(c2, one), unique_functor(c2, one)}));

    // sums decompose into their summands
    auto bb = span_hom_basis(one, c2, 2);
    auto e = express(bb, sum_spans(bb.elements[0], sum_spans(bb.elements[2], bb.elements[0])));
    REQUIRE(e.has_value());
    CHECK(*e == LinearHom{{{0, Rational(2)}, {2, Rational(1)}}});
    CHECK(express(bb, empty_span(one, c2))->is_zero());
}

TEST_CASE("realization matrices")
{
    auto one = gp("1"), c2 = gp("BC2"), s3 = gp("BS3");
    auto m = matrix_of_realization(span_hom_basis(one, one, 2), biset_hom_basis(one, one));
    CHECK(m == Matrix::from_rows({{1, 1}}, 2));

    // column j is the transitive biset whose stabilizer is the image of chi
    for (auto [hn, gn, bound] : {std::tuple{"BC2", "BC2", 4}, {"1", "BS3", 6}, {"BC2", "BC3", 6}, {"BC2+1", "BC2", 4}}) {
        auto h = gp(hn), g = gp(gn);
        auto sb = span_hom_basis(h, g, bound);
        auto bb = biset_hom_basis(h, g);
        auto mat = matrix_of_realization(sb, bb);
        for (std::size_t j = 0; j < sb.size(); ++j) {
            const auto& key = sb.keys[j];
            Group a = direct_product(g->vertex_group(g->basepoint(key.g_component)).group,
                                     h->vertex_group(h->basepoint(key.h_component)).group);
            std::set<int> image(key.chi.begin(), key.chi.end());
            Subgroup l(image.begin(), image.end());
            int row = bb.index.at(TransitiveKey{key.h_component, key.g_component, canonical_conjugate(a, l)});
            for (std::size_t i = 0; i < bb.size(); ++i)
                CHECK(mat(i, j) == (static_cast<int>(i) == row ? 1 : 0));
        }
        // full row rank once the bound covers every stabilizer
        CHECK(rank(mat) == bb.size());
    }

    // the identity span column is the identity biset
    auto sb = span_hom_basis(c2, c2, 2);
    auto bb = biset_hom_basis(c2, c2);
    auto mat = matrix_of_realization(sb, bb);
    int j = find_span(sb, identity_span(c2));
    auto id = express(bb, identity_biset(c2));
    for (std::size_t i = 0; i < bb.size(); ++i)
        CHECK(mat(i, j) == id[i]);

    // every transitive biset is hit by its own span
    auto sb4 = span_hom_basis(c2, s3, 12);
    auto bs = biset_hom_basis(c2, s3);
    auto full = matrix_of_realization(sb4, bs);
    for (std::size_t i = 0; i < bs.size(); ++i) {
        auto r = span_from_biset(bs.elements[i]);
        CHECK(r.bijective);
        int col = find_span(sb4, r.span);
        for (std::size_t row = 0; row < bs.size(); ++row)
            CHECK(full(row, col) == (row == i ? 1 : 0));
    }
}

TEST_CASE("key-level composition agrees with span composition")
{
    TruncatedSpans t(window({"1", "BC2", "BC3", "BS3", "1+1"}), 6);
    Rng rng(9);
    std::uniform_int_distribution<int> pick(0, t.object_count() - 1);
    int checked = 0, outside = 0;
    for (int i = 0; i < 400; ++i) {
        int x = pick(rng), y = pick(rng), z = pick(rng);
        int ns = static_cast<int>(t.basis(x, y).size()), nt = static_cast<int>(t.basis(y, z).size());
        if (!ns || !nt)
            continue;
        int s = std::uniform_int_distribution<int>(0, ns - 1)(rng);
        int u = std::uniform_int_distribution<int>(0, nt - 1)(rng);
        auto fast = t.compose_keys(x, y, z, u, s);
        auto slow = t.compose_by_spans(x, y, z, u, s);
        CHECK(fast.has_value() == slow.has_value());
        if (fast && slow)
            CHECK(*fast == *slow);
        if (!slow)
            ++outside;
        ++checked;
    }
    CHECK(checked > 300);
    CHECK(outside > 0);
}

TEST_CASE("linear composition is bilinear and associative")
{
    auto w = window({"1", "BC2", "BC3"});
    TruncatedSpans spans(w, 8);
    TruncatedBisets bisets(w);
    Rng rng(13);
    std::uniform_int_distribution<int> pick(0, 2);
    std::uniform_int_distribution<int> coef(-3, 3);
    auto random_hom = [&](std::size_t n, int terms = 2) {
        LinearHom h;
        for (int k = 0; k < terms; ++k) {
            int c = coef(rng);
            if (c)
                h = h + LinearHom{{{std::uniform_int_distribution<int>(0, static_cast<int>(n) - 1)(rng), Rational(c)}}};
        }
        return h;
    };
    int span_triples = 0;
    for (int i = 0; i < 300 && span_triples < 40; ++i) {
        int a = pick(rng), b = pick(rng), c = pick(rng), d = pick(rng);
        auto f = random_hom(bisets.basis(a, b).size());
        auto g = random_hom(bisets.basis(b, c).size());
        auto h = random_hom(bisets.basis(c, d).size());
        auto g2 = random_hom(bisets.basis(b, c).size());
        CHECK(bisets.compose(a, c, d, h, bisets.compose(a, b, c, g, f)) ==
              bisets.compose(a, b, d, bisets.compose(b, c, d, h, g), f));
        CHECK(bisets.compose(a, b, c, g + g2, f) == bisets.compose(a, b, c, g, f) + bisets.compose(a, b, c, g2, f));
        CHECK(bisets.compose(a, b, c, Rational(-2) * g, f) == Rational(-2) * bisets.compose(a, b, c, g, f));

        auto sf = random_hom(spans.basis(a, b).size(), 1);
        auto sg = random_hom(spans.basis(b, c).size(), 1);
        auto sh = random_hom(spans.basis(c, d).size(), 1);
        auto gf = spans.compose(a, b, c, sg, sf);
        auto hg = spans.compose(b, c, d, sh, sg);
        if (gf && hg) {
            auto l = spans.compose(a, c, d, sh, *gf);
            auto r = spans.compose(a, b, d, *hg, sf);
            if (l && r) {
                CHECK(*l == *r);
                ++span_triples;
            }
        }
    }
    CHECK(span_triples > 20);
}

TEST_CASE("deflative kernel")
{
    auto small = deflative_kernel_check(window({"1", "BC2"}), 2);
    REQUIRE(small.elements.size() == 1);
    CHECK(small.ok());
    const auto& h11 = small.homs[0];
    CHECK(h11.span_rank == 2);
    CHECK(h11.kernel_rank == 1);
    CHECK(h11.ideal_rank == 1);
    CHECK(h11.kernel_in_ideal);
    // the kernel is spanned by [BC2] - [1]
    auto sb = span_hom_basis(gp("1"), gp("1"), 2);
    auto to_one = unique_functor(gp("BC2"), gp("1"));
    int i1 = find_span(sb, identity_span(gp("1")));
    int ic2 = find_span(sb, Span{gp("BC2"), to_one, to_one});
    const auto& k = h11.kernel[0];
    CHECK(k[i1] == -k[ic2]);
    CHECK(k[i1] != 0);
    CHECK(small.elements[0].element == LinearHom{{{ic2, Rational(1)}, {i1, Rational(-1)}}});

    auto trivial = deflative_kernel_check(window({"1"}), 1);
    CHECK(trivial.homs[0].kernel_rank == 0);
    CHECK(trivial.ok());

    auto integer = deflative_kernel_check(window({"1", "BC2"}), 2, Scalars::integer);
    CHECK(integer.homs[0].invariant_factors == std::vector<Integer>{1});

    // generators restricted to window vertex groups miss the C3 apex
    auto narrow = deflative_kernel_check(window({"1", "BC2"}), 3, Scalars::rational, 1,
                                         DeflativeGenerators::window_groups);
    CHECK(narrow.homs[0].kernel_rank == 2);
    CHECK_FALSE(narrow.homs[0].kernel_in_ideal);
    CHECK(narrow.homs[0].ideal_in_kernel);
    auto wide = deflative_kernel_check(window({"1", "BC2"}), 3);
    CHECK(wide.ok());

    auto mid = deflative_kernel_check(window({"1", "BC2", "BC4", "BV4"}), 4, Scalars::rational, 2);
    CHECK(mid.ok());
    for (const auto& h : mid.homs)
        CHECK(h.ideal_rank == h.kernel_rank);
}

TEST_CASE("semi-additivity, tensor and functoriality")
{
    auto r = verify_semiadditive(window({"1", "BC2", "BC3"}));
    CHECK(r.ok());
    CHECK(r.cases == 9 * 11);

    auto t = verify_tensor_functor(window({"1", "BC2", "BC3", "1+1"}), 4, 40, 3);
    CHECK(t.ok());
    CHECK(t.cases > 40);

    // s = s' = (1 <- BC2 -> 1)
    auto one = gp("1"), c2 = gp("BC2");
    auto to_one = unique_functor(c2, one);
    Span defl{c2, to_one, to_one};
    auto lhs = realize_span(tensor_spans(defl, defl))->result();
    CHECK(lhs->total_size() == 1);
    CHECK(bisets_isomorphic(lhs, tensor_bisets(identity_biset(one), identity_biset(one))).has_value());

    auto w = window({"1", "BC2", "BV4", "BS3"});
    TruncatedSpans spans(w, 6);
    TruncatedBisets bisets(w);
    auto f = verify_realization_functorial(spans, bisets, 60, 8);
    CHECK(f.ok());
    CHECK(f.cases > 60);
}

TEST_CASE("Burnside Green functor")
{
    auto a = burnside_green_functor(window({"1", "BC2", "BS3"}), 6);
    CHECK(a.values[0].size() == 1);
    CHECK(a.values[1].size() == 2);
    CHECK(a.values[2].size() == 4);
    auto sb = span_hom_basis(gp("1"), gp("1"), 6);
    auto to_one = unique_functor(gp("BC2"), gp("1"));
    int defl = find_span(sb, Span{gp("BC2"), to_one, to_one});
    bool seen = false;
    for (const auto& act : a.actions)
        if (act.source == 0 && act.target == 0 && act.span == defl) {
            CHECK(act.matrix == Matrix::identity(1));
            seen = true;
        }
    CHECK(seen);
    // identity spans act as identities
    for (int x = 0; x < 3; ++x) {
        auto b = span_hom_basis(a.values[x].target, a.values[x].target, 6);
        int id = find_span(b, identity_span(a.values[x].target));
        for (const auto& act : a.actions)
            if (act.source == x && act.target == x && act.span == id)
                CHECK(act.matrix == Matrix::identity(a.values[x].size()));
    }
}
