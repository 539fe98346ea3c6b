#include "bispan/span.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

namespace bispan {

namespace {
    [[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

    // Natural iso between functors that agree on objects, with identity components.
    NaturalIso identity_between(const Functor& from, const Functor& to)
    {
        if (from.on_objects != to.on_objects)
            fail("identity 2-cell: functors differ on objects");
        NaturalIso n{from, to, std::vector<int>(from.on_objects.size())};
        for (std::size_t x = 0; x < n.components.size(); ++x)
            n.components[x] = from.target->identity(from.on_objects[x]);
        return n;
    }

    void check_parallel(const Span& s1, const Span& s2)
    {
        if (!same_groupoid(s1.source(), s2.source()) || !same_groupoid(s1.target(), s2.target()))
            fail("spans are not parallel");
    }
}

void Span::validate() const
{
    if (!same_groupoid(left.source, apex) || !same_groupoid(right.source, apex))
        fail("span: legs do not start at the apex");
    left.validate();
    right.validate();
}

std::string Span::summary() const
{
    std::ostringstream out;
    out << "apex: " << apex->summary() << "; left leg into " << source()->summary() << "; right leg into "
        << target()->summary();
    return out.str();
}

void SpanTwoCell::validate() const
{
    from.validate();
    to.validate();
    check_parallel(from, to);
    f.validate();
    if (!same_groupoid(f.source, from.apex) || !same_groupoid(f.target, to.apex))
        fail("span 2-cell: f does not map apex to apex");
    if (!(beta.from == from.left) || !(beta.to == compose(to.left, f)))
        fail("span 2-cell: beta has the wrong shape");
    if (!(alpha.from == compose(to.right, f)) || !(alpha.to == from.right))
        fail("span 2-cell: alpha has the wrong shape");
    beta.validate();
    alpha.validate();
}

Span identity_span(const GroupoidPtr& g)
{
    auto id = identity_functor(g);
    return {g, id, id};
}

Span embed(const Functor& u, Variance v)
{
    auto id = identity_functor(u.source);
    if (v == Variance::covariant)
        return {u.source, id, u};
    return {u.source, u, id};
}

Span empty_span(const GroupoidPtr& source, const GroupoidPtr& target)
{
    auto e = empty_groupoid();
    return {e, Functor{e, source, {}, {}}, Functor{e, target, {}, {}}};
}

SpanComposite compose_spans_detailed(const Span& outer, const Span& inner)
{
    if (!same_groupoid(inner.target(), outer.source()))
        fail("compose_spans: middle groupoids differ");
    SpanComposite c{{}, iso_comma(inner.right, outer.left)};
    c.span = Span{c.square.apex, compose(inner.left, c.square.p), compose(outer.right, c.square.q)};
    return c;
}

Span compose_spans(const Span& outer, const Span& inner) { return compose_spans_detailed(outer, inner).span; }

std::vector<Span> decompose_span(const Span& s)
{
    std::vector<Span> parts;
    for (int c = 0; c < s.apex->component_count(); ++c) {
        auto sub = full_subgroupoid(s.apex, s.apex->component_objects(c));
        parts.push_back({sub.groupoid, compose(s.left, sub.inclusion), compose(s.right, sub.inclusion)});
    }
    return parts;
}

Span sum_spans(const Span& s1, const Span& s2)
{
    check_parallel(s1, s2);
    auto apex = disjoint_union(s1.apex, s2.apex);
    return {apex, copair(s1.left, s2.left, apex), copair(s1.right, s2.right, apex)};
}

Span tensor_spans(const Span& s1, const Span& s2)
{
    auto apex = product(s1.apex, s2.apex);
    auto src = product(s1.source(), s2.source());
    auto tgt = product(s1.target(), s2.target());
    return {apex, product_functor(s1.left, s2.left, apex, src), product_functor(s1.right, s2.right, apex, tgt)};
}

// ---- 2-cells ---------------------------------------------------------------

SpanTwoCell identity_two_cell(const Span& s)
{
    auto id = identity_functor(s.apex);
    return {s, s, id, identity_between(s.left, compose(s.left, id)), identity_between(compose(s.right, id), s.right)};
}

SpanTwoCell vertical(const SpanTwoCell& second, const SpanTwoCell& first)
{
    // beta'' = (beta' f) • beta,  alpha'' = alpha • (alpha' f)
    SpanTwoCell r{first.from, second.to, compose(second.f, first.f), {}, {}};
    r.beta = vertical(whisker_right(second.beta, first.f), first.beta);
    r.alpha = vertical(first.alpha, whisker_right(second.alpha, first.f));
    r.beta.to = compose(r.to.left, r.f);
    r.alpha.from = compose(r.to.right, r.f);
    return r;
}

SpanTwoCell associator(const Span& s1, const Span& s2, const Span& s3)
{
    auto c12 = compose_spans_detailed(s1, s2);
    auto left = compose_spans_detailed(c12.span, s3);
    auto c23 = compose_spans_detailed(s2, s3);
    auto right = compose_spans_detailed(s1, c23.span);
    const IsoComma& L = left.square;  // (y3, (y2, y1, g1), g2)
    const IsoComma& R = right.square; // ((y3, y2, g2), y1, g1)
    const IsoComma& P12 = c12.square;
    const IsoComma& P23 = c23.square;

    int n = L.apex->object_count(), m = L.apex->morphism_count();
    Functor f{L.apex, R.apex, std::vector<int>(n), std::vector<int>(m)};
    for (int i = 0; i < n; ++i) {
        auto [y3, z, g2] = L.objects[i];
        auto [y2, y1, g1] = P12.objects[z];
        f.on_objects[i] = R.find_object(P23.find_object(y3, y2, g2), y1, g1);
    }
    for (int k = 0; k < m; ++k) {
        auto [phi3, zeta] = L.morphisms[k];
        auto [phi2, phi1] = P12.morphisms[zeta];
        int i = L.apex->src(k);
        auto [y3, z, g2] = L.objects[i];
        auto [y2, y1, g1] = P12.objects[z];
        (void)y1;
        (void)g1;
        int w = P23.find_object(y3, y2, g2);
        f.on_morphisms[k] = R.find_morphism(f.on_objects[i], P23.find_morphism(w, phi3, phi2), phi1);
    }
    return {left.span, right.span, f, identity_between(left.span.left, compose(right.span.left, f)),
            identity_between(compose(right.span.right, f), left.span.right)};
}

SpanTwoCell left_unitor(const Span& s)
{
    auto c = compose_spans_detailed(identity_span(s.target()), s);
    const auto& p = c.square.p;
    SpanTwoCell t{c.span, s, p, identity_between(c.span.left, compose(s.left, p)), {}};
    // alpha : a p => q has components gamma
    t.alpha = NaturalIso{compose(s.right, p), c.span.right, c.square.gamma.components};
    return t;
}

SpanTwoCell right_unitor(const Span& s)
{
    auto c = compose_spans_detailed(s, identity_span(s.source()));
    const auto& q = c.square.q;
    SpanTwoCell t{c.span, s, q, {}, identity_between(compose(s.right, q), c.span.right)};
    // beta : p => b q has components gamma
    t.beta = NaturalIso{c.span.left, compose(s.left, q), c.square.gamma.components};
    return t;
}

// ---- isomorphism -----------------------------------------------------------

ConnectedSpanData connected_span_data(const Span& s, int apex_component)
{
    const Groupoid& S = *s.apex;
    const Groupoid& H = *s.source();
    const Groupoid& G = *s.target();
    ConnectedSpanData d;
    d.apex_component = apex_component;
    d.s0 = S.basepoint(apex_component);
    d.apex_group = S.vertex_group(d.s0);
    int hb = s.left.object(d.s0), gb = s.right.object(d.s0);
    d.h_component = H.component(hb);
    d.g_component = G.component(gb);
    d.h_path = H.path_from_base(hb);
    d.g_path = G.path_from_base(gb);
    auto vh = H.vertex_group(H.basepoint(d.h_component));
    auto vg = G.vertex_group(G.basepoint(d.g_component));
    int order = d.apex_group.group.order();
    d.to_h.resize(order);
    d.to_g.resize(order);
    for (int k = 0; k < order; ++k) {
        int mor = d.apex_group.elements[k];
        d.to_h[k] = vh.index_of[H.compose(H.inverse(d.h_path), s.left(mor), d.h_path)];
        d.to_g[k] = vg.index_of[G.compose(G.inverse(d.g_path), s.right(mor), d.g_path)];
    }
    return d;
}

SpanFingerprint fingerprint(const ConnectedSpanData& d)
{
    std::set<int> h(d.to_h.begin(), d.to_h.end()), g(d.to_g.begin(), d.to_g.end());
    std::set<std::pair<int, int>> joint;
    for (std::size_t k = 0; k < d.to_h.size(); ++k)
        joint.insert({d.to_h[k], d.to_g[k]});
    return {d.h_component, d.g_component, d.apex_group.group.order(), static_cast<int>(h.size()),
            static_cast<int>(g.size()), static_cast<int>(joint.size())};
}

namespace {

    struct ComponentMatch
    {
        Homomorphism theta;
        int y; // in Aut(h0)
        int x; // in Aut(g0)
    };

    // y with target[theta(k)] * y == y * source[k] for all generators k.
    std::optional<int> find_intertwiner(const Group& aut, const Group& k, const Homomorphism& source,
                                        const Homomorphism& target, const Homomorphism& theta)
    {
        for (int y = 0; y < aut.order(); ++y) {
            bool ok = true;
            for (int gen : k.generators())
                if (aut.mul(target[theta[gen]], y) != aut.mul(y, source[gen])) {
                    ok = false;
                    break;
                }
            if (ok)
                return y;
        }
        return std::nullopt;
    }

    std::optional<ComponentMatch> match_components(const Span& s1, const ConnectedSpanData& d1,
                                                   const ConnectedSpanData& d2)
    {
        if (d1.h_component != d2.h_component || d1.g_component != d2.g_component)
            return std::nullopt;
        const Groupoid& H = *s1.source();
        const Groupoid& G = *s1.target();
        auto vh = H.vertex_group(H.basepoint(d1.h_component));
        auto vg = G.vertex_group(G.basepoint(d1.g_component));
        const Group& k = d1.apex_group.group;
        for (const auto& theta : all_isomorphisms(k, d2.apex_group.group)) {
            auto y = find_intertwiner(vh.group, k, d1.to_h, d2.to_h, theta);
            if (!y)
                continue;
            auto x = find_intertwiner(vg.group, k, d1.to_g, d2.to_g, theta);
            if (!x)
                continue;
            return ComponentMatch{theta, *y, *x};
        }
        return std::nullopt;
    }

} // namespace

std::optional<SpanTwoCell> find_span_iso(const Span& s1, const Span& s2)
{
    check_parallel(s1, s2);
    const Groupoid& S1 = *s1.apex;
    const Groupoid& S2 = *s2.apex;
    if (S1.component_count() != S2.component_count())
        return std::nullopt;
    const Groupoid& H = *s1.source();
    const Groupoid& G = *s1.target();
    int nc = S1.component_count();
    std::vector<ConnectedSpanData> d1, d2;
    std::vector<SpanFingerprint> f1, f2;
    for (int c = 0; c < nc; ++c) {
        d1.push_back(connected_span_data(s1, c));
        d2.push_back(connected_span_data(s2, c));
        f1.push_back(fingerprint(d1.back()));
        f2.push_back(fingerprint(d2.back()));
    }

    Functor f{s1.apex, s2.apex, std::vector<int>(S1.object_count()), std::vector<int>(S1.morphism_count())};
    NaturalIso beta{s1.left, {}, std::vector<int>(S1.object_count())};
    NaturalIso alpha{{}, s1.right, std::vector<int>(S1.object_count())};
    std::vector<char> used(nc, 0);
    // isomorphism of connected spans is an equivalence relation, so greedy matching suffices
    for (int c = 0; c < nc; ++c) {
        std::optional<ComponentMatch> found;
        int c2 = 0;
        for (; c2 < nc; ++c2) {
            if (used[c2] || f1[c] != f2[c2])
                continue;
            found = match_components(s1, d1[c], d2[c2]);
            if (found)
                break;
        }
        if (!found)
            return std::nullopt;
        used[c2] = 1;
        const auto& a = d1[c];
        const auto& b = d2[c2];
        auto vh = H.vertex_group(H.basepoint(a.h_component));
        auto vg = G.vertex_group(G.basepoint(a.g_component));
        // w : b(s0) -> b'(s0'),  v : a(s0) -> a'(s0')
        int w = H.compose(b.h_path, vh.elements[found->y], H.inverse(a.h_path));
        int v = G.compose(b.g_path, vg.elements[found->x], G.inverse(a.g_path));
        for (int o : S1.component_objects(c)) {
            f.on_objects[o] = b.s0;
            int po = S1.path_from_base(o);
            beta.components[o] = H.compose(w, H.inverse(s1.left(po)));
            alpha.components[o] = G.compose(s1.right(po), G.inverse(v));
            for (int m : S1.out(o)) {
                int pt = S1.path_from_base(S1.tgt(m));
                int k = a.apex_group.index_of[S1.compose(S1.inverse(pt), m, po)];
                f.on_morphisms[m] = b.apex_group.elements[found->theta[k]];
            }
        }
    }
    beta.to = compose(s2.left, f);
    alpha.from = compose(s2.right, f);
    return SpanTwoCell{s1, s2, f, beta, alpha};
}

bool spans_isomorphic(const Span& s1, const Span& s2) { return find_span_iso(s1, s2).has_value(); }

} // namespace bispan
