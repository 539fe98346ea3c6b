#include "bispan/realization.hpp"

#include <sstream>
#include <stdexcept>

namespace bispan {

namespace {
    [[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

    using Tuple = BisetChain::Tuple;

    int pos(const Groupoid& g, int f) { return g.pos_in_hom(f); }
    int at(const Groupoid& g, int a, int b, int x) { return g.hom(a, b)[x]; }

    std::vector<BisetPtr> with_window(const BisetChain& c, int i, int j, const std::vector<BisetPtr>& repl)
    {
        std::vector<BisetPtr> f(c.factors().begin(), c.factors().begin() + i);
        f.insert(f.end(), repl.begin(), repl.end());
        f.insert(f.end(), c.factors().begin() + j, c.factors().end());
        return f;
    }

    ChainPtr single(const BisetPtr& b) { return make_chain({b}); }
} // namespace

BisetPtr realize_functor(const Functor& u, Variance v)
{
    const Groupoid& H = *u.source;
    const Groupoid& G = *u.target;
    int nh = H.object_count(), ng = G.object_count();
    if (v == Variance::covariant) {
        // (h, g) -> G(u h, g)
        std::vector<int> sizes(static_cast<std::size_t>(nh) * ng);
        for (int h = 0; h < nh; ++h)
            for (int g = 0; g < ng; ++g)
                sizes[static_cast<std::size_t>(h) * ng + g] = static_cast<int>(G.hom(u.object(h), g).size());
        return make_biset(Biset::build(
            u.source, u.target, sizes,
            [&](int alpha, int h, int x) { return pos(G, G.compose(alpha, at(G, u.object(h), G.src(alpha), x))); },
            [&](int beta, int g, int x) { return pos(G, G.compose(at(G, u.object(H.tgt(beta)), g, x), u(beta))); }));
    }
    // (g, h) -> G(g, u h)
    std::vector<int> sizes(static_cast<std::size_t>(ng) * nh);
    for (int g = 0; g < ng; ++g)
        for (int h = 0; h < nh; ++h)
            sizes[static_cast<std::size_t>(g) * nh + h] = static_cast<int>(G.hom(g, u.object(h)).size());
    return make_biset(Biset::build(
        u.target, u.source, sizes,
        [&](int beta, int g, int x) { return pos(G, G.compose(u(beta), at(G, g, u.object(H.src(beta)), x))); },
        [&](int alpha, int h, int x) { return pos(G, G.compose(at(G, G.tgt(alpha), u.object(h), x), alpha)); }));
}

// ---- pasting -----------------------------------------------------------------

Pasting::Pasting(ChainPtr start, ChainMapOptions options)
    : start_(start), current_(start), total_(identity_morphism(start->result())), options_(options)
{
}

Pasting& Pasting::step(int i, int j, std::vector<BisetPtr> replacement, const LocalRewrite& local)
{
    int m = static_cast<int>(replacement.size());
    auto next = make_chain(with_window(*current_, i, j, replacement));
    auto mor = chain_map(current_, next, i, j, m, local, options_);
    total_ = compose(mor, total_);
    current_ = next;
    return *this;
}

Pasting& Pasting::step(int i, int j, const ChainPtr& sub_from, const ChainPtr& sub_to, const BisetMorphism& sub)
{
    int m = sub_to->length();
    auto next = make_chain(with_window(*current_, i, j, sub_to->factors()));
    auto mor = lift(current_, next, i, j, m, sub_from, sub_to, sub, options_);
    total_ = compose(mor, total_);
    current_ = next;
    return *this;
}

// ---- local rewrites -----------------------------------------------------------

namespace rewrite {

    LocalRewrite left_unitor(const BisetPtr& u)
    {
        return [u](const Tuple& w) {
            const Groupoid& G = *u->target();
            int eta = at(G, w.objects[1], w.objects[0], w.elements[0]);
            return Tuple{{w.objects[0], w.objects[2]}, {u->act_target(eta, w.objects[2], w.elements[1])}};
        };
    }

    LocalRewrite right_unitor(const BisetPtr& u)
    {
        return [u](const Tuple& w) {
            const Groupoid& H = *u->source();
            int eta = at(H, w.objects[2], w.objects[1], w.elements[1]);
            return Tuple{{w.objects[0], w.objects[2]}, {u->act_source(eta, w.objects[0], w.elements[0])}};
        };
    }

    LocalRewrite left_unitor_inverse(const BisetPtr& u)
    {
        return [u](const Tuple& w) {
            const Groupoid& G = *u->target();
            int g = w.objects[0];
            return Tuple{{g, g, w.objects[1]}, {pos(G, G.identity(g)), w.elements[0]}};
        };
    }

    LocalRewrite right_unitor_inverse(const BisetPtr& u)
    {
        return [u](const Tuple& w) {
            const Groupoid& H = *u->source();
            int h = w.objects[1];
            return Tuple{{w.objects[0], h, h}, {w.elements[0], pos(H, H.identity(h))}};
        };
    }

    LocalRewrite unit(const Functor& u)
    {
        return [u](const Tuple& w) {
            const Groupoid& H = *u.source;
            const Groupoid& G = *u.target;
            int h = w.objects[0], h2 = w.objects[1];
            int zeta = at(H, h2, h, w.elements[0]);
            int uh = u.object(h);
            return Tuple{{h, uh, h2}, {pos(G, G.identity(uh)), pos(G, u(zeta))}};
        };
    }

    LocalRewrite counit(const Functor& u)
    {
        return [u](const Tuple& w) {
            const Groupoid& G = *u.target;
            int g = w.objects[0], h = w.objects[1], g2 = w.objects[2];
            int a = at(G, u.object(h), g, w.elements[0]);
            int b = at(G, g2, u.object(h), w.elements[1]);
            return Tuple{{g, g2}, {pos(G, G.compose(a, b))}};
        };
    }

    LocalRewrite fun_covariant(const Functor& v, const Functor& u)
    {
        return [v, u](const Tuple& w) {
            const Groupoid& H = *v.source;
            const Groupoid& G = *v.target;
            int g = w.objects[0], h = w.objects[1], k = w.objects[2];
            int xi = at(G, v.object(h), g, w.elements[0]);
            int zeta = at(H, u.object(k), h, w.elements[1]);
            return Tuple{{g, k}, {pos(G, G.compose(xi, v(zeta)))}};
        };
    }

    LocalRewrite fun_covariant_inverse(const Functor& v, const Functor& u)
    {
        return [v, u](const Tuple& w) {
            const Groupoid& H = *v.source;
            int g = w.objects[0], k = w.objects[1], uk = u.object(k);
            return Tuple{{g, uk, k}, {w.elements[0], pos(H, H.identity(uk))}};
        };
    }

    LocalRewrite fun_contravariant(const Functor& v, const Functor& u)
    {
        return [v, u](const Tuple& w) {
            const Groupoid& H = *v.source;
            const Groupoid& G = *v.target;
            int k = w.objects[0], h = w.objects[1], g = w.objects[2];
            int zeta = at(H, h, u.object(k), w.elements[0]);
            int xi = at(G, g, v.object(h), w.elements[1]);
            return Tuple{{k, g}, {pos(G, G.compose(v(zeta), xi))}};
        };
    }

    LocalRewrite fun_contravariant_inverse(const Functor& v, const Functor& u)
    {
        return [v, u](const Tuple& w) {
            const Groupoid& H = *v.source;
            int k = w.objects[0], g = w.objects[1], uk = u.object(k);
            return Tuple{{k, uk, g}, {pos(H, H.identity(uk)), w.elements[0]}};
        };
    }

    LocalRewrite iso_contravariant(const NaturalIso& alpha)
    {
        return [alpha](const Tuple& w) {
            const Groupoid& G = *alpha.from.target;
            int h = w.objects[0], g = w.objects[1];
            int xi = at(G, g, alpha.from.object(h), w.elements[0]);
            return Tuple{{h, g}, {pos(G, G.compose(alpha[h], xi))}};
        };
    }

    LocalRewrite iso_covariant(const NaturalIso& alpha)
    {
        return [alpha](const Tuple& w) {
            const Groupoid& G = *alpha.from.target;
            int g = w.objects[0], h = w.objects[1];
            int xi = at(G, alpha.to.object(h), g, w.elements[0]);
            return Tuple{{g, h}, {pos(G, G.compose(xi, alpha[h]))}};
        };
    }

} // namespace rewrite

// ---- adjunction ----------------------------------------------------------------

AdjunctionCells adjunction_cells(const Functor& u)
{
    auto cov = realize_functor(u, Variance::covariant);
    auto con = realize_functor(u, Variance::contravariant);
    AdjunctionCells c;
    c.u = u;
    c.unit_target = make_chain({con, cov});
    c.counit_source = make_chain({cov, con});
    auto idh = single(identity_biset(u.source));
    auto idg = single(identity_biset(u.target));
    c.unit = chain_map(idh, c.unit_target, 0, 1, 2, rewrite::unit(u));
    c.counit = chain_map(c.counit_source, idg, 0, 2, 1, rewrite::counit(u));
    c.unit.validate();
    c.counit.validate();
    return c;
}

std::string verify_zigzag(const Functor& u)
{
    auto cov = realize_functor(u, Variance::covariant);
    auto con = realize_functor(u, Variance::contravariant);
    auto idh = identity_biset(u.source);
    auto idg = identity_biset(u.target);
    std::ostringstream out;

    // R_! -> R_! Id -> R_! R^* R_! -> Id R_! -> R_!
    Pasting first(single(cov));
    first.step(0, 1, {cov, idh}, rewrite::right_unitor_inverse(cov))
        .step(1, 2, {con, cov}, rewrite::unit(u))
        .step(0, 2, {idg}, rewrite::counit(u))
        .step(0, 2, {cov}, rewrite::left_unitor(cov));
    if (!first.total().is_identity())
        out << "covariant zig-zag is not the identity";

    // R^* -> Id R^* -> R^* R_! R^* -> R^* Id -> R^*
    Pasting second(single(con));
    second.step(0, 1, {idh, con}, rewrite::left_unitor_inverse(con))
        .step(0, 1, {con, cov}, rewrite::unit(u))
        .step(1, 3, {idg}, rewrite::counit(u))
        .step(0, 2, {con}, rewrite::right_unitor(con));
    if (!second.total().is_identity())
        out << (out.tellp() > 0 ? "; " : "") << "contravariant zig-zag is not the identity";
    return out.str();
}

// ---- Beck-Chevalley -----------------------------------------------------------

MateResult beck_chevalley_mate(const Functor& a, const Functor& b, bool paste)
{
    return beck_chevalley_mate(iso_comma(a, b), a, b, paste);
}

MateResult beck_chevalley_mate(const IsoComma& square, const Functor& a, const Functor& b, bool paste)
{
    if (!same_groupoid(a.target, b.target))
        fail("beck_chevalley_mate: functors do not share a target");
    const Functor& p = square.p;
    const Functor& q = square.q;
    const Groupoid& S = *a.source;
    const Groupoid& T = *b.source;
    const Groupoid& G = *a.target;
    MateResult r{square, {}, {}, {}, false, false, false};
    auto rq = realize_functor(q, Variance::covariant);
    auto rp = realize_functor(p, Variance::contravariant);
    auto rb = realize_functor(b, Variance::contravariant);
    auto ra = realize_functor(a, Variance::covariant);
    r.from = make_chain({rq, rp});
    r.to = make_chain({rb, ra});

    // [tau, sigma]_x -> [b(tau) gamma_x a(sigma), id_{a s}]
    r.mate = chain_map(r.from, r.to, 0, 2, 2, [&](const Tuple& w) {
        int t = w.objects[0], x = w.objects[1], s = w.objects[2];
        int tau = at(T, q.object(x), t, w.elements[0]);
        int sigma = at(S, s, p.object(x), w.elements[1]);
        int as = a.object(s);
        int m = G.compose(b(tau), square.gamma[x], a(sigma));
        return Tuple{{t, as, s}, {pos(G, m), pos(G, G.identity(as))}};
    });
    r.mate.validate();
    r.bijective = r.mate.is_bijective();

    if (paste) {
        auto ids = identity_biset(a.source);
        auto idt = identity_biset(b.source);
        auto ra_star = realize_functor(a, Variance::contravariant);
        auto ap = compose(a, p), bq = compose(b, q);
        auto rq_star = realize_functor(q, Variance::contravariant);
        Pasting chain(r.from);
        chain.step(1, 2, {rp, ids}, rewrite::right_unitor_inverse(rp))
            .step(2, 3, {ra_star, ra}, rewrite::unit(a))
            .step(1, 3, {realize_functor(ap, Variance::contravariant)}, rewrite::fun_contravariant(a, p))
            .step(1, 2, {realize_functor(bq, Variance::contravariant)}, rewrite::iso_contravariant(square.gamma))
            .step(1, 2, {rq_star, rb}, rewrite::fun_contravariant_inverse(b, q))
            .step(0, 2, {idt}, rewrite::counit(q))
            .step(0, 2, {rb}, rewrite::left_unitor(rb));
        r.pasting_checked = true;
        r.matches_pasting = chain.total() == r.mate;
    }
    return r;
}

// ---- spans and 2-cells ------------------------------------------------------------

ChainPtr realize_span(const Span& s)
{
    return make_chain({realize_functor(s.right, Variance::covariant), realize_functor(s.left, Variance::contravariant)});
}

RealizedTwoCell realize_two_cell(const SpanTwoCell& t, const ChainMapOptions& options)
{
    const Span& s = t.from;
    const Span& s2 = t.to;
    const Functor& f = t.f;
    RealizedTwoCell r;
    r.from = realize_span(s);
    r.to = realize_span(s2);
    auto af = compose(s2.right, f);
    auto bf = compose(s2.left, f);
    auto ra2 = realize_functor(s2.right, Variance::covariant);
    auto rb2 = realize_functor(s2.left, Variance::contravariant);
    auto rf = realize_functor(f, Variance::covariant);
    auto rf_star = realize_functor(f, Variance::contravariant);
    auto rbf = realize_functor(bf, Variance::contravariant);

    Pasting chain(r.from, options);
    chain.step(0, 1, {realize_functor(af, Variance::covariant)}, rewrite::iso_covariant(t.alpha))
        .step(1, 2, {rbf}, rewrite::iso_contravariant(t.beta))
        .step(0, 1, {ra2, rf}, rewrite::fun_covariant_inverse(s2.right, f))
        .step(2, 3, {rf_star, rb2}, rewrite::fun_contravariant_inverse(s2.left, f))
        .step(1, 3, {identity_biset(s2.apex)}, rewrite::counit(f))
        .step(0, 2, {ra2}, rewrite::right_unitor(ra2));
    r.morphism = chain.total();

    // [xi, zeta]_x -> [xi alpha_x, beta_x zeta]_{f x}
    const Groupoid& H = *s.source();
    const Groupoid& G = *s.target();
    auto closed = chain_map(
        r.from, r.to, 0, 2, 2,
        [&](const Tuple& w) {
            int g = w.objects[0], x = w.objects[1], h = w.objects[2];
            int xi = at(G, s.right.object(x), g, w.elements[0]);
            int zeta = at(H, h, s.left.object(x), w.elements[1]);
            return Tuple{{g, f.object(x), h},
                         {pos(G, G.compose(xi, t.alpha[x])), pos(H, H.compose(t.beta[x], zeta))}};
        },
        options);
    r.matches_closed_form = closed == r.morphism;
    return r;
}

SpanFromBiset span_from_biset(const BisetPtr& up)
{
    const Biset& U = *up;
    const Groupoid& H = *U.source();
    const Groupoid& G = *U.target();
    SpanFromBiset r;
    int n = U.total_size();
    for (int h = 0; h < H.object_count(); ++h)
        for (int g = 0; g < G.object_count(); ++g)
            for (int x = 0; x < U.size(h, g); ++x) {
                r.h.push_back(h);
                r.g.push_back(g);
                r.local.push_back(x);
            }
    // morphisms out of x: (beta in out(h), alpha in out(g)); the target x' is
    // determined by U(id, alpha) x = U(beta, id) x'
    std::vector<int> first(n + 1, 0);
    for (int x = 0; x < n; ++x)
        first[x + 1] = first[x] + static_cast<int>(H.out(r.h[x]).size() * G.out(r.g[x]).size());
    auto id_of = [&](int x, int beta, int alpha) {
        return first[x] + H.pos_in_out(beta) * static_cast<int>(G.out(r.g[x]).size()) + G.pos_in_out(alpha);
    };
    int m = first[n];
    std::vector<Groupoid::Arrow> arrows(m);
    std::vector<std::pair<int, int>> pairs(m);
    std::vector<int> ids(n), invs(m);
    for (int x = 0; x < n; ++x) {
        int h = r.h[x], g = r.g[x];
        for (int beta : H.out(h))
            for (int alpha : G.out(g)) {
                int h2 = H.tgt(beta), g2 = G.tgt(alpha);
                int moved = U.act_target(alpha, h, r.local[x]);
                int x2 = U.act_source(H.inverse(beta), g2, moved);
                int k = id_of(x, beta, alpha);
                arrows[k] = {x, U.offset(h2, g2) + x2};
                pairs[k] = {beta, alpha};
            }
        ids[x] = id_of(x, H.identity(h), G.identity(g));
    }
    for (int k = 0; k < m; ++k)
        invs[k] = id_of(arrows[k].tgt, H.inverse(pairs[k].first), G.inverse(pairs[k].second));
    auto apex = make_groupoid(Groupoid::build(
        n, arrows, ids, invs,
        [&](int y, int x) {
            return id_of(arrows[x].src, H.compose(pairs[y].first, pairs[x].first),
                         G.compose(pairs[y].second, pairs[x].second));
        },
        false));
    Functor q{apex, U.source(), r.h, std::vector<int>(m)};
    Functor p{apex, U.target(), r.g, std::vector<int>(m)};
    for (int k = 0; k < m; ++k) {
        q.on_morphisms[k] = pairs[k].first;
        p.on_morphisms[k] = pairs[k].second;
    }
    r.span = Span{apex, q, p};

    // [alpha, beta]_x -> U(beta, alpha) x
    auto from = realize_span(r.span);
    r.evaluation = chain_map(from, single(up), 0, 2, 1, [&](const Tuple& w) {
        int g = w.objects[0], x = w.objects[1], h = w.objects[2];
        int alpha = at(G, r.g[x], g, w.elements[0]);
        int beta = at(H, h, r.h[x], w.elements[1]);
        return Tuple{{g, h}, {U.act(beta, alpha, r.local[x])}};
    });
    r.evaluation.validate();
    r.bijective = r.evaluation.is_bijective();
    return r;
}

std::string verify_mate_compatibility(const NaturalIso& alpha)
{
    const Functor& u = alpha.from;
    const Functor& v = alpha.to;
    auto ru = realize_functor(u, Variance::covariant);
    auto rv = realize_functor(v, Variance::covariant);
    auto ru_star = realize_functor(u, Variance::contravariant);
    auto rv_star = realize_functor(v, Variance::contravariant);
    auto direct = chain_map(single(rv), single(ru), 0, 1, 1, rewrite::iso_covariant(alpha));

    // R_!(v) -> R_!(v) Id -> R_!(v) R^*(u) R_!(u) -> R_!(v) R^*(v) R_!(u) -> Id R_!(u) -> R_!(u)
    Pasting mate(single(rv));
    mate.step(0, 1, {rv, identity_biset(u.source)}, rewrite::right_unitor_inverse(rv))
        .step(1, 2, {ru_star, ru}, rewrite::unit(u))
        .step(1, 2, {rv_star}, rewrite::iso_contravariant(alpha))
        .step(0, 2, {identity_biset(u.target)}, rewrite::counit(v))
        .step(0, 2, {ru}, rewrite::left_unitor(ru));
    if (!(mate.total() == direct))
        return "R_!(alpha) differs from the mate of R^*(alpha)";
    return {};
}

std::string verify_counit_unitor(const GroupoidPtr& g)
{
    auto id = identity_functor(g);
    auto idb = identity_biset(g);
    if (!same_biset(realize_functor(id, Variance::covariant), idb) ||
        !same_biset(realize_functor(id, Variance::contravariant), idb))
        return "realization of the identity functor is not the identity biset";
    auto cells = adjunction_cells(id);
    auto lambda = chain_map(make_chain({idb, idb}), single(idb), 0, 2, 1, rewrite::left_unitor(idb));
    if (!(cells.counit == lambda))
        return "counit of the identity differs from the left unitor";
    return {};
}

// ---- pseudo-functoriality ------------------------------------------------------------

Compositor compositor(const Span& s1, const Span& s2, const ChainMapOptions& options)
{
    Compositor c{compose_spans_detailed(s1, s2), {}, {}, {}, false, false};
    const IsoComma& sq = c.composite.square; // iso_comma(c2 = s2.right, b1 = s1.left)
    const Functor& a = s1.right;
    const Functor& b = s1.left;
    const Functor& cc = s2.right;
    const Functor& d = s2.left;
    c.from = realize_span(c.composite.span);
    auto ra = realize_functor(a, Variance::covariant);
    auto rq = realize_functor(sq.q, Variance::covariant);
    auto rp = realize_functor(sq.p, Variance::contravariant);
    auto rd = realize_functor(d, Variance::contravariant);
    auto mate = beck_chevalley_mate(sq, cc, b, false);

    Pasting chain(c.from, options);
    chain.step(0, 1, {ra, rq}, rewrite::fun_covariant_inverse(a, sq.q))
        .step(2, 3, {rp, rd}, rewrite::fun_contravariant_inverse(d, sq.p))
        .step(1, 3, mate.from, mate.to, mate.mate);
    c.to = chain.current();
    c.map = chain.total();
    c.bijective = c.map.is_bijective();

    // [xi, zeta]_x -> [xi, gamma_x, id, zeta] through s = q x, h = c(p x), t = p x
    const Groupoid& H = *b.target;
    auto closed = chain_map(
        c.from, c.to, 0, 2, 4,
        [&](const Tuple& w) {
            int g = w.objects[0], x = w.objects[1], k = w.objects[2];
            int s = sq.q.object(x), t = sq.p.object(x), h = cc.object(t);
            return Tuple{{g, s, h, t, k}, {w.elements[0], pos(H, sq.gamma[x]), pos(H, H.identity(h)), w.elements[1]}};
        },
        options);
    c.matches_closed_form = closed == c.map;
    return c;
}

namespace {

    std::string check_left_unit(const Span& s, const ChainMapOptions& options)
    {
        auto comp = compositor(identity_span(s.target()), s, options);
        auto ra = realize_functor(s.right, Variance::covariant);
        Pasting tail(comp.to, options);
        tail.step(0, 2, {identity_biset(s.target())}, rewrite::counit(identity_functor(s.target())))
            .step(0, 2, {ra}, rewrite::left_unitor(ra));
        auto via = compose(tail.total(), comp.map);
        auto direct = realize_two_cell(left_unitor(s), options).morphism;
        return via == direct ? std::string{} : "left unit coherence fails";
    }

    std::string check_right_unit(const Span& s, const ChainMapOptions& options)
    {
        auto comp = compositor(s, identity_span(s.source()), options);
        auto rb = realize_functor(s.left, Variance::contravariant);
        Pasting tail(comp.to, options);
        tail.step(2, 4, {identity_biset(s.source())}, rewrite::counit(identity_functor(s.source())))
            .step(1, 3, {rb}, rewrite::right_unitor(rb));
        auto via = compose(tail.total(), comp.map);
        auto direct = realize_two_cell(right_unitor(s), options).morphism;
        return via == direct ? std::string{} : "right unit coherence fails";
    }

} // namespace

std::string verify_pseudofunctor(const Span& s1, const Span& s2, const ChainMapOptions& options)
{
    auto c = compositor(s1, s2, options);
    if (!c.bijective)
        return "compositor is not bijective";
    if (!c.matches_closed_form)
        return "compositor differs from its closed form";
    if (auto e = check_left_unit(s1, options); !e.empty())
        return e;
    if (auto e = check_right_unit(s2, options); !e.empty())
        return e;
    return {};
}

std::string verify_associativity(const Span& s1, const Span& s2, const Span& s3, const ChainMapOptions& options)
{
    // (s1 s2) s3 -> R(s1 s2) R(s3) -> R(s1) R(s2) R(s3)
    auto c12 = compositor(s1, s2, options);
    auto c12_3 = compositor(c12.composite.span, s3, options);
    Pasting left(c12_3.to, options);
    left.step(0, 2, c12.from, c12.to, c12.map);
    auto via_left = compose(left.total(), c12_3.map);

    // (s1 s2) s3 -> s1 (s2 s3) -> R(s1) R(s2 s3) -> R(s1) R(s2) R(s3)
    auto assoc = associator(s1, s2, s3);
    auto ra = realize_two_cell(assoc, options);
    auto c23 = compositor(s2, s3, options);
    auto c1_23 = compositor(s1, c23.composite.span, options);
    Pasting right(c1_23.to, options);
    right.step(2, 4, c23.from, c23.to, c23.map);
    auto via_right = compose(right.total(), compose(c1_23.map, ra.morphism));
    if (!(via_left == via_right))
        return "associativity coherence fails";
    return {};
}

} // namespace bispan
