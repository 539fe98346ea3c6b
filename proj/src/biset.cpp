#include "bispan/biset.hpp"
#include "bispan/union_find.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace bispan {

namespace {
    [[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }
}

Biset Biset::build(GroupoidPtr source, GroupoidPtr target, std::vector<int> sizes, const TargetFn& target_action,
                   const SourceFn& source_action)
{
    Biset u;
    u.source_ = std::move(source);
    u.target_ = std::move(target);
    const Groupoid& H = *u.source_;
    const Groupoid& G = *u.target_;
    int nh = H.object_count(), ng = G.object_count();
    if (static_cast<int>(sizes.size()) != nh * ng)
        fail("biset: one size per object pair required");
    u.sizes_ = std::move(sizes);
    u.offsets_.assign(u.sizes_.size() + 1, 0);
    for (std::size_t i = 0; i < u.sizes_.size(); ++i) {
        if (u.sizes_[i] < 0)
            fail("biset: negative size");
        u.offsets_[i + 1] = u.offsets_[i] + u.sizes_[i];
    }
    u.tact_.assign(static_cast<std::size_t>(G.morphism_count()) * nh, {});
    for (int a = 0; a < G.morphism_count(); ++a)
        for (int h = 0; h < nh; ++h) {
            auto& img = u.tact_[static_cast<std::size_t>(a) * nh + h];
            int n = u.size(h, G.src(a)), limit = u.size(h, G.tgt(a));
            img.resize(n);
            for (int x = 0; x < n; ++x) {
                img[x] = target_action(a, h, x);
                if (img[x] < 0 || img[x] >= limit)
                    fail("biset: target action out of range");
            }
        }
    u.sact_.assign(static_cast<std::size_t>(H.morphism_count()) * ng, {});
    for (int b = 0; b < H.morphism_count(); ++b)
        for (int g = 0; g < ng; ++g) {
            auto& img = u.sact_[static_cast<std::size_t>(b) * ng + g];
            int n = u.size(H.tgt(b), g), limit = u.size(H.src(b), g);
            img.resize(n);
            for (int x = 0; x < n; ++x) {
                img[x] = source_action(b, g, x);
                if (img[x] < 0 || img[x] >= limit)
                    fail("biset: source action out of range");
            }
        }
    return u;
}

void Biset::validate() const
{
    const Groupoid& H = *source_;
    const Groupoid& G = *target_;
    int nh = H.object_count(), ng = G.object_count();
    for (int h = 0; h < nh; ++h)
        for (int g = 0; g < ng; ++g)
            for (int x = 0; x < size(h, g); ++x) {
                if (act_target(G.identity(g), h, x) != x || act_source(H.identity(h), g, x) != x)
                    fail("biset: identities do not act trivially");
                for (int a : G.out(g))
                    for (int b : H.in(h))
                        if (act_target(a, H.src(b), act_source(b, g, x)) != act_source(b, G.tgt(a), act_target(a, h, x)))
                            fail("biset: the two actions do not commute");
            }
    for (int a2 = 0; a2 < G.morphism_count(); ++a2)
        for (int a1 : G.in(G.src(a2)))
            for (int h = 0; h < nh; ++h)
                for (int x = 0; x < size(h, G.src(a1)); ++x)
                    if (act_target(G.compose(a2, a1), h, x) != act_target(a2, h, act_target(a1, h, x)))
                        fail("biset: target action is not functorial");
    // beta2: h'' -> h', beta1: h' -> h; U(beta1 beta2) = U(beta2) U(beta1)
    for (int b1 = 0; b1 < H.morphism_count(); ++b1)
        for (int b2 : H.in(H.src(b1)))
            for (int g = 0; g < ng; ++g)
                for (int x = 0; x < size(H.tgt(b1), g); ++x)
                    if (act_source(H.compose(b1, b2), g, x) != act_source(b2, g, act_source(b1, g, x)))
                        fail("biset: source action is not functorial");
}

bool Biset::operator==(const Biset& other) const
{
    return same_groupoid(source_, other.source_) && same_groupoid(target_, other.target_) && sizes_ == other.sizes_
        && tact_ == other.tact_ && sact_ == other.sact_;
}

BisetPtr make_biset(Biset b) { return std::make_shared<const Biset>(std::move(b)); }

bool same_biset(const BisetPtr& a, const BisetPtr& b) { return a == b || *a == *b; }

// ---- morphisms ---------------------------------------------------------------

namespace {
    void check_parallel(const Biset& u, const Biset& v)
    {
        if (!same_groupoid(u.source(), v.source()) || !same_groupoid(u.target(), v.target()))
            fail("biset morphism: bisets are not parallel");
    }
}

bool BisetMorphism::is_bijective() const
{
    int nh = from->source()->object_count(), ng = from->target()->object_count();
    for (int h = 0; h < nh; ++h)
        for (int g = 0; g < ng; ++g) {
            if (from->size(h, g) != to->size(h, g))
                return false;
            std::vector<char> hit(to->size(h, g), 0);
            for (int x = 0; x < from->size(h, g); ++x) {
                int y = (*this)(h, g, x);
                if (hit[y])
                    return false;
                hit[y] = 1;
            }
        }
    return true;
}

bool BisetMorphism::is_identity() const
{
    if (!same_biset(from, to))
        return false;
    for (const auto& c : components)
        for (std::size_t x = 0; x < c.size(); ++x)
            if (c[x] != static_cast<int>(x))
                return false;
    return true;
}

void BisetMorphism::validate() const
{
    check_parallel(*from, *to);
    const Groupoid& H = *from->source();
    const Groupoid& G = *from->target();
    int nh = H.object_count(), ng = G.object_count();
    if (static_cast<int>(components.size()) != nh * ng)
        fail("biset morphism: one component per object pair required");
    for (int h = 0; h < nh; ++h)
        for (int g = 0; g < ng; ++g) {
            const auto& c = components[static_cast<std::size_t>(h) * ng + g];
            if (static_cast<int>(c.size()) != from->size(h, g))
                fail("biset morphism: component has wrong size");
            for (int y : c)
                if (y < 0 || y >= to->size(h, g))
                    fail("biset morphism: component value out of range");
        }
    for (int h = 0; h < nh; ++h)
        for (int g = 0; g < ng; ++g)
            for (int x = 0; x < from->size(h, g); ++x) {
                int y = (*this)(h, g, x);
                for (int a : G.out(g))
                    if ((*this)(h, G.tgt(a), from->act_target(a, h, x)) != to->act_target(a, h, y))
                        fail("biset morphism: not natural in the target");
                for (int b : H.in(h))
                    if ((*this)(H.src(b), g, from->act_source(b, g, x)) != to->act_source(b, g, y))
                        fail("biset morphism: not natural in the source");
            }
}

bool BisetMorphism::operator==(const BisetMorphism& other) const
{
    return same_biset(from, other.from) && same_biset(to, other.to) && components == other.components;
}

BisetMorphism identity_morphism(const BisetPtr& u)
{
    BisetMorphism m{u, u, {}};
    int nh = u->source()->object_count(), ng = u->target()->object_count();
    m.components.resize(static_cast<std::size_t>(nh) * ng);
    for (int h = 0; h < nh; ++h)
        for (int g = 0; g < ng; ++g) {
            auto& c = m.components[static_cast<std::size_t>(h) * ng + g];
            c.resize(u->size(h, g));
            std::iota(c.begin(), c.end(), 0);
        }
    return m;
}

BisetMorphism compose(const BisetMorphism& second, const BisetMorphism& first)
{
    if (!same_biset(first.to, second.from))
        fail("biset morphism composition: middle bisets differ");
    BisetMorphism m{first.from, second.to, first.components};
    for (std::size_t i = 0; i < m.components.size(); ++i)
        for (int& y : m.components[i])
            y = second.components[i][y];
    return m;
}

BisetMorphism inverse(const BisetMorphism& m)
{
    if (!m.is_bijective())
        fail("biset morphism inverse: not bijective");
    BisetMorphism r{m.to, m.from, m.components};
    for (std::size_t i = 0; i < m.components.size(); ++i)
        for (std::size_t x = 0; x < m.components[i].size(); ++x)
            r.components[i][m.components[i][x]] = static_cast<int>(x);
    return r;
}

// ---- basic bisets --------------------------------------------------------------

std::vector<int> groupoid_generators(const Groupoid& g)
{
    std::vector<int> gens;
    for (int c = 0; c < g.component_count(); ++c) {
        int b = g.basepoint(c);
        auto vg = g.vertex_group(b);
        for (int x : vg.group.generators())
            gens.push_back(vg.elements[x]);
        for (int o : g.component_objects(c))
            if (o != b) {
                gens.push_back(g.path_from_base(o));
                gens.push_back(g.inverse(g.path_from_base(o)));
            }
    }
    return gens;
}

BisetPtr identity_biset(const GroupoidPtr& gp)
{
    const Groupoid& G = *gp;
    int n = G.object_count();
    std::vector<int> sizes(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            sizes[static_cast<std::size_t>(a) * n + b] = static_cast<int>(G.hom(a, b).size());
    // value at (a, b) is G(a, b), element = position in hom
    return make_biset(Biset::build(
        gp, gp, sizes,
        [&](int alpha, int h, int x) { return G.pos_in_hom(G.compose(alpha, G.hom(h, G.src(alpha))[x])); },
        [&](int beta, int g, int x) { return G.pos_in_hom(G.compose(G.hom(G.tgt(beta), g)[x], beta)); }));
}

BisetPtr empty_biset(const GroupoidPtr& source, const GroupoidPtr& target)
{
    std::vector<int> sizes(static_cast<std::size_t>(source->object_count()) * target->object_count(), 0);
    return make_biset(Biset::build(source, target, sizes, [](int, int, int) { return 0; },
                                   [](int, int, int) { return 0; }));
}

BisetPtr sum_bisets(const BisetPtr& u, const BisetPtr& v)
{
    check_parallel(*u, *v);
    int nh = u->source()->object_count(), ng = u->target()->object_count();
    std::vector<int> sizes(static_cast<std::size_t>(nh) * ng);
    for (int h = 0; h < nh; ++h)
        for (int g = 0; g < ng; ++g)
            sizes[static_cast<std::size_t>(h) * ng + g] = u->size(h, g) + v->size(h, g);
    const Groupoid& H = *u->source();
    const Groupoid& G = *u->target();
    return make_biset(Biset::build(
        u->source(), u->target(), sizes,
        [&](int a, int h, int x) {
            int n = u->size(h, G.src(a));
            return x < n ? u->act_target(a, h, x) : v->act_target(a, h, x - n) + u->size(h, G.tgt(a));
        },
        [&](int b, int g, int x) {
            int n = u->size(H.tgt(b), g);
            return x < n ? u->act_source(b, g, x) : v->act_source(b, g, x - n) + u->size(H.src(b), g);
        }));
}

BisetPtr tensor_bisets(const BisetPtr& u, const BisetPtr& v)
{
    auto src = product(u->source(), v->source());
    auto tgt = product(u->target(), v->target());
    const Groupoid& H2 = *v->source();
    const Groupoid& G2 = *v->target();
    int nh2 = H2.object_count(), ng2 = G2.object_count();
    int mh2 = H2.morphism_count(), mg2 = G2.morphism_count();
    std::vector<int> sizes(static_cast<std::size_t>(src->object_count()) * tgt->object_count());
    for (int h = 0; h < src->object_count(); ++h)
        for (int g = 0; g < tgt->object_count(); ++g)
            sizes[static_cast<std::size_t>(h) * tgt->object_count() + g] =
                u->size(h / nh2, g / ng2) * v->size(h % nh2, g % ng2);
    // element (x, y) -> x * |V(h2, g2)| + y
    return make_biset(Biset::build(
        src, tgt, sizes,
        [&](int a, int h, int xy) {
            int a1 = a / mg2, a2 = a % mg2, h1 = h / nh2, h2 = h % nh2;
            int nv = v->size(h2, G2.src(a2));
            int x = u->act_target(a1, h1, xy / nv), y = v->act_target(a2, h2, xy % nv);
            return x * v->size(h2, G2.tgt(a2)) + y;
        },
        [&](int b, int g, int xy) {
            int b1 = b / mh2, b2 = b % mh2, g1 = g / ng2, g2 = g % ng2;
            int nv = v->size(H2.tgt(b2), g2);
            int x = u->act_source(b1, g1, xy / nv), y = v->act_source(b2, g2, xy % nv);
            return x * v->size(H2.src(b2), g2) + y;
        }));
}

// ---- composition -------------------------------------------------------------------

BisetComposite::BisetComposite(BisetPtr outer, BisetPtr inner) : outer_(std::move(outer)), inner_(std::move(inner))
{
    const Biset& U = *outer_;
    const Biset& V = *inner_;
    if (!same_groupoid(U.source(), V.target()))
        fail("compose_bisets: middle groupoids differ");
    const Groupoid& H = *U.source();
    const Groupoid& K = *V.source();
    const Groupoid& G = *U.target();
    int nk = K.object_count(), ng = G.object_count(), nh = H.object_count();
    g_objects_ = ng;
    auto gens = groupoid_generators(H);
    cells_.resize(static_cast<std::size_t>(nk) * ng);
    std::vector<int> sizes(static_cast<std::size_t>(nk) * ng);
    for (int k = 0; k < nk; ++k)
        for (int g = 0; g < ng; ++g) {
            Cell& c = cells_[static_cast<std::size_t>(k) * ng + g];
            c.first.assign(nh + 1, 0);
            for (int h = 0; h < nh; ++h)
                c.first[h + 1] = c.first[h] + U.size(h, g) * V.size(k, h);
            DisjointSet ds(c.first[nh]);
            // alpha: h' -> h identifies (h', U(alpha, id) u, v) with (h, u, V(id, alpha) v)
            for (int a : gens) {
                int h1 = H.src(a), h = H.tgt(a);
                int nv1 = V.size(k, h1), nv = V.size(k, h);
                for (int u = 0; u < U.size(h, g); ++u) {
                    int u1 = U.act_source(a, g, u);
                    for (int v = 0; v < nv1; ++v)
                        ds.unite(c.first[h1] + u1 * nv1 + v, c.first[h] + u * nv + V.act_target(a, k, v));
                }
            }
            int classes = 0;
            c.label = ds.canonical_labels(&classes);
            c.reps.assign(classes, -1);
            for (int t = 0; t < c.first[nh]; ++t)
                if (c.reps[c.label[t]] < 0)
                    c.reps[c.label[t]] = t;
            sizes[static_cast<std::size_t>(k) * ng + g] = classes;
        }
    result_ = make_biset(Biset::build(
        V.source(), U.target(), sizes,
        [&](int alpha, int k, int cls) {
            auto t = rep(k, G.src(alpha), cls);
            return class_of(k, G.tgt(alpha), t.h, U.act_target(alpha, t.h, t.u), t.v);
        },
        [&](int beta, int g, int cls) {
            auto t = rep(K.tgt(beta), g, cls);
            return class_of(K.src(beta), g, t.h, t.u, V.act_source(beta, t.h, t.v));
        }));
}

int BisetComposite::class_of(int k, int g, int h, int u, int v) const
{
    const Cell& c = cell(k, g);
    return c.label[c.first[h] + u * inner_->size(k, h) + v];
}

BisetComposite::Tuple BisetComposite::rep(int k, int g, int cls) const
{
    const Cell& c = cell(k, g);
    int t = c.reps[cls];
    int h = static_cast<int>(std::upper_bound(c.first.begin(), c.first.end(), t) - c.first.begin()) - 1;
    int nv = inner_->size(k, h);
    int local = t - c.first[h];
    return {h, local / nv, local % nv};
}

BisetPtr compose_bisets(const BisetPtr& u, const BisetPtr& v) { return BisetComposite(u, v).result(); }

// ---- chains ------------------------------------------------------------------------

BisetChain::BisetChain(std::vector<BisetPtr> factors) : factors_(std::move(factors))
{
    int n = length();
    if (n == 0)
        fail("biset chain: at least one factor required");
    flat_.resize(n);
    levels_.resize(n);
    flat_[n - 1] = factors_[n - 1];
    for (int i = n - 2; i >= 0; --i) {
        levels_[i] = std::make_shared<BisetComposite>(factors_[i], flat_[i + 1]);
        flat_[i] = levels_[i]->result();
    }
}

int BisetChain::class_of(const Tuple& t) const
{
    int n = length();
    int v = t.elements[n - 1];
    for (int i = n - 2; i >= 0; --i)
        v = levels_[i]->class_of(t.objects[n], t.objects[i], t.objects[i + 1], t.elements[i], v);
    return v;
}

BisetChain::Tuple BisetChain::rep(int k, int g, int c) const
{
    int n = length();
    Tuple t{std::vector<int>(n + 1), std::vector<int>(n)};
    t.objects[0] = g;
    t.objects[n] = k;
    for (int i = 0; i + 1 < n; ++i) {
        auto r = levels_[i]->rep(k, t.objects[i], c);
        t.objects[i + 1] = r.h;
        t.elements[i] = r.u;
        c = r.v;
    }
    t.elements[n - 1] = c;
    return t;
}

long long BisetChain::for_each_tuple(int k, int g, const std::function<bool(const Tuple&)>& visit) const
{
    int n = length();
    Tuple t{std::vector<int>(n + 1), std::vector<int>(n)};
    t.objects[0] = g;
    t.objects[n] = k;
    long long count = 0;
    bool stop = false;
    std::function<void(int)> rec = [&](int i) {
        if (stop)
            return;
        if (i == n) {
            ++count;
            if (!visit(t))
                stop = true;
            return;
        }
        const Biset& u = *factors_[i];
        auto place = [&](int o) {
            t.objects[i + 1] = o;
            for (int x = 0; x < u.size(o, t.objects[i]) && !stop; ++x) {
                t.elements[i] = x;
                rec(i + 1);
            }
        };
        if (i + 1 == n)
            place(k);
        else
            for (int o = 0; o < u.source()->object_count() && !stop; ++o)
                place(o);
    };
    rec(0);
    return count;
}

long long BisetChain::tuple_count(int k, int g) const
{
    int n = length();
    // w[o] = number of tails from object o at position i
    std::vector<long long> w(factors_[n - 1]->source()->object_count(), 0);
    w[k] = 1;
    for (int i = n - 1; i >= 0; --i) {
        const Biset& u = *factors_[i];
        std::vector<long long> next(u.target()->object_count(), 0);
        for (int o = 0; o < u.target()->object_count(); ++o)
            for (int s = 0; s < u.source()->object_count(); ++s)
                next[o] += u.size(s, o) * w[s];
        w = std::move(next);
    }
    return w[g];
}

ChainPtr make_chain(std::vector<BisetPtr> factors) { return std::make_shared<const BisetChain>(std::move(factors)); }

namespace {
    BisetChain::Tuple apply_window(const BisetChain& from, const BisetChain& to, int i, int j, int m,
                                   const LocalRewrite& local, const BisetChain::Tuple& t)
    {
        BisetChain::Tuple w{std::vector<int>(t.objects.begin() + i, t.objects.begin() + j + 1),
                            std::vector<int>(t.elements.begin() + i, t.elements.begin() + j)};
        auto r = local(w);
        if (static_cast<int>(r.objects.size()) != m + 1 || static_cast<int>(r.elements.size()) != m)
            fail("chain map: rewrite returned a window of the wrong length");
        if (r.objects.front() != w.objects.front() || r.objects.back() != w.objects.back())
            fail("chain map: rewrite moved a boundary object");
        BisetChain::Tuple out;
        out.objects.assign(t.objects.begin(), t.objects.begin() + i);
        out.objects.insert(out.objects.end(), r.objects.begin(), r.objects.end());
        out.objects.insert(out.objects.end(), t.objects.begin() + j + 1, t.objects.end());
        out.elements.assign(t.elements.begin(), t.elements.begin() + i);
        out.elements.insert(out.elements.end(), r.elements.begin(), r.elements.end());
        out.elements.insert(out.elements.end(), t.elements.begin() + j, t.elements.end());
        for (int p = 0; p < to.length(); ++p)
            if (out.elements[p] < 0 || out.elements[p] >= to.factor(p)->size(out.objects[p + 1], out.objects[p]))
                fail("chain map: rewrite produced an element out of range");
        (void)from;
        return out;
    }

    // Moves a tuple along alpha out of the junction object o_p.
    void junction_move(const BisetChain& c, BisetChain::Tuple& t, int p, int alpha)
    {
        const Biset& left = *c.factor(p - 1);
        const Biset& right = *c.factor(p);
        const Groupoid& M = *right.target();
        int a_inv = M.inverse(alpha);
        t.elements[p - 1] = left.act_source(a_inv, t.objects[p - 1], t.elements[p - 1]);
        t.elements[p] = right.act_target(alpha, t.objects[p + 1], t.elements[p]);
        t.objects[p] = M.tgt(alpha);
    }
}

BisetMorphism chain_map(const ChainPtr& fromp, const ChainPtr& top, int i, int j, int m, const LocalRewrite& local,
                        const ChainMapOptions& options)
{
    const BisetChain& from = *fromp;
    const BisetChain& to = *top;
    int n = from.length();
    if (i < 0 || j > n || i >= j || m < 1 || to.length() != n - (j - i) + m)
        fail("chain map: bad window");
    for (int p = 0; p < i; ++p)
        if (!same_biset(from.factor(p), to.factor(p)))
            fail("chain map: factors left of the window differ");
    for (int p = j; p < n; ++p)
        if (!same_biset(from.factor(p), to.factor(p - (j - i) + m)))
            fail("chain map: factors right of the window differ");
    const Biset& A = *from.result();
    const Biset& B = *to.result();
    check_parallel(A, B);
    int nk = A.source()->object_count(), ng = A.target()->object_count();
    BisetMorphism mor{from.result(), to.result(), std::vector<std::vector<int>>(static_cast<std::size_t>(nk) * ng)};
    std::mt19937 rng(options.seed);
    for (int k = 0; k < nk; ++k)
        for (int g = 0; g < ng; ++g) {
            auto& comp = mor.components[static_cast<std::size_t>(k) * ng + g];
            comp.resize(A.size(k, g));
            for (int c = 0; c < A.size(k, g); ++c)
                comp[c] = to.class_of(apply_window(from, to, i, j, m, local, from.rep(k, g, c)));
            if (!options.check_well_defined || A.size(k, g) == 0)
                continue;
            auto check = [&](const BisetChain::Tuple& t) {
                if (to.class_of(apply_window(from, to, i, j, m, local, t)) != comp[from.class_of(t)])
                    fail("chain map: rewrite is not well defined on coend classes");
                return true;
            };
            if (from.tuple_count(k, g) <= options.exhaustive_budget) {
                from.for_each_tuple(k, g, check);
                continue;
            }
            // random walks through each class along junction moves
            std::uniform_int_distribution<int> pick_class(0, A.size(k, g) - 1);
            for (int s = 0; s < options.samples; ++s) {
                auto t = from.rep(k, g, pick_class(rng));
                for (int step = 0; step < 2 * n; ++step) {
                    if (n < 2)
                        break;
                    int p = 1 + static_cast<int>(rng() % static_cast<unsigned>(n - 1));
                    const auto& outs = from.factor(p)->target()->out(t.objects[p]);
                    junction_move(from, t, p, outs[rng() % outs.size()]);
                }
                check(t);
            }
        }
    return mor;
}

BisetMorphism lift(const ChainPtr& from, const ChainPtr& to, int i, int j, int m, const ChainPtr& sub_from,
                   const ChainPtr& sub_to, const BisetMorphism& sub, const ChainMapOptions& options)
{
    if (!same_biset(sub.from, sub_from->result()) || !same_biset(sub.to, sub_to->result()))
        fail("lift: morphism does not match the sub-chains");
    return chain_map(
        from, to, i, j, m,
        [&](const BisetChain::Tuple& w) {
            int k = w.objects.back(), g = w.objects.front();
            return sub_to->rep(k, g, sub(k, g, sub_from->class_of(w)));
        },
        options);
}

// ---- decomposition -------------------------------------------------------------------

namespace {
    struct ElementIndex
    {
        std::vector<int> h, g, x;
        explicit ElementIndex(const Biset& u)
        {
            for (int a = 0; a < u.source()->object_count(); ++a)
                for (int b = 0; b < u.target()->object_count(); ++b)
                    for (int y = 0; y < u.size(a, b); ++y) {
                        h.push_back(a);
                        g.push_back(b);
                        x.push_back(y);
                    }
        }
    };

    template <typename Visit>
    void for_each_move(const Biset& u, const std::vector<int>& hgens, const std::vector<int>& ggens, int h, int g,
                       int x, Visit&& visit)
    {
        const Groupoid& H = *u.source();
        const Groupoid& G = *u.target();
        for (int a : ggens)
            if (G.src(a) == g)
                visit(a, -1, h, G.tgt(a), u.act_target(a, h, x));
        for (int b : hgens)
            if (H.tgt(b) == h)
                visit(-1, b, H.src(b), g, u.act_source(b, g, x));
    }
}

std::vector<int> biset_orbits(const Biset& u, int* count)
{
    auto hgens = groupoid_generators(*u.source());
    auto ggens = groupoid_generators(*u.target());
    ElementIndex idx(u);
    DisjointSet ds(u.total_size());
    for (int e = 0; e < u.total_size(); ++e)
        for_each_move(u, hgens, ggens, idx.h[e], idx.g[e], idx.x[e],
                      [&](int, int, int h, int g, int x) { ds.unite(e, u.offset(h, g) + x); });
    return ds.canonical_labels(count);
}

bool is_transitive(const Biset& u)
{
    int count = 0;
    biset_orbits(u, &count);
    return count == 1;
}

BisetPtr restrict_biset(const BisetPtr& up, const std::vector<char>& keep)
{
    const Biset& u = *up;
    int nh = u.source()->object_count(), ng = u.target()->object_count();
    std::vector<int> sizes(static_cast<std::size_t>(nh) * ng, 0);
    std::vector<int> renum(u.total_size(), -1), back;
    std::vector<std::vector<int>> members(static_cast<std::size_t>(nh) * ng);
    for (int h = 0; h < nh; ++h)
        for (int g = 0; g < ng; ++g)
            for (int x = 0; x < u.size(h, g); ++x)
                if (keep[u.offset(h, g) + x]) {
                    auto& mem = members[static_cast<std::size_t>(h) * ng + g];
                    renum[u.offset(h, g) + x] = static_cast<int>(mem.size());
                    mem.push_back(x);
                    ++sizes[static_cast<std::size_t>(h) * ng + g];
                }
    const Groupoid& H = *u.source();
    const Groupoid& G = *u.target();
    auto image = [&](int h, int g, int x) {
        int r = renum[u.offset(h, g) + x];
        if (r < 0)
            fail("restrict_biset: kept set is not closed under the actions");
        return r;
    };
    return make_biset(Biset::build(
        u.source(), u.target(), sizes,
        [&](int a, int h, int x) {
            int orig = members[static_cast<std::size_t>(h) * ng + G.src(a)][x];
            return image(h, G.tgt(a), u.act_target(a, h, orig));
        },
        [&](int b, int g, int x) {
            int orig = members[static_cast<std::size_t>(H.tgt(b)) * ng + g][x];
            return image(H.src(b), g, u.act_source(b, g, orig));
        }));
}

std::vector<BisetPtr> decompose_biset(const BisetPtr& u)
{
    int count = 0;
    auto labels = biset_orbits(*u, &count);
    std::vector<BisetPtr> out;
    for (int c = 0; c < count; ++c) {
        std::vector<char> keep(labels.size(), 0);
        for (std::size_t e = 0; e < labels.size(); ++e)
            keep[e] = labels[e] == c;
        out.push_back(restrict_biset(u, keep));
    }
    return out;
}

std::optional<BisetMorphism> bisets_isomorphic(const BisetPtr& up, const BisetPtr& vp)
{
    const Biset& U = *up;
    const Biset& V = *vp;
    check_parallel(U, V);
    int nh = U.source()->object_count(), ng = U.target()->object_count();
    for (int h = 0; h < nh; ++h)
        for (int g = 0; g < ng; ++g)
            if (U.size(h, g) != V.size(h, g))
                return std::nullopt;
    int cu = 0, cv = 0;
    auto lu = biset_orbits(U, &cu);
    auto lv = biset_orbits(V, &cv);
    if (cu != cv)
        return std::nullopt;
    auto hgens = groupoid_generators(*U.source());
    auto ggens = groupoid_generators(*U.target());
    ElementIndex iu(U), iv(V);
    // orbit profiles: sizes per object pair
    auto profile = [&](const std::vector<int>& labels, const ElementIndex& idx, int count) {
        std::vector<std::vector<int>> p(count, std::vector<int>(static_cast<std::size_t>(nh) * ng, 0));
        for (std::size_t e = 0; e < labels.size(); ++e)
            ++p[labels[e]][static_cast<std::size_t>(idx.h[e]) * ng + idx.g[e]];
        return p;
    };
    auto pu = profile(lu, iu, cu), pv = profile(lv, iv, cv);
    std::vector<int> first_u(cu, -1);
    for (int e = static_cast<int>(lu.size()) - 1; e >= 0; --e)
        first_u[lu[e]] = e;
    std::vector<int> image(U.total_size(), -1);
    std::vector<char> used(cv, 0);
    for (int o = 0; o < cu; ++o) {
        int e0 = first_u[o];
        int h0 = iu.h[e0], g0 = iu.g[e0];
        bool matched = false;
        for (int ov = 0; ov < cv && !matched; ++ov) {
            if (used[ov] || pu[o] != pv[ov])
                continue;
            for (int y = 0; y < V.size(h0, g0) && !matched; ++y) {
                if (lv[V.offset(h0, g0) + y] != ov)
                    continue;
                // propagate e0 -> y along generator moves
                std::vector<int> trial(U.total_size(), -1);
                std::vector<int> queue{e0};
                trial[e0] = y;
                bool ok = true;
                for (std::size_t q = 0; q < queue.size() && ok; ++q) {
                    int e = queue[q];
                    int h = iu.h[e], g = iu.g[e], x = iu.x[e], img = trial[e];
                    for_each_move(U, hgens, ggens, h, g, x, [&](int a, int b, int h2, int g2, int x2) {
                        if (!ok)
                            return;
                        int y2 = a >= 0 ? V.act_target(a, h, img) : V.act_source(b, g, img);
                        int e2 = U.offset(h2, g2) + x2;
                        if (trial[e2] < 0) {
                            trial[e2] = y2;
                            queue.push_back(e2);
                        }
                        else if (trial[e2] != y2)
                            ok = false;
                    });
                }
                if (!ok)
                    continue;
                // injective on the orbit
                std::vector<char> hit(V.total_size(), 0);
                for (int e : queue) {
                    int ge = V.offset(iu.h[e], iu.g[e]) + trial[e];
                    if (hit[ge])
                        ok = false;
                    hit[ge] = 1;
                }
                if (!ok)
                    continue;
                for (int e : queue)
                    image[e] = trial[e];
                used[ov] = 1;
                matched = true;
            }
        }
        if (!matched)
            return std::nullopt;
    }
    BisetMorphism m{up, vp, std::vector<std::vector<int>>(static_cast<std::size_t>(nh) * ng)};
    for (int h = 0; h < nh; ++h)
        for (int g = 0; g < ng; ++g) {
            auto& c = m.components[static_cast<std::size_t>(h) * ng + g];
            c.resize(U.size(h, g));
            for (int x = 0; x < U.size(h, g); ++x)
                c[x] = image[U.offset(h, g) + x];
        }
    return m;
}

// ---- transitive bisets ---------------------------------------------------------------

BisetPtr transitive_biset(const GroupoidPtr& source, const GroupoidPtr& target, int h_component, int g_component,
                          const Subgroup& stabilizer)
{
    const Groupoid& H = *source;
    const Groupoid& G = *target;
    int h0 = H.basepoint(h_component), g0 = G.basepoint(g_component);
    auto vg = G.vertex_group(g0);
    auto vh = H.vertex_group(h0);
    int nb = vh.group.order();
    int nh = H.object_count(), ng = G.object_count();
    // value at (h, g): orbits of (xi in G(g0, g), zeta in H(h, h0)) under
    // (xi, zeta).(l1, l2) = (xi l1, l2^-1 zeta)
    struct Cell
    {
        std::vector<int> label, reps;
    };
    std::vector<Cell> cells(static_cast<std::size_t>(nh) * ng);
    std::vector<int> sizes(cells.size(), 0);
    for (int h = 0; h < nh; ++h)
        for (int g = 0; g < ng; ++g) {
            if (H.component(h) != h_component || G.component(g) != g_component)
                continue;
            const auto& xs = G.hom(g0, g);
            const auto& zs = H.hom(h, h0);
            int nz = static_cast<int>(zs.size());
            DisjointSet ds(static_cast<int>(xs.size()) * nz);
            for (int l : stabilizer) {
                int l1 = vg.elements[l / nb], l2 = vh.elements[l % nb];
                for (std::size_t a = 0; a < xs.size(); ++a)
                    for (int b = 0; b < nz; ++b) {
                        int xi = G.compose(xs[a], l1), ze = H.compose(H.inverse(l2), zs[b]);
                        ds.unite(static_cast<int>(a) * nz + b, G.pos_in_hom(xi) * nz + H.pos_in_hom(ze));
                    }
            }
            Cell& c = cells[static_cast<std::size_t>(h) * ng + g];
            int count = 0;
            c.label = ds.canonical_labels(&count);
            c.reps.assign(count, -1);
            for (std::size_t t = 0; t < c.label.size(); ++t)
                if (c.reps[c.label[t]] < 0)
                    c.reps[c.label[t]] = static_cast<int>(t);
            sizes[static_cast<std::size_t>(h) * ng + g] = count;
        }
    auto cell_of = [&](int h, int g) -> const Cell& { return cells[static_cast<std::size_t>(h) * ng + g]; };
    return make_biset(Biset::build(
        source, target, sizes,
        [&](int alpha, int h, int x) {
            int g = G.src(alpha), g2 = G.tgt(alpha);
            int nz = static_cast<int>(H.hom(h, h0).size());
            int t = cell_of(h, g).reps[x];
            int xi = G.hom(g0, g)[t / nz];
            int t2 = G.pos_in_hom(G.compose(alpha, xi)) * nz + t % nz;
            return cell_of(h, g2).label[t2];
        },
        [&](int beta, int g, int x) {
            int h = H.tgt(beta), h2 = H.src(beta);
            int nz = static_cast<int>(H.hom(h, h0).size()), nz2 = static_cast<int>(H.hom(h2, h0).size());
            int t = cell_of(h, g).reps[x];
            int ze = H.hom(h, h0)[t % nz];
            int t2 = (t / nz) * nz2 + H.pos_in_hom(H.compose(ze, beta));
            return cell_of(h2, g).label[t2];
        }));
}

TransitiveKey transitive_key(const Biset& u)
{
    const Groupoid& H = *u.source();
    const Groupoid& G = *u.target();
    int hs = -1, gs = -1;
    for (int h = 0; h < H.object_count() && hs < 0; ++h)
        for (int g = 0; g < G.object_count(); ++g)
            if (u.size(h, g) > 0) {
                hs = h;
                gs = g;
                break;
            }
    if (hs < 0)
        fail("transitive_key: empty biset");
    int hc = H.component(hs), gc = G.component(gs);
    int h0 = H.basepoint(hc), g0 = G.basepoint(gc);
    int x = u.act(H.path_from_base(hs), G.inverse(G.path_from_base(gs)), 0);
    auto vg = G.vertex_group(g0);
    auto vh = H.vertex_group(h0);
    int nb = vh.group.order();
    Subgroup stab;
    for (int a = 0; a < vg.group.order(); ++a)
        for (int b = 0; b < nb; ++b)
            if (u.act(H.inverse(vh.elements[b]), vg.elements[a], x) == x)
                stab.push_back(a * nb + b);
    Group prod = direct_product(vg.group, vh.group);
    return {hc, gc, canonical_conjugate(prod, stab)};
}

} // namespace bispan
