#include "bispan/groupoid.hpp"
#include "bispan/union_find.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace bispan {

namespace {
    [[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }
}

void Groupoid::index()
{
    int n = n_objects_, m = morphism_count();
    if (static_cast<int>(identities_.size()) != n)
        fail("groupoid: one identity per object required");
    if (static_cast<int>(inverses_.size()) != m)
        fail("groupoid: one inverse per morphism required");
    hom_.assign(static_cast<std::size_t>(n) * n, {});
    out_.assign(n, {});
    in_.assign(n, {});
    pos_in_.assign(m, 0);
    pos_hom_.assign(m, 0);
    pos_out_.assign(m, 0);
    for (int f = 0; f < m; ++f) {
        auto [s, t] = arrows_[f];
        if (s < 0 || s >= n || t < 0 || t >= n)
            fail("groupoid: morphism endpoint out of range");
        auto& h = hom_[static_cast<std::size_t>(s) * n + t];
        pos_hom_[f] = static_cast<int>(h.size());
        h.push_back(f);
        pos_in_[f] = static_cast<int>(in_[t].size());
        in_[t].push_back(f);
    }
    // out(a) lists hom(a, b) for b = 0, 1, ...
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int f : hom(a, b)) {
                pos_out_[f] = static_cast<int>(out_[a].size());
                out_[a].push_back(f);
            }
    for (int o = 0; o < n; ++o) {
        int e = identities_[o];
        if (e < 0 || e >= m || arrows_[e].src != o || arrows_[e].tgt != o)
            fail("groupoid: identity has wrong endpoints");
    }
    for (int f = 0; f < m; ++f) {
        int g = inverses_[f];
        if (g < 0 || g >= m || arrows_[g].src != arrows_[f].tgt || arrows_[g].tgt != arrows_[f].src)
            fail("groupoid: inverse has wrong endpoints");
    }

    DisjointSet ds(n);
    for (const auto& a : arrows_)
        ds.unite(a.src, a.tgt);
    int classes = 0;
    component_ = ds.canonical_labels(&classes);
    basepoints_.assign(classes, -1);
    component_objects_.assign(classes, {});
    for (int o = 0; o < n; ++o) {
        int c = component_[o];
        if (basepoints_[c] < 0)
            basepoints_[c] = o;
        component_objects_[c].push_back(o);
    }
    path_.assign(n, -1);
    for (int o = 0; o < n; ++o) {
        int b = basepoints_[component_[o]];
        if (o == b)
            path_[o] = identities_[o];
        else if (hom(b, o).empty())
            fail("groupoid: connected objects without a morphism between them");
        else
            path_[o] = hom(b, o).front();
    }
}

void Groupoid::validate() const
{
    int n = n_objects_, m = morphism_count();
    for (int g = 0; g < m; ++g) {
        const auto& ins = in_[src(g)];
        if (comp_[g].size() != ins.size())
            fail("groupoid: composition table has wrong shape");
        for (std::size_t k = 0; k < ins.size(); ++k) {
            int gf = comp_[g][k];
            if (gf < 0 || gf >= m || src(gf) != src(ins[k]) || tgt(gf) != tgt(g))
                fail("groupoid: composite has wrong endpoints");
        }
    }
    for (int f = 0; f < m; ++f) {
        if (compose(identity(tgt(f)), f) != f || compose(f, identity(src(f))) != f)
            fail("groupoid: identity law fails");
        if (compose(inverse(f), f) != identity(src(f)) || compose(f, inverse(f)) != identity(tgt(f)))
            fail("groupoid: inverse law fails");
    }
    for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
            for (int g : hom(b, c))
                for (int f : in_[b])
                    for (int h : out_[c])
                        if (compose(h, compose(g, f)) != compose(compose(h, g), f))
                            fail("groupoid: composition is not associative");
}

Groupoid Groupoid::from_tables(int objects, std::vector<Arrow> arrows, std::vector<int> identities,
                               std::vector<int> inverses, const std::vector<std::array<int, 3>>& compose)
{
    std::map<std::pair<int, int>, int> table;
    int m = static_cast<int>(arrows.size());
    for (const auto& [g, f, gf] : compose) {
        if (g < 0 || g >= m || f < 0 || f >= m)
            fail("groupoid: composition entry out of range");
        if (!table.emplace(std::make_pair(g, f), gf).second)
            fail("groupoid: duplicate composition entry");
    }
    return build(objects, std::move(arrows), std::move(identities), std::move(inverses), [&](int g, int f) {
        auto it = table.find({g, f});
        if (it == table.end())
            fail("groupoid: composition table misses a composable pair");
        return it->second;
    });
}

Groupoid::VertexGroup Groupoid::vertex_group(int o) const
{
    VertexGroup v;
    v.elements = hom(o, o);
    v.index_of.assign(morphism_count(), -1);
    for (std::size_t i = 0; i < v.elements.size(); ++i)
        v.index_of[v.elements[i]] = static_cast<int>(i);
    std::size_t k = v.elements.size();
    std::vector<std::vector<int>> t(k, std::vector<int>(k));
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            t[a][b] = v.index_of[compose(v.elements[a], v.elements[b])];
    v.group = Group::from_table(t);
    return v;
}

std::string Groupoid::summary() const
{
    std::ostringstream os;
    os << n_objects_ << (n_objects_ == 1 ? " object, " : " objects, ") << morphism_count()
       << (morphism_count() == 1 ? " morphism, " : " morphisms, ");
    if (component_count() == 1)
        os << "connected";
    else
        os << component_count() << " components";
    return os.str();
}

bool Groupoid::operator==(const Groupoid& other) const
{
    if (n_objects_ != other.n_objects_ || morphism_count() != other.morphism_count()
        || identities_ != other.identities_ || inverses_ != other.inverses_)
        return false;
    for (int f = 0; f < morphism_count(); ++f)
        if (src(f) != other.src(f) || tgt(f) != other.tgt(f))
            return false;
    return comp_ == other.comp_;
}

// ---- constructions ---------------------------------------------------------

GroupoidPtr make_groupoid(Groupoid g) { return std::make_shared<const Groupoid>(std::move(g)); }

GroupoidPtr from_group(const Group& g)
{
    int n = g.order();
    std::vector<Groupoid::Arrow> arrows(n, {0, 0});
    std::vector<int> inverses(n);
    for (int x = 0; x < n; ++x)
        inverses[x] = g.inv(x);
    return make_groupoid(Groupoid::build(1, arrows, {g.identity()}, inverses,
                                         [&](int a, int b) { return g.mul(a, b); }));
}

GroupoidPtr trivial_groupoid() { return from_group(cyclic_group(1)); }

GroupoidPtr empty_groupoid()
{
    return make_groupoid(Groupoid::build(0, {}, {}, {}, [](int, int) { return 0; }));
}

GroupoidPtr discrete_groupoid(int objects)
{
    std::vector<Groupoid::Arrow> arrows;
    std::vector<int> ids;
    for (int o = 0; o < objects; ++o) {
        arrows.push_back({o, o});
        ids.push_back(o);
    }
    return make_groupoid(Groupoid::build(objects, arrows, ids, ids, [](int g, int) { return g; }));
}

GroupoidPtr disjoint_union(const GroupoidPtr& a, const GroupoidPtr& b)
{
    int na = a->object_count(), ma = a->morphism_count();
    std::vector<Groupoid::Arrow> arrows;
    std::vector<int> ids, invs;
    for (int f = 0; f < ma; ++f) {
        arrows.push_back({a->src(f), a->tgt(f)});
        invs.push_back(a->inverse(f));
    }
    for (int f = 0; f < b->morphism_count(); ++f) {
        arrows.push_back({b->src(f) + na, b->tgt(f) + na});
        invs.push_back(b->inverse(f) + ma);
    }
    for (int o = 0; o < na; ++o)
        ids.push_back(a->identity(o));
    for (int o = 0; o < b->object_count(); ++o)
        ids.push_back(b->identity(o) + ma);
    return make_groupoid(Groupoid::build(na + b->object_count(), arrows, ids, invs, [&](int g, int f) {
        return g < ma ? a->compose(g, f) : b->compose(g - ma, f - ma) + ma;
    }));
}

GroupoidPtr product(const GroupoidPtr& a, const GroupoidPtr& b)
{
    int nb = b->object_count(), mb = b->morphism_count();
    std::vector<Groupoid::Arrow> arrows;
    std::vector<int> ids, invs;
    for (int f = 0; f < a->morphism_count(); ++f)
        for (int g = 0; g < mb; ++g) {
            arrows.push_back({a->src(f) * nb + b->src(g), a->tgt(f) * nb + b->tgt(g)});
            invs.push_back(a->inverse(f) * mb + b->inverse(g));
        }
    for (int x = 0; x < a->object_count(); ++x)
        for (int y = 0; y < nb; ++y)
            ids.push_back(a->identity(x) * mb + b->identity(y));
    return make_groupoid(Groupoid::build(a->object_count() * nb, arrows, ids, invs, [&](int g, int f) {
        return a->compose(g / mb, f / mb) * mb + b->compose(g % mb, f % mb);
    }, false));
}

// ---- functors --------------------------------------------------------------

void Functor::validate() const
{
    if (!source || !target)
        fail("functor: missing groupoid");
    const auto& s = *source;
    const auto& t = *target;
    if (static_cast<int>(on_objects.size()) != s.object_count()
        || static_cast<int>(on_morphisms.size()) != s.morphism_count())
        fail("functor: map sizes do not match the source");
    for (int o : on_objects)
        if (o < 0 || o >= t.object_count())
            fail("functor: object image out of range");
    for (int f = 0; f < s.morphism_count(); ++f) {
        int g = on_morphisms[f];
        if (g < 0 || g >= t.morphism_count())
            fail("functor: morphism image out of range");
        if (t.src(g) != on_objects[s.src(f)] || t.tgt(g) != on_objects[s.tgt(f)])
            fail("functor: does not preserve endpoints");
    }
    for (int o = 0; o < s.object_count(); ++o)
        if (on_morphisms[s.identity(o)] != t.identity(on_objects[o]))
            fail("functor: does not preserve identities");
    for (int g = 0; g < s.morphism_count(); ++g)
        for (int f : s.in(s.src(g)))
            if (on_morphisms[s.compose(g, f)] != t.compose(on_morphisms[g], on_morphisms[f]))
                fail("functor: does not preserve composition");
}

bool Functor::operator==(const Functor& other) const
{
    return (source == other.source || *source == *other.source)
        && (target == other.target || *target == *other.target) && on_objects == other.on_objects
        && on_morphisms == other.on_morphisms;
}

Functor identity_functor(const GroupoidPtr& g)
{
    Functor f{g, g, {}, {}};
    f.on_objects.resize(g->object_count());
    f.on_morphisms.resize(g->morphism_count());
    for (int o = 0; o < g->object_count(); ++o)
        f.on_objects[o] = o;
    for (int m = 0; m < g->morphism_count(); ++m)
        f.on_morphisms[m] = m;
    return f;
}

Functor compose(const Functor& g, const Functor& f)
{
    if (!(f.target == g.source || *f.target == *g.source))
        fail("compose: functors are not composable");
    Functor h{f.source, g.target, f.on_objects, f.on_morphisms};
    for (int& o : h.on_objects)
        o = g.on_objects[o];
    for (int& m : h.on_morphisms)
        m = g.on_morphisms[m];
    return h;
}

Functor constant_functor(const GroupoidPtr& source, const GroupoidPtr& target, int object)
{
    Functor f{source, target, std::vector<int>(source->object_count(), object),
              std::vector<int>(source->morphism_count(), target->identity(object))};
    return f;
}

Functor from_homomorphism(const GroupoidPtr& source, const GroupoidPtr& target, const Homomorphism& h)
{
    if (source->object_count() != 1 || target->object_count() != 1)
        fail("from_homomorphism: one-object groupoids required");
    Functor f{source, target, {0}, h};
    f.validate();
    return f;
}

Functor inclusion_left(const GroupoidPtr& a, const GroupoidPtr& /*b*/, const GroupoidPtr& sum)
{
    Functor f = identity_functor(a);
    f.target = sum;
    return f;
}

Functor inclusion_right(const GroupoidPtr& a, const GroupoidPtr& b, const GroupoidPtr& sum)
{
    Functor f = identity_functor(b);
    f.target = sum;
    for (int& o : f.on_objects)
        o += a->object_count();
    for (int& m : f.on_morphisms)
        m += a->morphism_count();
    return f;
}

Functor copair(const Functor& f1, const Functor& f2, const GroupoidPtr& sum)
{
    Functor f{sum, f1.target, f1.on_objects, f1.on_morphisms};
    f.on_objects.insert(f.on_objects.end(), f2.on_objects.begin(), f2.on_objects.end());
    f.on_morphisms.insert(f.on_morphisms.end(), f2.on_morphisms.begin(), f2.on_morphisms.end());
    return f;
}

Functor product_functor(const Functor& f1, const Functor& f2, const GroupoidPtr& src, const GroupoidPtr& tgt)
{
    int n2 = f2.source->object_count(), m2 = f2.source->morphism_count();
    int tn2 = f2.target->object_count(), tm2 = f2.target->morphism_count();
    Functor f{src, tgt, std::vector<int>(src->object_count()), std::vector<int>(src->morphism_count())};
    for (int o = 0; o < src->object_count(); ++o)
        f.on_objects[o] = f1.on_objects[o / n2] * tn2 + f2.on_objects[o % n2];
    for (int m = 0; m < src->morphism_count(); ++m)
        f.on_morphisms[m] = f1.on_morphisms[m / m2] * tm2 + f2.on_morphisms[m % m2];
    return f;
}

Functor projection_left(const GroupoidPtr& a, const GroupoidPtr& b, const GroupoidPtr& prod)
{
    Functor f{prod, a, std::vector<int>(prod->object_count()), std::vector<int>(prod->morphism_count())};
    for (int o = 0; o < prod->object_count(); ++o)
        f.on_objects[o] = o / b->object_count();
    for (int m = 0; m < prod->morphism_count(); ++m)
        f.on_morphisms[m] = m / b->morphism_count();
    return f;
}

Functor projection_right(const GroupoidPtr& /*a*/, const GroupoidPtr& b, const GroupoidPtr& prod)
{
    Functor f{prod, b, std::vector<int>(prod->object_count()), std::vector<int>(prod->morphism_count())};
    for (int o = 0; o < prod->object_count(); ++o)
        f.on_objects[o] = o % b->object_count();
    for (int m = 0; m < prod->morphism_count(); ++m)
        f.on_morphisms[m] = m % b->morphism_count();
    return f;
}

// ---- natural isomorphisms -------------------------------------------------

void NaturalIso::validate() const
{
    from.validate();
    to.validate();
    if (!(*from.source == *to.source) || !(*from.target == *to.target))
        fail("natural iso: functors are not parallel");
    const auto& s = *from.source;
    const auto& t = *from.target;
    if (static_cast<int>(components.size()) != s.object_count())
        fail("natural iso: one component per object required");
    for (int x = 0; x < s.object_count(); ++x) {
        int c = components[x];
        if (c < 0 || c >= t.morphism_count() || t.src(c) != from.object(x) || t.tgt(c) != to.object(x))
            fail("natural iso: component has wrong endpoints");
        if (t.compose(t.inverse(c), c) != t.identity(from.object(x)))
            fail("natural iso: component is not invertible");
    }
    for (int f = 0; f < s.morphism_count(); ++f)
        if (t.compose(to(f), components[s.src(f)]) != t.compose(components[s.tgt(f)], from(f)))
            fail("natural iso: naturality square does not commute");
}

bool NaturalIso::operator==(const NaturalIso& other) const
{
    return from == other.from && to == other.to && components == other.components;
}

NaturalIso identity_iso(const Functor& f)
{
    NaturalIso a{f, f, std::vector<int>(f.source->object_count())};
    for (int x = 0; x < f.source->object_count(); ++x)
        a.components[x] = f.target->identity(f.object(x));
    return a;
}

NaturalIso vertical(const NaturalIso& second, const NaturalIso& first)
{
    NaturalIso a{first.from, second.to, first.components};
    for (std::size_t x = 0; x < a.components.size(); ++x)
        a.components[x] = first.from.target->compose(second.components[x], first.components[x]);
    return a;
}

NaturalIso inverse(const NaturalIso& a)
{
    NaturalIso b{a.to, a.from, a.components};
    for (int& c : b.components)
        c = a.from.target->inverse(c);
    return b;
}

NaturalIso whisker_left(const Functor& h, const NaturalIso& a)
{
    NaturalIso b{compose(h, a.from), compose(h, a.to), a.components};
    for (int& c : b.components)
        c = h(c);
    return b;
}

NaturalIso whisker_right(const NaturalIso& a, const Functor& k)
{
    NaturalIso b{compose(a.from, k), compose(a.to, k), std::vector<int>(k.source->object_count())};
    for (int x = 0; x < k.source->object_count(); ++x)
        b.components[x] = a.components[k.object(x)];
    return b;
}

// ---- iso-comma --------------------------------------------------------------

int IsoComma::find_object(int s, int t, int g) const
{
    return pair_offset[static_cast<std::size_t>(s) * t_objects + t] + base->pos_in_hom(g);
}

int IsoComma::find_morphism(int i, int phi, int psi) const
{
    const Groupoid& T = *t_groupoid;
    return first_morphism[i] + s_groupoid->pos_in_out(phi) * static_cast<int>(T.out(objects[i].t).size()) +
           T.pos_in_out(psi);
}

Subgroupoid full_subgroupoid(const GroupoidPtr& gp, const std::vector<int>& objects)
{
    const Groupoid& G = *gp;
    std::vector<int> local(G.object_count(), -1);
    for (std::size_t i = 0; i < objects.size(); ++i)
        local[objects[i]] = static_cast<int>(i);
    std::vector<int> mors, local_mor(G.morphism_count(), -1);
    for (int a : objects)
        for (int b : objects)
            for (int f : G.hom(a, b)) {
                local_mor[f] = static_cast<int>(mors.size());
                mors.push_back(f);
            }
    std::vector<Groupoid::Arrow> arrows;
    std::vector<int> invs;
    for (int f : mors) {
        arrows.push_back({local[G.src(f)], local[G.tgt(f)]});
        invs.push_back(local_mor[G.inverse(f)]);
    }
    std::vector<int> ids;
    for (int a : objects)
        ids.push_back(local_mor[G.identity(a)]);
    auto sub = make_groupoid(Groupoid::build(static_cast<int>(objects.size()), arrows, ids, invs,
                                             [&](int y, int x) { return local_mor[G.compose(mors[y], mors[x])]; }, false));
    return {sub, Functor{sub, gp, objects, mors}};
}

IsoComma iso_comma(const Functor& a, const Functor& b)
{
    if (!(a.target == b.target || *a.target == *b.target))
        fail("iso_comma: functors do not share a target");
    const Groupoid& S = *a.source;
    const Groupoid& T = *b.source;
    const Groupoid& G = *a.target;
    IsoComma ic;
    ic.base = a.target;
    ic.t_objects = T.object_count();
    ic.pair_offset.assign(static_cast<std::size_t>(S.object_count()) * T.object_count(), 0);
    for (int s = 0; s < S.object_count(); ++s)
        for (int t = 0; t < T.object_count(); ++t) {
            ic.pair_offset[static_cast<std::size_t>(s) * T.object_count() + t] = static_cast<int>(ic.objects.size());
            for (int g : G.hom(a.object(s), b.object(t)))
                ic.objects.push_back({s, t, g});
        }
    int n = static_cast<int>(ic.objects.size());
    // morphisms out of object i: pairs (phi in out(s), psi in out(t))
    std::vector<int> first(n + 1, 0);
    for (int i = 0; i < n; ++i)
        first[i + 1] = first[i] + static_cast<int>(S.out(ic.objects[i].s).size() * T.out(ic.objects[i].t).size());
    int m = first[n];
    std::vector<Groupoid::Arrow> arrows(m);
    std::vector<int> ids(n), invs(m);
    ic.morphisms.resize(m);
    auto id_of = [&](int i, int phi, int psi) {
        return first[i] + S.pos_in_out(phi) * static_cast<int>(T.out(ic.objects[i].t).size()) + T.pos_in_out(psi);
    };
    for (int i = 0; i < n; ++i) {
        auto [s, t, g] = ic.objects[i];
        for (int phi : S.out(s))
            for (int psi : T.out(t)) {
                int k = id_of(i, phi, psi);
                int g2 = G.compose(b(psi), g, G.inverse(a(phi)));
                int j = ic.find_object(S.tgt(phi), T.tgt(psi), g2);
                arrows[k] = {i, j};
                ic.morphisms[k] = {phi, psi};
            }
        ids[i] = id_of(i, S.identity(s), T.identity(t));
    }
    for (int k = 0; k < m; ++k) {
        auto [phi, psi] = ic.morphisms[k];
        invs[k] = id_of(arrows[k].tgt, S.inverse(phi), T.inverse(psi));
    }
    ic.first_morphism.assign(first.begin(), first.end() - 1);
    ic.s_groupoid = a.source;
    ic.t_groupoid = b.source;
    ic.apex = make_groupoid(Groupoid::build(n, arrows, ids, invs, [&](int y, int x) {
        auto [phi2, psi2] = ic.morphisms[y];
        auto [phi1, psi1] = ic.morphisms[x];
        return id_of(arrows[x].src, S.compose(phi2, phi1), T.compose(psi2, psi1));
    }, false));
    ic.p = Functor{ic.apex, a.source, std::vector<int>(n), std::vector<int>(m)};
    ic.q = Functor{ic.apex, b.source, std::vector<int>(n), std::vector<int>(m)};
    for (int i = 0; i < n; ++i) {
        ic.p.on_objects[i] = ic.objects[i].s;
        ic.q.on_objects[i] = ic.objects[i].t;
    }
    for (int k = 0; k < m; ++k) {
        ic.p.on_morphisms[k] = ic.morphisms[k].first;
        ic.q.on_morphisms[k] = ic.morphisms[k].second;
    }
    ic.gamma = NaturalIso{compose(a, ic.p), compose(b, ic.q), std::vector<int>(n)};
    for (int i = 0; i < n; ++i)
        ic.gamma.components[i] = ic.objects[i].gamma;
    return ic;
}

// ---- searches -----------------------------------------------------------------

namespace {
    // Functor out of a connected component determined by the image y of the
    // basepoint, images of the chosen paths, and a vertex-group homomorphism.
    void fill_component(const Groupoid& s, const Groupoid& t, int comp, const Groupoid::VertexGroup& vs,
                        const Groupoid::VertexGroup& vt, const Homomorphism& h, const std::vector<int>& path_images,
                        Functor& f)
    {
        // path_images[o] : image of path_from_base(o)
        for (int o : s.component_objects(comp))
            f.on_objects[o] = t.tgt(path_images[o]);
        for (int o : s.component_objects(comp))
            for (int x : s.out(o)) {
                int y = s.tgt(x);
                int loop = s.compose(s.inverse(s.path_from_base(y)), x, s.path_from_base(o));
                int img = vt.elements[h[vs.index_of[loop]]];
                f.on_morphisms[x] = t.compose(path_images[y], img, t.inverse(path_images[o]));
            }
    }

    std::optional<Homomorphism> vertex_iso(const Groupoid::VertexGroup& a, const Groupoid::VertexGroup& b)
    {
        return find_isomorphism(a.group, b.group);
    }
}

std::optional<Equivalence> find_equivalence(const GroupoidPtr& g1, const GroupoidPtr& g2)
{
    const Groupoid& A = *g1;
    const Groupoid& B = *g2;
    int ca = A.component_count();
    if (ca != B.component_count())
        return std::nullopt;
    std::vector<Groupoid::VertexGroup> va, vb;
    for (int c = 0; c < ca; ++c) {
        va.push_back(A.vertex_group(A.basepoint(c)));
        vb.push_back(B.vertex_group(B.basepoint(c)));
    }
    // isomorphism of groups is transitive, so greedy matching is exact
    std::vector<int> match(ca, -1);
    std::vector<char> used(ca, 0);
    std::vector<Homomorphism> iso(ca);
    for (int c = 0; c < ca; ++c) {
        for (int d = 0; d < ca && match[c] < 0; ++d) {
            if (used[d] || va[c].group.order() != vb[d].group.order())
                continue;
            if (auto h = vertex_iso(va[c], vb[d])) {
                match[c] = d;
                used[d] = 1;
                iso[c] = std::move(*h);
            }
        }
        if (match[c] < 0)
            return std::nullopt;
    }
    Equivalence e;
    e.forward = Functor{g1, g2, std::vector<int>(A.object_count()), std::vector<int>(A.morphism_count())};
    e.backward = Functor{g2, g1, std::vector<int>(B.object_count()), std::vector<int>(B.morphism_count())};
    for (int c = 0; c < ca; ++c) {
        int d = match[c];
        int bb = B.basepoint(d), ba = A.basepoint(c);
        std::vector<int> pa(A.object_count(), -1), pb(B.object_count(), -1);
        for (int o : A.component_objects(c))
            pa[o] = B.identity(bb);
        for (int o : B.component_objects(d))
            pb[o] = A.identity(ba);
        Homomorphism inv(iso[c].size());
        for (std::size_t x = 0; x < iso[c].size(); ++x)
            inv[iso[c][x]] = static_cast<int>(x);
        fill_component(A, B, c, va[c], vb[d], iso[c], pa, e.forward);
        fill_component(B, A, d, vb[d], va[c], inv, pb, e.backward);
    }
    e.unit = NaturalIso{identity_functor(g1), compose(e.backward, e.forward), std::vector<int>(A.object_count())};
    for (int x = 0; x < A.object_count(); ++x)
        e.unit.components[x] = A.inverse(A.path_from_base(x));
    e.counit = NaturalIso{compose(e.forward, e.backward), identity_functor(g2), std::vector<int>(B.object_count())};
    for (int x = 0; x < B.object_count(); ++x)
        e.counit.components[x] = B.path_from_base(x);
    return e;
}

bool is_equivalence(const Functor& f)
{
    const Groupoid& s = *f.source;
    const Groupoid& t = *f.target;
    // essentially surjective on components, bijective on components, iso on vertex groups
    if (s.component_count() != t.component_count())
        return false;
    std::vector<char> hit(t.component_count(), 0);
    for (int c = 0; c < s.component_count(); ++c) {
        int b = s.basepoint(c);
        int d = t.component(f.object(b));
        if (hit[d])
            return false;
        hit[d] = 1;
        const auto& hs = s.hom(b, b);
        const auto& ht = t.hom(f.object(b), f.object(b));
        if (hs.size() != ht.size())
            return false;
        std::vector<char> seen(t.morphism_count(), 0);
        for (int x : hs) {
            if (seen[f(x)])
                return false;
            seen[f(x)] = 1;
        }
    }
    return true;
}

namespace {
    // Natural isos f1 => f2 on one component, determined by the basepoint component.
    bool extend_iso(const Functor& f1, const Functor& f2, int comp, int cb, std::vector<int>& out)
    {
        const Groupoid& s = *f1.source;
        const Groupoid& t = *f1.target;
        for (int o : s.component_objects(comp)) {
            int p = s.path_from_base(o);
            out[o] = t.compose(f2(p), cb, t.inverse(f1(p)));
        }
        for (int o : s.component_objects(comp))
            for (int x : s.out(o))
                if (t.compose(f2(x), out[o]) != t.compose(out[s.tgt(x)], f1(x)))
                    return false;
        return true;
    }

    void check_parallel(const Functor& f1, const Functor& f2)
    {
        if (!(f1.source == f2.source || *f1.source == *f2.source)
            || !(f1.target == f2.target || *f1.target == *f2.target))
            fail("natural iso search: functors are not parallel");
    }
}

std::optional<NaturalIso> find_natural_iso(const Functor& f1, const Functor& f2)
{
    check_parallel(f1, f2);
    const Groupoid& s = *f1.source;
    const Groupoid& t = *f1.target;
    NaturalIso a{f1, f2, std::vector<int>(s.object_count(), -1)};
    for (int c = 0; c < s.component_count(); ++c) {
        int b = s.basepoint(c);
        bool found = false;
        for (int cb : t.hom(f1.object(b), f2.object(b)))
            if (extend_iso(f1, f2, c, cb, a.components)) {
                found = true;
                break;
            }
        if (!found)
            return std::nullopt;
    }
    return a;
}

std::vector<NaturalIso> enumerate_natural_isos(const Functor& f1, const Functor& f2)
{
    check_parallel(f1, f2);
    const Groupoid& s = *f1.source;
    const Groupoid& t = *f1.target;
    std::vector<std::vector<std::vector<int>>> per_component(s.component_count());
    for (int c = 0; c < s.component_count(); ++c) {
        int b = s.basepoint(c);
        std::vector<int> comps(s.object_count(), -1);
        for (int cb : t.hom(f1.object(b), f2.object(b)))
            if (extend_iso(f1, f2, c, cb, comps))
                per_component[c].push_back(comps);
        if (per_component[c].empty())
            return {};
    }
    std::vector<NaturalIso> out;
    std::vector<int> choice(s.component_count(), 0);
    while (true) {
        NaturalIso a{f1, f2, std::vector<int>(s.object_count(), -1)};
        for (int c = 0; c < s.component_count(); ++c)
            for (int o : s.component_objects(c))
                a.components[o] = per_component[c][choice[c]][o];
        out.push_back(std::move(a));
        int c = 0;
        while (c < s.component_count() && ++choice[c] == static_cast<int>(per_component[c].size()))
            choice[c++] = 0;
        if (c == s.component_count())
            break;
    }
    return out;
}

std::vector<Functor> enumerate_functors(const GroupoidPtr& source, const GroupoidPtr& target)
{
    const Groupoid& s = *source;
    const Groupoid& t = *target;
    // per component: all (basepoint image, path images, homomorphism) choices
    struct Piece
    {
        std::vector<int> objects, morphisms; // restricted to the component, -1 elsewhere
    };
    std::vector<std::vector<Piece>> pieces(s.component_count());
    for (int c = 0; c < s.component_count(); ++c) {
        int b = s.basepoint(c);
        auto vs = s.vertex_group(b);
        const auto& objs = s.component_objects(c);
        for (int y = 0; y < t.object_count(); ++y) {
            auto vt = t.vertex_group(y);
            auto homs = all_homomorphisms(vs.group, vt.group);
            // choose the image of every non-base path among out(y)
            std::vector<int> others;
            for (int o : objs)
                if (o != b)
                    others.push_back(o);
            std::vector<int> pick(others.size(), 0);
            const auto& outs = t.out(y);
            while (true) {
                std::vector<int> path_images(s.object_count(), -1);
                path_images[b] = t.identity(y);
                for (std::size_t i = 0; i < others.size(); ++i)
                    path_images[others[i]] = outs[pick[i]];
                for (const auto& h : homs) {
                    Functor f{source, target, std::vector<int>(s.object_count(), -1),
                              std::vector<int>(s.morphism_count(), -1)};
                    fill_component(s, t, c, vs, vt, h, path_images, f);
                    pieces[c].push_back({f.on_objects, f.on_morphisms});
                }
                std::size_t i = 0;
                while (i < others.size() && ++pick[i] == static_cast<int>(outs.size()))
                    pick[i++] = 0;
                if (i == others.size())
                    break;
            }
        }
        if (pieces[c].empty())
            return {};
    }
    std::vector<Functor> out;
    std::vector<std::size_t> choice(s.component_count(), 0);
    while (true) {
        Functor f{source, target, std::vector<int>(s.object_count(), -1), std::vector<int>(s.morphism_count(), -1)};
        for (int c = 0; c < s.component_count(); ++c) {
            const auto& p = pieces[c][choice[c]];
            for (int o = 0; o < s.object_count(); ++o)
                if (p.objects[o] >= 0)
                    f.on_objects[o] = p.objects[o];
            for (int m = 0; m < s.morphism_count(); ++m)
                if (p.morphisms[m] >= 0)
                    f.on_morphisms[m] = p.morphisms[m];
        }
        out.push_back(std::move(f));
        int c = 0;
        while (c < s.component_count() && ++choice[c] == pieces[c].size())
            choice[c++] = 0;
        if (c == s.component_count())
            break;
    }
    return out;
}

} // namespace bispan
