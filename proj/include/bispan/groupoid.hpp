#pragma once

#include "bispan/group.hpp"

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace bispan {

// Finite groupoid with dense object and morphism ids. Composition is stored
// as a full table over composable pairs.
class Groupoid
{
  public:
    struct Arrow
    {
        int src;
        int tgt;
    };

    Groupoid() = default;

    // `compose(g, f)` is queried for every composable pair (tgt f == src g).
    // With `check`, throws std::invalid_argument if the groupoid laws fail;
    // constructions that are lawful by design skip the cubic check.
    template <typename ComposeFn>
    static Groupoid build(int objects, std::vector<Arrow> arrows, std::vector<int> identities,
                          std::vector<int> inverses, ComposeFn&& compose, bool check = true);

    // From a composition list of triples (g, f, g∘f); must cover every composable pair.
    static Groupoid from_tables(int objects, std::vector<Arrow> arrows, std::vector<int> identities,
                                std::vector<int> inverses, const std::vector<std::array<int, 3>>& compose);

    int object_count() const { return n_objects_; }
    int morphism_count() const { return static_cast<int>(arrows_.size()); }
    int src(int f) const { return arrows_[f].src; }
    int tgt(int f) const { return arrows_[f].tgt; }
    int identity(int o) const { return identities_[o]; }
    int inverse(int f) const { return inverses_[f]; }
    // g∘f; requires tgt(f) == src(g).
    int compose(int g, int f) const { return comp_[g][pos_in_[f]]; }
    int compose(int h, int g, int f) const { return compose(h, compose(g, f)); }

    const std::vector<int>& hom(int a, int b) const { return hom_[static_cast<std::size_t>(a) * n_objects_ + b]; }
    const std::vector<int>& out(int a) const { return out_[a]; }
    const std::vector<int>& in(int b) const { return in_[b]; }
    int pos_in_hom(int f) const { return pos_hom_[f]; }
    int pos_in_out(int f) const { return pos_out_[f]; }
    bool is_identity(int f) const { return identities_[src(f)] == f; }

    // Connected components; basepoint = lowest object id in the component.
    int component_count() const { return static_cast<int>(basepoints_.size()); }
    int component(int o) const { return component_[o]; }
    int basepoint(int c) const { return basepoints_[c]; }
    const std::vector<int>& component_objects(int c) const { return component_objects_[c]; }
    // A fixed morphism basepoint(component(o)) -> o.
    int path_from_base(int o) const { return path_[o]; }

    // Automorphism group of o; element i of the group is morphism elements[i].
    struct VertexGroup
    {
        Group group;
        std::vector<int> elements;
        std::vector<int> index_of; // morphism id -> group element, -1 outside
    };
    VertexGroup vertex_group(int o) const;

    // Exhaustive check of the groupoid laws; throws on failure.
    void validate() const;

    std::string summary() const;
    bool operator==(const Groupoid& other) const;

  private:
    void index();

    int n_objects_ = 0;
    std::vector<Arrow> arrows_;
    std::vector<int> identities_;
    std::vector<int> inverses_;
    std::vector<std::vector<int>> comp_; // comp_[g][pos_in_[f]]
    std::vector<int> pos_in_;
    std::vector<int> pos_hom_;
    std::vector<int> pos_out_;
    std::vector<std::vector<int>> hom_;
    std::vector<std::vector<int>> out_;
    std::vector<std::vector<int>> in_;
    std::vector<int> component_;
    std::vector<int> basepoints_;
    std::vector<std::vector<int>> component_objects_;
    std::vector<int> path_;
};

using GroupoidPtr = std::shared_ptr<const Groupoid>;

template <typename ComposeFn>
Groupoid Groupoid::build(int objects, std::vector<Arrow> arrows, std::vector<int> identities,
                         std::vector<int> inverses, ComposeFn&& compose, bool check)
{
    Groupoid g;
    g.n_objects_ = objects;
    g.arrows_ = std::move(arrows);
    g.identities_ = std::move(identities);
    g.inverses_ = std::move(inverses);
    g.index();
    int m = g.morphism_count();
    g.comp_.assign(m, {});
    for (int x = 0; x < m; ++x) {
        const auto& ins = g.in_[g.arrows_[x].src];
        g.comp_[x].resize(ins.size());
        for (std::size_t k = 0; k < ins.size(); ++k)
            g.comp_[x][k] = compose(x, ins[k]);
    }
    if (check)
        g.validate();
    return g;
}

GroupoidPtr make_groupoid(Groupoid g);
inline bool same_groupoid(const GroupoidPtr& a, const GroupoidPtr& b) { return a == b || *a == *b; }
GroupoidPtr from_group(const Group& g);
GroupoidPtr trivial_groupoid();                // 1
GroupoidPtr empty_groupoid();                  // 0
GroupoidPtr discrete_groupoid(int objects);
GroupoidPtr disjoint_union(const GroupoidPtr& a, const GroupoidPtr& b);
// object (x, y) -> x * |Obj b| + y, morphism (f, g) -> f * |Mor b| + g
GroupoidPtr product(const GroupoidPtr& a, const GroupoidPtr& b);

// ---- functors and natural isomorphisms ------------------------------------

struct Functor
{
    GroupoidPtr source;
    GroupoidPtr target;
    std::vector<int> on_objects;
    std::vector<int> on_morphisms;

    int operator()(int f) const { return on_morphisms[f]; }
    int object(int o) const { return on_objects[o]; }

    void validate() const;
    bool operator==(const Functor& other) const;
};

Functor identity_functor(const GroupoidPtr& g);
Functor compose(const Functor& g, const Functor& f); // g∘f
Functor constant_functor(const GroupoidPtr& source, const GroupoidPtr& target, int object);
Functor from_homomorphism(const GroupoidPtr& source, const GroupoidPtr& target, const Homomorphism& h);
Functor inclusion_left(const GroupoidPtr& a, const GroupoidPtr& b, const GroupoidPtr& sum);
Functor inclusion_right(const GroupoidPtr& a, const GroupoidPtr& b, const GroupoidPtr& sum);
// (F1, F2): A ⊔ B -> C
Functor copair(const Functor& f1, const Functor& f2, const GroupoidPtr& sum);
Functor product_functor(const Functor& f1, const Functor& f2, const GroupoidPtr& src, const GroupoidPtr& tgt);
Functor projection_left(const GroupoidPtr& a, const GroupoidPtr& b, const GroupoidPtr& prod);
Functor projection_right(const GroupoidPtr& a, const GroupoidPtr& b, const GroupoidPtr& prod);

// Components c_x : from(x) -> to(x) in the common target.
struct NaturalIso
{
    Functor from;
    Functor to;
    std::vector<int> components;

    int operator[](int x) const { return components[x]; }
    void validate() const;
    bool operator==(const NaturalIso& other) const;
};

NaturalIso identity_iso(const Functor& f);
NaturalIso vertical(const NaturalIso& second, const NaturalIso& first); // second • first
NaturalIso inverse(const NaturalIso& a);
// H∘a : H∘F => H∘G
NaturalIso whisker_left(const Functor& h, const NaturalIso& a);
// a∘K : F∘K => G∘K
NaturalIso whisker_right(const NaturalIso& a, const Functor& k);

// ---- iso-comma ------------------------------------------------------------

struct IsoComma
{
    GroupoidPtr apex;
    Functor p; // to the source of a
    Functor q; // to the source of b
    NaturalIso gamma; // a∘p => b∘q

    struct Triple
    {
        int s;
        int t;
        int gamma;
    };
    std::vector<Triple> objects;
    // morphism id -> (phi, psi)
    std::vector<std::pair<int, int>> morphisms;
    // object id of the triple (s, t, g)
    int find_object(int s, int t, int g) const;
    // morphism id of (phi, psi) out of object i
    int find_morphism(int i, int phi, int psi) const;

    std::vector<int> pair_offset; // first object with given (s, t), indexed s * |Obj T| + t
    int t_objects = 0;
    GroupoidPtr base; // common target of a and b
    std::vector<int> first_morphism; // per object
    GroupoidPtr s_groupoid;
    GroupoidPtr t_groupoid;
};

IsoComma iso_comma(const Functor& a, const Functor& b);

// Full subgroupoid on the given objects (in that order) with its inclusion.
struct Subgroupoid
{
    GroupoidPtr groupoid;
    Functor inclusion;
};
Subgroupoid full_subgroupoid(const GroupoidPtr& g, const std::vector<int>& objects);

// ---- searches -------------------------------------------------------------

struct Equivalence
{
    Functor forward;  // G1 -> G2
    Functor backward; // G2 -> G1
    NaturalIso unit;   // id_G1 => backward∘forward
    NaturalIso counit; // forward∘backward => id_G2
};

std::optional<Equivalence> find_equivalence(const GroupoidPtr& g1, const GroupoidPtr& g2);
bool is_equivalence(const Functor& f);

std::optional<NaturalIso> find_natural_iso(const Functor& f1, const Functor& f2);

// Every functor source -> target (exhaustive; desk-scale only).
std::vector<Functor> enumerate_functors(const GroupoidPtr& source, const GroupoidPtr& target);
// Every natural iso f1 => f2.
std::vector<NaturalIso> enumerate_natural_isos(const Functor& f1, const Functor& f2);

} // namespace bispan
