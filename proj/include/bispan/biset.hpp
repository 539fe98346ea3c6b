#pragma once

#include "bispan/groupoid.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace bispan {

// A biset U : H -> G, i.e. a functor H^op x G -> finite sets. Elements of
// U(h, g) are 0..size(h, g)-1.
class Biset
{
  public:
    // target_action(alpha, h, x): U(h, src alpha) -> U(h, tgt alpha)
    // source_action(beta, g, x):  U(tgt beta, g) -> U(src beta, g)
    using TargetFn = std::function<int(int alpha, int h, int x)>;
    using SourceFn = std::function<int(int beta, int g, int x)>;

    Biset() = default;
    static Biset build(GroupoidPtr source, GroupoidPtr target, std::vector<int> sizes, const TargetFn& target_action,
                       const SourceFn& source_action);

    const GroupoidPtr& source() const { return source_; }
    const GroupoidPtr& target() const { return target_; }
    int size(int h, int g) const { return sizes_[index(h, g)]; }
    int total_size() const { return offsets_.back(); }
    // global element id of x in U(h, g)
    int offset(int h, int g) const { return offsets_[index(h, g)]; }

    int act_target(int alpha, int h, int x) const
    {
        return tact_[static_cast<std::size_t>(alpha) * source_->object_count() + h][x];
    }
    int act_source(int beta, int g, int x) const
    {
        return sact_[static_cast<std::size_t>(beta) * target_->object_count() + g][x];
    }
    // U(beta, alpha)(x) for x in U(tgt beta, src alpha)
    int act(int beta, int alpha, int x) const
    {
        return act_target(alpha, source_->src(beta), act_source(beta, target_->src(alpha), x));
    }

    // Exhaustive functoriality check; throws std::invalid_argument.
    void validate() const;
    bool operator==(const Biset& other) const;

  private:
    std::size_t index(int h, int g) const { return static_cast<std::size_t>(h) * target_->object_count() + g; }

    GroupoidPtr source_;
    GroupoidPtr target_;
    std::vector<int> sizes_;
    std::vector<int> offsets_;
    std::vector<std::vector<int>> tact_; // [alpha * |Obj H| + h]
    std::vector<std::vector<int>> sact_; // [beta * |Obj G| + g]
};

using BisetPtr = std::shared_ptr<const Biset>;
BisetPtr make_biset(Biset b);
bool same_biset(const BisetPtr& a, const BisetPtr& b);

// A natural map U => V between parallel bisets, component per (h, g).
struct BisetMorphism
{
    BisetPtr from;
    BisetPtr to;
    std::vector<std::vector<int>> components; // [h * |Obj G| + g][x]

    int operator()(int h, int g, int x) const
    {
        return components[static_cast<std::size_t>(h) * from->target()->object_count() + g][x];
    }
    bool is_bijective() const;
    bool is_identity() const;
    // Exhaustive naturality check; throws std::invalid_argument.
    void validate() const;
    bool operator==(const BisetMorphism& other) const;
};

BisetMorphism identity_morphism(const BisetPtr& u);
BisetMorphism compose(const BisetMorphism& second, const BisetMorphism& first);
BisetMorphism inverse(const BisetMorphism& m);

// Generators of a groupoid: vertex-group generators at each basepoint and
// the chosen paths together with their inverses.
std::vector<int> groupoid_generators(const Groupoid& g);

BisetPtr identity_biset(const GroupoidPtr& g);
BisetPtr empty_biset(const GroupoidPtr& source, const GroupoidPtr& target);
BisetPtr sum_bisets(const BisetPtr& u, const BisetPtr& v); // objectwise disjoint union, U first
BisetPtr tensor_bisets(const BisetPtr& u, const BisetPtr& v);

// ---- composition -----------------------------------------------------------

// The coend U∘V = ∫^h U(h,-) x V(-,h) for U : H -> G and V : K -> H.
// A tuple at (k, g) is (h, u, v) with u in U(h, g), v in V(k, h).
class BisetComposite
{
  public:
    BisetComposite(BisetPtr outer, BisetPtr inner);

    const BisetPtr& outer() const { return outer_; }
    const BisetPtr& inner() const { return inner_; }
    const BisetPtr& result() const { return result_; }

    int class_of(int k, int g, int h, int u, int v) const;
    struct Tuple
    {
        int h;
        int u;
        int v;
    };
    // The smallest tuple of the class.
    Tuple rep(int k, int g, int c) const;

  private:
    struct Cell
    {
        std::vector<int> first; // tuple id offset per h, size |Obj H| + 1
        std::vector<int> label; // tuple id -> class
        std::vector<int> reps;  // class -> tuple id
    };
    const Cell& cell(int k, int g) const { return cells_[static_cast<std::size_t>(k) * g_objects_ + g]; }

    BisetPtr outer_;
    BisetPtr inner_;
    BisetPtr result_;
    int g_objects_ = 0;
    std::vector<Cell> cells_;
};

BisetPtr compose_bisets(const BisetPtr& u, const BisetPtr& v);

// Unbracketed composite U_0 ∘ U_1 ∘ ... ∘ U_{n-1}. A tuple has objects
// o_0 (in the target of U_0) ... o_n (in the source of U_{n-1}) and elements
// x_i in U_i(o_{i+1}, o_i).
class BisetChain
{
  public:
    explicit BisetChain(std::vector<BisetPtr> factors);

    int length() const { return static_cast<int>(factors_.size()); }
    const BisetPtr& factor(int i) const { return factors_[i]; }
    const std::vector<BisetPtr>& factors() const { return factors_; }
    const BisetPtr& result() const { return flat_.front(); }

    struct Tuple
    {
        std::vector<int> objects;  // n + 1
        std::vector<int> elements; // n
    };
    // Class in result() at (o_n, o_0).
    int class_of(const Tuple& t) const;
    Tuple rep(int k, int g, int c) const;

    // Calls visit(tuple) on every tuple with the given endpoints; stops early
    // when visit returns false. Returns the number of tuples visited.
    long long for_each_tuple(int k, int g, const std::function<bool(const Tuple&)>& visit) const;
    long long tuple_count(int k, int g) const;

  private:
    std::vector<BisetPtr> factors_;
    std::vector<BisetPtr> flat_;                       // flat_[i] = U_i ∘ ... ∘ U_{n-1}
    std::vector<std::shared_ptr<BisetComposite>> levels_; // levels_[i] builds flat_[i]
};

using ChainPtr = std::shared_ptr<const BisetChain>;
ChainPtr make_chain(std::vector<BisetPtr> factors);

// A map between two chains that rewrites the window [i, j) of `from` into the
// window [i, i + m) of `to`, leaving the other factors alone. `local` receives
// objects o_i..o_j and elements x_i..x_{j-1}, and returns the rewritten window
// (its boundary objects must be unchanged).
using LocalRewrite = std::function<BisetChain::Tuple(const BisetChain::Tuple&)>;

struct ChainMapOptions
{
    bool check_well_defined = true;
    long long exhaustive_budget = 200000; // tuples per endpoint pair before sampling
    int samples = 2000;
    unsigned seed = 1;
};

BisetMorphism chain_map(const ChainPtr& from, const ChainPtr& to, int i, int j, int m, const LocalRewrite& local,
                        const ChainMapOptions& options = {});

// Applies an existing morphism of the sub-chain [i, j) (from the flat
// composite of from's factors i..j-1 to that of to's factors i..i+m-1).
BisetMorphism lift(const ChainPtr& from, const ChainPtr& to, int i, int j, int m, const ChainPtr& sub_from,
                   const ChainPtr& sub_to, const BisetMorphism& sub, const ChainMapOptions& options = {});

// ---- decomposition and isomorphism ----------------------------------------

// Orbit label of every element (global ids) under the two actions.
std::vector<int> biset_orbits(const Biset& u, int* count);
// One transitive summand per orbit, in order of first element.
std::vector<BisetPtr> decompose_biset(const BisetPtr& u);
bool is_transitive(const Biset& u);
// Restriction of u to a union of orbits (given by a global-id mask).
BisetPtr restrict_biset(const BisetPtr& u, const std::vector<char>& keep);

std::optional<BisetMorphism> bisets_isomorphic(const BisetPtr& u, const BisetPtr& v);

// ---- transitive bisets by stabilizers --------------------------------------

// Transitive biset with the given basepoints h0 in H, g0 in G, and
// stabilizer L inside Aut(g0) x Aut(h0) (element (a, b) -> a * |Aut h0| + b,
// a and b indices into vertex_group(g0/h0).elements).
BisetPtr transitive_biset(const GroupoidPtr& source, const GroupoidPtr& target, int h_component, int g_component,
                          const Subgroup& stabilizer);

struct TransitiveKey
{
    int h_component;
    int g_component;
    Subgroup stabilizer; // canonical conjugate

    auto operator<=>(const TransitiveKey&) const = default;
};

// Requires a transitive biset.
TransitiveKey transitive_key(const Biset& u);

} // namespace bispan
