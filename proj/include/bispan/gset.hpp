#pragma once

#include "bispan/coend.hpp"
#include "bispan/group.hpp"
#include "bispan/linalg.hpp"
#include "bispan/linear.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bispan {

// A finite left G-set with elements 0..size-1.
class GSet
{
  public:
    GSet() = default;
    // Validates the action axioms exhaustively; throws std::invalid_argument.
    static GSet build(const Group& g, int size, const std::function<int(int g, int x)>& action);
    // Left cosets xH, numbered by first appearance along 0..|G|-1; coset 0 is H.
    static GSet cosets(const Group& g, const Subgroup& h);
    static GSet point(const Group& g);

    const Group& group() const { return group_; }
    int size() const { return n_; }
    int act(int g, int x) const { return act_[static_cast<std::size_t>(g) * n_ + x]; }

    Subgroup stabilizer(int x) const;
    std::vector<int> orbit_labels(int* count) const;
    void validate() const;
    bool operator==(const GSet& other) const { return n_ == other.n_ && group_ == other.group_ && act_ == other.act_; }

  private:
    Group group_;
    int n_ = 0;
    std::vector<int> act_;
};

GSet disjoint_union(const GSet& a, const GSet& b);
// Equivariance of a map between G-sets over the same group.
bool is_equivariant(const GSet& from, const GSet& to, const std::vector<int>& map);

// X <-left- S -right-> Y, read as a morphism X -> Y.
struct GSpan
{
    GSet source;
    GSet target;
    GSet apex;
    std::vector<int> left;
    std::vector<int> right;

    void validate() const;
};

GSpan identity_gspan(const GSet& x);
GSpan empty_gspan(const GSet& x, const GSet& y);
// [X = X -f-> Y] and [Y <-f- X = X] for an equivariant f : X -> Y.
GSpan covariant_gspan(const GSet& x, const GSet& y, const std::vector<int>& f);
GSpan contravariant_gspan(const GSet& x, const GSet& y, const std::vector<int>& f);

// outer∘inner by pull-back: apex S x_Y T, legs through the projections.
// Throws std::invalid_argument if the middle G-sets differ.
GSpan gspan_compose(const GSpan& outer, const GSpan& inner);
GSpan gspan_sum(const GSpan& a, const GSpan& b);

// An isomorphism phi : S -> S' of spans, decided orbit by orbit.
std::optional<std::vector<int>> gspan_iso(const GSpan& a, const GSpan& b);
std::vector<GSpan> decompose_gspan(const GSpan& s);

// Spans with transitive apex over X x Y, one per isomorphism class.
struct GSpanBasis
{
    GSet source;
    GSet target;
    std::vector<GSpan> elements;
    std::size_t size() const { return elements.size(); }
};

GSpanBasis gspan_hom_basis(const GSet& x, const GSet& y);
LinearHom express(const GSpanBasis& basis, const GSpan& s);

// ---- Yoshida's functor ------------------------------------------------------------

// |Y| x |X| matrix of x -> sum over s in left^-1(x) of right(s).
Matrix yoshida_matrix(const GSpan& s);
Matrix yoshida_matrix(const GSpanBasis& basis, const LinearHom& h);
// Yo_*(f) : k[X] -> k[Y] and Yo^*(f) : k[Y] -> k[X] for f : X -> Y.
Matrix yoshida_push(const GSet& x, const GSet& y, const std::vector<int>& f);
Matrix yoshida_pull(const GSet& x, const GSet& y, const std::vector<int>& f);

Matrix permutation_matrix(const GSet& x, int g);
// m : k[X] -> k[Y] commutes with every group element.
bool is_equivariant(const Matrix& m, const GSet& x, const GSet& y);
// Basis of Hom_kG(k[X], k[Y]) by solving the commutation equations.
std::vector<Matrix> equivariant_hom_basis(const GSet& x, const GSet& y);

// Yo^*(gamma) Yo_*(beta) = Yo_*(beta~) Yo^*(gamma~) on the pull-back of
// beta : S -> Y and gamma : T -> Y.
bool check_pullback_identity(const GSet& s, const GSet& t, const GSet& y, const std::vector<int>& beta,
                             const std::vector<int>& gamma);

// Orbits of H x K on G by (h, k).g = h g k^-1, enumerated directly.
int double_coset_count(const Group& g, const Subgroup& h, const Subgroup& k);

struct YoshidaRankReport
{
    std::size_t basis_size = 0;
    std::size_t rank = 0;
    int double_cosets = 0;
    std::size_t hom_dimension = 0;
    bool equivariant = false;
    std::vector<Integer> invariant_factors; // integer mode
    bool ok() const { return equivariant && rank == static_cast<std::size_t>(double_cosets) && rank == hom_dimension; }
};

// Throws std::invalid_argument unless h and k are subgroups.
YoshidaRankReport yoshida_rank_check(const Group& g, const Subgroup& h, const Subgroup& k,
                                     Scalars scalars = Scalars::rational);

// ---- cohomological kernel ------------------------------------------------------------

struct CohomologicalRelation
{
    int h; // index into the subgroup representatives
    Subgroup l;
    int index;          // [H:L]
    LinearHom element;  // [G/H <- G/L -> G/H] - [H:L] Id, in basis (G/H, G/H)
    bool vanishes = false;
};

struct GHomReport
{
    int source = 0;
    int target = 0;
    std::size_t basis_size = 0;
    std::size_t rank = 0;
    std::size_t kernel_rank = 0;
    std::size_t ideal_rank = 0;
    bool kernel_in_ideal = false;
    bool ideal_in_kernel = false;
};

struct CohomologicalReport
{
    std::vector<Subgroup> subgroups; // class representatives; object i is G/H_i
    std::vector<CohomologicalRelation> relations;
    std::vector<GHomReport> homs;
    std::vector<std::string> notes;
    bool ok() const;
};

CohomologicalReport cohomological_kernel_check(const Group& g, int jobs = 1);

// ---- fixed-point functor -----------------------------------------------------------------

struct FixedPointValue
{
    Subgroup h;
    std::size_t rank_fixed = 0; // fixed vectors of k[G/H]
    std::size_t rank_hom = 0;   // Hom_kG(k, k[G/H])
    bool agree = false;         // both are spanned by the orbit sum
};

// The map M(H) -> M(H') on the orbit-sum bases, a scalar.
struct FixedPointMap
{
    std::string kind; // "ind", "res" or "conj"
    Subgroup from;
    Subgroup to;
    int index = 0; // [H:L] for ind/res
    Rational factor;
    bool scalar = false; // image is a multiple of the orbit sum
};

struct FixedPointReport
{
    std::vector<FixedPointValue> values;
    std::vector<FixedPointMap> maps;
    bool ok() const;
};

// FP(H) and its restriction, conjugation and induction maps, computed from
// Yoshida matrices of the corresponding spans.
FixedPointReport fixed_point_functor(const Group& g);

} // namespace bispan
