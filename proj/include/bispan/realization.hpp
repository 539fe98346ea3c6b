#pragma once

#include "bispan/biset.hpp"
#include "bispan/span.hpp"

#include <string>
#include <vector>

namespace bispan {

// R_!(u) = G(u-, -) : H -> G and R^*(u) = G(-, u-) : G -> H for u : H -> G.
// Elements are positions in the hom-sets of G.
BisetPtr realize_functor(const Functor& u, Variance v);

// A biset morphism assembled from a sequence of local rewrites of a chain.
// Every step is checked for well-definedness on coend classes.
class Pasting
{
  public:
    explicit Pasting(ChainPtr start, ChainMapOptions options = {});

    // Replaces factors [i, j) of the current chain by `replacement`.
    Pasting& step(int i, int j, std::vector<BisetPtr> replacement, const LocalRewrite& local);
    // Same, through an existing morphism between the sub-chains.
    Pasting& step(int i, int j, const ChainPtr& sub_from, const ChainPtr& sub_to, const BisetMorphism& sub);

    const ChainPtr& start() const { return start_; }
    const ChainPtr& current() const { return current_; }
    // Identity on the start chain if no step was taken.
    const BisetMorphism& total() const { return total_; }

  private:
    ChainPtr start_;
    ChainPtr current_;
    BisetMorphism total_;
    ChainMapOptions options_;
};

// ---- local rewrites (window tuples, see chain_map) --------------------------

namespace rewrite {
    // [Id_G, U] -> [U] and [U, Id_H] -> [U]
    LocalRewrite left_unitor(const BisetPtr& u);
    LocalRewrite right_unitor(const BisetPtr& u);
    // [U] -> [Id_G, U] and [U] -> [U, Id_H]
    LocalRewrite left_unitor_inverse(const BisetPtr& u);
    LocalRewrite right_unitor_inverse(const BisetPtr& u);
    // [Id_H] -> [R^*(u), R_!(u)]:  zeta -> [id, u(zeta)]
    LocalRewrite unit(const Functor& u);
    // [R_!(u), R^*(u)] -> [Id_G]:  [xi', xi] -> xi' xi
    LocalRewrite counit(const Functor& u);
    // u : K -> H, v : H -> G
    // [R_!(v), R_!(u)] -> [R_!(vu)]:  [xi, zeta] -> xi v(zeta), and its inverse xi -> [xi, id]
    LocalRewrite fun_covariant(const Functor& v, const Functor& u);
    LocalRewrite fun_covariant_inverse(const Functor& v, const Functor& u);
    // [R^*(u), R^*(v)] -> [R^*(vu)]:  [zeta, xi] -> v(zeta) xi, and its inverse xi -> [id, xi]
    LocalRewrite fun_contravariant(const Functor& v, const Functor& u);
    LocalRewrite fun_contravariant_inverse(const Functor& v, const Functor& u);
    // alpha : u => v.  [R^*(u)] -> [R^*(v)]: xi -> alpha xi;  [R_!(v)] -> [R_!(u)]: xi -> xi alpha
    LocalRewrite iso_contravariant(const NaturalIso& alpha);
    LocalRewrite iso_covariant(const NaturalIso& alpha);
} // namespace rewrite

// ---- adjunction --------------------------------------------------------------

struct AdjunctionCells
{
    Functor u;
    BisetMorphism unit;   // Id_H => R^*(u)∘R_!(u)
    BisetMorphism counit; // R_!(u)∘R^*(u) => Id_G
    ChainPtr unit_target;
    ChainPtr counit_source;
};

AdjunctionCells adjunction_cells(const Functor& u);
// Both triangle composites are identities. Empty string on success.
std::string verify_zigzag(const Functor& u);

// ---- Beck-Chevalley -------------------------------------------------------------

struct MateResult
{
    IsoComma square;
    ChainPtr from; // [R_!(q), R^*(p)]
    ChainPtr to;   // [R^*(b), R_!(a)]
    BisetMorphism mate;
    bool bijective = false;
    bool pasting_checked = false;
    bool matches_pasting = false;
};

// Mate of the iso-comma square of a : S -> G and b : T -> G. The closed form
// [tau, sigma]_x -> [b(tau) gamma_x a(sigma), id] is always computed; with
// `paste` the composite of units, structure isos and counits is built too.
MateResult beck_chevalley_mate(const Functor& a, const Functor& b, bool paste = true);
MateResult beck_chevalley_mate(const IsoComma& square, const Functor& a, const Functor& b, bool paste = true);

// ---- spans and 2-cells -----------------------------------------------------------

// R(s) = R_!(a)∘R^*(b) as a two-factor chain.
ChainPtr realize_span(const Span& s);

struct RealizedTwoCell
{
    ChainPtr from;
    ChainPtr to;
    BisetMorphism morphism; // by pasting
    bool matches_closed_form = false;
};
RealizedTwoCell realize_two_cell(const SpanTwoCell& t, const ChainMapOptions& options = {});

struct SpanFromBiset
{
    Span span;
    // object x of the apex is element x_local of U(h, g)
    std::vector<int> h;
    std::vector<int> g;
    std::vector<int> local;
    BisetMorphism evaluation; // R(S(U)) => U
    bool bijective = false;
};
SpanFromBiset span_from_biset(const BisetPtr& u);

// R_!(alpha) equals the mate of R^*(alpha). Empty string on success.
std::string verify_mate_compatibility(const NaturalIso& alpha);
// The counit of an identity functor equals the left unitor of the identity biset.
std::string verify_counit_unitor(const GroupoidPtr& g);

// ---- pseudo-functoriality ---------------------------------------------------------

struct Compositor
{
    SpanComposite composite;
    ChainPtr from; // R(s1∘s2)
    ChainPtr to;   // [R_!(a1), R^*(b1), R_!(a2), R^*(b2)]
    BisetMorphism map;
    bool bijective = false;
    bool matches_closed_form = false;
};
// R(s1∘s2) => R(s1)∘R(s2) built from structure isos and the Beck-Chevalley mate.
Compositor compositor(const Span& s1, const Span& s2, const ChainMapOptions& options = {});

// Compositor bijective, agrees with the closed form, and satisfies both unit
// coherences. Empty string on success.
std::string verify_pseudofunctor(const Span& s1, const Span& s2, const ChainMapOptions& options = {});
// Associativity coherence against the realized associator.
std::string verify_associativity(const Span& s1, const Span& s2, const Span& s3, const ChainMapOptions& options = {});

} // namespace bispan
