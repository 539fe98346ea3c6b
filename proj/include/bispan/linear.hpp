#pragma once

#include "bispan/biset.hpp"
#include "bispan/coend.hpp"
#include "bispan/linalg.hpp"
#include "bispan/pool.hpp"
#include "bispan/span.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace bispan {

// Finitely supported coefficient vector over a hom basis.
struct LinearHom
{
    std::map<int, Rational> terms;

    static LinearHom basis(int i) { return LinearHom{{{i, Rational(1)}}}; }
    bool is_zero() const { return terms.empty(); }
    std::vector<Rational> dense(std::size_t n) const;
    static LinearHom from_dense(const std::vector<Rational>& v);
    bool operator==(const LinearHom& other) const { return terms == other.terms; }
};

LinearHom operator+(const LinearHom& a, const LinearHom& b);
LinearHom operator-(const LinearHom& a, const LinearHom& b);
LinearHom operator*(const Rational& c, const LinearHom& a);

// ---- biset hom bases -------------------------------------------------------------

// Transitive bisets H -> G up to isomorphism: one per component pair and
// conjugacy class of subgroups of Aut(g0) x Aut(h0).
struct BisetBasis
{
    GroupoidPtr source;
    GroupoidPtr target;
    std::vector<BisetPtr> elements;
    std::vector<TransitiveKey> keys;
    std::map<TransitiveKey, int> index;

    std::size_t size() const { return elements.size(); }
    std::string label(int i) const;
};

BisetBasis biset_hom_basis(const GroupoidPtr& source, const GroupoidPtr& target);
// Multiplicity of every basis element in u.
std::vector<int> express(const BisetBasis& basis, const BisetPtr& u);

// ---- span hom bases --------------------------------------------------------------

// A connected span H <- S -> G is determined up to invertible 2-cells by the
// vertex group K of its apex and the homomorphism chi : K -> Aut(g0) x Aut(h0),
// up to automorphisms of K and conjugation in the target. The apex of a basis
// element is BK for K from the small group catalog.
struct SpanKey
{
    int h_component;
    int g_component;
    int group; // index into the apex catalog
    std::vector<int> chi; // least member of the orbit, element (a, b) -> a * |Aut h0| + b

    auto operator<=>(const SpanKey&) const = default;
};

struct SpanBasis
{
    GroupoidPtr source;
    GroupoidPtr target;
    int apex_bound = 0;
    std::vector<Span> elements;
    std::vector<SpanKey> keys;
    std::map<SpanKey, int> index;

    std::size_t size() const { return elements.size(); }
    std::string label(int i) const;
};

// Connected spans whose class contains an apex with at most `apex_bound`
// morphisms (i.e. |K| <= apex_bound). Complete within the bound; apex_bound <= 12.
SpanBasis span_hom_basis(const GroupoidPtr& source, const GroupoidPtr& target, int apex_bound);
// Class of a connected span; empty if its vertex group exceeds the bound.
std::optional<SpanKey> span_key(const Span& connected, int apex_bound);
// Coordinates of any span; empty if a component leaves the truncation.
std::optional<LinearHom> express(const SpanBasis& basis, const Span& s);
// Name of catalog group `i` (as used in SpanKey::group).
const std::string& apex_group_name(int i);

// ---- realization as a matrix ------------------------------------------------------

// Column j: the realization of span basis element j in the biset basis.
Matrix matrix_of_realization(const SpanBasis& spans, const BisetBasis& bisets);

// ---- truncated categories -----------------------------------------------------------

// span_k and biset_k restricted to a window of groupoids, with cached
// composition of basis elements. Thread-safe.
class TruncatedSpans
{
  public:
    TruncatedSpans(std::vector<PoolEntry> window, int apex_bound);

    int object_count() const { return static_cast<int>(window_.size()); }
    const PoolEntry& object(int i) const { return window_[i]; }
    int apex_bound() const { return bound_; }
    // hom x -> y
    const SpanBasis& basis(int x, int y) const { return bases_[static_cast<std::size_t>(x) * window_.size() + y]; }

    // t∘s for basis elements t : y -> z and s : x -> y; empty when some
    // component of the composite leaves the truncation.
    std::optional<LinearHom> compose_basis(int x, int y, int z, int t, int s) const;
    std::optional<LinearHom> compose(int x, int y, int z, const LinearHom& t, const LinearHom& s) const;
    // Uncached: t∘s by double cosets on the keys, and by composing the spans.
    std::optional<LinearHom> compose_keys(int x, int y, int z, int t, int s) const;
    std::optional<LinearHom> compose_by_spans(int x, int y, int z, int t, int s) const;

  private:
    const Groupoid::VertexGroup& vertex_group(int object, int component) const;
    const Group& product_group(int x, int hc, int z, int gc) const;

    std::vector<PoolEntry> window_;
    int bound_;
    std::vector<SpanBasis> bases_;
    std::vector<std::vector<Groupoid::VertexGroup>> vertex_groups_;
    mutable std::mutex mutex_;
    mutable std::map<std::tuple<int, int, int, int, int>, std::optional<LinearHom>> cache_;
    mutable std::map<std::tuple<int, int, int, int>, Group> products_;
};

class TruncatedBisets
{
  public:
    explicit TruncatedBisets(std::vector<PoolEntry> window);

    int object_count() const { return static_cast<int>(window_.size()); }
    const PoolEntry& object(int i) const { return window_[i]; }
    const BisetBasis& basis(int x, int y) const { return bases_[static_cast<std::size_t>(x) * window_.size() + y]; }

    LinearHom compose_basis(int x, int y, int z, int t, int s) const;
    LinearHom compose(int x, int y, int z, const LinearHom& t, const LinearHom& s) const;

  private:
    std::vector<PoolEntry> window_;
    std::vector<BisetBasis> bases_;
    mutable std::mutex mutex_;
    mutable std::map<std::tuple<int, int, int, int, int>, LinearHom> cache_;
};

// ---- deflative kernel ------------------------------------------------------------------

// [X <- BG -> X] - [X <- BQ -> X] for a non-injective surjection G ->> Q onto the
// vertex group Q of a component of X, both legs through the basepoint.
struct DeflativeElement
{
    int object;     // window index of X
    int component;  // component of X
    std::string from_group; // G
    std::string to_group;   // Q, as object@component
    Span deflation_inflation;
    LinearHom element; // in span basis (X, X)
};

// Which groups G may appear as apexes of generators: every catalog group
// within the apex bound, or only the vertex groups of the window.
enum class DeflativeGenerators
{
    apex_catalog,
    window_groups,
};

std::vector<DeflativeElement> deflative_elements(const TruncatedSpans& spans,
                                                 DeflativeGenerators generators = DeflativeGenerators::apex_catalog);

struct HomKernelReport
{
    int source = 0;
    int target = 0;
    std::size_t span_rank = 0;
    std::size_t biset_rank = 0;
    std::size_t matrix_rank = 0;
    std::size_t kernel_rank = 0;
    std::size_t ideal_rank = 0;
    bool full = false;            // matrix has full row rank
    bool kernel_in_ideal = false;
    bool ideal_in_kernel = false;
    Matrix matrix;
    std::vector<std::vector<Rational>> kernel;
    std::vector<Integer> invariant_factors; // integer mode
};

struct DeflativeReport
{
    std::vector<std::string> window;
    int apex_bound = 0;
    std::vector<DeflativeElement> elements;
    std::vector<HomKernelReport> homs;
    std::vector<std::string> notes;
    bool ok() const;
};

// Kernel of the realization matrix on every hom of the window against the
// two-sided ideal generated by the deflative elements, saturated within the
// truncation to a fixpoint.
DeflativeReport deflative_kernel_check(const std::vector<PoolEntry>& window, int apex_bound,
                                       Scalars scalars = Scalars::rational, int jobs = 1,
                                       DeflativeGenerators generators = DeflativeGenerators::apex_catalog);

// ---- semi-additivity and tensor --------------------------------------------------------

struct CheckReport
{
    int cases = 0;
    int passed = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty() && passed == cases; }
    void record(bool ok, const std::string& what);
};

// Biproduct equations for G1 ⊔ G2 through the inclusions, in spans and
// realized in bisets, for every ordered pair of the window.
CheckReport verify_semiadditive(const std::vector<PoolEntry>& window);

// realize(s ⊗ s') ≅ realize(s) ⊗ realize(s') for span basis elements between
// window objects (`pairs` random pairs), plus the unit.
CheckReport verify_tensor_functor(const std::vector<PoolEntry>& window, int apex_bound, int pairs,
                                  std::uint64_t seed);

// F(t∘s) = F(t)∘F(s) in the biset bases, for `triples` random composable basis pairs.
CheckReport verify_realization_functorial(const TruncatedSpans& spans, const TruncatedBisets& bisets, int pairs,
                                          std::uint64_t seed);

// ---- Burnside Green functor ----------------------------------------------------------------

struct BurnsideAction
{
    int source;
    int target;
    int span; // index in the span basis
    Matrix matrix; // A(source) -> A(target)
};

struct BurnsideFunctor
{
    std::vector<std::string> objects;
    std::vector<BisetBasis> values; // A(G) = biset_k(1, G)
    std::vector<BurnsideAction> actions;
};

BurnsideFunctor burnside_green_functor(const std::vector<PoolEntry>& window, int apex_bound);

} // namespace bispan
