#pragma once

#include "bispan/groupoid.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bispan {

// A span H <-b- S -a-> G, read as a 1-cell H -> G.
struct Span
{
    GroupoidPtr apex;
    Functor left;  // b : S -> H
    Functor right; // a : S -> G

    const GroupoidPtr& source() const { return left.target; }
    const GroupoidPtr& target() const { return right.target; }
    void validate() const;
    std::string summary() const;
};

// [f, beta, alpha] : (H <-b- S -a-> G) => (H <-b'- S' -a'-> G) with
// f : S -> S', beta : b => b'f and alpha : a'f => a.
struct SpanTwoCell
{
    Span from;
    Span to;
    Functor f;
    NaturalIso beta;
    NaturalIso alpha;

    void validate() const;
    bool is_invertible() const { return is_equivalence(f); }
};

enum class Variance
{
    covariant,     // u_! = (S = S -u-> G)
    contravariant, // u^* = (G <-u- S = S)
};

Span identity_span(const GroupoidPtr& g);
Span embed(const Functor& u, Variance v);
Span empty_span(const GroupoidPtr& source, const GroupoidPtr& target);

// outer∘inner for inner : K -> H and outer : H -> G. The apex is the
// iso-comma of inner.right and outer.left; legs inner.left∘p and outer.right∘q.
struct SpanComposite
{
    Span span;
    IsoComma square;
};
SpanComposite compose_spans_detailed(const Span& outer, const Span& inner);
Span compose_spans(const Span& outer, const Span& inner);

// One span per connected component of the apex, in component order.
std::vector<Span> decompose_span(const Span& s);
// Apex-wise disjoint union of parallel spans (the sum in a hom monoid).
Span sum_spans(const Span& s1, const Span& s2);
Span tensor_spans(const Span& s1, const Span& s2);

// ---- 2-cells ---------------------------------------------------------------

SpanTwoCell identity_two_cell(const Span& s);
SpanTwoCell vertical(const SpanTwoCell& second, const SpanTwoCell& first);
// (s1∘s2)∘s3 => s1∘(s2∘s3)
SpanTwoCell associator(const Span& s1, const Span& s2, const Span& s3);
// Id∘s => s and s∘Id => s
SpanTwoCell left_unitor(const Span& s);
SpanTwoCell right_unitor(const Span& s);

// An invertible 2-cell s1 => s2, if one exists. Connected components of the
// apexes are matched through their vertex-group data.
std::optional<SpanTwoCell> find_span_iso(const Span& s1, const Span& s2);
bool spans_isomorphic(const Span& s1, const Span& s2);

// Data of a connected span at the apex basepoint s0: components of the leg
// images and the induced homomorphisms Aut(s0) -> Aut(h0), Aut(s0) -> Aut(g0)
// (h0, g0 the basepoints of those components).
struct ConnectedSpanData
{
    int apex_component;
    int h_component;
    int g_component;
    int s0;
    Groupoid::VertexGroup apex_group;
    Homomorphism to_h; // into vertex_group(h0).group
    Homomorphism to_g;
    int h_path; // path_from_base(b(s0)) in H
    int g_path;
};
ConnectedSpanData connected_span_data(const Span& s, int apex_component);

// Cheap isomorphism invariant of a connected span, for bucketing.
struct SpanFingerprint
{
    int h_component;
    int g_component;
    int apex_order;
    int h_image;
    int g_image;
    int joint_image;
    auto operator<=>(const SpanFingerprint&) const = default;
};
SpanFingerprint fingerprint(const ConnectedSpanData& d);

} // namespace bispan
