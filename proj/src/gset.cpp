#include "bispan/gset.hpp"

#include "bispan/parallel.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace bispan {

namespace {
    [[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

    std::vector<int> all_elements(const Group& g)
    {
        std::vector<int> v(static_cast<std::size_t>(g.order()));
        std::iota(v.begin(), v.end(), 0);
        return v;
    }

    // label[x] = index of the coset xH, by first appearance.
    std::vector<int> coset_labels(const Group& g, const Subgroup& h, int* count)
    {
        std::vector<int> label(static_cast<std::size_t>(g.order()), -1);
        int next = 0;
        for (int x = 0; x < g.order(); ++x) {
            if (label[x] >= 0)
                continue;
            for (int e : h)
                label[g.mul(x, e)] = next;
            ++next;
        }
        *count = next;
        return label;
    }

    void require_subgroup(const Group& g, const Subgroup& h, const char* what)
    {
        if (!is_subgroup(g, h))
            fail(std::string(what) + ": not a subgroup");
    }

    GSet restrict_to(const GSet& x, const std::vector<int>& elems)
    {
        std::vector<int> pos(static_cast<std::size_t>(x.size()), -1);
        for (std::size_t i = 0; i < elems.size(); ++i)
            pos[elems[i]] = static_cast<int>(i);
        return GSet::build(x.group(), static_cast<int>(elems.size()),
                           [&](int g, int i) { return pos[x.act(g, elems[i])]; });
    }

    std::vector<Rational> flatten(const Matrix& m)
    {
        std::vector<Rational> v;
        v.reserve(m.rows() * m.cols());
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                v.push_back(m(r, c));
        return v;
    }

    std::vector<Rational> times(const Matrix& m, const std::vector<Rational>& v)
    {
        std::vector<Rational> out(m.rows());
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                if (m(r, c) != 0)
                    out[r] += m(r, c) * v[c];
        return out;
    }

    bool same_endpoints(const GSpan& a, const GSpan& b) { return a.source == b.source && a.target == b.target; }
} // namespace

// ---- G-sets ----------------------------------------------------------------------------

GSet GSet::build(const Group& g, int size, const std::function<int(int, int)>& action)
{
    if (g.order() == 0)
        fail("GSet: empty group");
    if (size < 0)
        fail("GSet: negative size");
    GSet x;
    x.group_ = g;
    x.n_ = size;
    x.act_.resize(static_cast<std::size_t>(g.order()) * size);
    for (int e = 0; e < g.order(); ++e)
        for (int i = 0; i < size; ++i)
            x.act_[static_cast<std::size_t>(e) * size + i] = action(e, i);
    x.validate();
    return x;
}

GSet GSet::cosets(const Group& g, const Subgroup& h)
{
    require_subgroup(g, h, "GSet::cosets");
    int count = 0;
    auto label = coset_labels(g, h, &count);
    std::vector<int> rep(static_cast<std::size_t>(count), -1);
    for (int x = 0; x < g.order(); ++x)
        if (rep[label[x]] < 0)
            rep[label[x]] = x;
    return build(g, count, [&](int e, int c) { return label[g.mul(e, rep[c])]; });
}

GSet GSet::point(const Group& g)
{
    return build(g, 1, [](int, int) { return 0; });
}

void GSet::validate() const
{
    const Group& g = group_;
    for (int v : act_)
        if (v < 0 || v >= n_)
            fail("GSet: action leaves the set");
    for (int i = 0; i < n_; ++i)
        if (act(g.identity(), i) != i)
            fail("GSet: identity does not act trivially");
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b)
            for (int i = 0; i < n_; ++i)
                if (act(g.mul(a, b), i) != act(a, act(b, i)))
                    fail("GSet: action is not associative");
}

Subgroup GSet::stabilizer(int x) const
{
    Subgroup s;
    for (int e = 0; e < group_.order(); ++e)
        if (act(e, x) == x)
            s.push_back(e);
    return s;
}

std::vector<int> GSet::orbit_labels(int* count) const
{
    std::vector<int> label(static_cast<std::size_t>(n_), -1);
    int next = 0;
    for (int x = 0; x < n_; ++x) {
        if (label[x] >= 0)
            continue;
        for (int e = 0; e < group_.order(); ++e)
            label[act(e, x)] = next;
        ++next;
    }
    *count = next;
    return label;
}

GSet disjoint_union(const GSet& a, const GSet& b)
{
    if (!(a.group() == b.group()))
        fail("disjoint_union: G-sets over different groups");
    int n = a.size();
    return GSet::build(a.group(), n + b.size(),
                       [&](int g, int i) { return i < n ? a.act(g, i) : n + b.act(g, i - n); });
}

bool is_equivariant(const GSet& from, const GSet& to, const std::vector<int>& map)
{
    if (!(from.group() == to.group()) || static_cast<int>(map.size()) != from.size())
        return false;
    for (int v : map)
        if (v < 0 || v >= to.size())
            return false;
    for (int g = 0; g < from.group().order(); ++g)
        for (int i = 0; i < from.size(); ++i)
            if (map[from.act(g, i)] != to.act(g, map[i]))
                return false;
    return true;
}

// ---- spans -------------------------------------------------------------------------------

void GSpan::validate() const
{
    if (!is_equivariant(apex, source, left))
        fail("GSpan: left leg is not an equivariant map to the source");
    if (!is_equivariant(apex, target, right))
        fail("GSpan: right leg is not an equivariant map to the target");
}

GSpan identity_gspan(const GSet& x)
{
    std::vector<int> id(static_cast<std::size_t>(x.size()));
    std::iota(id.begin(), id.end(), 0);
    return GSpan{x, x, x, id, id};
}

GSpan empty_gspan(const GSet& x, const GSet& y)
{
    if (!(x.group() == y.group()))
        fail("empty_gspan: G-sets over different groups");
    GSet none = GSet::build(x.group(), 0, [](int, int) { return 0; });
    return GSpan{x, y, none, {}, {}};
}

GSpan covariant_gspan(const GSet& x, const GSet& y, const std::vector<int>& f)
{
    if (!is_equivariant(x, y, f))
        fail("covariant_gspan: map is not equivariant");
    GSpan s = identity_gspan(x);
    s.target = y;
    s.right = f;
    return s;
}

GSpan contravariant_gspan(const GSet& x, const GSet& y, const std::vector<int>& f)
{
    if (!is_equivariant(x, y, f))
        fail("contravariant_gspan: map is not equivariant");
    GSpan s = identity_gspan(x);
    s.source = y;
    s.left = f;
    return s;
}

GSpan gspan_compose(const GSpan& outer, const GSpan& inner)
{
    if (!(outer.source == inner.target))
        fail("gspan_compose: middle G-sets differ");
    const GSet& S = inner.apex;
    const GSet& T = outer.apex;
    std::vector<std::pair<int, int>> pairs;
    std::vector<int> index(static_cast<std::size_t>(S.size()) * T.size(), -1);
    for (int s = 0; s < S.size(); ++s)
        for (int t = 0; t < T.size(); ++t)
            if (inner.right[s] == outer.left[t]) {
                index[static_cast<std::size_t>(s) * T.size() + t] = static_cast<int>(pairs.size());
                pairs.emplace_back(s, t);
            }
    GSet apex = GSet::build(S.group(), static_cast<int>(pairs.size()), [&](int g, int i) {
        auto [s, t] = pairs[i];
        return index[static_cast<std::size_t>(S.act(g, s)) * T.size() + T.act(g, t)];
    });
    GSpan out{inner.source, outer.target, apex, {}, {}};
    for (auto [s, t] : pairs) {
        out.left.push_back(inner.left[s]);
        out.right.push_back(outer.right[t]);
    }
    return out;
}

GSpan gspan_sum(const GSpan& a, const GSpan& b)
{
    if (!same_endpoints(a, b))
        fail("gspan_sum: spans with different endpoints");
    GSpan out{a.source, a.target, disjoint_union(a.apex, b.apex), a.left, a.right};
    out.left.insert(out.left.end(), b.left.begin(), b.left.end());
    out.right.insert(out.right.end(), b.right.begin(), b.right.end());
    return out;
}

std::vector<GSpan> decompose_gspan(const GSpan& s)
{
    int count = 0;
    auto label = s.apex.orbit_labels(&count);
    std::vector<std::vector<int>> orbits(static_cast<std::size_t>(count));
    for (int i = 0; i < s.apex.size(); ++i)
        orbits[label[i]].push_back(i);
    std::vector<GSpan> out;
    for (const auto& o : orbits) {
        GSpan c{s.source, s.target, restrict_to(s.apex, o), {}, {}};
        for (int i : o) {
            c.left.push_back(s.left[i]);
            c.right.push_back(s.right[i]);
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::optional<std::vector<int>> gspan_iso(const GSpan& a, const GSpan& b)
{
    if (!same_endpoints(a, b) || a.apex.size() != b.apex.size())
        return std::nullopt;
    const Group& g = a.apex.group();
    int na = 0, nb = 0;
    auto la = a.apex.orbit_labels(&na);
    auto lb = b.apex.orbit_labels(&nb);
    if (na != nb)
        return std::nullopt;
    std::vector<int> phi(static_cast<std::size_t>(a.apex.size()), -1);
    std::vector<bool> used(static_cast<std::size_t>(nb), false);
    std::vector<bool> seen(static_cast<std::size_t>(na), false);
    // Isomorphism of transitive spans is an equivalence, so greedy matching
    // of orbits is exhaustive.
    for (int s0 = 0; s0 < a.apex.size(); ++s0) {
        if (seen[la[s0]])
            continue;
        seen[la[s0]] = true;
        Subgroup stab = a.apex.stabilizer(s0);
        int match = -1;
        for (int t = 0; t < b.apex.size() && match < 0; ++t)
            if (!used[lb[t]] && b.left[t] == a.left[s0] && b.right[t] == a.right[s0] && b.apex.stabilizer(t) == stab)
                match = t;
        if (match < 0)
            return std::nullopt;
        used[lb[match]] = true;
        for (int e = 0; e < g.order(); ++e)
            phi[a.apex.act(e, s0)] = b.apex.act(e, match);
    }
    return phi;
}

GSpanBasis gspan_hom_basis(const GSet& x, const GSet& y)
{
    if (!(x.group() == y.group()))
        fail("gspan_hom_basis: G-sets over different groups");
    const Group& g = x.group();
    GSpanBasis basis{x, y, {}};
    for (const Subgroup& l : subgroup_class_representatives(g, all_elements(g))) {
        int count = 0;
        auto label = coset_labels(g, l, &count);
        GSet apex = GSet::cosets(g, l);
        std::size_t first = basis.elements.size();
        auto fixes = [&](const GSet& z, int p) {
            return std::all_of(l.begin(), l.end(), [&](int e) { return z.act(e, p) == p; });
        };
        for (int a = 0; a < x.size(); ++a) {
            if (!fixes(x, a))
                continue;
            for (int b = 0; b < y.size(); ++b) {
                if (!fixes(y, b))
                    continue;
                GSpan s{x, y, apex, std::vector<int>(count), std::vector<int>(count)};
                for (int e = 0; e < g.order(); ++e) {
                    s.left[label[e]] = x.act(e, a);
                    s.right[label[e]] = y.act(e, b);
                }
                bool fresh = true;
                for (std::size_t i = first; i < basis.elements.size() && fresh; ++i)
                    fresh = !gspan_iso(basis.elements[i], s).has_value();
                if (fresh)
                    basis.elements.push_back(std::move(s));
            }
        }
    }
    return basis;
}

LinearHom express(const GSpanBasis& basis, const GSpan& s)
{
    if (!(s.source == basis.source) || !(s.target == basis.target))
        fail("express: span has the wrong endpoints");
    LinearHom out;
    for (const GSpan& c : decompose_gspan(s)) {
        int found = -1;
        for (std::size_t i = 0; i < basis.size() && found < 0; ++i)
            if (basis.elements[i].apex.size() == c.apex.size() && gspan_iso(basis.elements[i], c))
                found = static_cast<int>(i);
        if (found < 0)
            throw std::logic_error("express: transitive span missing from the basis");
        out.terms[found] += 1;
    }
    return out;
}

// ---- Yoshida ------------------------------------------------------------------------------

Matrix yoshida_matrix(const GSpan& s)
{
    Matrix m(static_cast<std::size_t>(s.target.size()), static_cast<std::size_t>(s.source.size()));
    for (int i = 0; i < s.apex.size(); ++i)
        m(s.right[i], s.left[i]) += 1;
    return m;
}

Matrix yoshida_matrix(const GSpanBasis& basis, const LinearHom& h)
{
    Matrix m(static_cast<std::size_t>(basis.target.size()), static_cast<std::size_t>(basis.source.size()));
    for (const auto& [i, c] : h.terms) {
        if (i < 0 || static_cast<std::size_t>(i) >= basis.size())
            fail("yoshida_matrix: index outside the basis");
        const GSpan& s = basis.elements[i];
        for (int p = 0; p < s.apex.size(); ++p)
            m(s.right[p], s.left[p]) += c;
    }
    return m;
}

Matrix yoshida_push(const GSet& x, const GSet& y, const std::vector<int>& f)
{
    if (!is_equivariant(x, y, f))
        fail("yoshida_push: map is not equivariant");
    Matrix m(static_cast<std::size_t>(y.size()), static_cast<std::size_t>(x.size()));
    for (int i = 0; i < x.size(); ++i)
        m(f[i], i) = 1;
    return m;
}

Matrix yoshida_pull(const GSet& x, const GSet& y, const std::vector<int>& f)
{
    return yoshida_push(x, y, f).transpose();
}

Matrix permutation_matrix(const GSet& x, int g)
{
    Matrix m(static_cast<std::size_t>(x.size()), static_cast<std::size_t>(x.size()));
    for (int i = 0; i < x.size(); ++i)
        m(x.act(g, i), i) = 1;
    return m;
}

bool is_equivariant(const Matrix& m, const GSet& x, const GSet& y)
{
    if (m.rows() != static_cast<std::size_t>(y.size()) || m.cols() != static_cast<std::size_t>(x.size()))
        return false;
    for (int g : x.group().generators())
        if (!(permutation_matrix(y, g) * m == m * permutation_matrix(x, g)))
            return false;
    return true;
}

std::vector<Matrix> equivariant_hom_basis(const GSet& x, const GSet& y)
{
    if (!(x.group() == y.group()))
        fail("equivariant_hom_basis: G-sets over different groups");
    const std::size_t nx = x.size(), ny = y.size(), n = nx * ny;
    // P_Y(g) M = M P_X(g), entrywise: M(g r, g c) = M(r, c).
    std::vector<std::vector<Rational>> rows;
    for (int g : x.group().generators())
        for (std::size_t r = 0; r < ny; ++r)
            for (std::size_t c = 0; c < nx; ++c) {
                std::size_t a = r * nx + c, b = static_cast<std::size_t>(y.act(g, r)) * nx + x.act(g, c);
                if (a == b)
                    continue;
                std::vector<Rational> row(n);
                row[a] = 1;
                row[b] = -1;
                rows.push_back(std::move(row));
            }
    std::vector<Matrix> out;
    for (const auto& v : kernel_basis(Matrix::from_rows(rows, n))) {
        Matrix m(ny, nx);
        for (std::size_t i = 0; i < n; ++i)
            m(i / nx, i % nx) = v[i];
        out.push_back(std::move(m));
    }
    return out;
}

bool check_pullback_identity(const GSet& s, const GSet& t, const GSet& y, const std::vector<int>& beta,
                             const std::vector<int>& gamma)
{
    if (!is_equivariant(s, y, beta) || !is_equivariant(t, y, gamma))
        fail("check_pullback_identity: maps are not equivariant");
    GSpan bs = covariant_gspan(s, y, beta);
    GSpan gt = contravariant_gspan(t, y, gamma);
    GSpan p = gspan_compose(gt, bs); // apex S x_Y T, legs gamma~ and beta~
    Matrix lhs = yoshida_pull(t, y, gamma) * yoshida_push(s, y, beta);
    Matrix rhs = yoshida_push(p.apex, t, p.right) * yoshida_pull(p.apex, s, p.left);
    return lhs == rhs;
}

int double_coset_count(const Group& g, const Subgroup& h, const Subgroup& k)
{
    require_subgroup(g, h, "double_coset_count");
    require_subgroup(g, k, "double_coset_count");
    std::vector<bool> seen(static_cast<std::size_t>(g.order()), false);
    int count = 0;
    for (int x = 0; x < g.order(); ++x) {
        if (seen[x])
            continue;
        ++count;
        for (int a : h)
            for (int b : k)
                seen[g.mul(g.mul(a, x), g.inv(b))] = true;
    }
    return count;
}

YoshidaRankReport yoshida_rank_check(const Group& g, const Subgroup& h, const Subgroup& k, Scalars scalars)
{
    require_subgroup(g, h, "yoshida_rank_check");
    require_subgroup(g, k, "yoshida_rank_check");
    GSet x = GSet::cosets(g, h), y = GSet::cosets(g, k);
    GSpanBasis basis = gspan_hom_basis(x, y);
    YoshidaRankReport r;
    r.basis_size = basis.size();
    r.equivariant = true;
    std::vector<std::vector<Rational>> flat;
    for (const GSpan& s : basis.elements) {
        Matrix m = yoshida_matrix(s);
        r.equivariant = r.equivariant && is_equivariant(m, x, y);
        flat.push_back(flatten(m));
    }
    std::size_t dim = static_cast<std::size_t>(x.size()) * y.size();
    r.rank = span_rank(flat, dim);
    r.double_cosets = double_coset_count(g, h, k);
    r.hom_dimension = equivariant_hom_basis(x, y).size();
    if (scalars == Scalars::integer && !flat.empty())
        r.invariant_factors = smith_invariants(integer_rows(Matrix::from_rows(flat, dim)));
    return r;
}

// ---- cohomological kernel ------------------------------------------------------------------

bool CohomologicalReport::ok() const
{
    for (const auto& rel : relations)
        if (!rel.vanishes)
            return false;
    for (const auto& h : homs)
        if (!h.kernel_in_ideal || !h.ideal_in_kernel)
            return false;
    return !homs.empty();
}

CohomologicalReport cohomological_kernel_check(const Group& g, int jobs)
{
    CohomologicalReport rep;
    rep.subgroups = subgroup_class_representatives(g, all_elements(g));
    const int n = static_cast<int>(rep.subgroups.size());
    std::vector<GSet> objects;
    for (const auto& h : rep.subgroups)
        objects.push_back(GSet::cosets(g, h));

    const int homs = n * n;
    std::vector<GSpanBasis> bases(static_cast<std::size_t>(homs));
    std::vector<std::vector<std::vector<Rational>>> kernels(static_cast<std::size_t>(homs));
    rep.homs.resize(static_cast<std::size_t>(homs));
    parallel_for(homs, jobs, [&](int idx) {
        int i = idx / n, j = idx % n;
        bases[idx] = gspan_hom_basis(objects[i], objects[j]);
        std::size_t rows = static_cast<std::size_t>(objects[i].size()) * objects[j].size();
        Matrix yo(rows, bases[idx].size());
        for (std::size_t c = 0; c < bases[idx].size(); ++c) {
            auto v = flatten(yoshida_matrix(bases[idx].elements[c]));
            for (std::size_t r = 0; r < rows; ++r)
                yo(r, c) = v[r];
        }
        kernels[idx] = kernel_basis(yo);
        GHomReport& h = rep.homs[idx];
        h.source = i;
        h.target = j;
        h.basis_size = bases[idx].size();
        h.rank = rank(yo);
        h.kernel_rank = kernels[idx].size();
    });

    // [G/H <- G/L -> G/H] - [H:L] Id for L < H up to H-conjugacy
    for (int i = 0; i < n; ++i) {
        const Subgroup& h = rep.subgroups[i];
        int hc = 0;
        auto hl = coset_labels(g, h, &hc);
        const GSpanBasis& b = bases[static_cast<std::size_t>(i) * n + i];
        LinearHom id = express(b, identity_gspan(objects[i]));
        for (const Subgroup& l : subgroup_class_representatives(g, h)) {
            if (l.size() == h.size())
                continue;
            GSet gl = GSet::cosets(g, l);
            int lc = 0;
            auto ll = coset_labels(g, l, &lc);
            std::vector<int> proj(static_cast<std::size_t>(lc));
            for (int e = 0; e < g.order(); ++e)
                proj[ll[e]] = hl[e];
            GSpan s{objects[i], objects[i], gl, proj, proj};
            CohomologicalRelation rel;
            rel.h = i;
            rel.l = l;
            rel.index = static_cast<int>(h.size() / l.size());
            rel.element = express(b, s) - Rational(rel.index) * id;
            rel.vanishes = yoshida_matrix(b, rel.element).is_zero();
            rep.relations.push_back(std::move(rel));
        }
    }

    std::map<std::tuple<int, int, int, int, int>, LinearHom> cache;
    auto compose_basis = [&](int x, int y, int z, int t, int s) -> const LinearHom& {
        auto key = std::make_tuple(x, y, z, t, s);
        auto it = cache.find(key);
        if (it == cache.end()) {
            const GSpanBasis& bt = bases[static_cast<std::size_t>(y) * n + z];
            const GSpanBasis& bs = bases[static_cast<std::size_t>(x) * n + y];
            GSpan c = gspan_compose(bt.elements[t], bs.elements[s]);
            it = cache.emplace(key, express(bases[static_cast<std::size_t>(x) * n + z], c)).first;
        }
        return it->second;
    };

    std::vector<Spanning> ideal;
    std::vector<Spanning> kernel_span;
    for (int idx = 0; idx < homs; ++idx) {
        ideal.emplace_back(bases[idx].size());
        kernel_span.emplace_back(bases[idx].size());
        for (const auto& v : kernels[idx])
            kernel_span.back().add(v);
    }
    bool ideal_in_kernel = true;
    std::deque<std::tuple<int, int, LinearHom>> queue;
    auto offer = [&](int x, int y, const LinearHom& v) {
        int idx = x * n + y;
        if (ideal[idx].rank() == kernels[idx].size() && ideal_in_kernel)
            return; // already everything it can be
        auto d = v.dense(bases[idx].size());
        if (ideal[idx].add(d)) {
            if (!kernel_span[idx].contains(d))
                ideal_in_kernel = false;
            queue.emplace_back(x, y, v);
        }
    };
    for (const auto& rel : rep.relations)
        offer(rel.h, rel.h, rel.element);
    auto saturated = [&] {
        for (int idx = 0; idx < homs; ++idx)
            if (ideal[idx].rank() != kernels[idx].size())
                return false;
        return true;
    };
    while (!queue.empty() && !(ideal_in_kernel && saturated())) {
        auto [x, y, v] = queue.front();
        queue.pop_front();
        for (int z = 0; z < n; ++z) {
            // b∘v for b : y -> z, and v∘a for a : z -> x
            for (std::size_t t = 0; t < bases[static_cast<std::size_t>(y) * n + z].size(); ++t) {
                LinearHom acc;
                for (const auto& [s, c] : v.terms)
                    acc = acc + c * compose_basis(x, y, z, static_cast<int>(t), s);
                if (!acc.is_zero())
                    offer(x, z, acc);
            }
            for (std::size_t a = 0; a < bases[static_cast<std::size_t>(z) * n + x].size(); ++a) {
                LinearHom acc;
                for (const auto& [s, c] : v.terms)
                    acc = acc + c * compose_basis(z, x, y, s, static_cast<int>(a));
                if (!acc.is_zero())
                    offer(z, y, acc);
            }
        }
    }
    if (!queue.empty())
        rep.notes.push_back("saturation stopped early: ideal rank equals kernel rank on every hom");

    for (int idx = 0; idx < homs; ++idx) {
        GHomReport& h = rep.homs[idx];
        h.ideal_rank = ideal[idx].rank();
        h.ideal_in_kernel = span_contains(kernels[idx], ideal[idx].rows(), bases[idx].size());
        h.kernel_in_ideal = span_contains(ideal[idx].rows(), kernels[idx], bases[idx].size());
    }
    return rep;
}

// ---- fixed points ---------------------------------------------------------------------------

bool FixedPointReport::ok() const
{
    for (const auto& v : values)
        if (!v.agree || v.rank_fixed != 1 || v.rank_hom != 1)
            return false;
    for (const auto& m : maps) {
        Rational expected = m.kind == "ind" ? Rational(m.index) : Rational(1);
        if (!m.scalar || m.factor != expected)
            return false;
    }
    return !values.empty();
}

FixedPointReport fixed_point_functor(const Group& g)
{
    FixedPointReport rep;
    GSet pt = GSet::point(g);
    auto subgroups = subgroup_class_representatives(g, all_elements(g));

    auto orbit_sum = [](const GSet& x) { return std::vector<Rational>(static_cast<std::size_t>(x.size()), Rational(1)); };
    auto record = [&](std::string kind, const Subgroup& from, const Subgroup& to, int index, const GSpan& s) {
        auto image = times(yoshida_matrix(s), orbit_sum(s.source));
        FixedPointMap m{std::move(kind), from, to, index, image.empty() ? Rational(0) : image[0], false};
        m.scalar = !image.empty() && std::all_of(image.begin(), image.end(), [&](const Rational& q) { return q == m.factor; });
        rep.maps.push_back(std::move(m));
    };

    for (const Subgroup& h : subgroups) {
        GSet x = GSet::cosets(g, h);
        FixedPointValue v;
        v.h = h;
        // fixed vectors: kernel of (P(g) - 1) over the generators
        std::vector<std::vector<Rational>> rows;
        for (int e : g.generators()) {
            Matrix d = permutation_matrix(x, e) - Matrix::identity(x.size());
            for (std::size_t r = 0; r < d.rows(); ++r)
                rows.emplace_back(d.row(r).begin(), d.row(r).end());
        }
        auto fixed = kernel_basis(Matrix::from_rows(rows, x.size()));
        auto homs = equivariant_hom_basis(pt, x);
        v.rank_fixed = fixed.size();
        v.rank_hom = homs.size();
        std::vector<std::vector<Rational>> from_homs;
        for (const Matrix& m : homs)
            from_homs.push_back(flatten(m));
        auto ones = std::vector<std::vector<Rational>>{orbit_sum(x)};
        v.agree = span_contains(ones, fixed, x.size()) && span_contains(fixed, ones, x.size()) &&
                  span_contains(ones, from_homs, x.size()) && span_contains(from_homs, ones, x.size());
        rep.values.push_back(std::move(v));
    }

    for (const Subgroup& h : subgroups) {
        GSet gh = GSet::cosets(g, h);
        int hc = 0;
        auto hl = coset_labels(g, h, &hc);
        for (const Subgroup& l : subgroup_class_representatives(g, h)) {
            if (l.size() == h.size())
                continue;
            GSet gl = GSet::cosets(g, l);
            int lc = 0;
            auto ll = coset_labels(g, l, &lc);
            std::vector<int> proj(static_cast<std::size_t>(lc));
            for (int e = 0; e < g.order(); ++e)
                proj[ll[e]] = hl[e];
            int index = static_cast<int>(h.size() / l.size());
            record("ind", l, h, index, covariant_gspan(gl, gh, proj));
            record("res", h, l, index, contravariant_gspan(gl, gh, proj));
        }
        // xH -> x a^-1 (a H a^-1)
        for (int a : g.generators()) {
            Subgroup ch = conjugate_subgroup(g, h, a);
            GSet gch = GSet::cosets(g, ch);
            int cc = 0;
            auto cl = coset_labels(g, ch, &cc);
            std::vector<int> f(static_cast<std::size_t>(hc));
            for (int e = 0; e < g.order(); ++e)
                f[hl[e]] = cl[g.mul(e, g.inv(a))];
            record("conj", h, ch, 1, covariant_gspan(gh, gch, f));
        }
    }
    return rep;
}

} // namespace bispan
