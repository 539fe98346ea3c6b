#include "bispan/coend.hpp"

#include "bispan/pool.hpp"
#include "bispan/union_find.hpp"

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bispan {

CoendResult set_coend(const Biset& h, bool verify)
{
    const Groupoid& C = *h.target();
    if (h.source()->object_count() != C.object_count())
        throw std::invalid_argument("set_coend: bifunctor must be a biset C -> C");
    int n = C.object_count();
    CoendResult r;
    r.diagonal_offset.assign(n + 1, 0);
    for (int c = 0; c < n; ++c)
        r.diagonal_offset[c + 1] = r.diagonal_offset[c] + h.size(c, c);

    // alpha : c' -> c, y in H(c, c'):  H(alpha, id) y ~ H(id, alpha) y
    DisjointSet ds(r.diagonal_offset[n]);
    for (int alpha = 0; alpha < C.morphism_count(); ++alpha) {
        int c2 = C.src(alpha), c = C.tgt(alpha);
        for (int y = 0; y < h.size(c, c2); ++y) {
            int a = h.act_source(alpha, c2, y);
            int b = h.act_target(alpha, c, y);
            ds.unite(r.diagonal_offset[c2] + a, r.diagonal_offset[c] + b);
        }
    }
    r.label = ds.canonical_labels(&r.class_count);
    r.representative.assign(r.class_count, {-1, -1});
    std::vector<int> class_size(r.class_count, 0);
    for (int c = 0; c < n; ++c)
        for (int x = 0; x < h.size(c, c); ++x) {
            int l = r.label[r.diagonal_offset[c] + x];
            ++class_size[l];
            if (r.representative[l].first < 0)
                r.representative[l] = {c, x};
        }

    if (verify) {
        // The one-step neighbours of x in H(c, c) are its conjugates
        // H(alpha^-1, alpha) x; the relation is an equivalence iff they
        // already exhaust the class.
        for (int l = 0; l < r.class_count; ++l) {
            auto [c, x] = r.representative[l];
            std::set<int> reached;
            for (int alpha : C.out(c)) {
                int c2 = C.tgt(alpha);
                int y = h.act_source(C.inverse(alpha), c, x);
                reached.insert(r.diagonal_offset[c2] + h.act_target(alpha, c2, y));
            }
            if (static_cast<int>(reached.size()) != class_size[l])
                throw std::logic_error("set_coend: one-step relation is not transitive");
        }
    }
    return r;
}

void LinearCoendProblem::validate() const
{
    const Groupoid& C = *index;
    int n = C.object_count();
    auto nn = static_cast<std::size_t>(n);
    if (ranks.size() != nn * nn || left.size() != C.morphism_count() * nn || right.size() != left.size())
        throw std::invalid_argument("linear coend problem: wrong table sizes");
    for (int a = 0; a < C.morphism_count(); ++a)
        for (int o = 0; o < n; ++o) {
            const Matrix& l = left[a * nn + o];
            const Matrix& r = right[a * nn + o];
            if (l.rows() != static_cast<std::size_t>(rank(C.src(a), o)) ||
                l.cols() != static_cast<std::size_t>(rank(C.tgt(a), o)))
                throw std::invalid_argument("linear coend problem: left action has wrong shape");
            if (r.rows() != static_cast<std::size_t>(rank(o, C.tgt(a))) ||
                r.cols() != static_cast<std::size_t>(rank(o, C.src(a))))
                throw std::invalid_argument("linear coend problem: right action has wrong shape");
        }
    for (int o = 0; o < n; ++o)
        for (int c = 0; c < n; ++c) {
            int id = C.identity(c);
            if (!(left[id * nn + o] == Matrix::identity(rank(c, o))) ||
                !(right[id * nn + o] == Matrix::identity(rank(o, c))))
                throw std::invalid_argument("linear coend problem: identity does not act trivially");
        }
    for (int f = 0; f < C.morphism_count(); ++f)
        for (int g : C.out(C.tgt(f))) {
            int gf = C.compose(g, f);
            for (int o = 0; o < n; ++o) {
                if (!(left[gf * nn + o] == left[f * nn + o] * left[g * nn + o]))
                    throw std::invalid_argument("linear coend problem: left action not functorial");
                if (!(right[gf * nn + o] == right[g * nn + o] * right[f * nn + o]))
                    throw std::invalid_argument("linear coend problem: right action not functorial");
            }
        }
    for (int a = 0; a < C.morphism_count(); ++a)
        for (int b = 0; b < C.morphism_count(); ++b) {
            // H(a, id) H(id, b) = H(id, b) H(a, id) on H(tgt a, src b)
            auto lhs = left[a * nn + C.tgt(b)] * right[b * nn + C.tgt(a)];
            auto rhs = right[b * nn + C.src(a)] * left[a * nn + C.src(b)];
            if (!(lhs == rhs))
                throw std::invalid_argument("linear coend problem: actions do not commute");
        }
}

LinearCoendProblem linearize(const Biset& h)
{
    LinearCoendProblem p;
    p.index = h.target();
    const Groupoid& C = *p.index;
    int n = C.object_count();
    auto nn = static_cast<std::size_t>(n);
    p.ranks.resize(nn * nn);
    for (int c = 0; c < n; ++c)
        for (int c2 = 0; c2 < n; ++c2)
            p.ranks[c * nn + c2] = h.size(c, c2);
    p.left.resize(C.morphism_count() * nn);
    p.right.resize(p.left.size());
    for (int a = 0; a < C.morphism_count(); ++a)
        for (int o = 0; o < n; ++o) {
            Matrix l(h.size(C.src(a), o), h.size(C.tgt(a), o));
            for (int j = 0; j < h.size(C.tgt(a), o); ++j)
                l(h.act_source(a, o, j), j) = 1;
            Matrix r(h.size(o, C.tgt(a)), h.size(o, C.src(a)));
            for (int j = 0; j < h.size(o, C.src(a)); ++j)
                r(h.act_target(a, o, j), j) = 1;
            p.left[a * nn + o] = std::move(l);
            p.right[a * nn + o] = std::move(r);
        }
    return p;
}

LinearCoendResult linear_coend(const LinearCoendProblem& p, Scalars scalars)
{
    const Groupoid& C = *p.index;
    int n = C.object_count();
    auto nn = static_cast<std::size_t>(n);
    LinearCoendResult r;
    r.diagonal_offset.assign(n + 1, 0);
    for (int c = 0; c < n; ++c)
        r.diagonal_offset[c + 1] = r.diagonal_offset[c] + p.rank(c, c);
    auto dim = static_cast<std::size_t>(r.diagonal_offset[n]);

    // alpha : c' -> c, e_j in H(c, c'):  H(alpha, id) e_j - H(id, alpha) e_j
    std::vector<std::vector<Rational>> relations;
    for (int a = 0; a < C.morphism_count(); ++a) {
        int c2 = C.src(a), c = C.tgt(a);
        const Matrix& l = p.left[a * nn + c2];
        const Matrix& rt = p.right[a * nn + c];
        for (int j = 0; j < p.rank(c, c2); ++j) {
            std::vector<Rational> v(dim);
            for (std::size_t i = 0; i < l.rows(); ++i)
                v[r.diagonal_offset[c2] + i] += l(i, j);
            for (std::size_t i = 0; i < rt.rows(); ++i)
                v[r.diagonal_offset[c] + i] -= rt(i, j);
            relations.push_back(std::move(v));
        }
    }
    Cokernel k = cokernel(relations, dim);
    r.rank = k.basis_columns.size();
    r.projection = std::move(k.projection);
    r.basis_columns = std::move(k.basis_columns);

    if (scalars == Scalars::integer) {
        std::vector<std::vector<Integer>> m;
        m.reserve(relations.size());
        for (const auto& v : relations) {
            std::vector<Integer> row(dim);
            for (std::size_t i = 0; i < dim; ++i) {
                if (v[i].get_den() != 1)
                    throw std::invalid_argument("linear_coend: integer mode needs integral actions");
                row[i] = v[i].get_num();
            }
            m.push_back(std::move(row));
        }
        r.invariant_factors = smith_invariants(m);
        if (dim - r.invariant_factors.size() != r.rank)
            throw std::logic_error("linear_coend: integer and rational ranks disagree");
    }
    return r;
}

// ---- Fubini -----------------------------------------------------------------

namespace {

// Iterated coend of H on C1 x C2, integrating the `inner_second ? C2 : C1`
// variable first. Returns a class label per diagonal element of H.
std::vector<int> iterated_coend(const Biset& h, const Groupoid& c1, const Groupoid& c2, bool inner_second,
                                const std::vector<int>& diag_offset, int* count)
{
    int n2 = c2.object_count(), m2 = c2.morphism_count();
    const Groupoid& outer = inner_second ? c1 : c2;
    const Groupoid& inner = inner_second ? c2 : c1;
    auto obj = [&](int o, int i) { return inner_second ? o * n2 + i : i * n2 + o; };
    auto mor = [&](int o, int i) { return inner_second ? o * m2 + i : i * m2 + o; };
    int no = outer.object_count(), ni = inner.object_count();
    auto inner_graph = make_groupoid(inner);
    auto outer_graph = make_groupoid(outer);

    // slice(a, a') : (b, b') -> H((a, b), (a', b'))
    std::vector<CoendResult> slices(static_cast<std::size_t>(no) * no);
    for (int a = 0; a < no; ++a)
        for (int a2 = 0; a2 < no; ++a2) {
            std::vector<int> sizes(static_cast<std::size_t>(ni) * ni);
            for (int b = 0; b < ni; ++b)
                for (int b2 = 0; b2 < ni; ++b2)
                    sizes[b * ni + b2] = h.size(obj(a, b), obj(a2, b2));
            Biset s = Biset::build(
                inner_graph, inner_graph, sizes,
                [&](int beta, int b, int x) { return h.act_target(mor(outer.identity(a2), beta), obj(a, b), x); },
                [&](int beta, int b2, int x) { return h.act_source(mor(outer.identity(a), beta), obj(a2, b2), x); });
            slices[a * no + a2] = set_coend(s);
        }
    auto slice = [&](int a, int a2) -> const CoendResult& { return slices[static_cast<std::size_t>(a) * no + a2]; };

    std::vector<int> sizes(static_cast<std::size_t>(no) * no);
    for (int a = 0; a < no; ++a)
        for (int a2 = 0; a2 < no; ++a2)
            sizes[a * no + a2] = slice(a, a2).class_count;
    Biset outer_biset = Biset::build(
        outer_graph, outer_graph, sizes,
        [&](int alpha, int a, int x) {
            int a2 = outer.src(alpha), a3 = outer.tgt(alpha);
            auto [b, y] = slice(a, a2).representative[x];
            int z = h.act_target(mor(alpha, inner.identity(b)), obj(a, b), y);
            return slice(a, a3).class_of(b, z);
        },
        [&](int alpha, int a2, int x) {
            int a = outer.tgt(alpha), a0 = outer.src(alpha);
            auto [b, y] = slice(a, a2).representative[x];
            int z = h.act_source(mor(alpha, inner.identity(b)), obj(a2, b), y);
            return slice(a0, a2).class_of(b, z);
        });
    CoendResult total = set_coend(outer_biset);
    *count = total.class_count;

    std::vector<int> label(diag_offset.back());
    for (int a = 0; a < no; ++a)
        for (int b = 0; b < ni; ++b) {
            int o = obj(a, b);
            for (int x = 0; x < h.size(o, o); ++x)
                label[diag_offset[o] + x] = total.class_of(a, slice(a, a).class_of(b, x));
        }
    return label;
}

// True iff the two labelings induce the same partition.
bool same_partition(const std::vector<int>& a, int na, const std::vector<int>& b, int nb)
{
    if (na != nb)
        return false;
    std::vector<int> fwd(na, -1), bwd(nb, -1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (fwd[a[i]] < 0 && bwd[b[i]] < 0) {
            fwd[a[i]] = b[i];
            bwd[b[i]] = a[i];
        }
        if (fwd[a[i]] != b[i] || bwd[b[i]] != a[i])
            return false;
    }
    return true;
}

} // namespace

std::string check_fubini(const FubiniCase& f)
{
    const Groupoid& c1 = *f.c1;
    const Groupoid& c2 = *f.c2;
    const Biset& h = *f.h;
    int n = c1.object_count() * c2.object_count();
    if (h.source()->object_count() != n || h.target()->object_count() != n ||
        h.target()->morphism_count() != c1.morphism_count() * c2.morphism_count())
        return "bifunctor is not indexed by the product";
    CoendResult joint = set_coend(h);
    int n1 = 0, n2 = 0;
    auto first = iterated_coend(h, c1, c2, true, joint.diagonal_offset, &n1);
    auto second = iterated_coend(h, c1, c2, false, joint.diagonal_offset, &n2);
    std::ostringstream out;
    if (!same_partition(joint.label, joint.class_count, first, n1))
        out << "joint (" << joint.class_count << " classes) differs from C2-first (" << n1 << ")";
    else if (!same_partition(joint.label, joint.class_count, second, n2))
        out << "joint (" << joint.class_count << " classes) differs from C1-first (" << n2 << ")";
    return out.str();
}

// ---- co-Yoneda --------------------------------------------------------------

std::string check_co_yoneda(const CoYonedaCase& y)
{
    const Groupoid& C = *y.c;
    const Biset& m = *y.m;
    int n = C.object_count();
    if (m.source()->object_count() != 1 || m.target()->object_count() != n)
        return "functor is not a biset 1 -> C";
    auto msize = [&](int c) { return m.size(0, c); };
    auto mact = [&](int alpha, int x) { return m.act_target(alpha, 0, x); };

    // Q_x(c, c') = C(c, x) x M(c'), element pos(alpha) * |M(c')| + m
    std::vector<BisetPtr> q(n);
    std::vector<CoendResult> coends(n);
    for (int x = 0; x < n; ++x) {
        std::vector<int> sizes(static_cast<std::size_t>(n) * n);
        for (int c = 0; c < n; ++c)
            for (int c2 = 0; c2 < n; ++c2)
                sizes[c * n + c2] = static_cast<int>(C.hom(c, x).size()) * msize(c2);
        q[x] = make_biset(Biset::build(
            y.c, y.c, sizes,
            [&](int gamma, int, int e) {
                int ms = msize(C.src(gamma));
                return (e / ms) * msize(C.tgt(gamma)) + mact(gamma, e % ms);
            },
            [&](int beta, int c2, int e) {
                int ms = msize(c2);
                int alpha = C.hom(C.tgt(beta), x)[e / ms];
                return C.pos_in_hom(C.compose(alpha, beta)) * ms + e % ms;
            }));
        coends[x] = set_coend(*q[x]);
    }

    auto eval = [&](int x, int cls) {
        auto [c, e] = coends[x].representative[cls];
        int ms = msize(c);
        return mact(C.hom(c, x)[e / ms], e % ms);
    };
    std::ostringstream out;
    for (int x = 0; x < n; ++x) {
        const CoendResult& r = coends[x];
        if (r.class_count != msize(x)) {
            out << "at object " << x << ": coend has " << r.class_count << " classes, M(x) has " << msize(x);
            return out.str();
        }
        // evaluation is constant on classes
        for (int c = 0; c < n; ++c) {
            int ms = msize(c);
            for (int e = 0; e < q[x]->size(c, c); ++e)
                if (mact(C.hom(c, x)[e / ms], e % ms) != eval(x, r.class_of(c, e))) {
                    out << "evaluation not constant on a class at object " << x;
                    return out.str();
                }
        }
        // inverse m -> [id_x, m]
        int id_pos = C.pos_in_hom(C.identity(x));
        for (int e = 0; e < msize(x); ++e) {
            int cls = r.class_of(x, id_pos * msize(x) + e);
            if (eval(x, cls) != e) {
                out << "eval after insertion is not the identity at object " << x;
                return out.str();
            }
        }
        for (int cls = 0; cls < r.class_count; ++cls)
            if (r.class_of(x, id_pos * msize(x) + eval(x, cls)) != cls) {
                out << "insertion after eval is not the identity at object " << x;
                return out.str();
            }
        // naturality in x
        for (int f : C.out(x)) {
            int x2 = C.tgt(f);
            for (int cls = 0; cls < r.class_count; ++cls) {
                auto [c, e] = r.representative[cls];
                int ms = msize(c);
                int moved = C.pos_in_hom(C.compose(f, C.hom(c, x)[e / ms])) * ms + e % ms;
                if (eval(x2, coends[x2].class_of(c, moved)) != mact(f, eval(x, cls))) {
                    out << "evaluation not natural along morphism " << f;
                    return out.str();
                }
            }
        }
    }
    return {};
}

CalculusReport verify_coend_calculus(const std::vector<GroupoidPtr>& pool, int cases_each, unsigned seed)
{
    if (pool.empty())
        throw std::invalid_argument("verify_coend_calculus: empty pool");
    CalculusReport report;
    Rng rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int i = 0; i < cases_each; ++i) {
        FubiniCase f{pool[pick(rng)], pool[pick(rng)], nullptr};
        auto p = product(f.c1, f.c2);
        f.h = random_biset(p, p, rng);
        ++report.fubini_cases;
        std::string err = check_fubini(f);
        if (err.empty())
            ++report.fubini_passed;
        else
            report.failures.push_back("fubini #" + std::to_string(i) + ": " + err);
    }
    auto one = trivial_groupoid();
    for (int i = 0; i < cases_each; ++i) {
        CoYonedaCase y{pool[pick(rng)], nullptr};
        y.m = random_biset(one, y.c, rng);
        ++report.co_yoneda_cases;
        std::string err = check_co_yoneda(y);
        if (err.empty())
            ++report.co_yoneda_passed;
        else
            report.failures.push_back("co-yoneda #" + std::to_string(i) + ": " + err);
    }
    return report;
}

} // namespace bispan
