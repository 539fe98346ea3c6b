#include "bispan/group.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <regex>
#include <set>
#include <stdexcept>

namespace bispan {

Group Group::from_table(const std::vector<std::vector<int>>& table)
{
    int n = static_cast<int>(table.size());
    if (n == 0)
        throw std::invalid_argument("group table is empty");
    Group g;
    g.n_ = n;
    g.table_.resize(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
        if (static_cast<int>(table[a].size()) != n)
            throw std::invalid_argument("group table is not square");
        for (int b = 0; b < n; ++b) {
            int c = table[a][b];
            if (c < 0 || c >= n)
                throw std::invalid_argument("group table entry out of range");
            g.table_[static_cast<std::size_t>(a) * n + b] = c;
        }
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
                    throw std::invalid_argument("group table is not associative");
    int e = -1;
    for (int a = 0; a < n && e < 0; ++a) {
        bool ok = true;
        for (int b = 0; b < n && ok; ++b)
            ok = g.mul(a, b) == b && g.mul(b, a) == b;
        if (ok)
            e = a;
    }
    if (e < 0)
        throw std::invalid_argument("group table has no identity");
    g.identity_ = e;
    g.inverse_.assign(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (g.mul(a, b) == e && g.mul(b, a) == e)
                g.inverse_[a] = b;
    if (std::find(g.inverse_.begin(), g.inverse_.end(), -1) != g.inverse_.end())
        throw std::invalid_argument("group table has an element without inverse");
    g.finish();
    return g;
}

Group Group::from_permutations(const std::vector<std::vector<int>>& generators)
{
    if (generators.empty())
        return cyclic_group(1);
    std::size_t degree = generators.front().size();
    for (const auto& p : generators) {
        if (p.size() != degree)
            throw std::invalid_argument("permutations of different degree");
        std::vector<int> sorted = p;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < degree; ++i)
            if (sorted[i] != static_cast<int>(i))
                throw std::invalid_argument("not a permutation");
    }
    std::vector<int> id(degree);
    std::iota(id.begin(), id.end(), 0);
    std::map<std::vector<int>, int> index{{id, 0}};
    std::vector<std::vector<int>> elems{id};
    // composition convention: (p*q)(i) = p(q(i))
    auto compose = [&](const std::vector<int>& p, const std::vector<int>& q) {
        std::vector<int> r(degree);
        for (std::size_t i = 0; i < degree; ++i)
            r[i] = p[q[i]];
        return r;
    };
    for (std::size_t k = 0; k < elems.size(); ++k)
        for (const auto& gen : generators) {
            auto next = compose(elems[k], gen);
            if (index.emplace(next, static_cast<int>(elems.size())).second)
                elems.push_back(std::move(next));
        }
    int n = static_cast<int>(elems.size());
    Group g;
    g.n_ = n;
    g.table_.resize(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            g.table_[static_cast<std::size_t>(a) * n + b] = index.at(compose(elems[a], elems[b]));
    g.identity_ = 0;
    g.inverse_.assign(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (g.mul(a, b) == 0)
                g.inverse_[a] = b;
    g.finish();
    return g;
}

void Group::finish()
{
    element_order_.assign(n_, 0);
    for (int a = 0; a < n_; ++a) {
        int k = 1;
        for (int x = a; x != identity_; x = mul(x, a))
            ++k;
        element_order_[a] = k;
    }
    generators_.clear();
    Subgroup current{identity_};
    while (static_cast<int>(current.size()) < n_) {
        // prefer elements of largest order to keep the set short
        int best = -1;
        for (int a = 0; a < n_; ++a)
            if (!std::binary_search(current.begin(), current.end(), a)
                && (best < 0 || element_order_[a] > element_order_[best]))
                best = a;
        generators_.push_back(best);
        current = generated_subgroup(*this, generators_);
    }
}

bool Group::is_abelian() const
{
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
            if (mul(a, b) != mul(b, a))
                return false;
    return true;
}

std::vector<std::vector<int>> Group::table() const
{
    std::vector<std::vector<int>> t(n_, std::vector<int>(n_));
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
            t[a][b] = mul(a, b);
    return t;
}

std::vector<int> Group::order_profile() const
{
    auto p = element_order_;
    std::sort(p.begin(), p.end());
    return p;
}

// ---- constructions ---------------------------------------------------------

Group cyclic_group(int n)
{
    if (n < 1)
        throw std::invalid_argument("cyclic group order must be positive");
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            t[a][b] = (a + b) % n;
    return Group::from_table(t);
}

Group direct_product(const Group& a, const Group& b)
{
    int na = a.order(), nb = b.order();
    std::vector<std::vector<int>> t(na * nb, std::vector<int>(na * nb));
    for (int x1 = 0; x1 < na; ++x1)
        for (int y1 = 0; y1 < nb; ++y1)
            for (int x2 = 0; x2 < na; ++x2)
                for (int y2 = 0; y2 < nb; ++y2)
                    t[x1 * nb + y1][x2 * nb + y2] = a.mul(x1, x2) * nb + b.mul(y1, y2);
    return Group::from_table(t);
}

Group dihedral_group(int n)
{
    // rotations r^k = k, reflections s r^k = n + k
    int m = 2 * n;
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            int ka = a % n, kb = b % n;
            bool sa = a >= n, sb = b >= n;
            // (s^sa r^ka)(s^sb r^kb) = s^(sa+sb) r^(±ka + kb)
            int k = ((sb ? -ka : ka) + kb) % n;
            if (k < 0)
                k += n;
            t[a][b] = ((sa != sb) ? n : 0) + k;
        }
    return Group::from_table(t);
}

Group quaternion_group()
{
    // element = sign * unit, encoded 2 * unit + (sign < 0); units 1, i, j, k
    static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int unit_sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            int ua = a / 2, ub = b / 2;
            int sign = (a % 2 ? -1 : 1) * (b % 2 ? -1 : 1) * unit_sign[ua][ub];
            t[a][b] = 2 * unit_mul[ua][ub] + (sign < 0 ? 1 : 0);
        }
    return Group::from_table(t);
}

Group dicyclic3_group()
{
    // (i, j) with i mod 3, j mod 4; (i1, j1)(i2, j2) = (i1 + (-1)^j1 i2, j1 + j2)
    std::vector<std::vector<int>> t(12, std::vector<int>(12));
    for (int a = 0; a < 12; ++a)
        for (int b = 0; b < 12; ++b) {
            int i1 = a % 3, j1 = a / 3, i2 = b % 3, j2 = b / 3;
            int i = ((i1 + (j1 % 2 ? -i2 : i2)) % 3 + 3) % 3;
            t[a][b] = ((j1 + j2) % 4) * 3 + i;
        }
    return Group::from_table(t);
}

Group symmetric_group(int n)
{
    if (n <= 1)
        return cyclic_group(1);
    std::vector<int> cycle(n), swap(n);
    std::iota(swap.begin(), swap.end(), 0);
    std::swap(swap[0], swap[1]);
    for (int i = 0; i < n; ++i)
        cycle[i] = (i + 1) % n;
    return Group::from_permutations({swap, cycle});
}

Group alternating_group(int n)
{
    if (n <= 2)
        return cyclic_group(1);
    std::vector<std::vector<int>> gens;
    for (int i = 2; i < n; ++i) {
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        p[0] = 1;
        p[1] = i;
        p[i] = 0;
        gens.push_back(p);
    }
    return Group::from_permutations(gens);
}

namespace {
    Group factor_by_name(const std::string& name)
    {
        static const std::regex power(R"((.+)\^(\d+))");
        std::smatch m;
        if (std::regex_match(name, m, power)) {
            Group base = factor_by_name(m[1]);
            int k = std::stoi(m[2]);
            if (k < 1)
                throw std::invalid_argument("bad group power: " + name);
            Group g = base;
            for (int i = 1; i < k; ++i)
                g = direct_product(g, base);
            return g;
        }
        if (name == "1" || name == "C1")
            return cyclic_group(1);
        if (name == "V4")
            return direct_product(cyclic_group(2), cyclic_group(2));
        if (name == "Q8")
            return quaternion_group();
        if (name == "Dic3" || name == "Q12")
            return dicyclic3_group();
        static const std::regex family(R"(([CDSA])(\d+))");
        if (std::regex_match(name, m, family)) {
            int k = std::stoi(m[2]);
            if (k < 1 || k > 64)
                throw std::invalid_argument("group parameter out of range: " + name);
            switch (m.str(1)[0]) {
            case 'C': return cyclic_group(k);
            case 'D': return dihedral_group(k);
            case 'S':
                if (k > 5)
                    break;
                return symmetric_group(k);
            case 'A':
                if (k > 5)
                    break;
                return alternating_group(k);
            }
        }
        throw std::invalid_argument("unknown group name: " + name);
    }
}

Group group_by_name(const std::string& name)
{
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= name.size(); ++i)
        if (i == name.size() || name[i] == 'x') {
            parts.push_back(name.substr(start, i - start));
            start = i + 1;
        }
    Group g = factor_by_name(parts.front());
    for (std::size_t i = 1; i < parts.size(); ++i)
        g = direct_product(g, factor_by_name(parts[i]));
    return g;
}

std::vector<NamedGroup> small_group_catalog(int max_order)
{
    if (max_order > 12)
        throw std::invalid_argument("small group catalog only covers orders <= 12");
    static const std::vector<std::pair<int, std::string>> names = {
        {1, "1"},     {2, "C2"},     {3, "C3"},   {4, "C4"},  {4, "V4"},   {5, "C5"},
        {6, "C6"},    {6, "S3"},     {7, "C7"},   {8, "C8"},  {8, "C4xC2"}, {8, "C2^3"},
        {8, "D4"},    {8, "Q8"},     {9, "C9"},   {9, "C3^2"}, {10, "C10"}, {10, "D5"},
        {11, "C11"},  {12, "C12"},   {12, "C6xC2"}, {12, "A4"}, {12, "D6"}, {12, "Dic3"},
    };
    std::vector<NamedGroup> out;
    for (const auto& [order, name] : names)
        if (order <= max_order)
            out.push_back({name, group_by_name(name)});
    return out;
}

// ---- subgroups -------------------------------------------------------------

Subgroup generated_subgroup(const Group& g, const std::vector<int>& gens)
{
    std::vector<char> in(g.order(), 0);
    std::vector<int> elems{g.identity()};
    in[g.identity()] = 1;
    for (std::size_t k = 0; k < elems.size(); ++k)
        for (int s : gens) {
            int x = g.mul(elems[k], s);
            if (!in[x]) {
                in[x] = 1;
                elems.push_back(x);
            }
        }
    std::sort(elems.begin(), elems.end());
    return elems;
}

bool is_subgroup(const Group& g, const Subgroup& s)
{
    if (s.empty() || !std::binary_search(s.begin(), s.end(), g.identity()))
        return false;
    for (int a : s)
        for (int b : s)
            if (!std::binary_search(s.begin(), s.end(), g.mul(a, g.inv(b))))
                return false;
    return true;
}

std::vector<Subgroup> all_subgroups(const Group& g)
{
    std::set<Subgroup> seen;
    std::vector<Subgroup> queue{Subgroup{g.identity()}};
    seen.insert(queue.front());
    for (std::size_t k = 0; k < queue.size(); ++k) {
        Subgroup s = queue[k];
        for (int a = 0; a < g.order(); ++a) {
            if (std::binary_search(s.begin(), s.end(), a))
                continue;
            auto gens = s;
            gens.push_back(a);
            auto t = generated_subgroup(g, gens);
            if (seen.insert(t).second)
                queue.push_back(std::move(t));
        }
    }
    std::vector<Subgroup> out(seen.begin(), seen.end());
    std::stable_sort(out.begin(), out.end(),
                     [](const Subgroup& a, const Subgroup& b) { return a.size() < b.size(); });
    return out;
}

Subgroup conjugate_subgroup(const Group& g, const Subgroup& s, int by)
{
    Subgroup c;
    c.reserve(s.size());
    for (int x : s)
        c.push_back(g.conj(by, x));
    std::sort(c.begin(), c.end());
    return c;
}

Subgroup canonical_conjugate(const Group& g, const Subgroup& s, const std::vector<int>& acting)
{
    Subgroup best = s;
    auto consider = [&](int by) {
        auto c = conjugate_subgroup(g, s, by);
        if (c < best)
            best = std::move(c);
    };
    if (acting.empty())
        for (int a = 0; a < g.order(); ++a)
            consider(a);
    else
        for (int a : acting)
            consider(a);
    return best;
}

std::vector<Subgroup> subgroup_class_representatives(const Group& g, const Subgroup& within)
{
    auto h = subgroup_as_group(g, within);
    std::set<Subgroup> reps;
    for (const auto& local : all_subgroups(h)) {
        Subgroup global;
        for (int x : local)
            global.push_back(within[x]);
        std::sort(global.begin(), global.end());
        reps.insert(canonical_conjugate(g, global, within));
    }
    std::vector<Subgroup> out(reps.begin(), reps.end());
    std::stable_sort(out.begin(), out.end(),
                     [](const Subgroup& a, const Subgroup& b) { return a.size() < b.size(); });
    return out;
}

Group subgroup_as_group(const Group& g, const Subgroup& s)
{
    std::map<int, int> pos;
    for (std::size_t i = 0; i < s.size(); ++i)
        pos[s[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> t(s.size(), std::vector<int>(s.size()));
    for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = 0; b < s.size(); ++b) {
            auto it = pos.find(g.mul(s[a], s[b]));
            if (it == pos.end())
                throw std::invalid_argument("subgroup_as_group: not closed");
            t[a][b] = it->second;
        }
    return Group::from_table(t);
}

// ---- homomorphisms ---------------------------------------------------------

std::optional<Homomorphism> extend_homomorphism(const Group& from, const Group& to,
                                                const std::vector<int>& generator_images)
{
    const auto& gens = from.generators();
    if (gens.size() != generator_images.size())
        throw std::invalid_argument("extend_homomorphism: wrong number of generator images");
    Homomorphism h(from.order(), -1);
    h[from.identity()] = to.identity();
    std::vector<int> queue{from.identity()};
    for (std::size_t k = 0; k < queue.size(); ++k) {
        int x = queue[k];
        for (std::size_t i = 0; i < gens.size(); ++i) {
            int y = from.mul(x, gens[i]);
            int img = to.mul(h[x], generator_images[i]);
            if (h[y] < 0) {
                h[y] = img;
                queue.push_back(y);
            }
            else if (h[y] != img)
                return std::nullopt;
        }
    }
    return h;
}

namespace {
    template <typename Visit>
    void for_each_generator_assignment(const Group& from, const Group& to, bool same_order, Visit&& visit)
    {
        const auto& gens = from.generators();
        std::vector<std::vector<int>> candidates(gens.size());
        for (std::size_t i = 0; i < gens.size(); ++i)
            for (int a = 0; a < to.order(); ++a) {
                int og = from.element_order(gens[i]), oa = to.element_order(a);
                if (same_order ? og == oa : og % oa == 0)
                    candidates[i].push_back(a);
            }
        std::vector<int> images(gens.size());
        std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
            if (i == gens.size())
                return visit(images);
            for (int a : candidates[i]) {
                images[i] = a;
                if (!rec(i + 1))
                    return false;
            }
            return true;
        };
        rec(0);
    }
}

std::vector<Homomorphism> all_homomorphisms(const Group& from, const Group& to)
{
    std::vector<Homomorphism> out;
    for_each_generator_assignment(from, to, false, [&](const std::vector<int>& images) {
        if (auto h = extend_homomorphism(from, to, images))
            out.push_back(std::move(*h));
        return true;
    });
    return out;
}

bool is_surjective(const Homomorphism& h, int target_order)
{
    std::vector<char> hit(target_order, 0);
    for (int x : h)
        hit[x] = 1;
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

std::optional<Homomorphism> find_isomorphism(const Group& from, const Group& to)
{
    if (from.order() != to.order() || from.order_profile() != to.order_profile())
        return std::nullopt;
    std::optional<Homomorphism> found;
    for_each_generator_assignment(from, to, true, [&](const std::vector<int>& images) {
        auto h = extend_homomorphism(from, to, images);
        if (h && is_surjective(*h, to.order())) {
            found = std::move(h);
            return false;
        }
        return true;
    });
    return found;
}

std::vector<Homomorphism> all_isomorphisms(const Group& from, const Group& to)
{
    std::vector<Homomorphism> out;
    if (from.order() != to.order() || from.order_profile() != to.order_profile())
        return out;
    for_each_generator_assignment(from, to, true, [&](const std::vector<int>& images) {
        auto h = extend_homomorphism(from, to, images);
        if (h && is_surjective(*h, to.order()))
            out.push_back(std::move(*h));
        return true;
    });
    return out;
}

} // namespace bispan
