#include "bispan/pool.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace bispan {

namespace {

GroupoidPtr single(const std::string& s)
{
    if (s == "0")
        return empty_groupoid();
    if (s == "1")
        return trivial_groupoid();
    if (s.size() > 1 && s[0] == 'B')
        return from_group(group_by_name(s.substr(1)));
    throw std::invalid_argument("unknown groupoid name: " + s);
}

} // namespace

GroupoidPtr groupoid_by_name(const std::string& name)
{
    GroupoidPtr result;
    std::size_t start = 0;
    while (true) {
        std::size_t plus = name.find('+', start);
        std::string part = name.substr(start, plus == std::string::npos ? std::string::npos : plus - start);
        part.erase(std::remove_if(part.begin(), part.end(), [](char ch) { return ch == ' '; }), part.end());
        if (part.empty())
            throw std::invalid_argument("bad groupoid name: " + name);
        auto g = single(part);
        result = result ? disjoint_union(result, g) : g;
        if (plus == std::string::npos)
            break;
        start = plus + 1;
    }
    return result;
}

std::vector<std::string> default_pool_names() { return {"1", "BC2", "BC3", "BC4", "BV4", "BS3", "1+1", "BC2+1"}; }

std::vector<PoolEntry> make_pool(const std::vector<std::string>& names)
{
    std::vector<PoolEntry> pool;
    for (const auto& n : names)
        pool.push_back({n, groupoid_by_name(n)});
    return pool;
}

Subgroup random_subgroup(const Group& g, Rng& rng)
{
    std::uniform_int_distribution<int> count(0, 2), elem(0, g.order() - 1);
    std::vector<int> gens;
    for (int k = count(rng); k > 0; --k)
        gens.push_back(elem(rng));
    return generated_subgroup(g, gens);
}

namespace {

// Subgroup of A x B (pairs encoded a * |B| + b) generated by up to two random
// pairs, without building the product table.
Subgroup random_pair_subgroup(const Group& a, const Group& b, Rng& rng)
{
    int nb = b.order();
    std::uniform_int_distribution<int> count(0, 2), ea(0, a.order() - 1), eb(0, nb - 1);
    std::vector<std::pair<int, int>> gens;
    for (int k = count(rng); k > 0; --k)
        gens.push_back({ea(rng), eb(rng)});
    std::set<int> seen{a.identity() * nb + b.identity()};
    std::vector<int> frontier(seen.begin(), seen.end());
    while (!frontier.empty()) {
        int x = frontier.back();
        frontier.pop_back();
        for (auto [ga, gb] : gens) {
            int y = a.mul(x / nb, ga) * nb + b.mul(x % nb, gb);
            if (seen.insert(y).second)
                frontier.push_back(y);
        }
    }
    return {seen.begin(), seen.end()};
}

} // namespace

BisetPtr random_biset(const GroupoidPtr& source, const GroupoidPtr& target, Rng& rng, int max_summands)
{
    BisetPtr result = empty_biset(source, target);
    if (source->component_count() == 0 || target->component_count() == 0)
        return result;
    std::uniform_int_distribution<int> summands(1, max_summands), hc(0, source->component_count() - 1),
        gc(0, target->component_count() - 1);
    for (int k = summands(rng); k > 0; --k) {
        int h = hc(rng), g = gc(rng);
        auto vg = target->vertex_group(target->basepoint(g));
        auto vh = source->vertex_group(source->basepoint(h));
        auto l = random_pair_subgroup(vg.group, vh.group, rng);
        result = sum_bisets(result, transitive_biset(source, target, h, g, l));
    }
    return result;
}

std::optional<Functor> random_functor(const GroupoidPtr& source, const GroupoidPtr& target, Rng& rng)
{
    auto all = enumerate_functors(source, target);
    if (all.empty())
        return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    return all[pick(rng)];
}

std::optional<Span> random_span(const GroupoidPtr& source, const GroupoidPtr& target,
                                const std::vector<GroupoidPtr>& apexes, Rng& rng)
{
    std::uniform_int_distribution<std::size_t> pick(0, apexes.size() - 1);
    for (int attempt = 0; attempt < 8; ++attempt) {
        const auto& apex = apexes[pick(rng)];
        auto b = random_functor(apex, source, rng);
        auto a = random_functor(apex, target, rng);
        if (a && b)
            return Span{apex, *b, *a};
    }
    return std::nullopt;
}

} // namespace bispan
