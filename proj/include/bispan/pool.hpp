#pragma once

#include "bispan/biset.hpp"
#include "bispan/span.hpp"

#include <random>
#include <string>
#include <vector>

namespace bispan {

struct PoolEntry
{
    std::string name;
    GroupoidPtr groupoid;
};

// Names: "0", "1", "B<group>" (e.g. "BC2", "BS3"), and sums joined with '+'
// such as "1+1" or "BC2+1". Throws std::invalid_argument.
GroupoidPtr groupoid_by_name(const std::string& name);

std::vector<std::string> default_pool_names();
std::vector<PoolEntry> make_pool(const std::vector<std::string>& names);

using Rng = std::mt19937_64;

// Subgroup generated by up to two random elements.
Subgroup random_subgroup(const Group& g, Rng& rng);
// A sum of 1..max_summands random transitive bisets.
BisetPtr random_biset(const GroupoidPtr& source, const GroupoidPtr& target, Rng& rng, int max_summands = 2);
// A uniformly chosen functor (empty optional if there is none).
std::optional<Functor> random_functor(const GroupoidPtr& source, const GroupoidPtr& target, Rng& rng);

// A span whose apex is drawn from `apexes` and whose legs are random functors.
// Gives up (empty optional) after a few apexes without functors into H and G.
std::optional<Span> random_span(const GroupoidPtr& source, const GroupoidPtr& target,
                                const std::vector<GroupoidPtr>& apexes, Rng& rng);

} // namespace bispan
