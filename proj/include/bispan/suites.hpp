#pragma once

#include "bispan/coend.hpp"
#include "bispan/pool.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace bispan {

struct SuiteConfig
{
    std::vector<std::string> pool = default_pool_names();
    std::vector<std::string> window = {"1", "BC2"};
    int apex_bound = 2;
    Scalars scalars = Scalars::rational;
    std::uint64_t seed = 1;
    int jobs = 1;
    std::vector<std::string> groups; // group suites; empty = suite default
    int samples = 200;               // seeded cases (pseudofunctor, coend-calculus, tensor)
    int roundtrip_samples = 100;
    int paste_every = 1; // beck-chevalley: pasted cross-check on every n-th cospan, 0 = never
};

struct SuiteReport
{
    std::string suite;
    int cases = 0;
    int passed = 0;
    std::vector<std::string> failures;
    std::vector<std::pair<std::string, std::string>> details;

    bool ok() const { return failures.empty() && passed == cases && cases > 0; }
    void record(bool ok, const std::string& what);
    void detail(std::string key, std::string value) { details.emplace_back(std::move(key), std::move(value)); }
};

// zigzag, beck-chevalley, pseudofunctor, roundtrip, mates, coend-calculus,
// hom-ranks, semiadditive, tensor, deflative-kernel, yoshida,
// cohomological-kernel, fixed-point
const std::vector<std::string>& suite_names();

// Deterministic for a fixed config, whatever the number of jobs.
// Throws std::invalid_argument on an unknown suite or a bad config.
SuiteReport run_suite(const std::string& name, const SuiteConfig& config);

// Pool names, also accepting bare group names: "C2" -> "BC2".
GroupoidPtr resolve_groupoid(const std::string& name);
std::string canonical_groupoid_name(const std::string& name);

} // namespace bispan
