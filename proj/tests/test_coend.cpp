#include "doctest.h"

#include "bispan/coend.hpp"
#include "bispan/pool.hpp"

#include <set>

using namespace bispan;

namespace {

// Number of conjugacy classes of a group, by brute force.
int conjugacy_classes(const Group& g)
{
    std::set<std::set<int>> classes;
    for (int x = 0; x < g.order(); ++x) {
        std::set<int> c;
        for (int y = 0; y < g.order(); ++y)
            c.insert(g.conj(y, x));
        classes.insert(c);
    }
    return static_cast<int>(classes.size());
}

int class_count_oracle(const Groupoid& g)
{
    int n = 0;
    for (int c = 0; c < g.component_count(); ++c)
        n += conjugacy_classes(g.vertex_group(g.basepoint(c)).group);
    return n;
}

} // namespace

TEST_CASE("coend of the identity bifunctor counts conjugacy classes")
{
    for (const char* name : {"1", "BC2", "BC4", "BV4", "BS3", "BD4", "BQ8", "1+1", "BC2+1", "BS3+BC3"}) {
        auto g = groupoid_by_name(name);
        auto id = identity_biset(g);
        auto r = set_coend(*id);
        CHECK(r.class_count == class_count_oracle(*g));
        auto lp = linearize(*id);
        lp.validate();
        auto lr = linear_coend(lp, Scalars::integer);
        CHECK(lr.rank == static_cast<std::size_t>(r.class_count));
        for (const auto& f : lr.invariant_factors)
            CHECK(f == 1);
    }
}

TEST_CASE("set and linear coends agree on random bisets")
{
    Rng rng(21);
    auto names = default_pool_names();
    std::uniform_int_distribution<std::size_t> pick(0, names.size() - 1);
    for (int i = 0; i < 40; ++i) {
        auto g = groupoid_by_name(names[pick(rng)]);
        auto h = random_biset(g, g, rng, 3);
        auto r = set_coend(*h);
        auto lr = linear_coend(linearize(*h));
        CHECK(lr.rank == static_cast<std::size_t>(r.class_count));
        CHECK(lr.projection.rows() == lr.rank);
    }
}

TEST_CASE("sign twist has torsion in the integral coend")
{
    auto c2 = groupoid_by_name("BC2");
    LinearCoendProblem p;
    p.index = c2;
    p.ranks = {1};
    int sigma = c2->identity(0) == 0 ? 1 : 0;
    p.left.assign(2, Matrix::identity(1));
    p.right.assign(2, Matrix::identity(1));
    p.left[sigma](0, 0) = -1;
    p.validate();
    auto r = linear_coend(p, Scalars::integer);
    CHECK(r.rank == 0);
    REQUIRE(r.invariant_factors.size() == 1);
    CHECK(r.invariant_factors[0] == 2);

    p.left[sigma](0, 0) = 2;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("Fubini and co-Yoneda on seeded instances")
{
    std::vector<GroupoidPtr> pool;
    for (const auto& e : make_pool(default_pool_names()))
        pool.push_back(e.groupoid);
    auto report = verify_coend_calculus(pool, 40, 2024);
    for (const auto& f : report.failures)
        MESSAGE(f);
    CHECK(report.fubini_cases == 40);
    CHECK(report.co_yoneda_cases == 40);
    CHECK(report.ok());
}
