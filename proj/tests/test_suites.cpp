#include "doctest.h"

#include "bispan/suites.hpp"

#include <algorithm>

using namespace bispan;

namespace {

SuiteConfig small()
{
    SuiteConfig c;
    c.pool = {"1", "BC2", "BS3", "1+1"};
    c.window = {"1", "C2"};
    c.apex_bound = 2;
    c.samples = 25;
    c.roundtrip_samples = 25;
    c.paste_every = 3;
    c.groups = {"C2", "S3"};
    return c;
}

std::string detail(const SuiteReport& r, const std::string& key)
{
    for (const auto& [k, v] : r.details)
        if (k == key)
            return v;
    return "";
}

} // namespace

TEST_CASE("every suite passes on a small configuration")
{
    SuiteConfig c = small();
    for (const auto& name : suite_names()) {
        SuiteReport r = run_suite(name, c);
        CHECK_MESSAGE(r.ok(), name);
        CHECK(r.suite == name);
        CHECK(r.cases > 0);
        for (const auto& f : r.failures)
            MESSAGE(name << ": " << f);
    }
}

TEST_CASE("suite reports do not depend on the number of jobs")
{
    SuiteConfig one = small(), many = small();
    many.jobs = 3;
    for (const char* name : {"zigzag", "beck-chevalley", "pseudofunctor", "roundtrip", "yoshida"}) {
        SuiteReport a = run_suite(name, one), b = run_suite(name, many);
        CHECK(a.cases == b.cases);
        CHECK(a.passed == b.passed);
        CHECK(a.details == b.details);
    }
}

TEST_CASE("suite details")
{
    SuiteConfig c = small();
    SuiteReport d = run_suite("deflative-kernel", c);
    CHECK(detail(d, "hom(1,1)").find("kernel 1, ideal 1") != std::string::npos);
    CHECK(detail(d, "window") == "1,BC2");

    SuiteReport h = run_suite("hom-ranks", c);
    CHECK(detail(h, "biset(1,1)") == "1");
    CHECK(detail(h, "biset(1,BC2)") == "2");
    CHECK(detail(h, "biset(BC2,BC2)") == "5");

    SuiteReport p = run_suite("pseudofunctor", c);
    CHECK(detail(p, "pairs") == "25");

    SuiteReport b = run_suite("beck-chevalley", c);
    int cospans = std::stoi(detail(b, "cospans"));
    CHECK(std::stoi(detail(b, "pasted")) == (cospans + 2) / 3);

    c.groups.clear();
    SuiteReport y = run_suite("yoshida", c);
    CHECK(y.cases == 1260);
}

TEST_CASE("bad configurations")
{
    SuiteConfig c = small();
    CHECK_THROWS_AS(run_suite("nosuch", c), std::invalid_argument);
    c.jobs = 0;
    CHECK_THROWS_AS(run_suite("zigzag", c), std::invalid_argument);
    c = small();
    c.window = {"C99"};
    CHECK_THROWS_AS(run_suite("semiadditive", c), std::invalid_argument);
    c = small();
    c.groups = {"nope"};
    CHECK_THROWS_AS(run_suite("fixed-point", c), std::invalid_argument);
}

TEST_CASE("report bookkeeping")
{
    SuiteReport r;
    CHECK_FALSE(r.ok()); // no cases
    r.record(true, "fine");
    CHECK(r.ok());
    for (int i = 0; i < 30; ++i)
        r.record(false, "bad " + std::to_string(i));
    CHECK_FALSE(r.ok());
    CHECK(r.cases == 31);
    CHECK(r.passed == 1);
    CHECK(r.failures.size() == 21);
    CHECK(r.failures.back() == "further failures omitted");
}
