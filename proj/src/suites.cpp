#include "bispan/suites.hpp"

#include "bispan/gset.hpp"
#include "bispan/linear.hpp"
#include "bispan/parallel.hpp"
#include "bispan/realization.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bispan {

namespace {
    [[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

    constexpr std::size_t max_failures = 20;

    std::string join(const std::vector<std::string>& v, const char* sep = ",")
    {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i)
            out += (i ? sep : "") + v[i];
        return out;
    }

    std::vector<PoolEntry> entries(const std::vector<std::string>& names)
    {
        if (names.empty())
            fail("empty pool or window");
        std::vector<PoolEntry> out;
        for (const auto& n : names)
            out.push_back({canonical_groupoid_name(n), resolve_groupoid(n)});
        return out;
    }

    std::vector<std::string> names_of(const std::vector<PoolEntry>& entries)
    {
        std::vector<std::string> out;
        for (const auto& e : entries)
            out.push_back(e.name);
        return out;
    }

    // Runs `check` on every case in parallel; failures are recorded in case order.
    void run_cases(SuiteReport& r, int n, int jobs, const std::function<std::string(int)>& check,
                   const std::function<std::string(int)>& label)
    {
        std::vector<std::string> errors(static_cast<std::size_t>(n));
        parallel_for(n, jobs, [&](int i) {
            try {
                errors[i] = check(i);
            } catch (const std::exception& e) {
                errors[i] = std::string("exception: ") + e.what();
            }
        });
        for (int i = 0; i < n; ++i)
            r.record(errors[i].empty(), errors[i].empty() ? "" : label(i) + ": " + errors[i]);
    }

    std::vector<Group> suite_groups(const SuiteConfig& c, const std::vector<std::string>& fallback,
                                    std::vector<std::string>* names)
    {
        *names = c.groups.empty() ? fallback : c.groups;
        std::vector<Group> out;
        for (const auto& n : *names)
            out.push_back(group_by_name(n));
        return out;
    }

    // ---- realization suites ----------------------------------------------------------------

    struct FunctorCase
    {
        std::string label;
        Functor u;
    };

    std::vector<FunctorCase> pool_functors(const std::vector<PoolEntry>& pool)
    {
        std::vector<FunctorCase> out;
        for (const auto& s : pool)
            for (const auto& t : pool) {
                int k = 0;
                for (auto& u : enumerate_functors(s.groupoid, t.groupoid))
                    out.push_back({s.name + "->" + t.name + " #" + std::to_string(k++), std::move(u)});
            }
        return out;
    }

    SuiteReport zigzag(const SuiteConfig& c)
    {
        SuiteReport r;
        auto cases = pool_functors(entries(c.pool));
        run_cases(
            r, static_cast<int>(cases.size()), c.jobs, [&](int i) { return verify_zigzag(cases[i].u); },
            [&](int i) { return cases[i].label; });
        r.detail("functors", std::to_string(cases.size()));
        return r;
    }

    SuiteReport beck_chevalley(const SuiteConfig& c)
    {
        SuiteReport r;
        auto pool = entries(c.pool);
        struct Cospan
        {
            std::string label;
            const Functor* a;
            const Functor* b;
        };
        // functors into each pool groupoid, grouped by target
        std::vector<std::vector<std::pair<std::string, Functor>>> into(pool.size());
        for (std::size_t g = 0; g < pool.size(); ++g)
            for (const auto& s : pool) {
                int k = 0;
                for (auto& u : enumerate_functors(s.groupoid, pool[g].groupoid))
                    into[g].emplace_back(s.name + "->" + pool[g].name + " #" + std::to_string(k++), std::move(u));
            }
        std::vector<Cospan> cases;
        for (const auto& list : into)
            for (const auto& [la, a] : list)
                for (const auto& [lb, b] : list)
                    cases.push_back({la + " / " + lb, &a, &b});
        std::vector<char> pasted(cases.size(), 0);
        run_cases(
            r, static_cast<int>(cases.size()), c.jobs,
            [&](int i) -> std::string {
                bool paste = c.paste_every > 0 && i % c.paste_every == 0;
                pasted[i] = paste;
                MateResult m = beck_chevalley_mate(*cases[i].a, *cases[i].b, paste);
                if (!m.bijective)
                    return "mate is not bijective";
                if (paste && !m.matches_pasting)
                    return "closed form differs from the pasted composite";
                return "";
            },
            [&](int i) { return cases[i].label; });
        r.detail("cospans", std::to_string(cases.size()));
        r.detail("pasted", std::to_string(std::count(pasted.begin(), pasted.end(), 1)));
        return r;
    }

    SuiteReport mates(const SuiteConfig& c)
    {
        SuiteReport r;
        auto pool = entries(c.pool);
        std::vector<std::pair<std::string, NaturalIso>> cases;
        for (const auto& s : pool)
            for (const auto& t : pool) {
                auto fs = enumerate_functors(s.groupoid, t.groupoid);
                for (std::size_t i = 0; i < fs.size(); ++i)
                    for (std::size_t j = 0; j < fs.size(); ++j) {
                        int k = 0;
                        for (auto& a : enumerate_natural_isos(fs[i], fs[j]))
                            cases.emplace_back(s.name + "->" + t.name + " " + std::to_string(i) + "=>" +
                                                   std::to_string(j) + " #" + std::to_string(k++),
                                               std::move(a));
                    }
            }
        run_cases(
            r, static_cast<int>(cases.size()), c.jobs,
            [&](int i) { return verify_mate_compatibility(cases[i].second); }, [&](int i) { return cases[i].first; });
        for (const auto& e : pool) {
            std::string err = verify_counit_unitor(e.groupoid);
            r.record(err.empty(), "counit/unitor " + e.name + ": " + err);
        }
        r.detail("two-cells", std::to_string(cases.size()));
        return r;
    }

    SuiteReport pseudofunctor(const SuiteConfig& c)
    {
        SuiteReport r;
        auto pool = entries(c.pool);
        std::vector<GroupoidPtr> apexes;
        for (const auto& e : pool)
            apexes.push_back(e.groupoid);
        Rng rng(c.seed);
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        struct Case
        {
            std::string label;
            Span s1, s2;
            std::optional<Span> s3;
        };
        std::vector<Case> cases;
        for (int attempt = 0; static_cast<int>(cases.size()) < c.samples && attempt < 50 * c.samples; ++attempt) {
            std::size_t a = pick(rng), b = pick(rng), g = pick(rng), d = pick(rng);
            auto s1 = random_span(pool[g].groupoid, pool[d].groupoid, apexes, rng);
            auto s2 = random_span(pool[b].groupoid, pool[g].groupoid, apexes, rng);
            if (!s1 || !s2)
                continue;
            Case k{pool[b].name + "->" + pool[g].name + "->" + pool[d].name, *s1, *s2, std::nullopt};
            if (cases.size() % 4 == 0)
                k.s3 = random_span(pool[a].groupoid, pool[b].groupoid, apexes, rng);
            cases.push_back(std::move(k));
        }
        std::vector<char> assoc(cases.size(), 0);
        run_cases(
            r, static_cast<int>(cases.size()), c.jobs,
            [&](int i) -> std::string {
                const Case& k = cases[i];
                std::string err = verify_pseudofunctor(k.s1, k.s2);
                if (err.empty() && k.s3) {
                    assoc[i] = 1;
                    err = verify_associativity(k.s1, k.s2, *k.s3);
                }
                return err;
            },
            [&](int i) { return "pair " + std::to_string(i) + " " + cases[i].label; });
        r.detail("pairs", std::to_string(cases.size()));
        r.detail("associativity triples", std::to_string(std::count(assoc.begin(), assoc.end(), 1)));
        return r;
    }

    SuiteReport roundtrip(const SuiteConfig& c)
    {
        SuiteReport r;
        auto pool = entries(c.pool);
        Rng rng(c.seed);
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        std::vector<std::pair<std::string, BisetPtr>> cases;
        for (int i = 0; i < c.roundtrip_samples; ++i) {
            std::size_t h = pick(rng), g = pick(rng);
            cases.emplace_back(pool[h].name + "->" + pool[g].name,
                               random_biset(pool[h].groupoid, pool[g].groupoid, rng));
        }
        run_cases(
            r, static_cast<int>(cases.size()), c.jobs,
            [&](int i) -> std::string {
                SpanFromBiset s = span_from_biset(cases[i].second);
                if (!s.bijective)
                    return "evaluation R(S(U)) -> U is not bijective";
                if (!bisets_isomorphic(realize_span(s.span)->result(), cases[i].second))
                    return "R(S(U)) is not isomorphic to U";
                return "";
            },
            [&](int i) { return "biset " + std::to_string(i) + " " + cases[i].first; });
        r.detail("bisets", std::to_string(cases.size()));
        return r;
    }

    SuiteReport coend_calculus(const SuiteConfig& c)
    {
        SuiteReport r;
        std::vector<GroupoidPtr> pool;
        for (const auto& e : entries(c.pool))
            pool.push_back(e.groupoid);
        CalculusReport cr = verify_coend_calculus(pool, c.samples, static_cast<unsigned>(c.seed));
        r.cases = cr.fubini_cases + cr.co_yoneda_cases;
        r.passed = cr.fubini_passed + cr.co_yoneda_passed;
        for (const auto& f : cr.failures)
            if (r.failures.size() < max_failures)
                r.failures.push_back(f);
        if (r.passed != r.cases && r.failures.empty())
            r.failures.push_back("cases failed without a diagnostic");
        r.detail("fubini", std::to_string(cr.fubini_passed) + "/" + std::to_string(cr.fubini_cases));
        r.detail("co-yoneda", std::to_string(cr.co_yoneda_passed) + "/" + std::to_string(cr.co_yoneda_cases));
        return r;
    }

    // ---- linear suites -----------------------------------------------------------------------

    // Subgroups of a group by closing every subset, up to conjugacy by explicit orbits.
    int brute_subgroup_classes(const Group& g)
    {
        int n = g.order();
        if (n > 20)
            fail("brute_subgroup_classes: group too large");
        std::set<std::vector<int>> subgroups;
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            bool closed = true;
            for (int a = 0; a < n && closed; ++a)
                for (int b = 0; b < n && closed; ++b)
                    if ((mask >> a & 1u) && (mask >> b & 1u))
                        closed = mask >> g.mul(a, b) & 1u;
            if (!closed)
                continue;
            std::vector<int> s;
            for (int x = 0; x < n; ++x)
                if (mask >> x & 1u)
                    s.push_back(x);
            subgroups.insert(s);
        }
        std::set<std::set<std::vector<int>>> classes;
        for (const auto& s : subgroups) {
            std::set<std::vector<int>> cls;
            for (int x = 0; x < n; ++x) {
                std::vector<int> t;
                for (int e : s)
                    t.push_back(g.mul(g.mul(x, e), g.inv(x)));
                std::sort(t.begin(), t.end());
                cls.insert(t);
            }
            classes.insert(cls);
        }
        return static_cast<int>(classes.size());
    }

    SuiteReport hom_ranks(const SuiteConfig&)
    {
        SuiteReport r;
        struct Case
        {
            const char* h;
            const char* g;
            const char* product; // Aut(g0) x Aut(h0)
        };
        for (Case k : {Case{"1", "1", "1"}, Case{"1", "BC2", "C2"}, Case{"BC2", "BC2", "V4"}}) {
            std::size_t got = biset_hom_basis(groupoid_by_name(k.h), groupoid_by_name(k.g)).size();
            int expected = brute_subgroup_classes(group_by_name(k.product));
            std::string label = std::string("biset(") + k.h + "," + k.g + ")";
            r.record(got == static_cast<std::size_t>(expected),
                     label + ": rank " + std::to_string(got) + ", expected " + std::to_string(expected));
            r.detail(label, std::to_string(got));
        }
        return r;
    }

    void absorb(SuiteReport& r, const CheckReport& c)
    {
        r.cases += c.cases;
        r.passed += c.passed;
        for (const auto& f : c.failures)
            if (r.failures.size() < max_failures)
                r.failures.push_back(f);
        if (c.passed != c.cases && c.failures.empty())
            r.failures.push_back("cases failed without a diagnostic");
    }

    SuiteReport semiadditive(const SuiteConfig& c)
    {
        SuiteReport r;
        auto window = entries(c.window);
        absorb(r, verify_semiadditive(window));
        r.detail("window", join(names_of(window)));
        return r;
    }

    SuiteReport tensor(const SuiteConfig& c)
    {
        SuiteReport r;
        auto window = entries(c.window);
        absorb(r, verify_tensor_functor(window, c.apex_bound, c.samples, c.seed));
        r.detail("window", join(names_of(window)));
        r.detail("apex bound", std::to_string(c.apex_bound));
        return r;
    }

    std::string invariants(const std::vector<Integer>& v)
    {
        std::string out = "[";
        for (std::size_t i = 0; i < v.size(); ++i)
            out += (i ? "," : "") + v[i].get_str();
        return out + "]";
    }

    SuiteReport deflative_kernel(const SuiteConfig& c)
    {
        SuiteReport r;
        auto window = entries(c.window);
        DeflativeReport d = deflative_kernel_check(window, c.apex_bound, c.scalars, c.jobs);
        r.detail("window", join(d.window));
        r.detail("apex bound", std::to_string(d.apex_bound));
        r.detail("generators", std::to_string(d.elements.size()));
        for (const auto& h : d.homs) {
            std::string label = "hom(" + d.window[h.source] + "," + d.window[h.target] + ")";
            std::ostringstream os;
            os << "spans " << h.span_rank << ", bisets " << h.biset_rank << ", rank " << h.matrix_rank << ", kernel "
               << h.kernel_rank << ", ideal " << h.ideal_rank << (h.full ? ", full" : ", not full");
            if (c.scalars == Scalars::integer)
                os << ", invariants " << invariants(h.invariant_factors);
            r.detail(label, os.str());
            r.record(h.ideal_in_kernel, label + ": ideal not inside the kernel");
            r.record(h.kernel_in_ideal, label + ": kernel not inside the ideal");
        }
        for (const auto& note : d.notes)
            r.detail("note", note);
        return r;
    }

    // ---- G-set suites ----------------------------------------------------------------------------

    SuiteReport yoshida(const SuiteConfig& c)
    {
        SuiteReport r;
        std::vector<std::string> names;
        std::vector<std::string> fallback;
        for (const auto& e : small_group_catalog(12))
            fallback.push_back(e.name);
        auto groups = suite_groups(c, fallback, &names);
        struct Case
        {
            std::size_t group;
            Subgroup h, k;
        };
        std::vector<Case> cases;
        for (std::size_t gi = 0; gi < groups.size(); ++gi) {
            auto subs = all_subgroups(groups[gi]);
            for (const auto& h : subs)
                for (const auto& k : subs)
                    cases.push_back({gi, h, k});
            r.detail(names[gi], std::to_string(subs.size()) + " subgroups, " +
                                    std::to_string(subs.size() * subs.size()) + " pairs");
        }
        auto show = [](const Subgroup& s) {
            std::string out = "{";
            for (std::size_t i = 0; i < s.size(); ++i)
                out += (i ? "," : "") + std::to_string(s[i]);
            return out + "}";
        };
        run_cases(
            r, static_cast<int>(cases.size()), c.jobs,
            [&](int i) -> std::string {
                const Case& k = cases[i];
                YoshidaRankReport y = yoshida_rank_check(groups[k.group], k.h, k.k, c.scalars);
                if (y.ok())
                    return "";
                std::ostringstream os;
                os << "rank " << y.rank << ", double cosets " << y.double_cosets << ", hom dimension "
                   << y.hom_dimension << (y.equivariant ? "" : ", not equivariant");
                return os.str();
            },
            [&](int i) { return names[cases[i].group] + " H=" + show(cases[i].h) + " K=" + show(cases[i].k); });
        return r;
    }

    SuiteReport cohomological(const SuiteConfig& c)
    {
        SuiteReport r;
        std::vector<std::string> names;
        auto groups = suite_groups(c, {"C2", "C4", "V4", "S3"}, &names);
        for (std::size_t gi = 0; gi < groups.size(); ++gi) {
            CohomologicalReport k = cohomological_kernel_check(groups[gi], c.jobs);
            int vanish = 0;
            for (const auto& rel : k.relations)
                vanish += rel.vanishes;
            r.record(vanish == static_cast<int>(k.relations.size()),
                     names[gi] + ": a cohomological relation does not vanish");
            std::size_t kernel = 0, ideal = 0;
            for (const auto& h : k.homs) {
                kernel += h.kernel_rank;
                ideal += h.ideal_rank;
                std::string label = names[gi] + " hom(" + std::to_string(h.source) + "," + std::to_string(h.target) + ")";
                r.record(h.kernel_in_ideal && h.ideal_in_kernel, label + ": kernel differs from the ideal");
            }
            r.detail(names[gi], std::to_string(k.subgroups.size()) + " orbits, " + std::to_string(k.relations.size()) +
                                    " relations, kernel rank " + std::to_string(kernel) + ", ideal rank " +
                                    std::to_string(ideal));
        }
        return r;
    }

    SuiteReport fixed_point(const SuiteConfig& c)
    {
        SuiteReport r;
        std::vector<std::string> names;
        auto groups = suite_groups(c, {"C2", "C3", "C4", "V4", "S3", "D4"}, &names);
        for (std::size_t gi = 0; gi < groups.size(); ++gi) {
            FixedPointReport f = fixed_point_functor(groups[gi]);
            for (const auto& v : f.values)
                r.record(v.agree && v.rank_fixed == 1 && v.rank_hom == 1,
                         names[gi] + ": FP(H) for |H| = " + std::to_string(v.h.size()) + " has rank " +
                             std::to_string(v.rank_fixed) + "/" + std::to_string(v.rank_hom));
            int ind = 0;
            for (const auto& m : f.maps) {
                Rational expected = m.kind == "ind" ? Rational(m.index) : Rational(1);
                ind += m.kind == "ind";
                r.record(m.scalar && m.factor == expected,
                         names[gi] + ": " + m.kind + " " + std::to_string(m.from.size()) + "->" +
                             std::to_string(m.to.size()) + " acts by " + m.factor.get_str() + ", expected " +
                             expected.get_str());
            }
            r.detail(names[gi], std::to_string(f.values.size()) + " values, " + std::to_string(f.maps.size()) +
                                    " maps, " + std::to_string(ind) + " inductions");
        }
        return r;
    }

    using Runner = SuiteReport (*)(const SuiteConfig&);
    const std::map<std::string, Runner>& runners()
    {
        static const std::map<std::string, Runner> m{
            {"zigzag", zigzag},
            {"beck-chevalley", beck_chevalley},
            {"pseudofunctor", pseudofunctor},
            {"roundtrip", roundtrip},
            {"mates", mates},
            {"coend-calculus", coend_calculus},
            {"hom-ranks", hom_ranks},
            {"semiadditive", semiadditive},
            {"tensor", tensor},
            {"deflative-kernel", deflative_kernel},
            {"yoshida", yoshida},
            {"cohomological-kernel", cohomological},
            {"fixed-point", fixed_point},
        };
        return m;
    }
} // namespace

void SuiteReport::record(bool ok, const std::string& what)
{
    ++cases;
    if (ok)
        ++passed;
    else if (failures.size() < max_failures)
        failures.push_back(what);
    else if (failures.size() == max_failures)
        failures.push_back("further failures omitted");
}

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{
        "zigzag",       "beck-chevalley", "pseudofunctor",    "roundtrip", "mates",
        "coend-calculus", "hom-ranks",    "semiadditive",     "tensor",    "deflative-kernel",
        "yoshida",      "cohomological-kernel", "fixed-point",
    };
    return names;
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& config)
{
    auto it = runners().find(name);
    if (it == runners().end())
        fail("unknown suite: " + name);
    if (config.jobs < 1)
        fail("jobs must be positive");
    if (config.samples < 0 || config.roundtrip_samples < 0 || config.paste_every < 0)
        fail("negative sample counts");
    SuiteReport r = it->second(config);
    r.suite = name;
    return r;
}

std::string canonical_groupoid_name(const std::string& name)
{
    std::string out;
    std::size_t start = 0;
    while (true) {
        std::size_t plus = name.find('+', start);
        std::string part = name.substr(start, plus == std::string::npos ? std::string::npos : plus - start);
        part.erase(std::remove(part.begin(), part.end(), ' '), part.end());
        if (part.empty())
            fail("bad groupoid name: " + name);
        if (part != "0" && part != "1" && part[0] != 'B')
            part = "B" + part;
        out += (out.empty() ? "" : "+") + part;
        if (plus == std::string::npos)
            break;
        start = plus + 1;
    }
    return out;
}

GroupoidPtr resolve_groupoid(const std::string& name) { return groupoid_by_name(canonical_groupoid_name(name)); }

} // namespace bispan
