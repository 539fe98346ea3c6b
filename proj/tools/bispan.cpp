#include "bispan/gset.hpp"
#include "bispan/io.hpp"
#include "bispan/linear.hpp"
#include "bispan/realization.hpp"
#include "bispan/suites.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace bispan;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

struct Options
{
    std::string config;
    std::string pool;
    std::string window;
    int apex_bound = 0;
    std::string scalars;
    long long seed = -1;
    std::string out;
    int jobs = 0;
    std::string groups;
    int samples = -1;
};

std::vector<std::string> split(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

std::string config_path(const Options& o)
{
    if (!o.config.empty())
        return o.config;
    if (const char* env = std::getenv("BISPAN_CONFIG"))
        return env;
#ifdef BISPAN_DEFAULT_CONFIG
    if (std::filesystem::exists(BISPAN_DEFAULT_CONFIG))
        return BISPAN_DEFAULT_CONFIG;
#endif
    return "";
}

Scalars parse_scalars(const std::string& s)
{
    if (s == "rational")
        return Scalars::rational;
    if (s == "integer")
        return Scalars::integer;
    throw std::invalid_argument("scalars must be rational or integer, not " + s);
}

// Config file first, then flags.
SuiteConfig load_config(const Options& o)
{
    SuiteConfig c;
    std::string path = config_path(o);
    if (!path.empty()) {
        Json j = read_json_file(path);
        try {
            if (j.contains("pool"))
                c.pool = j.at("pool").get<std::vector<std::string>>();
            if (j.contains("window"))
                c.window = j.at("window").get<std::vector<std::string>>();
            if (j.contains("apex_bound"))
                c.apex_bound = j.at("apex_bound").get<int>();
            if (j.contains("scalars"))
                c.scalars = parse_scalars(j.at("scalars").get<std::string>());
            if (j.contains("seed"))
                c.seed = j.at("seed").get<std::uint64_t>();
            if (j.contains("jobs"))
                c.jobs = j.at("jobs").get<int>();
            if (j.contains("groups"))
                c.groups = j.at("groups").get<std::vector<std::string>>();
            if (j.contains("samples"))
                c.samples = j.at("samples").get<int>();
            if (j.contains("roundtrip_samples"))
                c.roundtrip_samples = j.at("roundtrip_samples").get<int>();
            if (j.contains("paste_every"))
                c.paste_every = j.at("paste_every").get<int>();
        } catch (const Json::exception& e) {
            throw std::invalid_argument(path + ": " + e.what());
        }
    }
    if (!o.pool.empty() && o.pool != "default")
        c.pool = split(o.pool);
    if (!o.window.empty())
        c.window = split(o.window);
    if (o.apex_bound > 0)
        c.apex_bound = o.apex_bound;
    if (!o.scalars.empty())
        c.scalars = parse_scalars(o.scalars);
    if (o.seed >= 0)
        c.seed = static_cast<std::uint64_t>(o.seed);
    if (o.jobs > 0)
        c.jobs = o.jobs;
    if (!o.groups.empty())
        c.groups = split(o.groups);
    if (o.samples >= 0)
        c.samples = o.samples;
    return c;
}

// Writes to --out (then re-loads it through `reload`) or to stdout.
void emit(const Options& o, const Json& doc, const std::function<void(const Json&)>& reload)
{
    if (o.out.empty()) {
        std::cout << dump(doc);
        return;
    }
    {
        std::ofstream f(o.out);
        if (!f)
            throw std::invalid_argument("cannot write " + o.out);
        f << dump(doc);
    }
    reload(read_json_file(o.out));
}

int cmd_compute(const Options& o, const std::string& op, const std::vector<std::string>& files)
{
    auto need = [&](std::size_t n) {
        if (files.size() != n)
            throw std::invalid_argument(op + " takes " + std::to_string(n) + " file(s)");
    };
    auto file = [&](std::size_t i) { return read_json_file(files[i]); };
    auto span_reload = [](const Json& j) { load_span(j); };
    auto biset_reload = [](const Json& j) { load_biset(j); };

    if (op == "compose-spans") {
        need(2);
        emit(o, span_document(compose_spans(load_span(file(0)), load_span(file(1)))), span_reload);
    } else if (op == "tensor-spans") {
        need(2);
        emit(o, span_document(tensor_spans(load_span(file(0)), load_span(file(1)))), span_reload);
    } else if (op == "compose-bisets") {
        need(2);
        emit(o, biset_document(*compose_bisets(load_biset(file(0)), load_biset(file(1)))), biset_reload);
    } else if (op == "tensor-bisets") {
        need(2);
        emit(o, biset_document(*tensor_bisets(load_biset(file(0)), load_biset(file(1)))), biset_reload);
    } else if (op == "realize") {
        need(1);
        emit(o, biset_document(*realize_span(load_span(file(0)))->result()), biset_reload);
    } else if (op == "span-from-biset") {
        need(1);
        SpanFromBiset s = span_from_biset(load_biset(file(0)));
        emit(o, span_document(s.span), span_reload);
        std::cerr << "round trip: " << (s.bijective ? "bijective" : "NOT bijective") << "\n";
        return s.bijective ? exit_ok : exit_failed;
    } else if (op == "iso-comma") {
        need(2);
        IsoComma c = iso_comma(load_functor(file(0)), load_functor(file(1)));
        emit(o, span_document(Span{c.apex, c.p, c.q}), span_reload);
    } else if (op == "compose-gspans") {
        need(2);
        emit(o, gspan_document(gspan_compose(load_gspan(file(0)), load_gspan(file(1)))),
             [](const Json& j) { load_gspan(j); });
    } else if (op == "yoshida-matrix") {
        need(1);
        emit(o, matrix_document(yoshida_matrix(load_gspan(file(0)))), [](const Json& j) { load_matrix(j); });
    } else {
        throw std::invalid_argument("unknown compute operation: " + op);
    }
    return exit_ok;
}

Json report_json(const SuiteReport& r)
{
    Json details = Json::array();
    for (const auto& [k, v] : r.details)
        details.push_back(Json::array({k, v}));
    return Json{{"suite", r.suite},       {"ok", r.ok()},          {"cases", r.cases},
                {"passed", r.passed},     {"failures", r.failures}, {"details", details}};
}

int cmd_verify(const Options& o, std::vector<std::string> suites)
{
    SuiteConfig c = load_config(o);
    if (suites.size() == 1 && suites[0] == "all")
        suites = suite_names();
    for (const auto& s : suites)
        if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
            throw std::invalid_argument("unknown suite: " + s);
    bool all = true;
    Json reports = Json::array();
    for (const auto& s : suites) {
        SuiteReport r = run_suite(s, c);
        all = all && r.ok();
        std::cout << r.suite << ": " << (r.ok() ? "PASS" : "FAIL") << " " << r.passed << "/" << r.cases << "\n";
        for (const auto& [k, v] : r.details)
            std::cout << "  " << k << ": " << v << "\n";
        for (const auto& f : r.failures)
            std::cout << "  failure: " << f << "\n";
        reports.push_back(report_json(r));
    }
    if (!o.out.empty()) {
        std::ofstream f(o.out);
        if (!f)
            throw std::invalid_argument("cannot write " + o.out);
        f << dump(Json{{"ok", all}, {"suites", reports}});
    }
    return all ? exit_ok : exit_failed;
}

void describe_groupoid(const std::string& label, const Groupoid& g)
{
    std::cout << label << ": " << g.summary() << "\n";
    if (g.component_count() > 1 || g.object_count() > 1)
        for (int c = 0; c < g.component_count(); ++c)
            std::cout << "  component " << c << ": " << g.component_objects(c).size() << " objects, vertex group of order "
                      << g.vertex_group(g.basepoint(c)).group.order() << "\n";
}

void describe_file(const std::string& path)
{
    Json doc = read_json_file(path);
    std::string kind = doc.value("kind", "");
    if (kind == "groupoid") {
        describe_groupoid(path, *load_groupoid(doc));
    } else if (kind == "functor") {
        Functor f = load_functor(doc);
        std::cout << path << ": functor from " << f.source->summary() << " to " << f.target->summary() << "\n";
    } else if (kind == "span") {
        Span s = load_span(doc);
        std::cout << path << ": span\n  " << s.summary() << "\n  " << decompose_span(s).size()
                  << " connected components in the apex\n";
    } else if (kind == "biset") {
        BisetPtr u = load_biset(doc);
        int orbits = 0;
        biset_orbits(*u, &orbits);
        std::cout << path << ": biset from " << u->source()->summary() << " to " << u->target()->summary() << "\n  "
                  << u->total_size() << " elements, " << orbits << " orbits\n";
    } else if (kind == "gset") {
        GSet x = load_gset(doc);
        int orbits = 0;
        x.orbit_labels(&orbits);
        std::cout << path << ": G-set over a group of order " << x.group().order() << ", " << x.size()
                  << " elements, " << orbits << " orbits\n";
    } else if (kind == "gspan") {
        GSpan s = load_gspan(doc);
        std::cout << path << ": G-span " << s.source.size() << " <- " << s.apex.size() << " -> " << s.target.size()
                  << ", " << decompose_gspan(s).size() << " orbits in the apex\n";
    } else if (kind == "matrix") {
        Matrix m = load_matrix(doc);
        std::cout << path << ": " << m.rows() << "x" << m.cols() << " matrix of rank " << rank(m) << "\n";
    } else {
        throw std::invalid_argument(path + ": unknown document kind \"" + kind + "\"");
    }
}

int cmd_describe(const Options& o, const std::vector<std::string>& args)
{
    if (args.empty())
        throw std::invalid_argument("describe needs an argument");
    const std::string& what = args[0];
    auto need = [&](std::size_t n) {
        if (args.size() != n)
            throw std::invalid_argument("describe " + what + " takes " + std::to_string(n - 1) + " argument(s)");
    };
    if (what == "biset-basis") {
        need(3);
        BisetBasis b = biset_hom_basis(resolve_groupoid(args[1]), resolve_groupoid(args[2]));
        std::cout << "biset hom basis (" << canonical_groupoid_name(args[1]) << "," << canonical_groupoid_name(args[2])
                  << "): " << b.size() << " classes\n";
        for (std::size_t i = 0; i < b.size(); ++i)
            std::cout << "  " << b.label(static_cast<int>(i)) << "\n";
    } else if (what == "span-basis") {
        need(3);
        SuiteConfig c = load_config(o);
        SpanBasis b = span_hom_basis(resolve_groupoid(args[1]), resolve_groupoid(args[2]), c.apex_bound);
        std::cout << "span hom basis (" << canonical_groupoid_name(args[1]) << "," << canonical_groupoid_name(args[2])
                  << "), apex bound " << c.apex_bound << ": " << b.size() << " classes\n";
        for (std::size_t i = 0; i < b.size(); ++i)
            std::cout << "  " << b.label(static_cast<int>(i)) << "\n";
    } else if (what == "group") {
        need(2);
        Group g = group_by_name(args[1]);
        std::vector<int> all(static_cast<std::size_t>(g.order()));
        std::iota(all.begin(), all.end(), 0);
        std::cout << args[1] << ": order " << g.order() << (g.is_abelian() ? ", abelian" : ", non-abelian") << ", "
                  << all_subgroups(g).size() << " subgroups in " << subgroup_class_representatives(g, all).size()
                  << " conjugacy classes\n";
    } else if (std::filesystem::exists(what)) {
        need(1);
        describe_file(what);
    } else {
        need(1);
        describe_groupoid(canonical_groupoid_name(what), *resolve_groupoid(what));
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"bispan: spans, bisets and Mackey functors over finite groupoids"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--config", o.config, "config file (default: $BISPAN_CONFIG, then the built-in config)");
    app.add_option("--pool", o.pool, "pool: 'default' or comma-separated groupoid names");
    app.add_option("--window", o.window, "comma-separated window, e.g. 1,C2,C4");
    app.add_option("--apex-bound", o.apex_bound, "apex bound for truncated span categories (1..12)");
    app.add_option("--scalars", o.scalars, "rational or integer");
    app.add_option("--seed", o.seed, "seed for sampled cases");
    app.add_option("--out", o.out, "output file");
    app.add_option("--jobs", o.jobs, "worker threads");
    app.add_option("--group", o.groups, "comma-separated groups for the G-set suites");
    app.add_option("--samples", o.samples, "seeded cases per sampled suite");

    std::string op;
    std::vector<std::string> files, suites, things;
    auto* compute = app.add_subcommand("compute", "run a construction on input files");
    compute->add_option("op", op, "compose-spans, tensor-spans, compose-bisets, tensor-bisets, realize, "
                                  "span-from-biset, iso-comma, compose-gspans, yoshida-matrix")
        ->required();
    compute->add_option("files", files, "input files (outer first for compositions)");
    auto* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("suites", suites, "suite names or 'all'")->required();
    auto* describe = app.add_subcommand("describe", "summarize a groupoid, file or hom basis");
    describe->add_option("what", things, "groupoid name, file, 'group G', 'biset-basis H G' or 'span-basis H G'")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*compute)
            return cmd_compute(o, op, files);
        if (*verify)
            return cmd_verify(o, suites);
        return cmd_describe(o, things);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_failed;
    }
}
