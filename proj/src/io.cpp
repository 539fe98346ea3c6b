#include "bispan/io.hpp"

#include "bispan/suites.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bispan {

namespace {
    [[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

    // nlohmann errors become input errors.
    template <typename F>
    auto guarded(const char* what, F&& f) -> decltype(f())
    {
        try {
            return f();
        } catch (const Json::exception& e) {
            fail(std::string(what) + ": " + e.what());
        }
    }

    void expect_kind(const Json& doc, const char* kind)
    {
        if (!doc.is_object() || !doc.contains("kind") || doc.at("kind") != kind)
            fail(std::string("expected a document of kind \"") + kind + "\"");
    }

    Json action_table(const GSet& x)
    {
        Json rows = Json::array();
        for (int g = 0; g < x.group().order(); ++g) {
            Json row = Json::array();
            for (int i = 0; i < x.size(); ++i)
                row.push_back(x.act(g, i));
            rows.push_back(row);
        }
        return Json{{"size", x.size()}, {"action", rows}};
    }

    GSet gset_from_table(const Group& g, const Json& j)
    {
        int size = j.at("size").get<int>();
        const Json& rows = j.at("action");
        if (!rows.is_array() || static_cast<int>(rows.size()) != g.order())
            fail("G-set: one action row per group element required");
        for (const auto& row : rows)
            if (!row.is_array() || static_cast<int>(row.size()) != size)
                fail("G-set: action row of the wrong length");
        return GSet::build(g, size, [&](int e, int x) { return rows[e][x].get<int>(); });
    }
} // namespace

// ---- groups and groupoids -------------------------------------------------------------

Group group_from_json(const Json& j)
{
    return guarded("group", [&] {
        if (j.is_string())
            return group_by_name(j.get<std::string>());
        if (j.is_object() && j.contains("table"))
            return Group::from_table(j.at("table").get<std::vector<std::vector<int>>>());
        if (j.is_object() && j.contains("perms"))
            return Group::from_permutations(j.at("perms").get<std::vector<std::vector<int>>>());
        fail("group: expected a name, {table: ...} or {perms: ...}");
    });
}

Json group_to_json(const Group& g) { return Json{{"table", g.table()}}; }

GroupoidPtr groupoid_from_json(const Json& j)
{
    return guarded("groupoid", [&]() -> GroupoidPtr {
        if (j.is_string())
            return resolve_groupoid(j.get<std::string>());
        if (!j.is_object())
            fail("groupoid: expected an object or a name");
        if (j.contains("group"))
            return from_group(group_from_json(j.at("group")));
        auto objects = j.at("objects").get<std::vector<int>>();
        int n = static_cast<int>(objects.size());
        for (int i = 0; i < n; ++i)
            if (objects[i] != i)
                fail("groupoid: objects must be 0..n-1 in order");
        const Json& ms = j.at("morphisms");
        int m = static_cast<int>(ms.size());
        std::vector<Groupoid::Arrow> arrows(static_cast<std::size_t>(m), {-1, -1});
        std::vector<int> inverses(static_cast<std::size_t>(m), -1);
        std::vector<bool> seen(static_cast<std::size_t>(m), false);
        for (const auto& e : ms) {
            int id = e.at("id").get<int>();
            if (id < 0 || id >= m || seen[id])
                fail("groupoid: morphism ids must be 0..m-1 without repeats");
            seen[id] = true;
            arrows[id] = {e.at("src").get<int>(), e.at("tgt").get<int>()};
            inverses[id] = e.at("inv").get<int>();
            if (arrows[id].src < 0 || arrows[id].src >= n || arrows[id].tgt < 0 || arrows[id].tgt >= n)
                fail("groupoid: morphism endpoint out of range");
            if (inverses[id] < 0 || inverses[id] >= m)
                fail("groupoid: inverse out of range");
        }
        auto identities = j.at("identities").get<std::vector<int>>();
        if (static_cast<int>(identities.size()) != n)
            fail("groupoid: one identity per object required");
        for (int id : identities)
            if (id < 0 || id >= m)
                fail("groupoid: identity out of range");
        auto compose = j.at("compose").get<std::vector<std::array<int, 3>>>();
        return make_groupoid(Groupoid::from_tables(n, std::move(arrows), std::move(identities), std::move(inverses), compose));
    });
}

Json groupoid_to_json(const Groupoid& g)
{
    Json objects = Json::array(), morphisms = Json::array(), identities = Json::array(), compose = Json::array();
    for (int o = 0; o < g.object_count(); ++o) {
        objects.push_back(o);
        identities.push_back(g.identity(o));
    }
    for (int f = 0; f < g.morphism_count(); ++f) {
        morphisms.push_back(Json{{"id", f}, {"src", g.src(f)}, {"tgt", g.tgt(f)}, {"inv", g.inverse(f)}});
        for (int h : g.out(g.tgt(f)))
            compose.push_back(Json::array({h, f, g.compose(h, f)}));
    }
    return Json{{"objects", objects}, {"morphisms", morphisms}, {"identities", identities}, {"compose", compose}};
}

GroupoidScope::GroupoidScope(const Json& document)
{
    guarded("groupoids", [&] {
        if (!document.contains("groupoids"))
            return 0;
        for (const auto& [name, def] : document.at("groupoids").items())
            named_[name] = groupoid_from_json(def);
        return 0;
    });
}

GroupoidPtr GroupoidScope::resolve(const Json& ref) const
{
    if (ref.is_string()) {
        auto it = named_.find(ref.get<std::string>());
        if (it != named_.end())
            return it->second;
    }
    return groupoid_from_json(ref);
}

// ---- functors, spans, bisets ---------------------------------------------------------------

Functor functor_from_json(const Json& j, const GroupoidScope& scope)
{
    return guarded("functor", [&] {
        Functor f{scope.resolve(j.at("source")), scope.resolve(j.at("target")),
                  j.at("objects").get<std::vector<int>>(), j.at("morphisms").get<std::vector<int>>()};
        f.validate();
        return f;
    });
}

Json functor_body(const Functor& f) { return Json{{"objects", f.on_objects}, {"morphisms", f.on_morphisms}}; }

Json functor_document(const Functor& f)
{
    Json doc = functor_body(f);
    doc["kind"] = "functor";
    doc["groupoids"] = Json{{"source", groupoid_to_json(*f.source)}, {"target", groupoid_to_json(*f.target)}};
    doc["source"] = "source";
    doc["target"] = "target";
    return doc;
}

Functor load_functor(const Json& doc)
{
    expect_kind(doc, "functor");
    return functor_from_json(doc, GroupoidScope(doc));
}

Json span_document(const Span& s)
{
    return Json{{"kind", "span"},
                {"groupoids",
                 {{"source", groupoid_to_json(*s.source())},
                  {"target", groupoid_to_json(*s.target())},
                  {"apex", groupoid_to_json(*s.apex)}}},
                {"source", "source"},
                {"target", "target"},
                {"apex", "apex"},
                {"left", functor_body(s.left)},
                {"right", functor_body(s.right)}};
}

Span load_span(const Json& doc)
{
    expect_kind(doc, "span");
    GroupoidScope scope(doc);
    return guarded("span", [&] {
        auto apex = scope.resolve(doc.at("apex"));
        auto source = scope.resolve(doc.at("source"));
        auto target = scope.resolve(doc.at("target"));
        const Json& l = doc.at("left");
        const Json& r = doc.at("right");
        Span s{apex,
               Functor{apex, source, l.at("objects").get<std::vector<int>>(), l.at("morphisms").get<std::vector<int>>()},
               Functor{apex, target, r.at("objects").get<std::vector<int>>(), r.at("morphisms").get<std::vector<int>>()}};
        s.left.validate();
        s.right.validate();
        s.validate();
        return s;
    });
}

Json biset_document(const Biset& u)
{
    const Groupoid& H = *u.source();
    const Groupoid& G = *u.target();
    Json sizes = Json::array(), tact = Json::array(), sact = Json::array();
    for (int h = 0; h < H.object_count(); ++h) {
        Json row = Json::array();
        for (int g = 0; g < G.object_count(); ++g)
            row.push_back(u.size(h, g));
        sizes.push_back(row);
    }
    for (int a = 0; a < G.morphism_count(); ++a) {
        Json per = Json::array();
        for (int h = 0; h < H.object_count(); ++h) {
            Json img = Json::array();
            for (int x = 0; x < u.size(h, G.src(a)); ++x)
                img.push_back(u.act_target(a, h, x));
            per.push_back(img);
        }
        tact.push_back(per);
    }
    for (int b = 0; b < H.morphism_count(); ++b) {
        Json per = Json::array();
        for (int g = 0; g < G.object_count(); ++g) {
            Json img = Json::array();
            for (int x = 0; x < u.size(H.tgt(b), g); ++x)
                img.push_back(u.act_source(b, g, x));
            per.push_back(img);
        }
        sact.push_back(per);
    }
    return Json{{"kind", "biset"},
                {"groupoids", {{"source", groupoid_to_json(H)}, {"target", groupoid_to_json(G)}}},
                {"source", "source"},
                {"target", "target"},
                {"sizes", sizes},
                {"target_action", tact},
                {"source_action", sact}};
}

BisetPtr load_biset(const Json& doc)
{
    expect_kind(doc, "biset");
    GroupoidScope scope(doc);
    return guarded("biset", [&] {
        auto source = scope.resolve(doc.at("source"));
        auto target = scope.resolve(doc.at("target"));
        int nh = source->object_count(), ng = target->object_count();
        const Json& sz = doc.at("sizes");
        if (!sz.is_array() || static_cast<int>(sz.size()) != nh)
            fail("biset: sizes need one row per source object");
        std::vector<int> sizes;
        for (const auto& row : sz) {
            if (!row.is_array() || static_cast<int>(row.size()) != ng)
                fail("biset: sizes need one column per target object");
            for (const auto& v : row)
                sizes.push_back(v.get<int>());
        }
        const Json& tact = doc.at("target_action");
        const Json& sact = doc.at("source_action");
        Biset u = Biset::build(
            source, target, sizes,
            [&](int a, int h, int x) { return tact.at(a).at(h).at(x).get<int>(); },
            [&](int b, int g, int x) { return sact.at(b).at(g).at(x).get<int>(); });
        u.validate();
        return make_biset(std::move(u));
    });
}

Json groupoid_document(const Groupoid& g)
{
    Json doc = groupoid_to_json(g);
    doc["kind"] = "groupoid";
    return doc;
}

GroupoidPtr load_groupoid(const Json& doc)
{
    expect_kind(doc, "groupoid");
    return groupoid_from_json(doc);
}

// ---- G-sets ----------------------------------------------------------------------------------

Json gset_document(const GSet& x)
{
    Json doc = action_table(x);
    doc["kind"] = "gset";
    doc["group"] = group_to_json(x.group());
    return doc;
}

GSet load_gset(const Json& doc)
{
    expect_kind(doc, "gset");
    return guarded("G-set", [&] { return gset_from_table(group_from_json(doc.at("group")), doc); });
}

Json gspan_document(const GSpan& s)
{
    return Json{{"kind", "gspan"},          {"group", group_to_json(s.apex.group())},
                {"source", action_table(s.source)}, {"target", action_table(s.target)},
                {"apex", action_table(s.apex)},     {"left", s.left},
                {"right", s.right}};
}

GSpan load_gspan(const Json& doc)
{
    expect_kind(doc, "gspan");
    return guarded("G-span", [&] {
        Group g = group_from_json(doc.at("group"));
        GSpan s{gset_from_table(g, doc.at("source")), gset_from_table(g, doc.at("target")),
                gset_from_table(g, doc.at("apex")), doc.at("left").get<std::vector<int>>(),
                doc.at("right").get<std::vector<int>>()};
        s.validate();
        return s;
    });
}

Json matrix_document(const Matrix& m)
{
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c)
            row.push_back(m(r, c).get_str());
        rows.push_back(row);
    }
    return Json{{"kind", "matrix"}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

Matrix load_matrix(const Json& doc)
{
    expect_kind(doc, "matrix");
    return guarded("matrix", [&] {
        std::size_t rows = doc.at("rows").get<std::size_t>(), cols = doc.at("cols").get<std::size_t>();
        const Json& e = doc.at("entries");
        if (e.size() != rows)
            fail("matrix: wrong number of rows");
        Matrix m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r) {
            if (e[r].size() != cols)
                fail("matrix: wrong number of columns");
            for (std::size_t c = 0; c < cols; ++c) {
                Rational q;
                if (q.set_str(e[r][c].get<std::string>(), 10) != 0)
                    fail("matrix: bad rational entry");
                if (q.get_den() == 0)
                    fail("matrix: zero denominator");
                q.canonicalize();
                m(r, c) = q;
            }
        }
        return m;
    });
}

// ---- files -------------------------------------------------------------------------------------

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        fail("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        fail(path + ": " + e.what());
    }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

} // namespace bispan
