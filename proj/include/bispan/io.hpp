#pragma once

#include "bispan/gset.hpp"
#include "bispan/linalg.hpp"
#include "bispan/span.hpp"

#include "json.hpp"

#include <map>
#include <string>

namespace bispan {

using Json = nlohmann::json;

// Documents are JSON objects with a "kind" field. Groupoids are referenced by
// name: first in the document's "groupoids" map, then as built-in names
// ("1", "BC2", "BS3+1", ...). A groupoid is either
//   {objects: [0..n-1], morphisms: [{id, src, tgt, inv}], compose: [[g, f, gf]], identities: [...]}
// or a one-object groupoid {group: {table: [[...]]}} / {group: {perms: [[...]]}} / {group: "S3"}.
// Every loader validates what it builds and throws std::invalid_argument.

Group group_from_json(const Json& j);
Json group_to_json(const Group& g);

GroupoidPtr groupoid_from_json(const Json& j);
Json groupoid_to_json(const Groupoid& g);

// Name -> groupoid for a document; built-in names resolve lazily.
class GroupoidScope
{
  public:
    GroupoidScope() = default;
    explicit GroupoidScope(const Json& document);
    GroupoidPtr resolve(const Json& ref) const;

  private:
    std::map<std::string, GroupoidPtr> named_;
};

Functor functor_from_json(const Json& j, const GroupoidScope& scope);
Json functor_body(const Functor& f); // {objects, morphisms}

Json functor_document(const Functor& f);
Json span_document(const Span& s);
Json biset_document(const Biset& u);
Json groupoid_document(const Groupoid& g);
Json gset_document(const GSet& x);
Json gspan_document(const GSpan& s);
Json matrix_document(const Matrix& m);

Functor load_functor(const Json& doc);
Span load_span(const Json& doc);
BisetPtr load_biset(const Json& doc);
GroupoidPtr load_groupoid(const Json& doc);
GSet load_gset(const Json& doc);
GSpan load_gspan(const Json& doc);
Matrix load_matrix(const Json& doc);

Json read_json_file(const std::string& path);
// Pretty-printed with sorted keys and a trailing newline.
std::string dump(const Json& j);

} // namespace bispan
