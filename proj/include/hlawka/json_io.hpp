#pragma once

#include <json.hpp>

#include "hlawka/boundary.hpp"
#include "hlawka/gram.hpp"
#include "hlawka/inequalities.hpp"
#include "hlawka/search.hpp"
#include "hlawka/suite.hpp"

// JSON wire formats. Field names are part of the external contract:
// GramParams uses nsq_x/nsq_y/nsq_z/p/q/r, VectorTriple uses x/y/z
// coordinate arrays, inequality ids are the lowercase snake-case strings
// of to_string(InequalityId).
namespace hlawka {

using nlohmann::json;

void to_json(json& j, const VectorTriple& t);
void from_json(const json& j, VectorTriple& t);

void to_json(json& j, const GramParams& g);
void from_json(const json& j, GramParams& g);

void to_json(json& j, const PsdReport& r);
void to_json(json& j, const SlackReport& r);
void to_json(json& j, const DependenceWitness& w);
void to_json(json& j, const SearchResult& r);
void to_json(json& j, const EqualityPoint& p);
void to_json(json& j, const SuiteReport& r);
void to_json(json& j, const IdentityReport& r);

}  // namespace hlawka
