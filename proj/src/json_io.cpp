#include "hlawka/json_io.hpp"

namespace hlawka {

void to_json(json& j, const VectorTriple& t) {
  j = json{{"x", t.x}, {"y", t.y}, {"z", t.z}};
}

void from_json(const json& j, VectorTriple& t) {
  j.at("x").get_to(t.x);
  j.at("y").get_to(t.y);
  j.at("z").get_to(t.z);
  t.validate();
}

void to_json(json& j, const GramParams& g) {
  j = json{{"nsq_x", g.nsq_x}, {"nsq_y", g.nsq_y}, {"nsq_z", g.nsq_z},
           {"p", g.p},         {"q", g.q},         {"r", g.r}};
}

void from_json(const json& j, GramParams& g) {
  j.at("nsq_x").get_to(g.nsq_x);
  j.at("nsq_y").get_to(g.nsq_y);
  j.at("nsq_z").get_to(g.nsq_z);
  j.at("p").get_to(g.p);
  j.at("q").get_to(g.q);
  j.at("r").get_to(g.r);
}

void to_json(json& j, const PsdReport& r) {
  j = json{{"minors_2x2", r.minors_2x2},
           {"det", r.det},
           {"is_psd", r.is_psd},
           {"rank_estimate", r.rank_estimate}};
}

void to_json(json& j, const SlackReport& r) {
  j = json{{"inequality_id", to_string(r.inequality_id)},
           {"lhs", r.lhs},
           {"rhs", r.rhs},
           {"slack", r.slack},
           {"is_equality", r.is_equality}};
}

void to_json(json& j, const DependenceWitness& w) {
  j = json{{"case", to_string(w.dep.tag)},
           {"lambda", w.dep.lambda},
           {"mu", w.dep.mu},
           {"dependence_residual", w.dependence_residual},
           {"condition_residual", w.condition_residual}};
}

void to_json(json& j, const SearchResult& r) {
  j = json{{"min_value", r.min_value},
           {"argmin_factor", r.argmin_factor.m},
           {"argmin_gram", r.argmin_gram},
           {"det_at_argmin", r.det_at_argmin},
           {"iterations", r.iterations},
           {"converged", r.converged}};
}

void to_json(json& j, const EqualityPoint& p) {
  j = json{{"gram", p.gram},
           {"triple", p.triple},
           {"slack", p.slack},
           {"witnesses", p.witnesses}};
}

void to_json(json& j, const SuiteReport& r) {
  json per = json::object();
  for (const auto& [id, st] : r.per_inequality) {
    json entry = {{"count", st.count},
                  {"equality_count", st.equality_count}};
    if (st.count > 0) {
      entry["min_slack"] = st.min_slack;
      json worst = {{"index", st.worst_input.index},
                    {"strategy", st.worst_input.strategy}};
      if (st.worst_input.is_gram)
        worst["gram"] = st.worst_input.gram;
      else
        worst["triple"] = st.worst_input.triple;
      entry["worst_input"] = std::move(worst);
    } else {
      entry["min_slack"] = nullptr;
    }
    per[to_string(id)] = std::move(entry);
  }
  j = json{{"seed", r.seed},
           {"trials", r.trials},
           {"elapsed_seconds", r.elapsed_seconds},
           {"verdict", r.pass ? "pass" : "fail"},
           {"inequalities", std::move(per)}};
}

void to_json(json& j, const IdentityReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"name", e.name}, {"max_residual", e.max_residual}});
  j = json{{"count", r.count},
           {"seed", r.seed},
           {"elapsed_seconds", r.elapsed_seconds},
           {"verdict", r.pass ? "pass" : "fail"},
           {"identities", std::move(entries)}};
}

}  // namespace hlawka
