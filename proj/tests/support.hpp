#pragma once

#include <string>
#include <vector>

#include "gcr/groupmodel.hpp"
#include "gcr/scenario.hpp"

namespace gcr::test {

inline std::vector<rootdata::CartanType> types_of(const std::vector<std::string>& names) {
  std::vector<rootdata::CartanType> t;
  for (const auto& n : names) t.push_back(scenario::parse_type(n));
  return t;
}

inline model::ElementAction action(const std::vector<int>& perm, const std::vector<std::vector<int>>& diag) {
  model::ElementAction a;
  a.perm = perm;
  for (const auto& d : diag) a.diag.push_back({d});
  return a;
}

inline model::ElementAction identity_action(const std::vector<rootdata::CartanType>& types) {
  model::ElementAction a;
  for (std::size_t i = 0; i < types.size(); ++i) {
    a.perm.push_back(static_cast<int>(i));
    a.diag.push_back(rootdata::DiagramAutomorphism::identity(types[i].rank));
  }
  return a;
}

inline model::GroupShape shape(const std::vector<std::string>& type_names,
                               const std::vector<model::ComponentGroup::Generator>& gens, int p = 0,
                               int radical_rank = 0, const std::string& label = "G") {
  model::GroupShape g;
  g.label = label;
  g.characteristic = p;
  g.radical_rank = radical_rank;
  const auto types = types_of(type_names);
  for (std::size_t i = 0; i < types.size(); ++i) g.components.push_back({static_cast<int>(i), types[i], "adjoint"});
  g.component_group = gens.empty() ? model::ComponentGroup::trivial(types)
                                   : model::ComponentGroup::from_generators(types, gens);
  g.validate();
  return g;
}

/// Aut(D4) = D4 x| S3 generated by triality and a transposition.
inline model::GroupShape aut_d4(int p) {
  return shape({"D4"},
               {{"sigma", action({0}, {{2, 1, 3, 0}}), {}}, {"tau", action({0}, {{2, 1, 0, 3}}), {}}}, p);
}

inline model::AbstractSubgroup abstract(const model::GroupShape& g, const std::vector<std::string>& image_gens,
                                        model::Intersection x, const std::string& label = "H") {
  model::AbstractSubgroup a;
  a.label = label;
  std::vector<int> gens;
  for (const auto& n : image_gens) gens.push_back(g.component_group.index_of(n));
  a.image = g.component_group.closure(gens);
  a.intersection = std::move(x);
  return a;
}

inline std::string source_path(const std::string& rel) { return std::string(GCR_SOURCE_DIR) + "/" + rel; }

}  // namespace gcr::test
