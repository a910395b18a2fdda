#pragma once

// Random pairs for exercising the engine laws.

#include <numeric>
#include <random>

#include "gcr/engine.hpp"
#include "support.hpp"

namespace gcr::test {

struct FuzzCase {
  model::Pair pair;
  engine::EngineConfig config;
};

inline std::vector<int> random_tag(std::mt19937& rng) {
  std::vector<int> t{0, 1, 2};
  std::shuffle(t.begin(), t.end(), rng);
  return t;
}

inline model::GroupShape random_ambient(std::mt19937& rng, int p) {
  using Gen = model::ComponentGroup::Generator;
  const int kind = static_cast<int>(rng() % 3);
  std::vector<Gen> gens;
  std::vector<std::string> types;
  if (kind == 0) {
    types = {"D4"};
    const std::vector<std::vector<int>> diags{{2, 1, 3, 0}, {2, 1, 0, 3}, {0, 1, 3, 2}};
    const int k = 1 + static_cast<int>(rng() % 2);
    for (int j = 0; j < k; ++j) gens.push_back({"g" + std::to_string(j), action({0}, {diags[rng() % 3]}), {}});
    if (k == 2 && gens[0].action == gens[1].action) gens.pop_back();
    if (rng() % 4 == 0) gens.push_back({"z", action({0}, {{0, 1, 2, 3}}), {1, 0, 2}});
  } else {
    const std::string t = kind == 1 ? "A1" : "A2";
    const int n = 2 + static_cast<int>(rng() % 2);
    types.assign(n, t);
    const int k = 1 + static_cast<int>(rng() % 2);
    for (int j = 0; j < k; ++j) {
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<std::vector<int>> diag;
      for (int i = 0; i < n; ++i) diag.push_back(t == "A1" ? std::vector<int>{0} : (rng() % 2 ? std::vector<int>{1, 0} : std::vector<int>{0, 1}));
      gens.push_back({"g" + std::to_string(j), action(perm, diag), random_tag(rng)});
    }
    if (k == 2 && gens[0].tag == gens[1].tag) gens[1].tag = {1, 2, 0};
    for (auto& g : gens)
      if (g.tag == std::vector<int>{0, 1, 2} && g.action == identity_action(types_of(types))) g.tag = {1, 0, 2};
  }
  return shape(types, gens, p, rng() % 4 == 0 ? 1 : 0);
}

/// A2^3 permuted by S3: a centralizer shape of smaller dimension than D4.
inline model::ShapeFact a2_cubed_shape(int p) {
  model::ShapeFact s;
  s.shape = shape({"A2", "A2", "A2"},
                  {{"c", action({1, 2, 0}, {{0, 1}, {0, 1}, {0, 1}}), {}}, {"t", action({1, 0, 2}, {{0, 1}, {0, 1}, {0, 1}}), {}}},
                  p, 0, "M");
  s.image = s.shape.component_group.names();
  return s;
}

inline FuzzCase random_case(std::mt19937& rng) {
  static const int primes[] = {0, 2, 3, 5};
  const int p = primes[rng() % 4];
  FuzzCase fc;
  for (;;) {
    try {
      fc.pair.ambient = random_ambient(rng, p);
      break;
    } catch (const model::ModelError&) {
    }
  }
  const auto& cg = fc.pair.ambient.component_group;
  model::AbstractSubgroup a;
  std::vector<int> gens;
  const int k = 1 + static_cast<int>(rng() % 2);
  for (int j = 0; j < k; ++j) gens.push_back(static_cast<int>(rng() % cg.order()));
  a.image = cg.closure(gens);
  const int x = static_cast<int>(rng() % 3);
  a.intersection = x == 0 ? model::Intersection::trivial()
                          : x == 1 ? model::Intersection::named("K") : model::Intersection::opaque();
  if (rng() % 8 == 0) a.image.reset();
  fc.pair.subgroup = a;

  auto& sub = std::get<model::AbstractSubgroup>(fc.pair.subgroup);
  const bool s3 = sub.image && sub.image->size() == 6 && !cg.is_abelian(*sub.image) && fc.pair.ambient.components.size() == 1;
  if (s3 && rng() % 3 != 0) sub.shapes[model::query::collapse_shape(fc.pair)] = a2_cubed_shape(p);
  if (rng() % 3 == 0) {
    fc.config.second_reduction = true;
    model::ShapeFact same{fc.pair.ambient, {}, sub.intersection};
    if (sub.image)
      for (int c : *sub.image) same.image.push_back(cg.name(c));
    if (sub.image) sub.shapes[model::query::double_centralizer_shape(fc.pair)] = same;
  }
  return fc;
}

/// Asserts a random answer for each plain missing fact.
inline bool fill_missing(model::Pair& pair, const std::vector<std::string>& missing, std::mt19937& rng) {
  auto& facts = std::holds_alternative<model::AbstractSubgroup>(pair.subgroup)
                    ? std::get<model::AbstractSubgroup>(pair.subgroup).facts
                    : std::get<model::MatrixSubgroup>(pair.subgroup).facts;
  bool added = false;
  for (const auto& q : missing) {
    if (q.rfind("shape[", 0) == 0 || q.rfind("image[", 0) == 0) continue;
    facts.insert(q, {rng() % 2 == 0, model::Provenance::Asserted, "fuzz"});
    added = true;
  }
  return added;
}

}  // namespace gcr::test
