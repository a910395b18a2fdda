#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "gcr/groupmodel.hpp"
#include "support.hpp"

using namespace gcr;
using namespace gcr::model;
using gcr::test::action;
using gcr::test::shape;

namespace {

// Orbit count by union-find over the generators' permutations.
int brute_orbit_count(const std::vector<std::vector<int>>& perms, int n) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& p : perms)
    for (int i = 0; i < n; ++i) parent[find(i)] = find(p[i]);
  std::set<int> roots;
  for (int i = 0; i < n; ++i) roots.insert(find(i));
  return static_cast<int>(roots.size());
}

fq::Matrix diag3(const fq::FieldPtr& f, long long a, long long b, long long c) {
  return fq::Matrix::from_ints(f, 3, {a, 0, 0, 0, b, 0, 0, 0, c});
}

// A2 with the diagram reversal as the only outer element, over F_5.
GroupShape a2_with_reversal() { return shape({"A2"}, {{"tau", action({0}, {{1, 0}}), {}}}, 5); }

}  // namespace

TEST_CASE("Out orders of simple types") {
  CHECK(out_order(rootdata::CartanType::parse("A", 1)) == 1);
  CHECK(out_order(rootdata::CartanType::parse("A", 2)) == 2);
  CHECK(out_order(rootdata::CartanType::parse("D", 4)) == 6);
  CHECK(out_order(rootdata::CartanType::parse("D", 5)) == 2);
  CHECK(out_order(rootdata::CartanType::parse("E", 6)) == 2);
  CHECK(out_order(rootdata::CartanType::parse("G", 2)) == 1);
}

TEST_CASE("Aut(D4) component group is S3 acting faithfully") {
  const auto g = test::aut_d4(3);
  CHECK(g.component_group.order() == 6);
  CHECK_FALSE(g.component_group.is_abelian(g.component_group.closure({1, 2})));
  CHECK(g.centralizer_trivial());
  CHECK(g.identity_component_simple());
  CHECK(g.dimension() == 28);
  const int sigma = g.component_group.index_of("sigma");
  CHECK(g.component_group.closure({sigma}).size() == 3);
  CHECK(g.component_group.is_cyclic(g.component_group.closure({sigma})));
}

TEST_CASE("orbits: trivial action gives one orbit per component with full stabilizers") {
  const auto g = shape({"A1", "A1", "A1"}, {{"z", action({0, 1, 2}, {{0}, {0}, {0}}), {1, 0}}});
  CHECK(g.component_group.order() == 2);
  Pair p{g, test::abstract(g, {"z"}, Intersection::trivial())};
  const auto os = compute_orbit_stabilizers(p);
  REQUIRE(os);
  CHECK(os->size() == 3);
  for (const auto& o : *os) CHECK(o.stabilizer.size() == 2);
}

TEST_CASE("orbits: 3-cycle on three components is one orbit with stabilizer of index 3") {
  const auto g = shape({"A2", "A2", "A2"}, {{"c", action({1, 2, 0}, {{0, 1}, {0, 1}, {0, 1}}), {}}});
  Pair p{g, test::abstract(g, {"c"}, Intersection::trivial())};
  const auto os = compute_orbit_stabilizers(p);
  REQUIRE(os);
  REQUIRE(os->size() == 1);
  CHECK((*os)[0].orbit == std::vector<int>{0, 1, 2});
  CHECK(3 * (*os)[0].stabilizer.size() == p.ambient.component_group.order());
  CHECK(op2_decompose(p).size() == 1);
}

TEST_CASE("O2 on A2, A2, B2 with H swapping the A2 factors") {
  const auto g = shape({"A2", "A2", "B2"}, {{"s", action({1, 0, 2}, {{0, 1}, {0, 1}, {0, 1}}), {}}});
  Pair p{g, test::abstract(g, {"s"}, Intersection::named("K"))};
  const auto pairs = op2_decompose(p);
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0].ambient.components.size() == 1);
  CHECK(pairs[0].ambient.components[0].type.name() == "A2");
  CHECK(pairs[1].ambient.components[0].type.name() == "B2");
  CHECK(pairs[0].ambient.label == "G_0");
  CHECK(pairs[1].ambient.label == "G_2");
  CHECK(subgroup_label(pairs[1]) == "H_2");
  CHECK(intersection_label(pairs[1]) == "K_2");
  // The swap fixes no A2 factor, so only the B2 pair keeps it.
  CHECK(pairs[0].ambient.component_group.order() == 1);
  CHECK(pairs[1].ambient.component_group.order() == 2);
}

TEST_CASE("O2 orbit count and orbit-stabilizer law on random permutation groups") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    std::vector<std::string> names(n, "A1");
    std::vector<ComponentGroup::Generator> gens;
    std::vector<std::vector<int>> perms;
    const int k = n == 2 ? 1 : 1 + static_cast<int>(rng() % 2);
    for (int j = 0; j < k; ++j) {
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      if (std::is_sorted(perm.begin(), perm.end()) || std::find(perms.begin(), perms.end(), perm) != perms.end()) {
        --j;
        continue;
      }
      perms.push_back(perm);
      gens.push_back({"g" + std::to_string(j), action(perm, std::vector<std::vector<int>>(n, {0})), {}});
    }
    const auto g = shape(names, gens);
    std::vector<std::string> gen_names;
    for (const auto& x : gens) gen_names.push_back(x.name);
    Pair p{g, test::abstract(g, gen_names, Intersection::trivial())};
    const auto pairs = op2_decompose(p);
    CHECK(static_cast<int>(pairs.size()) == brute_orbit_count(perms, n));
    const auto os = *compute_orbit_stabilizers(p);
    std::size_t covered = 0;
    for (std::size_t i = 0; i < os.size(); ++i) {
      covered += os[i].orbit.size();
      CHECK(os[i].orbit.size() * os[i].stabilizer.size() == image_of(p)->size());
      CHECK(pairs[i].ambient.component_group.order() == static_cast<int>(os[i].stabilizer.size()));
    }
    CHECK(covered == static_cast<std::size_t>(n));
  }
}

TEST_CASE("O1 leaves Aut(D4) unchanged") {
  const auto g = test::aut_d4(3);
  Pair p{g, test::abstract(g, {"sigma"}, Intersection::named("K"))};
  CHECK(op1_quotient_by_centralizer(p) == p);
}

TEST_CASE("O1 with only a central torus keeps components and component group") {
  const auto g = shape({"A2"}, {{"tau", action({0}, {{1, 0}}), {}}}, 0, 1);
  CHECK_FALSE(g.centralizer_trivial());
  Pair p{g, test::abstract(g, {"tau"}, Intersection::trivial())};
  const Pair q = op1_quotient_by_centralizer(p);
  CHECK(q.ambient.components == g.components);
  CHECK(q.ambient.component_group == g.component_group);
  CHECK(q.ambient.radical_rank == 0);
  CHECK(q.ambient.centralizer_trivial());
}

TEST_CASE("O1 removes the action kernel and the result acts faithfully") {
  // Z/2 x Z/2: 'a' swaps the components, 'b' acts trivially.
  const auto g = shape({"A1", "A1"}, {{"a", action({1, 0}, {{0}, {0}}), {1, 0, 2, 3}},
                                      {"b", action({0, 1}, {{0}, {0}}), {0, 1, 3, 2}}});
  REQUIRE(g.component_group.order() == 4);
  CHECK(g.component_group.kernel().size() == 2);
  Pair p{g, test::abstract(g, {"a", "b"}, Intersection::named("K"))};
  const Pair q = op1_quotient_by_centralizer(p);
  CHECK(q.ambient.component_group.order() == 2);
  CHECK(q.ambient.component_group.faithful());
  CHECK(q.ambient.label == "G'");
  // H meets the kernel non-trivially, so H' cap G'0 is no longer the named K.
  CHECK(std::get<AbstractSubgroup>(q.subgroup).intersection.kind == Intersection::Kind::Opaque);

  Pair r{g, test::abstract(g, {"a"}, Intersection::named("K"))};
  const Pair s = op1_quotient_by_centralizer(r);
  CHECK(intersection_label(s) == "K'");
}

TEST_CASE("transport of the A2 reversal is an involutive automorphism") {
  const auto f = fq::Field::prime(5);
  const rootdata::DiagramAutomorphism rev{{1, 0}};
  std::mt19937 rng(3);
  for (int t = 0; t < 50; ++t) {
    std::vector<long long> e(9), e2(9);
    for (auto& x : e) x = rng() % 5;
    for (auto& x : e2) x = rng() % 5;
    const auto x = fq::Matrix::from_ints(f, 3, e), y = fq::Matrix::from_ints(f, 3, e2);
    if (!x.invertible() || !y.invertible()) continue;
    const auto xn = x.projective_normal(), yn = y.projective_normal();
    CHECK(transport(rev, transport(rev, xn)) == xn);
    CHECK(transport(rev, (xn * yn).projective_normal()) == (transport(rev, xn) * transport(rev, yn)).projective_normal());
  }
}

TEST_CASE("matrix subgroup: Lagrange |H| = |H cap G0| * |image|") {
  const auto g = a2_with_reversal();
  const auto f = fq::Field::prime(5);
  const int tau = g.component_group.index_of("tau");
  std::mt19937 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<MatrixElement> gens;
    const int k = 1 + static_cast<int>(rng() % 2);
    for (int j = 0; j < k; ++j) {
      fq::Matrix m = fq::Matrix::identity(f, 3);
      do {
        std::vector<long long> e(9);
        for (auto& x : e) x = (rng() % 3 == 0) ? rng() % 5 : 0;
        for (int i = 0; i < 3; ++i) e[4 * i] = 1 + rng() % 4;
        m = fq::Matrix::from_ints(f, 3, e);
      } while (!m.invertible());
      gens.push_back({static_cast<int>(rng() % 2) ? tau : 0, {m}});
    }
    const auto d = make_matrix_subgroup(g, "H", f, gens, {}, {}, 5000);
    if (!std::holds_alternative<MatrixSubgroup>(d)) continue;
    const auto& h = std::get<MatrixSubgroup>(d);
    const Pair p{g, h};
    const auto k0 = std::count_if(h.elements.begin(), h.elements.end(), [](const auto& e) { return e.c == 0; });
    CHECK(h.elements.size() == static_cast<std::size_t>(k0) * image_of(p)->size());
  }
}

TEST_CASE("matrix subgroup: closure cap degrades to an abstract descriptor") {
  const auto g = a2_with_reversal();
  const auto f = fq::Field::prime(5);
  std::vector<MatrixElement> gens{{1, {diag3(f, 1, 2, 1)}}, {0, {fq::Matrix::from_ints(f, 3, {1, 1, 0, 0, 1, 1, 0, 0, 1})}}};
  const auto d = make_matrix_subgroup(g, "H", f, gens, {}, {}, 10);
  REQUIRE(std::holds_alternative<AbstractSubgroup>(d));
  const auto& a = std::get<AbstractSubgroup>(d);
  CHECK(a.image->size() == 2);
  CHECK(a.intersection.kind == Intersection::Kind::Opaque);
}

TEST_CASE("matrix subgroup rejects singular generators and wrong sizes") {
  const auto g = a2_with_reversal();
  const auto f = fq::Field::prime(5);
  CHECK_THROWS_AS(make_matrix_subgroup(g, "H", f, {{0, {diag3(f, 1, 0, 1)}}}, {}, {}, 100), ModelError);
  CHECK_THROWS_AS(make_matrix_subgroup(g, "H", f, {{0, {fq::Matrix::identity(f, 2)}}}, {}, {}, 100), ModelError);
  CHECK_THROWS_AS(make_matrix_subgroup(g, "H", fq::Field::prime(3), {{0, {fq::Matrix::identity(fq::Field::prime(3), 3)}}},
                                       {}, {}, 100),
                  ModelError);
}

TEST_CASE("O3 on a matrix pair consumes the asserted centralizer shape") {
  const auto g = a2_with_reversal();
  const auto f = fq::Field::prime(5);
  const int tau = g.component_group.index_of("tau");
  const auto d = make_matrix_subgroup(g, "H", f, {{tau, {fq::Matrix::identity(f, 3)}}, {0, {diag3(f, 1, 2, 1)}}}, {},
                                      {}, 5000);
  REQUIRE(std::holds_alternative<MatrixSubgroup>(d));
  const Pair p{g, d};
  const auto& h = std::get<MatrixSubgroup>(d);
  CHECK(h.elements.size() == 8);

  // C_G0(K) for K = <diag(1,2,1)>: a GL2 x GL1 block shape modulo scalars.
  ShapeFact sf;
  sf.shape = shape({"A1"}, {{"tau", action({0}, {{0}}), {1, 0}}}, 5, 1, "M");
  sf.image = {"1", "tau"};
  const Pair q = op3_collapse(p, {true, Provenance::Asserted, ""}, sf);
  CHECK(q.ambient.label == "M");
  CHECK(subgroup_label(q) == "H/H cap G0");
  CHECK(image_of(q)->size() == image_of(p)->size());
  const auto k0 = std::count_if(h.elements.begin(), h.elements.end(), [](const auto& e) { return e.c == 0; });
  CHECK(static_cast<std::size_t>(k0) * image_of(q)->size() == h.elements.size());
  CHECK(q.ambient.dimension() < p.ambient.dimension());

  CHECK_THROWS_AS(op3_collapse(p, {false, Provenance::Asserted, ""}, sf), ModelError);
  ShapeFact wrong = sf;
  wrong.image = {"1"};
  CHECK_THROWS_AS(op3_collapse(p, {true, Provenance::Asserted, ""}, wrong), ModelError);
}

TEST_CASE("second reduction with C_G0(C_G0(H)) = G0 keeps the ambient group") {
  const auto g = test::aut_d4(3);
  Pair p{g, test::abstract(g, {"sigma"}, Intersection::named("K"))};
  ShapeFact sf{g, {"1", "sigma", "sigma*sigma"}, Intersection::named("K")};
  const Pair q = second_reduction(p, {true, Provenance::Asserted, ""}, sf);
  CHECK(q == p);
  CHECK_THROWS_AS(second_reduction(p, {false, Provenance::Asserted, ""}, sf), ModelError);
}

TEST_CASE("component group validation errors") {
  const auto a1 = test::types_of({"A1"});
  CHECK_THROWS_AS(ComponentGroup::from_generators(a1, {{"z", action({0}, {{0}}), {}}}), ModelError);
  CHECK_NOTHROW(ComponentGroup::from_generators(a1, {{"z", action({0}, {{0}}), {1, 0}}}));
  const auto ab = test::types_of({"A2", "B2"});
  CHECK_THROWS_AS(ComponentGroup::from_generators(ab, {{"s", action({1, 0}, {{0, 1}, {0, 1}}), {}}}), ModelError);
  const auto b2 = test::types_of({"B2"});
  CHECK_THROWS_AS(ComponentGroup::from_generators(b2, {{"s", action({0}, {{1, 0}}), {}}}), ModelError);

  const auto aa = test::types_of({"A1", "A1"});
  const auto id = test::identity_action(aa);
  const auto swap = action({1, 0}, {{0}, {0}});
  // Z/3 whose generator swaps two components: not a homomorphism.
  CHECK_THROWS_AS(ComponentGroup::from_table(aa, {"1", "g", "g2"}, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}, {id, swap, swap}),
                  ModelError);
  // Not a Latin square.
  CHECK_THROWS_AS(ComponentGroup::from_table(aa, {"1", "s"}, {{0, 1}, {1, 1}}, {id, swap}), ModelError);
  // Latin square with identity but not associative (order 5 loop).
  const std::vector<std::vector<int>> loop{
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK_THROWS_AS(ComponentGroup::from_table(aa, {"1", "a", "b", "c", "d"}, loop, {id, id, id, id, id}), ModelError);
  // A valid Z/2.
  CHECK_NOTHROW(ComponentGroup::from_table(aa, {"1", "s"}, {{0, 1}, {1, 0}}, {id, swap}));
}

TEST_CASE("fact table rejects contradictions") {
  FactTable t;
  t.insert("cr[K | G0]", {true, Provenance::Asserted, ""});
  CHECK_NOTHROW(t.insert("cr[K | G0]", {true, Provenance::Asserted, "again"}));
  CHECK_THROWS_AS(t.insert("cr[K | G0]", {false, Provenance::Asserted, ""}), ModelError);
  CHECK(asserted_oracle(t, "cr[K | G0]")->answer);
  CHECK_FALSE(asserted_oracle(t, "trivial[K]"));
}

TEST_CASE("query texts") {
  const auto g = test::aut_d4(3);
  Pair p{g, test::abstract(g, {"sigma"}, Intersection::named("K"))};
  CHECK(query::intersection_cr(p) == "cr[K | G0]");
  CHECK(query::intersection_trivial(p) == "trivial[K]");
  CHECK(query::centralizer_reductive(p) == "reductive[C_G0(H)]");
  CHECK(query::quotient_centralizer_cr(p) == "cr[C_M0(H/K) | M0]");
  CHECK(query::collapse_shape(p) == "C_G0(K)");
  Pair t{g, test::abstract(g, {"sigma"}, Intersection::trivial())};
  CHECK(query::intersection_cr(t) == "cr[1 | G0]");
  Pair o{g, test::abstract(g, {"sigma"}, Intersection::opaque())};
  CHECK(intersection_label(o) == "H cap G0");
}
