#include "gcr/rootdata.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace gcr::rootdata {

namespace {

int height(const Root& r) { return std::accumulate(r.begin(), r.end(), 0); }

bool root_less(const Root& a, const Root& b) {
  const int ha = height(a), hb = height(b);
  if (ha != hb) return ha < hb;
  return a < b;
}

void link(IntMatrix& m, int i, int j) {
  m[i][j] = -1;
  m[j][i] = -1;
}

// Rank over Q by fraction-free elimination.
int integer_rank(std::vector<std::vector<long long>> rows) {
  int rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    auto pivot = std::find_if(rows.begin() + rank, rows.end(), [c](const auto& r) { return r[c] != 0; });
    if (pivot == rows.end()) continue;
    std::iter_swap(rows.begin() + rank, pivot);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      const long long a = rows[rank][c], b = rows[r][c];
      for (std::size_t k = 0; k < cols; ++k) rows[r][k] = rows[r][k] * a - rows[rank][k] * b;
      long long g = 0;
      for (long long v : rows[r]) g = std::gcd(g, v < 0 ? -v : v);
      if (g > 1)
        for (auto& v : rows[r]) v /= g;
    }
    ++rank;
  }
  return rank;
}

}  // namespace

Family parse_family(const std::string& s) {
  if (s.size() == 1) {
    switch (s[0]) {
      case 'A': case 'a': return Family::A;
      case 'B': case 'b': return Family::B;
      case 'C': case 'c': return Family::C;
      case 'D': case 'd': return Family::D;
      case 'E': case 'e': return Family::E;
      case 'F': case 'f': return Family::F;
      case 'G': case 'g': return Family::G;
      default: break;
    }
  }
  throw RootDataError("unknown Cartan family '" + s + "'");
}

CartanType CartanType::make(Family family, int rank) {
  bool ok = false;
  switch (family) {
    case Family::A: ok = rank >= 1; break;
    case Family::B:
    case Family::C: ok = rank >= 2; break;
    case Family::D: ok = rank >= 3; break;
    case Family::E: ok = rank >= 6 && rank <= 8; break;
    case Family::F: ok = rank == 4; break;
    case Family::G: ok = rank == 2; break;
  }
  if (!ok)
    throw RootDataError("invalid rank " + std::to_string(rank) + " for family " +
                        std::string(1, static_cast<char>(family)));
  if (family == Family::D && rank == 3) return {Family::A, 3};
  return {family, rank};
}

CartanType CartanType::parse(const std::string& family, int rank) { return make(parse_family(family), rank); }

std::string CartanType::name() const { return std::string(1, static_cast<char>(family)) + std::to_string(rank); }

IntMatrix cartan_matrix(const CartanType& type) {
  const int n = type.rank;
  IntMatrix m(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 2;
  switch (type.family) {
    case Family::A:
      for (int i = 0; i + 1 < n; ++i) link(m, i, i + 1);
      break;
    case Family::B:
      for (int i = 0; i + 1 < n; ++i) link(m, i, i + 1);
      m[n - 1][n - 2] = -2;
      break;
    case Family::C:
      for (int i = 0; i + 1 < n; ++i) link(m, i, i + 1);
      m[n - 2][n - 1] = -2;
      break;
    case Family::D:
      for (int i = 0; i + 2 < n; ++i) link(m, i, i + 1);
      link(m, n - 3, n - 1);
      break;
    case Family::E:
      link(m, 0, 2);
      link(m, 1, 3);
      for (int i = 2; i + 1 < n; ++i) link(m, i, i + 1);
      break;
    case Family::F:
      link(m, 0, 1);
      link(m, 1, 2);
      link(m, 2, 3);
      m[2][1] = -2;
      break;
    case Family::G:
      m[0][1] = -3;
      m[1][0] = -1;
      break;
  }
  return m;
}

Cocharacter Cocharacter::fundamental(int rank, int index) {
  if (index < 0 || index >= rank) throw RootDataError("fundamental coweight index out of range");
  Cocharacter c = zero(rank);
  c.coords[index] = 1;
  return c;
}

Cocharacter Cocharacter::operator-() const {
  Cocharacter c = *this;
  for (auto& v : c.coords) v = -v;
  return c;
}

RootSystem::RootSystem(CartanType type) : type_(CartanType::make(type.family, type.rank)) {
  cartan_ = cartan_matrix(type_);
  const int n = rank();
  for (int i = 0; i < n; ++i) names_.push_back("alpha_" + std::to_string(i + 1));

  // Closure by height using root strings: for beta != alpha_i, beta + alpha_i
  // is a root iff r - <beta, alpha_i^vee> > 0 where r is the length of the
  // downward alpha_i-string through beta.
  std::set<Root> known;
  std::vector<Root> layer;
  for (int i = 0; i < n; ++i) {
    Root r(n, 0);
    r[i] = 1;
    layer.push_back(r);
    known.insert(r);
  }
  while (!layer.empty()) {
    std::set<Root> next;
    for (const Root& beta : layer) {
      for (int i = 0; i < n; ++i) {
        if (height(beta) == 1 && beta[i] == 1) continue;
        int down = 0;
        Root probe = beta;
        while (probe[i] > 0) {
          --probe[i];
          if (!known.count(probe)) break;
          ++down;
        }
        int coroot_pairing = 0;
        for (int j = 0; j < n; ++j) coroot_pairing += beta[j] * cartan_[i][j];
        if (down - coroot_pairing > 0) {
          Root up = beta;
          ++up[i];
          if (!known.count(up)) next.insert(up);
        }
      }
    }
    layer.assign(next.begin(), next.end());
    known.insert(next.begin(), next.end());
  }
  positive_.assign(known.begin(), known.end());
  std::sort(positive_.begin(), positive_.end(), root_less);
  if (positive_.size() != classical_positive_count(type_))
    throw RootDataError("root closure for " + type_.name() + " produced " + std::to_string(positive_.size()) +
                        " positive roots");
}

std::vector<Root> RootSystem::all_roots() const {
  std::vector<Root> out = positive_;
  for (const Root& r : positive_) {
    Root neg = r;
    for (auto& v : neg) v = -v;
    out.push_back(neg);
  }
  return out;
}

bool RootSystem::is_root(const Root& r) const {
  if (static_cast<int>(r.size()) != rank()) return false;
  Root abs = r;
  const bool negative = std::any_of(r.begin(), r.end(), [](int v) { return v < 0; });
  if (negative) {
    if (std::any_of(r.begin(), r.end(), [](int v) { return v > 0; })) return false;
    for (auto& v : abs) v = -v;
  }
  return std::binary_search(positive_.begin(), positive_.end(), abs, root_less);
}

std::size_t RootSystem::classical_positive_count(const CartanType& type) {
  const std::size_t n = type.rank;
  switch (type.family) {
    case Family::A: return n * (n + 1) / 2;
    case Family::B:
    case Family::C: return n * n;
    case Family::D: return n * (n - 1);
    case Family::E: return n == 6 ? 36 : n == 7 ? 63 : 120;
    case Family::F: return 24;
    case Family::G: return 6;
  }
  return 0;
}

RootSystem build_root_system(const CartanType& type) { return RootSystem(type); }

int pairing(const Root& root, const Cocharacter& cochar) {
  if (root.size() != cochar.coords.size())
    throw RootDataError("pairing: root has rank " + std::to_string(root.size()) + ", cocharacter has rank " +
                        std::to_string(cochar.coords.size()));
  int s = 0;
  for (std::size_t i = 0; i < root.size(); ++i) s += root[i] * cochar.coords[i];
  return s;
}

ParabolicData parabolic_data(const RootSystem& system, const Cocharacter& cochar) {
  if (static_cast<int>(cochar.coords.size()) != system.rank())
    throw RootDataError("parabolic_data: cocharacter rank does not match " + system.type().name());
  ParabolicData data;
  data.cochar = cochar;
  for (const Root& r : system.all_roots()) {
    const int v = pairing(r, cochar);
    if (v == 0) data.levi_roots.push_back(r);
    else if (v > 0) data.unipotent_roots.push_back(r);
  }
  return data;
}

DiagramAutomorphism DiagramAutomorphism::identity(int rank) {
  DiagramAutomorphism d;
  d.perm.resize(rank);
  std::iota(d.perm.begin(), d.perm.end(), 0);
  return d;
}

bool DiagramAutomorphism::is_identity() const {
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != static_cast<int>(i)) return false;
  return true;
}

DiagramAutomorphism DiagramAutomorphism::compose(const DiagramAutomorphism& inner) const {
  if (inner.perm.size() != perm.size()) throw RootDataError("composing diagram automorphisms of different rank");
  DiagramAutomorphism d;
  d.perm.resize(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) d.perm[i] = perm[inner.perm[i]];
  return d;
}

DiagramAutomorphism DiagramAutomorphism::inverse() const {
  DiagramAutomorphism d;
  d.perm.resize(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) d.perm[perm[i]] = static_cast<int>(i);
  return d;
}

bool DiagramAutomorphism::preserves(const IntMatrix& cartan) const {
  const std::size_t n = perm.size();
  if (cartan.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (int v : perm) {
    if (v < 0 || static_cast<std::size_t>(v) >= n || seen[v]) return false;
    seen[v] = true;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (cartan[perm[i]][perm[j]] != cartan[i][j]) return false;
  return true;
}

std::vector<DiagramAutomorphism> diagram_automorphism_group(const CartanType& type) {
  const CartanType t = CartanType::make(type.family, type.rank);
  const IntMatrix cartan = cartan_matrix(t);
  const int n = t.rank;
  // Backtracking: a node may only map to a node of equal Cartan row multiset,
  // and partial assignments must already agree on the assigned block.
  std::vector<DiagramAutomorphism> out;
  std::vector<int> perm(n, -1);
  std::vector<bool> used(n, false);
  auto consistent = [&](int i) {
    for (int j = 0; j <= i; ++j)
      if (cartan[perm[i]][perm[j]] != cartan[i][j] || cartan[perm[j]][perm[i]] != cartan[j][i]) return false;
    return true;
  };
  auto extend = [&](auto&& self, int i) -> void {
    if (i == n) {
      out.push_back({perm});
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[v]) continue;
      perm[i] = v;
      if (consistent(i)) {
        used[v] = true;
        self(self, i + 1);
        used[v] = false;
      }
    }
    perm[i] = -1;
  };
  extend(extend, 0);
  std::sort(out.begin(), out.end());
  return out;
}

DiagramAutomorphism d4_triality() { return {{2, 1, 3, 0}}; }

Root fold_d4_root(const Root& r) {
  if (r.size() != 4) throw RootDataError("fold_d4_root expects a D4 root");
  return {r[0] + r[2] + r[3], r[1]};
}

FoldedG2Data fold_d4_triality() {
  const RootSystem d4(CartanType::make(Family::D, 4));
  const RootSystem g2(CartanType::make(Family::G, 2));
  const DiagramAutomorphism sigma = d4_triality();
  if (!sigma.preserves(d4.cartan())) throw RootDataError("triality does not preserve the D4 Cartan matrix");

  FoldedG2Data data;
  // Orbits of sigma on the simple roots, ordered by least element.
  std::vector<bool> seen(4, false);
  for (int i = 0; i < 4; ++i) {
    if (seen[i]) continue;
    std::vector<int> orbit;
    for (int j = i; !seen[j]; j = sigma.perm[j]) {
      seen[j] = true;
      orbit.push_back(j);
    }
    std::sort(orbit.begin(), orbit.end());
    data.tilde_simple_roots.push_back(orbit);
  }
  // The 3-orbit is alpha~ (short), the fixed node is beta~ (long).
  std::sort(data.tilde_simple_roots.begin(), data.tilde_simple_roots.end(),
            [](const auto& a, const auto& b) { return a.size() > b.size(); });
  if (data.tilde_simple_roots.size() != 2) throw RootDataError("triality should have two orbits on D4 nodes");

  // Coroots of the fixed-point group are orbit sums of coroots:
  // <alpha~_I^vee, alpha~_J> = sum_{i in I} A[i][j] for any j in J.
  data.tilde_cartan.assign(2, std::vector<int>(2, 0));
  for (int I = 0; I < 2; ++I)
    for (int J = 0; J < 2; ++J) {
      const int j = data.tilde_simple_roots[J].front();
      for (int i : data.tilde_simple_roots[I]) data.tilde_cartan[I][J] += d4.cartan()[i][j];
    }
  if (data.tilde_cartan != g2.cartan()) throw RootDataError("folded Cartan matrix is not of type G2");

  // lambda = fundamental coweight of the trivalent node; it is sigma-fixed,
  // so it restricts to the folded torus with the same pairings.
  const Cocharacter lambda = Cocharacter::fundamental(4, 1);
  data.tilde_lambda = {{pairing({1, 0, 0, 0}, lambda), pairing({0, 1, 0, 0}, lambda)}};
  if (pairing({1, 0}, data.tilde_lambda) != 0 || pairing({0, 1}, data.tilde_lambda) != 1)
    throw RootDataError("folded cocharacter pairings are wrong");

  std::map<Root, int> hits;
  for (const Root& r : d4.positive_roots()) ++hits[fold_d4_root(r)];
  for (const auto& [root, count] : hits) {
    if (!g2.is_root(root) || (count != 1 && count != 3))
      throw RootDataError("folding does not map D4 positive roots onto G2 positive roots");
    data.tilde_positive_roots.push_back(root);
  }
  std::sort(data.tilde_positive_roots.begin(), data.tilde_positive_roots.end(), root_less);
  if (data.tilde_positive_roots != g2.positive_roots()) throw RootDataError("folded positive roots are not all of G2");
  if (fold_d4_root(d4.highest_root()) != g2.highest_root())
    throw RootDataError("folded D4 highest root is not the G2 highest root");
  return data;
}

LimitVerdict triality_limit(const Root& eps, const Cocharacter& lambda) {
  LimitVerdict v;
  v.pairing = pairing(eps, lambda);
  v.exists = v.pairing >= 0;
  v.unipotent_collapses = v.pairing > 0;
  return v;
}

LimitVerdict triality_limit_check() {
  const RootSystem d4(CartanType::make(Family::D, 4));
  const Root eps = d4.highest_root();  // alpha + beta + gamma + 2 delta
  const Cocharacter lambda = Cocharacter::fundamental(4, 1);
  const DiagramAutomorphism sigma = d4_triality();
  for (int i = 0; i < 4; ++i)
    if (lambda.coords[sigma.perm[i]] != lambda.coords[i])
      throw RootDataError("triality must fix the coweight of the trivalent node");
  return triality_limit(eps, lambda);
}

M2Dimensions m2_structure_check() {
  const FoldedG2Data folded = fold_d4_triality();
  const RootSystem g2(CartanType::make(Family::G, 2));
  const ParabolicData p = parabolic_data(g2, folded.tilde_lambda);
  std::vector<std::vector<long long>> span;
  for (const Root& r : p.levi_roots) span.emplace_back(r.begin(), r.end());
  M2Dimensions d;
  d.reductive_part = static_cast<int>(p.levi_roots.size()) + integer_rank(span);
  d.unipotent_radical = static_cast<int>(p.unipotent_roots.size());
  d.total = d.reductive_part + d.unipotent_radical;
  return d;
}

}  // namespace gcr::rootdata
