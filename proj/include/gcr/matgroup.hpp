#pragma once

// Finite matrix groups given by generators: breadth-first closure with a cap.

#include <cstddef>
#include <deque>
#include <unordered_set>
#include <vector>

#include "gcr/fq.hpp"

namespace gcr::fq {

inline constexpr std::size_t kDefaultMaxGroupOrder = 200000;

template <class T>
struct Closure {
  std::vector<T> elements;  // identity first, then breadth-first order
  bool complete = true;     // false when the cap stopped the search
};

/// Breadth-first closure of gens under right multiplication.
template <class T, class Hash, class Mul>
Closure<T> close_under(const std::vector<T>& gens, const T& identity, Mul mul, std::size_t cap) {
  Closure<T> out;
  std::unordered_set<T, Hash> seen;
  seen.insert(identity);
  out.elements.push_back(identity);
  for (std::size_t head = 0; head < out.elements.size(); ++head) {
    for (const T& g : gens) {
      T x = mul(out.elements[head], g);
      if (seen.count(x)) continue;
      if (out.elements.size() >= cap) {
        out.complete = false;
        return out;
      }
      seen.insert(x);
      out.elements.push_back(std::move(x));
    }
  }
  return out;
}

struct GroupEnumeration {
  std::vector<Matrix> elements;
  bool complete = true;
  std::size_t order() const { return elements.size(); }
};

/// Closure in GL_n(F_q), or in PGL_n(F_q) when projective (elements are then
/// projective_normal() representatives). Throws FieldError on singular input.
GroupEnumeration enumerate_group(const std::vector<Matrix>& gens, std::size_t cap = kDefaultMaxGroupOrder,
                                 bool projective = false);

/// Order of g (modulo scalars when projective).
std::size_t element_order(const Matrix& g, bool projective = false);

/// Matrix power (modulo scalars when projective).
Matrix power(const Matrix& g, std::uint64_t e, bool projective = false);

/// Cyclic test for a completely enumerated group: the generators commute and
/// every prime r dividing the order has exactly r solutions of x^r = 1.
bool is_cyclic(const std::vector<Matrix>& gens, const GroupEnumeration& group, bool projective = false);

}  // namespace gcr::fq
