#pragma once

// Randomized quintuple corpus shared by the unit suites and the acceptance
// run. Two families, both honestly satisfying the quintuple conditions:
//
//   B: w_B = 0 and w_A built from cycles that avoid starred N-letters, so
//      {w_A, w_A}_eta = 0 on the nose (any d >= 2).
//
//   A (d in {5, 6}): F = {p deg 0, q deg -1} at a frozen vertex, w_B built
//      from cycles over {p, q*} containing exactly one q*. The letters p
//      and q* are never dual to each other, so {w_B, w_B} = 0, and w_A
//      avoids both q and starred letters, so the mixed brackets vanish and
//      the combined element dies under R -> 0.

#include <random>

#include "necklace/lazaroiu.hpp"

namespace testutil {

using namespace necklace;

// closed words of the exact degree and length in [min_len, max_len] over an
// allowed alphabet
inline std::vector<Word> closed_words_of_degree(const GeneratorSpace& sp,
                                                const std::vector<bool>& allowed, int degree,
                                                int min_len, int max_len) {
  std::vector<Word> out;
  for (int l = min_len; l <= max_len; ++l)
    for (const auto& w : enumerate_words(sp, l)) {
      if (!word_closed(sp, w) || word_deg(sp, w) != degree) continue;
      bool ok = true;
      for (int g : w.g) ok = ok && allowed[std::size_t(g)];
      if (ok) out.push_back(w);
    }
  return out;
}

inline PotentialData pick_cycles(const GeneratorSpace& sp, const std::vector<Word>& pool,
                                 std::mt19937& rng, int count) {
  PotentialData out;
  for (int i = 0; i < count && !pool.empty(); ++i) {
    const Word& w = pool[rng() % pool.size()];
    int c = 1 + int(rng() % 3);
    std::vector<std::string> names;
    for (int g : w.g) names.push_back(sp.gen(g).name);
    out.push_back({rat(rng() % 2 == 0 ? c : -c), names});
  }
  return out;
}

// Family B: w_B = 0. Generators sit at one or two vertices, F only when the
// degree window allows it (d >= 3).
inline Quintuple random_quintuple_b(std::mt19937& rng, int d, int cap, bool cubic_only) {
  Quintuple q;
  int nv = 1 + int(rng() % 2);
  for (int v = 0; v < nv; ++v) {
    q.vertices.push_back(std::to_string(v + 1));
    q.frozen.push_back(rng() % 2 == 0);
    q.weights.push_back(rat(1 + int(rng() % 2)));
  }
  if (d >= 3)
    for (int v = 0; v < nv; ++v)
      if (q.frozen[std::size_t(v)] && rng() % 2 == 0)
        q.f_gens.push_back({"f" + std::to_string(v), v, v, -int(rng() % ((d - 1) / 2 + 1))});
  int pairs = 1 + int(rng() % 2);
  for (int p = 0; p < pairs; ++p) {
    int vsrc = int(rng() % nv), vtgt = int(rng() % nv);
    int k = -int(rng() % (d - 1));
    std::string x = "x" + std::to_string(p);
    q.n_gens.push_back({x, vsrc, vtgt, k});
    q.n_gens.push_back({star_name(x), vtgt, vsrc, 2 - d - k});
    q.eta.emplace_back(x, star_name(x), rat(1));
    q.eta.emplace_back(star_name(x), x, -sign_pow(long(k) * (2 - d - k)));
  }
  q.d = d;
  q.cap = cap;

  // w_A: cycles of degree 3-d avoiding the starred halves
  auto s = build_spaces(q);
  std::vector<bool> allowed(s.ambient->gens.size(), false);
  for (std::size_t g = 0; g < s.ambient->gens.size(); ++g) {
    const auto& name = s.ambient->gen(int(g)).name;
    allowed[g] = name.empty() || name.back() != '*';
  }
  auto pool = closed_words_of_degree(*s.ambient, allowed, 3 - d, cubic_only ? 3 : 1, 4);
  q.w_a = pick_cycles(*s.ambient, pool, rng, int(rng() % 3));
  return q;
}

// Family A: d in {5, 6}, nonzero w_B.
inline Quintuple random_quintuple_a(std::mt19937& rng, int d, int cap, bool cubic_only) {
  Quintuple q;
  q.vertices = {"1", "2"};
  q.frozen = {true, rng() % 2 == 0};
  q.weights = {rat(1), rat(1 + int(rng() % 2))};
  q.d = d;
  q.cap = cap;
  q.f_gens.push_back({"p", 0, 0, 0});
  q.f_gens.push_back({"q", 0, 0, -1});
  int k = -int(rng() % (d - 1));
  q.n_gens.push_back({"x", 1, 1, k});
  q.n_gens.push_back({"x*", 1, 1, 2 - d - k});
  q.eta.emplace_back("x", "x*", rat(1));
  q.eta.emplace_back("x*", "x", -sign_pow(long(k) * (2 - d - k)));

  auto s = build_spaces(q);
  // w_B: cycles over {p, q*} with exactly one q*
  std::vector<bool> allow_b(s.ambient->gens.size(), false);
  allow_b[std::size_t(s.ambient->gen_index("p"))] = true;
  allow_b[std::size_t(s.ambient->gen_index("q*"))] = true;
  auto pool_b = closed_words_of_degree(*s.ambient, allow_b, 4 - d, cubic_only ? 3 : 1, 5);
  std::vector<Word> one_star;
  int qstar = s.ambient->gen_index("q*");
  for (const auto& w : pool_b) {
    int stars = 0;
    for (int g : w.g) stars += g == qstar ? 1 : 0;
    if (stars == 1) one_star.push_back(w);
  }
  q.w_b = pick_cycles(*s.ambient, one_star, rng, 1 + int(rng() % 2));

  // w_A: cycles of degree 3-d over {p, x} (no q, no stars)
  std::vector<bool> allow_a(s.ambient->gens.size(), false);
  allow_a[std::size_t(s.ambient->gen_index("p"))] = true;
  allow_a[std::size_t(s.ambient->gen_index("x"))] = true;
  auto pool_a = closed_words_of_degree(*s.ambient, allow_a, 3 - d, cubic_only ? 3 : 1, 5);
  q.w_a = pick_cycles(*s.ambient, pool_a, rng, int(rng() % 2));
  return q;
}

inline std::vector<Quintuple> quintuple_corpus(unsigned seed, int count, int cap,
                                               bool cubic_only) {
  std::mt19937 rng(seed);
  std::vector<Quintuple> out;
  while (int(out.size()) < count) {
    int d = 2 + int(rng() % 5);
    Quintuple q = (d >= 5 && rng() % 2 == 0) ? random_quintuple_a(rng, d, cap, cubic_only)
                                             : random_quintuple_b(rng, d, cap, cubic_only);
    if (check_quintuple(q).ok()) out.push_back(q);
  }
  return out;
}

}  // namespace testutil
