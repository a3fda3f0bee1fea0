#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "necklace/quiver.hpp"
#include "necklace/series.hpp"

namespace testutil {

using namespace necklace;

inline GradedQuiver cycle3() {
  GradedQuiver q;
  q.vertices = {"1", "2", "3"};
  q.arrows = {{"a", 0, 1, 0}, {"b", 1, 2, 0}, {"c", 2, 0, 0}};
  return q;
}

inline GradedQuiver a2() {
  GradedQuiver q;
  q.vertices = {"1", "2"};
  q.arrows = {{"a", 0, 1, 0}};
  return q;
}

inline GradedQuiver a3() {
  GradedQuiver q;
  q.vertices = {"1", "2", "3"};
  q.arrows = {{"a", 0, 1, 0}, {"b", 1, 2, 0}};
  return q;
}

inline std::shared_ptr<const GeneratorSpace> make_space(std::vector<std::string> vs,
                                                        std::vector<Generator> gens) {
  return std::make_shared<GeneratorSpace>(std::move(vs), std::move(gens));
}

// Two degree-0 loops at one vertex.
inline std::shared_ptr<const GeneratorSpace> two_loops() {
  return make_space({"*"}, {{"x", 0, 0, 0}, {"y", 0, 0, 0}});
}

inline NcSeries rand_series(std::shared_ptr<const GeneratorSpace> sp, int cap, std::mt19937& rng,
                            int terms, int max_len) {
  NcSeries s(sp, cap);
  auto words = enumerate_words_upto(*sp, max_len);
  for (int t = 0; t < terms && !words.empty(); ++t) {
    const Word& w = words[rng() % words.size()];
    int c = int(rng() % 5) - 2;
    s.add_term(w, Rat(c));
  }
  return s;
}

}  // namespace testutil
