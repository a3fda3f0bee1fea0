#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "helpers.hpp"
#include "necklace/bracket.hpp"

using namespace necklace;
using testutil::make_space;

namespace {

// Local cyclic derivative for degree-0 cycles (independent of the library):
// partial_g(p) = sum over decompositions p = u g v of v u.
NcSeries cyclic_derivative_oracle(const Necklace& w, int g) {
  auto sp = w.space_ptr();
  NcSeries out(sp, w.cap());
  for (const auto& [cw, c] : w.terms())
    for (std::size_t i = 0; i < cw.size(); ++i) {
      if (cw.g[i] != g) continue;
      Word wrap;
      if (cw.size() == 1) {
        wrap = empty_word(sp->gen(g).tgt);
      } else {
        wrap.g.insert(wrap.g.end(), cw.g.begin() + long(i + 1), cw.g.end());
        wrap.g.insert(wrap.g.end(), cw.g.begin(), cw.g.begin() + long(i));
      }
      out.add_term(wrap, c);
    }
  return out;
}

struct DoubledSetup {
  std::shared_ptr<const GeneratorSpace> sp;
  Pairing eta;
};

// Doubled 3-cycle with stars of degree 2-d and eta = sum [alpha, alpha*].
DoubledSetup cycle3_doubled(int d) {
  int sd = 2 - d;
  auto sp = make_space({"1", "2", "3"},
                       {{"a", 0, 1, 0},
                        {"b", 1, 2, 0},
                        {"c", 2, 0, 0},
                        {"a*", 1, 0, sd},
                        {"b*", 2, 1, sd},
                        {"c*", 0, 2, sd}});
  Pairing eta(sp, sd);
  for (int i = 0; i < 3; ++i) add_dual_pair(eta, i, i + 3);
  return {sp, eta};
}

}  // namespace

TEST_CASE("pairing validation") {
  auto st = cycle3_doubled(3);
  auto rep = check_pairing(st.eta);
  CHECK(rep.antisymmetric);
  CHECK(rep.nondegenerate);

  // symmetric sign instead: antisymmetry fails, nondegeneracy holds
  auto sp = st.sp;
  Pairing bad(sp, -1);
  bad.set(0, 3, rat(1));
  bad.set(3, 0, rat(1));
  auto rb = check_pairing(bad);
  CHECK_FALSE(rb.antisymmetric);
  CHECK(rb.nondegenerate);

  // zero pairing on a nonempty space
  Pairing zero(sp, -1);
  auto rz = check_pairing(zero);
  CHECK(rz.antisymmetric);
  CHECK_FALSE(rz.nondegenerate);
}

TEST_CASE("degree and endpoint guards on pairings") {
  auto st = cycle3_doubled(3);
  Pairing p(st.sp, -1);
  CHECK_THROWS_AS(p.set(0, 1, rat(1)), error);  // endpoints do not close up
  Pairing q(st.sp, 0);
  CHECK_THROWS_AS(q.set(0, 3, rat(1)), error);  // degree mismatch
}

TEST_CASE("eta_B construction from F") {
  GeneratorSpace f({"1"}, {{"y", 0, 0, 0}});

  auto r3 = eta_B_from_F(f, 3);
  REQUIRE(r3.fr_space->gens.size() == 2);
  CHECK(r3.fr_space->gen(1).name == "y*");
  CHECK(r3.fr_space->gen(1).deg == 0);
  CHECK(r3.eta_b.degree() == 0);
  CHECK(r3.eta_b.coeffs().at({0, 1}) == rat(1));
  CHECK(r3.eta_b.coeffs().at({1, 0}) == rat(-1));
  CHECK(check_pairing(r3.eta_b).ok());

  auto r4 = eta_B_from_F(f, 4);
  CHECK(r4.fr_space->gen(1).deg == -1);
  CHECK(r4.eta_b.degree() == -1);
  CHECK(r4.eta_b.coeffs().at({0, 1}) == rat(1));
  CHECK(r4.eta_b.coeffs().at({1, 0}) == rat(-1));
  CHECK(check_pairing(r4.eta_b).ok());

  GeneratorSpace empty({"1"}, {});
  auto re = eta_B_from_F(empty, 3);
  CHECK(re.fr_space->gens.empty());
  CHECK(check_pairing(re.eta_b).ok());

  GeneratorSpace badf({"1"}, {{"y", 0, 0, -1}});
  CHECK_THROWS_AS(eta_B_from_F(badf, 3), error);  // degree window
}

TEST_CASE("eta_B passes the pairing checks across degrees and dimensions") {
  std::mt19937 rng(404);
  for (int trial = 0; trial < 25; ++trial) {
    int d = 2 + int(rng() % 5);
    std::vector<int> degs;
    for (int x = 0; x >= -d; --x)
      if (2 * x >= 3 - d && x <= 0) degs.push_back(x);
    if (degs.empty()) continue;  // d = 2 forces F = 0
    std::vector<Generator> gens;
    int count = 1 + int(rng() % 3);
    for (int i = 0; i < count; ++i)
      gens.push_back({"y" + std::to_string(i), 0, int(rng() % 2), degs[rng() % degs.size()]});
    GeneratorSpace f({"1", "2"}, gens);
    auto r = eta_B_from_F(f, d);
    CHECK(check_pairing(r.eta_b).ok());
    CHECK(r.eta_b.degree() == 3 - d);
    for (auto [y, ys] : r.dual_pairs)
      CHECK(r.fr_space->gen(y).deg + r.fr_space->gen(ys).deg == 3 - d);
  }
}

TEST_CASE("calibration: bracket with the potential reproduces d(a*) = -bc") {
  for (int d : {2, 3}) {
    auto st = cycle3_doubled(d);
    auto sp = st.sp;
    auto w = necklace_of(sp, 8, word_of({0, 1, 2}));  // class of abc

    // {W, a*} = -bc
    NcSeries lhs = single_bracket(w, series_gen(sp, 8, 3), st.eta);
    NcSeries expect(sp, 8);
    expect.add_term(word_of({1, 2}), rat(-1));
    CHECK(lhs == expect);

    // {W, b*} = -ca
    NcSeries lb = single_bracket(w, series_gen(sp, 8, 4), st.eta);
    NcSeries eb(sp, 8);
    eb.add_term(word_of({2, 0}), rat(-1));
    CHECK(lb == eb);

    // arrows themselves have no starred occurrences in W
    CHECK(single_bracket(w, series_gen(sp, 8, 0), st.eta).is_zero());

    // lazy paths bracket to zero
    CHECK(single_bracket(w, series_idem(sp, 8, 0), st.eta).is_zero());
  }
}

TEST_CASE("calibration matches the cyclic derivative on random potentials") {
  std::mt19937 rng(7312);
  for (int trial = 0; trial < 15; ++trial) {
    int d = 2 + int(rng() % 2);
    auto st = cycle3_doubled(d);
    auto sp = st.sp;
    Necklace w(sp, 8);
    w.add_class(word_of({0, 1, 2}), rat(int(rng() % 5) - 2));
    w.add_class(word_of({0, 1, 2, 0, 1, 2}), rat(int(rng() % 3) - 1));
    for (int alpha = 0; alpha < 3; ++alpha) {
      NcSeries bracket = single_bracket(w, series_gen(sp, 8, alpha + 3), st.eta);
      NcSeries oracle = cyclic_derivative_oracle(w, alpha).scaled(rat(-1));
      CHECK(bracket == oracle);
    }
  }
}

TEST_CASE("sandwiching eta with idempotents gives the loop differentials") {
  auto st = cycle3_doubled(3);
  auto sp = st.sp;
  NcSeries eta_elem = pairing_series(st.eta, 8);
  // e_1 eta e_1 = a a* - c* c
  NcSeries lhs = series_idem(sp, 8, 0) * eta_elem * series_idem(sp, 8, 0);
  NcSeries expect(sp, 8);
  expect.add_term(word_of({0, 3}), rat(1));
  expect.add_term(word_of({5, 2}), rat(-1));
  CHECK(lhs == expect);
}

TEST_CASE("bracket ignores letters outside the pairing span (V' rule)") {
  auto sp = make_space({"1"}, {{"x", 0, 0, 0}, {"x*", 0, 0, -1}, {"z", 0, 0, -1}});
  Pairing eta(sp, -1);
  add_dual_pair(eta, 0, 1);
  Necklace w(sp, 8);
  w.add_class(word_of({0, 1, 2}), rat(1));
  CHECK(single_bracket(w, series_gen(sp, 8, 2), eta).is_zero());
  CHECK_FALSE(single_bracket(w, series_gen(sp, 8, 0), eta).is_zero());
  CHECK(double_bracket(series_gen(sp, 8, 0), series_gen(sp, 8, 2), eta).is_zero());
}

TEST_CASE("double bracket on generator pairs") {
  auto st = cycle3_doubled(3);
  auto sp = st.sp;
  auto t = double_bracket(series_gen(sp, 8, 0), series_gen(sp, 8, 3), st.eta);
  REQUIRE(t.terms().size() == 1);
  const auto& [key, c] = *t.terms().begin();
  CHECK(key.first == empty_word(1));   // e_{t(a)}
  CHECK(key.second == empty_word(0));  // e_{s(a)}
  CHECK((c == rat(1) || c == rat(-1)));

  // {{e_i, b}} = 0
  CHECK(double_bracket(series_idem(sp, 8, 0), series_gen(sp, 8, 3), st.eta).is_zero());
}

TEST_CASE("double bracket antisymmetry on generator pairs") {
  std::mt19937 rng(5150);
  for (int trial = 0; trial < 12; ++trial) {
    int d = 2 + int(rng() % 5);
    int k = -int(rng() % (d - 1));  // degree of x in [2-d, 0]
    int k2 = 2 - d - k;
    if (k2 > 0 || k2 < 2 - d) continue;
    auto sp = make_space({"1", "2"},
                         {{"x", 0, 1, k}, {"x*", 1, 0, k2}, {"u", 0, 0, k}, {"u*", 0, 0, k2}});
    Pairing eta(sp, 2 - d);
    add_dual_pair(eta, 0, 1);
    add_dual_pair(eta, 2, 3);
    REQUIRE(check_pairing(eta).ok());
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        auto lhs = double_bracket(series_gen(sp, 8, i), series_gen(sp, 8, j), eta);
        auto rhs = double_bracket(series_gen(sp, 8, j), series_gen(sp, 8, i), eta).swapped();
        long e = (long(sp->gen(i).deg) - eta.degree()) * (long(sp->gen(j).deg) - eta.degree());
        CAPTURE(d, k, i, j);
        CHECK(lhs == rhs.scaled(-sign_pow(e)));
      }
  }
}

TEST_CASE("mu of the double bracket agrees with the single bracket") {
  std::mt19937 rng(808);
  auto st = cycle3_doubled(3);
  auto sp = st.sp;
  auto pool = enumerate_words_upto(*sp, 4);
  std::vector<Word> closed;
  for (const auto& w : pool)
    if (!w.empty() && word_closed(*sp, w)) closed.push_back(w);
  for (int trial = 0; trial < 40; ++trial) {
    const Word& w = closed[rng() % closed.size()];
    const Word& v = pool[rng() % pool.size()];
    if (v.empty()) continue;
    auto nk = necklace_of(sp, 8, w);
    if (nk.is_zero()) continue;
    NcSeries via_single = single_bracket(nk, series_word(sp, 8, v), st.eta);
    NcSeries via_double(sp, 8);
    for (const auto& [cw, cc] : nk.terms()) {
      auto t = double_bracket(series_word(sp, 8, cw, cc), series_word(sp, 8, v), st.eta);
      via_double = via_double + t.mu();
    }
    CHECK(via_single == via_double);
  }
}

TEST_CASE("single bracket is independent of the representative rotation") {
  auto st = cycle3_doubled(3);
  auto sp = st.sp;
  Word w = word_of({0, 3, 0, 3});  // a a* a a*, degree -2
  NcSeries base = detail::bracket_word_gen(st.eta, 8, w, 0);
  for (std::size_t k = 1; k < w.size(); ++k) {
    NcSeries rotated = detail::bracket_word_gen(st.eta, 8, rotate_word(w, k), 0);
    CHECK(rotated.scaled(Rat(rotation_sign(*sp, w, k))) == base);
  }
}

TEST_CASE("left loday identity on random triples") {
  std::mt19937 rng(2718);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 20; ++trial) {
    int d = 2 + int(rng() % 4);
    auto sp = make_space({"*"}, {{"x", 0, 0, 0},
                                 {"x*", 0, 0, 2 - d},
                                 {"y", 0, 0, 0},
                                 {"y*", 0, 0, 2 - d}});
    Pairing eta(sp, 2 - d);
    add_dual_pair(eta, 0, 1);
    add_dual_pair(eta, 2, 3);

    auto pool = enumerate_words_upto(*sp, 3);
    std::vector<Word> cubic;
    for (const auto& w : pool)
      if (w.size() == 3) cubic.push_back(w);
    Necklace w1(sp, 8), w2(sp, 8);
    w1.add_class(cubic[rng() % cubic.size()], rat(1 + int(rng() % 3)));
    w2.add_class(cubic[rng() % cubic.size()], rat(1 + int(rng() % 3)));
    if (w1.representative().degrees().size() > 1 || w2.representative().degrees().size() > 1)
      continue;
    const Word& vw = pool[rng() % pool.size()];
    if (vw.empty()) continue;
    auto v = series_word(sp, 8, vw);
    NcSeries res = left_loday_check(w1, w2, v, eta);
    CHECK(res.is_zero());
    ++checked;
  }
  CHECK(checked >= 20);
}

TEST_CASE("loday check trivia") {
  auto st = cycle3_doubled(3);
  auto sp = st.sp;
  Necklace w1 = necklace_of(sp, 8, word_of({0, 1, 2}));
  Necklace zero(sp, 8);
  CHECK(left_loday_check(w1, zero, series_gen(sp, 8, 3), st.eta).is_zero());
  CHECK(left_loday_check(w1, w1, series_gen(sp, 8, 3), st.eta).is_zero());
}

TEST_CASE("degenerate pairings are rejected when inverted") {
  auto sp = make_space({"1"}, {{"x", 0, 0, 0}, {"x*", 0, 0, -1}});
  Pairing eta(sp, -1);
  eta.set(0, 1, rat(1));  // only one side: matrix [[0,1],[0,0]] singular
  Necklace w(sp, 8);
  w.add_class(word_of({0, 1}), rat(1));
  CHECK_FALSE(check_pairing(eta).nondegenerate);
  CHECK_THROWS_AS(single_bracket(w, series_gen(sp, 8, 0), eta), error);
}
