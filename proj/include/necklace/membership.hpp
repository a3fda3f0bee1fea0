#pragma once

#include <optional>
#include <string>
#include <vector>

#include "necklace/linalg.hpp"
#include "necklace/necklace_tr.hpp"

namespace necklace {

enum class subspace_kind { commutators, l_plus_commutators, l_commutators, ideal };

struct MembershipResult {
  bool member = false;
  std::string witness;  // explicit combination on success
};

namespace detail {

struct Component {
  int deg = 0;
  int len = 0;
  bool operator<(const Component& o) const {
    return deg != o.deg ? deg < o.deg : len < o.len;
  }
};

inline std::map<Component, NcSeries> split_components(const NcSeries& s) {
  std::map<Component, NcSeries> out;
  for (const auto& [w, c] : s.terms()) {
    Component k{word_deg(s.space(), w), int(w.size())};
    auto it = out.find(k);
    if (it == out.end()) it = out.emplace(k, NcSeries(s.space_ptr(), s.cap())).first;
    it->second.add_term(w, c);
  }
  return out;
}

inline std::vector<Rat> coords_in(const std::vector<Word>& basis, const NcSeries& s) {
  std::vector<Rat> v(basis.size(), Rat(0));
  for (const auto& [w, c] : s.terms()) {
    auto it = std::lower_bound(basis.begin(), basis.end(), w);
    require(it != basis.end() && *it == w, errc::bad_input, "word outside component basis");
    v[std::size_t(it - basis.begin())] = c;
  }
  return v;
}

}  // namespace detail

// Exact (modulo words longer than the cap) membership test, decided degree-
// and length-wise by linear algebra over Q. The spanning set of the
// commutator subspace in a fixed component consists of the non-closed words
// [e_{s(w)}, w] = w and the rotation differences uv - (-1)^{|u||v|} vu.
inline MembershipResult membership(const NcSeries& x, subspace_kind kind,
                                   const std::vector<NcSeries>& ideal_gens = {}) {
  MembershipResult res;
  if (x.is_zero()) {
    res.member = true;
    res.witness = "0";
    return res;
  }
  const auto& sp = x.space();
  std::vector<std::string> witness_parts;
  for (const auto& [comp, part] : detail::split_components(x)) {
    std::vector<Word> all = enumerate_words(sp, comp.len);
    std::vector<Word> basis;
    for (const auto& w : all)
      if (word_deg(sp, w) == comp.deg) basis.push_back(w);
    std::sort(basis.begin(), basis.end());

    std::vector<std::vector<Rat>> span;
    std::vector<std::string> tags;
    auto push = [&](const NcSeries& v, std::string tag) {
      if (v.is_zero()) return;
      span.push_back(detail::coords_in(basis, v));
      tags.push_back(std::move(tag));
    };

    if (kind == subspace_kind::ideal) {
      for (std::size_t gi = 0; gi < ideal_gens.size(); ++gi) {
        const NcSeries& r = ideal_gens[gi];
        r.check_space(x);
        int min_r = comp.len;
        for (const auto& [w, c] : r.terms()) min_r = std::min<int>(min_r, int(w.size()));
        for (int lx = 0; lx + min_r <= comp.len; ++lx)
          for (int ly = 0; lx + ly + min_r <= comp.len; ++ly)
            for (const auto& wx : enumerate_words(sp, lx))
              for (const auto& wy : enumerate_words(sp, ly)) {
                NcSeries prod = series_word(x.space_ptr(), x.cap(), wx) * r *
                                series_word(x.space_ptr(), x.cap(), wy);
                auto comps = detail::split_components(prod);
                auto it = comps.find(comp);
                if (it != comps.end())
                  push(it->second, word_str(sp, wx) + "~r" + std::to_string(gi) + "~" +
                                       word_str(sp, wy));
              }
      }
    } else {
      if (kind == subspace_kind::l_plus_commutators && comp.len == 0 && comp.deg == 0) {
        for (std::size_t v = 0; v < sp.vertices.size(); ++v)
          push(series_idem(x.space_ptr(), x.cap(), int(v)), "e_" + sp.vertices[v]);
      }
      for (const auto& w : basis) {
        if (w.empty()) continue;
        if (!word_closed(sp, w)) {
          // [e_{s(w)}, w] = w
          push(series_word(x.space_ptr(), x.cap(), w),
               "[e_" + sp.vertices[std::size_t(word_src(sp, w))] + "," + word_str(sp, w) + "]");
        } else if (kind != subspace_kind::l_commutators) {
          for (std::size_t k = 1; k < w.size(); ++k) {
            NcSeries diff = series_word(x.space_ptr(), x.cap(), w) -
                            series_word(x.space_ptr(), x.cap(), rotate_word(w, k))
                                .scaled(Rat(rotation_sign(sp, w, k)));
            push(diff, "[" + word_str(sp, Word{std::vector<int>(w.g.begin(), w.g.begin() + long(k)), -1}) +
                           "," + word_str(sp, Word{std::vector<int>(w.g.begin() + long(k), w.g.end()), -1}) +
                           "]");
          }
        }
      }
    }

    auto target = detail::coords_in(basis, part);
    auto sol = express_in_span(span, target);
    if (!sol) return MembershipResult{false, ""};
    for (std::size_t i = 0; i < sol->size(); ++i)
      if (!is_zero((*sol)[i])) witness_parts.push_back(rat_str((*sol)[i]) + "*" + tags[i]);
  }
  res.member = true;
  res.witness = witness_parts.empty() ? "0" : witness_parts.front();
  for (std::size_t i = 1; i < witness_parts.size(); ++i) res.witness += " + " + witness_parts[i];
  return res;
}

// Deterministic ordered basis of the (degree, length) component of
// A_l = A/[l,A]: the closed words (lazy paths at length 0).
inline std::vector<Word> coinvariants_basis(const GeneratorSpace& sp, int degree, int length) {
  std::vector<Word> out;
  for (const auto& w : enumerate_words(sp, length))
    if (word_deg(sp, w) == degree && word_closed(sp, w)) out.push_back(w);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace necklace
