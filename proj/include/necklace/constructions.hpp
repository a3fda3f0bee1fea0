#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "necklace/bracket.hpp"
#include "necklace/dg.hpp"
#include "necklace/membership.hpp"
#include "necklace/quiver.hpp"

namespace necklace {

// A potential is a necklace supported on degree-0 cycles of length >= 3.
inline void validate_potential(const Necklace& w, int min_len = 3) {
  for (const auto& [cw, c] : w.terms()) {
    require(int(cw.size()) >= min_len, errc::bad_input,
            "potential cycles must have length >= " + std::to_string(min_len));
    require(word_deg(w.space(), cw) == 0, errc::bad_input,
            "potential cycles must sit in degree 0");
  }
}

// partial_alpha(p) = sum over decompositions p = u alpha v of vu; rotation
// independent because the sum runs over every occurrence of alpha.
inline NcSeries cyclic_derivative(const Necklace& w, int arrow) {
  const auto& sp = w.space();
  require(arrow >= 0 && arrow < int(sp.gens.size()), errc::unknown_arrow,
          "arrow index out of range");
  NcSeries out(w.space_ptr(), w.cap());
  for (const auto& [cw, c] : w.terms()) {
    require(word_deg(sp, cw) == 0, errc::bad_input, "cyclic derivative needs a degree-0 cycle");
    for (std::size_t i = 0; i < cw.size(); ++i) {
      if (cw.g[i] != arrow) continue;
      Word wrap;
      if (cw.size() == 1) {
        wrap = empty_word(sp.gen(arrow).tgt);
      } else {
        wrap.g.insert(wrap.g.end(), cw.g.begin() + long(i + 1), cw.g.end());
        wrap.g.insert(wrap.g.end(), cw.g.begin(), cw.g.begin() + long(i));
      }
      out.add_term(wrap, c);
    }
  }
  return out;
}

inline NcSeries cyclic_derivative(const Necklace& w, const std::string& arrow) {
  return cyclic_derivative(w, w.space().gen_index(arrow));
}

// Completed path algebra modulo the closure of an ideal, truncated at a word
// length; dimensions are those of the length-filtered quotient.
struct PresentedAlgebra {
  std::shared_ptr<const GeneratorSpace> space;
  std::vector<NcSeries> relations;

  int truncated_dim(int length) const {
    std::vector<Word> basis = enumerate_words_upto(*space, length);
    std::sort(basis.begin(), basis.end());
    std::vector<std::vector<Rat>> span;
    for (const auto& r : relations) {
      int min_r = length + 1;
      for (const auto& [w, c] : r.terms()) min_r = std::min<int>(min_r, int(w.size()));
      for (int lx = 0; lx + min_r <= length; ++lx)
        for (int ly = 0; lx + ly + min_r <= length; ++ly)
          for (const auto& wx : enumerate_words(*space, lx))
            for (const auto& wy : enumerate_words(*space, ly)) {
              NcSeries prod = series_word(space, length, wx) * r * series_word(space, length, wy);
              if (prod.is_zero()) continue;
              bool fits = true;
              for (const auto& [w, c] : prod.terms()) fits = fits && int(w.size()) <= length;
              if (!fits) continue;
              std::vector<Rat> vec(basis.size(), Rat(0));
              for (const auto& [w, c] : prod.terms()) {
                auto it = std::lower_bound(basis.begin(), basis.end(), w);
                vec[std::size_t(it - basis.begin())] = c;
              }
              span.push_back(std::move(vec));
            }
    }
    return int(basis.size()) - int(span_rank(span));
  }
};

namespace detail {

// sum over selected arrows of e_v (alpha alpha* - alpha* alpha) e_v
inline NcSeries moment_at_vertex(std::shared_ptr<const GeneratorSpace> sp, int cap, int v,
                                 const std::vector<std::pair<int, int>>& dual_pairs) {
  NcSeries out(sp, cap);
  for (auto [a, as] : dual_pairs) {
    const auto& ga = sp->gen(a);
    if (ga.src == v) out.add_term(word_of({a, as}), Rat(1));
    if (ga.tgt == v) out.add_term(word_of({as, a}), Rat(-1));
  }
  return out;
}

struct DoubledData {
  std::shared_ptr<const GeneratorSpace> space;
  std::vector<std::pair<int, int>> dual_pairs;  // (alpha, alpha*) indices
};

inline DoubledData doubled_space(const GradedQuiver& q, const std::set<int>& frozen_arrows,
                                 int star_deg) {
  GradedQuiver g = q;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < q.arrows.size(); ++i) {
    if (frozen_arrows.count(int(i))) continue;
    const auto& a = q.arrows[i];
    require(g.find_arrow(star_name(a.name)) == nullptr, errc::name_clash,
            "arrow '" + star_name(a.name) + "' already present");
    pairs.emplace_back(i, g.arrows.size());
    g.arrows.push_back({star_name(a.name), a.tgt, a.src, star_deg});
  }
  DoubledData out;
  out.space = std::make_shared<GeneratorSpace>(GeneratorSpace::from_quiver(g));
  for (auto [a, as] : pairs) out.dual_pairs.emplace_back(int(a), int(as));
  return out;
}

}  // namespace detail

inline PresentedAlgebra relative_preprojective(const IceQuiver& qf, int cap) {
  qf.validate();
  require(qf.quiver.all_degree_zero(), errc::bad_input, "preprojective needs a degree-0 quiver");
  auto dd = detail::doubled_space(qf.quiver, qf.frozen_arrows, 0);
  PresentedAlgebra out;
  out.space = dd.space;
  for (std::size_t v = 0; v < qf.quiver.vertices.size(); ++v) {
    if (qf.vertex_frozen(int(v))) continue;
    NcSeries rel = detail::moment_at_vertex(dd.space, cap, int(v), dd.dual_pairs);
    if (!rel.is_zero()) out.relations.push_back(rel);
  }
  return out;
}

inline PresentedAlgebra preprojective(const GradedQuiver& q, int cap) {
  IceQuiver qf;
  qf.quiver = q;
  return relative_preprojective(qf, cap);
}

// W is given as coefficient/cycle-of-arrow-names pairs on the quiver.
using PotentialData = std::vector<std::pair<Rat, std::vector<std::string>>>;

// General necklace from cycle data; no degree constraint.
inline Necklace necklace_on(std::shared_ptr<const GeneratorSpace> sp, int cap,
                            const PotentialData& data) {
  Necklace w(sp, cap);
  for (const auto& [c, cycle] : data) {
    Word cw;
    for (const auto& name : cycle) cw.g.push_back(sp->gen_index(name));
    require(word_composable(*sp, cw) && word_closed(*sp, cw), errc::bad_input,
            "necklace cycle does not close up");
    w.add_class(cw, c);
  }
  return w;
}

inline Necklace potential_on(std::shared_ptr<const GeneratorSpace> sp, int cap,
                             const PotentialData& data, int min_len = 3) {
  Necklace w = necklace_on(sp, cap, data);
  validate_potential(w, min_len);
  return w;
}

inline PresentedAlgebra relative_jacobian(const IceQuiver& qf, const PotentialData& wdata,
                                          int cap) {
  qf.validate();
  auto sp = std::make_shared<GeneratorSpace>(GeneratorSpace::from_quiver(qf.quiver));
  Necklace w = potential_on(sp, cap, wdata);
  PresentedAlgebra out;
  out.space = sp;
  for (std::size_t i = 0; i < qf.quiver.arrows.size(); ++i) {
    if (qf.arrow_frozen(i)) continue;
    NcSeries rel = cyclic_derivative(w, int(i));
    if (!rel.is_zero()) out.relations.push_back(rel);
  }
  return out;
}

inline PresentedAlgebra jacobian(const GradedQuiver& q, const PotentialData& wdata, int cap) {
  IceQuiver qf;
  qf.quiver = q;
  return relative_jacobian(qf, wdata, cap);
}

struct GinzburgDg {
  std::shared_ptr<DgAlgebra> algebra;
  std::vector<std::pair<int, int>> dual_pairs;  // (alpha, alpha*) in the algebra space
  std::vector<std::pair<int, int>> loops;       // (vertex, t-generator)
  Necklace potential;                           // W transported into the algebra space
};

// relative_ginzburg_quiver accepts only d in {2,3}; the d=1 arrowless case
// is needed for sources of Ginzburg morphisms, hence this wrapper.
inline GradedQuiver relative_ginzburg_quiver_any(const IceQuiver& qf, int d) {
  if (d == 1) {
    require(qf.quiver.arrows.empty() && qf.frozen_arrows.empty() && qf.frozen_vertices.empty(),
            errc::unsupported_dimension, "d = 1 needs an arrowless quiver");
    return ginzburg_quiver_impl(qf.quiver, 1, {}, {});
  }
  return ginzburg_quiver_impl(qf.quiver, d, qf.frozen_arrows, qf.frozen_vertices);
}

// d-dimensional (relative) Ginzburg dg algebra:
//   d(alpha*) = -partial_alpha W, d(t_i) = sum_alpha e_i(alpha alpha* - alpha* alpha)e_i
// over the non-frozen arrows and vertices.
inline GinzburgDg relative_ginzburg_dg(const IceQuiver& qf, const PotentialData& wdata, int d,
                                       int cap) {
  qf.validate();
  require(d == 2 || d == 3 || (d == 1 && qf.quiver.arrows.empty()), errc::unsupported_dimension,
          "d must be 2 or 3 (or 1 for an arrowless quiver)");
  GradedQuiver gq = relative_ginzburg_quiver_any(qf, d);
  auto sp = std::make_shared<GeneratorSpace>(GeneratorSpace::from_quiver(gq));
  GinzburgDg out;
  out.algebra = std::make_shared<DgAlgebra>(sp, cap);
  out.potential = potential_on(sp, cap, wdata);
  for (std::size_t i = 0; i < qf.quiver.arrows.size(); ++i) {
    if (qf.arrow_frozen(i)) continue;
    const auto& a = qf.quiver.arrows[i];
    out.dual_pairs.emplace_back(sp->gen_index(a.name), sp->gen_index(star_name(a.name)));
  }
  for (std::size_t v = 0; v < qf.quiver.vertices.size(); ++v) {
    if (qf.vertex_frozen(int(v))) continue;
    out.loops.emplace_back(int(v), sp->gen_index(loop_name(qf.quiver.vertices[v])));
  }
  for (auto [a, as] : out.dual_pairs)
    out.algebra->set_d(as, cyclic_derivative(out.potential, a).scaled(Rat(-1)));
  for (auto [v, t] : out.loops)
    out.algebra->set_d(t, detail::moment_at_vertex(sp, cap, v, out.dual_pairs));
  return out;
}

inline GinzburgDg ginzburg_dg(const GradedQuiver& q, const PotentialData& wdata, int d, int cap) {
  IceQuiver qf;
  qf.quiver = q;
  return relative_ginzburg_dg(qf, wdata, d, cap);
}

struct GinzburgMorphism {
  GinzburgDg source;  // (d-1)-dimensional Ginzburg dg algebra of (F, 0)
  GinzburgDg target;  // d-dimensional relative Ginzburg dg algebra of (Q, F, W)
  DgMorphism gamma;
};

// Sends e_i to e_i, alpha to alpha, alpha* to partial_alpha W, t_i to the
// moment sum over the non-frozen arrows.
inline GinzburgMorphism ginzburg_morphism(const IceQuiver& qf, const PotentialData& wdata, int d,
                                          int cap) {
  qf.validate();
  require(d == 2 || d == 3, errc::unsupported_dimension, "d must be 2 or 3");
  GradedQuiver f = frozen_subquiver(qf);
  if (d == 2)
    require(f.arrows.empty(), errc::unsupported_dimension,
            "a 2-dimensional Ginzburg morphism needs an arrowless frozen subquiver");

  GinzburgMorphism out;
  out.target = relative_ginzburg_dg(qf, wdata, d, cap);
  out.source = ginzburg_dg(f, {}, d - 1, cap);

  const auto& ssp = out.source.algebra->space_ptr();
  const auto& tsp = out.target.algebra->space_ptr();
  out.gamma = DgMorphism(out.source.algebra, out.target.algebra);
  for (std::size_t v = 0; v < ssp->vertices.size(); ++v)
    out.gamma.map_vertex(int(v), tsp->vertex(ssp->vertices[v]));
  for (std::size_t g = 0; g < ssp->gens.size(); ++g) {
    const auto& gen = ssp->gen(int(g));
    if (gen.name.rfind("t_", 0) == 0) {
      int tv = tsp->vertex(ssp->vertices[std::size_t(gen.src)]);
      out.gamma.set_image(int(g),
                          detail::moment_at_vertex(tsp, cap, tv, out.target.dual_pairs));
    } else if (!gen.name.empty() && gen.name.back() == '*') {
      std::string base = gen.name.substr(0, gen.name.size() - 1);
      out.gamma.set_image(int(g),
                          cyclic_derivative(out.target.potential, tsp->gen_index(base)));
    } else {
      out.gamma.set_image(int(g), series_gen(tsp, cap, tsp->gen_index(gen.name)));
    }
  }
  return out;
}

}  // namespace necklace
