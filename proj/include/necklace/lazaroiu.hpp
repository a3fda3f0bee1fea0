#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "necklace/constructions.hpp"

namespace necklace {

// Input data of a Ginzburg-Lazaroiu morphism. The base l_A is the product of
// one copy of the ground field per vertex; l_B is the frozen part and l_Abar
// the rest. Traces are per-vertex weights. F lives over the frozen vertices,
// N over all of them; eta pairs N, w_A lives on F + N and w_B on F + R with
// R the shifted duals of F.
struct Quintuple {
  std::vector<std::string> vertices;
  std::vector<bool> frozen;
  std::vector<Rat> weights;  // trace weights, one per vertex

  std::vector<Generator> n_gens;
  std::vector<Generator> f_gens;
  std::vector<std::tuple<std::string, std::string, Rat>> eta;  // (u, v, coeff) by name

  PotentialData w_a;  // cycles over F + N generator names
  PotentialData w_b;  // cycles over F + R generator names (R = starred F names)
  int d = 3;
  int cap = 8;
};

// All generator spaces and pairings derived from a quintuple. The ambient
// space carries F + R + N over every vertex; brackets are computed there and
// transported into the two algebra spaces.
struct QuintupleSpaces {
  std::shared_ptr<const GeneratorSpace> ambient;  // F + R + N
  std::shared_ptr<const GeneratorSpace> space_a;  // F + N + t at non-frozen vertices
  std::shared_ptr<const GeneratorSpace> space_b;  // F + R + t at frozen vertices
  Pairing eta_ambient;                            // degree 2-d on N
  Pairing eta_b_ambient;                          // degree 3-d on F + R
  std::vector<std::pair<int, int>> f_dual_pairs;  // (y, y*) in ambient
  Necklace wa_ambient, wb_ambient;
  std::vector<std::pair<int, int>> loops_a;  // (vertex, t-gen) in space_a
  std::vector<std::pair<int, int>> loops_b;  // (vertex, t-gen) in space_b
};

namespace detail {
inline bool has_letter_among(const Word& w, const std::vector<bool>& flag) {
  for (int g : w.g)
    if (flag[std::size_t(g)]) return true;
  return false;
}
}  // namespace detail

inline QuintupleSpaces build_spaces(const Quintuple& q) {
  require(q.vertices.size() == q.frozen.size() && q.vertices.size() == q.weights.size(),
          errc::bad_input, "vertex, frozen and weight lists must align");
  require(q.d >= 2, errc::unsupported_dimension, "d must be at least 2");

  QuintupleSpaces s;

  for (const auto& g : q.f_gens)
    require(q.frozen[std::size_t(g.src)] && q.frozen[std::size_t(g.tgt)], errc::bad_input,
            "frozen generator '" + g.name + "' must join frozen vertices");

  // ambient = F + R + N
  auto amb = std::make_shared<GeneratorSpace>();
  amb->vertices = q.vertices;
  amb->weights = q.weights;
  for (const auto& g : q.f_gens) amb->gens.push_back(g);
  for (const auto& g : q.f_gens)
    amb->gens.push_back({star_name(g.name), g.tgt, g.src, 3 - q.d - g.deg});
  for (const auto& g : q.n_gens) amb->gens.push_back(g);
  amb->validate();
  s.ambient = amb;

  std::size_t nf = q.f_gens.size();
  for (std::size_t i = 0; i < nf; ++i) s.f_dual_pairs.emplace_back(int(i), int(nf + i));

  s.eta_b_ambient = Pairing(amb, 3 - q.d);
  for (std::size_t i = 0; i < nf; ++i) {
    long dy = q.f_gens[i].deg;
    s.eta_b_ambient.set(int(i), int(nf + i), sign_pow(long(q.d - 3) * dy));
    s.eta_b_ambient.set(int(nf + i), int(i), -sign_pow(dy));
  }

  s.eta_ambient = Pairing(amb, 2 - q.d);
  for (const auto& [u, v, c] : q.eta)
    s.eta_ambient.set(amb->gen_index(u), amb->gen_index(v), c);

  s.wa_ambient = necklace_on(amb, q.cap, q.w_a);
  s.wb_ambient = necklace_on(amb, q.cap, q.w_b);

  // algebra spaces
  auto spa = std::make_shared<GeneratorSpace>();
  spa->vertices = q.vertices;
  spa->weights = q.weights;
  for (const auto& g : q.f_gens) spa->gens.push_back(g);
  for (const auto& g : q.n_gens) spa->gens.push_back(g);
  std::vector<std::pair<int, int>> loops_a;
  for (std::size_t v = 0; v < q.vertices.size(); ++v) {
    if (q.frozen[v]) continue;
    loops_a.emplace_back(int(v), int(spa->gens.size()));
    spa->gens.push_back({loop_name(q.vertices[v]), int(v), int(v), 1 - q.d});
  }
  spa->validate();
  s.space_a = spa;
  s.loops_a = loops_a;

  auto spb = std::make_shared<GeneratorSpace>();
  for (std::size_t v = 0; v < q.vertices.size(); ++v)
    if (q.frozen[v]) {
      spb->vertices.push_back(q.vertices[v]);
      spb->weights.push_back(q.weights[v]);
    }
  auto bvx = [&](int amb_v) { return spb->vertex(q.vertices[std::size_t(amb_v)]); };
  for (const auto& g : q.f_gens) spb->gens.push_back({g.name, bvx(g.src), bvx(g.tgt), g.deg});
  for (const auto& g : q.f_gens)
    spb->gens.push_back({star_name(g.name), bvx(g.tgt), bvx(g.src), 3 - q.d - g.deg});
  std::vector<std::pair<int, int>> loops_b;
  for (std::size_t v = 0; v < spb->vertices.size(); ++v) {
    loops_b.emplace_back(int(v), int(spb->gens.size()));
    spb->gens.push_back({loop_name(spb->vertices[v]), int(v), int(v), 2 - q.d});
  }
  spb->validate();
  s.space_b = spb;
  s.loops_b = loops_b;

  return s;
}

// Validates Assumptions a) and b): the degree windows and the pairing.
struct QuintupleBasicsReport {
  bool f_window = true, n_window = true;
  bool eta_antisymmetric = false, eta_nondegenerate = false;
  bool ok() const { return f_window && n_window && eta_antisymmetric && eta_nondegenerate; }
};

inline QuintupleBasicsReport check_quintuple_basics(const Quintuple& q,
                                                    const QuintupleSpaces& s) {
  QuintupleBasicsReport rep;
  for (const auto& g : q.f_gens)
    if (!(2 * g.deg >= 3 - q.d && g.deg <= 0)) rep.f_window = false;
  for (const auto& g : q.n_gens)
    if (!(g.deg >= 2 - q.d && g.deg <= 0)) rep.n_window = false;
  auto pr = check_pairing(s.eta_ambient);
  rep.eta_antisymmetric = pr.antisymmetric;
  rep.eta_nondegenerate = q.n_gens.empty() ? pr.antisymmetric : pr.nondegenerate;
  // eta must pair N only
  for (const auto& [k, c] : s.eta_ambient.coeffs()) {
    std::size_t nf2 = 2 * q.f_gens.size();
    if (std::size_t(k.first) < nf2 || std::size_t(k.second) < nf2) rep.eta_nondegenerate = false;
  }
  return rep;
}

// The three conditions of Assumptions c), stated through the equivalent
// bracket identities, plus the combined kernel condition.
struct QuintupleReport {
  QuintupleBasicsReport basics;
  bool wb_selfbracket = false;   // {w_B, w_B}_{eta_B} = 0
  bool wa_condition = false;     // {w_B,w_A} + 1/2{w_A,w_A} supported on Tr(T F)
  bool r_obstruction = false;    // R-degree-0 part of the full sum supported on Tr(T N)
  bool combined_kernel = false;  // full sum dies under R -> 0
  std::string witness;
  bool ok() const {
    return basics.ok() && wb_selfbracket && wa_condition && r_obstruction && combined_kernel;
  }
};

inline QuintupleReport check_quintuple(const Quintuple& q) {
  auto s = build_spaces(q);
  QuintupleReport rep;
  rep.basics = check_quintuple_basics(q, s);

  std::size_t nf = q.f_gens.size();
  std::vector<bool> is_r(s.ambient->gens.size(), false);
  std::vector<bool> is_n(s.ambient->gens.size(), false);
  for (std::size_t i = nf; i < 2 * nf; ++i) is_r[i] = true;
  for (std::size_t i = 2 * nf; i < s.ambient->gens.size(); ++i) is_n[i] = true;

  Necklace wbwb = necklace_bracket(s.wb_ambient, s.wb_ambient, s.eta_b_ambient);
  rep.wb_selfbracket = wbwb.is_zero();
  if (!rep.wb_selfbracket) rep.witness = "{w_B,w_B} = " + necklace_str(wbwb);

  Necklace cross = necklace_bracket(s.wb_ambient, s.wa_ambient, s.eta_b_ambient) +
                   necklace_bracket(s.wa_ambient, s.wa_ambient, s.eta_ambient).scaled(rat(1, 2));

  // image under R -> 0 keeps exactly the words without R-letters
  auto r_free = [&](const Necklace& n) {
    Necklace out(s.ambient, q.cap);
    for (const auto& [w, c] : n.terms())
      if (!detail::has_letter_among(w, is_r)) out.add_class(w, c);
    return out;
  };

  Necklace cross_rfree = r_free(cross);
  bool wa_ok = true;
  for (const auto& [w, c] : cross_rfree.terms())
    if (detail::has_letter_among(w, is_n)) wa_ok = false;
  rep.wa_condition = wa_ok;
  if (!wa_ok && rep.witness.empty())
    rep.witness = "{w_B,w_A}+(1/2){w_A,w_A} escapes Tr(T F): " + necklace_str(cross_rfree);

  Necklace full = s.wb_ambient + cross;
  Necklace full_rfree = r_free(full);
  bool r_ok = true;
  for (const auto& [w, c] : full_rfree.terms())
    for (int g : w.g)
      if (!is_n[std::size_t(g)]) r_ok = false;
  rep.r_obstruction = r_ok;
  rep.combined_kernel = full_rfree.is_zero();
  if (!rep.combined_kernel && rep.witness.empty())
    rep.witness = "kernel condition fails: " + necklace_str(full_rfree);
  return rep;
}

struct GinzburgLazaroiu {
  Quintuple quintuple;
  QuintupleSpaces spaces;
  std::shared_ptr<DgAlgebra> b, a;
  DgMorphism gamma;
};

namespace detail {

inline NcSeries restrict_support(const NcSeries& x, std::shared_ptr<const GeneratorSpace> target,
                                 const char* what) {
  // every generator appearing in x must exist in the target space
  for (const auto& [w, c] : x.terms())
    for (int g : w.g) {
      const auto& name = x.space().gen(g).name;
      bool found = false;
      for (const auto& tg : target->gens) found = found || tg.name == name;
      require(found, errc::quintuple_invalid,
              std::string(what) + " leaves the expected subalgebra at '" + name + "'");
    }
  return transport(x, target);
}

}  // namespace detail

// The Ginzburg-Lazaroiu morphism gamma: (T_{l_B}(F+R+z_B l_B), d) ->
// (T_{l_A}(F+N+z_A l_Abar), d). z-generators appear as the loops t_v with
// d(z_B) = sigma_B' eta_B sigma_B'' and d(z_A) = sigma_Abar' eta sigma_Abar''.
inline GinzburgLazaroiu ginzburg_lazaroiu(const Quintuple& q, bool validate = true) {
  GinzburgLazaroiu out;
  out.quintuple = q;
  out.spaces = build_spaces(q);
  auto& s = out.spaces;

  if (validate) {
    auto rep = check_quintuple(q);
    require(rep.basics.f_window && rep.basics.n_window, errc::quintuple_invalid,
            "degree windows violated");
    require(rep.basics.eta_antisymmetric && rep.basics.eta_nondegenerate,
            errc::quintuple_invalid, "eta fails the pairing checks");
    require(rep.wb_selfbracket, errc::quintuple_invalid, "{w_B,w_B} != 0");
    require(rep.wa_condition, errc::quintuple_invalid,
            "{w_B,w_A}+(1/2){w_A,w_A} escapes Tr(T F)");
    require(rep.r_obstruction && rep.combined_kernel, errc::quintuple_invalid,
            "kernel condition of the quintuple fails");
  }

  out.b = std::make_shared<DgAlgebra>(s.space_b, q.cap);
  out.a = std::make_shared<DgAlgebra>(s.space_a, q.cap);

  // B side: d(v) = {w_B, v}_{eta_B} on F + R, d(z_B e_v) = (1/w_v) e_v eta_B e_v
  for (std::size_t i = 0; i < 2 * q.f_gens.size(); ++i) {
    NcSeries img = single_bracket(s.wb_ambient, series_gen(s.ambient, q.cap, int(i)),
                                  s.eta_b_ambient);
    out.b->set_d(s.space_b->gen_index(s.ambient->gen(int(i)).name),
                 detail::restrict_support(img, s.space_b, "d on F+R"));
  }
  NcSeries etab_elem = pairing_series(s.eta_b_ambient, q.cap);
  for (auto [v, t] : s.loops_b) {
    int amb_v = s.ambient->vertex(s.space_b->vertices[std::size_t(v)]);
    NcSeries img = (series_idem(s.ambient, q.cap, amb_v) * etab_elem *
                    series_idem(s.ambient, q.cap, amb_v))
                       .scaled(1 / s.space_b->weights[std::size_t(v)]);
    out.b->set_d(t, detail::restrict_support(img, s.space_b, "d(z_B)"));
  }

  // A side: d(v) = {w_B, v}_{eta_B} on F, d(v) = {w_A, v}_{eta} on N,
  // d(z_A e_v) = (1/w_v) e_v eta e_v
  std::size_t nf = q.f_gens.size();
  for (std::size_t i = 0; i < nf; ++i) {
    NcSeries img = single_bracket(s.wb_ambient, series_gen(s.ambient, q.cap, int(i)),
                                  s.eta_b_ambient);
    out.a->set_d(s.space_a->gen_index(q.f_gens[i].name),
                 detail::restrict_support(img, s.space_a, "d on F"));
  }
  for (const auto& g : q.n_gens) {
    int amb_g = s.ambient->gen_index(g.name);
    NcSeries img = single_bracket(s.wa_ambient, series_gen(s.ambient, q.cap, amb_g),
                                  s.eta_ambient);
    out.a->set_d(s.space_a->gen_index(g.name),
                 detail::restrict_support(img, s.space_a, "d on N"));
  }
  NcSeries eta_elem = pairing_series(s.eta_ambient, q.cap);
  for (auto [v, t] : s.loops_a) {
    NcSeries img = (series_idem(s.ambient, q.cap, v) * eta_elem *
                    series_idem(s.ambient, q.cap, v))
                       .scaled(1 / q.weights[std::size_t(v)]);
    out.a->set_d(t, detail::restrict_support(img, s.space_a, "d(z_A)"));
  }

  // gamma: v -> v on F, v -> -{w_A, v}_{eta_B} on R, z_B e_v -> (1/w_v) e_v eta e_v
  out.gamma = DgMorphism(out.b, out.a);
  for (std::size_t v = 0; v < s.space_b->vertices.size(); ++v)
    out.gamma.map_vertex(int(v), s.space_a->vertex(s.space_b->vertices[v]));
  for (std::size_t i = 0; i < nf; ++i)
    out.gamma.set_image(s.space_b->gen_index(q.f_gens[i].name),
                        series_gen(s.space_a, q.cap, s.space_a->gen_index(q.f_gens[i].name)));
  for (std::size_t i = 0; i < nf; ++i) {
    NcSeries img = single_bracket(s.wa_ambient, series_gen(s.ambient, q.cap, int(nf + i)),
                                  s.eta_b_ambient)
                       .scaled(rat(-1));
    out.gamma.set_image(s.space_b->gen_index(star_name(q.f_gens[i].name)),
                        detail::restrict_support(img, s.space_a, "gamma on R"));
  }
  for (auto [v, t] : s.loops_b) {
    int amb_v = s.ambient->vertex(s.space_b->vertices[std::size_t(v)]);
    NcSeries img = (series_idem(s.ambient, q.cap, amb_v) * eta_elem *
                    series_idem(s.ambient, q.cap, amb_v))
                       .scaled(1 / s.space_b->weights[std::size_t(v)]);
    out.gamma.set_image(t, detail::restrict_support(img, s.space_a, "gamma(z_B)"));
  }
  return out;
}

// The quintuple of an ice quiver with potential: N = doubled non-frozen
// arrows, F = frozen arrows, eta = sum [alpha, alpha*], w_A = W, w_B = 0,
// sigma = sum e_i (x) e_i.
inline Quintuple ice_quiver_quintuple(const IceQuiver& qf, const PotentialData& wdata, int d,
                                      int cap) {
  qf.validate();
  require(qf.quiver.all_degree_zero(), errc::bad_input, "ice quivers sit in degree 0");
  Quintuple q;
  q.vertices = qf.quiver.vertices;
  q.frozen.assign(q.vertices.size(), false);
  for (int v : qf.frozen_vertices) q.frozen[std::size_t(v)] = true;
  q.weights.assign(q.vertices.size(), Rat(1));
  q.d = d;
  q.cap = cap;
  for (std::size_t i = 0; i < qf.quiver.arrows.size(); ++i) {
    const auto& a = qf.quiver.arrows[i];
    if (qf.arrow_frozen(i)) {
      q.f_gens.push_back({a.name, a.src, a.tgt, 0});
    } else {
      q.n_gens.push_back({a.name, a.src, a.tgt, 0});
      q.n_gens.push_back({star_name(a.name), a.tgt, a.src, 2 - d});
      q.eta.emplace_back(a.name, star_name(a.name), rat(1));
      q.eta.emplace_back(star_name(a.name), a.name, -sign_pow(0));
    }
  }
  q.w_a = wdata;
  return q;
}

}  // namespace necklace
