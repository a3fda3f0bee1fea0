#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "necklace/lazaroiu.hpp"

namespace necklace {

// Element of (Omega^1_l A)_natural in the reduced basis a.Dg: a word a from
// t(g) to s(g) and a generator g. D kills lazy paths.
class OmegaNat {
public:
  OmegaNat() = default;
  OmegaNat(std::shared_ptr<const GeneratorSpace> sp, int cap) : sp_(std::move(sp)), cap_(cap) {}

  const std::shared_ptr<const GeneratorSpace>& space_ptr() const { return sp_; }
  const GeneratorSpace& space() const { return *sp_; }
  int cap() const { return cap_; }
  const std::map<std::pair<Word, int>, Rat>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  void add_term(const Word& w, int g, const Rat& c) {
    if (necklace::is_zero(c)) return;
    if (int(w.size()) + 1 > cap_) return;
    require(word_tgt(*sp_, w) == sp_->gen(g).src && word_src(*sp_, w) == sp_->gen(g).tgt,
            errc::bad_input, "a.Dg needs a path a: t(g) -> s(g)");
    auto key = std::make_pair(w, g);
    t_[key] += c;
    if (necklace::is_zero(t_[key])) t_.erase(key);
  }

  OmegaNat operator+(const OmegaNat& o) const {
    OmegaNat r(sp_, std::min(cap_, o.cap_));
    for (const auto& [k, c] : t_) r.add_term(k.first, k.second, c);
    for (const auto& [k, c] : o.t_) r.add_term(k.first, k.second, c);
    return r;
  }
  OmegaNat scaled(const Rat& c) const {
    OmegaNat r(sp_, cap_);
    for (const auto& [k, x] : t_) r.add_term(k.first, k.second, x * c);
    return r;
  }
  OmegaNat operator-(const OmegaNat& o) const { return *this + o.scaled(Rat(-1)); }
  bool operator==(const OmegaNat& o) const { return t_ == o.t_; }

  int term_degree(const std::pair<Word, int>& k) const {
    return word_deg(*sp_, k.first) + sp_->gen(k.second).deg;
  }

private:
  std::shared_ptr<const GeneratorSpace> sp_;
  int cap_ = 1;
  std::map<std::pair<Word, int>, Rat> t_;
};

inline std::string omega_str(const OmegaNat& o) {
  if (o.is_zero()) return "0";
  std::string s;
  for (const auto& [k, c] : o.terms()) {
    if (!s.empty()) s += " + ";
    s += rat_str(c) + "*" + word_str(o.space(), k.first) + ".D" + o.space().gen(k.second).name;
  }
  return s;
}

// Quotient map A -> (A/l)_l: drops lazy paths and non-closed words.
inline NcSeries project_al(const NcSeries& s) {
  NcSeries out(s.space_ptr(), s.cap());
  for (const auto& [w, c] : s.terms()) {
    if (w.empty()) continue;
    if (!word_closed(s.space(), w)) continue;
    out.add_term(w, c);
  }
  return out;
}

// partial_0: sends the class of a closed word to the class of its D-image,
//   x_1..x_p |-> sum_i (-1)^{S_i(P_i+|x_i|)} (x_{i+1}..x_p x_1..x_{i-1}).Dx_i.
// Defined on (A/l)_l, i.e. on series of closed words; it also descends to
// the necklace quotient.
inline OmegaNat partial0(const NcSeries& x) {
  OmegaNat out(x.space_ptr(), x.cap());
  const auto& sp = x.space();
  for (const auto& [w, c] : project_al(x).terms()) {
    long total = word_deg(sp, w);
    long prefix = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      long xdeg = sp.gen(w.g[i]).deg;
      long suffix = total - prefix - xdeg;
      Word wrap;
      if (w.size() == 1) {
        wrap = empty_word(sp.gen(w.g[i]).tgt);
      } else {
        wrap.g.insert(wrap.g.end(), w.g.begin() + long(i + 1), w.g.end());
        wrap.g.insert(wrap.g.end(), w.g.begin(), w.g.begin() + long(i));
      }
      out.add_term(wrap, w.g[i], c * sign_pow(suffix * (prefix + xdeg)));
      prefix += xdeg;
    }
  }
  return out;
}

inline OmegaNat partial0(const Necklace& n) {
  OmegaNat out(n.space_ptr(), n.cap());
  const auto& sp = n.space();
  for (const auto& [w, c] : n.terms()) {
    long total = word_deg(sp, w);
    long prefix = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      long xdeg = sp.gen(w.g[i]).deg;
      long suffix = total - prefix - xdeg;
      Word wrap;
      if (w.size() == 1) {
        wrap = empty_word(sp.gen(w.g[i]).tgt);
      } else {
        wrap.g.insert(wrap.g.end(), w.g.begin() + long(i + 1), w.g.end());
        wrap.g.insert(wrap.g.end(), w.g.begin(), w.g.begin() + long(i));
      }
      out.add_term(wrap, w.g[i], c * sign_pow(suffix * (prefix + xdeg)));
      prefix += xdeg;
    }
  }
  return out;
}

// partial_1: a.Dg |-> class of [a, g] in (A/l)_l.
inline NcSeries partial1(const OmegaNat& o) {
  NcSeries out(o.space_ptr(), o.cap());
  const auto& sp = o.space();
  for (const auto& [k, c] : o.terms()) {
    NcSeries a = series_word(o.space_ptr(), o.cap(), k.first);
    NcSeries g = series_gen(o.space_ptr(), o.cap(), k.second);
    out = out + project_al(graded_commutator(a, g)).scaled(c);
  }
  return out;
}

// Differential induced on (A/l)_l and on (Omega^1 A)_natural.
inline NcSeries al_d(const DgAlgebra& a, const NcSeries& x) { return project_al(a.apply_d(x)); }

inline Necklace tr_d(const DgAlgebra& a, const Necklace& n) {
  return trace_project(a.apply_d(n.representative()));
}

inline OmegaNat omega_d(const DgAlgebra& alg, const OmegaNat& o) {
  OmegaNat out(o.space_ptr(), o.cap());
  const auto& sp = o.space();
  for (const auto& [k, c] : o.terms()) {
    const auto& [w, g] = k;
    // d(w).Dg
    NcSeries dw = alg.apply_d(series_word(o.space_ptr(), o.cap(), w));
    for (const auto& [w2, c2] : dw.terms()) out.add_term(w2, g, c * c2);
    // (-1)^{|w|} w.D(d(g)), normalised back to the a.Dg basis
    const NcSeries& dg = alg.d_gen(g);
    long wdeg = word_deg(sp, w);
    for (const auto& [u, cu] : dg.terms()) {
      long pre = 0;
      long utot = word_deg(sp, u);
      for (std::size_t j = 0; j < u.size(); ++j) {
        long ud = sp.gen(u.g[j]).deg;
        long suf = utot - pre - ud;
        // w u_< (Du_j) u_>  ~  (u_> w u_<).Du_j
        Word front;
        front.g.insert(front.g.end(), u.g.begin() + long(j + 1), u.g.end());
        front.g.insert(front.g.end(), w.g.begin(), w.g.end());
        front.g.insert(front.g.end(), u.g.begin(), u.g.begin() + long(j));
        if (front.g.empty()) front = empty_word(sp.gen(u.g[j]).tgt);
        Rat sign = sign_pow(wdeg + suf * (wdeg + pre + ud));
        out.add_term(front, u.g[j], c * cu * sign);
        pre += ud;
      }
    }
  }
  return out;
}

struct HomologyResult {
  int dim = 0;
  int sound_length = 0;                // lengths where the count is cap-independent
  std::vector<std::string> basis;      // representatives of a homology basis
};

namespace detail {

inline void check_cap_feasible(const DgAlgebra& a, int n, int cap) {
  require(cap <= a.cap(), errc::cap_insufficient, "requested cap exceeds the algebra cap");
  if (a.max_image_len() > 0)
    require(a.min_image_len() >= 1, errc::cap_insufficient,
            "differential shortens words; truncation would be unsound");
  int worst = 0;
  for (const auto& g : a.space().gens) worst = std::min(worst, g.deg);
  // when some negative degree exists, degree -n needs at least n/|worst|
  // letters; if that exceeds the cap the component is invisible here
  if (n > 0 && worst < 0) {
    int min_len = (n + (-worst) - 1) / (-worst);
    require(min_len <= cap, errc::cap_insufficient,
            "degree -" + std::to_string(n) + " first appears at word length " +
                std::to_string(min_len));
  }
}

}  // namespace detail

// Reduced cyclic homology in degree -n: the homology of the necklace
// quotient complex (A/(l+[A,A]))_l, truncated at word length <= cap. The
// truncation is a quotient complex because the differentials never shorten
// a word.
inline HomologyResult hc_red(const DgAlgebra& a, int n, int cap) {
  detail::check_cap_feasible(a, n, cap);
  auto sp = a.space_ptr();

  auto necklace_basis = [&](int deg) {
    std::vector<Word> out;
    for (int l = 1; l <= cap; ++l)
      for (const auto& w : enumerate_words(*sp, l)) {
        if (!word_closed(*sp, w) || word_deg(*sp, w) != deg) continue;
        auto can = canonical_rotation(*sp, w);
        if (can && can->first == w && can->second == 1) out.push_back(w);
      }
    return out;
  };

  auto basis_n = necklace_basis(-n);
  auto basis_below = necklace_basis(-n - 1);
  auto basis_above = necklace_basis(-n + 1);

  auto coords = [&](const Necklace& x, const std::vector<Word>& basis) {
    std::vector<Rat> v(basis.size(), Rat(0));
    for (const auto& [w, c] : x.terms()) {
      auto it = std::lower_bound(basis.begin(), basis.end(), w);
      if (it != basis.end() && *it == w) v[std::size_t(it - basis.begin())] = c;
      // anything beyond the cap was already dropped by the quotient
    }
    return v;
  };

  // kernel of the induced differential on degree -n
  std::vector<std::vector<Rat>> rows;
  for (const auto& w : basis_n)
    rows.push_back(coords(tr_d(a, necklace_of(sp, cap, w)), basis_above));
  std::size_t rank_out = span_rank(rows);

  std::vector<std::vector<Rat>> img;
  for (const auto& w : basis_below)
    img.push_back(coords(tr_d(a, necklace_of(sp, cap, w)), basis_n));
  std::size_t rank_in = span_rank(img);

  HomologyResult res;
  res.dim = int(basis_n.size()) - int(rank_out) - int(rank_in);
  res.sound_length = a.max_image_len() > 1 ? cap - (a.max_image_len() - 1) : cap;
  for (const auto& w : basis_n) res.basis.push_back(word_str(*sp, w));
  if (int(res.basis.size()) > res.dim) res.basis.resize(std::size_t(std::max(res.dim, 0)));
  return res;
}

// Reduced Hochschild homology in degree -n via the two-column complex
// cone(partial_1: (Omega^1_l A)_nat -> (A/l)_l), same truncation policy.
inline HomologyResult hh_red(const DgAlgebra& a, int n, int cap) {
  detail::check_cap_feasible(a, n, cap);
  auto sp = a.space_ptr();

  struct Basis {
    std::vector<Word> al;                      // closed words, the (A/l)_l part
    std::vector<std::pair<Word, int>> omega;   // a.Dg pairs of one degree higher
  };
  auto cone_basis = [&](int deg) {
    Basis b;
    for (int l = 1; l <= cap; ++l)
      for (const auto& w : enumerate_words(*sp, l))
        if (word_closed(*sp, w) && word_deg(*sp, w) == deg) b.al.push_back(w);
    for (int l = 0; l + 1 <= cap; ++l)
      for (const auto& w : enumerate_words(*sp, l))
        for (std::size_t g = 0; g < sp->gens.size(); ++g) {
          if (word_tgt(*sp, w) != sp->gen(int(g)).src || word_src(*sp, w) != sp->gen(int(g)).tgt)
            continue;
          if (word_deg(*sp, w) + sp->gen(int(g)).deg != deg + 1) continue;
          b.omega.emplace_back(w, int(g));
        }
    return b;
  };

  auto coords = [&](const NcSeries& y, const OmegaNat& x, const Basis& b) {
    std::vector<Rat> v(b.al.size() + b.omega.size(), Rat(0));
    for (const auto& [w, c] : y.terms()) {
      auto it = std::lower_bound(b.al.begin(), b.al.end(), w);
      if (it != b.al.end() && *it == w) v[std::size_t(it - b.al.begin())] = c;
    }
    for (const auto& [k, c] : x.terms()) {
      auto it = std::lower_bound(b.omega.begin(), b.omega.end(), k);
      if (it != b.omega.end() && *it == k) v[b.al.size() + std::size_t(it - b.omega.begin())] = c;
    }
    return v;
  };

  // D(y, x) = (al_d(y) + partial1(x), -omega_d(x))
  auto apply_D = [&](const NcSeries& y, const OmegaNat& x) {
    NcSeries ny = al_d(a, y) + partial1(x);
    OmegaNat nx = omega_d(a, x).scaled(rat(-1));
    return std::make_pair(ny, nx);
  };

  Basis bn = cone_basis(-n);
  Basis bup = cone_basis(-n + 1);
  Basis bdown = cone_basis(-n - 1);
  std::sort(bn.al.begin(), bn.al.end());
  std::sort(bn.omega.begin(), bn.omega.end());
  std::sort(bup.al.begin(), bup.al.end());
  std::sort(bup.omega.begin(), bup.omega.end());
  std::sort(bdown.al.begin(), bdown.al.end());
  std::sort(bdown.omega.begin(), bdown.omega.end());

  auto matrix_rows = [&](const Basis& from, const Basis& to) {
    std::vector<std::vector<Rat>> rows;
    for (const auto& w : from.al) {
      NcSeries y = series_word(sp, cap, w);
      OmegaNat x(sp, cap);
      auto [ny, nx] = apply_D(y, x);
      rows.push_back(coords(ny, nx, to));
    }
    for (const auto& [w, g] : from.omega) {
      NcSeries y(sp, cap);
      OmegaNat x(sp, cap);
      x.add_term(w, g, rat(1));
      auto [ny, nx] = apply_D(y, x);
      rows.push_back(coords(ny, nx, to));
    }
    return rows;
  };

  std::size_t rank_out = span_rank(matrix_rows(bn, bup));
  std::size_t rank_in = span_rank(matrix_rows(bdown, bn));

  HomologyResult res;
  res.dim = int(bn.al.size() + bn.omega.size()) - int(rank_out) - int(rank_in);
  res.sound_length = a.max_image_len() > 1 ? cap - (a.max_image_len() - 1) : cap;
  for (const auto& w : bn.al) res.basis.push_back(word_str(*sp, w));
  for (const auto& [w, g] : bn.omega)
    res.basis.push_back(word_str(*sp, w) + ".D" + sp->gen(g).name);
  if (int(res.basis.size()) > res.dim) res.basis.resize(std::size_t(std::max(res.dim, 0)));
  return res;
}

// A class of the cone complex: (al part, omega part).
struct ConeClass {
  NcSeries al_part;
  OmegaNat om_part;
};

// Connes connecting map on the quotient complex: c |-> (0, -partial0(c)).
inline ConeClass connes_B(const DgAlgebra& a, const Necklace& c) {
  require(tr_d(a, c).is_zero(), errc::not_closed,
          "input class is not closed in the quotient complex");
  ConeClass out;
  out.al_part = NcSeries(c.space_ptr(), c.cap());
  out.om_part = partial0(c).scaled(rat(-1));
  return out;
}

struct WitnessReport {
  Necklace z_a_dag, z_b_dag;
  bool closed_b = false;       // d(z_B^dag) dies in (B/(l_B+[B,B]))_{l_B}
  bool closed_relative = false;  // d(z_A^dag) + gamma(z_B^dag) dies on the A side
  bool eta_b_antisymmetric = false;
  bool eta_antisymmetric = false;
  bool ok() const {
    return closed_b && closed_relative && eta_b_antisymmetric && eta_antisymmetric;
  }
};

namespace detail {

// Recovers pairing coefficients from the quadratic parts of the loop
// differentials: c_{uv} = w_{s(u)} * [uv](d(z e_{s(u)})).
inline Pairing pairing_from_loops(const DgAlgebra& alg,
                                  const std::vector<std::pair<int, int>>& loops,
                                  const std::vector<Rat>& weights, int degree) {
  auto sp = alg.space_ptr();
  Pairing p(sp, degree);
  for (auto [v, t] : loops) {
    const NcSeries& dz = alg.d_gen(t);
    for (const auto& [w, c] : dz.terms()) {
      if (w.size() != 2) continue;
      p.set(w.g[0], w.g[1], c * weights[std::size_t(v)]);
    }
  }
  return p;
}

}  // namespace detail

// The canonical witness pair (z_A^dag, s z_B^dag) of a Ginzburg-Lazaroiu
// morphism: closedness of the relative class and graded anti-symmetry of the
// recovered pairings, everything up to the cap.
inline WitnessReport witness_class(const GinzburgLazaroiu& gl) {
  const auto& s = gl.spaces;
  const auto& q = gl.quintuple;
  WitnessReport rep;

  rep.z_b_dag = Necklace(s.space_b, q.cap);
  for (auto [v, t] : s.loops_b)
    rep.z_b_dag.add_class(word_of({t}), s.space_b->weights[std::size_t(v)]);
  rep.z_a_dag = Necklace(s.space_a, q.cap);
  for (auto [v, t] : s.loops_a) rep.z_a_dag.add_class(word_of({t}), q.weights[std::size_t(v)]);

  NcSeries dzb = gl.b->apply_d(rep.z_b_dag.representative());
  rep.closed_b = trace_project(dzb).is_zero() &&
                 membership(dzb, subspace_kind::l_plus_commutators).member;

  NcSeries rel = gl.a->apply_d(rep.z_a_dag.representative()) +
                 gl.gamma.apply(rep.z_b_dag.representative());
  rep.closed_relative = trace_project(rel).is_zero() &&
                        membership(rel, subspace_kind::l_plus_commutators).member;

  Pairing etab = detail::pairing_from_loops(*gl.b, s.loops_b, s.space_b->weights, 3 - q.d);
  rep.eta_b_antisymmetric = etab.antisymmetric();

  // d(z_A) + gamma(z_B) recovers eta on N (x) N: the vertex block of a
  // non-frozen vertex sits in d(z_A e_v), that of a frozen vertex in
  // gamma(z_B e_v); only the quadratic shadow is checked.
  auto spa = gl.a->space_ptr();
  Pairing eta(spa, 2 - q.d);
  bool eta_ok = true;
  auto absorb = [&](const NcSeries& x, const Rat& weight) {
    for (const auto& [w, c] : x.terms()) {
      if (w.size() != 2) continue;
      try {
        eta.set(w.g[0], w.g[1], c * weight);
      } catch (const error&) {
        eta_ok = false;
      }
    }
  };
  for (auto [v, t] : s.loops_a) absorb(gl.a->d_gen(t), q.weights[std::size_t(v)]);
  for (auto [v, t] : s.loops_b)
    absorb(gl.gamma.image(t), s.space_b->weights[std::size_t(v)]);
  rep.eta_antisymmetric = eta_ok && eta.antisymmetric();
  return rep;
}

struct CyGeneratorReport {
  int model_dim = 0;      // dim of Sigma^{-1} l_B + V_B
  int kernel_dim = 0;
  bool half_dimensional = false;
  bool degree_window = false;  // every kernel degree <= (3-d)/2
  bool isotropic = false;
  std::vector<std::string> kernel_basis;
  bool ok() const { return half_dimensional && degree_window && isotropic; }
};

// Generator-level criteria on the kernel of the linearised morphism
// Sigma^{-1} l_B + V_B -> Sigma^{-1} l_A + V_A: half dimension, degrees
// <= (3-d)/2, and isotropy for (eta_B)_2 together with the coupling
// <s^{-1} b, z_B b'> = tr_B(b b').
inline CyGeneratorReport cy_generator_check(const GinzburgLazaroiu& gl) {
  const auto& s = gl.spaces;
  const auto& q = gl.quintuple;

  // normal form: no linear part in either differential
  for (const auto* alg : {gl.b.get(), gl.a.get()})
    for (std::size_t g = 0; g < alg->space().gens.size(); ++g)
      for (const auto& [w, c] : alg->d_gen(int(g)).terms())
        require(w.size() != 1, errc::not_normal_form,
                "differential has a linear part on '" + alg->space().gen(int(g)).name + "'");

  auto spb = s.space_b;
  auto spa = s.space_a;

  // model basis: s^{-1}e_v (degree 1) then the V_B generators
  struct ModelElem {
    bool is_shift;  // s^{-1} l_B part
    int index;      // vertex or generator index
    int deg;
  };
  std::vector<ModelElem> model;
  for (std::size_t v = 0; v < spb->vertices.size(); ++v) model.push_back({true, int(v), 1});
  for (std::size_t g = 0; g < spb->gens.size(); ++g)
    model.push_back({false, int(g), spb->gen(int(g)).deg});

  // target coordinates: s^{-1}e_v of l_A, then the V_A generators
  std::size_t ta_offset = spa->vertices.size();
  std::size_t target_dim = ta_offset + spa->gens.size();
  std::vector<std::vector<Rat>> rows;
  for (const auto& m : model) {
    std::vector<Rat> row(target_dim, Rat(0));
    if (m.is_shift) {
      row[std::size_t(spa->vertex(spb->vertices[std::size_t(m.index)]))] = 1;
    } else {
      const NcSeries& img = gl.gamma.image(m.index);
      for (const auto& [w, c] : img.terms())
        if (w.size() == 1) row[ta_offset + std::size_t(w.g[0])] = c;
    }
    rows.push_back(std::move(row));
  }

  Mat mat(model.size(), target_dim);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < target_dim; ++j) mat(i, j) = rows[i][j];
  auto kernel = mat.transposed().kernel_basis();

  CyGeneratorReport rep;
  rep.model_dim = int(model.size());
  rep.kernel_dim = int(kernel.size());
  rep.half_dimensional = 2 * rep.kernel_dim == rep.model_dim;

  rep.degree_window = true;
  for (const auto& vec : kernel) {
    std::string desc;
    for (std::size_t i = 0; i < model.size(); ++i) {
      if (is_zero(vec[i])) continue;
      if (2 * model[i].deg > 3 - q.d) rep.degree_window = false;
      if (!desc.empty()) desc += " + ";
      desc += rat_str(vec[i]) + "*" +
              (model[i].is_shift ? "s^-1(e_" + spb->vertices[std::size_t(model[i].index)] + ")"
                                 : spb->gen(model[i].index).name);
    }
    rep.kernel_basis.push_back(desc);
  }

  // quadratic symplectic data: (eta_B)_2 on V_B plus the shift/z coupling
  Pairing etab = detail::pairing_from_loops(*gl.b, s.loops_b, spb->weights, 3 - q.d);
  auto form = [&](const ModelElem& x, const ModelElem& y) -> Rat {
    if (!x.is_shift && !y.is_shift) {
      auto it = etab.coeffs().find({x.index, y.index});
      return it == etab.coeffs().end() ? Rat(0) : it->second;
    }
    auto coupled = [&](const ModelElem& sh, const ModelElem& gen) -> Rat {
      // <s^{-1}e_v, z_B e_v> = tr_B(e_v e_v) = w_v on the matching loop
      for (auto [v, t] : s.loops_b)
        if (gen.index == t && v == sh.index) return spb->weights[std::size_t(v)];
      return Rat(0);
    };
    if (x.is_shift && !y.is_shift) return coupled(x, y);
    if (!x.is_shift && y.is_shift) return -coupled(y, x);
    return Rat(0);
  };

  rep.isotropic = true;
  for (const auto& u : kernel)
    for (const auto& v : kernel) {
      Rat acc(0);
      for (std::size_t i = 0; i < model.size(); ++i) {
        if (is_zero(u[i])) continue;
        for (std::size_t j = 0; j < model.size(); ++j) {
          if (is_zero(v[j])) continue;
          acc += u[i] * v[j] * form(model[i], model[j]);
        }
      }
      if (!is_zero(acc)) rep.isotropic = false;
    }
  return rep;
}

}  // namespace necklace
