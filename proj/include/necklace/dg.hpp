#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "necklace/linalg.hpp"
#include "necklace/series.hpp"

namespace necklace {

// Differential of a truncated tensor dg algebra, given on generators and
// extended by the graded Leibniz rule. d vanishes on lazy paths and raises
// the internal degree by exactly 1 on every generator.
class DgAlgebra {
public:
  DgAlgebra() = default;
  DgAlgebra(std::shared_ptr<const GeneratorSpace> sp, int cap)
      : sp_(std::move(sp)), cap_(cap), d_(sp_->gens.size()) {
    for (auto& s : d_) s = NcSeries(sp_, cap_);
  }

  const std::shared_ptr<const GeneratorSpace>& space_ptr() const { return sp_; }
  const GeneratorSpace& space() const { return *sp_; }
  int cap() const { return cap_; }

  void set_d(int gen, const NcSeries& image) {
    image.check_space(NcSeries(sp_, cap_));
    const auto& g = sp_->gen(gen);
    for (const auto& [w, c] : image.terms()) {
      require(word_deg(*sp_, w) == g.deg + 1, errc::bad_input,
              "d must raise degree by 1 on '" + g.name + "'");
      require(word_src(*sp_, w) == g.src && word_tgt(*sp_, w) == g.tgt, errc::bad_input,
              "d image of '" + g.name + "' has wrong endpoints");
    }
    d_[std::size_t(gen)] = image;
  }

  const NcSeries& d_gen(int gen) const { return d_[std::size_t(gen)]; }

  // Smallest word length appearing in any nonzero generator image; the
  // effective-cap bookkeeping rests on it. Differentials never shorten a
  // word when this is >= 1, which holds for every algebra built here.
  int min_image_len() const {
    int m = std::numeric_limits<int>::max();
    for (const auto& s : d_)
      for (const auto& [w, c] : s.terms()) m = std::min<int>(m, int(w.size()));
    return m;
  }
  int max_image_len() const {
    int m = 0;
    for (const auto& s : d_)
      for (const auto& [w, c] : s.terms()) m = std::max<int>(m, int(w.size()));
    return m;
  }

  // Graded Leibniz extension: d(x1...xn) = sum (-1)^{|x1..x_{i-1}|} x< d(xi) x>.
  NcSeries apply_d(const NcSeries& x) const {
    x.check_space(NcSeries(sp_, cap_));
    NcSeries out(sp_, std::min(cap_, x.cap()));
    for (const auto& [w, c] : x.terms()) {
      int prefix_deg = 0;
      for (std::size_t i = 0; i < w.g.size(); ++i) {
        const NcSeries& dgi = d_[std::size_t(w.g[i])];
        if (!dgi.is_zero()) {
          Rat sign = (prefix_deg % 2 != 0) ? Rat(-1) : Rat(1);
          NcSeries pre = series_word(sp_, out.cap(),
                                     Word{std::vector<int>(w.g.begin(), w.g.begin() + long(i)),
                                          sp_->gen(w.g[i]).src});
          NcSeries post = series_word(sp_, out.cap(),
                                      Word{std::vector<int>(w.g.begin() + long(i + 1), w.g.end()),
                                           sp_->gen(w.g[i]).tgt});
          out = out + (pre * dgi * post).scaled(c * sign);
        }
        prefix_deg += sp_->gen(w.g[i]).deg;
      }
    }
    return out;
  }

  // Largest length through which apply_d output is exact, given the input
  // is exact through exact_in.
  int effective_cap(int exact_in) const {
    int m = min_image_len();
    if (m == std::numeric_limits<int>::max()) return cap_;  // zero differential
    return std::min(cap_, exact_in - 1 + m);
  }

private:
  std::shared_ptr<const GeneratorSpace> sp_;
  int cap_ = 1;
  std::vector<NcSeries> d_;
};

struct GenCheckItem {
  std::string gen;
  NcSeries residual;
  int effective_cap = 0;
};

struct GenCheckReport {
  std::vector<GenCheckItem> items;
  bool all_zero = true;
};

inline GenCheckReport check_d_squared(const DgAlgebra& a) {
  GenCheckReport rep;
  int eff = a.effective_cap(a.effective_cap(a.cap()));
  for (std::size_t g = 0; g < a.space().gens.size(); ++g) {
    NcSeries dd = a.apply_d(a.d_gen(int(g)));
    rep.items.push_back({a.space().gen(int(g)).name, dd, eff});
    if (!dd.is_zero()) rep.all_zero = false;
  }
  return rep;
}

// Degree-0 morphism of tensor dg algebras, given on generators; the vertex
// map may be non-unital (image idempotents form a sub-sum of the target's).
class DgMorphism {
public:
  DgMorphism() = default;
  DgMorphism(std::shared_ptr<const DgAlgebra> src, std::shared_ptr<const DgAlgebra> tgt)
      : src_(std::move(src)),
        tgt_(std::move(tgt)),
        gen_images_(src_->space().gens.size()),
        vertex_map_(src_->space().vertices.size(), -1) {
    for (auto& s : gen_images_) s = NcSeries(tgt_->space_ptr(), tgt_->cap());
  }

  const DgAlgebra& source() const { return *src_; }
  const DgAlgebra& target() const { return *tgt_; }

  void map_vertex(int src_v, int tgt_v) { vertex_map_[std::size_t(src_v)] = tgt_v; }
  int vertex_image(int src_v) const { return vertex_map_[std::size_t(src_v)]; }

  void set_image(int gen, const NcSeries& image) {
    const auto& g = src_->space().gen(gen);
    for (const auto& [w, c] : image.terms()) {
      require(word_deg(tgt_->space(), w) == g.deg, errc::bad_input,
              "morphism must preserve degree on '" + g.name + "'");
      require(word_src(tgt_->space(), w) == vertex_map_[std::size_t(g.src)] &&
                  word_tgt(tgt_->space(), w) == vertex_map_[std::size_t(g.tgt)],
              errc::bad_input, "image of '" + g.name + "' is incompatible with the vertex map");
    }
    gen_images_[std::size_t(gen)] = image;
  }

  const NcSeries& image(int gen) const { return gen_images_[std::size_t(gen)]; }

  NcSeries apply(const NcSeries& x) const {
    NcSeries out(tgt_->space_ptr(), std::min(tgt_->cap(), x.cap()));
    for (const auto& [w, c] : x.terms()) {
      if (w.empty()) {
        int v = vertex_map_[std::size_t(w.vx)];
        if (v >= 0) out.add_term(empty_word(v), c);
        continue;
      }
      NcSeries prod = series_idem(tgt_->space_ptr(), out.cap(),
                                  vertex_map_[std::size_t(src_->space().gen(w.g.front()).src)]);
      for (int gi : w.g) prod = prod * gen_images_[std::size_t(gi)];
      out = out + prod.scaled(c);
    }
    return out;
  }

private:
  std::shared_ptr<const DgAlgebra> src_, tgt_;
  std::vector<NcSeries> gen_images_;
  std::vector<int> vertex_map_;
};

// Residuals f(d(v)) - d(f(v)) per source generator.
inline GenCheckReport check_chain_map(const DgMorphism& f) {
  GenCheckReport rep;
  const auto& src = f.source();
  int eff = std::min(f.target().effective_cap(f.target().cap()),
                     f.source().effective_cap(f.source().cap()));
  for (std::size_t g = 0; g < src.space().gens.size(); ++g) {
    NcSeries lhs = f.apply(src.d_gen(int(g)));
    NcSeries rhs = f.target().apply_d(f.image(int(g)));
    rep.items.push_back({src.space().gen(int(g)).name, lhs - rhs, eff});
    if (!rep.items.back().residual.is_zero()) rep.all_zero = false;
  }
  return rep;
}

struct H0Result {
  int dim = 0;
  std::vector<Word> basis;
  std::vector<NcSeries> relations;
};

// Filtered quotient dimension of H^0 at word length <= length: the span of
// degree-0 words modulo the d-images of degree -1 words whose image stays
// within the length bound.
inline H0Result h0_truncated(const DgAlgebra& a, int length) {
  const auto& sp = a.space();
  for (const auto& g : sp.gens)
    require(g.deg <= 0, errc::not_connective, "generator '" + g.name + "' has positive degree");
  require(length <= a.cap(), errc::cap_insufficient,
          "length bound exceeds the cap of the algebra");

  // Sources whose image could overflow the cap are skipped: their images
  // would be silently truncated and must not enter the relation span.
  int max_src_len = a.max_image_len() > 0 ? a.cap() + 1 - a.max_image_len() : length;

  std::vector<Word> basis0;
  std::vector<NcSeries> images;
  for (int l = 0; l <= length; ++l)
    for (const auto& w : enumerate_words(sp, l)) {
      int d = word_deg(sp, w);
      if (d == 0) basis0.push_back(w);
      if (d == -1 && l <= max_src_len) {
        NcSeries img = a.apply_d(series_word(a.space_ptr(), a.cap(), w));
        if (img.is_zero()) continue;
        bool within = true;
        for (const auto& [iw, ic] : img.terms()) within = within && int(iw.size()) <= length;
        if (within) images.push_back(img);
      }
    }
  std::sort(basis0.begin(), basis0.end());

  std::vector<std::vector<Rat>> span;
  for (const auto& img : images) {
    std::vector<Rat> v(basis0.size(), Rat(0));
    for (const auto& [w, c] : img.terms()) {
      auto it = std::lower_bound(basis0.begin(), basis0.end(), w);
      v[std::size_t(it - basis0.begin())] = c;
    }
    span.push_back(std::move(v));
  }

  H0Result res;
  if (span.empty()) {
    res.dim = int(basis0.size());
    res.basis = basis0;
    for (std::size_t g = 0; g < sp.gens.size(); ++g)
      if (!a.d_gen(int(g)).is_zero()) res.relations.push_back(a.d_gen(int(g)));
    return res;
  }
  Mat m(span.size(), basis0.size());
  for (std::size_t i = 0; i < span.size(); ++i)
    for (std::size_t j = 0; j < basis0.size(); ++j) m(i, j) = span[i][j];
  auto pivots = m.rref();
  res.dim = int(basis0.size()) - int(pivots.size());
  std::vector<bool> is_pivot(basis0.size(), false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t j = 0; j < basis0.size(); ++j)
    if (!is_pivot[j]) res.basis.push_back(basis0[j]);
  for (std::size_t g = 0; g < sp.gens.size(); ++g)
    if (!a.d_gen(int(g)).is_zero()) res.relations.push_back(a.d_gen(int(g)));
  return res;
}

}  // namespace necklace
