#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "necklace/linalg.hpp"
#include "necklace/necklace_tr.hpp"

namespace necklace {

// eta = sum c_{uv} u (x) v in V (x)_{l^e} V: a degree-graded coefficient
// matrix on ordered generator pairs. Nonzero c_{uv} needs u: i -> j and
// v: j -> i and |u| + |v| = degree. Generators of the ambient space that
// never appear in the coefficients form the V' part, on which the induced
// brackets vanish.
class Pairing {
public:
  Pairing() = default;
  Pairing(std::shared_ptr<const GeneratorSpace> sp, int degree)
      : sp_(std::move(sp)), degree_(degree) {}

  // Copies share no mutex state; the memoized inverse travels along.
  Pairing(const Pairing& o) : sp_(o.sp_), degree_(o.degree_), c_(o.c_) {
    std::lock_guard<std::mutex> lock(o.mu_);
    inv_computed_ = o.inv_computed_;
    inv_ = o.inv_;
  }
  Pairing& operator=(const Pairing& o) {
    if (this == &o) return *this;
    sp_ = o.sp_;
    degree_ = o.degree_;
    c_ = o.c_;
    std::scoped_lock lock(mu_, o.mu_);
    inv_computed_ = o.inv_computed_;
    inv_ = o.inv_;
    return *this;
  }

  const std::shared_ptr<const GeneratorSpace>& space_ptr() const { return sp_; }
  const GeneratorSpace& space() const { return *sp_; }
  int degree() const { return degree_; }
  const std::map<std::pair<int, int>, Rat>& coeffs() const { return c_; }

  void set(int u, int v, const Rat& coeff) {
    if (is_zero(coeff)) return;
    const auto& gu = sp_->gen(u);
    const auto& gv = sp_->gen(v);
    require(gu.src == gv.tgt && gu.tgt == gv.src, errc::bad_input,
            "pairing endpoints mismatch on (" + gu.name + "," + gv.name + ")");
    require(gu.deg + gv.deg == degree_, errc::bad_input,
            "pairing degree mismatch on (" + gu.name + "," + gv.name + ")");
    c_[{u, v}] += coeff;
    if (is_zero(c_[{u, v}])) c_.erase({u, v});
    inv_.reset();
  }

  // Generators genuinely paired by eta (the complement is V').
  std::vector<int> span() const {
    std::set<int> s;
    for (const auto& [k, v] : c_) {
      s.insert(k.first);
      s.insert(k.second);
    }
    return {s.begin(), s.end()};
  }

  bool antisymmetric() const {
    std::set<std::pair<int, int>> keys;
    for (const auto& [k, v] : c_) {
      keys.insert(k);
      keys.insert({k.second, k.first});
    }
    for (const auto& [u, v] : keys) {
      Rat cuv = at(u, v);
      Rat cvu = at(v, u);
      long du = sp_->gen(u).deg, dv = sp_->gen(v).deg;
      if (cvu != -sign_pow(du * dv) * cuv) return false;
    }
    return true;
  }

  bool nondegenerate() const { return inverse() != nullptr; }

  // (C^{-1})_{uv}, zero outside the span. Throws when eta is degenerate.
  Rat inv_entry(int u, int v) const {
    const InvData* inv = inverse();
    require(inv != nullptr, errc::degenerate_pairing, "pairing matrix is singular");
    auto iu = inv->index.find(u);
    auto iv = inv->index.find(v);
    if (iu == inv->index.end() || iv == inv->index.end()) return Rat(0);
    return inv->mat(iu->second, iv->second);
  }

  bool in_span(int g) const {
    const InvData* inv = inverse();
    if (inv == nullptr) {
      for (const auto& [k, v] : c_)
        if (k.first == g || k.second == g) return true;
      return false;
    }
    return inv->index.count(g) > 0;
  }

private:
  struct InvData {
    std::map<int, std::size_t> index;
    Mat mat;
  };

  const InvData* inverse() const {
    std::lock_guard<std::mutex> lock(mu_);
    if (!inv_computed_) {
      inv_computed_ = true;
      auto gens = span();
      Mat m(gens.size(), gens.size());
      std::map<int, std::size_t> index;
      for (std::size_t i = 0; i < gens.size(); ++i) index[gens[i]] = i;
      for (const auto& [k, v] : c_) m(index[k.first], index[k.second]) = v;
      auto mi = m.inverse();
      if (mi) inv_ = InvData{std::move(index), std::move(*mi)};
    }
    return inv_ ? &*inv_ : nullptr;
  }

  std::shared_ptr<const GeneratorSpace> sp_;
  int degree_ = 0;
  std::map<std::pair<int, int>, Rat> c_;

  Rat at(int u, int v) const {
    auto it = c_.find({u, v});
    return it == c_.end() ? Rat(0) : it->second;
  }

  mutable std::mutex mu_;
  mutable bool inv_computed_ = false;
  mutable std::optional<InvData> inv_;
};

struct PairingReport {
  bool antisymmetric = false;
  bool nondegenerate = false;
  bool ok() const { return antisymmetric && nondegenerate; }
};

inline PairingReport check_pairing(const Pairing& eta) {
  PairingReport rep;
  rep.antisymmetric = eta.antisymmetric();
  rep.nondegenerate = !eta.coeffs().empty() && eta.nondegenerate();
  if (eta.coeffs().empty()) rep.nondegenerate = eta.space().gens.empty();
  return rep;
}

// eta as an element of the algebra: sum c_{uv} uv.
inline NcSeries pairing_series(const Pairing& eta, int cap) {
  NcSeries s(eta.space_ptr(), cap);
  for (const auto& [k, c] : eta.coeffs()) s.add_term(word_of({k.first, k.second}), c);
  return s;
}

// Adds the standard dual-pair block x (x) x* - (-1)^{|x||x*|} x* (x) x.
inline void add_dual_pair(Pairing& eta, int x, int xstar) {
  const auto& sp = eta.space();
  eta.set(x, xstar, Rat(1));
  eta.set(xstar, x, -sign_pow(long(sp.gen(x).deg) * sp.gen(xstar).deg));
}

struct EtaBResult {
  std::shared_ptr<const GeneratorSpace> fr_space;  // F together with R = shifted duals
  Pairing eta_b;                                   // degree 3-d, passes check_pairing
  std::vector<std::pair<int, int>> dual_pairs;     // (y, y*) indices in fr_space
};

// Builds R = shift-dual generators y* with |y| + |y*| = 3-d and the pairing
// (-1)^{(d-3)|a|} a (x) s^{d-3}b - (-1)^{|a||b|} s^{d-3}b (x) a.
inline EtaBResult eta_B_from_F(const GeneratorSpace& f, int d) {
  for (const auto& g : f.gens) {
    require(2 * g.deg >= 3 - d && g.deg <= 0, errc::degree_window,
            "frozen generator '" + g.name + "' outside [(3-d)/2, 0]");
  }
  auto fr = std::make_shared<GeneratorSpace>();
  fr->vertices = f.vertices;
  fr->weights = f.weights;
  fr->gens = f.gens;
  std::size_t nf = f.gens.size();
  for (const auto& g : f.gens)
    fr->gens.push_back({star_name(g.name), g.tgt, g.src, 3 - d - g.deg});
  fr->validate();

  EtaBResult res;
  res.fr_space = fr;
  res.eta_b = Pairing(fr, 3 - d);
  for (std::size_t i = 0; i < nf; ++i) {
    int y = int(i), ystar = int(nf + i);
    long dy = f.gens[i].deg;
    // the |a||b| exponent is taken before the shift: |b| = -|a| in DF
    res.eta_b.set(y, ystar, sign_pow(long(d - 3) * dy));
    res.eta_b.set(ystar, y, -sign_pow(dy));
    res.dual_pairs.emplace_back(y, ystar);
  }
  return res;
}

// {w, v} for a single closed word w = x_1..x_m and a single generator v:
//   sum_i (-1)^{S_i(P_i+|x_i|)} (C^{-1})_{x_i,v} x_{i+1}..x_m x_1..x_{i-1}
// with P_i/S_i the degrees of the strict prefix/suffix of x_i. The sign is
// the Koszul cost of rotating x_i to the back; the formula is
// rotation-covariant, so it descends to Tr.
namespace detail {
inline NcSeries bracket_word_gen(const Pairing& eta, int cap, const Word& w, int v) {
  const auto& sp = eta.space();
  NcSeries out(eta.space_ptr(), cap);
  if (!eta.in_span(v)) return out;
  long total = word_deg(sp, w);
  long prefix = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    long xdeg = sp.gen(w.g[i]).deg;
    Rat b = eta.inv_entry(w.g[i], v);
    if (!is_zero(b)) {
      long suffix = total - prefix - xdeg;
      Word wrap;
      if (w.size() == 1) {
        wrap = empty_word(sp.gen(w.g[i]).tgt);
      } else {
        wrap.g.insert(wrap.g.end(), w.g.begin() + long(i + 1), w.g.end());
        wrap.g.insert(wrap.g.end(), w.g.begin(), w.g.begin() + long(i));
      }
      out.add_term(wrap, sign_pow(suffix * (prefix + xdeg)) * b);
    }
    prefix += xdeg;
  }
  return out;
}
}  // namespace detail

// Single necklace bracket {w, v}_{omega_eta}, extended over the second slot
// as a derivation of degree |w| - |eta|.
inline NcSeries single_bracket(const Necklace& w, const NcSeries& v, const Pairing& eta) {
  require(w.space_ptr() == eta.space_ptr() && v.space_ptr() == eta.space_ptr(),
          errc::space_mismatch, "bracket operands live in different spaces");
  int cap = std::min(w.cap(), v.cap());
  NcSeries out(eta.space_ptr(), cap);
  const auto& sp = eta.space();
  for (const auto& [cw, cc] : w.terms()) {
    long wdeg = word_deg(sp, cw);
    for (const auto& [yw, yc] : v.terms()) {
      long qdeg = 0;
      for (std::size_t j = 0; j < yw.size(); ++j) {
        int yj = yw.g[j];
        NcSeries core = detail::bracket_word_gen(eta, cap, cw, yj);
        if (!core.is_zero()) {
          Rat sign = sign_pow((wdeg + eta.degree()) * qdeg);
          NcSeries prefix = series_word(eta.space_ptr(), cap,
                                        Word{std::vector<int>(yw.g.begin(), yw.g.begin() + long(j)),
                                             sp.gen(yj).src});
          NcSeries suffix = series_word(eta.space_ptr(), cap,
                                        Word{std::vector<int>(yw.g.begin() + long(j + 1), yw.g.end()),
                                             sp.gen(yj).tgt});
          out = out + (prefix * core * suffix).scaled(cc * yc * sign);
        }
        qdeg += sp.gen(yj).deg;
      }
    }
  }
  return out;
}

// Element of A (x) A with word coefficients.
class Tensor2 {
public:
  Tensor2() = default;
  Tensor2(std::shared_ptr<const GeneratorSpace> sp, int cap) : sp_(std::move(sp)), cap_(cap) {}

  const std::map<std::pair<Word, Word>, Rat>& terms() const { return t_; }
  const GeneratorSpace& space() const { return *sp_; }
  int cap() const { return cap_; }
  bool is_zero() const { return t_.empty(); }

  void add_term(const Word& a, const Word& b, const Rat& c) {
    if (necklace::is_zero(c)) return;
    if (int(a.size()) > cap_ || int(b.size()) > cap_) return;
    auto key = std::make_pair(a, b);
    t_[key] += c;
    if (necklace::is_zero(t_[key])) t_.erase(key);
  }

  Tensor2 operator+(const Tensor2& o) const {
    Tensor2 r(sp_, std::min(cap_, o.cap_));
    for (const auto& [k, c] : t_) r.add_term(k.first, k.second, c);
    for (const auto& [k, c] : o.t_) r.add_term(k.first, k.second, c);
    return r;
  }
  Tensor2 scaled(const Rat& c) const {
    Tensor2 r(sp_, cap_);
    for (const auto& [k, x] : t_) r.add_term(k.first, k.second, x * c);
    return r;
  }
  bool operator==(const Tensor2& o) const { return t_ == o.t_; }

  // (p (x) q) |-> (-1)^{|p||q|} q (x) p
  Tensor2 swapped() const {
    Tensor2 r(sp_, cap_);
    for (const auto& [k, c] : t_) {
      long dp = word_deg(*sp_, k.first), dq = word_deg(*sp_, k.second);
      r.add_term(k.second, k.first, c * sign_pow(dp * dq));
    }
    return r;
  }

  // Multiplication image A (x) A -> A.
  NcSeries mu() const {
    NcSeries out(sp_, cap_);
    for (const auto& [k, c] : t_) {
      NcSeries p = series_word(sp_, cap_, k.first) * series_word(sp_, cap_, k.second);
      out = out + p.scaled(c);
    }
    return out;
  }

private:
  std::shared_ptr<const GeneratorSpace> sp_;
  int cap_ = 1;
  std::map<std::pair<Word, Word>, Rat> t_;
};

// Double bracket on words:
//  {{x_1..x_m, y_1..y_n}} = sum_{i,j} eps(i,j) (C^{-1})_{x_i,y_j}
//     (y_1..y_{j-1} x_{i+1}..x_m) (x) (x_1..x_{i-1} y_{j+1}..y_n)
// with eps(i,j) = (-1)^{(|x|+|eta|)Q_j + S_i(P_i+|x_i|)}, Q_j and P_i/S_i the
// prefix/suffix degrees. The second slot is expanded as an outer-bimodule
// derivation and the first by graded antisymmetry from it. On generator
// pairs this is {{u,v}} = (C^{-1})_{u,v} e_{t(u)} (x) e_{s(u)}; its
// multiplication image agrees with single_bracket on Tr-classes.
inline Tensor2 double_bracket(const NcSeries& a, const NcSeries& b, const Pairing& eta) {
  require(a.space_ptr() == eta.space_ptr() && b.space_ptr() == eta.space_ptr(),
          errc::space_mismatch, "bracket operands live in different spaces");
  int cap = std::min(a.cap(), b.cap());
  Tensor2 out(eta.space_ptr(), cap);
  const auto& sp = eta.space();
  for (const auto& [xw, xc] : a.terms()) {
    long xdeg = word_deg(sp, xw);
    for (const auto& [yw, yc] : b.terms()) {
      long q = 0;
      for (std::size_t j = 0; j < yw.size(); ++j) {
        long p = 0;
        for (std::size_t i = 0; i < xw.size(); ++i) {
          Rat binv = eta.inv_entry(xw.g[i], yw.g[j]);
          if (!is_zero(binv)) {
            long dxi = sp.gen(xw.g[i]).deg;
            long s = xdeg - p - dxi;
            long e = (xdeg + eta.degree()) * q + s * (p + dxi);
            Word left, right;
            left.g.insert(left.g.end(), yw.g.begin(), yw.g.begin() + long(j));
            left.g.insert(left.g.end(), xw.g.begin() + long(i + 1), xw.g.end());
            if (left.g.empty()) left = empty_word(sp.gen(xw.g[i]).tgt);
            right.g.insert(right.g.end(), xw.g.begin(), xw.g.begin() + long(i));
            right.g.insert(right.g.end(), yw.g.begin() + long(j + 1), yw.g.end());
            if (right.g.empty()) right = empty_word(sp.gen(xw.g[i]).src);
            out.add_term(left, right, xc * yc * binv * sign_pow(e));
          }
          p += sp.gen(xw.g[i]).deg;
        }
        q += sp.gen(yw.g[j]).deg;
      }
    }
  }
  return out;
}

// The induced bracket Tr x Tr -> Tr.
inline Necklace necklace_bracket(const Necklace& w1, const Necklace& w2, const Pairing& eta) {
  return trace_project(single_bracket(w1, w2.representative(), eta));
}

// Left Loday residual {w1,{w2,v}} - (-1)^{(|w1|-|eta|)(|w2|-|eta|)}{w2,{w1,v}}
// - {{w1,w2},v}; vanishes identically for honest brackets. Both necklaces
// must be degree-homogeneous.
inline NcSeries left_loday_check(const Necklace& w1, const Necklace& w2, const NcSeries& v,
                                 const Pairing& eta) {
  auto degs1 = w1.representative().degrees();
  auto degs2 = w2.representative().degrees();
  require(degs1.size() <= 1 && degs2.size() <= 1, errc::bad_input,
          "loday check expects homogeneous necklaces");
  long d1 = degs1.empty() ? 0 : degs1.front();
  long d2 = degs2.empty() ? 0 : degs2.front();
  NcSeries a = single_bracket(w1, single_bracket(w2, v, eta), eta);
  NcSeries b = single_bracket(w2, single_bracket(w1, v, eta), eta);
  NcSeries c = single_bracket(necklace_bracket(w1, w2, eta), v, eta);
  Rat sign = sign_pow((d1 - eta.degree()) * (d2 - eta.degree()));
  return a - b.scaled(sign) - c;
}

}  // namespace necklace
