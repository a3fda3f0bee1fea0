#pragma once

#include <optional>

#include "necklace/series.hpp"

namespace necklace {

// Koszul sign of rotating the first k letters of w to the back, i.e. of
// w = uv |-> vu with u = w[0..k).  Equals (-1)^{|u||v|}.
inline int rotation_sign(const GeneratorSpace& sp, const Word& w, std::size_t k) {
  int pre = 0, total = 0;
  for (std::size_t i = 0; i < w.g.size(); ++i) {
    int d = sp.gen(w.g[i]).deg;
    total += d;
    if (i < k) pre += d;
  }
  return (pre % 2 != 0 && (total - pre) % 2 != 0) ? -1 : 1;
}

inline Word rotate_word(const Word& w, std::size_t k) {
  Word r;
  r.g.insert(r.g.end(), w.g.begin() + long(k), w.g.end());
  r.g.insert(r.g.end(), w.g.begin(), w.g.begin() + long(k));
  return r;
}

// Canonical rotation of a closed word: the lexicographically least rotation
// under the fixed generator order. Returns nothing when some rotation maps
// the word to itself with sign -1 (the class is then 2-torsion, hence 0).
inline std::optional<std::pair<Word, int>> canonical_rotation(const GeneratorSpace& sp,
                                                              const Word& w) {
  Word best = w;
  int best_sign = 1;
  for (std::size_t k = 1; k < w.g.size(); ++k) {
    Word r = rotate_word(w, k);
    int s = rotation_sign(sp, w, k);
    if (r < best) {
      best = r;
      best_sign = s;
    } else if (r == best && s != best_sign) {
      return std::nullopt;
    }
  }
  return std::make_pair(best, best_sign);
}

// Element of Tr(A) = A/[A,A]: cyclic words in canonical rotation. Classes of
// lazy paths are dropped (none of the Tr elements handled here carry them,
// and sym vanishes on l anyway).
class Necklace {
public:
  Necklace() = default;
  Necklace(std::shared_ptr<const GeneratorSpace> sp, int cap) : sp_(std::move(sp)), cap_(cap) {}

  const std::shared_ptr<const GeneratorSpace>& space_ptr() const { return sp_; }
  const GeneratorSpace& space() const { return *sp_; }
  int cap() const { return cap_; }
  const std::map<Word, Rat>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  // w must be a closed word of length >= 1; it is canonicalized here.
  void add_class(const Word& w, const Rat& c) {
    if (necklace::is_zero(c) || w.empty()) return;
    if (int(w.size()) > cap_) return;
    require(word_composable(*sp_, w) && word_closed(*sp_, w), errc::bad_input,
            "necklace words must be closed paths");
    auto can = canonical_rotation(*sp_, w);
    if (!can) return;
    auto it = t_.find(can->first);
    Rat add = c * can->second;
    if (it == t_.end()) {
      t_.emplace(can->first, add);
    } else {
      it->second += add;
      if (necklace::is_zero(it->second)) t_.erase(it);
    }
  }

  Necklace operator+(const Necklace& o) const {
    check_space(o);
    Necklace r(sp_, std::min(cap_, o.cap_));
    for (const auto& [w, c] : t_) r.add_class(w, c);
    for (const auto& [w, c] : o.t_) r.add_class(w, c);
    return r;
  }
  Necklace operator-(const Necklace& o) const { return *this + o.scaled(Rat(-1)); }
  Necklace scaled(const Rat& c) const {
    Necklace r(sp_, cap_);
    if (necklace::is_zero(c)) return r;
    for (const auto& [w, x] : t_) r.t_.emplace(w, x * c);
    return r;
  }
  bool operator==(const Necklace& o) const { return t_ == o.t_; }

  Necklace homogeneous_part(int deg) const {
    Necklace r(sp_, cap_);
    for (const auto& [w, c] : t_)
      if (word_deg(*sp_, w) == deg) r.t_.emplace(w, c);
    return r;
  }

  void check_space(const Necklace& o) const {
    require(sp_ == o.sp_, errc::space_mismatch, "necklaces live in different generator spaces");
  }

  // A plain series made of the canonical representatives.
  NcSeries representative() const {
    NcSeries s(sp_, cap_);
    for (const auto& [w, c] : t_) s.add_term(w, c);
    return s;
  }

private:
  std::shared_ptr<const GeneratorSpace> sp_;
  int cap_ = 1;
  std::map<Word, Rat> t_;
};

// Projection A -> Tr(A): kills non-cyclic words, l-components, and rotation
// differences (with the Koszul rotation sign).
inline Necklace trace_project(const NcSeries& s) {
  Necklace n(s.space_ptr(), s.cap());
  for (const auto& [w, c] : s.terms()) {
    if (w.empty()) continue;
    if (!word_closed(s.space(), w)) continue;
    n.add_class(w, c);
  }
  return n;
}

// Cyclic symmetrisation Tr(T_l V) -> (T_l V)_l: the signed sum over all
// rotations of each class representative; vanishes on l.
inline NcSeries sym(const Necklace& n) {
  NcSeries out(n.space_ptr(), n.cap());
  for (const auto& [w, c] : n.terms())
    for (std::size_t k = 0; k < w.size(); ++k)
      out.add_term(rotate_word(w, k), c * rotation_sign(n.space(), w, k));
  return out;
}

inline Necklace necklace_of(std::shared_ptr<const GeneratorSpace> sp, int cap, const Word& w,
                            const Rat& c = Rat(1)) {
  Necklace n(std::move(sp), cap);
  n.add_class(w, c);
  return n;
}

inline std::string necklace_str(const Necklace& n) {
  return series_str(n.representative());
}

inline Necklace transport(const Necklace& n, std::shared_ptr<const GeneratorSpace> target) {
  return trace_project(transport(n.representative(), std::move(target)));
}

}  // namespace necklace
