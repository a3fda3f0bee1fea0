#pragma once

#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "necklace/quiver.hpp"
#include "necklace/rational.hpp"
#include "necklace/semisimple.hpp"

namespace necklace {

struct Generator {
  std::string name;
  int src = 0, tgt = 0;
  int deg = 0;
};

// Generator data of a completed tensor algebra T_l V. The base l is a finite
// product of copies of Q, one factor per vertex, with an explicit trace
// weight per vertex (weight w_i makes sigma = sum (1/w_i) e_i (x) e_i).
struct GeneratorSpace {
  std::vector<std::string> vertices;
  std::vector<Rat> weights;
  std::vector<Generator> gens;

  GeneratorSpace() = default;
  GeneratorSpace(std::vector<std::string> vs, std::vector<Generator> gs)
      : vertices(std::move(vs)), gens(std::move(gs)) {
    weights.assign(vertices.size(), Rat(1));
    validate();
  }

  void validate() const {
    std::set<std::string> names;
    for (const auto& v : vertices)
      require(names.insert(v).second, errc::name_clash, "duplicate vertex '" + v + "'");
    std::set<std::string> gnames;
    for (const auto& g : gens) {
      require(gnames.insert(g.name).second, errc::name_clash, "duplicate generator '" + g.name + "'");
      require(g.src >= 0 && g.src < int(vertices.size()) && g.tgt >= 0 &&
                  g.tgt < int(vertices.size()),
              errc::bad_input, "generator '" + g.name + "' has a dangling endpoint");
    }
    require(weights.size() == vertices.size(), errc::invalid_trace, "one weight per vertex");
    for (const auto& w : weights)
      require(!is_zero(w), errc::invalid_trace, "trace weight must be nonzero");
  }

  static GeneratorSpace from_quiver(const GradedQuiver& q) {
    GeneratorSpace sp;
    sp.vertices = q.vertices;
    sp.weights.assign(q.vertices.size(), Rat(1));
    for (const auto& a : q.arrows) sp.gens.push_back({a.name, a.src, a.tgt, a.deg});
    sp.validate();
    return sp;
  }

  // Only bases that are products of copies of Q are admitted here; matrix
  // blocks of size > 1 live in the semisimple module.
  static GeneratorSpace over(const SemisimpleAlgebra& l, std::vector<Generator> gs) {
    for (int n : l.blocks)
      require(n == 1, errc::bad_input,
              "tensor algebras are built over products of copies of the ground field");
    GeneratorSpace sp;
    for (std::size_t b = 0; b < l.blocks.size(); ++b) sp.vertices.push_back("v" + std::to_string(b));
    sp.weights.assign(sp.vertices.size(), Rat(1));
    sp.gens = std::move(gs);
    sp.validate();
    return sp;
  }

  int vertex(const std::string& id) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i] == id) return int(i);
    fail(errc::bad_input, "unknown vertex '" + id + "'");
  }

  int gen_index(const std::string& name) const {
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (gens[i].name == name) return int(i);
    fail(errc::unknown_arrow, "unknown generator '" + name + "'");
  }

  const Generator& gen(int i) const { return gens[std::size_t(i)]; }
};

// A composable word in the generators; the empty word carries its vertex.
struct Word {
  std::vector<int> g;
  int vx = -1;

  bool empty() const { return g.empty(); }
  std::size_t size() const { return g.size(); }

  bool operator==(const Word& o) const { return g == o.g && (!g.empty() || vx == o.vx); }
  bool operator<(const Word& o) const {
    if (g.size() != o.g.size()) return g.size() < o.g.size();
    if (g != o.g) return g < o.g;
    if (g.empty()) return vx < o.vx;
    return false;
  }
};

inline Word empty_word(int vertex) { return Word{{}, vertex}; }
inline Word word_of(std::vector<int> gens) { return Word{std::move(gens), -1}; }

inline int word_src(const GeneratorSpace& sp, const Word& w) {
  return w.empty() ? w.vx : sp.gen(w.g.front()).src;
}
inline int word_tgt(const GeneratorSpace& sp, const Word& w) {
  return w.empty() ? w.vx : sp.gen(w.g.back()).tgt;
}
inline int word_deg(const GeneratorSpace& sp, const Word& w) {
  int d = 0;
  for (int gi : w.g) d += sp.gen(gi).deg;
  return d;
}
inline bool word_composable(const GeneratorSpace& sp, const Word& w) {
  for (std::size_t i = 0; i + 1 < w.g.size(); ++i)
    if (sp.gen(w.g[i]).tgt != sp.gen(w.g[i + 1]).src) return false;
  return true;
}
inline bool word_closed(const GeneratorSpace& sp, const Word& w) {
  return word_src(sp, w) == word_tgt(sp, w);
}

// Truncated element of T_l V: finitely many words with rational
// coefficients, exact modulo words of length > cap.
class NcSeries {
public:
  NcSeries() = default;
  NcSeries(std::shared_ptr<const GeneratorSpace> sp, int cap) : sp_(std::move(sp)), cap_(cap) {
    require(cap_ >= 1, errc::bad_input, "cap must be positive");
  }

  const std::shared_ptr<const GeneratorSpace>& space_ptr() const { return sp_; }
  const GeneratorSpace& space() const { return *sp_; }
  int cap() const { return cap_; }
  const std::map<Word, Rat>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  void add_term(const Word& w, const Rat& c) {
    if (necklace::is_zero(c)) return;
    if (int(w.size()) > cap_) return;
    auto it = t_.find(w);
    if (it == t_.end()) {
      t_.emplace(w, c);
    } else {
      it->second += c;
      if (necklace::is_zero(it->second)) t_.erase(it);
    }
  }

  NcSeries operator+(const NcSeries& o) const {
    check_space(o);
    NcSeries r(sp_, std::min(cap_, o.cap_));
    for (const auto& [w, c] : t_) r.add_term(w, c);
    for (const auto& [w, c] : o.t_) r.add_term(w, c);
    return r;
  }
  NcSeries operator-(const NcSeries& o) const { return *this + o.scaled(Rat(-1)); }
  NcSeries scaled(const Rat& c) const {
    NcSeries r(sp_, cap_);
    if (necklace::is_zero(c)) return r;
    for (const auto& [w, x] : t_) r.t_.emplace(w, x * c);
    return r;
  }

  // Concatenation product; non-composable products vanish and words longer
  // than the cap are dropped (result exact modulo length > cap).
  NcSeries operator*(const NcSeries& o) const {
    check_space(o);
    NcSeries r(sp_, std::min(cap_, o.cap_));
    for (const auto& [w1, c1] : t_)
      for (const auto& [w2, c2] : o.t_) {
        if (word_tgt(*sp_, w1) != word_src(*sp_, w2)) continue;
        Word w;
        if (w1.empty() && w2.empty()) {
          w = w1;
        } else {
          w.g = w1.g;
          w.g.insert(w.g.end(), w2.g.begin(), w2.g.end());
        }
        r.add_term(w, c1 * c2);
      }
    return r;
  }

  bool operator==(const NcSeries& o) const { return t_ == o.t_; }

  NcSeries homogeneous_part(int deg) const {
    NcSeries r(sp_, cap_);
    for (const auto& [w, c] : t_)
      if (word_deg(*sp_, w) == deg) r.t_.emplace(w, c);
    return r;
  }

  std::vector<int> degrees() const {
    std::set<int> ds;
    for (const auto& [w, c] : t_) ds.insert(word_deg(*sp_, w));
    return {ds.begin(), ds.end()};
  }

  void check_space(const NcSeries& o) const {
    require(sp_ == o.sp_, errc::space_mismatch, "operands live in different generator spaces");
  }

private:
  std::shared_ptr<const GeneratorSpace> sp_;
  int cap_ = 1;
  std::map<Word, Rat> t_;
};

inline NcSeries series_zero(std::shared_ptr<const GeneratorSpace> sp, int cap) {
  return NcSeries(std::move(sp), cap);
}

inline NcSeries series_word(std::shared_ptr<const GeneratorSpace> sp, int cap, const Word& w,
                            const Rat& c = Rat(1)) {
  NcSeries s(std::move(sp), cap);
  require(word_composable(s.space(), w), errc::bad_input, "word is not composable");
  s.add_term(w, c);
  return s;
}

inline NcSeries series_gen(std::shared_ptr<const GeneratorSpace> sp, int cap, int gen) {
  return series_word(std::move(sp), cap, word_of({gen}));
}

inline NcSeries series_idem(std::shared_ptr<const GeneratorSpace> sp, int cap, int vertex) {
  return series_word(std::move(sp), cap, empty_word(vertex));
}

// Unit of T_l V: the sum of all lazy paths.
inline NcSeries series_unit(std::shared_ptr<const GeneratorSpace> sp, int cap) {
  NcSeries s(sp, cap);
  for (std::size_t v = 0; v < sp->vertices.size(); ++v) s.add_term(empty_word(int(v)), Rat(1));
  return s;
}

// ab - (-1)^{|a||b|} ba, extended bilinearly over the (homogeneous) terms.
inline NcSeries graded_commutator(const NcSeries& a, const NcSeries& b) {
  a.check_space(b);
  auto sp = a.space_ptr();
  NcSeries r(sp, std::min(a.cap(), b.cap()));
  for (const auto& [w1, c1] : a.terms())
    for (const auto& [w2, c2] : b.terms()) {
      int d1 = word_deg(*sp, w1), d2 = word_deg(*sp, w2);
      NcSeries x = series_word(sp, r.cap(), w1, c1) * series_word(sp, r.cap(), w2, c2);
      NcSeries y = series_word(sp, r.cap(), w2, c2) * series_word(sp, r.cap(), w1, c1);
      Rat sign = (d1 * d2) % 2 != 0 ? Rat(-1) : Rat(1);
      r = r + x - y.scaled(sign);
    }
  return r;
}

inline std::string word_str(const GeneratorSpace& sp, const Word& w) {
  if (w.empty()) return "e_" + sp.vertices[std::size_t(w.vx)];
  std::string s;
  for (std::size_t i = 0; i < w.g.size(); ++i) {
    if (i) s += ".";
    s += sp.gen(w.g[i]).name;
  }
  return s;
}

// Canonical text rendering: terms sorted by word, "p/q*word".
inline std::string series_str(const NcSeries& s) {
  if (s.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : s.terms()) {
    if (!first) os << " + ";
    first = false;
    os << rat_str(c) << "*" << word_str(s.space(), w);
  }
  return os.str();
}

// Transplants a series into another space, matching generators and vertices
// by name; degrees and endpoints must agree.
inline NcSeries transport(const NcSeries& s, std::shared_ptr<const GeneratorSpace> target) {
  NcSeries out(target, s.cap());
  const auto& src_sp = s.space();
  std::vector<int> gen_map(src_sp.gens.size(), -1);
  std::vector<int> vx_map(src_sp.vertices.size(), -1);
  for (const auto& [w, c] : s.terms()) {
    Word nw;
    if (w.empty()) {
      int& m = vx_map[std::size_t(w.vx)];
      if (m < 0) m = target->vertex(src_sp.vertices[std::size_t(w.vx)]);
      nw = empty_word(m);
    } else {
      for (int gi : w.g) {
        int& m = gen_map[std::size_t(gi)];
        if (m < 0) {
          m = target->gen_index(src_sp.gen(gi).name);
          require(target->gen(m).deg == src_sp.gen(gi).deg, errc::bad_input,
                  "transport degree mismatch on '" + src_sp.gen(gi).name + "'");
        }
        nw.g.push_back(m);
      }
    }
    out.add_term(nw, c);
  }
  return out;
}

// All composable words of the exact given length (0 gives the lazy paths).
inline std::vector<Word> enumerate_words(const GeneratorSpace& sp, int length) {
  std::vector<Word> out;
  if (length == 0) {
    for (std::size_t v = 0; v < sp.vertices.size(); ++v) out.push_back(empty_word(int(v)));
    return out;
  }
  std::vector<std::vector<int>> out_arrows(sp.vertices.size());
  for (std::size_t i = 0; i < sp.gens.size(); ++i)
    out_arrows[std::size_t(sp.gens[i].src)].push_back(int(i));
  std::vector<int> stack;
  std::function<void(int, int)> dfs = [&](int at, int remaining) {
    if (remaining == 0) {
      out.push_back(word_of(stack));
      return;
    }
    for (int gi : out_arrows[std::size_t(at)]) {
      stack.push_back(gi);
      dfs(sp.gen(gi).tgt, remaining - 1);
      stack.pop_back();
    }
  };
  for (std::size_t v = 0; v < sp.vertices.size(); ++v) dfs(int(v), length);
  return out;
}

inline std::vector<Word> enumerate_words_upto(const GeneratorSpace& sp, int max_length) {
  std::vector<Word> out;
  for (int l = 0; l <= max_length; ++l) {
    auto ws = enumerate_words(sp, l);
    out.insert(out.end(), ws.begin(), ws.end());
  }
  return out;
}

}  // namespace necklace
