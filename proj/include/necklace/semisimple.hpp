#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "necklace/linalg.hpp"

namespace necklace {

// Finite-dimensional semisimple base algebra l = prod_b M_{n_b}(Q).
// Elements are block-diagonal matrices; the k-basis is the set of matrix
// units E^b_{ij}, enumerated block by block, row-major.
struct SemisimpleAlgebra {
  std::vector<int> blocks;

  explicit SemisimpleAlgebra(std::vector<int> sizes) : blocks(std::move(sizes)) {
    require(!blocks.empty(), errc::bad_input, "semisimple algebra needs at least one block");
    for (int n : blocks) require(n >= 1, errc::bad_input, "block sizes must be >= 1");
  }

  std::size_t dim() const {
    std::size_t d = 0;
    for (int n : blocks) d += std::size_t(n) * n;
    return d;
  }

  std::size_t basis_offset(std::size_t b) const {
    std::size_t o = 0;
    for (std::size_t k = 0; k < b; ++k) o += std::size_t(blocks[k]) * blocks[k];
    return o;
  }

  std::size_t unit_index(std::size_t b, int i, int j) const {
    return basis_offset(b) + std::size_t(i) * blocks[b] + j;
  }

  struct BasisUnit {
    std::size_t block;
    int row, col;
  };

  BasisUnit basis_unit(std::size_t idx) const {
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      std::size_t sz = std::size_t(blocks[b]) * blocks[b];
      if (idx < sz) return {b, int(idx) / blocks[b], int(idx) % blocks[b]};
      idx -= sz;
    }
    fail(errc::bad_input, "basis index out of range");
  }
};

struct BlockElem {
  std::shared_ptr<const SemisimpleAlgebra> alg;
  std::vector<Mat> mats;  // one per block

  static BlockElem zero(std::shared_ptr<const SemisimpleAlgebra> a) {
    BlockElem e;
    e.alg = std::move(a);
    for (int n : e.alg->blocks) e.mats.emplace_back(n, n);
    return e;
  }

  static BlockElem unit(std::shared_ptr<const SemisimpleAlgebra> a) {
    BlockElem e = zero(a);
    for (std::size_t b = 0; b < e.mats.size(); ++b) e.mats[b] = Mat::identity(e.alg->blocks[b]);
    return e;
  }

  static BlockElem matrix_unit(std::shared_ptr<const SemisimpleAlgebra> a, std::size_t block,
                               int i, int j) {
    BlockElem e = zero(std::move(a));
    e.mats[block](i, j) = 1;
    return e;
  }

  static BlockElem basis(std::shared_ptr<const SemisimpleAlgebra> a, std::size_t idx) {
    auto u = a->basis_unit(idx);
    return matrix_unit(std::move(a), u.block, u.row, u.col);
  }

  BlockElem operator*(const BlockElem& o) const {
    BlockElem r = zero(alg);
    for (std::size_t b = 0; b < mats.size(); ++b) r.mats[b] = mats[b] * o.mats[b];
    return r;
  }
  BlockElem operator+(const BlockElem& o) const {
    BlockElem r = *this;
    for (std::size_t b = 0; b < mats.size(); ++b) r.mats[b] = r.mats[b] + o.mats[b];
    return r;
  }
  BlockElem operator-(const BlockElem& o) const {
    BlockElem r = *this;
    for (std::size_t b = 0; b < mats.size(); ++b) r.mats[b] = r.mats[b] - o.mats[b];
    return r;
  }
  BlockElem scaled(const Rat& c) const {
    BlockElem r = *this;
    for (auto& m : r.mats) m = m.scaled(c);
    return r;
  }
  bool operator==(const BlockElem& o) const { return mats == o.mats; }

  std::vector<Rat> coords() const {
    std::vector<Rat> v;
    v.reserve(alg->dim());
    for (const auto& m : mats)
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
    return v;
  }
};

// Trace form tr(a) = sum_b w_b * matrixtrace(a_b); every weight must be
// nonzero so that (a, b) |-> tr(ab) is non-degenerate.
struct Trace {
  std::vector<Rat> weights;

  void validate(const SemisimpleAlgebra& l) const {
    require(weights.size() == l.blocks.size(), errc::invalid_trace,
            "one weight per block required");
    for (const auto& w : weights)
      require(!is_zero(w), errc::invalid_trace, "trace weight must be nonzero");
  }

  Rat operator()(const BlockElem& a) const {
    Rat t(0);
    for (std::size_t b = 0; b < a.mats.size(); ++b) {
      Rat s(0);
      for (std::size_t i = 0; i < a.mats[b].rows(); ++i) s += a.mats[b](i, i);
      t += weights[b] * s;
    }
    return t;
  }
};

inline Trace unit_trace(const SemisimpleAlgebra& l) {
  Trace t;
  t.weights.assign(l.blocks.size(), Rat(1));
  return t;
}

// sigma = sum e_k (x) f_k with (f_k) the dual basis for (a,b) |-> tr(ab).
struct CasimirElement {
  std::vector<std::pair<BlockElem, BlockElem>> terms;
};

inline CasimirElement casimir(std::shared_ptr<const SemisimpleAlgebra> l, const Trace& tr) {
  tr.validate(*l);
  std::size_t n = l->dim();
  Mat gram(n, n);
  std::vector<BlockElem> basis;
  basis.reserve(n);
  for (std::size_t i = 0; i < n; ++i) basis.push_back(BlockElem::basis(l, i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) gram(i, j) = tr(basis[i] * basis[j]);
  auto inv = gram.inverse();
  require(inv.has_value(), errc::invalid_trace, "trace form is degenerate");
  CasimirElement sigma;
  for (std::size_t k = 0; k < n; ++k) {
    BlockElem dual = BlockElem::zero(l);
    for (std::size_t a = 0; a < n; ++a) {
      const Rat& c = (*inv)(a, k);
      if (!is_zero(c)) dual = dual + basis[a].scaled(c);
    }
    sigma.terms.emplace_back(basis[k], dual);
  }
  return sigma;
}

struct CasimirReport {
  bool symmetric = false;
  bool central = false;
  std::optional<std::string> symmetric_counterexample;
  std::optional<std::string> central_counterexample;
  bool ok() const { return symmetric && central; }
};

namespace detail {
inline std::vector<Rat> tensor_coords(const std::vector<std::pair<BlockElem, BlockElem>>& terms,
                                      std::size_t dim) {
  std::vector<Rat> v(dim * dim, Rat(0));
  for (const auto& [e, f] : terms) {
    auto ce = e.coords();
    auto cf = f.coords();
    for (std::size_t i = 0; i < dim; ++i) {
      if (is_zero(ce[i])) continue;
      for (std::size_t j = 0; j < dim; ++j) v[i * dim + j] += ce[i] * cf[j];
    }
  }
  return v;
}
}  // namespace detail

inline CasimirReport check_casimir(const CasimirElement& sigma,
                                   std::shared_ptr<const SemisimpleAlgebra> l) {
  CasimirReport rep;
  std::size_t n = l->dim();
  auto fwd = detail::tensor_coords(sigma.terms, n);
  std::vector<std::pair<BlockElem, BlockElem>> swapped;
  for (const auto& [e, f] : sigma.terms) swapped.emplace_back(f, e);
  rep.symmetric = fwd == detail::tensor_coords(swapped, n);
  if (!rep.symmetric) rep.symmetric_counterexample = "sigma' (x) sigma'' != sigma'' (x) sigma'";

  rep.central = true;
  for (std::size_t k = 0; k < n && rep.central; ++k) {
    BlockElem a = BlockElem::basis(l, k);
    std::vector<std::pair<BlockElem, BlockElem>> left, right;
    for (const auto& [e, f] : sigma.terms) {
      left.emplace_back(a * e, f);
      right.emplace_back(e, f * a);
    }
    if (detail::tensor_coords(left, n) != detail::tensor_coords(right, n)) {
      rep.central = false;
      auto u = l->basis_unit(k);
      rep.central_counterexample = "E[" + std::to_string(u.block) + "](" + std::to_string(u.row) +
                                   "," + std::to_string(u.col) + ")";
    }
  }
  return rep;
}

// An l-bimodule with explicit basis and action tables. left[k] / right[k]
// are the matrices of the k-th basis unit of l acting on U.
struct Bimodule {
  std::shared_ptr<const SemisimpleAlgebra> alg;
  std::vector<std::string> names;
  std::vector<Mat> left, right;

  std::size_t dim() const { return names.size(); }

  static Bimodule regular(std::shared_ptr<const SemisimpleAlgebra> l) {
    Bimodule u;
    u.alg = l;
    std::size_t n = l->dim();
    for (std::size_t i = 0; i < n; ++i) {
      auto bu = l->basis_unit(i);
      u.names.push_back("E[" + std::to_string(bu.block) + "](" + std::to_string(bu.row) + "," +
                        std::to_string(bu.col) + ")");
    }
    for (std::size_t k = 0; k < n; ++k) {
      Mat lm(n, n), rm(n, n);
      BlockElem ek = BlockElem::basis(l, k);
      for (std::size_t j = 0; j < n; ++j) {
        BlockElem xj = BlockElem::basis(l, j);
        auto lc = (ek * xj).coords();
        auto rc = (xj * ek).coords();
        for (std::size_t i = 0; i < n; ++i) {
          lm(i, j) = lc[i];
          rm(i, j) = rc[i];
        }
      }
      u.left.push_back(std::move(lm));
      u.right.push_back(std::move(rm));
    }
    return u;
  }

  std::vector<Rat> act_left(const BlockElem& a, const std::vector<Rat>& m) const {
    auto ca = a.coords();
    std::vector<Rat> out(dim(), Rat(0));
    for (std::size_t k = 0; k < ca.size(); ++k) {
      if (is_zero(ca[k])) continue;
      for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j) out[i] += ca[k] * left[k](i, j) * m[j];
    }
    return out;
  }

  std::vector<Rat> act_right(const std::vector<Rat>& m, const BlockElem& a) const {
    auto ca = a.coords();
    std::vector<Rat> out(dim(), Rat(0));
    for (std::size_t k = 0; k < ca.size(); ++k) {
      if (is_zero(ca[k])) continue;
      for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j) out[i] += ca[k] * right[k](i, j) * m[j];
    }
    return out;
  }

  bool is_central(const std::vector<Rat>& m) const {
    for (std::size_t k = 0; k < left.size(); ++k)
      for (std::size_t i = 0; i < dim(); ++i) {
        Rat l_val(0), r_val(0);
        for (std::size_t j = 0; j < dim(); ++j) {
          l_val += left[k](i, j) * m[j];
          r_val += right[k](i, j) * m[j];
        }
        if (l_val != r_val) return false;
      }
    return true;
  }

  // Spanning set of [l, U]; quotienting by it gives U_l.
  std::vector<std::vector<Rat>> commutator_span() const {
    std::vector<std::vector<Rat>> span;
    for (std::size_t k = 0; k < left.size(); ++k) {
      Mat diff = left[k] - right[k];
      for (std::size_t j = 0; j < dim(); ++j) {
        std::vector<Rat> v(dim());
        bool nz = false;
        for (std::size_t i = 0; i < dim(); ++i) {
          v[i] = diff(i, j);
          nz = nz || !is_zero(v[i]);
        }
        if (nz) span.push_back(std::move(v));
      }
    }
    return span;
  }
};

// m |-> sigma' m sigma''.  Lands in U^l and factors through U_l.
inline std::vector<Rat> central_lift(const Bimodule& u, const std::vector<Rat>& m,
                                     const CasimirElement& sigma) {
  std::vector<Rat> out(u.dim(), Rat(0));
  for (const auto& [e, f] : sigma.terms) {
    auto v = u.act_right(u.act_left(e, m), f);
    for (std::size_t i = 0; i < u.dim(); ++i) out[i] += v[i];
  }
  return out;
}

// Inverse of central_lift on l-central inputs: a class representative in U_l.
inline std::vector<Rat> dagger(const Bimodule& u, const std::vector<Rat>& m,
                               const CasimirElement& sigma) {
  require(u.is_central(m), errc::not_central, "dagger input is not l-central");
  std::size_t n = u.dim();
  Mat lift(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rat> ej(n, Rat(0));
    ej[j] = 1;
    auto col = central_lift(u, ej, sigma);
    for (std::size_t i = 0; i < n; ++i) lift(i, j) = col[i];
  }
  auto x = lift.solve(m);
  // With a valid Casimir the lift is onto U^l, so a central m is always hit.
  require(x.has_value(), errc::not_central, "central lift system inconsistent");
  return *x;
}

// Equality in U_l: difference lies in [l, U].
inline bool equal_mod_commutators(const Bimodule& u, const std::vector<Rat>& a,
                                  const std::vector<Rat>& b) {
  std::vector<Rat> diff(u.dim());
  for (std::size_t i = 0; i < u.dim(); ++i) diff[i] = a[i] - b[i];
  return express_in_span(u.commutator_span(), diff).has_value();
}

}  // namespace necklace
