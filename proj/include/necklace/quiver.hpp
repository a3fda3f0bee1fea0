#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "necklace/error.hpp"

namespace necklace {

struct Arrow {
  std::string name;
  int src = 0, tgt = 0;
  int deg = 0;
};

struct GradedQuiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;

  int vertex(const std::string& id) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i] == id) return int(i);
    fail(errc::bad_input, "unknown vertex '" + id + "'");
  }

  const Arrow* find_arrow(const std::string& name) const {
    for (const auto& a : arrows)
      if (a.name == name) return &a;
    return nullptr;
  }

  void validate() const {
    std::set<std::string> names;
    for (const auto& a : arrows) {
      require(names.insert(a.name).second, errc::name_clash, "duplicate arrow '" + a.name + "'");
      require(a.src >= 0 && a.src < int(vertices.size()) && a.tgt >= 0 &&
                  a.tgt < int(vertices.size()),
              errc::bad_input, "arrow '" + a.name + "' has a dangling endpoint");
    }
    std::set<std::string> vs(vertices.begin(), vertices.end());
    require(vs.size() == vertices.size(), errc::name_clash, "duplicate vertex id");
  }

  bool all_degree_zero() const {
    return std::all_of(arrows.begin(), arrows.end(), [](const Arrow& a) { return a.deg == 0; });
  }
};

struct IceQuiver {
  GradedQuiver quiver;
  std::set<int> frozen_vertices;
  std::set<int> frozen_arrows;  // indices into quiver.arrows

  void validate() const {
    quiver.validate();
    for (int v : frozen_vertices)
      require(v >= 0 && v < int(quiver.vertices.size()), errc::bad_input,
              "frozen vertex out of range");
    // F is a subquiver (not necessarily full): frozen arrows need frozen ends.
    for (int a : frozen_arrows) {
      require(a >= 0 && a < int(quiver.arrows.size()), errc::bad_input,
              "frozen arrow out of range");
      require(frozen_vertices.count(quiver.arrows[a].src) &&
                  frozen_vertices.count(quiver.arrows[a].tgt),
              errc::bad_input, "frozen arrow '" + quiver.arrows[a].name +
                                   "' must have frozen endpoints");
    }
  }

  bool arrow_frozen(std::size_t i) const { return frozen_arrows.count(int(i)) > 0; }
  bool vertex_frozen(int v) const { return frozen_vertices.count(v) > 0; }
};

inline std::string star_name(const std::string& a) { return a + "*"; }
inline std::string loop_name(const std::string& v) { return "t_" + v; }

namespace detail {
inline void check_clash(const GradedQuiver& q, const std::string& name) {
  require(q.find_arrow(name) == nullptr, errc::name_clash,
          "generated arrow name '" + name + "' already present");
}
}  // namespace detail

// Adds alpha*: j -> i (degree 0) for the selected arrows.
inline GradedQuiver doubled_quiver(const GradedQuiver& q, const std::set<int>& skip = {}) {
  q.validate();
  require(q.all_degree_zero(), errc::bad_input, "doubling needs a degree-0 quiver");
  GradedQuiver out = q;
  for (std::size_t i = 0; i < q.arrows.size(); ++i) {
    if (skip.count(int(i))) continue;
    const auto& a = q.arrows[i];
    detail::check_clash(out, star_name(a.name));
    out.arrows.push_back({star_name(a.name), a.tgt, a.src, 0});
  }
  return out;
}

inline GradedQuiver relative_doubled_quiver(const IceQuiver& qf) {
  qf.validate();
  return doubled_quiver(qf.quiver, qf.frozen_arrows);
}

// Stars of degree 2-d for the selected arrows and loops t_v of degree 1-d at
// the selected vertices.
inline GradedQuiver ginzburg_quiver_impl(const GradedQuiver& q, int d, const std::set<int>& skip_arrows,
                                         const std::set<int>& skip_vertices) {
  q.validate();
  require(q.all_degree_zero(), errc::bad_input, "Ginzburg quiver needs a degree-0 quiver");
  bool arrows_to_star = false;
  for (std::size_t i = 0; i < q.arrows.size(); ++i)
    if (!skip_arrows.count(int(i))) arrows_to_star = true;
  require(d == 2 || d == 3 || (d == 1 && !arrows_to_star), errc::unsupported_dimension,
          "d must be 2 or 3 (or 1 for an arrowless quiver)");
  GradedQuiver out = q;
  for (std::size_t i = 0; i < q.arrows.size(); ++i) {
    if (skip_arrows.count(int(i))) continue;
    const auto& a = q.arrows[i];
    detail::check_clash(out, star_name(a.name));
    out.arrows.push_back({star_name(a.name), a.tgt, a.src, 2 - d});
  }
  for (std::size_t v = 0; v < q.vertices.size(); ++v) {
    if (skip_vertices.count(int(v))) continue;
    detail::check_clash(out, loop_name(q.vertices[v]));
    out.arrows.push_back({loop_name(q.vertices[v]), int(v), int(v), 1 - d});
  }
  return out;
}

inline GradedQuiver ginzburg_quiver(const GradedQuiver& q, int d) {
  return ginzburg_quiver_impl(q, d, {}, {});
}

inline GradedQuiver relative_ginzburg_quiver(const IceQuiver& qf, int d) {
  qf.validate();
  require(d == 2 || d == 3, errc::unsupported_dimension, "d must be 2 or 3");
  return ginzburg_quiver_impl(qf.quiver, d, qf.frozen_arrows, qf.frozen_vertices);
}

// The frozen subquiver as a quiver of its own (shares vertex names).
inline GradedQuiver frozen_subquiver(const IceQuiver& qf) {
  qf.validate();
  GradedQuiver f;
  std::vector<int> vmap(qf.quiver.vertices.size(), -1);
  for (std::size_t v = 0; v < qf.quiver.vertices.size(); ++v)
    if (qf.vertex_frozen(int(v))) {
      vmap[v] = int(f.vertices.size());
      f.vertices.push_back(qf.quiver.vertices[v]);
    }
  for (std::size_t i = 0; i < qf.quiver.arrows.size(); ++i)
    if (qf.arrow_frozen(i)) {
      const auto& a = qf.quiver.arrows[i];
      f.arrows.push_back({a.name, vmap[a.src], vmap[a.tgt], a.deg});
    }
  return f;
}

}  // namespace necklace
