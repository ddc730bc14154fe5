#ifndef ROADCOLOR_TESTS_ORACLES_HPP_
#define ROADCOLOR_TESTS_ORACLES_HPP_

// Brute-force reference computations. None of these call into the library
// beyond the data types, so they stay independent of the paths they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <utility>
#include <vector>

#include "roadcolor/graph.hpp"
#include "roadcolor/spanning.hpp"

namespace roadcolor::oracle {

  //! gcd of the lengths of all simple cycles, by exhaustive enumeration.
  inline std::uint64_t cycle_gcd(Graph const& g) {
    std::uint64_t          result = 0;
    std::size_t const      n      = g.size();
    std::vector<bool>      on_path(n, false);
    // Each simple cycle is rooted at its smallest vertex.
    auto dfs = [&](auto&& self, VertexId root, VertexId v, std::uint64_t len) -> void {
      for (VertexId t : g.row(v)) {
        if (t == root) {
          result = std::gcd(result, len + 1);
        } else if (t > root && !on_path[t]) {
          on_path[t] = true;
          self(self, root, t, len + 1);
          on_path[t] = false;
        }
      }
    };
    for (VertexId root = 0; root < n; ++root) {
      on_path[root] = true;
      dfs(dfs, root, root, 0);
      on_path[root] = false;
    }
    return result;
  }

  using StateSet = std::vector<VertexId>;

  inline StateSet image(Automaton const& a, StateSet const& s, Color c) {
    std::set<VertexId> out;
    for (VertexId v : s) {
      out.insert(a.next(v, c));
    }
    return {out.begin(), out.end()};
  }

  //! Length of a shortest synchronizing word via subset BFS, if any.
  inline std::optional<std::size_t> shortest_sync_length(Automaton const& a) {
    StateSet all(a.size());
    std::iota(all.begin(), all.end(), VertexId(0));
    if (all.size() == 1) {
      return 0;
    }
    std::map<StateSet, std::size_t> dist{{all, 0}};
    std::queue<StateSet>            queue;
    queue.push(all);
    while (!queue.empty()) {
      StateSet s = queue.front();
      queue.pop();
      for (Color c = 0; c < a.alphabet_size(); ++c) {
        StateSet t = image(a, s, c);
        if (dist.contains(t)) {
          continue;
        }
        dist[t] = dist[s] + 1;
        if (t.size() == 1) {
          return dist[t];
        }
        queue.push(t);
      }
    }
    return std::nullopt;
  }

  using Pair = std::pair<VertexId, VertexId>;

  inline Pair ordered(VertexId p, VertexId q) {
    return p < q ? Pair{p, q} : Pair{q, p};
  }

  //! Pairs reachable from (p, q) under all words, including itself.
  inline std::set<Pair> reachable_pairs(Automaton const& a, VertexId p, VertexId q) {
    std::set<Pair>   seen{ordered(p, q)};
    std::queue<Pair> queue;
    queue.push(ordered(p, q));
    while (!queue.empty()) {
      auto [x, y] = queue.front();
      queue.pop();
      for (Color c = 0; c < a.alphabet_size(); ++c) {
        Pair next = ordered(a.next(x, c), a.next(y, c));
        if (seen.insert(next).second) {
          queue.push(next);
        }
      }
    }
    return seen;
  }

  inline bool synchronizable(Automaton const& a, VertexId p, VertexId q) {
    if (p == q) {
      return true;
    }
    for (auto [x, y] : reachable_pairs(a, p, q)) {
      if (x == y) {
        return true;
      }
    }
    return false;
  }

  inline bool stable(Automaton const& a, VertexId p, VertexId q) {
    for (auto [x, y] : reachable_pairs(a, p, q)) {
      if (!synchronizable(a, x, y)) {
        return false;
      }
    }
    return true;
  }

  struct Levels {
    std::vector<bool>          on_cycle;
    std::vector<std::uint32_t> level;
    std::vector<VertexId>      root;
    std::uint32_t              cycle_vertices = 0;
  };

  //! Decomposition by walking successors from every vertex.
  inline Levels decompose(Graph const& g, SpanningSubgraph const& s) {
    std::size_t const n = g.size();
    auto succ = [&](VertexId v) { return g.target(v, s.choice[v]); };
    Levels out;
    out.on_cycle.assign(n, false);
    out.level.assign(n, 0);
    out.root.assign(n, 0);
    for (VertexId v = 0; v < n; ++v) {
      VertexId x = v;
      for (std::size_t i = 0; i < n; ++i) {
        x = succ(x);
        if (x == v) {
          out.on_cycle[v] = true;
          break;
        }
      }
    }
    for (VertexId v = 0; v < n; ++v) {
      VertexId      x = v;
      std::uint32_t l = 0;
      while (!out.on_cycle[x]) {
        x = succ(x);
        ++l;
      }
      out.level[v] = l;
      out.root[v]  = x;
      out.cycle_vertices += out.on_cycle[v] ? 1 : 0;
    }
    return out;
  }

  //! Perron left eigenvector by power iteration on the averaging operator,
  //! normalized so the smallest component is 1.
  inline std::vector<double> weights_by_power_iteration(Graph const& g,
                                                        std::size_t  iterations = 20000) {
    std::size_t const   n = g.size();
    std::vector<double> u(n, 1.0), next(n);
    double const        k = static_cast<double>(g.out_degree());
    for (std::size_t it = 0; it < iterations; ++it) {
      std::fill(next.begin(), next.end(), 0.0);
      for (VertexId v = 0; v < n; ++v) {
        for (VertexId t : g.row(v)) {
          next[t] += u[v] / k;
        }
      }
      // Lazy step keeps periodic graphs from oscillating.
      for (std::size_t i = 0; i < n; ++i) {
        u[i] = 0.5 * (u[i] + next[i]);
      }
    }
    double lo = *std::min_element(u.begin(), u.end());
    for (auto& x : u) {
      x /= lo;
    }
    return u;
  }

  //! Every coloring as the cartesian product of per-vertex permutations.
  inline std::vector<Coloring> all_colorings(Graph const& g) {
    std::size_t const               k = g.out_degree();
    std::vector<std::vector<Color>> perms;
    std::vector<Color>              p(k);
    std::iota(p.begin(), p.end(), Color(0));
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    std::vector<Coloring>     out;
    std::vector<std::size_t>  pick(g.size(), 0);
    while (true) {
      std::vector<Color> flat;
      for (auto i : pick) {
        flat.insert(flat.end(), perms[i].begin(), perms[i].end());
      }
      out.emplace_back(g.size(), k, flat);
      std::size_t v = g.size();
      while (v > 0 && ++pick[v - 1] == perms.size()) {
        pick[--v] = 0;
      }
      if (v == 0) {
        break;
      }
    }
    return out;
  }

}  // namespace roadcolor::oracle

#endif  // ROADCOLOR_TESTS_ORACLES_HPP_
