#ifndef ROADCOLOR_TESTS_FIXTURES_HPP_
#define ROADCOLOR_TESTS_FIXTURES_HPP_

#include <cstdint>
#include <vector>

#include "roadcolor/graph.hpp"

namespace roadcolor::fixtures {

  // 4-cycle 0->1->2->3->0 in slot 0, loops at 0, 1, 2 and a second 3->0.
  inline Graph g4() {
    return Graph::from_rows({{1, 0}, {2, 1}, {3, 2}, {0, 0}});
  }
  // Slot 0 = color 0 everywhere: the Cerny automaton on 4 states.
  inline Coloring cerny4() {
    return Coloring::identity(4, 2);
  }
  inline Graph g1() {
    return Graph::from_rows({{0, 0}});
  }
  inline Graph g2() {
    return Graph::from_rows({{1}, {0}});
  }
  // Two mutual bunches; period 2.
  inline Graph g2_mutual() {
    return Graph::from_rows({{1, 1}, {0, 0}});
  }
  inline Graph g3() {
    return Graph::from_rows({{0, 1}, {0, 0}});
  }
  inline Graph triangle() {
    return Graph::from_rows({{1}, {2}, {0}});
  }
  inline Graph two_bunch() {
    return Graph::from_rows({{2, 2}, {2, 2}, {0, 1}});
  }
  // Same pattern with an extra vertex so the cycle lengths 2 and 3 coexist.
  inline Graph two_bunch_agw() {
    return Graph::from_rows({{3, 3}, {3, 3}, {0, 1}, {2, 0}});
  }
  inline Graph eulerian3() {
    return Graph::from_rows({{1, 2}, {2, 0}, {0, 1}});
  }
  inline Graph triangle_with_chords() {
    return Graph::from_rows({{1, 1}, {2, 0}, {0, 0}});
  }

  //! Every graph on n vertices with out-degree k, slot order included.
  inline std::vector<Graph> all_graphs(std::size_t n, std::size_t k) {
    std::vector<Graph>    out;
    std::size_t const     cells = n * k;
    std::vector<VertexId> flat(cells, 0);
    while (true) {
      out.emplace_back(n, k, flat);
      std::size_t i = 0;
      while (i < cells && ++flat[i] == n) {
        flat[i++] = 0;
      }
      if (i == cells) {
        break;
      }
    }
    return out;
  }

  //! Graph from backbone mode with its loop redirected so the result is
  //! loop-free; returns an empty optional if that breaks the AGW property or
  //! leaves another loop.
  inline std::optional<Graph> loop_free_variant(Graph const& g, std::uint64_t salt) {
    auto rows = g.rows();
    std::size_t const n = rows.size();
    for (VertexId v = 0; v < n; ++v) {
      for (auto& t : rows[v]) {
        if (t == v) {
          t = static_cast<VertexId>((v + 1 + salt % (n - 1)) % n);
        }
      }
    }
    Graph out = Graph::from_rows(rows);
    if (!validate_agw(out).is_agw) {
      return std::nullopt;
    }
    return out;
  }

}  // namespace roadcolor::fixtures

#endif  // ROADCOLOR_TESTS_FIXTURES_HPP_
