#ifndef ROADCOLOR_SPANNING_HPP_
#define ROADCOLOR_SPANNING_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "roadcolor/graph.hpp"

namespace roadcolor {

  //! One chosen out-slot per vertex, i.e. a functional subgraph that spans
  //! the whole graph.
  struct SpanningSubgraph {
    std::vector<SlotId> choice;

    friend bool operator==(SpanningSubgraph const&,
                           SpanningSubgraph const&) = default;
  };

  //! Slot 0 at every vertex.
  [[nodiscard]] SpanningSubgraph initial_spanning(Graph const& g);

  [[nodiscard]] inline VertexId successor(Graph const&            g,
                                          SpanningSubgraph const& s,
                                          VertexId                v) {
    return g.target(v, s.choice[v]);
  }

  //! Cycles and in-trees of a spanning subgraph.
  //!
  //! Every vertex reaches a cycle along chosen edges. Its level is the number
  //! of steps to get there, tree_root is the cycle vertex it arrives at and
  //! cycle_id names that cycle (ids follow discovery order from vertex 0).
  //! Vertices hanging on the same root form one tree.
  struct Decomposition {
    std::vector<bool>          on_cycle;
    std::vector<std::uint32_t> level;
    std::vector<VertexId>      tree_root;
    std::vector<std::uint32_t> cycle_id;
    std::uint32_t              cycle_edge_count = 0;
    std::uint32_t              max_level        = 0;
    std::uint32_t              cycle_count      = 0;

    //! Vertices of level max_level, ascending; empty when max_level == 0.
    [[nodiscard]] std::vector<VertexId> max_level_vertices() const;
  };

  [[nodiscard]] Decomposition decompose(Graph const& g, SpanningSubgraph const& s);

  //! True when max_level > 0 and every vertex of that level hangs on the same
  //! tree root.
  [[nodiscard]] bool max_level_in_single_tree(Decomposition const& d);

  struct BunchWitness {
    VertexId target;
    VertexId first;
    VertexId second;

    friend bool operator==(BunchWitness const&, BunchWitness const&) = default;
  };

  //! A vertex receiving the whole out-bunch of two distinct vertices, if one
  //! exists. Smallest target first, then the two smallest sources.
  [[nodiscard]] std::optional<BunchWitness>
  has_vertex_with_two_incoming_bunches(Graph const& g);

  //! Turns an all-cycles spanning subgraph into one with a unique vertex of
  //! maximal positive level by redirecting one chosen edge.
  //!
  //! The redirected vertex is the smallest one owning an out-edge whose target
  //! differs from its chosen target. Throws Error(precondition_violated) if \p
  //! s has trees and Error(no_breaking_edge) if every vertex emits a bunch.
  [[nodiscard]] SpanningSubgraph break_all_cycles(Graph const&            g,
                                                  SpanningSubgraph const& s);

  struct SpanningSearchStats {
    std::uint32_t phase_a_improvements = 0;  // single swaps that grew the cycles
    std::uint32_t phase_b_improvements = 0;  // tree moves that grew the cycles
    std::uint32_t moves_evaluated      = 0;
    std::uint32_t fallback_swaps       = 0;  // rescues by exhaustive swap scan
    bool          broke_cycles         = false;
  };

  struct SpanningResult {
    SpanningSubgraph    subgraph;
    SpanningSearchStats stats;
  };

  //! Spanning subgraph whose vertices of maximal positive level all lie in one
  //! tree, for a loop-free AGW graph without a vertex receiving two bunches.
  //!
  //! Local search: grow the number of cycle edges by single slot swaps to a
  //! fixpoint, then extend the deepest tree by redirecting the edge into its
  //! deepest vertex, the edge into its root or the cycle edge into its root.
  //! Throws Error(precondition_violated) on a bad input and
  //! Error(algorithm_stuck) if no move makes progress.
  [[nodiscard]] SpanningResult find_stable_friendly_spanning(Graph const& g);

  //! Colors the chosen slot of every vertex with color 0 and the others with
  //! a seeded shuffle of 1..k-1.
  [[nodiscard]] Coloring alpha_coloring(Graph const&            g,
                                        SpanningSubgraph const& s,
                                        std::uint64_t           seed);

}  // namespace roadcolor

#endif  // ROADCOLOR_SPANNING_HPP_
