#ifndef ROADCOLOR_SYNTHESIS_HPP_
#define ROADCOLOR_SYNTHESIS_HPP_

#include <cstdint>
#include <string_view>
#include <vector>

#include "roadcolor/graph.hpp"
#include "roadcolor/spanning.hpp"
#include "roadcolor/stability.hpp"

namespace roadcolor {

  //! How a level of the recursion obtained its stable pair.
  enum class Phase { two_bunch, loop_fast_path, spanning };

  [[nodiscard]] std::string_view to_string(Phase phase) noexcept;

  struct LevelRecord {
    std::size_t   n                = 0;
    std::uint32_t class_count      = 0;
    std::uint32_t cycle_edge_count = 0;  // of the color-0 subgraph; 0 for two_bunch
    Phase         phase            = Phase::spanning;
  };

  struct SynthesisTrace {
    std::size_t              depth = 0;  // number of quotient steps
    std::vector<LevelRecord> levels;
  };

  struct SyncReport {
    Coloring    coloring;
    Word        word;
    bool        verified    = false;
    std::size_t word_length = 0;
  };

  struct StableColoring {
    Coloring            coloring;
    StabilityPartition  partition;
    Phase               phase            = Phase::spanning;
    std::uint32_t       cycle_edge_count = 0;
    SpanningSearchStats spanning_stats;
  };

  //! A coloring of an AGW graph (n >= 2) with at least one stable pair.
  //!
  //! A graph with a loop gets a color-0 in-forest into its smallest looped
  //! vertex, which is synchronizing outright. A vertex receiving two bunches
  //! makes their sources stable under any coloring, so a seeded coloring is
  //! used. Otherwise color 0 goes to a spanning subgraph whose deepest
  //! vertices share one tree. Throws Error(not_agw) and Error(no_stable_pair).
  [[nodiscard]] StableColoring colorize_with_stable_pair(Graph const&  g,
                                                         std::uint64_t seed);

  //! Recolors \p g so that the quotient by \p part carries \p q_coloring.
  //!
  //! Each class C gets the permutation pi_C(c) = q_coloring[C][c] of colors,
  //! applied to every member's base colors.
  [[nodiscard]] Coloring lift_coloring(Graph const&              g,
                                       Coloring const&           base,
                                       StabilityPartition const& part,
                                       Coloring const&           q_coloring);

  //! Greedy synchronizing word: repeatedly merge the pair of the current image
  //! with the shortest (then lexicographically least, then smallest) merging
  //! word. Throws Error(not_synchronizing).
  [[nodiscard]] Word synchronizing_word(Automaton const& a);

  struct SynthesisResult {
    SyncReport     report;
    SynthesisTrace trace;
  };

  //! Synchronizing coloring of an AGW graph: color with a stable pair,
  //! quotient by stability, recurse, lift back and verify each level.
  //!
  //! Throws Error(not_agw); Error(invariant_violated) if any structural check
  //! fails on the way.
  [[nodiscard]] SynthesisResult synchronizing_coloring(Graph const&  g,
                                                       std::uint64_t seed);

  //! Largest word length the greedy construction can return.
  [[nodiscard]] constexpr std::uint64_t greedy_word_bound(std::uint64_t n) noexcept {
    return n == 0 ? 0 : (n - 1) * n * (n - 1) / 2;
  }

}  // namespace roadcolor

#endif  // ROADCOLOR_SYNTHESIS_HPP_
