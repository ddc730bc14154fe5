#ifndef ROADCOLOR_ANALYSIS_HPP_
#define ROADCOLOR_ANALYSIS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "roadcolor/graph.hpp"
#include "roadcolor/spanning.hpp"

// Exhaustive oracles and the weight / F-structure machinery. Everything
// exponential here is gated by an explicit limit and throws
// Error(too_large) instead of truncating.

namespace roadcolor {

  using BigInt = boost::multiprecision::cpp_int;

  inline constexpr std::size_t default_subset_limit   = 16;
  inline constexpr std::size_t default_coloring_limit = 1'000'000;

  //! Coprime positive left eigenvector of the adjacency count matrix for the
  //! eigenvalue k.
  struct WeightVector {
    std::vector<BigInt> weights;
    BigInt              total;

    [[nodiscard]] BigInt weight_of(std::vector<VertexId> const& set) const;
  };

  //! Exact rational null-space solve of u (M - kI) = 0.
  //!
  //! Throws Error(not_strongly_connected).
  [[nodiscard]] WeightVector weight_vector(Graph const& g);

  //! Minimum-length synchronizing word by breadth-first search over subsets,
  //! lexicographically least among the shortest. Empty optional if none.
  //! Throws Error(too_large) if n > limit_n or n > 64.
  [[nodiscard]] std::optional<Word>
  shortest_sync_word(Automaton const& a, std::size_t limit_n = default_subset_limit);

  //! All colorings of a graph in lexicographic order of the per-vertex
  //! permutation sequence (the last vertex varies fastest).
  class ColoringSweep {
   public:
    //! Throws Error(too_large) if (k!)^n > limit.
    explicit ColoringSweep(Graph const& g, std::uint64_t limit = default_coloring_limit);

    //! Next coloring, or empty once exhausted.
    [[nodiscard]] std::optional<Coloring> next();

    [[nodiscard]] std::uint64_t total() const noexcept {
      return _total;
    }

   private:
    std::size_t        _n;
    std::size_t        _k;
    std::vector<Color> _current;
    std::uint64_t      _total   = 0;
    bool               _started = false;
    bool               _done    = false;
  };

  //! Materialized sweep.
  [[nodiscard]] std::vector<Coloring>
  enumerate_colorings(Graph const& g, std::uint64_t limit = default_coloring_limit);

  using VertexSet = std::vector<VertexId>;  // sorted

  struct FStructures {
    BigInt                 f_maximal_weight;
    std::vector<VertexSet> f_maximal_partition;
    std::vector<VertexSet> f_cliques;
  };

  //! Reachable images of the full vertex set whose pairs are all deadlocks,
  //! sorted and deduplicated.
  [[nodiscard]] std::vector<VertexSet>
  f_cliques(Automaton const& a, std::size_t limit_n = default_subset_limit);

  //! Weight of the heaviest mergeable set and one partition of the vertices
  //! into mergeable sets of that weight. f_cliques is left empty.
  //!
  //! Throws Error(too_large) and Error(partition_not_found).
  [[nodiscard]] FStructures
  f_maximal_partition(Automaton const& a, std::size_t limit_n = default_subset_limit);

  //! Both parts of FStructures.
  [[nodiscard]] FStructures
  f_structures(Automaton const& a, std::size_t limit_n = default_subset_limit);

  struct LemmaCheck {
    std::string name;
    bool        applicable = true;
    bool        passed     = true;
    std::string witness;  // first counterexample, if any
  };

  struct LemmaReport {
    std::vector<LemmaCheck> checks;

    [[nodiscard]] bool all_passed() const noexcept;
  };

  //! Desk-scale checks of the F-clique properties of a colored AGW graph.
  //!
  //! uniform-size: every F-clique has w(all)/w vertices. closure: F-cliques are
  //! closed under letters and cover every vertex. overlap: without stable
  //! pairs, two distinct F-cliques A, B (|A| > 1) never differ by a single
  //! vertex. level-sets: when \p alpha is given and its chosen slots all carry
  //! color 0, no F-clique meets one level of one tree twice.
  //!
  //! Throws Error(too_large) if n > limit_n.
  [[nodiscard]] LemmaReport check_lemmas(Automaton const&                       a,
                                         std::optional<SpanningSubgraph> const& alpha,
                                         std::size_t limit_n = default_subset_limit);

}  // namespace roadcolor

#endif  // ROADCOLOR_ANALYSIS_HPP_
