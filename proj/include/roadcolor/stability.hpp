#ifndef ROADCOLOR_STABILITY_HPP_
#define ROADCOLOR_STABILITY_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "roadcolor/graph.hpp"

namespace roadcolor {

  //! Index of the unordered pair {p, q}, p != q, in a packed triangle.
  [[nodiscard]] inline std::size_t pair_index(VertexId p, VertexId q) noexcept {
    if (p > q) {
      std::swap(p, q);
    }
    return static_cast<std::size_t>(q) * (q - 1) / 2 + p;
  }

  [[nodiscard]] inline std::size_t pair_count(std::size_t n) noexcept {
    return n * (n - 1) / 2;
  }

  //! Shortest merging words of all pairs, from one backward BFS of the pair
  //! automaton rooted at the diagonal.
  //!
  //! distance(p, q) is the length of a shortest word w with p.w == q.w, or
  //! unreachable. first_letter(p, q) is the first letter of the
  //! lexicographically least such word; following first letters spells it.
  class PairDistances {
   public:
    static constexpr std::uint32_t unreachable = UINT32_MAX;

    PairDistances() = default;
    explicit PairDistances(Automaton const& a);

    [[nodiscard]] std::size_t size() const noexcept {
      return _n;
    }
    [[nodiscard]] std::uint32_t distance(VertexId p, VertexId q) const noexcept {
      return p == q ? 0 : _distance[pair_index(p, q)];
    }
    [[nodiscard]] Color first_letter(VertexId p, VertexId q) const noexcept {
      return _letter[pair_index(p, q)];
    }
    //! Lexicographically least shortest merging word; empty for p == q.
    [[nodiscard]] Word merging_word(Automaton const& a, VertexId p, VertexId q) const;

   private:
    std::size_t                _n = 0;
    std::vector<std::uint32_t> _distance;
    std::vector<Color>         _letter;
  };

  //! Synchronizable and stable pairs. The diagonal counts as both.
  class PairTable {
   public:
    PairTable() = default;
    PairTable(std::size_t n, std::vector<bool> synchronizable, std::vector<bool> stable)
        : _n(n), _synchronizable(std::move(synchronizable)), _stable(std::move(stable)) {}

    [[nodiscard]] std::size_t size() const noexcept {
      return _n;
    }
    [[nodiscard]] bool synchronizable(VertexId p, VertexId q) const noexcept {
      return p == q || _synchronizable[pair_index(p, q)];
    }
    [[nodiscard]] bool stable(VertexId p, VertexId q) const noexcept {
      return p == q || _stable[pair_index(p, q)];
    }
    [[nodiscard]] bool deadlock(VertexId p, VertexId q) const noexcept {
      return !synchronizable(p, q);
    }
    [[nodiscard]] std::size_t stable_off_diagonal_count() const noexcept;

   private:
    std::size_t       _n = 0;
    std::vector<bool> _synchronizable;
    std::vector<bool> _stable;
  };

  //! Pairs merged by some word; the stable part is left empty.
  [[nodiscard]] PairTable synchronizable_pairs(Automaton const& a);

  //! Synchronizable pairs plus the stable ones: pairs from which no deadlock
  //! pair is reachable in the pair automaton.
  [[nodiscard]] PairTable stable_pairs(Automaton const& a);

  //! Classes of the stability relation, numbered by their smallest member.
  struct StabilityPartition {
    std::vector<std::uint32_t> class_of;
    std::uint32_t              class_count = 0;

    //! Smallest vertex of every class.
    [[nodiscard]] std::vector<VertexId> representatives() const;

    friend bool operator==(StabilityPartition const&,
                           StabilityPartition const&) = default;
  };

  //! Throws Error(invariant_violated) if the stable pairs fail to form a
  //! congruence (a pair inside a class is not stable, or some letter maps a
  //! class into two classes).
  [[nodiscard]] StabilityPartition stability_partition(Automaton const& a);

  //! Partition from a precomputed table of the same automaton.
  [[nodiscard]] StabilityPartition stability_partition(Automaton const& a,
                                                       PairTable const& table);

  struct Quotient {
    Graph    graph;
    Coloring coloring;  // slot i carries color i
  };

  //! Automaton on the classes of \p part. Slot i of a class targets the class
  //! reached from its representative by color i.
  //!
  //! Throws Error(invariant_violated) if members of a class disagree.
  [[nodiscard]] Quotient quotient(Automaton const& a, StabilityPartition const& part);

  //! Every pair is synchronizable. Throws Error(not_strongly_connected).
  [[nodiscard]] bool is_synchronizing(Automaton const& a);

}  // namespace roadcolor

#endif  // ROADCOLOR_STABILITY_HPP_
