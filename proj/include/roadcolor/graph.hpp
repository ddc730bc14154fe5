#ifndef ROADCOLOR_GRAPH_HPP_
#define ROADCOLOR_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace roadcolor {

  using VertexId = std::uint32_t;
  using SlotId   = std::uint32_t;
  using Color    = std::uint32_t;
  using Word     = std::vector<Color>;

  //! Directed multigraph with constant out-degree.
  //!
  //! Every vertex owns exactly \c k ordered out-edge slots. Parallel edges and
  //! loops are allowed; the slot order is part of the graph's identity.
  //! Instances are immutable once constructed.
  class Graph {
   public:
    Graph() = default;

    //! Throws Error(invalid_graph) if a row has length != k or a target is out
    //! of range, or if n == 0 or k == 0.
    Graph(std::size_t n, std::size_t k, std::vector<VertexId> flat_targets);

    static Graph from_rows(std::vector<std::vector<VertexId>> const& rows);

    [[nodiscard]] std::size_t size() const noexcept {
      return _n;
    }
    [[nodiscard]] std::size_t out_degree() const noexcept {
      return _k;
    }
    [[nodiscard]] VertexId target(VertexId v, SlotId slot) const noexcept {
      return _adj[static_cast<std::size_t>(v) * _k + slot];
    }
    [[nodiscard]] std::span<VertexId const> row(VertexId v) const noexcept {
      return {_adj.data() + static_cast<std::size_t>(v) * _k, _k};
    }
    [[nodiscard]] std::vector<std::vector<VertexId>> rows() const;

    //! True when all out-edges of \p v end at one vertex.
    [[nodiscard]] bool is_bunch(VertexId v) const noexcept;
    [[nodiscard]] bool has_loop(VertexId v) const noexcept;

    //! Optional display names, one per vertex.
    [[nodiscard]] std::optional<std::vector<std::string>> const&
    names() const noexcept {
      return _names;
    }
    [[nodiscard]] Graph with_names(std::vector<std::string> names) const;

    // Names are labels only; they do not take part in equality.
    friend bool operator==(Graph const& x, Graph const& y) noexcept {
      return x._n == y._n && x._k == y._k && x._adj == y._adj;
    }

   private:
    std::size_t                             _n = 0;
    std::size_t                             _k = 0;
    std::vector<VertexId>                   _adj;
    std::optional<std::vector<std::string>> _names;
  };

  //! Per-vertex bijection from edge slots to colors 0..k-1.
  class Coloring {
   public:
    Coloring() = default;

    //! Throws Error(invalid_coloring) unless every row is a permutation.
    Coloring(std::size_t n, std::size_t k, std::vector<Color> flat_colors);

    static Coloring from_rows(std::vector<std::vector<Color>> const& rows);
    //! Slot i gets color i at every vertex.
    static Coloring identity(std::size_t n, std::size_t k);

    [[nodiscard]] std::size_t size() const noexcept {
      return _n;
    }
    [[nodiscard]] std::size_t out_degree() const noexcept {
      return _k;
    }
    [[nodiscard]] Color color(VertexId v, SlotId slot) const noexcept {
      return _colors[static_cast<std::size_t>(v) * _k + slot];
    }
    [[nodiscard]] std::span<Color const> row(VertexId v) const noexcept {
      return {_colors.data() + static_cast<std::size_t>(v) * _k, _k};
    }
    [[nodiscard]] std::vector<std::vector<Color>> rows() const;

    friend bool operator==(Coloring const&, Coloring const&) = default;

   private:
    std::size_t        _n = 0;
    std::size_t        _k = 0;
    std::vector<Color> _colors;
  };

  //! A graph together with a coloring: a complete deterministic automaton
  //! whose letters are the colors.
  class Automaton {
   public:
    //! Throws Error(shape_mismatch) if the dimensions disagree.
    Automaton(Graph graph, Coloring coloring);

    [[nodiscard]] std::size_t size() const noexcept {
      return _graph.size();
    }
    [[nodiscard]] std::size_t alphabet_size() const noexcept {
      return _graph.out_degree();
    }
    [[nodiscard]] VertexId next(VertexId v, Color c) const noexcept {
      return _delta[static_cast<std::size_t>(v) * _graph.out_degree() + c];
    }
    [[nodiscard]] VertexId next(VertexId v, Word const& w) const noexcept;

    [[nodiscard]] Graph const& graph() const noexcept {
      return _graph;
    }
    [[nodiscard]] Coloring const& coloring() const noexcept {
      return _coloring;
    }

   private:
    Graph                 _graph;
    Coloring              _coloring;
    std::vector<VertexId> _delta;
  };

  struct AgwReport {
    bool          strongly_connected  = false;
    bool          constant_outdegree  = false;
    std::uint64_t cycle_gcd           = 0;
    bool          is_agw              = false;
  };

  [[nodiscard]] bool is_strongly_connected(Graph const& g);

  //! Period of a strongly connected graph: the gcd of all cycle lengths.
  //!
  //! Throws Error(not_strongly_connected).
  [[nodiscard]] std::uint64_t cycle_gcd(Graph const& g);

  [[nodiscard]] AgwReport validate_agw(Graph const& g);

  //! Image of \p start under \p w, as a sorted duplicate-free vector.
  [[nodiscard]] std::vector<VertexId> apply_word(Automaton const&     a,
                                                 std::span<VertexId const> start,
                                                 Word const&          w);

  //! All vertices 0..n-1.
  [[nodiscard]] std::vector<VertexId> all_vertices(std::size_t n);

  enum class GenMode { rejection, backbone };

  //! Deterministic random AGW graph.
  //!
  //! rejection: k uniform targets per vertex, redrawn until AGW (at most
  //! 10'000 attempts, then Error(generation_failed)). backbone: a random
  //! Hamiltonian cycle, one loop, uniform remaining slots, shuffled slot order.
  [[nodiscard]] Graph random_agw(std::size_t   n,
                                 std::size_t   k,
                                 std::uint64_t seed,
                                 GenMode       mode);

}  // namespace roadcolor

#endif  // ROADCOLOR_GRAPH_HPP_
