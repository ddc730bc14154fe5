#include "roadcolor/synthesis.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

#include "roadcolor/detail/random.hpp"
#include "roadcolor/error.hpp"

namespace roadcolor {

  std::string_view to_string(Phase phase) noexcept {
    switch (phase) {
      case Phase::two_bunch:
        return "two-bunch";
      case Phase::loop_fast_path:
        return "loop-fast-path";
      case Phase::spanning:
        return "spanning";
    }
    return "unknown";
  }

  namespace {

    // Color-0 in-forest into `sink` along shortest paths, with the loop at
    // `sink` closing it.
    SpanningSubgraph shortest_path_forest(Graph const& g, VertexId sink) {
      std::vector<std::vector<VertexId>> in(g.size());
      for (VertexId v = 0; v < g.size(); ++v) {
        for (VertexId t : g.row(v)) {
          in[t].push_back(v);
        }
      }
      std::vector<std::uint32_t> dist(g.size(), UINT32_MAX);
      std::queue<VertexId>       queue;
      dist[sink] = 0;
      queue.push(sink);
      while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop();
        for (VertexId u : in[v]) {
          if (dist[u] == UINT32_MAX) {
            dist[u] = dist[v] + 1;
            queue.push(u);
          }
        }
      }
      SpanningSubgraph s = initial_spanning(g);
      for (VertexId v = 0; v < g.size(); ++v) {
        std::uint32_t const want = (v == sink) ? 0 : dist[v] - 1;
        for (SlotId j = 0; j < g.out_degree(); ++j) {
          if (dist[g.target(v, j)] == want) {
            s.choice[v] = j;
            break;
          }
        }
      }
      return s;
    }

    Coloring seeded_coloring(std::size_t n, std::size_t k, std::uint64_t seed) {
      std::mt19937_64    rng(seed);
      std::vector<Color> flat(n * k);
      for (std::size_t v = 0; v < n; ++v) {
        std::span<Color> row(flat.data() + v * k, k);
        std::iota(row.begin(), row.end(), Color(0));
        detail::shuffle(row, rng);
      }
      return Coloring(n, k, std::move(flat));
    }

  }  // namespace

  StableColoring colorize_with_stable_pair(Graph const& g, std::uint64_t seed) {
    if (!validate_agw(g).is_agw) {
      throw Error(ErrorCode::not_agw, "graph is not AGW");
    }
    if (g.size() < 2) {
      throw Error(ErrorCode::precondition_violated, "need at least two vertices");
    }

    StableColoring result;
    std::optional<VertexId> looped;
    for (VertexId v = 0; v < g.size() && !looped; ++v) {
      if (g.has_loop(v)) {
        looped = v;
      }
    }
    if (looped) {
      SpanningSubgraph s       = shortest_path_forest(g, *looped);
      result.phase             = Phase::loop_fast_path;
      result.coloring          = alpha_coloring(g, s, seed);
      result.cycle_edge_count  = decompose(g, s).cycle_edge_count;
    } else if (has_vertex_with_two_incoming_bunches(g)) {
      result.phase    = Phase::two_bunch;
      result.coloring = seeded_coloring(g.size(), g.out_degree(), seed);
    } else {
      SpanningResult spanning  = find_stable_friendly_spanning(g);
      result.phase             = Phase::spanning;
      result.coloring          = alpha_coloring(g, spanning.subgraph, seed);
      result.cycle_edge_count  = decompose(g, spanning.subgraph).cycle_edge_count;
      result.spanning_stats    = spanning.stats;
    }
    result.partition = stability_partition(Automaton(g, result.coloring));
    if (result.partition.class_count == g.size()) {
      throw Error(ErrorCode::no_stable_pair,
                  std::string("coloring from the ") + std::string(to_string(result.phase))
                      + " branch has no stable pair");
    }
    return result;
  }

  Coloring lift_coloring(Graph const&              g,
                         Coloring const&           base,
                         StabilityPartition const& part,
                         Coloring const&           q_coloring) {
    std::size_t const k = g.out_degree();
    if (base.size() != g.size() || base.out_degree() != k
        || part.class_of.size() != g.size() || q_coloring.size() != part.class_count
        || q_coloring.out_degree() != k) {
      throw Error(ErrorCode::shape_mismatch,
                  "graph, base coloring, partition and quotient coloring disagree");
    }
    std::vector<Color> flat(g.size() * k);
    for (VertexId v = 0; v < g.size(); ++v) {
      std::uint32_t const cls = part.class_of[v];
      for (SlotId s = 0; s < k; ++s) {
        flat[v * k + s] = q_coloring.color(cls, base.color(v, s));
      }
    }
    return Coloring(g.size(), k, std::move(flat));
  }

  namespace {

    // Compares the lexicographically least shortest merging words of two
    // pairs of equal distance.
    bool word_less(Automaton const&     a,
                   PairDistances const& dist,
                   VertexId p1, VertexId q1,
                   VertexId p2, VertexId q2) {
      while (p1 != q1) {
        Color c1 = dist.first_letter(p1, q1);
        Color c2 = dist.first_letter(p2, q2);
        if (c1 != c2) {
          return c1 < c2;
        }
        p1 = a.next(p1, c1);
        q1 = a.next(q1, c1);
        p2 = a.next(p2, c2);
        q2 = a.next(q2, c2);
      }
      return false;
    }

  }  // namespace

  Word synchronizing_word(Automaton const& a) {
    std::size_t const n = a.size();
    Word              word;
    if (n == 1) {
      return word;
    }
    PairDistances const dist(a);
    for (VertexId q = 1; q < n; ++q) {
      for (VertexId p = 0; p < q; ++p) {
        if (dist.distance(p, q) == PairDistances::unreachable) {
          throw Error(ErrorCode::not_synchronizing,
                      "pair (" + std::to_string(p) + ", " + std::to_string(q)
                          + ") is a deadlock");
        }
      }
    }

    std::vector<VertexId> image = all_vertices(n);
    while (image.size() > 1) {
      // `image` is sorted, so pairs are scanned in (min, max) order.
      VertexId      best_p = 0, best_q = 0;
      std::uint32_t best_d = PairDistances::unreachable;
      bool          minimal = false;  // (1, letter 0) cannot be beaten
      for (std::size_t i = 0; i < image.size() && !minimal; ++i) {
        for (std::size_t j = i + 1; j < image.size() && !minimal; ++j) {
          VertexId      p = image[i], q = image[j];
          std::uint32_t d = dist.distance(p, q);
          if (d < best_d
              || (d == best_d && word_less(a, dist, p, q, best_p, best_q))) {
            best_p  = p;
            best_q  = q;
            best_d  = d;
            minimal = d == 1 && dist.first_letter(p, q) == 0;
          }
        }
      }
      Word piece = dist.merging_word(a, best_p, best_q);
      word.insert(word.end(), piece.begin(), piece.end());
      image = apply_word(a, image, piece);
    }
    return word;
  }

  SynthesisResult synchronizing_coloring(Graph const& g, std::uint64_t seed) {
    if (!validate_agw(g).is_agw) {
      throw Error(ErrorCode::not_agw, "graph is not AGW");
    }
    struct Frame {
      Graph              graph;
      Coloring           base;
      StabilityPartition partition;
    };
    std::vector<Frame> frames;
    SynthesisResult    result;

    Graph current = g;
    while (current.size() > 1) {
      std::uint64_t const level_seed =
          frames.empty() ? seed : detail::mix_seed(seed, frames.size());
      StableColoring sc = colorize_with_stable_pair(current, level_seed);
      result.trace.levels.push_back({current.size(), sc.partition.class_count,
                                     sc.cycle_edge_count, sc.phase});
      Quotient q = quotient(Automaton(current, sc.coloring), sc.partition);
      if (!validate_agw(q.graph).is_agw) {
        throw Error(ErrorCode::invariant_violated,
                    "quotient at depth " + std::to_string(frames.size())
                        + " is not AGW");
      }
      frames.push_back({std::move(current), std::move(sc.coloring),
                        std::move(sc.partition)});
      current = std::move(q.graph);
    }
    result.trace.depth = frames.size();

    Coloring coloring = Coloring::identity(1, g.out_degree());
    for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
      coloring = lift_coloring(it->graph, it->base, it->partition, coloring);
      if (!is_synchronizing(Automaton(it->graph, coloring))) {
        throw Error(ErrorCode::invariant_violated,
                    "lifted coloring on " + std::to_string(it->graph.size())
                        + " vertices is not synchronizing");
      }
    }

    Automaton const a(g, coloring);
    Word            word  = synchronizing_word(a);
    auto const      image = apply_word(a, all_vertices(g.size()), word);
    if (image.size() != 1 || word.size() > greedy_word_bound(g.size())) {
      throw Error(ErrorCode::invariant_violated,
                  "extracted word does not synchronize within the length bound");
    }
    result.report.coloring    = std::move(coloring);
    result.report.word_length = word.size();
    result.report.word        = std::move(word);
    result.report.verified    = true;
    return result;
  }

}  // namespace roadcolor
