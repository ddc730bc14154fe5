#include "roadcolor/spanning.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "roadcolor/detail/random.hpp"
#include "roadcolor/error.hpp"

namespace roadcolor {

  SpanningSubgraph initial_spanning(Graph const& g) {
    return SpanningSubgraph{std::vector<SlotId>(g.size(), 0)};
  }

  std::vector<VertexId> Decomposition::max_level_vertices() const {
    std::vector<VertexId> result;
    if (max_level == 0) {
      return result;
    }
    for (VertexId v = 0; v < level.size(); ++v) {
      if (level[v] == max_level) {
        result.push_back(v);
      }
    }
    return result;
  }

  Decomposition decompose(Graph const& g, SpanningSubgraph const& s) {
    std::size_t const n = g.size();
    Decomposition     d;
    d.on_cycle.assign(n, false);
    d.level.assign(n, 0);
    d.tree_root.assign(n, 0);
    d.cycle_id.assign(n, 0);

    constexpr std::uint32_t unvisited = UINT32_MAX;
    constexpr std::uint32_t finished  = UINT32_MAX - 1;
    // For vertices on the current walk, position in the walk.
    std::vector<std::uint32_t> state(n, unvisited);
    std::vector<VertexId>      walk;

    for (VertexId start = 0; start < n; ++start) {
      if (state[start] != unvisited) {
        continue;
      }
      walk.clear();
      VertexId v = start;
      while (state[v] == unvisited) {
        state[v] = static_cast<std::uint32_t>(walk.size());
        walk.push_back(v);
        v = successor(g, s, v);
      }
      if (state[v] != finished) {
        // Closed a new cycle at walk position state[v].
        std::size_t const from = state[v];
        for (std::size_t i = from; i < walk.size(); ++i) {
          VertexId u     = walk[i];
          d.on_cycle[u]  = true;
          d.tree_root[u] = u;
          d.cycle_id[u]  = d.cycle_count;
          state[u]       = finished;
        }
        d.cycle_edge_count += static_cast<std::uint32_t>(walk.size() - from);
        ++d.cycle_count;
        walk.resize(from);
      }
      for (auto it = walk.rbegin(); it != walk.rend(); ++it) {
        VertexId u     = *it;
        VertexId next  = successor(g, s, u);
        d.level[u]     = d.level[next] + 1;
        d.tree_root[u] = d.tree_root[next];
        d.cycle_id[u]  = d.cycle_id[next];
        d.max_level    = std::max(d.max_level, d.level[u]);
        state[u]       = finished;
      }
    }
    return d;
  }

  bool max_level_in_single_tree(Decomposition const& d) {
    if (d.max_level == 0) {
      return false;
    }
    std::optional<VertexId> root;
    for (VertexId v = 0; v < d.level.size(); ++v) {
      if (d.level[v] != d.max_level) {
        continue;
      }
      if (root && *root != d.tree_root[v]) {
        return false;
      }
      root = d.tree_root[v];
    }
    return true;
  }

  std::optional<BunchWitness> has_vertex_with_two_incoming_bunches(Graph const& g) {
    constexpr VertexId    none = UINT32_MAX;
    std::vector<VertexId> first(g.size(), none), second(g.size(), none);
    for (VertexId v = 0; v < g.size(); ++v) {
      if (!g.is_bunch(v)) {
        continue;
      }
      VertexId t = g.target(v, 0);
      if (first[t] == none) {
        first[t] = v;
      } else if (second[t] == none) {
        second[t] = v;
      }
    }
    for (VertexId t = 0; t < g.size(); ++t) {
      if (second[t] != none) {
        return BunchWitness{t, first[t], second[t]};
      }
    }
    return std::nullopt;
  }

  SpanningSubgraph break_all_cycles(Graph const& g, SpanningSubgraph const& s) {
    Decomposition d = decompose(g, s);
    if (d.cycle_edge_count != g.size()) {
      throw Error(ErrorCode::precondition_violated,
                  "break_all_cycles expects a spanning subgraph of cycles only");
    }
    for (VertexId p = 0; p < g.size(); ++p) {
      VertexId const chosen = successor(g, s, p);
      for (SlotId j = 0; j < g.out_degree(); ++j) {
        if (g.target(p, j) != chosen) {
          SpanningSubgraph result = s;
          result.choice[p]        = j;
          return result;
        }
      }
    }
    throw Error(ErrorCode::no_breaking_edge,
                "every vertex emits a bunch, no edge can break a cycle");
  }

  namespace {

    enum class Verdict { none, improved, done };

    struct Outcome {
      Verdict          verdict = Verdict::none;
      SpanningSubgraph subgraph;
    };

    class SpanningSearch {
     public:
      explicit SpanningSearch(Graph const& g) : _g(g) {}

      SpanningResult run() {
        SpanningSubgraph s = initial_spanning(_g);
        while (true) {
          climb(s);
          Decomposition d = decompose(_g, s);
          if (d.max_level == 0) {
            _stats.broke_cycles = true;
            return {break_all_cycles(_g, s), _stats};
          }
          if (max_level_in_single_tree(d)) {
            return {s, _stats};
          }
          _budget = 4 * _g.size() * _g.out_degree();
          Outcome out = tree_moves(s, d);
          if (out.verdict == Verdict::none) {
            out = swap_scan(s, d);
            if (out.verdict != Verdict::none) {
              ++_stats.fallback_swaps;
            }
          }
          switch (out.verdict) {
            case Verdict::done:
              return {std::move(out.subgraph), _stats};
            case Verdict::improved:
              ++_stats.phase_b_improvements;
              s = std::move(out.subgraph);
              break;
            case Verdict::none:
              throw Error(ErrorCode::algorithm_stuck,
                          "no tree move reaches a single deepest tree");
          }
        }
      }

     private:
      // Phase A: accept single slot swaps that strictly increase the number
      // of cycle edges until none does.
      void climb(SpanningSubgraph& s) {
        std::uint32_t cycles = decompose(_g, s).cycle_edge_count;
        bool          moved  = true;
        while (moved) {
          moved = false;
          for (VertexId v = 0; v < _g.size(); ++v) {
            SlotId const   original = s.choice[v];
            VertexId const current  = _g.target(v, original);
            for (SlotId j = 0; j < _g.out_degree(); ++j) {
              if (_g.target(v, j) == current) {
                continue;
              }
              s.choice[v]       = j;
              std::uint32_t now = decompose(_g, s).cycle_edge_count;
              if (now > cycles) {
                cycles = now;
                moved  = true;
                ++_stats.phase_a_improvements;
                break;
              }
              s.choice[v] = original;
            }
          }
        }
      }

      Outcome judge(SpanningSubgraph const& candidate, Decomposition const& base) {
        ++_stats.moves_evaluated;
        if (_budget > 0) {
          --_budget;
        }
        Decomposition d = decompose(_g, candidate);
        if (d.cycle_edge_count > base.cycle_edge_count) {
          return {Verdict::improved, candidate};
        }
        if (max_level_in_single_tree(d)) {
          return {Verdict::done, candidate};
        }
        return {};
      }

      // Phase B: extend the path from a deepest vertex p to its root r by
      // redirecting a -> p (a has a non-chosen edge into p), the chosen edge
      // b -> r of p's path, or the cycle edge c -> r.
      Outcome tree_moves(SpanningSubgraph const& s, Decomposition const& d) {
        for (VertexId p : d.max_level_vertices()) {
          VertexId const r = d.tree_root[p];
          VertexId       b = p;
          while (successor(_g, s, b) != r) {
            b = successor(_g, s, b);
          }
          VertexId c = r;
          while (successor(_g, s, c) != r) {
            c = successor(_g, s, c);
          }

          for (VertexId a = 0; a < _g.size(); ++a) {
            auto row = _g.row(a);
            auto hit = std::find(row.begin(), row.end(), p);
            if (hit == row.end()) {
              continue;
            }
            SlotId const to_p = static_cast<SlotId>(hit - row.begin());

            // Move 1: a -> p.
            SpanningSubgraph moved = s;
            moved.choice[a]        = to_p;
            if (Outcome out = judge(moved, d); out.verdict != Verdict::none) {
              return out;
            }

            // Move 2: b -> v with v != r. When v lies on a cycle (r's own,
            // which swaps the root, or another one) Move 1 is retried on top.
            if (!_g.is_bunch(b)) {
              for (SlotId j : distinct_slots(b, r)) {
                SpanningSubgraph rerooted = s;
                rerooted.choice[b]        = j;
                if (Outcome out = judge(rerooted, d); out.verdict != Verdict::none) {
                  return out;
                }
                if (d.on_cycle[_g.target(b, j)] && a != b) {
                  rerooted.choice[a] = to_p;
                  if (Outcome out = judge(rerooted, d); out.verdict != Verdict::none) {
                    return out;
                  }
                }
              }
            }

            // Move 3: c -> u with u != r.
            for (SlotId j : distinct_slots(c, r)) {
              SpanningSubgraph opened = s;
              opened.choice[c]        = j;
              if (Outcome out = judge(opened, d); out.verdict != Verdict::none) {
                return out;
              }
            }
            if (_budget == 0) {
              return {};
            }
          }
        }
        return {};
      }

      // Last resort: any single swap that grows the cycles or isolates the
      // deepest level in one tree.
      Outcome swap_scan(SpanningSubgraph const& s, Decomposition const& d) {
        for (VertexId v = 0; v < _g.size(); ++v) {
          for (SlotId j : distinct_slots(v, successor(_g, s, v))) {
            SpanningSubgraph candidate = s;
            candidate.choice[v]        = j;
            if (Outcome out = judge(candidate, d); out.verdict != Verdict::none) {
              return out;
            }
          }
        }
        return {};
      }

      // One slot per distinct target of v other than `skip`.
      std::vector<SlotId> distinct_slots(VertexId v, VertexId skip) const {
        std::vector<SlotId>   result;
        std::vector<VertexId> seen{skip};
        for (SlotId j = 0; j < _g.out_degree(); ++j) {
          VertexId t = _g.target(v, j);
          if (std::find(seen.begin(), seen.end(), t) == seen.end()) {
            seen.push_back(t);
            result.push_back(j);
          }
        }
        return result;
      }

      Graph const&        _g;
      SpanningSearchStats _stats;
      std::size_t         _budget = 0;
    };

  }  // namespace

  SpanningResult find_stable_friendly_spanning(Graph const& g) {
    if (g.size() < 2) {
      throw Error(ErrorCode::precondition_violated, "need at least two vertices");
    }
    if (!validate_agw(g).is_agw) {
      throw Error(ErrorCode::precondition_violated, "graph is not AGW");
    }
    for (VertexId v = 0; v < g.size(); ++v) {
      if (g.has_loop(v)) {
        throw Error(ErrorCode::precondition_violated,
                    "vertex " + std::to_string(v) + " has a loop");
      }
    }
    if (has_vertex_with_two_incoming_bunches(g)) {
      throw Error(ErrorCode::precondition_violated,
                  "some vertex receives two bunches");
    }
    return SpanningSearch(g).run();
  }

  Coloring alpha_coloring(Graph const& g, SpanningSubgraph const& s, std::uint64_t seed) {
    std::size_t const  k = g.out_degree();
    std::mt19937_64    rng(seed);
    std::vector<Color> flat(g.size() * k);
    std::vector<Color> others(k - 1);
    for (VertexId v = 0; v < g.size(); ++v) {
      std::iota(others.begin(), others.end(), Color(1));
      detail::shuffle(std::span<Color>(others), rng);
      auto next = others.begin();
      for (SlotId j = 0; j < k; ++j) {
        flat[v * k + j] = (j == s.choice[v]) ? 0 : *next++;
      }
    }
    return Coloring(g.size(), k, std::move(flat));
  }

}  // namespace roadcolor
