#include "roadcolor/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

#include "roadcolor/detail/random.hpp"
#include "roadcolor/error.hpp"

namespace roadcolor {

  std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
      case ErrorCode::invalid_graph:
        return "InvalidGraph";
      case ErrorCode::invalid_coloring:
        return "InvalidColoring";
      case ErrorCode::invalid_params:
        return "InvalidParams";
      case ErrorCode::not_strongly_connected:
        return "NotStronglyConnected";
      case ErrorCode::generation_failed:
        return "GenerationFailed";
      case ErrorCode::no_breaking_edge:
        return "NoBreakingEdge";
      case ErrorCode::algorithm_stuck:
        return "AlgorithmStuck";
      case ErrorCode::precondition_violated:
        return "PreconditionViolated";
      case ErrorCode::not_agw:
        return "NotAgw";
      case ErrorCode::no_stable_pair:
        return "NoStablePair";
      case ErrorCode::invariant_violated:
        return "InvariantViolated";
      case ErrorCode::shape_mismatch:
        return "ShapeMismatch";
      case ErrorCode::not_synchronizing:
        return "NotSynchronizing";
      case ErrorCode::too_large:
        return "TooLarge";
      case ErrorCode::partition_not_found:
        return "PartitionNotFound";
      case ErrorCode::parse_error:
        return "ParseError";
    }
    return "Unknown";
  }

  ////////////////////////////////////////////////////////////////////////
  // Graph
  ////////////////////////////////////////////////////////////////////////

  Graph::Graph(std::size_t n, std::size_t k, std::vector<VertexId> flat_targets)
      : _n(n), _k(k), _adj(std::move(flat_targets)) {
    if (n == 0 || k == 0) {
      throw Error(ErrorCode::invalid_graph, "graph needs n >= 1 and k >= 1");
    }
    if (_adj.size() != n * k) {
      throw Error(ErrorCode::invalid_graph,
                  "expected " + std::to_string(n * k) + " edge slots, got "
                      + std::to_string(_adj.size()));
    }
    for (std::size_t i = 0; i < _adj.size(); ++i) {
      if (_adj[i] >= n) {
        throw Error(ErrorCode::invalid_graph,
                    "vertex " + std::to_string(i / k) + " slot "
                        + std::to_string(i % k) + " targets "
                        + std::to_string(_adj[i]) + ", out of range");
      }
    }
  }

  Graph Graph::from_rows(std::vector<std::vector<VertexId>> const& rows) {
    if (rows.empty() || rows.front().empty()) {
      throw Error(ErrorCode::invalid_graph, "graph needs n >= 1 and k >= 1");
    }
    std::size_t const     k = rows.front().size();
    std::vector<VertexId> flat;
    flat.reserve(rows.size() * k);
    for (std::size_t v = 0; v < rows.size(); ++v) {
      if (rows[v].size() != k) {
        throw Error(ErrorCode::invalid_graph,
                    "vertex " + std::to_string(v) + " has out-degree "
                        + std::to_string(rows[v].size()) + ", expected "
                        + std::to_string(k));
      }
      flat.insert(flat.end(), rows[v].begin(), rows[v].end());
    }
    return Graph(rows.size(), k, std::move(flat));
  }

  std::vector<std::vector<VertexId>> Graph::rows() const {
    std::vector<std::vector<VertexId>> result;
    result.reserve(_n);
    for (VertexId v = 0; v < _n; ++v) {
      auto r = row(v);
      result.emplace_back(r.begin(), r.end());
    }
    return result;
  }

  bool Graph::is_bunch(VertexId v) const noexcept {
    auto r = row(v);
    return std::all_of(
        r.begin(), r.end(), [&](VertexId t) { return t == r.front(); });
  }

  bool Graph::has_loop(VertexId v) const noexcept {
    auto r = row(v);
    return std::find(r.begin(), r.end(), v) != r.end();
  }

  Graph Graph::with_names(std::vector<std::string> names) const {
    if (names.size() != _n) {
      throw Error(ErrorCode::invalid_graph, "names must list every vertex");
    }
    Graph result  = *this;
    result._names = std::move(names);
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Coloring
  ////////////////////////////////////////////////////////////////////////

  Coloring::Coloring(std::size_t n, std::size_t k, std::vector<Color> flat_colors)
      : _n(n), _k(k), _colors(std::move(flat_colors)) {
    if (_colors.size() != n * k) {
      throw Error(ErrorCode::invalid_coloring,
                  "expected " + std::to_string(n * k) + " colors, got "
                      + std::to_string(_colors.size()));
    }
    std::vector<bool> seen(k);
    for (std::size_t v = 0; v < n; ++v) {
      std::fill(seen.begin(), seen.end(), false);
      for (std::size_t s = 0; s < k; ++s) {
        Color c = _colors[v * k + s];
        if (c >= k || seen[c]) {
          throw Error(ErrorCode::invalid_coloring,
                      "row " + std::to_string(v)
                          + " is not a permutation of 0..k-1");
        }
        seen[c] = true;
      }
    }
  }

  Coloring Coloring::from_rows(std::vector<std::vector<Color>> const& rows) {
    if (rows.empty() || rows.front().empty()) {
      throw Error(ErrorCode::invalid_coloring, "coloring must be non-empty");
    }
    std::size_t const  k = rows.front().size();
    std::vector<Color> flat;
    flat.reserve(rows.size() * k);
    for (auto const& r : rows) {
      if (r.size() != k) {
        throw Error(ErrorCode::invalid_coloring, "ragged coloring rows");
      }
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return Coloring(rows.size(), k, std::move(flat));
  }

  Coloring Coloring::identity(std::size_t n, std::size_t k) {
    std::vector<Color> flat(n * k);
    for (std::size_t i = 0; i < flat.size(); ++i) {
      flat[i] = static_cast<Color>(i % k);
    }
    return Coloring(n, k, std::move(flat));
  }

  std::vector<std::vector<Color>> Coloring::rows() const {
    std::vector<std::vector<Color>> result;
    result.reserve(_n);
    for (VertexId v = 0; v < _n; ++v) {
      auto r = row(v);
      result.emplace_back(r.begin(), r.end());
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Automaton
  ////////////////////////////////////////////////////////////////////////

  Automaton::Automaton(Graph graph, Coloring coloring)
      : _graph(std::move(graph)), _coloring(std::move(coloring)) {
    if (_graph.size() != _coloring.size()
        || _graph.out_degree() != _coloring.out_degree()) {
      throw Error(ErrorCode::shape_mismatch,
                  "coloring is " + std::to_string(_coloring.size()) + "x"
                      + std::to_string(_coloring.out_degree()) + ", graph is "
                      + std::to_string(_graph.size()) + "x"
                      + std::to_string(_graph.out_degree()));
    }
    std::size_t const k = _graph.out_degree();
    _delta.resize(_graph.size() * k);
    for (VertexId v = 0; v < _graph.size(); ++v) {
      for (SlotId s = 0; s < k; ++s) {
        _delta[v * k + _coloring.color(v, s)] = _graph.target(v, s);
      }
    }
  }

  VertexId Automaton::next(VertexId v, Word const& w) const noexcept {
    for (Color c : w) {
      v = next(v, c);
    }
    return v;
  }

  ////////////////////////////////////////////////////////////////////////
  // Connectivity and period
  ////////////////////////////////////////////////////////////////////////

  namespace {

    std::size_t count_reachable(std::vector<std::vector<VertexId>> const& out,
                                VertexId                                  root) {
      std::vector<bool>     seen(out.size(), false);
      std::vector<VertexId> stack{root};
      seen[root]        = true;
      std::size_t count = 1;
      while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        for (VertexId t : out[v]) {
          if (!seen[t]) {
            seen[t] = true;
            ++count;
            stack.push_back(t);
          }
        }
      }
      return count;
    }

  }  // namespace

  bool is_strongly_connected(Graph const& g) {
    std::vector<std::vector<VertexId>> out(g.size()), in(g.size());
    for (VertexId v = 0; v < g.size(); ++v) {
      for (VertexId t : g.row(v)) {
        out[v].push_back(t);
        in[t].push_back(v);
      }
    }
    return count_reachable(out, 0) == g.size()
           && count_reachable(in, 0) == g.size();
  }

  std::uint64_t cycle_gcd(Graph const& g) {
    if (!is_strongly_connected(g)) {
      throw Error(ErrorCode::not_strongly_connected,
                  "cycle gcd is defined for strongly connected graphs");
    }
    // BFS potential from vertex 0; every edge u->v contributes
    // |d(u) + 1 - d(v)| and the gcd of these is the period.
    std::vector<std::int64_t> depth(g.size(), -1);
    std::queue<VertexId>      queue;
    depth[0] = 0;
    queue.push(0);
    while (!queue.empty()) {
      VertexId v = queue.front();
      queue.pop();
      for (VertexId t : g.row(v)) {
        if (depth[t] < 0) {
          depth[t] = depth[v] + 1;
          queue.push(t);
        }
      }
    }
    std::uint64_t result = 0;
    for (VertexId v = 0; v < g.size(); ++v) {
      for (VertexId t : g.row(v)) {
        std::int64_t diff = depth[v] + 1 - depth[t];
        result = std::gcd(result, static_cast<std::uint64_t>(diff < 0 ? -diff : diff));
      }
    }
    return result;
  }

  AgwReport validate_agw(Graph const& g) {
    AgwReport report;
    // Out-degree is constant for every constructed Graph.
    report.constant_outdegree = true;
    report.strongly_connected = is_strongly_connected(g);
    report.cycle_gcd = report.strongly_connected ? cycle_gcd(g) : 0;
    report.is_agw = report.strongly_connected && report.constant_outdegree
                    && report.cycle_gcd == 1;
    return report;
  }

  std::vector<VertexId> apply_word(Automaton const&          a,
                                   std::span<VertexId const> start,
                                   Word const&               w) {
    std::vector<VertexId> current(start.begin(), start.end());
    std::vector<bool>     mark(a.size(), false);
    for (Color c : w) {
      std::vector<VertexId> image;
      image.reserve(current.size());
      for (VertexId v : current) {
        VertexId t = a.next(v, c);
        if (!mark[t]) {
          mark[t] = true;
          image.push_back(t);
        }
      }
      for (VertexId t : image) {
        mark[t] = false;
      }
      current = std::move(image);
    }
    std::sort(current.begin(), current.end());
    current.erase(std::unique(current.begin(), current.end()), current.end());
    return current;
  }

  std::vector<VertexId> all_vertices(std::size_t n) {
    std::vector<VertexId> result(n);
    std::iota(result.begin(), result.end(), VertexId(0));
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Random generation
  ////////////////////////////////////////////////////////////////////////

  namespace {
    constexpr std::size_t rejection_cap = 10'000;

    Graph backbone_graph(std::size_t n, std::size_t k, std::mt19937_64& rng) {
      std::vector<VertexId> order = all_vertices(n);
      detail::shuffle(std::span<VertexId>(order), rng);

      std::vector<std::vector<VertexId>> rows(n);
      for (std::size_t i = 0; i < n; ++i) {
        rows[order[i]].push_back(order[(i + 1) % n]);
      }
      VertexId const looped = static_cast<VertexId>(detail::uniform_below(rng, n));
      if (rows[looped].size() < k) {
        rows[looped].push_back(looped);
      }
      for (auto& row : rows) {
        while (row.size() < k) {
          row.push_back(static_cast<VertexId>(detail::uniform_below(rng, n)));
        }
        detail::shuffle(std::span<VertexId>(row), rng);
      }
      return Graph::from_rows(rows);
    }
  }  // namespace

  Graph random_agw(std::size_t n, std::size_t k, std::uint64_t seed, GenMode mode) {
    if (n == 0 || k == 0 || (k == 1 && n != 1)) {
      throw Error(ErrorCode::invalid_params,
                  "need n >= 1 and k >= 2 (k = 1 only for n = 1)");
    }
    std::mt19937_64 rng(seed);
    if (mode == GenMode::backbone) {
      return backbone_graph(n, k, rng);
    }
    std::vector<VertexId> flat(n * k);
    for (std::size_t attempt = 0; attempt < rejection_cap; ++attempt) {
      for (auto& t : flat) {
        t = static_cast<VertexId>(detail::uniform_below(rng, n));
      }
      Graph g(n, k, flat);
      if (validate_agw(g).is_agw) {
        return g;
      }
    }
    throw Error(ErrorCode::generation_failed,
                "no AGW graph after " + std::to_string(rejection_cap)
                    + " attempts");
  }

}  // namespace roadcolor
