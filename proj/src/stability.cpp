#include "roadcolor/stability.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include "roadcolor/error.hpp"

namespace roadcolor {

  namespace {

    // Preimages of every vertex under every letter, CSR layout:
    // pre(c, t) = { v : v.c == t }.
    class Preimages {
     public:
      explicit Preimages(Automaton const& a) : _n(a.size()), _k(a.alphabet_size()) {
        _offset.assign(_k * (_n + 1), 0);
        _source.resize(_k * _n);
        for (Color c = 0; c < _k; ++c) {
          std::uint32_t* off = &_offset[c * (_n + 1)];
          for (VertexId v = 0; v < _n; ++v) {
            ++off[a.next(v, c) + 1];
          }
          for (std::size_t t = 0; t < _n; ++t) {
            off[t + 1] += off[t];
          }
          std::vector<std::uint32_t> fill(off, off + _n);
          for (VertexId v = 0; v < _n; ++v) {
            _source[c * _n + fill[a.next(v, c)]++] = v;
          }
        }
      }

      [[nodiscard]] std::span<VertexId const> of(Color c, VertexId t) const noexcept {
        std::uint32_t const* off = &_offset[c * (_n + 1)];
        return {_source.data() + c * _n + off[t], off[t + 1] - off[t]};
      }

     private:
      std::size_t                _n;
      std::size_t                _k;
      std::vector<std::uint32_t> _offset;
      std::vector<VertexId>      _source;
    };

    // Breadth-first search backwards through the pair automaton from the
    // pairs already marked in `reached`; marks everything that can reach them.
    // `visit` is called on each newly reached pair with its predecessor depth.
    template <typename Visit>
    void backward_closure(Preimages const&                          pre,
                          std::size_t                               k,
                          std::vector<std::pair<VertexId, VertexId>> frontier,
                          std::vector<bool>&                        reached,
                          Visit&&                                   visit) {
      std::size_t head = 0;
      while (head < frontier.size()) {
        auto [p, q] = frontier[head++];
        for (Color c = 0; c < k; ++c) {
          for (VertexId pp : pre.of(c, p)) {
            for (VertexId qq : pre.of(c, q)) {
              std::size_t idx = pair_index(pp, qq);
              if (!reached[idx]) {
                reached[idx] = true;
                visit(idx, p, q);
                frontier.emplace_back(pp, qq);
              }
            }
          }
        }
      }
    }

    std::vector<bool> synchronizable_bits(Automaton const& a, Preimages const& pre) {
      std::size_t const n = a.size();
      std::size_t const k = a.alphabet_size();
      std::vector<bool> reached(pair_count(n), false);
      std::vector<std::pair<VertexId, VertexId>> frontier;
      for (Color c = 0; c < k; ++c) {
        for (VertexId t = 0; t < n; ++t) {
          auto from = pre.of(c, t);
          for (std::size_t i = 0; i < from.size(); ++i) {
            for (std::size_t j = i + 1; j < from.size(); ++j) {
              std::size_t idx = pair_index(from[i], from[j]);
              if (!reached[idx]) {
                reached[idx] = true;
                frontier.emplace_back(from[i], from[j]);
              }
            }
          }
        }
      }
      backward_closure(pre, k, std::move(frontier), reached, [](auto, auto, auto) {});
      return reached;
    }

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // PairDistances
  ////////////////////////////////////////////////////////////////////////

  PairDistances::PairDistances(Automaton const& a) : _n(a.size()) {
    std::size_t const n = a.size();
    std::size_t const k = a.alphabet_size();
    Preimages const   pre(a);
    _distance.assign(pair_count(n), unreachable);
    _letter.assign(pair_count(n), 0);

    std::vector<bool>                          reached(pair_count(n), false);
    std::vector<std::pair<VertexId, VertexId>> frontier;
    for (Color c = 0; c < k; ++c) {
      for (VertexId t = 0; t < n; ++t) {
        auto from = pre.of(c, t);
        for (std::size_t i = 0; i < from.size(); ++i) {
          for (std::size_t j = i + 1; j < from.size(); ++j) {
            std::size_t idx = pair_index(from[i], from[j]);
            if (!reached[idx]) {
              reached[idx]   = true;
              _distance[idx] = 1;
              frontier.emplace_back(from[i], from[j]);
            }
          }
        }
      }
    }
    backward_closure(pre, k, std::move(frontier), reached,
                     [this](std::size_t idx, VertexId p, VertexId q) {
                       _distance[idx] = _distance[pair_index(p, q)] + 1;
                     });

    // The BFS parent need not use the least letter; pick it afterwards.
    for (VertexId q = 1; q < n; ++q) {
      for (VertexId p = 0; p < q; ++p) {
        std::size_t const   idx = pair_index(p, q);
        std::uint32_t const d   = _distance[idx];
        if (d == unreachable) {
          continue;
        }
        for (Color c = 0; c < k; ++c) {
          VertexId pc = a.next(p, c), qc = a.next(q, c);
          if (d == 1 ? pc == qc : (pc != qc && distance(pc, qc) == d - 1)) {
            _letter[idx] = c;
            break;
          }
        }
      }
    }
  }

  Word PairDistances::merging_word(Automaton const& a, VertexId p, VertexId q) const {
    Word w;
    if (distance(p, q) == unreachable) {
      throw Error(ErrorCode::not_synchronizing,
                  "pair (" + std::to_string(p) + ", " + std::to_string(q)
                      + ") is a deadlock");
    }
    while (p != q) {
      Color c = first_letter(p, q);
      w.push_back(c);
      p = a.next(p, c);
      q = a.next(q, c);
    }
    return w;
  }

  ////////////////////////////////////////////////////////////////////////
  // Pair tables
  ////////////////////////////////////////////////////////////////////////

  std::size_t PairTable::stable_off_diagonal_count() const noexcept {
    return static_cast<std::size_t>(std::count(_stable.begin(), _stable.end(), true));
  }

  PairTable synchronizable_pairs(Automaton const& a) {
    Preimages const pre(a);
    return PairTable(a.size(), synchronizable_bits(a, pre),
                     std::vector<bool>(pair_count(a.size()), false));
  }

  PairTable stable_pairs(Automaton const& a) {
    std::size_t const n = a.size();
    Preimages const   pre(a);
    std::vector<bool> sync = synchronizable_bits(a, pre);

    // Unstable pairs are those that reach a deadlock.
    std::vector<bool>                          unstable(pair_count(n), false);
    std::vector<std::pair<VertexId, VertexId>> frontier;
    for (VertexId q = 1; q < n; ++q) {
      for (VertexId p = 0; p < q; ++p) {
        std::size_t idx = pair_index(p, q);
        if (!sync[idx]) {
          unstable[idx] = true;
          frontier.emplace_back(p, q);
        }
      }
    }
    backward_closure(pre, a.alphabet_size(), std::move(frontier), unstable,
                     [](auto, auto, auto) {});

    std::vector<bool> stable(pair_count(n));
    for (std::size_t i = 0; i < stable.size(); ++i) {
      stable[i] = !unstable[i];
    }
    return PairTable(n, std::move(sync), std::move(stable));
  }

  ////////////////////////////////////////////////////////////////////////
  // Partition and quotient
  ////////////////////////////////////////////////////////////////////////

  std::vector<VertexId> StabilityPartition::representatives() const {
    std::vector<VertexId> rep(class_count, UINT32_MAX);
    for (VertexId v = 0; v < class_of.size(); ++v) {
      rep[class_of[v]] = std::min(rep[class_of[v]], v);
    }
    return rep;
  }

  StabilityPartition stability_partition(Automaton const& a) {
    return stability_partition(a, stable_pairs(a));
  }

  StabilityPartition stability_partition(Automaton const& a, PairTable const& table) {
    std::size_t const     n = a.size();
    std::vector<VertexId> parent(n);
    std::iota(parent.begin(), parent.end(), VertexId(0));
    auto find = [&](VertexId v) {
      while (parent[v] != v) {
        parent[v] = parent[parent[v]];
        v         = parent[v];
      }
      return v;
    };
    for (VertexId q = 1; q < n; ++q) {
      for (VertexId p = 0; p < q; ++p) {
        if (table.stable(p, q)) {
          VertexId rp = find(p), rq = find(q);
          if (rp != rq) {
            parent[std::max(rp, rq)] = std::min(rp, rq);
          }
        }
      }
    }

    StabilityPartition part;
    part.class_of.assign(n, 0);
    std::vector<std::uint32_t> id_of_root(n, UINT32_MAX);
    std::vector<std::vector<VertexId>> members;
    for (VertexId v = 0; v < n; ++v) {
      VertexId r = find(v);
      if (id_of_root[r] == UINT32_MAX) {
        id_of_root[r] = part.class_count++;
        members.emplace_back();
      }
      part.class_of[v] = id_of_root[r];
      members[part.class_of[v]].push_back(v);
    }

    for (auto const& cls : members) {
      for (std::size_t i = 0; i < cls.size(); ++i) {
        for (std::size_t j = i + 1; j < cls.size(); ++j) {
          if (!table.stable(cls[i], cls[j])) {
            throw Error(ErrorCode::invariant_violated,
                        "stability is not transitive at ("
                            + std::to_string(cls[i]) + ", "
                            + std::to_string(cls[j]) + ")");
          }
        }
      }
      for (Color c = 0; c < a.alphabet_size(); ++c) {
        std::uint32_t const image = part.class_of[a.next(cls.front(), c)];
        for (VertexId v : cls) {
          if (part.class_of[a.next(v, c)] != image) {
            throw Error(ErrorCode::invariant_violated,
                        "stability is not a congruence at vertex "
                            + std::to_string(v) + ", color " + std::to_string(c));
          }
        }
      }
    }
    return part;
  }

  Quotient quotient(Automaton const& a, StabilityPartition const& part) {
    if (part.class_of.size() != a.size() || part.class_count == 0) {
      throw Error(ErrorCode::shape_mismatch, "partition does not fit the automaton");
    }
    std::size_t const     k   = a.alphabet_size();
    std::vector<VertexId> rep = part.representatives();
    std::vector<VertexId> flat(part.class_count * k);
    for (std::uint32_t cls = 0; cls < part.class_count; ++cls) {
      for (Color c = 0; c < k; ++c) {
        flat[cls * k + c] = part.class_of[a.next(rep[cls], c)];
      }
    }
    for (VertexId v = 0; v < a.size(); ++v) {
      std::uint32_t cls = part.class_of[v];
      for (Color c = 0; c < k; ++c) {
        if (part.class_of[a.next(v, c)] != flat[cls * k + c]) {
          throw Error(ErrorCode::invariant_violated,
                      "class " + std::to_string(cls) + " is not well defined at vertex "
                          + std::to_string(v));
        }
      }
    }
    return Quotient{Graph(part.class_count, k, std::move(flat)),
                    Coloring::identity(part.class_count, k)};
  }

  bool is_synchronizing(Automaton const& a) {
    if (!is_strongly_connected(a.graph())) {
      throw Error(ErrorCode::not_strongly_connected,
                  "synchronization check needs a strongly connected graph");
    }
    Preimages const         pre(a);
    std::vector<bool> const sync = synchronizable_bits(a, pre);
    return std::all_of(sync.begin(), sync.end(), [](bool b) { return b; });
  }

}  // namespace roadcolor
