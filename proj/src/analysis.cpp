#include "roadcolor/analysis.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>

#include <boost/multiprecision/cpp_int.hpp>

#include "roadcolor/error.hpp"
#include "roadcolor/stability.hpp"

namespace roadcolor {

  using BigRational = boost::multiprecision::cpp_rational;

  BigInt WeightVector::weight_of(std::vector<VertexId> const& set) const {
    BigInt sum = 0;
    for (VertexId v : set) {
      sum += weights[v];
    }
    return sum;
  }

  ////////////////////////////////////////////////////////////////////////
  // Weights
  ////////////////////////////////////////////////////////////////////////

  WeightVector weight_vector(Graph const& g) {
    if (!is_strongly_connected(g)) {
      throw Error(ErrorCode::not_strongly_connected,
                  "weights need a strongly connected graph");
    }
    std::size_t const n = g.size();
    // Row i of the system is column i of (M - kI): sum_j u_j (M_ji - k d_ji).
    std::vector<std::vector<BigRational>> A(n, std::vector<BigRational>(n, 0));
    for (VertexId j = 0; j < n; ++j) {
      for (VertexId t : g.row(j)) {
        A[t][j] += 1;
      }
      A[j][j] -= static_cast<long>(g.out_degree());
    }

    // Reduced row echelon form.
    std::vector<std::size_t> pivot_col;
    std::size_t              row = 0;
    for (std::size_t col = 0; col < n && row < n; ++col) {
      std::size_t sel = row;
      while (sel < n && A[sel][col] == 0) {
        ++sel;
      }
      if (sel == n) {
        continue;
      }
      std::swap(A[sel], A[row]);
      BigRational const inv = 1 / A[row][col];
      for (std::size_t c = col; c < n; ++c) {
        A[row][c] *= inv;
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (r == row || A[r][col] == 0) {
          continue;
        }
        BigRational const factor = A[r][col];
        for (std::size_t c = col; c < n; ++c) {
          if (A[row][c] != 0) {
            A[r][c] -= factor * A[row][c];
          }
        }
      }
      pivot_col.push_back(col);
      ++row;
    }
    if (pivot_col.size() != n - 1) {
      throw Error(ErrorCode::invariant_violated,
                  "eigenspace of k has dimension " + std::to_string(n - pivot_col.size()));
    }
    std::size_t free_col = n - 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) {
      if (pivot_col[i] != i) {
        free_col = i;
        break;
      }
    }

    std::vector<BigRational> u(n, 0);
    u[free_col] = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r) {
      u[pivot_col[r]] = -A[r][free_col];
    }

    BigInt lcm = 1;
    for (auto const& x : u) {
      lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(x));
    }
    WeightVector result;
    BigInt       gcd = 0;
    for (auto const& x : u) {
      BigInt v = boost::multiprecision::numerator(x) * (lcm / boost::multiprecision::denominator(x));
      gcd      = boost::multiprecision::gcd(gcd, v);
      result.weights.push_back(std::move(v));
    }
    if (result.weights.front() < 0) {
      gcd = -gcd;
    }
    result.total = 0;
    for (auto& w : result.weights) {
      w /= gcd;
      if (w <= 0) {
        throw Error(ErrorCode::invariant_violated,
                    "eigenvector for k is not strictly positive");
      }
      result.total += w;
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Subset helpers
  ////////////////////////////////////////////////////////////////////////

  namespace {

    using Mask = std::uint64_t;

    void check_subset_limit(Automaton const& a, std::size_t limit_n) {
      if (a.size() > limit_n || a.size() > 64) {
        throw Error(ErrorCode::too_large,
                    std::to_string(a.size()) + " states exceed the subset limit "
                        + std::to_string(std::min<std::size_t>(limit_n, 64)));
      }
    }

    Mask full_mask(std::size_t n) {
      return n == 64 ? ~Mask(0) : (Mask(1) << n) - 1;
    }

    Mask image(Automaton const& a, Mask set, Color c) {
      Mask out = 0;
      while (set != 0) {
        int v = std::countr_zero(set);
        set &= set - 1;
        out |= Mask(1) << a.next(static_cast<VertexId>(v), c);
      }
      return out;
    }

    Mask preimage(Automaton const& a, Mask set, Color c) {
      Mask out = 0;
      for (VertexId v = 0; v < a.size(); ++v) {
        if (set >> a.next(v, c) & 1) {
          out |= Mask(1) << v;
        }
      }
      return out;
    }

    VertexSet to_set(Mask m) {
      VertexSet out;
      while (m != 0) {
        out.push_back(static_cast<VertexId>(std::countr_zero(m)));
        m &= m - 1;
      }
      return out;
    }

    Mask to_mask(VertexSet const& s) {
      Mask m = 0;
      for (VertexId v : s) {
        m |= Mask(1) << v;
      }
      return m;
    }

    std::string show(VertexSet const& s) {
      std::ostringstream os;
      os << '{';
      for (std::size_t i = 0; i < s.size(); ++i) {
        os << (i ? "," : "") << s[i];
      }
      os << '}';
      return os.str();
    }

    // Images of the full set under non-empty words.
    std::vector<Mask> reachable_images(Automaton const& a) {
      std::set<Mask>   seen;
      std::queue<Mask> queue;
      Mask const       full = full_mask(a.size());
      for (Color c = 0; c < a.alphabet_size(); ++c) {
        Mask m = image(a, full, c);
        if (seen.insert(m).second) {
          queue.push(m);
        }
      }
      while (!queue.empty()) {
        Mask m = queue.front();
        queue.pop();
        for (Color c = 0; c < a.alphabet_size(); ++c) {
          Mask next = image(a, m, c);
          if (seen.insert(next).second) {
            queue.push(next);
          }
        }
      }
      return {seen.begin(), seen.end()};
    }

  }  // namespace

  std::optional<Word> shortest_sync_word(Automaton const& a, std::size_t limit_n) {
    check_subset_limit(a, limit_n);
    if (a.size() == 1) {
      return Word{};
    }
    struct Step {
      Mask  parent;
      Color letter;
    };
    std::unordered_map<Mask, Step> visited;
    std::queue<Mask>               queue;
    Mask const                     full = full_mask(a.size());
    visited.emplace(full, Step{full, 0});
    queue.push(full);
    while (!queue.empty()) {
      Mask m = queue.front();
      queue.pop();
      for (Color c = 0; c < a.alphabet_size(); ++c) {
        Mask next = image(a, m, c);
        if (visited.contains(next)) {
          continue;
        }
        visited.emplace(next, Step{m, c});
        if (std::has_single_bit(next)) {
          Word w;
          for (Mask at = next; at != full; at = visited.at(at).parent) {
            w.push_back(visited.at(at).letter);
          }
          std::reverse(w.begin(), w.end());
          return w;
        }
        queue.push(next);
      }
    }
    return std::nullopt;
  }

  ////////////////////////////////////////////////////////////////////////
  // Coloring sweep
  ////////////////////////////////////////////////////////////////////////

  ColoringSweep::ColoringSweep(Graph const& g, std::uint64_t limit)
      : _n(g.size()), _k(g.out_degree()) {
    std::uint64_t per_vertex = 1;
    for (std::uint64_t i = 2; i <= _k; ++i) {
      if (per_vertex > limit / i) {
        throw Error(ErrorCode::too_large, "k! exceeds the coloring limit");
      }
      per_vertex *= i;
    }
    _total = 1;
    for (std::size_t v = 0; v < _n; ++v) {
      if (_total > limit / per_vertex) {
        throw Error(ErrorCode::too_large,
                    "(k!)^n exceeds the coloring limit " + std::to_string(limit));
      }
      _total *= per_vertex;
    }
    _current.resize(_n * _k);
    for (std::size_t i = 0; i < _current.size(); ++i) {
      _current[i] = static_cast<Color>(i % _k);
    }
  }

  std::optional<Coloring> ColoringSweep::next() {
    if (_done) {
      return std::nullopt;
    }
    if (_started) {
      std::size_t v = _n;
      while (v > 0) {
        --v;
        auto first = _current.begin() + static_cast<std::ptrdiff_t>(v * _k);
        if (std::next_permutation(first, first + static_cast<std::ptrdiff_t>(_k))) {
          break;
        }
        if (v == 0) {
          _done = true;
          return std::nullopt;
        }
      }
    }
    _started = true;
    return Coloring(_n, _k, _current);
  }

  std::vector<Coloring> enumerate_colorings(Graph const& g, std::uint64_t limit) {
    ColoringSweep         sweep(g, limit);
    std::vector<Coloring> result;
    result.reserve(sweep.total());
    while (auto c = sweep.next()) {
      result.push_back(std::move(*c));
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // F-structures
  ////////////////////////////////////////////////////////////////////////

  std::vector<VertexSet> f_cliques(Automaton const& a, std::size_t limit_n) {
    check_subset_limit(a, limit_n);
    PairTable const        table = synchronizable_pairs(a);
    std::vector<VertexSet> result;
    for (Mask m : reachable_images(a)) {
      VertexSet s  = to_set(m);
      bool      ok = true;
      for (std::size_t i = 0; i < s.size() && ok; ++i) {
        for (std::size_t j = i + 1; j < s.size() && ok; ++j) {
          ok = table.deadlock(s[i], s[j]);
        }
      }
      if (ok) {
        result.push_back(std::move(s));
      }
    }
    std::sort(result.begin(), result.end());
    return result;
  }

  namespace {

    bool exact_cover(std::vector<Mask> const&  candidates,
                     Mask                      covered,
                     Mask                      full,
                     std::vector<Mask>&        chosen) {
      if (covered == full) {
        return true;
      }
      Mask const uncovered = ~covered & full;
      Mask const lowest    = uncovered & (~uncovered + 1);
      for (Mask m : candidates) {
        if ((m & lowest) && !(m & covered)) {
          chosen.push_back(m);
          if (exact_cover(candidates, covered | m, full, chosen)) {
            return true;
          }
          chosen.pop_back();
        }
      }
      return false;
    }

  }  // namespace

  FStructures f_maximal_partition(Automaton const& a, std::size_t limit_n) {
    check_subset_limit(a, limit_n);
    WeightVector const w = weight_vector(a.graph());

    // Mergeable sets are contained in preimages {x} s^-1 of single states.
    std::set<Mask>   seen;
    std::queue<Mask> queue;
    for (VertexId x = 0; x < a.size(); ++x) {
      for (Color c = 0; c < a.alphabet_size(); ++c) {
        Mask m = preimage(a, Mask(1) << x, c);
        if (m != 0 && seen.insert(m).second) {
          queue.push(m);
        }
      }
    }
    while (!queue.empty()) {
      Mask m = queue.front();
      queue.pop();
      for (Color c = 0; c < a.alphabet_size(); ++c) {
        Mask next = preimage(a, m, c);
        if (next != 0 && seen.insert(next).second) {
          queue.push(next);
        }
      }
    }
    for (VertexId x = 0; x < a.size(); ++x) {
      seen.insert(Mask(1) << x);
    }

    FStructures result;
    result.f_maximal_weight = 0;
    std::vector<std::pair<Mask, BigInt>> weighted;
    for (Mask m : seen) {
      BigInt wm = w.weight_of(to_set(m));
      result.f_maximal_weight = std::max(result.f_maximal_weight, wm);
      weighted.emplace_back(m, std::move(wm));
    }
    std::vector<Mask> heaviest;
    for (auto const& [m, wm] : weighted) {
      if (wm == result.f_maximal_weight) {
        heaviest.push_back(m);
      }
    }
    std::vector<Mask> chosen;
    if (!exact_cover(heaviest, 0, full_mask(a.size()), chosen)) {
      throw Error(ErrorCode::partition_not_found,
                  "no partition into mergeable sets of maximal weight");
    }
    for (Mask m : chosen) {
      result.f_maximal_partition.push_back(to_set(m));
    }
    std::sort(result.f_maximal_partition.begin(), result.f_maximal_partition.end());
    return result;
  }

  FStructures f_structures(Automaton const& a, std::size_t limit_n) {
    FStructures result = f_maximal_partition(a, limit_n);
    result.f_cliques   = f_cliques(a, limit_n);
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Lemma checks
  ////////////////////////////////////////////////////////////////////////

  bool LemmaReport::all_passed() const noexcept {
    return std::all_of(checks.begin(), checks.end(),
                       [](LemmaCheck const& c) { return c.passed; });
  }

  namespace {

    void fail(LemmaCheck& check, std::string witness) {
      if (check.passed) {
        check.passed  = false;
        check.witness = std::move(witness);
      }
    }

  }  // namespace

  LemmaReport check_lemmas(Automaton const&                       a,
                           std::optional<SpanningSubgraph> const& alpha,
                           std::size_t                            limit_n) {
    check_subset_limit(a, limit_n);
    LemmaReport report;

    LemmaCheck partition{"f-maximal-partition", true, true, ""};
    FStructures fs;
    try {
      fs = f_maximal_partition(a, limit_n);
    } catch (Error const& e) {
      if (e.code() != ErrorCode::partition_not_found) {
        throw;
      }
      fail(partition, e.what());
    }
    fs.f_cliques = f_cliques(a, limit_n);
    report.checks.push_back(partition);

    WeightVector const w = weight_vector(a.graph());
    std::set<Mask>     clique_masks;
    for (auto const& f : fs.f_cliques) {
      clique_masks.insert(to_mask(f));
    }

    LemmaCheck uniform{"uniform-size", true, true, ""};
    if (!partition.passed) {
      uniform.applicable = false;
    } else if (w.total % fs.f_maximal_weight != 0) {
      fail(uniform, "w(all) is not a multiple of the F-maximal weight");
    } else {
      BigInt const expected = w.total / fs.f_maximal_weight;
      for (auto const& f : fs.f_cliques) {
        if (BigInt(f.size()) != expected) {
          fail(uniform, show(f) + " has size " + std::to_string(f.size())
                            + ", expected " + expected.str());
        }
      }
    }
    report.checks.push_back(uniform);

    LemmaCheck closure{"closure", true, true, ""};
    Mask       covered = 0;
    for (auto const& f : fs.f_cliques) {
      Mask m = to_mask(f);
      covered |= m;
      for (Color c = 0; c < a.alphabet_size(); ++c) {
        if (!clique_masks.contains(image(a, m, c))) {
          fail(closure, show(f) + " under color " + std::to_string(c)
                            + " is not an F-clique");
        }
      }
    }
    if (covered != full_mask(a.size())) {
      fail(closure, "vertex " + std::to_string(std::countr_one(covered))
                        + " lies in no F-clique");
    }
    report.checks.push_back(closure);

    LemmaCheck overlap{"overlap", true, true, ""};
    overlap.applicable = stable_pairs(a).stable_off_diagonal_count() == 0;
    if (overlap.applicable) {
      for (auto const& fa : fs.f_cliques) {
        if (fa.size() < 2) {
          continue;
        }
        for (auto const& fb : fs.f_cliques) {
          if (fa == fb) {
            continue;
          }
          std::size_t const common =
              static_cast<std::size_t>(std::popcount(to_mask(fa) & to_mask(fb)));
          if (fa.size() - common != fb.size() - common || fa.size() - common <= 1) {
            fail(overlap, show(fa) + " and " + show(fb) + " share "
                              + std::to_string(common) + " vertices");
          }
        }
      }
    }
    report.checks.push_back(overlap);

    LemmaCheck levels{"level-sets", true, true, ""};
    levels.applicable = false;
    if (alpha) {
      levels.applicable = true;
      for (VertexId v = 0; v < a.size(); ++v) {
        if (a.coloring().color(v, alpha->choice[v]) != 0) {
          levels.applicable = false;
        }
      }
    }
    if (levels.applicable) {
      Decomposition const d = decompose(a.graph(), *alpha);
      std::map<std::pair<VertexId, std::uint32_t>, Mask> level_sets;
      for (VertexId v = 0; v < a.size(); ++v) {
        if (d.level[v] > 0) {
          level_sets[{d.tree_root[v], d.level[v]}] |= Mask(1) << v;
        }
      }
      for (auto const& f : fs.f_cliques) {
        Mask const m = to_mask(f);
        for (auto const& [key, set] : level_sets) {
          if (std::popcount(m & set) > 1) {
            fail(levels, show(f) + " meets level " + std::to_string(key.second)
                             + " of the tree at " + std::to_string(key.first)
                             + " twice");
          }
        }
      }
    }
    report.checks.push_back(levels);
    return report;
  }

}  // namespace roadcolor
