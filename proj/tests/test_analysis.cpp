#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "roadcolor/analysis.hpp"
#include "roadcolor/error.hpp"
#include "roadcolor/spanning.hpp"
#include "roadcolor/stability.hpp"

using namespace roadcolor;

namespace {

  std::vector<BigInt> ints(std::initializer_list<int> xs) {
    return {xs.begin(), xs.end()};
  }

  // u M == k u with integer arithmetic, all positive, gcd 1.
  void check_eigen(Graph const& g, WeightVector const& w) {
    std::size_t const   n = g.size();
    std::vector<BigInt> left(n, 0);
    for (VertexId v = 0; v < n; ++v) {
      for (VertexId t : g.row(v)) {
        left[t] += w.weights[v];
      }
    }
    BigInt divisor = 0, total = 0;
    for (VertexId v = 0; v < n; ++v) {
      CHECK(left[v] == w.weights[v] * BigInt(g.out_degree()));
      CHECK(w.weights[v] > 0);
      divisor = boost::multiprecision::gcd(divisor, w.weights[v]);
      total += w.weights[v];
    }
    CHECK(divisor == 1);
    CHECK(total == w.total);
  }

  Coloring random_coloring(std::size_t n, std::size_t k, std::mt19937_64& rng) {
    std::vector<Color> flat;
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<Color> p(k);
      std::iota(p.begin(), p.end(), Color(0));
      std::shuffle(p.begin(), p.end(), rng);
      flat.insert(flat.end(), p.begin(), p.end());
    }
    return Coloring(n, k, flat);
  }

  // Non-synchronizing colorings are rare on random graphs; Eulerian circulants
  // with a shared coloring are a reliable source of them.
  std::vector<Automaton> lemma_corpus() {
    std::vector<Automaton> out;
    std::mt19937_64        rng(77);
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      std::size_t const n = 2 + seed % 7;
      std::size_t const k = 2 + seed % 2;
      Graph const       g = random_agw(n, k, seed, seed % 2 ? GenMode::backbone
                                                            : GenMode::rejection);
      out.emplace_back(g, random_coloring(n, k, rng));
    }
    for (std::size_t n = 3; n <= 8; ++n) {
      for (std::size_t step = 2; step < n; ++step) {
        std::vector<std::vector<VertexId>> rows(n);
        for (VertexId v = 0; v < n; ++v) {
          rows[v] = {static_cast<VertexId>((v + 1) % n), static_cast<VertexId>((v + step) % n)};
        }
        Graph const g = Graph::from_rows(rows);
        if (validate_agw(g).is_agw) {
          out.emplace_back(g, Coloring::identity(n, 2));
          out.emplace_back(g, random_coloring(n, 2, rng));
        }
      }
    }
    for (Coloring const& c : oracle::all_colorings(fixtures::g2_mutual())) {
      out.emplace_back(fixtures::g2_mutual(), c);
    }
    return out;
  }

  bool mergeable(Automaton const& a, oracle::StateSet const& start) {
    std::set<oracle::StateSet>   seen{start};
    std::vector<oracle::StateSet> stack{start};
    while (!stack.empty()) {
      auto s = stack.back();
      stack.pop_back();
      if (s.size() == 1) {
        return true;
      }
      for (Color c = 0; c < a.alphabet_size(); ++c) {
        auto t = oracle::image(a, s, c);
        if (seen.insert(t).second) {
          stack.push_back(t);
        }
      }
    }
    return false;
  }

  std::set<oracle::StateSet> reachable_images(Automaton const& a) {
    oracle::StateSet all(a.size());
    std::iota(all.begin(), all.end(), VertexId(0));
    std::set<oracle::StateSet>    seen{all};
    std::vector<oracle::StateSet> stack{all};
    while (!stack.empty()) {
      auto s = stack.back();
      stack.pop_back();
      for (Color c = 0; c < a.alphabet_size(); ++c) {
        auto t = oracle::image(a, s, c);
        if (seen.insert(t).second) {
          stack.push_back(t);
        }
      }
    }
    return seen;
  }

}  // namespace

TEST_CASE("weight_vector") {
  WeightVector const g4 = weight_vector(fixtures::g4());
  CHECK(g4.weights == ints({2, 2, 2, 1}));
  CHECK(g4.total == 7);
  WeightVector const g3 = weight_vector(fixtures::g3());
  CHECK(g3.weights == ints({2, 1}));
  CHECK(g3.total == 3);
  CHECK(weight_vector(fixtures::eulerian3()).weights == ints({1, 1, 1}));
  CHECK(weight_vector(fixtures::g1()).weights == ints({1}));
  CHECK(g4.weight_of({0, 3}) == 3);
  try {
    (void) weight_vector(Graph::from_rows({{1, 1}, {1, 1}}));
    FAIL("expected NotStronglyConnected");
  } catch (Error const& e) {
    CHECK(e.code() == ErrorCode::not_strongly_connected);
  }
}

TEST_CASE("weight_vector is the exact Perron vector") {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    std::size_t const n = 1 + seed % 30;
    Graph const       g = random_agw(n, 2 + seed % 3, seed,
                                     seed % 2 ? GenMode::backbone : GenMode::rejection);
    WeightVector const w = weight_vector(g);
    check_eigen(g, w);
    if (n <= 12) {
      auto const approx = oracle::weights_by_power_iteration(g);
      double     lo     = static_cast<double>(*std::min_element(w.weights.begin(), w.weights.end()));
      for (VertexId v = 0; v < n; ++v) {
        CHECK(static_cast<double>(w.weights[v]) / lo == doctest::Approx(approx[v]).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("shortest_sync_word") {
  Automaton const cerny(fixtures::g4(), fixtures::cerny4());
  auto const      w = shortest_sync_word(cerny);
  REQUIRE(w);
  CHECK(w->size() == 9);
  CHECK(*w == Word{1, 0, 0, 0, 1, 0, 0, 0, 1});
  CHECK(apply_word(cerny, all_vertices(4), *w).size() == 1);

  for (Coloring const& c : oracle::all_colorings(fixtures::g2_mutual())) {
    CHECK_FALSE(shortest_sync_word(Automaton(fixtures::g2_mutual(), c)));
  }
  auto const single = shortest_sync_word(Automaton(fixtures::g1(), Coloring::identity(1, 2)));
  REQUIRE(single);
  CHECK(single->empty());

  try {
    Graph const g = random_agw(20, 2, 0, GenMode::backbone);
    (void) shortest_sync_word(Automaton(g, Coloring::identity(20, 2)));
    FAIL("expected TooLarge");
  } catch (Error const& e) {
    CHECK(e.code() == ErrorCode::too_large);
  }
}

TEST_CASE("shortest_sync_word agrees with the subset oracle and pair closure") {
  std::mt19937_64 rng(3);
  std::size_t     none = 0;
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    std::size_t const n = 1 + seed % 12;
    std::size_t const k = 2 + seed % 2;
    Graph const       g = random_agw(n, k, seed, GenMode::rejection);
    for (Coloring const& c : {random_coloring(n, k, rng), Coloring::identity(n, k)}) {
      Automaton const a(g, c);
      auto const      w = shortest_sync_word(a);
      auto const      o = oracle::shortest_sync_length(a);
      CHECK(w.has_value() == o.has_value());
      CHECK(w.has_value() == is_synchronizing(a));
      if (w && o) {
        CHECK(w->size() == *o);
        CHECK(apply_word(a, all_vertices(n), *w).size() == 1);
      }
      none += w ? 0 : 1;
    }
  }
  for (Graph const& g : fixtures::all_graphs(3, 2)) {
    if (!is_strongly_connected(g)) {
      continue;
    }
    Automaton const a(g, Coloring::identity(3, 2));
    auto const      w = shortest_sync_word(a);
    CHECK(w.has_value() == oracle::shortest_sync_length(a).has_value());
    none += w ? 0 : 1;
  }
  CHECK(none > 0);
}

TEST_CASE("enumerate_colorings") {
  CHECK(enumerate_colorings(fixtures::g1()).size() == 2);
  CHECK(enumerate_colorings(fixtures::g3()).size() == 4);
  CHECK(enumerate_colorings(fixtures::g4()).size() == 16);

  Graph const g = random_agw(3, 3, 1, GenMode::backbone);
  CHECK(enumerate_colorings(g) == oracle::all_colorings(g));
  ColoringSweep sweep(g);
  CHECK(sweep.total() == 216);
  std::size_t count = 0;
  while (sweep.next()) {
    ++count;
  }
  CHECK(count == 216);
  CHECK_FALSE(sweep.next());

  try {
    (void) ColoringSweep(g, 215);
    FAIL("expected TooLarge");
  } catch (Error const& e) {
    CHECK(e.code() == ErrorCode::too_large);
  }
}

TEST_CASE("f_cliques") {
  Automaton const cerny(fixtures::g4(), fixtures::cerny4());
  auto const      singles = f_cliques(cerny);
  CHECK(singles.size() == 4);
  for (auto const& s : singles) {
    CHECK(s.size() == 1);
  }
  for (Coloring const& c : oracle::all_colorings(fixtures::g2_mutual())) {
    CHECK(f_cliques(Automaton(fixtures::g2_mutual(), c))
          == std::vector<VertexSet>{{0, 1}});
  }

  for (Automaton const& a : lemma_corpus()) {
    std::vector<VertexSet> expected;
    for (auto const& s : reachable_images(a)) {
      bool all_deadlock = true;
      for (std::size_t i = 0; i < s.size() && all_deadlock; ++i) {
        for (std::size_t j = i + 1; j < s.size() && all_deadlock; ++j) {
          all_deadlock = !oracle::synchronizable(a, s[i], s[j]);
        }
      }
      if (all_deadlock) {
        expected.push_back(s);
      }
    }
    CHECK(f_cliques(a) == expected);
  }
}

TEST_CASE("f_maximal_partition") {
  FStructures const one = f_maximal_partition(Automaton(fixtures::g1(), Coloring::identity(1, 2)));
  CHECK(one.f_maximal_partition == std::vector<VertexSet>{{0}});
  CHECK(one.f_maximal_weight == 1);

  FStructures const mutual
      = f_maximal_partition(Automaton(fixtures::g2_mutual(), Coloring::identity(2, 2)));
  CHECK(mutual.f_maximal_partition == std::vector<VertexSet>{{0}, {1}});
  CHECK(mutual.f_maximal_weight == 1);

  Automaton const   cerny(fixtures::g4(), fixtures::cerny4());
  FStructures const fs = f_maximal_partition(cerny);
  CHECK(fs.f_maximal_weight == 7);
  CHECK(fs.f_maximal_partition == std::vector<VertexSet>{{0, 1, 2, 3}});
  CHECK(fs.f_cliques.empty());

  for (Automaton const& a : lemma_corpus()) {
    if (a.size() > 8) {
      continue;
    }
    WeightVector const w = weight_vector(a.graph());
    // Heaviest mergeable subset by exhaustive enumeration.
    BigInt best = 0;
    for (std::uint32_t mask = 1; mask < (1u << a.size()); ++mask) {
      oracle::StateSet s;
      for (VertexId v = 0; v < a.size(); ++v) {
        if (mask >> v & 1) {
          s.push_back(v);
        }
      }
      if (mergeable(a, s)) {
        best = std::max(best, w.weight_of(s));
      }
    }
    FStructures const f = f_structures(a);
    CHECK(f.f_maximal_weight == best);
    std::vector<int> covered(a.size(), 0);
    for (auto const& block : f.f_maximal_partition) {
      CHECK(mergeable(a, block));
      CHECK(w.weight_of(block) == best);
      for (VertexId v : block) {
        ++covered[v];
      }
    }
    CHECK(std::all_of(covered.begin(), covered.end(), [](int c) { return c == 1; }));
    for (auto const& clique : f.f_cliques) {
      CHECK(BigInt(clique.size()) * best == w.total);
    }
  }
}

TEST_CASE("check_lemmas") {
  SUBCASE("mutual bunches") {
    for (Coloring const& c : oracle::all_colorings(fixtures::g2_mutual())) {
      LemmaReport const r = check_lemmas(Automaton(fixtures::g2_mutual(), c), std::nullopt);
      CHECK(r.all_passed());
      std::map<std::string, LemmaCheck> by_name;
      for (auto const& check : r.checks) {
        by_name[check.name] = check;
      }
      CHECK(by_name.at("uniform-size").applicable);
      CHECK(by_name.at("closure").applicable);
      CHECK(by_name.at("overlap").applicable);
      CHECK_FALSE(by_name.at("level-sets").applicable);
    }
  }
  SUBCASE("synchronizing automaton") {
    LemmaReport const r = check_lemmas(Automaton(fixtures::g4(), fixtures::cerny4()), std::nullopt);
    CHECK(r.all_passed());
  }
  SUBCASE("corpus") {
    std::size_t non_sync = 0;
    for (Automaton const& a : lemma_corpus()) {
      LemmaReport const r = check_lemmas(a, std::nullopt);
      CHECK(r.all_passed());
      for (auto const& check : r.checks) {
        INFO(check.name, ": ", check.witness);
        CHECK(check.passed);
      }
      non_sync += is_synchronizing(a) ? 0 : 1;
    }
    CHECK(non_sync > 0);
  }
  SUBCASE("alpha colorings satisfy the level-set bound") {
    std::size_t applied = 0;
    for (std::uint64_t seed = 0; applied < 40 && seed < 2000; ++seed) {
      std::size_t const n  = 3 + seed % 8;
      auto              lf = fixtures::loop_free_variant(
          random_agw(n, 2 + seed % 2, seed, GenMode::backbone), seed);
      if (!lf || has_vertex_with_two_incoming_bunches(*lf)) {
        continue;
      }
      SpanningSubgraph const s = find_stable_friendly_spanning(*lf).subgraph;
      Automaton const        a(*lf, alpha_coloring(*lf, s, seed));
      LemmaReport const      r = check_lemmas(a, s);
      CHECK(r.all_passed());
      for (auto const& check : r.checks) {
        if (check.name == "level-sets") {
          CHECK(check.applicable);
        }
      }
      ++applied;
    }
    CHECK(applied == 40);
  }
  SUBCASE("limit") {
    Graph const g = random_agw(20, 2, 0, GenMode::backbone);
    try {
      (void) check_lemmas(Automaton(g, Coloring::identity(20, 2)), std::nullopt, 10);
      FAIL("expected TooLarge");
    } catch (Error const& e) {
      CHECK(e.code() == ErrorCode::too_large);
    }
  }
}
