#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "roadcolor/error.hpp"
#include "roadcolor/graph.hpp"

using namespace roadcolor;

TEST_CASE("graph construction rejects malformed rows") {
  CHECK_THROWS_AS(Graph::from_rows({{1, 0}, {0}}), Error);
  CHECK_THROWS_AS(Graph::from_rows({{1, 2}, {0, 0}}), Error);
  CHECK_THROWS_AS(Graph(0, 2, {}), Error);
  CHECK_THROWS_AS(Coloring::from_rows({{0, 0}}), Error);
  CHECK_THROWS_AS(Automaton(fixtures::g4(), Coloring::identity(3, 2)), Error);
}

TEST_CASE("automaton delta agrees with graph slots") {
  Graph const    g = fixtures::g4();
  Coloring const c = Coloring::from_rows({{1, 0}, {0, 1}, {1, 0}, {0, 1}});
  Automaton const a(g, c);
  for (VertexId v = 0; v < g.size(); ++v) {
    for (SlotId s = 0; s < g.out_degree(); ++s) {
      CHECK(a.next(v, c.color(v, s)) == g.target(v, s));
    }
  }
}

TEST_CASE("validate_agw") {
  SUBCASE("G4 is AGW") {
    AgwReport r = validate_agw(fixtures::g4());
    CHECK(r.is_agw);
    CHECK(r.strongly_connected);
    CHECK(r.cycle_gcd == 1);
  }
  SUBCASE("two-cycle has period 2") {
    AgwReport r = validate_agw(fixtures::g2());
    CHECK_FALSE(r.is_agw);
    CHECK(r.cycle_gcd == 2);
  }
  SUBCASE("unreachable vertex") {
    AgwReport r = validate_agw(Graph::from_rows({{1, 1}, {1, 1}}));
    CHECK_FALSE(r.strongly_connected);
    CHECK_FALSE(r.is_agw);
    CHECK(r.cycle_gcd == 0);
  }
}

TEST_CASE("cycle_gcd") {
  CHECK(cycle_gcd(fixtures::g4()) == 1);
  CHECK(cycle_gcd(fixtures::g2()) == 2);
  CHECK(cycle_gcd(fixtures::triangle()) == 3);
  try {
    (void) cycle_gcd(Graph::from_rows({{1, 1}, {1, 1}}));
    FAIL("expected NotStronglyConnected");
  } catch (Error const& e) {
    CHECK(e.code() == ErrorCode::not_strongly_connected);
  }
}

TEST_CASE("cycle_gcd agrees with exhaustive cycle enumeration") {
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    for (Graph const& g : fixtures::all_graphs(n, 2)) {
      if (is_strongly_connected(g)) {
        CHECK(cycle_gcd(g) == oracle::cycle_gcd(g));
        ++checked;
      }
    }
  }
  for (std::size_t n = 4; n <= 6; ++n) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
      // Sparse random digraphs exercise larger periods than AGW samples.
      std::mt19937_64       rng(seed * 31 + n);
      std::vector<VertexId> flat(n * 2);
      for (auto& t : flat) {
        t = static_cast<VertexId>(rng() % n);
      }
      Graph g(n, 2, flat);
      if (is_strongly_connected(g)) {
        CHECK(cycle_gcd(g) == oracle::cycle_gcd(g));
        ++checked;
      }
      Graph ring = Graph::from_rows([&] {
        std::vector<std::vector<VertexId>> rows(n);
        for (VertexId v = 0; v < n; ++v) {
          rows[v] = {static_cast<VertexId>((v + 1) % n),
                     static_cast<VertexId>((v + 1 + 2 * (rng() % 2)) % n)};
        }
        return rows;
      }());
      CHECK(cycle_gcd(ring) == oracle::cycle_gcd(ring));
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("apply_word") {
  Automaton const a(fixtures::g4(), fixtures::cerny4());
  auto const      all = all_vertices(4);
  CHECK(apply_word(a, all, {0}) == std::vector<VertexId>{0, 1, 2, 3});
  CHECK(apply_word(a, all, {}) == all);
  CHECK(apply_word(a, std::vector<VertexId>{2, 0}, {}) == std::vector<VertexId>{0, 2});
  // A shortest synchronizing word of the 4-state Cerny automaton.
  Word const w{1, 0, 0, 0, 1, 0, 0, 0, 1};
  CHECK(apply_word(a, all, w).size() == 1);
}

TEST_CASE("apply_word is a monoid action") {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph const g = random_agw(7, 3, seed, GenMode::rejection);
    std::vector<Color> flat(7 * 3);
    for (VertexId v = 0; v < 7; ++v) {
      std::vector<Color> p{0, 1, 2};
      std::shuffle(p.begin(), p.end(), rng);
      std::copy(p.begin(), p.end(), flat.begin() + v * 3);
    }
    Automaton const a(g, Coloring(7, 3, flat));
    Word            w;
    for (int i = 0; i < 12; ++i) {
      w.push_back(static_cast<Color>(rng() % 3));
    }
    auto const all = all_vertices(7);
    for (std::size_t cut = 0; cut <= w.size(); ++cut) {
      Word u(w.begin(), w.begin() + cut), v(w.begin() + cut, w.end());
      CHECK(apply_word(a, all, w) == apply_word(a, apply_word(a, all, u), v));
    }
    CHECK(apply_word(a, all, w).size() <= 7);
  }
}

TEST_CASE("random_agw") {
  CHECK(random_agw(1, 2, 99, GenMode::backbone) == fixtures::g1());
  CHECK(random_agw(1, 2, 99, GenMode::rejection) == fixtures::g1());
  CHECK(random_agw(1, 1, 3, GenMode::backbone) == Graph::from_rows({{0}}));
  CHECK(validate_agw(random_agw(8, 2, 42, GenMode::backbone)).is_agw);

  Graph const first = random_agw(5, 3, 7, GenMode::rejection);
  CHECK(validate_agw(first).is_agw);
  CHECK(first == random_agw(5, 3, 7, GenMode::rejection));

  for (auto mode : {GenMode::rejection, GenMode::backbone}) {
    for (std::size_t n : {2, 3, 5, 10, 40}) {
      for (std::size_t k : {2, 3, 4}) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
          Graph g = random_agw(n, k, seed, mode);
          CHECK(g.size() == n);
          CHECK(g.out_degree() == k);
          CHECK(validate_agw(g).is_agw);
        }
      }
    }
  }

  try {
    (void) random_agw(3, 1, 0, GenMode::backbone);
    FAIL("expected InvalidParams");
  } catch (Error const& e) {
    CHECK(e.code() == ErrorCode::invalid_params);
  }
  CHECK_THROWS_AS((void) random_agw(0, 2, 0, GenMode::rejection), Error);
}
