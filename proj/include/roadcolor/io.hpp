#ifndef ROADCOLOR_IO_HPP_
#define ROADCOLOR_IO_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "roadcolor/graph.hpp"

// JSON interchange formats. Parse failures throw Error(parse_error).
//
//   graph:    {"n": 4, "k": 2, "adj": [[1, 0], ...], "names": ["a", ...]}
//   coloring: {"colors": [[0, 1], ...]}
//   word:     {"word": [0, 1, ...], "display": "ab..."}
//
// When "names" is present, adjacency entries may be given as names instead of
// indices. Writers emit indices and one row per line.

namespace roadcolor::io {

  [[nodiscard]] Graph       parse_graph(std::string_view text);
  [[nodiscard]] std::string dump_graph(Graph const& g);

  [[nodiscard]] Coloring    parse_coloring(std::string_view text);
  //! Also checks that the dimensions match \p g (Error(shape_mismatch)).
  [[nodiscard]] Coloring    parse_coloring(std::string_view text, Graph const& g);
  [[nodiscard]] std::string dump_coloring(Coloring const& c);

  [[nodiscard]] Word        parse_word(std::string_view text, std::size_t k);
  [[nodiscard]] std::string dump_word(Word const& w);

  //! Colors 0, 1, 2, ... rendered as a, b, c, ...; beyond z as "[index]".
  [[nodiscard]] std::string display_word(Word const& w);
  [[nodiscard]] std::string color_letter(Color c);

  //! Graphviz digraph; edges are labeled by color letter when a coloring is
  //! given and by slot index otherwise.
  [[nodiscard]] std::string to_dot(Graph const& g, std::optional<Coloring> const& c);

  [[nodiscard]] std::string read_file(std::filesystem::path const& path);
  void write_file(std::filesystem::path const& path, std::string_view content);

}  // namespace roadcolor::io

#endif  // ROADCOLOR_IO_HPP_
