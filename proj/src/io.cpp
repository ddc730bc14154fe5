#include "roadcolor/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "roadcolor/error.hpp"

namespace roadcolor::io {

  using json = nlohmann::json;

  namespace {

    json parse_json(std::string_view text) {
      try {
        return json::parse(text);
      } catch (json::parse_error const& e) {
        throw Error(ErrorCode::parse_error, e.what());
      }
    }

    [[noreturn]] void bad(std::string const& what) {
      throw Error(ErrorCode::parse_error, what);
    }

    std::uint64_t as_index(json const& j, std::string const& where) {
      if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
        bad(where + " must be a non-negative integer");
      }
      return j.get<std::uint64_t>();
    }

    json const& member(json const& obj, char const* key) {
      if (!obj.is_object() || !obj.contains(key)) {
        bad(std::string("missing \"") + key + "\"");
      }
      return obj.at(key);
    }

    template <typename T>
    std::string rows_text(std::vector<std::vector<T>> const& rows, std::string_view indent) {
      std::ostringstream os;
      os << "[\n";
      for (std::size_t v = 0; v < rows.size(); ++v) {
        os << indent << "  [";
        for (std::size_t s = 0; s < rows[v].size(); ++s) {
          os << (s ? ", " : "") << rows[v][s];
        }
        os << ']' << (v + 1 < rows.size() ? "," : "") << '\n';
      }
      os << indent << ']';
      return os.str();
    }

  }  // namespace

  Graph parse_graph(std::string_view text) {
    json const  doc = parse_json(text);
    std::size_t n   = as_index(member(doc, "n"), "\"n\"");
    std::size_t k   = as_index(member(doc, "k"), "\"k\"");
    json const& adj = member(doc, "adj");
    if (n == 0 || k == 0) {
      bad("\"n\" and \"k\" must be positive");
    }
    if (!adj.is_array() || adj.size() != n) {
      bad("\"adj\" must list " + std::to_string(n) + " rows");
    }

    std::optional<std::vector<std::string>> names;
    std::map<std::string, VertexId>         index_of;
    if (doc.contains("names")) {
      json const& jn = doc.at("names");
      if (!jn.is_array() || jn.size() != n) {
        bad("\"names\" must list " + std::to_string(n) + " strings");
      }
      names.emplace();
      for (auto const& name : jn) {
        if (!name.is_string()) {
          bad("\"names\" must hold strings");
        }
        auto const& s = name.get_ref<std::string const&>();
        if (!index_of.emplace(s, static_cast<VertexId>(names->size())).second) {
          bad("duplicate vertex name \"" + s + "\"");
        }
        names->push_back(s);
      }
    }

    std::vector<VertexId> flat;
    flat.reserve(n * k);
    for (std::size_t v = 0; v < n; ++v) {
      json const& row = adj[v];
      if (!row.is_array() || row.size() != k) {
        bad("row " + std::to_string(v) + " must have exactly " + std::to_string(k)
            + " targets");
      }
      for (auto const& t : row) {
        std::string const where = "target in row " + std::to_string(v);
        if (t.is_string() && names) {
          auto it = index_of.find(t.get<std::string>());
          if (it == index_of.end()) {
            bad(where + " names an unknown vertex");
          }
          flat.push_back(it->second);
          continue;
        }
        std::uint64_t idx = as_index(t, where);
        if (idx >= n) {
          bad(where + " is out of range");
        }
        flat.push_back(static_cast<VertexId>(idx));
      }
    }
    Graph g(n, k, std::move(flat));
    return names ? g.with_names(std::move(*names)) : g;
  }

  std::string dump_graph(Graph const& g) {
    std::ostringstream os;
    os << "{\n  \"n\": " << g.size() << ",\n  \"k\": " << g.out_degree()
       << ",\n  \"adj\": " << rows_text(g.rows(), "  ");
    if (g.names()) {
      os << ",\n  \"names\": " << json(*g.names()).dump();
    }
    os << "\n}\n";
    return os.str();
  }

  Coloring parse_coloring(std::string_view text) {
    json const  doc    = parse_json(text);
    json const& colors = member(doc, "colors");
    if (!colors.is_array() || colors.empty()) {
      bad("\"colors\" must be a non-empty array of rows");
    }
    std::vector<std::vector<Color>> rows;
    for (std::size_t v = 0; v < colors.size(); ++v) {
      if (!colors[v].is_array()) {
        bad("coloring row " + std::to_string(v) + " is not an array");
      }
      auto& row = rows.emplace_back();
      for (auto const& c : colors[v]) {
        row.push_back(static_cast<Color>(as_index(c, "color in row " + std::to_string(v))));
      }
    }
    try {
      return Coloring::from_rows(rows);
    } catch (Error const& e) {
      bad(e.what());
    }
  }

  Coloring parse_coloring(std::string_view text, Graph const& g) {
    Coloring c = parse_coloring(text);
    if (c.size() != g.size() || c.out_degree() != g.out_degree()) {
      throw Error(ErrorCode::shape_mismatch,
                  "coloring is " + std::to_string(c.size()) + "x"
                      + std::to_string(c.out_degree()) + " but the graph is "
                      + std::to_string(g.size()) + "x" + std::to_string(g.out_degree()));
    }
    return c;
  }

  std::string dump_coloring(Coloring const& c) {
    return "{\n  \"colors\": " + rows_text(c.rows(), "  ") + "\n}\n";
  }

  Word parse_word(std::string_view text, std::size_t k) {
    json const  doc = parse_json(text);
    json const& jw  = member(doc, "word");
    if (!jw.is_array()) {
      bad("\"word\" must be an array");
    }
    Word w;
    for (auto const& c : jw) {
      std::uint64_t letter = as_index(c, "letter");
      if (letter >= k) {
        bad("letter " + std::to_string(letter) + " is outside the alphabet");
      }
      w.push_back(static_cast<Color>(letter));
    }
    return w;
  }

  std::string dump_word(Word const& w) {
    json doc = json::object();
    doc["word"]    = w;
    doc["display"] = display_word(w);
    return "{\"word\": " + doc["word"].dump() + ", \"display\": " + doc["display"].dump()
           + "}\n";
  }

  std::string color_letter(Color c) {
    if (c < 26) {
      return std::string(1, static_cast<char>('a' + c));
    }
    return "[" + std::to_string(c) + "]";
  }

  std::string display_word(Word const& w) {
    std::string out;
    for (Color c : w) {
      out += color_letter(c);
    }
    return out;
  }

  std::string to_dot(Graph const& g, std::optional<Coloring> const& c) {
    auto label = [&](VertexId v) {
      return g.names() ? json((*g.names())[v]).dump() : std::to_string(v);
    };
    std::ostringstream os;
    os << "digraph G {\n";
    for (VertexId v = 0; v < g.size(); ++v) {
      os << "  " << v << " [label=" << (g.names() ? label(v) : "\"" + label(v) + "\"")
         << "];\n";
    }
    for (VertexId v = 0; v < g.size(); ++v) {
      for (SlotId s = 0; s < g.out_degree(); ++s) {
        std::string const text = c ? color_letter(c->color(v, s)) : std::to_string(s);
        os << "  " << v << " -> " << g.target(v, s) << " [label=\"" << text << "\"];\n";
      }
    }
    os << "}\n";
    return os.str();
  }

  std::string read_file(std::filesystem::path const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw Error(ErrorCode::parse_error, "cannot read " + path.string());
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }

  void write_file(std::filesystem::path const& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error(ErrorCode::parse_error, "cannot write " + path.string());
    }
    out << content;
  }

}  // namespace roadcolor::io
