#include "roadcolor/cli.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "roadcolor/analysis.hpp"
#include "roadcolor/error.hpp"
#include "roadcolor/graph.hpp"
#include "roadcolor/io.hpp"
#include "roadcolor/stability.hpp"
#include "roadcolor/synthesis.hpp"

namespace roadcolor::cli {

  using json = nlohmann::ordered_json;

  namespace {

    int exit_code(ErrorCode code) {
      switch (code) {
        case ErrorCode::parse_error:
        case ErrorCode::shape_mismatch:
        case ErrorCode::invalid_graph:
        case ErrorCode::invalid_coloring:
        case ErrorCode::invalid_params:
          return exit_input;
        case ErrorCode::not_agw:
        case ErrorCode::not_synchronizing:
        case ErrorCode::not_strongly_connected:
        case ErrorCode::too_large:
        case ErrorCode::generation_failed:
          return exit_negative;
        default:
          return exit_invariant;
      }
    }

    json big(BigInt const& x) {
      if (x <= std::numeric_limits<std::uint64_t>::max()) {
        return x.convert_to<std::uint64_t>();
      }
      return x.str();
    }

    json agw_json(AgwReport const& r) {
      return {{"strongly_connected", r.strongly_connected},
              {"constant_outdegree", r.constant_outdegree},
              {"cycle_gcd", r.cycle_gcd},
              {"is_agw", r.is_agw}};
    }

    // Options shared by the subcommands; CLI11 binds into these.
    struct Options {
      std::string   graph_path;
      std::string   coloring_path;
      std::string   out_path;
      std::uint64_t seed     = 0;
      std::uint64_t limit    = 0;
      bool          json     = false;
      bool          trace    = false;
      bool          shortest = false;
      std::size_t   n        = 0;
      std::size_t   k        = 2;
      std::string   mode     = "backbone";
    };

    class Commands {
     public:
      Commands(Options const& opt, std::ostream& out, std::ostream& err)
          : _opt(opt), _out(out), _err(err) {}

      int validate() {
        Graph const     g = load_graph();
        AgwReport const r = validate_agw(g);
        _out << agw_json(r).dump(2) << '\n';
        return r.is_agw ? exit_ok : exit_negative;
      }

      int color() {
        Graph const g = load_graph();
        if (AgwReport r = validate_agw(g); !r.is_agw) {
          report_not_agw(r);
          return exit_negative;
        }
        SynthesisResult const res  = synchronizing_coloring(g, _opt.seed);
        std::string const     file = io::dump_coloring(res.report.coloring);
        if (!_opt.out_path.empty()) {
          io::write_file(_opt.out_path, file);
        }

        if (_opt.json) {
          json doc;
          doc["verified"]    = res.report.verified;
          doc["word_length"] = res.report.word_length;
          doc["depth"]       = res.trace.depth;
          doc["word"]        = io::display_word(res.report.word);
          if (_opt.trace) {
            doc["trace"] = trace_json(res.trace);
          }
          if (_opt.out_path.empty()) {
            doc["colors"] = res.report.coloring.rows();
          }
          _out << doc.dump(2) << '\n';
          return exit_ok;
        }

        std::ostream& summary = _opt.out_path.empty() ? _err : _out;
        if (_opt.out_path.empty()) {
          _out << file;
        }
        summary << "verified synchronizing coloring\n"
                << "word length: " << res.report.word_length << '\n'
                << "recursion depth: " << res.trace.depth << '\n'
                << "word: " << io::display_word(res.report.word) << '\n';
        if (_opt.trace) {
          for (std::size_t i = 0; i < res.trace.levels.size(); ++i) {
            auto const& lv = res.trace.levels[i];
            summary << "level " << i << ": n=" << lv.n << " classes=" << lv.class_count
                    << " cycle_edges=" << lv.cycle_edge_count
                    << " phase=" << to_string(lv.phase) << '\n';
          }
        }
        return exit_ok;
      }

      int check() {
        Graph const    g = load_graph();
        Coloring const c = load_coloring(g);
        bool const     sync = is_synchronizing(Automaton(g, c));
        if (_opt.json) {
          _out << json{{"synchronizing", sync}}.dump(2) << '\n';
        } else {
          _out << (sync ? "synchronizing\n" : "not synchronizing\n");
        }
        return sync ? exit_ok : exit_negative;
      }

      int word() {
        Graph const     g = load_graph();
        Automaton const a(g, load_coloring(g));
        Word            w;
        if (_opt.shortest) {
          auto found = shortest_sync_word(
              a, _opt.limit == 0 ? default_subset_limit : _opt.limit);
          if (!found) {
            throw Error(ErrorCode::not_synchronizing, "no synchronizing word exists");
          }
          w = std::move(*found);
        } else {
          w = synchronizing_word(a);
        }
        if (!_opt.out_path.empty()) {
          io::write_file(_opt.out_path, io::dump_word(w));
        }
        if (_opt.json) {
          json doc;
          doc["length"]  = w.size();
          doc["word"]    = w;
          doc["display"] = io::display_word(w);
          _out << doc.dump(2) << '\n';
        } else {
          _out << w.size() << '\n' << io::display_word(w) << '\n';
        }
        return exit_ok;
      }

      int analyze() {
        Graph const g = load_graph();
        json        doc;
        AgwReport const r = validate_agw(g);
        doc["agw"]        = agw_json(r);
        if (r.strongly_connected) {
          WeightVector const w = weight_vector(g);
          json&              jw = doc["weights"] = json::array();
          for (auto const& x : w.weights) {
            jw.push_back(big(x));
          }
          doc["total_weight"] = big(w.total);
        }
        if (!_opt.coloring_path.empty()) {
          Automaton const a(g, load_coloring(g));
          if (!r.strongly_connected) {
            throw Error(ErrorCode::not_strongly_connected,
                        "coloring analysis needs a strongly connected graph");
          }
          std::size_t const limit = _opt.limit == 0 ? default_subset_limit : _opt.limit;
          PairTable const    table = stable_pairs(a);
          StabilityPartition part  = stability_partition(a, table);
          doc["synchronizing"]     = is_synchronizing(a);
          doc["stable_pairs"]      = table.stable_off_diagonal_count();
          doc["class_count"]       = part.class_count;
          doc["class_of"]          = part.class_of;
          FStructures const fs     = f_structures(a, limit);
          doc["f_maximal_weight"]    = big(fs.f_maximal_weight);
          doc["f_maximal_partition"] = fs.f_maximal_partition;
          doc["f_cliques"]           = fs.f_cliques;
          json& lemmas = doc["lemmas"] = json::array();
          for (auto const& check : check_lemmas(a, std::nullopt, limit).checks) {
            lemmas.push_back({{"name", check.name},
                              {"applicable", check.applicable},
                              {"passed", check.passed},
                              {"witness", check.witness}});
          }
        }
        _out << doc.dump(_opt.json ? -1 : 2) << '\n';
        return exit_ok;
      }

      int gen() {
        GenMode mode;
        if (_opt.mode == "backbone") {
          mode = GenMode::backbone;
        } else if (_opt.mode == "rejection") {
          mode = GenMode::rejection;
        } else {
          throw Error(ErrorCode::invalid_params, "unknown mode " + _opt.mode);
        }
        std::string const file = io::dump_graph(random_agw(_opt.n, _opt.k, _opt.seed, mode));
        if (_opt.out_path.empty()) {
          _out << file;
        } else {
          io::write_file(_opt.out_path, file);
        }
        return exit_ok;
      }

      int oracle() {
        Graph const   g = load_graph();
        ColoringSweep sweep(g, _opt.limit == 0 ? default_coloring_limit : _opt.limit);
        std::uint64_t total = 0, synchronizing = 0;
        std::optional<std::size_t> shortest;
        bool const small = g.size() <= default_subset_limit;
        while (auto c = sweep.next()) {
          ++total;
          Automaton const a(g, std::move(*c));
          if (!is_synchronizing(a)) {
            continue;
          }
          ++synchronizing;
          if (small) {
            std::size_t len = shortest_sync_word(a)->size();
            shortest        = std::min(shortest.value_or(len), len);
          }
        }
        if (_opt.json) {
          json doc;
          doc["colorings"]     = total;
          doc["synchronizing"] = synchronizing;
          doc["min_shortest_word_length"] =
              shortest ? json(*shortest) : json(nullptr);
          _out << doc.dump(2) << '\n';
        } else {
          _out << total << " colorings, " << synchronizing << " synchronizing";
          if (shortest) {
            _out << ", shortest synchronizing word length " << *shortest;
          }
          _out << '\n';
        }
        return synchronizing > 0 ? exit_ok : exit_negative;
      }

      int export_dot() {
        Graph const             g = load_graph();
        std::optional<Coloring> c;
        if (!_opt.coloring_path.empty()) {
          c = load_coloring(g);
        }
        std::string const dot = io::to_dot(g, c);
        if (_opt.out_path.empty()) {
          _out << dot;
        } else {
          io::write_file(_opt.out_path, dot);
        }
        return exit_ok;
      }

     private:
      Graph load_graph() const {
        return io::parse_graph(io::read_file(_opt.graph_path));
      }

      Coloring load_coloring(Graph const& g) const {
        return io::parse_coloring(io::read_file(_opt.coloring_path), g);
      }

      void report_not_agw(AgwReport const& r) {
        if (_opt.json) {
          _out << json{{"error", "NotAgw"}, {"agw", agw_json(r)}}.dump(2) << '\n';
        } else {
          _err << "error: graph is not AGW " << agw_json(r).dump() << '\n';
        }
      }

      static json trace_json(SynthesisTrace const& trace) {
        json levels = json::array();
        for (auto const& lv : trace.levels) {
          levels.push_back({{"n", lv.n},
                            {"class_count", lv.class_count},
                            {"cycle_edge_count", lv.cycle_edge_count},
                            {"phase", std::string(to_string(lv.phase))}});
        }
        return levels;
      }

      Options const& _opt;
      std::ostream&  _out;
      std::ostream&  _err;
    };

  }  // namespace

  int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    Options  opt;
    CLI::App app{"Synchronizing road colorings of AGW graphs", "roadcolor"};
    app.require_subcommand(1);

    auto add_json = [&](CLI::App* sub) {
      sub->add_flag("--json", opt.json, "Print machine-readable JSON");
    };

    auto* validate = app.add_subcommand("validate", "Check strong connectivity and aperiodicity");
    validate->add_option("graph", opt.graph_path, "Graph file")->required();
    add_json(validate);

    auto* color = app.add_subcommand("color", "Find a synchronizing coloring");
    color->add_option("graph", opt.graph_path, "Graph file")->required();
    color->add_option("--seed", opt.seed, "Seed for arbitrary color choices");
    color->add_option("-o", opt.out_path, "Write the coloring file here");
    color->add_flag("--trace", opt.trace, "Report every recursion level");
    add_json(color);

    auto* check = app.add_subcommand("check", "Decide whether a coloring is synchronizing");
    check->add_option("graph", opt.graph_path, "Graph file")->required();
    check->add_option("coloring", opt.coloring_path, "Coloring file")->required();
    add_json(check);

    auto* word = app.add_subcommand("word", "Compute a synchronizing word");
    word->add_option("graph", opt.graph_path, "Graph file")->required();
    word->add_option("coloring", opt.coloring_path, "Coloring file")->required();
    word->add_flag("--shortest", opt.shortest, "Exact shortest word by subset search");
    word->add_option("--limit", opt.limit, "Largest state count for --shortest");
    word->add_option("-o", opt.out_path, "Write the word file here");
    add_json(word);

    auto* analyze = app.add_subcommand("analyze", "Weights, stability and F-structures");
    analyze->add_option("graph", opt.graph_path, "Graph file")->required();
    analyze->add_option("coloring", opt.coloring_path, "Coloring file");
    analyze->add_option("--limit", opt.limit, "Largest state count for subset searches");
    add_json(analyze);

    auto* gen = app.add_subcommand("gen", "Generate a random AGW graph");
    gen->add_option("--n", opt.n, "Vertex count")->required();
    gen->add_option("--k", opt.k, "Out-degree");
    gen->add_option("--seed", opt.seed, "Generator seed");
    gen->add_option("--mode", opt.mode, "rejection or backbone")
        ->check(CLI::IsMember({"rejection", "backbone"}));
    gen->add_option("-o", opt.out_path, "Write the graph file here");

    auto* oracle = app.add_subcommand("oracle", "Exhaustive sweep over all colorings");
    oracle->add_option("graph", opt.graph_path, "Graph file")->required();
    oracle->add_option("--limit", opt.limit, "Largest number of colorings to sweep");
    add_json(oracle);

    auto* dot = app.add_subcommand("export-dot", "Graphviz export");
    dot->add_option("graph", opt.graph_path, "Graph file")->required();
    dot->add_option("coloring", opt.coloring_path, "Coloring file");
    dot->add_option("-o", opt.out_path, "Write the DOT file here");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) {
      reversed.pop_back();  // program name
    }
    try {
      app.parse(reversed);
    } catch (CLI::CallForHelp const&) {
      out << app.help();
      return exit_ok;
    } catch (CLI::ParseError const& e) {
      err << "error: " << e.what() << '\n';
      return exit_input;
    }

    Commands cmd(opt, out, err);
    std::vector<std::pair<CLI::App*, std::function<int()>>> const dispatch = {
        {validate, [&] { return cmd.validate(); }},
        {color, [&] { return cmd.color(); }},
        {check, [&] { return cmd.check(); }},
        {word, [&] { return cmd.word(); }},
        {analyze, [&] { return cmd.analyze(); }},
        {gen, [&] { return cmd.gen(); }},
        {oracle, [&] { return cmd.oracle(); }},
        {dot, [&] { return cmd.export_dot(); }},
    };
    try {
      for (auto const& [sub, fn] : dispatch) {
        if (sub->parsed()) {
          return fn();
        }
      }
    } catch (Error const& e) {
      int const code = exit_code(e.code());
      if (opt.json && code != exit_input) {
        out << json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump(2)
            << '\n';
      } else {
        err << "error: " << e.what() << '\n';
      }
      return code;
    }
    return exit_input;
  }

}  // namespace roadcolor::cli
