#include "dkh/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dkh/corpus.hpp"
#include "dkh/moves.hpp"
#include "dkh/obstruct.hpp"
#include "json.hpp"

namespace dkh {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

OutputFormat parse_format(const std::string& s) {
  if (s == "text") return OutputFormat::Text;
  if (s == "json") return OutputFormat::Json;
  if (s == "tsv") return OutputFormat::Tsv;
  throw UsageError("unknown format '" + s + "'");
}

SurfaceDiagram load(const std::string& input, const std::optional<std::filesystem::path>& corpus_dir) {
  if (input.rfind("corpus:", 0) == 0) return corpus_get(input.substr(7), corpus_dir);
  std::stringstream ss;
  if (input == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(input);
    if (!in) throw CorpusError("cannot read '" + input + "'");
    ss << in.rdbuf();
  }
  return parse_diagram(ss.str());
}

std::vector<CohomologyClass> gammas_for(const SurfaceDiagram& d, const std::string& spec) {
  if (spec == "all") {
    if (d.genus() == 0) return {CohomologyClass(0, 0)};
    return CohomologyClass::all_nonzero(d.genus());
  }
  return {CohomologyClass::parse(d.genus(), spec)};
}

Side parse_side(const std::string& s) {
  if (s == "left" || s == "l") return Side::Left;
  if (s == "right" || s == "r") return Side::Right;
  throw UsageError("side must be left or right, got '" + s + "'");
}

std::size_t parse_index(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw UsageError("expected a non-negative index, got '" + s + "'");
  return std::stoul(s);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

// r1:add:ARC:+|-:under|over, r1:remove:X, r2:add:O:SIDE:U:SIDE,
// r2:remove:ARC:SIDE, r3:ARC:SIDE
SurfaceDiagram apply_move(const SurfaceDiagram& d, const std::string& spec) {
  auto f = split(spec, ':');
  auto need = [&](std::size_t n) {
    if (f.size() != n) throw UsageError("malformed move '" + spec + "'");
  };
  if (f.empty()) throw UsageError("empty move");
  if (f[0] == "r1" && f.size() > 1 && f[1] == "add") {
    need(5);
    KinkSpec k;
    if (f[3] == "+")
      k.sign = 1;
    else if (f[3] == "-")
      k.sign = -1;
    else
      throw UsageError("kink sign must be + or -");
    if (f[4] == "over")
      k.over_first = true;
    else if (f[4] != "under")
      throw UsageError("kink order must be under or over");
    return apply_r1(d, R1Add{parse_index(f[2])}, k);
  }
  if (f[0] == "r1" && f.size() > 1 && f[1] == "remove") {
    need(3);
    return apply_r1(d, R1Remove{parse_index(f[2])});
  }
  if (f[0] == "r2" && f.size() > 1 && f[1] == "add") {
    need(6);
    return apply_r2(d, R2Add{parse_index(f[2]), parse_side(f[3]), parse_index(f[4]), parse_side(f[5])});
  }
  if (f[0] == "r2" && f.size() > 1 && f[1] == "remove") {
    need(4);
    return apply_r2(d, R2Remove{parse_index(f[2]), parse_side(f[3])});
  }
  if (f[0] == "r3") {
    need(3);
    return apply_r3(d, R3Site{parse_index(f[1]), parse_side(f[2])});
  }
  throw UsageError("unknown move '" + spec + "'");
}

std::string side_name(Side s) { return s == Side::Left ? "left" : "right"; }

std::string list_sites(const SurfaceDiagram& d) {
  std::ostringstream os;
  FaceStructure fs = faces(d);
  os << "faces:\n";
  for (std::size_t f = 0; f < fs.faces.size(); ++f) {
    os << "  " << f << ":";
    for (const Dart& dt : fs.faces[f]) os << " " << dt.arc << (dt.forward ? "L" : "R");
    os << "\n";
  }
  os << "r1 removal:";
  for (const auto& s : r1_removal_sites(d)) os << " r1:remove:" << s.crossing;
  os << "\nr2 removal:";
  for (const auto& s : r2_removal_sites(d)) os << " r2:remove:" << s.arc << ":" << side_name(s.side);
  os << "\nr3:";
  for (const auto& s : r3_sites(d)) os << " r3:" << s.arc << ":" << side_name(s.side);
  os << "\n";
  return os.str();
}

std::string dump_cube(const DottedCube& cube) {
  std::ostringstream os;
  const std::size_t n = cube.diagram.crossing_count();
  os << "gamma " << cube.gamma.to_string() << "\n";
  for (const Smoothing& s : cube.vertices) {
    std::string bits;
    for (std::size_t k = 0; k < n; ++k) bits += (s.resolution >> k & 1u) ? '1' : '0';
    os << "vertex " << (bits.empty() ? "-" : bits) << " height " << s.height << " circles";
    for (const Circle& c : s.circles) {
      os << " [";
      for (std::size_t t = 0; t < c.arcs.size(); ++t) os << (t ? "," : "") << c.arcs[t];
      os << "]" << (c.dotted ? "*" : "");
    }
    os << "\n";
  }
  for (const CubeEdge& e : cube.edges) {
    os << "edge " << e.source << " -> " << e.target << " crossing " << e.crossing << " " << to_string(e.kind)
       << " sign " << (e.sign > 0 ? "+" : "-") << "\n";
  }
  return os.str();
}

}  // namespace

std::string render_tables(const std::vector<GammaTable>& tables, Variant variant, OutputFormat format) {
  std::ostringstream os;
  switch (format) {
    case OutputFormat::Json: {
      nlohmann::json res = nlohmann::json::array();
      for (const auto& t : tables) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& [d, n] : t.rows) rows.push_back({{"i", d.i}, {"j", d.j}, {"c", format_c(d.c2)}, {"dim", n}});
        res.push_back({{"gamma", t.gamma}, {"rows", rows}});
      }
      nlohmann::json out = {{"schema", 1}, {"variant", to_string(variant)}, {"results", res}};
      os << out.dump(2) << "\n";
      break;
    }
    case OutputFormat::Tsv:
      os << "gamma\ti\tj\tc\tdim\n";
      for (const auto& t : tables)
        for (const auto& [d, n] : t.rows)
          os << t.gamma << '\t' << d.i << '\t' << d.j << '\t' << format_c(d.c2) << '\t' << n << '\n';
      break;
    case OutputFormat::Text:
      for (const auto& t : tables) {
        std::size_t total = 0;
        for (const auto& [_, n] : t.rows) total += n;
        os << "gamma " << (t.gamma.empty() ? "-" : t.gamma) << "  variant " << to_string(variant) << "  total "
           << total << "\n";
        os << std::setw(5) << "i" << std::setw(6) << "j" << std::setw(7) << "c" << std::setw(6) << "dim" << "\n";
        for (const auto& [d, n] : t.rows)
          os << std::setw(5) << d.i << std::setw(6) << d.j << std::setw(7) << format_c(d.c2) << std::setw(6) << n
             << "\n";
      }
      break;
  }
  return os.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Doubled Khovanov homology of links in thickened surfaces", "dkh"};
  app.require_subcommand(1);
  std::string corpus_dir;
  app.add_option("--corpus-dir", corpus_dir, "Directory with <name>.json corpus encodings");

  std::string variant_s = "dkh", gamma_s = "all", format_s = "text";
  std::vector<std::string> inputs;
  std::vector<std::string> moves_s, assumptions_s;
  bool dump_diff = false, list = false;
  unsigned threads = 0;

  auto* compute = app.add_subcommand("compute", "Homology tables per cohomology class");
  compute->add_option("--variant", variant_s, "dkh (plain) or trh (perturbed)")->check(CLI::IsMember({"dkh", "trh"}));
  compute->add_option("--gamma", gamma_s, "Comma-separated bits, or 'all'");
  compute->add_option("--format", format_s)->check(CLI::IsMember({"text", "json", "tsv"}));
  compute->add_flag("--dump-differential", dump_diff, "Print the differential matrices");
  compute->add_option("input", inputs, "Diagram file, '-' or corpus:NAME")->required()->expected(1);

  auto* tnt = app.add_subcommand("tnt", "Total nontriviality test");
  tnt->add_option("--format", format_s)->check(CLI::IsMember({"text", "json"}));
  tnt->add_option("--threads", threads, "Worker threads (default: DKH_THREADS or 1)");
  tnt->add_option("input", inputs)->required()->expected(1);

  auto* rank = app.add_subcommand("rank", "Rank of the span of component classes");
  rank->add_option("--format", format_s)->check(CLI::IsMember({"text", "json"}));
  rank->add_option("inputs", inputs)->required();

  auto* report = app.add_subcommand("report", "Ascent obstruction report for a pair of diagrams");
  report->add_option("--assume", assumptions_s, "Extra facts, e.g. not_pseudostrict");
  report->add_option("--format", format_s)->check(CLI::IsMember({"text", "json"}));
  report->add_option("--threads", threads);
  report->add_option("inputs", inputs)->required()->expected(2);

  auto* moves = app.add_subcommand("moves", "Apply Reidemeister moves and print the result");
  moves->add_option("--move", moves_s, "r1:add:ARC:+|-:under|over, r1:remove:X, r2:add:O:SIDE:U:SIDE, "
                                       "r2:remove:ARC:SIDE, r3:ARC:SIDE");
  moves->add_flag("--list-sites", list, "List faces and applicable removal/R3 sites instead");
  moves->add_option("input", inputs)->required()->expected(1);

  auto* corpus = app.add_subcommand("corpus", "Bundled example diagrams");
  corpus->require_subcommand(1);
  auto* corpus_ls = corpus->add_subcommand("list", "List entries");
  std::string corpus_name;
  auto* corpus_show = corpus->add_subcommand("show", "Print an entry as JSON");
  corpus_show->add_option("name", corpus_name)->required();

  auto* dump = app.add_subcommand("dump-cube", "Print the cube of resolutions");
  dump->add_option("--gamma", gamma_s, "Comma-separated bits (default: zero class)");
  dump->add_option("input", inputs)->required()->expected(1);

  std::vector<std::string> argv_store = args;
  argv_store.insert(argv_store.begin(), "dkh");
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  std::optional<std::filesystem::path> cdir;
  if (!corpus_dir.empty()) cdir = corpus_dir;

  try {
    const OutputFormat format = parse_format(format_s);
    if (*compute) {
      SurfaceDiagram d = load(inputs.at(0), cdir);
      for (const auto& w : diagram_warnings(d)) err << "warning: " << w << "\n";
      const Variant variant = variant_s == "trh" ? Variant::Perturbed : Variant::Plain;
      std::vector<GammaTable> tables;
      std::ostringstream diffs;
      for (const auto& g : gammas_for(d, gamma_s)) {
        ChainComplex cx = assemble_complex(build_cube(d, g), variant);
        GammaTable t{g.to_string(), {}};
        if (variant == Variant::Plain)
          t.rows = homology_plain(cx).dims;
        else {
          FilteredBidegrees f = homology_perturbed(cx);
          for (int i : f.fallback_degrees)
            err << "warning: gamma " << g.to_string() << ", degree " << i
                << ": filtration corners not distributive, used intersection corners\n";
          t.rows = std::move(f.counts);
        }
        tables.push_back(std::move(t));
        if (dump_diff)
          for (std::size_t k = 0; k < cx.differentials.size(); ++k)
            diffs << "# gamma " << g.to_string() << " d" << cx.groups[k].degree << " ("
                  << cx.differentials[k].rows << "x" << cx.differentials[k].cols << ")\n"
                  << cx.differentials[k].to_text();
      }
      out << render_tables(tables, variant, format) << diffs.str();
      return 0;
    }
    if (*tnt) {
      SurfaceDiagram d = load(inputs.at(0), cdir);
      ObstructionReport r;
      r.genus_from = r.genus_to = d.genus();
      r.tnt = is_totally_nontrivial(d, threads);
      for (const auto& w : r.tnt.warnings) err << "warning: " << w << "\n";
      if (format == OutputFormat::Json) {
        nlohmann::json per = nlohmann::json::array();
        for (const auto& v : r.tnt.per_gamma) {
          nlohmann::json jv = {
              {"gamma", v.gamma.to_string()}, {"shortcut", v.shortcut}, {"fallback_degrees", v.fallback_degrees}};
          if (v.witness)
            jv["witness"] = {{"i", v.witness->i}, {"j", v.witness->j}, {"c", format_c(v.witness->c2)}};
          else
            jv["witness"] = nullptr;
          per.push_back(jv);
        }
        nlohmann::json o = {{"schema", 1},
                            {"totally_nontrivial", r.tnt.totally_nontrivial},
                            {"vacuous", r.tnt.vacuous},
                            {"per_gamma", per}};
        out << o.dump(2) << "\n";
      } else {
        out << "totally nontrivial: " << (r.tnt.totally_nontrivial ? "yes" : "no")
            << (r.tnt.vacuous ? " (vacuous)" : "") << "\n";
        for (const auto& v : r.tnt.per_gamma) {
          out << "  gamma " << v.gamma.to_string() << ": ";
          if (v.witness)
            out << "witness (i,j,c) = (" << v.witness->i << "," << v.witness->j << "," << format_c(v.witness->c2)
                << ")\n";
          else
            out << "collapsed\n";
        }
      }
      return 0;
    }
    if (*rank) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& in : inputs) {
        std::size_t r = elementary_rank(load(in, cdir));
        if (format == OutputFormat::Json)
          arr.push_back({{"input", in}, {"rank", r}});
        else
          out << (inputs.size() > 1 ? in + "\t" : "") << r << "\n";
      }
      if (format == OutputFormat::Json) out << nlohmann::json{{"schema", 1}, {"ranks", arr}}.dump(2) << "\n";
      return 0;
    }
    if (*report) {
      std::vector<Assumption> as;
      for (const auto& s : assumptions_s) {
        auto a = parse_assumption(s);
        if (!a) throw UsageError("unknown assumption '" + s + "'");
        as.push_back(*a);
      }
      ObstructionReport r = ascent_report(load(inputs.at(0), cdir), load(inputs.at(1), cdir), as, threads);
      for (const auto& w : r.tnt.warnings) err << "warning: " << w << "\n";
      out << (format == OutputFormat::Json ? report_json(r) : report_text(r));
      return 0;
    }
    if (*moves) {
      SurfaceDiagram d = load(inputs.at(0), cdir);
      if (list) {
        out << list_sites(d);
        return 0;
      }
      for (const auto& m : moves_s) d = apply_move(d, m);
      out << serialize_diagram(d);
      return 0;
    }
    if (*corpus) {
      if (*corpus_ls) {
        for (const auto& e : corpus_list())
          out << e.name << (e.placeholder ? "\t[placeholder]\t" : "\t\t") << e.description << "\n";
      } else if (*corpus_show) {
        out << serialize_diagram(corpus_get(corpus_name, cdir));
      }
      return 0;
    }
    if (*dump) {
      SurfaceDiagram d = load(inputs.at(0), cdir);
      CohomologyClass g = gamma_s == "all" ? CohomologyClass(d.genus(), 0) : CohomologyClass::parse(d.genus(), gamma_s);
      out << dump_cube(build_cube(d, g));
      return 0;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DiagramError& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return 1;
  } catch (const CorpusError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

}  // namespace dkh
