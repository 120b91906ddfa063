#include "noneq/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "noneq/bass_serre.hpp"
#include "noneq/criterion.hpp"
#include "noneq/factor_spec.hpp"
#include "noneq/search.hpp"
#include "noneq/whitehead.hpp"
#include "noneq/witness.hpp"

namespace noneq::cli {

using nlohmann::json;

namespace {

struct Output {
  std::string format = "table";
  std::string path;
};

// Writes either the JSON value or the text rendering.
void emit(std::ostream& out, const Output& o, const json& value, const std::string& text) {
  std::ostringstream buffer;
  if (o.format == "json") {
    buffer << value.dump(2) << '\n';
  } else {
    buffer << text;
    if (!text.empty() && text.back() != '\n') buffer << '\n';
  }
  if (o.path.empty()) {
    out << buffer.str();
    return;
  }
  std::ofstream file(o.path);
  if (!file) throw std::invalid_argument("cannot write " + o.path);
  file << buffer.str();
}

const CLI::Range kPositive(1, std::numeric_limits<int>::max(), "POSITIVE");

void add_format(CLI::App* cmd, Output& o) {
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "table"}));
}

std::string describe(const BassSerreTree& tree, const ActionClass& c) {
  if (const auto* e = std::get_if<Elliptic>(&c)) {
    return e->fixed ? "elliptic, fixes " + tree.format_vertex(*e->fixed) : "elliptic, fixes every vertex";
  }
  return "hyperbolic, translation length " + std::to_string(std::get<Hyperbolic>(c).translation);
}

json vertex_list(const BassSerreTree& tree, const std::vector<TreeVertex>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(tree.format_vertex(v));
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

unsigned default_jobs() {
  if (const char* env = std::getenv("NONEQ_JOBS")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("NONEQ_JOBS must be a positive integer");
  }
  return 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nonequationality witnesses in free groups and free products", "noneq"};
  app.require_subcommand(1);
  int code = kSuccess;

  // witness
  int n = 0;
  std::size_t search_bound = 0;
  unsigned jobs = 0;
  Output witness_out{"json", ""};
  auto* witness = app.add_subcommand("witness", "Evaluate phi_NE on the n x n witness matrices");
  witness->add_option("--n", n, "Matrix size")->required()->check(kPositive);
  witness->add_option("--search-bound", search_bound, "Length bound of the refutation search (default |xy|)");
  witness->add_option("--jobs", jobs, "Worker threads (default $NONEQ_JOBS or 1)")->check(kPositive);
  witness->add_option("--out", witness_out.path, "Write the report to a file");
  add_format(witness, witness_out);

  // primitive
  std::string word;
  int rank = 0;
  Output prim_out;
  auto* primitive = app.add_subcommand("primitive", "Whitehead primitivity test");
  primitive->add_option("word", word, "Word in e1, e2, ...")->required();
  primitive->add_option("--rank", rank, "Rank of the ambient free group (default: generators occurring)")
      ->check(kPositive);
  add_format(primitive, prim_out);

  // reduce
  Output reduce_out;
  auto* reduce = app.add_subcommand("reduce", "Freely reduce a word");
  reduce->add_option("word", word, "Word in e1, e2, ...")->required();
  add_format(reduce, reduce_out);

  // nf
  std::string factors;
  Output nf_out;
  auto* nf = app.add_subcommand("nf", "Normal form in a free product");
  nf->add_option("word", word, "Element text")->required();
  nf->add_option("--factors", factors, "Factor spec JSON file")->required();
  add_format(nf, nf_out);

  // root
  int q = 0;
  Output root_out;
  auto* root = app.add_subcommand("root", "All q-th roots");
  root->add_option("word", word, "Element text")->required();
  root->add_option("--q", q, "Root degree")->required()->check(kPositive);
  root->add_option("--factors", factors, "Factor spec JSON file (default: free group)");
  add_format(root, root_out);

  // tree
  auto* tree = app.add_subcommand("tree", "Bass-Serre tree of a two-factor product");
  tree->require_subcommand(1);
  std::string v1, v2;
  std::size_t copies = 1;
  Output tree_out;
  auto* dist = tree->add_subcommand("dist", "Distance and geodesic between two vertices");
  dist->add_option("v1", v1, "<word>.<side>")->required();
  dist->add_option("v2", v2, "<word>.<side>")->required();
  dist->add_option("--factors", factors, "Factor spec JSON file")->required();
  add_format(dist, tree_out);
  auto* classify = tree->add_subcommand("classify", "Elliptic or hyperbolic");
  classify->add_option("word", word, "Element text")->required();
  classify->add_option("--factors", factors, "Factor spec JSON file")->required();
  add_format(classify, tree_out);
  auto* axis = tree->add_subcommand("axis", "Window of the axis of a hyperbolic element");
  axis->add_option("word", word, "Element text")->required();
  axis->add_option("--copies", copies, "Fundamental domains on each side")->check(kPositive);
  axis->add_option("--factors", factors, "Factor spec JSON file")->required();
  add_format(axis, tree_out);

  // search
  std::string target, alphabet_text;
  int p = 0;
  std::size_t syl_bound = 0;
  bool expect_none = false;
  Output search_out;
  auto* search = app.add_subcommand("search", "Bounded search for target = u^p v^q with [u,v] != 1");
  search->add_option("--target", target, "Target element")->required();
  search->add_option("--p", p, "Exponent of u")->required()->check(kPositive);
  search->add_option("--q", q, "Exponent of v")->required()->check(kPositive);
  search->add_option("--syl-bound", syl_bound, "Syllable bound for u")->required();
  search->add_option("--factors", factors, "Factor spec JSON file")->required();
  search->add_option("--alphabet", alphabet_text, "Comma-separated single-syllable elements")->required();
  search->add_flag("--expect-none", expect_none, "Exit 1 if a decomposition is found");
  add_format(search, search_out);

  // pattern
  auto* pattern = app.add_subcommand("pattern", "Satisfaction matrices");
  pattern->require_subcommand(1);
  std::string pattern_file;
  Output pattern_out;
  auto* check = pattern->add_subcommand("check", "Compare a SatMatrix file with the expected pattern");
  check->add_option("file", pattern_file, "SatMatrix JSON")->required();
  add_format(check, pattern_out);

  auto load_group = [&] {
    return load_product(read_json_file(factors));
  };
  auto load_tree = [&] { return BassSerreTree(load_group()); };

  witness->callback([&] {
    const unsigned workers = jobs ? jobs : default_jobs();
    const WitnessReport report = evaluate_matrix(n, search_bound, workers);
    std::string text = render_table(report);
    for (const CellResult* c : report.undecided()) {
      text += "undecided: a" + std::to_string(c->a.i) + std::to_string(c->a.j) + " b" + std::to_string(c->b.i) +
              std::to_string(c->b.j) + "\n";
    }
    emit(out, witness_out, to_json(report), text);
    for (const CellResult* c : report.undecided()) {
      err << "undecided cell a=(" << c->a.i << "," << c->a.j << ") b=(" << c->b.i << "," << c->b.j << ")\n";
    }
    if (!report.undecided().empty()) {
      code = kUndecided;
    } else {
      code = report.pattern_ok ? kSuccess : kFalse;
    }
  });

  primitive->callback([&] {
    const FreeWord w = parse_free_word(word);
    const PrimitivityVerdict v = rank ? is_primitive(w, rank) : primitivity_in_ambient(w);
    json j{{"word", to_string(w)}, {"primitive", v.primitive}, {"trace_len", v.trace.size()}};
    if (v.primitive) j["image"] = to_string(replay(w, v.trace));
    std::string text = to_string(w) + (v.primitive ? " is primitive" : " is not primitive");
    if (v.primitive) text += " (" + std::to_string(v.trace.size()) + " moves to " + to_string(replay(w, v.trace)) + ")";
    emit(out, prim_out, j, text);
    code = v.primitive ? kSuccess : kFalse;
  });

  reduce->callback([&] {
    const FreeWord w = parse_free_word(word);
    emit(out, reduce_out, json{{"word", to_string(w)}, {"length", w.length()}}, to_string(w));
  });

  nf->callback([&] {
    const auto g = load_group();
    const FPElement x = g->parse(word);
    json syllables = json::array();
    for (const auto& s : x.syllables()) {
      syllables.push_back({{"factor", g->factor(s.factor).name()}, {"element", g->factor(s.factor).format(s.element)}});
    }
    emit(out, nf_out, json{{"normal_form", g->format(x)}, {"syl", x.syl()}, {"syllables", syllables}},
         g->format(x) + "\nsyl = " + std::to_string(x.syl()));
  });

  root->callback([&] {
    std::vector<std::string> roots;
    bool infinite = false;
    if (factors.empty()) {
      if (auto r = qth_root(parse_free_word(word), q)) roots.push_back(to_string(*r));
    } else {
      const auto g = load_group();
      try {
        for (const auto& r : g->qth_roots(g->parse(word), q)) roots.push_back(g->format(r));
      } catch (const InfiniteRootSet&) {
        infinite = true;
      }
    }
    std::string text;
    if (infinite) {
      text = "infinitely many roots";
    } else if (roots.empty()) {
      text = "no root";
    }
    for (const auto& r : roots) text += r + "\n";
    emit(out, root_out, json{{"roots", roots}, {"infinite", infinite}}, text);
    code = roots.empty() && !infinite ? kFalse : kSuccess;
  });

  dist->callback([&] {
    const BassSerreTree t = load_tree();
    const TreeVertex a = t.parse_vertex(v1);
    const TreeVertex b = t.parse_vertex(v2);
    const std::size_t d = t.distance(a, b);
    const auto path = t.geodesic(a, b);
    std::string text = std::to_string(d) + "\n";
    for (const auto& v : path) text += "  " + t.format_vertex(v) + "\n";
    emit(out, tree_out, json{{"distance", d}, {"geodesic", vertex_list(t, path)}}, text);
  });

  classify->callback([&] {
    const BassSerreTree t = load_tree();
    const FPElement h = t.group().parse(word);
    const ActionClass c = t.classify(h);
    json j;
    if (const auto* e = std::get_if<Elliptic>(&c)) {
      j = {{"class", "elliptic"}, {"fixed", e->fixed ? json(t.format_vertex(*e->fixed)) : json("all")}};
    } else {
      j = {{"class", "hyperbolic"}, {"translation", std::get<Hyperbolic>(c).translation}};
    }
    emit(out, tree_out, j, describe(t, c));
  });

  axis->callback([&] {
    const BassSerreTree t = load_tree();
    const FPElement h = t.group().parse(word);
    const auto seg = t.axis_segment(h, copies);
    std::string text;
    for (const auto& v : seg) text += t.format_vertex(v) + "\n";
    emit(out, tree_out, json{{"translation", t.translation_length(h)}, {"copies", copies}, {"vertices", vertex_list(t, seg)}},
         text);
  });

  search->callback([&] {
    const auto g = load_group();
    const FPElement tgt = g->parse(target);
    std::vector<FPElement> alphabet;
    for (const auto& item : split_list(alphabet_text)) alphabet.push_back(g->parse(item));
    const auto found = search_power_decomposition(*g, tgt, p, q, syl_bound, alphabet);
    json j{{"target", g->format(tgt)}, {"p", p}, {"q", q}, {"syl_bound", syl_bound}, {"found", found.has_value()}};
    std::string text;
    if (found) {
      j["u"] = g->format(found->u);
      j["v"] = g->format(found->v);
      text = "found u = " + g->format(found->u) + ", v = " + g->format(found->v);
    } else {
      text = "no noncommuting u, v with syl(u) <= " + std::to_string(syl_bound) + " over the alphabet";
    }
    emit(out, search_out, j, text);
    code = found && expect_none ? kFalse : kSuccess;
  });

  check->callback([&] {
    const SatMatrix m = sat_matrix_from_json(read_json_file(pattern_file));
    const bool ok = matches_pattern(m);
    emit(out, pattern_out, json{{"n", m.n()}, {"pattern_ok", ok}},
         ok ? "pattern ok" : "pattern MISMATCH");
    code = ok ? kSuccess : kFalse;
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return code;
}

}  // namespace noneq::cli
