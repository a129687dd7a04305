#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bkm/bkm.hpp"

namespace bkm::cli {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Argument parsing

WeightVector parse_weight_spec(const std::string& text) {
  auto bad = [&](const std::string& why) {
    fail(ErrorCode::usage, "malformed --k \"" + text + "\": " + why);
  };
  WeightVector k;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) bad("expected vertex:count pairs");
    long long v = 0, c = 0;
    try {
      std::size_t used = 0;
      v = std::stoll(item.substr(0, colon), &used);
      if (used != colon) bad("bad vertex id");
      std::string count = item.substr(colon + 1);
      c = std::stoll(count, &used);
      if (used != count.size()) bad("bad count");
    } catch (const std::logic_error&) {
      bad("expected integers");
    }
    if (v < 0 || c < 0 || c > 1000) bad("vertex ids and counts must be small non-negative integers");
    if (k[static_cast<VertexId>(v)] != 0) bad("vertex " + std::to_string(v) + " repeated");
    k.set(static_cast<VertexId>(v), static_cast<int>(c));
  }
  if (k.is_zero()) bad("weight vector is zero");
  return k;
}

std::string format_weight_spec(const WeightVector& k) {
  if (k.is_zero()) return "0";
  std::string out;
  for (auto& [v, c] : k.counts()) {
    if (!out.empty()) out += ',';
    out += std::to_string(v) + ":" + std::to_string(c);
  }
  return out;
}

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig c;
  CLI::App app{"Root multiplicities, chromatic polynomials and Lyndon bases of Borcherds algebras",
               "bkmroots"};
  app.require_subcommand(1);

  std::string k_text, output = "text", eval;
  int sink = 0, ia = 0, classes = 0;
  std::map<CLI::App*, Command> commands;
  std::map<Command, CLI::Option*> sink_opts;
  CLI::Option* eval_opt = nullptr;
  CLI::Option* ia_opt = nullptr;
  CLI::Option* classes_opt = nullptr;

  auto add = [&](const char* name, const char* what, Command cmd, bool needs_k) {
    auto* s = app.add_subcommand(name, what);
    commands[s] = cmd;
    s->add_option("--graph", c.graph_path, "graph JSON file")->required();
    if (needs_k) s->add_option("--k", k_text, "weights as vertex:count pairs, e.g. \"1:2,2:1\"")->required();
    s->add_option("--output", output, "text or json")->check(CLI::IsMember({"text", "json"}));
    s->add_option("--ht-limit", c.height_limit, "largest height accepted (default 12)")
        ->check(CLI::PositiveNumber);
    s->add_option("--vertex-limit", c.vertex_limit,
                  "largest graph accepted by enumerative commands (default 10)")
        ->check(CLI::PositiveNumber);
    return s;
  };

  auto* chromatic = add("chromatic", "generalized chromatic polynomial", Command::chromatic, true);
  eval_opt = chromatic->add_option("--eval", eval, "evaluate at q (integer or n/d)");
  chromatic->add_option("--closed-form", c.closed_form, "auto, complete, tree or general")
      ->check(CLI::IsMember({"auto", "complete", "tree", "general"}));

  auto* mult = add("mult", "root multiplicity", Command::mult, true);
  mult->add_option("--method", c.method, "moebius, bond or orientations")
      ->check(CLI::IsMember({"moebius", "bond", "orientations"}));
  sink_opts[Command::mult] = mult->add_option("--sink", sink, "sink vertex for the orientation route");

  auto* basis = add("basis", "Lyndon basis of a root space", Command::basis, true);
  sink_opts[Command::basis] = basis->add_option("--sink", sink, "distinguished vertex i")->required();
  basis->add_flag("--verify", c.verify, "check count, rank and spanning");

  auto* words = add("words", "trace words of a given weight", Command::words, true);
  ia_opt = words->add_option("--ia", ia, "only words with initial alphabet {i}");
  classes_opt = words->add_option("--aperiodic-classes", classes, "aperiodic i-form classes");
  ia_opt->excludes(classes_opt);

  auto* orient = add("orientations", "acyclic orientations", Command::orientations, false);
  sink_opts[Command::orientations] = orient->add_option("--sink", sink, "count those with unique sink");
  orient->add_flag("--list", c.list, "print the orientations");

  auto* hilbert = add("hilbert", "graded dimensions of U(n+)^q", Command::hilbert, false);
  hilbert->add_option("--q", c.q, "tensor power")->required()->check(CLI::PositiveNumber);
  hilbert->add_option("--max-ht", c.max_ht, "height bound")->required()->check(CLI::NonNegativeNumber);

  auto* lcs = add("lcs-ranks", "lower central series ranks", Command::lcs_ranks, false);
  lcs->add_option("--max-k", c.max_k, "largest k")->required()->check(CLI::PositiveNumber);
  lcs->add_flag("--triangle-free", c.triangle_free, "use the Lucas-polynomial formula");

  auto* recip = add("reciprocity", "q-compatible pairs vs chromatic value", Command::reciprocity, false);
  recip->add_option("--q", c.q, "number of labels")->required()->check(CLI::PositiveNumber);

  auto* verify = add("verify", "cross-check all routes up to a height", Command::verify, false);
  verify->add_option("--max-ht", c.max_ht, "height bound")->required()->check(CLI::PositiveNumber);
  verify->add_option("--threads", c.threads, "worker threads (default BKM_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);
  bool no_chromatic = false, no_mult = false, no_bond = false, no_recursion = false,
       no_tensor = false, no_reciprocity = false, no_lucas = false;
  verify->add_flag("--no-chromatic", no_chromatic, "skip polynomial vs colouring count");
  verify->add_flag("--no-mult", no_mult, "skip three-route multiplicity agreement");
  verify->add_flag("--no-bond", no_bond, "skip bond-lattice identity");
  verify->add_flag("--no-recursion", no_recursion, "skip word-set recursions");
  verify->add_flag("--no-tensor", no_tensor, "skip tensor-dimension identities");
  verify->add_flag("--no-reciprocity", no_reciprocity, "skip Stanley reciprocity");
  verify->add_flag("--no-lucas", no_lucas, "skip lower central series checks");

  std::vector<const char*> argv{"bkmroots"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    auto subs = app.get_subcommands();
    c.help = subs.empty() ? app.help() : subs.front()->help();
    return c;
  } catch (const CLI::CallForAllHelp&) {
    c.help = app.help("", CLI::AppFormatMode::All);
    return c;
  } catch (const CLI::ParseError& e) {
    fail(ErrorCode::usage, e.what());
  }

  auto* chosen = app.get_subcommands().front();
  c.command = commands.at(chosen);
  c.output = output == "json" ? OutputFormat::json : OutputFormat::text;
  c.checks = {!no_chromatic, !no_mult, !no_bond, !no_recursion, !no_tensor, !no_reciprocity, !no_lucas};

  c.graph = load_graph(c.graph_path);
  auto known = [&](VertexId v, const char* flag) {
    require(c.graph.contains(v), ErrorCode::usage,
            std::string(flag) + " names vertex " + std::to_string(v) + ", which is not in the graph");
  };
  if (auto* opt = chosen->get_option_no_throw("--k"); opt && *opt) {
    c.k = parse_weight_spec(k_text);
    for (auto& [v, n] : c.k.counts()) known(v, "--k");
  }
  if (auto it = sink_opts.find(c.command); it != sink_opts.end() && *it->second) {
    known(sink, "--sink");
    c.sink = sink;
  }
  if (c.command == Command::words) {
    if (*ia_opt) {
      known(ia, "--ia");
      c.ia = ia;
    }
    if (*classes_opt) {
      known(classes, "--aperiodic-classes");
      c.aperiodic_classes = classes;
    }
  }
  if (c.command == Command::chromatic && *eval_opt) {
    try {
      (void)parse_rational(eval);
    } catch (const Error&) {
      fail(ErrorCode::usage, "--eval expects an integer or n/d, got '" + eval + "'");
    }
    c.eval = eval;
  }
  return c;
}

RunConfig parse_args(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int j = 1; j < argc; ++j) args.emplace_back(argv[j]);
  return parse_args(args);
}

// ---------------------------------------------------------------------------
// Commands

namespace {

Json header(const char* command) {
  Json j;
  j["schema"] = "1";
  j["command"] = command;
  return j;
}

std::string big(const BigInt& x) { return x.str(); }
std::string rational_text(const Rational& r) {
  return is_integer(r) ? boost::multiprecision::numerator(r).str() : r.str();
}

void check_height(const RunConfig& c) {
  require(c.k.height() <= c.height_limit, ErrorCode::limit_exceeded,
          "height " + std::to_string(c.k.height()) + " exceeds --ht-limit " +
              std::to_string(c.height_limit) + " (search space up to " + sequence_count(c.k).str() +
              " words)");
}

void check_vertices(const RunConfig& c) {
  const auto n = c.graph.size();
  require(static_cast<int>(n) <= c.vertex_limit, ErrorCode::limit_exceeded,
          std::to_string(n) + " vertices exceed --vertex-limit " + std::to_string(c.vertex_limit) +
              " (2^" + std::to_string(c.graph.edge_count()) + " orientations, " +
              std::to_string(enumerate_independent_sets(c.graph).size()) + " independent sets)");
}

std::string factor_list(const std::vector<TraceWord>& f, const char* sep) {
  std::string out;
  for (std::size_t j = 0; j < f.size(); ++j) out += (j ? sep : "") + f[j].str();
  return out;
}

Json factor_json(const std::vector<TraceWord>& f) {
  Json a = Json::array();
  for (const auto& w : f) a.push_back(w.str());
  return a;
}

void emit(const Json& j, std::ostream& out) { out << j.dump(2) << '\n'; }

int run_chromatic(const RunConfig& c, std::ostream& out) {
  check_height(c);
  const Graph& g = c.graph;
  const VertexMask supp = support_mask(g, c.k);
  const int m = std::popcount(supp);
  bool complete = true;
  std::size_t twice_edges = 0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if ((supp >> i) & 1u) {
      const int nb = std::popcount(g.neighbours_at(i) & supp);
      twice_edges += static_cast<std::size_t>(nb);
      complete = complete && nb == m - 1;
    }
  const bool tree = is_connected_mask(g, supp) && twice_edges / 2 == static_cast<std::size_t>(m - 1);

  std::string form = c.closed_form;
  if (form == "auto") form = complete ? "complete" : tree ? "tree" : "general";
  QPolynomial p;
  if (form == "complete") {
    require(complete, ErrorCode::precondition, "support of k does not induce a complete graph");
    std::vector<int> w;
    for (auto& [v, n] : c.k.counts()) w.push_back(n);
    p = chromatic_complete(w);
  } else if (form == "tree") {
    p = chromatic_tree(g, c.k);
  } else {
    p = chromatic_poly(g, c.k);
  }

  std::optional<Rational> at;
  if (c.eval) at = parse_rational(*c.eval);
  if (c.output == OutputFormat::json) {
    Json j = header("chromatic");
    j["k"] = format_weight_spec(c.k);
    j["closed_form"] = form;
    j["coefficients"] = to_json(p);
    j["polynomial"] = p.str();
    if (at) j["eval"] = {{"q", rational_text(*at)}, {"value", rational_text(p(*at))}};
    emit(j, out);
  } else {
    out << "pi(q) = " << p.str() << '\n';
    if (at) out << "pi(" << rational_text(*at) << ") = " << rational_text(p(*at)) << '\n';
  }
  return exit_ok;
}

int run_mult(const RunConfig& c, std::ostream& out) {
  check_height(c);
  BigInt m;
  std::optional<VertexId> sink;
  if (c.method == "moebius") {
    m = root_multiplicity(c.graph, c.k);
  } else if (c.method == "bond") {
    m = mult_via_bond_lattice(c.graph, c.k);
  } else {
    sink = c.sink.value_or(c.k.counts().begin()->first);
    m = mult_via_orientations(c.graph, c.k, *sink);
  }
  if (c.output == OutputFormat::json) {
    Json j = header("mult");
    j["k"] = format_weight_spec(c.k);
    j["method"] = c.method;
    if (sink) j["sink"] = *sink;
    j["multiplicity"] = big(m);
    emit(j, out);
  } else {
    out << m << '\n';
  }
  return exit_ok;
}

int run_basis(const RunConfig& c, std::ostream& out) {
  check_vertices(c);
  check_height(c);
  const VertexId i = *c.sink;
  std::vector<LyndonWord> words;
  std::vector<std::string> brackets;
  std::optional<BasisReport> report;
  if (c.verify) {
    report = verify_basis(c.graph, c.k, i, c.height_limit);
    words = report->words;
    brackets = report->brackets;
  } else {
    words = c_i_set(c.graph, c.k, i, c.height_limit);
    for (const auto& w : words) brackets.push_back(render(lyndon_bracketing(w)));
  }

  if (c.output == OutputFormat::json) {
    Json j = header("basis");
    j["k"] = format_weight_spec(c.k);
    j["sink"] = i;
    j["words"] = Json::array();
    for (std::size_t t = 0; t < words.size(); ++t)
      j["words"].push_back({{"factors", factor_json(words[t])}, {"bracket", brackets[t]}});
    if (report) {
      Json v;
      v["count"] = words.size();
      v["multiplicity"] = big(report->multiplicity);
      v["count_matches"] = report->count_matches;
      v["rank"] = report->rank;
      v["rank_matches"] = report->rank_matches;
      v["spans"] = report->spans;
      if (report->right_normed_exact) v["right_normed_exact"] = *report->right_normed_exact;
      v["ok"] = report->ok();
      j["verification"] = v;
    }
    emit(j, out);
  } else {
    for (const auto& b : brackets) out << b << '\n';
    if (report) {
      auto flag = [](bool b) { return b ? "ok" : "FAILED"; };
      out << "count " << words.size() << ", multiplicity " << report->multiplicity << ": "
          << flag(report->count_matches) << '\n';
      out << "rank " << report->rank << ": " << flag(report->rank_matches) << '\n';
      out << "spanning: " << flag(report->spans) << '\n';
      if (report->right_normed_exact)
        out << "right-normed words: " << flag(*report->right_normed_exact) << '\n';
    }
  }
  return report && !report->ok() ? exit_verification_failed : exit_ok;
}

int run_words(const RunConfig& c, std::ostream& out) {
  check_vertices(c);
  check_height(c);
  Json j = header("words");
  j["k"] = format_weight_spec(c.k);
  if (c.aperiodic_classes) {
    auto classes = b_set(c.graph, c.k, *c.aperiodic_classes, c.height_limit);
    j["aperiodic_classes"] = *c.aperiodic_classes;
    j["classes"] = Json::array();
    for (const auto& f : classes) j["classes"].push_back(factor_json(f.factors));
    if (c.output == OutputFormat::text)
      for (const auto& f : classes) out << factor_list(f.factors, " | ") << '\n';
  } else {
    auto words = c.ia ? b_tilde(c.graph, c.k, *c.ia, c.height_limit)
                      : enumerate_weight_words(c.graph, c.k, c.height_limit);
    if (c.ia) j["ia"] = *c.ia;
    j["words"] = Json::array();
    for (const auto& w : words) j["words"].push_back(w.str());
    if (c.output == OutputFormat::text)
      for (const auto& w : words) out << w.str() << '\n';
  }
  if (c.output == OutputFormat::json) emit(j, out);
  return exit_ok;
}

int run_orientations(const RunConfig& c, std::ostream& out) {
  check_vertices(c);
  auto all = enumerate_acyclic_orientations(c.graph);
  std::vector<const Orientation*> shown;
  for (const auto& o : all)
    if (!c.sink || o.sinks(c.graph) == VertexSet{*c.sink}) shown.push_back(&o);
  auto arcs_text = [](const Orientation& o) {
    std::string s;
    for (auto [t, h] : o.arcs) s += (s.empty() ? "" : " ") + std::to_string(t) + "->" + std::to_string(h);
    return s;
  };
  if (c.output == OutputFormat::json) {
    Json j = header("orientations");
    j["acyclic"] = all.size();
    if (c.sink) {
      j["sink"] = *c.sink;
      j["unique_sink"] = shown.size();
    }
    if (c.list) {
      j["orientations"] = Json::array();
      for (auto* o : shown) {
        Json arcs = Json::array();
        for (auto [t, h] : o->arcs) arcs.push_back({t, h});
        j["orientations"].push_back(arcs);
      }
    }
    emit(j, out);
  } else {
    out << "acyclic orientations: " << all.size() << '\n';
    if (c.sink) out << "with unique sink " << *c.sink << ": " << shown.size() << '\n';
    if (c.list)
      for (auto* o : shown) out << arcs_text(*o) << '\n';
  }
  return exit_ok;
}

int run_hilbert(const RunConfig& c, std::ostream& out) {
  require(c.max_ht <= c.height_limit, ErrorCode::limit_exceeded,
          "--max-ht " + std::to_string(c.max_ht) + " exceeds --ht-limit " + std::to_string(c.height_limit) +
              " (" + binomial(static_cast<long long>(c.graph.size()) + c.max_ht, c.max_ht).str() +
              " weights)");
  auto table = hilbert_series(c.graph, c.q, c.max_ht);
  std::vector<std::pair<WeightVector, BigInt>> rows(table.entries.begin(), table.entries.end());
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) { return a.first.height() < b.first.height(); });
  if (c.output == OutputFormat::json) {
    Json j = header("hilbert");
    j["q"] = c.q;
    j["bound"] = table.bound;
    j["entries"] = Json::array();
    for (auto& [k, d] : rows) j["entries"].push_back({{"k", format_weight_spec(k)}, {"dimension", big(d)}});
    emit(j, out);
  } else {
    for (auto& [k, d] : rows) out << format_weight_spec(k) << '\t' << d << '\n';
  }
  return exit_ok;
}

int run_lcs(const RunConfig& c, std::ostream& out) {
  auto ranks = c.triangle_free ? lcs_ranks_triangle_free(c.graph, c.max_k) : lcs_ranks(c.graph, c.max_k);
  if (c.output == OutputFormat::json) {
    Json j = header("lcs-ranks");
    j["route"] = c.triangle_free ? "lucas" : "log";
    j["ranks"] = Json::array();
    for (const auto& r : ranks)
      j["ranks"].push_back({{"k", r.k}, {"n", to_fraction_string(r.n)}, {"m", big(r.m)}});
    emit(j, out);
  } else {
    for (const auto& r : ranks) out << r.k << '\t' << rational_text(r.n) << '\t' << r.m << '\n';
  }
  return exit_ok;
}

Rational reciprocity_value(const Graph& g, int q) {
  Rational v = chromatic_poly(g, WeightVector::ones(g))(Rational(-q));
  return g.size() % 2 ? Rational(-v) : v;
}

int run_reciprocity(const RunConfig& c, std::ostream& out) {
  check_vertices(c);
  const BigInt pairs = count_compatible_pairs(c.graph, c.q);
  const Rational value = reciprocity_value(c.graph, c.q);
  bool agrees = Rational(pairs) == value;
  std::optional<std::size_t> acyclic;
  if (c.q == 1) {
    acyclic = enumerate_acyclic_orientations(c.graph).size();
    agrees = agrees && BigInt(*acyclic) == pairs;
  }
  if (c.output == OutputFormat::json) {
    Json j = header("reciprocity");
    j["q"] = c.q;
    j["compatible_pairs"] = big(pairs);
    j["chromatic_value"] = rational_text(value);
    if (acyclic) j["acyclic_orientations"] = *acyclic;
    j["agrees"] = agrees;
    emit(j, out);
  } else {
    out << "compatible pairs: " << pairs << '\n';
    out << "(-1)^n pi(-" << c.q << "): " << rational_text(value) << '\n';
    if (acyclic) out << "acyclic orientations: " << *acyclic << '\n';
    out << (agrees ? "agree" : "DISAGREE") << '\n';
  }
  return agrees ? exit_ok : exit_verification_failed;
}

// --- verify ---------------------------------------------------------------

struct Failure {
  std::string check;
  std::string instance;
  Json values;
};

struct Outcome {
  std::size_t checks = 0;
  std::vector<Failure> failures;

  void expect(bool ok, const char* check, const std::string& instance, Json values) {
    ++checks;
    if (!ok) failures.push_back({check, instance, std::move(values)});
  }
};

bool real_weights_ok(const Graph& g, const WeightVector& k) {
  for (auto& [v, n] : k.counts())
    if (g.kind(v) == VertexKind::real && n > 1) return false;
  return true;
}

Outcome verify_weight(const RunConfig& c, const WeightVector& k) {
  const Graph& g = c.graph;
  const std::string inst = format_weight_spec(k);
  const int ht = k.height();
  const bool multiplicities = real_weights_ok(g, k);
  Outcome r;
  const QPolynomial p = chromatic_poly(g, k);

  if (c.checks.chromatic)
    for (int q = 0; q <= ht; ++q) {
      const BigInt oracle = coloring_count_oracle(g, k, static_cast<unsigned>(q));
      r.expect(p(q) == Rational(oracle), "chromatic", inst,
               {{"q", q}, {"polynomial", rational_text(p(q))}, {"oracle", big(oracle)}});
    }

  if (c.checks.mult && multiplicities) {
    const BigInt m = root_multiplicity(g, k);
    for (VertexId i : k.support()) {
      const BigInt mo = mult_via_orientations(g, k, i);
      const auto mb = b_set(g, k, i, c.height_limit).size();
      r.expect(m == mo && m == BigInt(mb), "mult", inst,
               {{"sink", i}, {"moebius", big(m)}, {"orientations", big(mo)}, {"aperiodic_classes", mb}});
    }
  }

  if (c.checks.bond && multiplicities) {
    const QPolynomial pb = chromatic_via_bond_lattice(g, k);
    r.expect(pb == p, "bond", inst, {{"chromatic", p.str()}, {"bond_lattice", pb.str()}});
    const BigInt mb = mult_via_bond_lattice(g, k);
    const BigInt m = root_multiplicity(g, k);
    r.expect(mb == m, "bond", inst, {{"moebius", big(m)}, {"bond_lattice", big(mb)}});
  }

  if (c.checks.recursion) {
    const bool zero_one = std::all_of(k.counts().begin(), k.counts().end(),
                                      [](const auto& e) { return e.second == 1; });
    for (VertexId i : k.support()) {
      const auto tilde = b_tilde(g, k, i, c.height_limit).size();
      BigInt rhs = 0;
      for (int l : tuple_divisors(k))
        rhs += (k[i] / l) * BigInt(b_set(g, k.divided_by(l), i, c.height_limit).size());
      r.expect(BigInt(tilde) == rhs, "recursion", inst,
               {{"sink", i}, {"b_tilde", tilde}, {"divisor_sum", big(rhs)}});
      if (zero_one) {
        auto supp = k.support();
        const BigInt sinks = count_unique_sink(induced_subgraph(g, supp), i);
        r.expect(BigInt(tilde) == sinks, "recursion", inst,
                 {{"sink", i}, {"b_tilde", tilde}, {"unique_sink_orientations", big(sinks)}});
      }
    }
  }

  if (c.checks.tensor && g.all_imaginary()) {
    const BigInt d1 = uq_dimension(g, k, 1);
    const BigInt words = trace_dimension_oracle(g, k, c.height_limit);
    r.expect(d1 == words, "tensor", inst, {{"q", 1}, {"dimension", big(d1)}, {"trace_words", big(words)}});
    const BigInt d2 = uq_dimension(g, k, 2);
    BigInt conv = 0;
    std::map<WeightVector, BigInt> memo;
    auto words_of = [&](const WeightVector& b) -> BigInt {
      if (b.is_zero()) return 1;
      auto it = memo.find(b);
      if (it == memo.end()) it = memo.emplace(b, trace_dimension_oracle(g, b, c.height_limit)).first;
      return it->second;
    };
    for (const auto& parts : weight_compositions(k, 2)) conv += words_of(parts[0]) * words_of(parts[1]);
    r.expect(d2 == conv, "tensor", inst, {{"q", 2}, {"dimension", big(d2)}, {"convolution", big(conv)}});
  }
  return r;
}

Outcome verify_graph(const RunConfig& c) {
  const Graph& g = c.graph;
  Outcome r;
  if (c.checks.reciprocity)
    for (int q = 1; q <= 3; ++q) {
      const BigInt pairs = count_compatible_pairs(g, q);
      const Rational value = reciprocity_value(g, q);
      r.expect(Rational(pairs) == value, "reciprocity", "q=" + std::to_string(q),
               {{"compatible_pairs", big(pairs)}, {"chromatic_value", rational_text(value)}});
      if (q == 1) {
        const auto acyclic = enumerate_acyclic_orientations(g).size();
        r.expect(BigInt(acyclic) == pairs, "reciprocity", "q=1",
                 {{"compatible_pairs", big(pairs)}, {"acyclic_orientations", acyclic}});
      }
    }
  if (c.checks.lucas && g.all_imaginary()) {
    const auto ranks = lcs_ranks(g, c.max_ht);
    for (const auto& rk : ranks) {
      BigInt total = 0;
      for (const auto& a : weights_of_height(g, rk.k)) total += root_multiplicity(g, a);
      r.expect(total == rk.m, "lucas", "k=" + std::to_string(rk.k),
               {{"log_route", big(rk.m)}, {"multiplicity_sum", big(total)}});
    }
    if (is_triangle_free(complement(g))) {
      const auto lucas = lcs_ranks_triangle_free(g, c.max_ht);
      for (std::size_t t = 0; t < ranks.size(); ++t)
        r.expect(lucas[t].n == ranks[t].n && lucas[t].m == ranks[t].m, "lucas",
                 "k=" + std::to_string(ranks[t].k),
                 {{"log_n", to_fraction_string(ranks[t].n)}, {"lucas_n", to_fraction_string(lucas[t].n)},
                  {"log_m", big(ranks[t].m)}, {"lucas_m", big(lucas[t].m)}});
    }
  }
  return r;
}

unsigned thread_count(const RunConfig& c) {
  if (c.threads > 0) return static_cast<unsigned>(c.threads);
  if (const char* env = std::getenv("BKM_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int run_verify(const RunConfig& c, std::ostream& out) {
  check_vertices(c);
  require(c.max_ht <= c.height_limit, ErrorCode::limit_exceeded,
          "--max-ht " + std::to_string(c.max_ht) + " exceeds --ht-limit " + std::to_string(c.height_limit));
  std::vector<WeightVector> weights;
  for (int h = 1; h <= c.max_ht; ++h)
    for (auto& k : weights_of_height(c.graph, h)) weights.push_back(std::move(k));

  // Workers pull weights by index; results are merged in index order.
  std::vector<Outcome> results(weights.size());
  std::vector<std::exception_ptr> errors(weights.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j; (j = next++) < weights.size();) {
      try {
        results[j] = verify_weight(c, weights[j]);
      } catch (...) {
        errors[j] = std::current_exception();
      }
    }
  };
  const unsigned n = std::min<std::size_t>(thread_count(c), std::max<std::size_t>(weights.size(), 1));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  Outcome total = verify_graph(c);
  for (auto& r : results) {
    total.checks += r.checks;
    for (auto& f : r.failures) total.failures.push_back(std::move(f));
  }

  auto record = [](const Failure& f) {
    Json j;
    j["check"] = f.check;
    j["instance"] = f.instance;
    j["values"] = f.values;
    return j;
  };
  const std::size_t passed = total.checks - total.failures.size();
  if (c.output == OutputFormat::json) {
    Json j = header("verify");
    j["max_ht"] = c.max_ht;
    j["checks"] = total.checks;
    j["passed"] = passed;
    j["failures"] = Json::array();
    for (const auto& f : total.failures) j["failures"].push_back(record(f));
    emit(j, out);
  } else {
    out << "verify: " << passed << "/" << total.checks << " checks passed\n";
    for (const auto& f : total.failures) out << "FAIL " << record(f).dump() << '\n';
  }
  return total.failures.empty() ? exit_ok : exit_verification_failed;
}

}  // namespace

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  (void)err;
  if (!c.help.empty()) {
    out << c.help;
    return exit_ok;
  }
  switch (c.command) {
    case Command::chromatic: return run_chromatic(c, out);
    case Command::mult: return run_mult(c, out);
    case Command::basis: return run_basis(c, out);
    case Command::words: return run_words(c, out);
    case Command::orientations: return run_orientations(c, out);
    case Command::hilbert: return run_hilbert(c, out);
    case Command::lcs_ranks: return run_lcs(c, out);
    case Command::reciprocity: return run_reciprocity(c, out);
    case Command::verify: return run_verify(c, out);
  }
  return exit_error;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    return run(parse_args(argc, argv), out, err);
  } catch (const Error& e) {
    err << "bkmroots: " << to_string(e.code()) << ": " << e.what() << '\n';
    return e.code() == ErrorCode::usage ? exit_usage : exit_error;
  } catch (const std::exception& e) {
    err << "bkmroots: internal: " << e.what() << '\n';
    return exit_error;
  }
}

}  // namespace bkm::cli
