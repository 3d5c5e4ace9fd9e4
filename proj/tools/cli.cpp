#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "statefiber/certificate.hpp"
#include "statefiber/decide.hpp"
#include "statefiber/families.hpp"
#include "statefiber/graph_io.hpp"
#include "statefiber/ingest.hpp"

namespace statefiber::cli {

namespace {

using nlohmann::json;

struct InputOptions {
  std::string path = "-";
  std::string format = "auto";  // graph | pd | auto
  std::string state = "seifert";
};

std::string slurp(const std::string& path, std::istream& in) {
  std::ostringstream ss;
  if (path == "-") {
    ss << in.rdbuf();
  } else {
    std::ifstream f(path);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
    ss << f.rdbuf();
  }
  return ss.str();
}

bool looks_like_pd(std::string_view text) {
  const auto p = text.find_first_not_of(" \t\r\n");
  return p != std::string_view::npos && (text.substr(p, 2) == "X[" || text.substr(p, 3) == "PD[");
}

PlanarStateGraph graph_from_text(const std::string& text, const std::string& format, const std::string& state) {
  const bool pd = format == "pd" || (format == "auto" && looks_like_pd(text));
  if (!pd) return parse_graph(text);
  const PDCode code = parse_pd(text);
  return resolve(code, state == "seifert" ? seifert_state(code) : parse_state(state));
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  f << content;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
  return s;
}

std::string label_string(const PlanarStateGraph& g) {
  std::string s;
  for (EdgeLabel l : g.labels()) s += to_char(l);
  return s;
}

json decision_summary(const Decision& d) {
  json j{{"verdict", to_string(d.verdict)}};
  if (d.verdict == Verdict::NonOrientable) {
    j["reason"] = d.reason;
    return j;
  }
  json early = json::array();
  for (const auto& e : d.pipeline.early)
    early.push_back({{"piece", e.piece},
                     {"kind", e.kind == EarlyKind::TreeFiber ? "tree" : "distinct_parallel"},
                     {"edges", e.witness}});
  json pieces = json::array();
  for (std::size_t i = 0; i < d.pieces.size(); ++i)
    pieces.push_back({{"piece", d.pipeline.irreducible[i].id},
                      {"edges", d.pipeline.irreducible[i].origin},
                      {"rank", d.pieces[i].rank},
                      {"rose", d.pieces[i].kind == CertificateKind::Rose}});
  j["early"] = std::move(early);
  j["pieces"] = std::move(pieces);
  return j;
}

void print_decision(const Decision& d, std::ostream& out) {
  out << to_string(d.verdict) << '\n';
  if (d.verdict == Verdict::NonOrientable) {
    out << "  " << d.reason << '\n';
    return;
  }
  for (const auto& e : d.pipeline.early)
    out << "  piece " << e.piece << ": "
        << (e.kind == EarlyKind::TreeFiber ? "reduces to a tree" : "distinct-label parallel edges") << " [edges "
        << join(e.witness) << "]\n";
  for (std::size_t i = 0; i < d.pieces.size(); ++i) {
    const auto& c = d.pieces[i];
    out << "  piece " << d.pipeline.irreducible[i].id << ": rank " << c.rank << ", folds to ";
    if (c.kind == CertificateKind::Rose)
      out << "a rose with " << c.rank << " petals\n";
    else
      out << c.folded.vertices << " vertices and " << c.folded.arcs.size() << " arcs (not a rose)\n";
  }
}

// ---- decide ----

struct DecideArgs {
  InputOptions input;
  std::string trace;
  bool batch = false;
  bool json_out = false;
  std::optional<std::uint64_t> seed;
};

int run_batch(const DecideArgs& a, std::istream& in, std::ostream& out) {
  std::vector<std::string> lines;
  {
    std::istringstream ss(slurp(a.input.path, in));
    std::string line;
    while (std::getline(ss, line)) lines.push_back(line);
  }
  std::vector<std::string> results(lines.size());
  std::vector<char> failed(lines.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < lines.size();) {
      const std::string& line = lines[i];
      if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
      json j{{"line", i + 1}};
      try {
        // A graph-format line names a file; a PD line may end in "| <state>".
        std::string text = line, state = a.input.state;
        const bool pd = a.input.format == "pd" || (a.input.format == "auto" && looks_like_pd(line));
        if (pd) {
          if (const auto bar = line.find('|'); bar != std::string::npos) {
            text = line.substr(0, bar);
            state = line.substr(bar + 1);
            state.erase(0, state.find_first_not_of(' '));
            state.erase(state.find_last_not_of(" \r") + 1);
          }
        } else {
          text = slurp(line.substr(0, line.find_last_not_of(" \r") + 1), in);
        }
        DecideOptions o;
        o.seed = a.seed;
        const auto d = decide(graph_from_text(text, pd ? "pd" : "graph", state), o);
        j["verdict"] = to_string(d.verdict);
      } catch (const Error& e) {
        j["error"] = to_string(e.code());
        j["message"] = e.what();
        failed[i] = 1;
      }
      results[i] = j.dump();
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 16));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& r : results)
    if (!r.empty()) out << r << '\n';
  return std::count(failed.begin(), failed.end(), 1) ? kUsageError : 0;
}

int run_decide(const DecideArgs& a, std::istream& in, std::ostream& out) {
  if (a.batch) return run_batch(a, in, out);
  const auto g = graph_from_text(slurp(a.input.path, in), a.input.format, a.input.state);
  DecideOptions o;
  o.seed = a.seed;
  const Decision d = decide(g, o);
  if (a.json_out)
    out << decision_summary(d).dump(2) << '\n';
  else
    print_decision(d, out);
  if (!a.trace.empty()) {
    write_file(a.trace, certificate_to_json(d).dump(1) + "\n");
    if (!a.json_out) out << "certificate: " << a.trace << '\n';
  }
  return exit_code(d.verdict);
}

// ---- decompose ----

int run_decompose(const InputOptions& input, const std::string& trace, bool json_out, std::istream& in,
                  std::ostream& out) {
  const auto g = graph_from_text(slurp(input.path, in), input.format, input.state);
  require_valid(g);
  const auto blocks = split_cut_vertices(g);
  const auto r = pipeline(g);
  if (json_out) {
    json j;
    json bl = json::array();
    for (const auto& b : blocks) bl.push_back({{"edges", b.origin}, {"labels", label_string(b.graph)}});
    j["blocks"] = std::move(bl);
    json log = json::array();
    for (const Step& s : r.log) {
      json e{{"kind", to_string(s.kind)}, {"piece", s.piece}};
      if (!s.edges.empty()) e["edges"] = s.edges;
      if (!s.children.empty()) e["children"] = s.children;
      log.push_back(std::move(e));
    }
    j["log"] = std::move(log);
    json pieces = json::array();
    for (const auto& p : r.irreducible)
      pieces.push_back({{"piece", p.id}, {"edges", p.origin}, {"labels", label_string(p.graph)}, {"rank", rank(p.graph)}});
    j["irreducible"] = std::move(pieces);
    out << j.dump(2) << '\n';
  } else {
    // Pieces in the graph text format; everything else is a '#' comment.
    out << "# " << blocks.size() << (blocks.size() == 1 ? " block\n" : " blocks\n");
    for (std::size_t i = 0; i < blocks.size(); ++i)
      out << "#   block " << i + 1 << ": " << label_string(blocks[i].graph) << " [edges " << join(blocks[i].origin)
          << "]\n";
    for (const auto& e : r.early)
      out << "# piece " << e.piece << ": "
          << (e.kind == EarlyKind::TreeFiber ? "reduces to a tree (fiber)" : "distinct-label bigon (not a fiber)")
          << " [edges " << join(e.witness) << "]\n";
    out << "# " << r.irreducible.size() << " irreducible\n";
    for (const auto& p : r.irreducible) {
      out << "\n# piece " << p.id << ": rank " << rank(p.graph) << " [edges " << join(p.origin) << "]\n";
      out << serialize_graph(p.graph);
    }
    json log = json::array();
    for (const Step& s : r.log) {
      json e{{"kind", to_string(s.kind)}, {"piece", s.piece}};
      if (!s.edges.empty()) e["edges"] = s.edges;
      if (!s.children.empty()) e["children"] = s.children;
      log.push_back(std::move(e));
    }
    out << "\n# log\n" << log.dump() << '\n';
  }
  if (!trace.empty()) write_file(trace, certificate_to_json(decide(g)).dump(1) + "\n");
  return 0;
}

// ---- fold ----

int run_fold(const std::string& words_arg, const std::string& path, int generators, const std::string& trace,
             bool json_out, std::istream& in, std::ostream& out) {
  std::string text = words_arg;
  if (text.empty()) {
    text = slurp(path, in);
    std::replace(text.begin(), text.end(), '\n', ';');
  }
  const auto words = parse_words(text);
  int n = generators;
  if (n <= 0)
    for (const auto& w : words) n = std::max(n, max_generator(w));
  const auto r = fold(build_gamma_from_words(words, n), !trace.empty() || json_out);
  const bool rose = is_full_rose(r.graph, n);
  if (json_out) {
    out << fold_to_json(words, n, r).dump(1) << '\n';
  } else if (rose) {
    out << "rose with " << n << " petals\n";
  } else {
    out << "not a rose: " << r.graph.vertices << " vertices, " << r.graph.arcs.size() << " arcs over " << n
        << " generators\n";
  }
  if (!trace.empty()) write_file(trace, fold_to_json(words, n, r).dump(1) + "\n");
  return rose ? 0 : 1;
}

// ---- family ----

struct FamilyArgs {
  std::string cycle, theta, pretzel, two_bridge, enumerate;
  int max_length = 12, max_strands = 6, max_vertices = 5, max_abs = 6;
  bool quiet = false;
  bool json_out = false;
};

std::string verdict_name(bool fiber) { return fiber ? "FIBER" : "NOT_FIBER"; }

struct FamilyResult {
  std::string instance;
  bool formula = false;
  std::optional<bool> decider;
  json extra;
};

FamilyResult eval_cycle(const std::vector<EdgeLabel>& l) {
  std::string name;
  for (EdgeLabel x : l) name += to_char(x);
  return {name, cycle_fiber(l), decide_verdict(cycle_graph(l)) == Verdict::Fiber, {}};
}

FamilyResult eval_theta(const ThetaSpec& t) {
  return {format_theta(t), theta_fiber(t), decide_verdict(theta_graph(t)) == Verdict::Fiber,
          {{"pretzel", theta_to_pretzel(t)}}};
}

FamilyResult eval_cf(const ContinuedFraction& cf) {
  const auto m = two_bridge_matrix(cf);
  FamilyResult r{format_cf(cf), two_bridge_fiber(cf), decide_verdict(two_bridge_graph(cf)) == Verdict::Fiber, {}};
  r.extra = {{"diagonal", m.matrix.p}, {"det", m.det}};
  return r;
}

FamilyResult eval_pretzel(const std::vector<int>& p) {
  FamilyResult r{"", pretzel_fiber(p), std::nullopt, {}};
  for (int x : p) r.instance += (r.instance.empty() ? "" : ",") + std::to_string(x);
  // Tuples of one parity with at least three entries are theta graphs.
  const bool same_parity = std::all_of(p.begin(), p.end(), [&](int x) { return (x - p[0]) % 2 == 0; });
  if (p.size() >= 3 && same_parity) {
    ThetaSpec t;
    for (int x : p) t.strands.push_back({std::abs(x) - 1, x > 0 ? EdgeLabel::A : EdgeLabel::B});
    r.decider = decide_verdict(theta_graph(t)) == Verdict::Fiber;
    r.extra = {{"theta", format_theta(t)}};
  }
  return r;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> v;
  for (int x : parse_cf(s).coefficients) v.push_back(x);
  return v;
}

void print_result(const FamilyResult& r, bool json_out, std::ostream& out) {
  if (json_out) {
    json j{{"instance", r.instance}, {"formula", verdict_name(r.formula)}};
    if (r.decider) j["decider"] = verdict_name(*r.decider);
    if (!r.extra.is_null()) j.update(r.extra);
    out << j.dump() << '\n';
    return;
  }
  out << r.instance << '\t' << verdict_name(r.formula);
  if (r.decider) out << '\t' << verdict_name(*r.decider);
  out << '\n';
}

int run_family(const FamilyArgs& a, std::ostream& out) {
  if (!a.enumerate.empty()) {
    std::int64_t count = 0, fibers = 0, disagree = 0;
    auto consume = [&](const FamilyResult& r) {
      ++count;
      fibers += r.formula;
      const bool bad = r.decider && *r.decider != r.formula;
      disagree += bad;
      if (!a.quiet || bad) print_result(r, a.json_out, out);
    };
    if (a.enumerate == "cycles") {
      for (const auto& l : enumerate_cycles(a.max_length)) consume(eval_cycle(l));
    } else if (a.enumerate == "theta") {
      for (const auto& t : enumerate_theta(a.max_strands, a.max_vertices)) consume(eval_theta(t));
    } else if (a.enumerate == "two-bridge") {
      for_each_cf(a.max_length, a.max_abs, [&](const ContinuedFraction& cf) { consume(eval_cf(cf)); });
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown family '" + a.enumerate + "'");
    }
    if (a.json_out)
      out << json{{"instances", count}, {"fibers", fibers}, {"disagreements", disagree}}.dump() << '\n';
    else
      out << "# " << count << " instances, " << fibers << " fibers, " << disagree << " disagreements\n";
    return disagree ? kInternalError : 0;
  }

  FamilyResult r;
  if (!a.cycle.empty()) {
    std::vector<EdgeLabel> l;
    for (char c : a.cycle) l.push_back(parse_label(c));
    r = eval_cycle(l);
  } else if (!a.theta.empty()) {
    r = eval_theta(parse_theta(a.theta));
  } else if (!a.pretzel.empty()) {
    r = eval_pretzel(parse_ints(a.pretzel));
  } else if (!a.two_bridge.empty()) {
    r = eval_cf(parse_cf(a.two_bridge));
  } else {
    throw Error(ErrorCode::InvalidArgument, "give one of --cycle, --theta, --pretzel, --two-bridge or --enumerate");
  }
  if (a.json_out) {
    print_result(r, true, out);
  } else {
    out << verdict_name(r.formula) << '\n';
    out << "  formula: " << verdict_name(r.formula) << '\n';
    if (r.decider) out << "  decider: " << verdict_name(*r.decider) << '\n';
    if (r.extra.contains("det"))
      out << "  diagonal: " << r.extra["diagonal"].dump() << ", det " << r.extra["det"].get<std::int64_t>() << '\n';
    if (r.extra.contains("pretzel")) out << "  pretzel: " << r.extra["pretzel"].dump() << '\n';
    if (r.extra.contains("theta")) out << "  theta: " << r.extra["theta"].get<std::string>() << '\n';
  }
  if (r.decider && *r.decider != r.formula) return kInternalError;
  return r.formula ? 0 : 1;
}

// ---- verify-certificate ----

int run_verify(const std::string& path, std::istream& in, std::ostream& out) {
  json j;
  try {
    j = json::parse(slurp(path, in));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Syntax, std::string("certificate is not JSON: ") + e.what());
  }
  if (j.value("kind", "") == "statefiber-fold") {
    const bool rose = verify_fold_certificate(j);
    out << "OK " << (rose ? "rose" : "not a rose") << '\n';
    return rose ? 0 : 1;
  }
  const Verdict v = verify_certificate(j);
  out << "OK " << to_string(v) << '\n';
  return exit_code(v);
}

void add_input(CLI::App* sub, InputOptions& o) {
  sub->add_option("input", o.path, "Input file, or - for standard input")->capture_default_str();
  sub->add_option("--format", o.format, "Input format")
      ->check(CLI::IsMember({"auto", "graph", "pd"}))
      ->capture_default_str();
  sub->add_option("--state", o.state, "Kauffman state for PD input: an A/B string or 'seifert'")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decide whether state surfaces of link diagrams are fibers", "statefiber"};
  app.require_subcommand(1);

  DecideArgs dargs;
  std::uint64_t seed = 0;
  auto* dec = app.add_subcommand("decide", "Decide fibering of a state graph or PD code with a state");
  add_input(dec, dargs.input);
  dec->add_option("--trace", dargs.trace, "Write a JSON certificate to this path");
  dec->add_flag("--batch", dargs.batch, "One input per line; newline-delimited JSON verdicts");
  dec->add_flag("--json", dargs.json_out, "JSON output");
  auto* seed_opt = dec->add_option("--seed", seed, "Randomize reduction order, basepoints and outer faces");

  InputOptions dcin;
  std::string dctrace;
  bool dcjson = false;
  auto* dcm = app.add_subcommand("decompose", "Show the cut-vertex splitting and reduction steps");
  add_input(dcm, dcin);
  dcm->add_option("--trace", dctrace, "Write a JSON certificate to this path");
  dcm->add_flag("--json", dcjson, "JSON output");

  std::string fwords, fpath = "-", ftrace;
  int fgens = 0;
  bool fjson = false;
  auto* fld = app.add_subcommand("fold", "Fold the wedge of loops spelling a list of words");
  fld->add_option("--words", fwords, "Words separated by ';', e.g. \"u1^-1 u5 u1^-1; u3 u2^-1\"");
  fld->add_option("input", fpath, "File with one word per line (when --words is absent)");
  fld->add_option("-n,--generators", fgens, "Free-group rank (default: largest generator used)");
  fld->add_option("--trace", ftrace, "Write a JSON fold certificate to this path");
  fld->add_flag("--json", fjson, "JSON output");

  FamilyArgs fa;
  auto* fam = app.add_subcommand("family", "Closed-form verdicts for cycles, theta graphs, pretzel and 2-bridge links");
  fam->add_option("--cycle", fa.cycle, "Cycle labels, e.g. AABB");
  fam->add_option("--theta", fa.theta, "Theta strands as edge labels, e.g. A,BBB,A");
  fam->add_option("--pretzel", fa.pretzel, "Pretzel tuple, e.g. 2,-2,7");
  fam->add_option("--two-bridge", fa.two_bridge, "Continued fraction a_{n-1},...,a_1, e.g. -3,4,-2");
  fam->add_option("--enumerate", fa.enumerate, "Check a whole family against the decider")
      ->check(CLI::IsMember({"cycles", "theta", "two-bridge"}));
  fam->add_option("--max-length", fa.max_length, "Cycle length or number of coefficients")->capture_default_str();
  fam->add_option("--max-strands", fa.max_strands, "Theta strands")->capture_default_str();
  fam->add_option("--max-vertices", fa.max_vertices, "Theta vertices per strand")->capture_default_str();
  fam->add_option("--max-abs", fa.max_abs, "Largest |a_i|")->capture_default_str();
  fam->add_flag("--quiet", fa.quiet, "Print only disagreements and the summary");
  fam->add_flag("--json", fa.json_out, "JSON lines output");

  std::string vpath = "-";
  auto* ver = app.add_subcommand("verify-certificate", "Replay a decision or fold certificate");
  ver->add_option("certificate", vpath, "Certificate file, or - for standard input");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*dec) {
      if (*seed_opt) dargs.seed = seed;
      return run_decide(dargs, in, out);
    }
    if (*dcm) return run_decompose(dcin, dctrace, dcjson, in, out);
    if (*fld) return run_fold(fwords, fpath, fgens, ftrace, fjson, in, out);
    if (*fam) {
      if (fam->count("--enumerate") && fa.enumerate == "two-bridge" && !fam->count("--max-length")) fa.max_length = 7;
      return run_family(fa, out);
    }
    if (*ver) return run_verify(vpath, in, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::InternalMismatch ? kInternalError : kUsageError;
  }
  return kUsageError;
}

}  // namespace statefiber::cli
