// shiftz: command-line front end for the shiftz library.
//
// Exit codes: 0 success or true, 1 false or a witness, 2 input error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "shiftz/block_code.hpp"
#include "shiftz/bridge.hpp"
#include "shiftz/higher_block.hpp"
#include "shiftz/point.hpp"
#include "shiftz/space.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace shiftz;

constexpr int kOk = 0;
constexpr int kFalse = 1;
constexpr int kInputError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ForbiddenSpec load_spec(const std::string& path) { return parse_spec_json(read_file(path)); }
SlidingBlockCode load_rule(const std::string& path) { return sbc_build(read_file(path)); }

// Points from --point options, or one per nonblank line of stdin.
std::vector<std::string> point_texts(const std::vector<std::string>& given) {
  if (!given.empty()) return given;
  std::vector<std::string> out;
  std::string line;
  while (std::getline(std::cin, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) out.push_back(line);
  }
  return out;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string yes_no(bool b) { return b ? "true" : "false"; }

struct Options {
  bool as_json = false;
  Letter cutoff = 0;
  int n_budget = 3;
};

// --- verbs ------------------------------------------------------------------------

int point_eval(const Options& o, const std::string& text, const std::optional<std::int64_t>& by,
               const std::vector<std::int64_t>& range, const std::optional<std::int64_t>& tail) {
  const BiPoint x = parse_point(text);
  json j;
  j["point"] = format_point(x);
  j["length"] = format_length(length(x));
  if (by) j["shift"] = format_point(shift(x, *by));
  if (range.size() == 2) j["window"] = format_word(window(x, range[0], range[1]));
  if (tail) j["tail"] = format_ray(tail_ray(x, *tail));
  if (o.as_json) {
    emit(j);
  } else {
    for (auto it = j.begin(); it != j.end(); ++it) std::cout << it.key() << ": " << it.value().get<std::string>() << "\n";
  }
  return kOk;
}

int space_check(const Options& o, const std::string& spec_path, const std::vector<std::string>& given) {
  const SpaceHandle h(load_spec(spec_path));
  const auto texts = point_texts(given);
  bool all = true;
  json rows = json::array();
  std::vector<std::pair<std::string, bool>> verdicts;
  for (const auto& t : texts) {
    const BiPoint x = parse_point(t);
    const bool in = h.contains(x);
    all = all && in;
    verdicts.emplace_back(format_point(x, h.arity()), in);
  }
  if (o.as_json) {
    for (const auto& [p, in] : verdicts) rows.push_back({{"point", p}, {"member", in}});
    emit(json{{"results", rows}, {"all_members", all}});
  } else if (verdicts.size() == 1) {
    std::cout << (verdicts.front().second ? "member" : "not member") << "\n";
  } else {
    for (const auto& [p, in] : verdicts) std::cout << p << ": " << (in ? "member" : "not member") << "\n";
  }
  return all ? kOk : kFalse;
}

int space_blocks(const Options& o, const std::string& spec_path, int n, const std::optional<std::string>& follow,
                 const std::optional<std::string>& follow_ray, int k, bool backward) {
  const SpaceHandle h(load_spec(spec_path));
  if (follow || follow_ray) {
    FollowerSet fs = follow_ray ? follower_set(h, parse_ray(*follow_ray), k, o.cutoff)
                                : follower_set(h, parse_word(*follow), k,
                                               backward ? Direction::Backward : Direction::Forward, o.cutoff);
    if (o.as_json) {
      json words = json::array();
      for (const auto& w : fs.words) words.push_back(format_compact(w));
      emit(json{{"words", words}, {"infinite", fs.infinite}});
    } else {
      for (const auto& w : fs.words) std::cout << format_compact(w) << "\n";
      std::cout << (fs.infinite ? "infinite" : "finite") << "\n";
    }
    return kOk;
  }
  const auto bs = blocks(h, n, o.cutoff);
  if (o.as_json) {
    json words = json::array();
    for (const auto& w : bs) words.push_back(format_compact(w, h.arity()));
    emit(json{{"n", n}, {"cutoff", o.cutoff}, {"blocks", words}});
  } else {
    for (const auto& w : bs) std::cout << format_compact(w, h.arity()) << "\n";
  }
  return kOk;
}

int space_minimalize(const Options& o, const std::string& spec_path, bool check_only) {
  const ForbiddenSpec spec = load_spec(spec_path);
  if (check_only) {
    const MinimalityReport r = is_minimal(spec);
    if (o.as_json) {
      json j{{"minimal", r.minimal}};
      if (!r.minimal) {
        j["witness"] = format_word(r.witness);
        j["parent"] = r.parent;
      }
      emit(j);
    } else if (r.minimal) {
      std::cout << "minimal\n";
    } else {
      std::cout << "not minimal: " << format_word(r.witness) << " in " << r.parent << "\n";
    }
    return r.minimal ? kOk : kFalse;
  }
  std::cout << spec_to_json(minimalize(spec)) << "\n";
  return kOk;
}

int space_classify(const Options& o, const std::string& spec_path) {
  const SpaceHandle h(load_spec(spec_path));
  const Classification c = classify(h);
  json j;
  j["row_finite"] = c.row_finite;
  j["column_finite"] = c.column_finite;
  j["m_step"] = c.m_step ? json(*c.m_step) : json(nullptr);
  j["finite_type"] = c.finite_type;
  if (o.as_json) {
    emit(j);
  } else {
    std::cout << "row_finite: " << yes_no(c.row_finite) << "\n"
              << "column_finite: " << yes_no(c.column_finite) << "\n"
              << "m_step: " << (c.m_step ? std::to_string(*c.m_step) : "none") << "\n"
              << "finite_type: " << yes_no(c.finite_type) << "\n";
  }
  return kOk;
}

int space_equal(const Options& o, const std::string& a, const std::string& b) {
  const EqualVerdict v = equal_spaces(SpaceHandle(load_spec(a)), SpaceHandle(load_spec(b)), o.n_budget, o.cutoff);
  if (o.as_json) {
    json j{{"equal_up_to_budget", v.equal}};
    if (!v.equal) j["witness"] = v.witness;
    emit(j);
  } else if (v.equal) {
    std::cout << "equal up to budget\n";
  } else {
    std::cout << "differ: " << v.witness << "\n";
  }
  return v.equal ? kOk : kFalse;
}

int code_apply(const Options& o, const std::vector<std::string>& rules, const std::vector<std::string>& given) {
  // Rules apply in the order given.
  std::optional<SlidingBlockCode> code;
  for (const auto& r : rules) {
    SlidingBlockCode next = load_rule(r);
    code = code ? sbc_compose(next, *code) : next;
  }
  json rows = json::array();
  for (const auto& t : point_texts(given)) {
    const BiPoint x = parse_point(t);
    const BiPoint y = sbc_apply(*code, x);
    if (o.as_json) {
      rows.push_back({{"point", format_point(x)}, {"image", format_point(y)}});
    } else {
      std::cout << format_point(y) << "\n";
    }
  }
  if (o.as_json) emit(json{{"results", rows}});
  return kOk;
}

int code_check(const Options& o, const std::string& rule) {
  const SlidingBlockCode c = load_rule(rule);
  const ContinuityReport r = check_continuity_sufficient(c);
  if (o.as_json) {
    json j{{"passes", r.passes}};
    if (r.passes) {
      j["right_end"] = r.right_end;
      j["cylinders"] = r.cylinders;
      j["homeomorphism_hypothesis"] = r.homeomorphism_hypothesis;
    } else {
      j["reason"] = r.reason;
    }
    emit(j);
  } else if (r.passes) {
    std::cout << "passes: L = " << r.right_end << "\n";
    for (const auto& s : r.cylinders) std::cout << s << "\n";
    std::cout << "homeomorphism hypothesis: " << yes_no(r.homeomorphism_hypothesis) << "\n";
  } else {
    std::cout << "fails: " << r.reason << "\n";
  }
  return r.passes ? kOk : kFalse;
}

int recode(const Options& o, int m, const std::optional<std::string>& spec_path, const std::vector<std::string>& given,
           bool decode) {
  if (spec_path) {
    std::cout << spec_to_json(hb_spec(m, load_spec(*spec_path))) << "\n";
    return kOk;
  }
  json rows = json::array();
  for (const auto& t : point_texts(given)) {
    const BiPoint x = parse_point(t);
    const std::string out = decode ? format_point(hb_decode(m, x)) : format_point(hb_encode(m, x), m);
    if (o.as_json) {
      rows.push_back({{"point", t}, {"image", out}});
    } else {
      std::cout << out << "\n";
    }
  }
  if (o.as_json) emit(json{{"results", rows}});
  return kOk;
}

int edge_build(const Options& o, const std::string& spec_path, int m, bool dot, bool star) {
  const SpaceHandle h(load_spec(spec_path));
  const EdgeShift es = to_edge_shift(h, m, o.cutoff, star);
  const Graph& g = es.graph;
  if (dot) {
    std::cout << graph_to_dot(g);
    return kOk;
  }
  json vertices = json::array();
  json edges = json::array();
  json emitters = json::array();
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    vertices.push_back(block_label(g.vertices[i]));
    if (g.emitter[i]) emitters.push_back(block_label(g.vertices[i]));
  }
  for (const auto& e : g.edges) edges.push_back(block_label(e));
  if (o.as_json) {
    emit(json{{"M", m}, {"vertices", vertices}, {"edges", edges}, {"infinite_emitters", emitters}});
    return kOk;
  }
  auto line = [](const char* name, const json& items) {
    std::cout << name << ":";
    for (const auto& s : items) std::cout << " " << s.get<std::string>();
    std::cout << "\n";
  };
  line("vertices", vertices);
  line("edges", edges);
  line("infinite emitters", emitters);
  return kOk;
}

int bridge_project(const Options& o, const std::optional<std::string>& spec_path, const std::vector<std::string>& given) {
  if (spec_path) {
    const ProjectedSpace p = project_space(load_spec(*spec_path));
    const char* kind = p.kind == BridgeCase::DenseInClosure ? "dense in closure" : "standard";
    if (o.as_json) {
      emit(json{{"one_sided", json::parse(spec_to_json(p.one))}, {"case", kind}});
    } else {
      std::cout << spec_to_json(p.one) << "\ncase: " << kind << "\n";
    }
    return kOk;
  }
  json rows = json::array();
  for (const auto& t : point_texts(given)) {
    const Projection p = project(parse_point(t));
    if (o.as_json) {
      rows.push_back({{"point", t}, {"image", format_one_point(p.point)}, {"continuous", p.continuous}});
    } else {
      std::cout << format_one_point(p.point) << (p.continuous ? "" : "  (π discontinuous here)") << "\n";
    }
  }
  if (o.as_json) emit(json{{"results", rows}});
  return kOk;
}

int bridge_lift(const Options& o, const std::string& spec_path) {
  const LiftedSpace l = lift_space(load_spec(spec_path));
  const char* relation = l.equal ? "equal" : "empty point adjoined";
  if (o.as_json) {
    emit(json{{"two_sided", json::parse(spec_to_json(l.two))}, {"relation", relation}});
  } else {
    std::cout << spec_to_json(l.two) << "\nrelation: " << relation << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shiftz: shift spaces over countable alphabets"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--json", o.as_json, "emit a JSON report");

  std::string spec, spec_b, point_text;
  std::vector<std::string> points, rules;
  std::optional<std::string> opt_spec, follow, follow_ray;
  std::optional<std::int64_t> by, tail;
  std::vector<std::int64_t> range;
  int n = 1, m = 1, k = 1;
  bool backward = false, check_only = false, dot = false, star = false, decode = false;

  auto* pe = app.add_subcommand("point-eval", "canonical form, length, shift, window, tail");
  pe->add_option("--point", point_text, "point")->required();
  pe->add_option("--shift", by, "shift by n");
  pe->add_option("--window", range, "window i j")->expected(2);
  pe->add_option("--tail", tail, "ray ending at k");

  auto* sc = app.add_subcommand("space-check", "membership of points");
  sc->add_option("spec", spec, "spec file")->required();
  sc->add_option("--point", points, "point (repeatable; default: stdin)");

  auto* sb = app.add_subcommand("space-blocks", "blocks or follower sets at a cutoff");
  sb->add_option("spec", spec, "spec file")->required();
  sb->add_option("-n", n, "block length");
  sb->add_option("--cutoff", o.cutoff, "letters below this bound")->required();
  sb->add_option("--follow", follow, "word whose follower set is listed");
  sb->add_option("--follow-ray", follow_ray, "ray whose follower set is listed");
  sb->add_option("-k", k, "follower length");
  sb->add_flag("--backward", backward, "predecessor set");

  auto* sm = app.add_subcommand("space-minimalize", "minimal forbidden set");
  sm->add_option("spec", spec, "spec file")->required();
  sm->add_flag("--check", check_only, "only decide minimality");

  auto* scl = app.add_subcommand("space-classify", "row/column finiteness, step, finite type");
  scl->add_option("spec", spec, "spec file")->required();

  auto* se = app.add_subcommand("space-equal", "compare two spaces up to a budget");
  se->add_option("a", spec, "first spec")->required();
  se->add_option("b", spec_b, "second spec")->required();
  se->add_option("--n-budget", o.n_budget, "block and ray length budget");
  se->add_option("--cutoff", o.cutoff, "letters below this bound")->required();

  auto* ca = app.add_subcommand("code-apply", "apply sliding block codes");
  ca->add_option("rules", rules, "rule files, applied in order")->required();
  ca->add_option("--point", points, "point (repeatable; default: stdin)");

  auto* cc = app.add_subcommand("code-check", "continuity hypotheses of a code");
  cc->add_option("rule", spec, "rule file")->required();

  auto* rc = app.add_subcommand("recode", "higher block spec or points");
  rc->add_option("spec", opt_spec, "spec file");
  rc->add_option("-M", m, "block length")->required();
  rc->add_option("--point", points, "point (repeatable; default: stdin)");
  rc->add_flag("--decode", decode, "decode block points");

  auto* eb = app.add_subcommand("edge-build", "edge shift of an M-step space");
  eb->add_option("spec", spec, "spec file")->required();
  eb->add_option("-M", m, "step")->required();
  eb->add_option("--cutoff", o.cutoff, "letters below this bound")->required();
  eb->add_flag("--dot", dot, "emit DOT");
  eb->add_flag("--star", star, "add the abstract vertex for letters at or above the cutoff");

  auto* bp = app.add_subcommand("bridge-project", "one-sided projection of a space or points");
  bp->add_option("spec", opt_spec, "spec file");
  bp->add_option("--point", points, "point (repeatable; default: stdin)");

  auto* bl = app.add_subcommand("bridge-lift", "two-sided space of a one-sided spec");
  bl->add_option("spec", spec, "one-sided spec file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (pe->parsed()) return point_eval(o, point_text, by, range, tail);
    if (sc->parsed()) return space_check(o, spec, points);
    if (sb->parsed()) return space_blocks(o, spec, n, follow, follow_ray, k, backward);
    if (sm->parsed()) return space_minimalize(o, spec, check_only);
    if (scl->parsed()) return space_classify(o, spec);
    if (se->parsed()) return space_equal(o, spec, spec_b);
    if (ca->parsed()) return code_apply(o, rules, points);
    if (cc->parsed()) return code_check(o, spec);
    if (rc->parsed()) return recode(o, m, opt_spec, points, decode);
    if (eb->parsed()) return edge_build(o, spec, m, dot, star);
    if (bp->parsed()) return bridge_project(o, opt_spec, points);
    if (bl->parsed()) return bridge_lift(o, spec);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
