#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lpm/checks.hpp"
#include "lpm/dsl.hpp"
#include "lpm/enumerate.hpp"
#include "lpm/magma.hpp"
#include "lpm/protomod.hpp"
#include "lpm/term.hpp"

namespace {

using namespace lpm;

// Key-value report with stable key order; rendered either as `key: value`
// lines or as a single JSON object.
class Report {
public:
  void add(std::string key, std::string value) {
    rows_.emplace_back(std::move(key), std::move(value));
  }
  void print(bool as_json) const {
    if (as_json) {
      nlohmann::ordered_json j;
      for (const auto& [k, v] : rows_) j[k] = v;
      std::cout << j.dump(2) << "\n";
    } else {
      for (const auto& [k, v] : rows_) std::cout << k << ": " << v << "\n";
    }
  }

private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

std::shared_ptr<const Magma> load_source(const std::string& spec,
                                         bool require_mul = true) {
  if (spec.rfind("builtin:", 0) == 0) return builtin(spec.substr(8));
  std::ifstream in(spec);
  if (!in) throw std::runtime_error("cannot open file: " + spec);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_magma(buf.str(), require_mul);
}

std::optional<Window> window_opt(const std::vector<Element>& w) {
  if (w.empty()) return std::nullopt;
  return Window(w[0], w[1]);
}

std::string chain_str(const Magma& m, const WitnessChain& c) {
  std::string s;
  for (size_t i = 0; i < c.elems.size(); ++i) {
    if (i) s += " ";
    s += c.elems[i] == m.unit() ? "e" : std::to_string(c.elems[i]);
  }
  return s;
}

std::string wp_str(const WpVerdict& v) {
  switch (v.kind) {
    case WpVerdict::Kind::Proved:
      return v.exhaustive
                 ? "proved (exhaustive, depth " + std::to_string(v.depth) + ")"
                 : "proved on range " + v.range.str() + " (depth " +
                       std::to_string(v.depth) + ", divisors " +
                       v.divisors.str() + ")";
    case WpVerdict::Kind::Refuted:
      return "refuted (exhaustive) at " + std::to_string(*v.failing);
    case WpVerdict::Kind::Inconclusive:
      return "inconclusive at " + std::to_string(*v.failing) + " (depth " +
             std::to_string(v.depth) + ", divisors " + v.divisors.str() +
             (v.certified ? "; certified (monotonicity)" : "; evidence only") +
             ")";
  }
  return "?";
}

struct CommonSearchFlags {
  int depth = SearchConfig{}.depth;
  std::vector<Element> range, divisors;

  SearchConfig config() const {
    SearchConfig cfg;
    cfg.depth = depth;
    if (auto w = window_opt(range)) cfg.element_range = *w;
    if (auto w = window_opt(divisors)) cfg.divisor_window = *w;
    return cfg;
  }
};

int cmd_check(const std::string& src, const std::vector<Element>& window,
              bool as_json) {
  auto m = load_source(src);
  std::optional<Window> w = window_opt(window);
  if (!w && !m->finite()) w = SearchConfig{}.element_range;
  Report rep;
  rep.add("command", "check");
  rep.add("source", src);
  rep.add("window",
          w ? m->clamp(*w).str() : "full carrier (size " +
                                       std::to_string(m->size()) + ")");
  auto id1 = check_identity1(*m, w);
  auto id2 = check_identity2(*m, w);
  auto id3 = check_identity3(*m, w);
  auto props = check_props(*m, w);
  rep.add("identity-1", id1.str());
  rep.add("identity-2", id2.str());
  rep.add("identity-3", id3.str());
  rep.add("is-lpm", id1.pass && id3.pass ? "yes" : "no");
  rep.add("left-loop", id1.pass && id2.pass && id3.pass ? "yes" : "no");
  rep.add("prop-surjective",
          props.surjective.str() +
              (props.evidence_only ? " [evidence only]" : ""));
  rep.add("prop-injective", props.injective.str());
  rep.add("prop-diagonal", props.diagonal.str());
  rep.print(as_json);
  bool ok = id1.pass && id2.pass && id3.pass && props.all_pass();
  return ok ? 0 : 1;
}

int cmd_classify(const std::string& src, const CommonSearchFlags& flags,
                 const std::string& subalgebra, bool as_json) {
  auto m = load_source(src);
  SearchConfig cfg = flags.config();
  std::optional<Subcarrier> sub;
  if (!subalgebra.empty()) sub = Subcarrier::parse(subalgebra);
  auto r = classify(m, cfg, sub);

  Report rep;
  rep.add("command", "classify");
  rep.add("source", src);
  rep.add("range", m->finite() ? "full carrier"
                               : m->clamp(cfg.element_range).str());
  rep.add("depth", std::to_string(cfg.depth));
  rep.add("divisor-window", m->clamp(cfg.divisor_window).str());
  rep.add("identity-1", r.id1.str());
  rep.add("identity-2", r.id2.str());
  rep.add("identity-3", r.id3.str());
  rep.add("is-lpm", r.lpm ? "yes" : "no");
  rep.add("left-loop", r.left_loop ? "yes" : "no");
  rep.add("x-div-x", r.xdivx.str());
  rep.add("weakly-protomodular", wp_str(r.wp));
  switch (r.proto) {
    case ClassificationReport::Proto::ProvedByXdivX:
      rep.add("protomodular", "proved (x\\x = e on " +
                                  (r.xdivx.exhaustive
                                       ? std::string("full carrier")
                                       : r.xdivx.window.str()) +
                                  ")");
      break;
    case ClassificationReport::Proto::RefutedBySubalgebra:
      rep.add("protomodular",
              "refuted-by-subalgebra (" + r.refutation->grade() + ") via " +
                  r.refutation->subcarrier + ", stuck at " +
                  std::to_string(r.refutation->stuck));
      break;
    case ClassificationReport::Proto::Unknown:
      rep.add("protomodular", "unknown");
      break;
  }
  rep.print(as_json);
  bool negative = !r.wp.positive() ||
                  r.proto == ClassificationReport::Proto::RefutedBySubalgebra;
  return negative ? 1 : 0;
}

int cmd_witness(const std::string& src, Element x,
                const CommonSearchFlags& flags, bool as_json) {
  auto m = load_source(src);
  SearchConfig cfg = flags.config();
  Window dw = m->clamp(cfg.divisor_window);
  auto divisors = divisor_scan(*m, cfg.divisor_window);
  auto chain = witness_search(*m, x, cfg.depth, divisors, cfg.value_bound);
  Report rep;
  rep.add("command", "witness");
  rep.add("source", src);
  rep.add("element", std::to_string(x));
  rep.add("depth", std::to_string(cfg.depth));
  rep.add("divisor-window", dw.str());
  if (chain) {
    rep.add("witness", chain_str(*m, *chain));
    rep.add("length", std::to_string(chain->elems.size()));
  } else {
    rep.add("witness", "none within bounds");
  }
  rep.print(as_json);
  return chain ? 0 : 1;
}

int cmd_enumerate(Element order, bool up_to_iso, bool count_only,
                  bool left_loops_only, bool force) {
  EnumConfig cfg;
  cfg.order = order;
  cfg.up_to_iso = up_to_iso;
  cfg.count_only = count_only;
  cfg.require_identity2 = left_loops_only;
  cfg.override_limit = force;
  if (count_only) {
    long long c = 0;
    enumerate_lpms(cfg, [&c](const FiniteMagma&) { ++c; });
    std::cout << "count: " << c << "\n";
    return 0;
  }
  long long i = 0;
  enumerate_lpms(cfg, [&i, order](const FiniteMagma& m) {
    FiniteMagma named("lpm" + std::to_string(order) + "-" +
                          std::to_string(++i),
                      m.size(), m.unit(), m.mul_table(), m.ldiv_table());
    if (i > 1) std::cout << "\n";
    std::cout << print_magma(named);
  });
  return 0;
}

Assignment parse_assignment(const std::string& spec) {
  Assignment a;
  size_t pos = 0;
  while (pos < spec.size()) {
    size_t comma = spec.find(',', pos);
    std::string item = spec.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("bad assignment item: " + item);
    a[item.substr(0, eq)] = std::stoll(item.substr(eq + 1));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return a;
}

int cmd_eval(const std::string& src, const std::string& term_text,
             const std::string& assign, bool as_json) {
  auto m = load_source(src);
  auto t = parse_term(term_text);
  Assignment a = assign.empty() ? Assignment{} : parse_assignment(assign);
  Report rep;
  rep.add("command", "eval");
  rep.add("source", src);
  rep.add("term", print_term(*t));
  rep.add("assignment", assign.empty() ? "(none)" : assign);
  rep.add("value", std::to_string(evaluate(*t, *m, a)));
  rep.add("normalized", print_term(*normalize(t, *m)));
  rep.print(as_json);
  return 0;
}

int cmd_kernel(const std::string& src, Element point,
               const std::string& term_text, bool as_json) {
  auto m = load_source(src);
  auto t = parse_term(term_text);
  bool member = kernel_member(*m, point, *t);
  Report rep;
  rep.add("command", "kernel");
  rep.add("source", src);
  rep.add("point", std::to_string(point));
  rep.add("term", print_term(*t));
  rep.add("kernel-member", member ? "yes" : "no");
  rep.print(as_json);
  return member ? 0 : 1;
}

int cmd_construct_mul(const std::string& src,
                      const std::vector<Element>& window, bool as_json) {
  auto div = load_source(src, /*require_mul=*/false);
  std::optional<Window> w = window_opt(window);
  if (!w && !div->finite()) w = SearchConfig{}.element_range;
  auto res = construct_mul_from_div(div, w);
  Report rep;
  rep.add("command", "construct-mul");
  rep.add("source", src);
  rep.add("window", w ? div->clamp(*w).str()
                      : "full carrier (size " + std::to_string(div->size()) +
                            ")");
  rep.add("precondition-injective", res.precondition.injective.str());
  rep.add("precondition-diagonal", res.precondition.diagonal.str());
  if (!res.magma) {
    rep.add("result", "precondition violated");
    rep.print(as_json);
    return 1;
  }
  auto check = is_lpm(*res.magma, w);
  rep.add("constructed-is-lpm", check.ok ? "yes" : "no");
  rep.print(as_json);
  auto dom = domain_of(*res.magma, w);
  if (div->finite()) {
    // A full table over the carrier; emit it verbatim.
    std::vector<std::vector<Element>> mul, ldiv;
    for (Element a : dom) {
      std::vector<Element> mrow, drow;
      for (Element b : dom) {
        mrow.push_back(res.magma->mul(a, b));
        drow.push_back(res.magma->ldiv(a, b));
      }
      mul.push_back(std::move(mrow));
      ldiv.push_back(std::move(drow));
    }
    std::cout << print_magma(FiniteMagma("constructed", div->size(),
                                         div->unit(), std::move(mul),
                                         std::move(ldiv)));
  } else {
    std::cout << "mul-table rows x = " << dom.front() << ".." << dom.back()
              << ", columns likewise\n";
    for (Element a : dom) {
      for (size_t j = 0; j < dom.size(); ++j)
        std::cout << (j ? " " : "") << res.magma->mul(a, dom[j]);
      std::cout << "\n";
    }
  }
  return check.ok ? 0 : 1;
}

int cmd_examples() {
  std::cout << "command: examples\n";
  for (const auto& name : builtin_names())
    std::cout << name << ": " << builtin_blurb(name) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"left pseudocancellative unital magma toolkit"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "emit reports as JSON");

  std::string src, subalgebra, term_text, assign;
  std::vector<Element> window;
  CommonSearchFlags flags;
  Element element = 0, order = 1;
  bool up_to_iso = false, count_only = false, left_loops_only = false,
       force = false;

  auto add_search_flags = [&flags](CLI::App* c) {
    c->add_option("--depth", flags.depth, "maximum witness length");
    c->add_option("--range", flags.range, "element range LO HI")
        ->expected(2);
    c->add_option("--divisor-window", flags.divisors, "divisor window LO HI")
        ->expected(2);
  };

  auto* check = app.add_subcommand("check", "identity and property checks");
  check->add_option("src", src, "path or builtin:NAME")->required();
  check->add_option("--window", window, "window LO HI")->expected(2);

  auto* classify = app.add_subcommand("classify", "full classification");
  classify->add_option("src", src)->required();
  add_search_flags(classify);
  classify->add_option("--subalgebra", subalgebra,
                       "subcarrier predicate for the refutation step");

  auto* witness = app.add_subcommand("witness", "search a witness chain");
  witness->add_option("src", src)->required();
  witness->add_option("--element", element, "the element x")->required();
  add_search_flags(witness);

  auto* enumerate = app.add_subcommand("enumerate", "all finite structures");
  enumerate->add_option("--order", order, "carrier size")->required();
  enumerate->add_flag("--up-to-iso", up_to_iso);
  enumerate->add_flag("--count-only", count_only);
  enumerate->add_flag("--left-loops-only", left_loops_only);
  enumerate->add_flag("--force", force, "lift the order soft limit");

  auto* eval = app.add_subcommand("eval", "evaluate and normalize a term");
  eval->add_option("src", src)->required();
  eval->add_option("--term", term_text)->required();
  eval->add_option("--assign", assign, "generator bindings k=v,...");

  auto* kernel = app.add_subcommand("kernel", "kernel membership at a point");
  kernel->add_option("src", src)->required();
  kernel->add_option("--point", element)->required();
  kernel->add_option("--term", term_text)->required();

  auto* construct =
      app.add_subcommand("construct-mul", "build mul from a division structure");
  construct->add_option("src", src)->required();
  construct->add_option("--window", window, "window LO HI")->expected(2);

  auto* examples = app.add_subcommand("examples", "list builtin structures");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) return cmd_check(src, window, as_json);
    if (classify->parsed())
      return cmd_classify(src, flags, subalgebra, as_json);
    if (witness->parsed()) return cmd_witness(src, element, flags, as_json);
    if (enumerate->parsed())
      return cmd_enumerate(order, up_to_iso, count_only, left_loops_only,
                           force);
    if (eval->parsed()) return cmd_eval(src, term_text, assign, as_json);
    if (kernel->parsed()) return cmd_kernel(src, element, term_text, as_json);
    if (construct->parsed()) return cmd_construct_mul(src, window, as_json);
    if (examples->parsed()) return cmd_examples();
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
