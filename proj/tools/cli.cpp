#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "hyperis/closed_forms.hpp"
#include "hyperis/cluster.hpp"
#include "hyperis/errors.hpp"
#include "hyperis/exact_counting.hpp"
#include "hyperis/hypergraph.hpp"
#include "hyperis/instance_lab.hpp"
#include "hyperis/io.hpp"
#include "hyperis/polymer.hpp"

namespace hyperis::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string log_str(long double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12Lg", x);
  return buf;
}

std::string vertex_list(const Hypergraph& g, const VertexSet& s) {
  std::string out;
  for (Vertex v : s) {
    if (!out.empty()) out += ' ';
    out += to_string(g.vertex_id(v));
  }
  return out;
}

// exp(log_est - log_exact) - 1, kept in log space until the end.
std::string relative_error(long double log_est, long double log_exact) {
  return log_str(std::expm1(log_est - log_exact));
}

VertexId parse_vertex(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw InputError("vertex '" + s + "' is not <class>:<index>");
  try {
    return {static_cast<std::uint32_t>(std::stoul(s.substr(0, colon))),
            static_cast<std::uint32_t>(std::stoul(s.substr(colon + 1)))};
  } catch (const std::logic_error&) {
    throw InputError("vertex '" + s + "' is not <class>:<index>");
  }
}

void flatten(const std::string& prefix, const Json& value, std::ostringstream& out) {
  if (value.is_object()) {
    for (const auto& [key, child] : value.items()) flatten(prefix.empty() ? key : prefix + "." + key, child, out);
  } else if (value.is_array()) {
    for (std::size_t i = 0; i < value.size(); ++i) flatten(prefix + "." + std::to_string(i), value[i], out);
  } else if (value.is_string()) {
    out << prefix << '=' << value.get<std::string>() << '\n';
  } else {
    out << prefix << '=' << value.dump() << '\n';
  }
}

class Stopwatch {
 public:
  explicit Stopwatch(RunReport& report) : report_(report) {}
  template <class F>
  auto time(const std::string& name, F&& f) {
    const auto start = std::chrono::steady_clock::now();
    auto result = f();
    const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
    report_.timings_ms.emplace_back(name, elapsed.count());
    return result;
  }

 private:
  RunReport& report_;
};

struct Options {
  std::string input = "-";
  bool json = false;
  bool timings = false;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::uint32_t cls = 0;
  std::uint32_t b = 1;
  std::uint32_t t = 1;
  std::optional<std::string> root;
  std::uint32_t cap = default_enumeration_cap();
  std::size_t polymer_cap = default_polymer_cap();
  bool list = false;
  std::optional<std::uint32_t> k, n, r;
  std::string property;
  double alpha = 0.5;
  double beta = 0.5;
  std::uint32_t size_cap = kDefaultExpansionSizeCap;
  std::uint32_t samples = kDefaultExpansionSamples;
  std::uint64_t seed = 1;
  std::optional<std::uint32_t> min_girth;
  std::uint32_t restarts = kDefaultRestarts;
  std::string format = "text";
  std::string output;
};

void require_class(const Hypergraph& g, std::uint32_t cls) {
  if (cls >= g.k()) throw InputError("class " + std::to_string(cls) + " out of range for k=" + std::to_string(g.k()));
}

Json polymer_json(const Hypergraph& g, const Polymer& p) {
  Json j;
  j["vertices"] = vertex_list(g, p.vertices);
  j["order"] = p.order();
  j["neighborhood"] = p.neighborhood.size();
  j["weight"] = to_string(polymer_weight(g, p));
  j["matching"] = max_matching_size(link_graph(g, p.vertices));
  return j;
}

std::string cluster_string(const Hypergraph& g, const Cluster& c) {
  std::string out;
  for (const auto& e : c.entries) {
    if (!out.empty()) out += ' ';
    out += "{" + vertex_list(g, e.polymer.vertices) + "}";
    if (e.multiplicity > 1) out += "x" + std::to_string(e.multiplicity);
  }
  return out;
}

// Closed-form parameters come from flags, or from a regular input graph.
struct Params {
  std::uint32_t k, n, r;
};

Params closed_form_params(const Options& o, RunReport& report) {
  if (o.k && o.n && o.r) return {*o.k, *o.n, *o.r};
  if (o.k || o.n || o.r) throw InputError("give all of --k --n --r, or none and an input graph");
  const Hypergraph g = load_hypergraph(o.input);
  report.input_digest = input_digest(g);
  const auto r = regular_degree(g);
  if (!r || !g.equal_class_sizes()) throw InputError("closed forms need a regular graph with equal class sizes");
  return {g.k(), g.class_size(0), *r};
}

Json report_json(const PropertyReport& p, const Hypergraph& g) {
  Json j;
  j["property"] = p.property;
  j["verdict"] = to_string(p.verdict);
  if (!p.witness.empty()) j["witness"] = vertex_list(g, p.witness);
  if (p.worst_ratio) j["worst_ratio"] = log_str(*p.worst_ratio);
  if (!p.detail.empty()) j["detail"] = p.detail;
  return j;
}

RunReport dispatch(const std::string& command, const Options& o) {
  RunReport report;
  report.command = command;
  Stopwatch watch(report);
  auto& res = report.results;
  auto& par = report.parameters;

  if (command == "closed-form") {
    const Params p = closed_form_params(o, report);
    par["k"] = p.k;
    par["n"] = p.n;
    par["r"] = p.r;
    par["t"] = o.t;
    if (o.t == 1) {
      const auto est = closed_form_t1(p.k, p.n, p.r);
      res["exponent"] = to_string(est.exponent);
      res["log_value"] = log_str(est.log_value);
    } else if (o.t == 2) {
      const auto est = closed_form_t2(p.k, p.n, p.r);
      res["printed.exponent"] = to_string(est.printed.exponent);
      res["printed.log_value"] = log_str(est.printed.log_value);
      res["corrected.exponent"] = to_string(est.corrected.exponent);
      res["corrected.log_value"] = log_str(est.corrected.log_value);
      res["delta"] = to_string(est.delta);
      res["terms.size_one"] = to_string(est.size_one);
      res["terms.pairs_printed"] = to_string(est.pairs_printed);
      res["terms.pairs_corrected"] = to_string(est.pairs_corrected);
      res["terms.two_vertex_polymers"] = to_string(est.two_vertex_polymers);
    } else {
      throw InputError("closed forms exist for t = 1 and t = 2 only");
    }
    const auto alpha = alpha_kt(p.k, o.t);
    res["alpha_kt"] = alpha.value.to_string(12);
    return report;
  }

  if (command == "generate") {
    if (!o.k || !o.n || !o.r) throw InputError("generate needs --k, --n and --r");
    par["k"] = *o.k;
    par["n"] = *o.n;
    par["r"] = *o.r;
    par["seed"] = o.seed;
    if (o.min_girth) par["min_girth"] = *o.min_girth;
    const Hypergraph g =
        watch.time("generate", [&] { return gen_linear_regular(*o.k, *o.n, *o.r, o.seed, o.min_girth, o.restarts); });
    report.input_digest = input_digest(g);
    const std::string body = o.format == "json" ? serialize_json(g) + "\n" : serialize_text(g);
    if (o.output.empty()) {
      res["graph"] = body;
    } else {
      std::ofstream out(o.output, std::ios::binary);
      if (!out) throw InputError("cannot write '" + o.output + "'");
      out << body;
      res["output"] = o.output;
    }
    res["edges"] = g.num_edges();
    return report;
  }

  const Hypergraph g = load_hypergraph(o.input);
  report.input_digest = input_digest(g);

  if (command == "exact-count") {
    const BigCount count = watch.time("count", [&] { return count_independent_sets(g); });
    res["vertices"] = g.num_vertices();
    res["edges"] = g.num_edges();
    res["count"] = to_string(count);
    res["log_count"] = log_str(log_of_count(count));
  } else if (command == "defect-count") {
    require_class(g, o.cls);
    par["class"] = o.cls;
    par["b"] = o.b;
    const auto d = watch.time("count", [&] { return count_with_defect_class(g, o.cls, o.b, o.cap); });
    res["count"] = to_string(d.count);
  } else if (command == "polymers") {
    require_class(g, o.cls);
    par["class"] = o.cls;
    par["b"] = o.b;
    std::optional<Vertex> root;
    if (o.root) {
      root = g.global(parse_vertex(*o.root));
      par["root"] = *o.root;
    }
    const auto polymers = watch.time("enumerate", [&] { return enumerate_polymers(g, o.cls, o.b, root); });
    std::map<std::size_t, std::size_t> by_order;
    Json list = Json::array();
    for (const auto& p : polymers) {
      ++by_order[p.order()];
      list.push_back(polymer_json(g, p));
    }
    res["count"] = polymers.size();
    for (const auto& [order, count] : by_order) res["by_order"][std::to_string(order)] = count;
    res["polymers"] = std::move(list);
  } else if (command == "xi") {
    require_class(g, o.cls);
    par["class"] = o.cls;
    par["b"] = o.b;
    const ExactRational xi = watch.time("xi", [&] { return partition_function(g, o.cls, o.b, o.polymer_cap); });
    res["xi"] = to_string(xi);
    ExactRational scaled = xi * ExactRational(pow2(g.num_vertices() - g.class_size(o.cls)));
    scaled.canonicalize();
    res["scaled"] = to_string(scaled);
  } else if (command == "kp-check") {
    require_class(g, o.cls);
    par["class"] = o.cls;
    par["b"] = o.b;
    const Vertex root = o.root ? g.global(parse_vertex(*o.root)) : g.class_offset(o.cls);
    par["root"] = to_string(g.vertex_id(root));
    const auto kp = watch.time("kp_sum", [&] { return kp_sum(g, o.cls, root, o.b, o.polymer_cap); });
    res["lhs_upper"] = kp.lhs.to_string(12);
    res["rhs"] = to_string(kp.rhs);
    res["holds"] = kp.holds ? "true" : "false";
    res["polymers"] = kp.terms.size();
    const auto cond = watch.time("kp_condition", [&] { return kp_condition(g, o.cls, o.b, o.polymer_cap); });
    res["condition.holds"] = cond.holds ? "true" : "false";
    res["condition.polymers"] = cond.polymers;
    if (cond.worst) {
      res["condition.worst"] = vertex_list(g, cond.worst->vertices);
      res["condition.worst_lhs"] = cond.worst_lhs.to_string(12);
      res["condition.worst_f"] = cond.worst_f.to_string(12);
    }
  } else if (command == "clusters") {
    require_class(g, o.cls);
    par["class"] = o.cls;
    par["t"] = o.t;
    const auto clusters = watch.time("enumerate", [&] { return enumerate_clusters(g, o.cls, o.t, o.threads); });
    BigCount ordered = 0;
    std::map<std::uint32_t, std::size_t> by_size;
    Json list = Json::array();
    ExactRational total = 0;
    for (const auto& c : clusters) {
      ordered += c.ordering_count();
      ++by_size[c.size()];
      const ExactRational w = cluster_weight(c);
      total += ExactRational(c.ordering_count()) * w;
      if (o.list) {
        Json j;
        j["polymers"] = cluster_string(g, c);
        j["length"] = c.length();
        j["size"] = c.size();
        j["ordering_count"] = to_string(c.ordering_count());
        j["weight"] = to_string(w);
        list.push_back(std::move(j));
      }
    }
    total.canonicalize();
    res["count"] = clusters.size();
    res["ordered_count"] = to_string(ordered);
    for (const auto& [size, count] : by_size) res["by_size"][std::to_string(size)] = count;
    res["log_xi_trunc"] = to_string(total);
    if (o.list) res["clusters"] = std::move(list);
  } else if (command == "log-xi-trunc") {
    require_class(g, o.cls);
    par["class"] = o.cls;
    par["t"] = o.t;
    const ExactRational v = watch.time("sum", [&] { return truncated_log_xi(g, o.cls, o.t, o.threads); });
    res["value"] = to_string(v);
    res["value_float"] = log_str(v.get_d());
  } else if (command == "estimate") {
    par["t"] = o.t;
    const auto est = watch.time("estimate", [&] { return estimate_count(g, o.t, o.threads); });
    res["log_value"] = log_str(est.value.log_value);
    for (std::size_t z = 0; z < est.exponents.size(); ++z) {
      res["exponent"][std::to_string(z)] = to_string(est.exponents[z]);
    }
  } else if (command == "check") {
    par["property"] = o.property;
    PropertyReport p;
    if (o.property == "reg") {
      par["t"] = o.t;
      p = check_reg(g, o.t);
    } else if (o.property == "exp1") {
      par["alpha"] = log_str(o.alpha);
      p = check_exp1(g, o.alpha, o.size_cap, o.samples, o.seed);
    } else if (o.property == "exp2") {
      par["beta"] = log_str(o.beta);
      p = check_exp2(g, o.beta, o.size_cap, o.samples, o.seed);
    } else if (o.property == "def") {
      par["b"] = o.b;
      p = check_def(g, o.b, o.cap, o.seed);
    } else if (o.property == "linear") {
      p = check_linear(g);
    } else if (o.property == "girth") {
      const std::uint32_t girth = o.min_girth.value_or(5);
      par["min_girth"] = girth;
      p = check_girth(g, girth);
    } else if (o.property == "common-neighbor") {
      p = check_common_neighbor(g);
    } else {
      throw InputError("unknown property '" + o.property + "'");
    }
    res = report_json(p, g);
  } else if (command == "compare") {
    par["t"] = o.t;
    const BigCount exact = watch.time("exact", [&] { return count_independent_sets(g); });
    const long double log_exact = log_of_count(exact);
    res["exact"] = to_string(exact);
    res["log_exact"] = log_str(log_exact);
    const auto est = watch.time("estimate", [&] { return estimate_count(g, o.t, o.threads); });
    res["estimate.log_value"] = log_str(est.value.log_value);
    res["estimate.value"] = log_str(std::exp(est.value.log_value));
    res["estimate.relative_error"] = relative_error(est.value.log_value, log_exact);
    const std::uint32_t r = *regular_degree(g);
    const std::uint32_t n = g.class_size(0);
    if (is_linear(g)) {
      const auto t1 = closed_form_t1(g.k(), n, r);
      res["closed_form_t1.log_value"] = log_str(t1.log_value);
      res["closed_form_t1.relative_error"] = relative_error(t1.log_value, log_exact);
      if (o.t >= 2 && !girth_at_most(g, 4).found()) {
        const auto t2 = closed_form_t2(g.k(), n, r);
        res["closed_form_t2.printed.log_value"] = log_str(t2.printed.log_value);
        res["closed_form_t2.printed.relative_error"] = relative_error(t2.printed.log_value, log_exact);
        res["closed_form_t2.corrected.log_value"] = log_str(t2.corrected.log_value);
        res["closed_form_t2.corrected.relative_error"] = relative_error(t2.corrected.log_value, log_exact);
      }
    }
  } else {
    throw InputError("unknown command '" + command + "'");
  }
  return report;
}

}  // namespace

std::string render(const RunReport& report, bool json, bool timings) {
  if (report.command == "generate" && report.results.contains("graph") && !json) {
    return report.results["graph"].get<std::string>();
  }
  if (json) {
    Json j;
    j["command"] = report.command;
    if (!report.input_digest.empty()) j["input_digest"] = report.input_digest;
    j["parameters"] = report.parameters;
    j["results"] = report.results;
    if (timings) {
      for (const auto& [name, ms] : report.timings_ms) j["timings_ms"][name] = ms;
    }
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "command=" << report.command << '\n';
  if (!report.input_digest.empty()) out << "input_digest=" << report.input_digest << '\n';
  flatten("param", report.parameters, out);
  flatten("", report.results, out);
  if (timings) {
    for (const auto& [name, ms] : report.timings_ms) out << "time." << name << "_ms=" << ms << '\n';
  }
  return out.str();
}

Outcome run(const std::vector<std::string>& args) {
  Options o;
  CLI::App app{"Exact and cluster-expansion counts of independent sets in k-partite k-graphs", "hyperis"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("-i,--input", o.input, "hypergraph file (text or JSON), - for stdin")->capture_default_str();
  app.add_flag("--json", o.json, "structured output");
  app.add_flag("--timings", o.timings, "append wall-clock timings");
  app.add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);

  auto cls_opt = [&](CLI::App* sub) { sub->add_option("--class", o.cls, "partition class")->capture_default_str(); };
  auto b_opt = [&](CLI::App* sub) { sub->add_option("--b", o.b, "polymer order bound")->capture_default_str(); };
  auto t_opt = [&](CLI::App* sub) { sub->add_option("--t", o.t, "truncation")->capture_default_str(); };
  auto kp_caps = [&](CLI::App* sub) {
    sub->add_option("--polymer-cap", o.polymer_cap, "refuse models with more polymers")->capture_default_str();
  };

  app.add_subcommand("exact-count", "exact number of independent sets");
  auto* defect = app.add_subcommand("defect-count", "independent sets whose class trace has small 2-linked parts");
  cls_opt(defect);
  b_opt(defect);
  defect->add_option("--cap", o.cap, "vertex budget for enumeration")->capture_default_str();
  auto* polymers = app.add_subcommand("polymers", "list polymers of one class");
  cls_opt(polymers);
  b_opt(polymers);
  polymers->add_option("--root", o.root, "only polymers containing this vertex (c:i)");
  auto* xi = app.add_subcommand("xi", "exact polymer partition function");
  cls_opt(xi);
  b_opt(xi);
  kp_caps(xi);
  auto* kp = app.add_subcommand("kp-check", "Kotecky-Preiss sum and condition");
  cls_opt(kp);
  b_opt(kp);
  kp_caps(kp);
  kp->add_option("--root", o.root, "vertex u (c:i), default first of the class");
  auto* clusters = app.add_subcommand("clusters", "clusters up to total order t");
  cls_opt(clusters);
  t_opt(clusters);
  clusters->add_flag("--list", o.list, "list every cluster");
  auto* trunc = app.add_subcommand("log-xi-trunc", "truncated cluster expansion of log Xi");
  cls_opt(trunc);
  t_opt(trunc);
  auto* estimate = app.add_subcommand("estimate", "truncated cluster-expansion estimate of the count");
  t_opt(estimate);
  auto* closed = app.add_subcommand("closed-form", "closed-form estimates for t = 1, 2");
  t_opt(closed);
  closed->add_option("--k", o.k);
  closed->add_option("--n", o.n);
  closed->add_option("--r", o.r);
  auto* check = app.add_subcommand("check", "property checks");
  check->add_option("property", o.property, "reg|exp1|exp2|def|linear|girth|common-neighbor")
      ->required()
      ->check(CLI::IsMember({"reg", "exp1", "exp2", "def", "linear", "girth", "common-neighbor"}));
  t_opt(check);
  check->add_option("--alpha", o.alpha)->capture_default_str();
  check->add_option("--beta", o.beta)->capture_default_str();
  check->add_option("--size-cap", o.size_cap)->capture_default_str();
  check->add_option("--samples", o.samples)->capture_default_str();
  check->add_option("--seed", o.seed)->capture_default_str();
  check->add_option("--b", o.b)->capture_default_str();
  check->add_option("--budget", o.cap, "vertex budget for def")->capture_default_str();
  check->add_option("--min-girth", o.min_girth, "for girth (default 5)");
  auto* gen = app.add_subcommand("generate", "random linear regular k-partite k-graph");
  gen->add_option("--k", o.k)->required();
  gen->add_option("--n", o.n)->required();
  gen->add_option("--r", o.r)->required();
  gen->add_option("--seed", o.seed)->capture_default_str();
  gen->add_option("--min-girth", o.min_girth);
  gen->add_option("--restarts", o.restarts)->capture_default_str();
  gen->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  gen->add_option("-o,--output", o.output, "write the graph here and print a report");
  auto* compare = app.add_subcommand("compare", "exact count against estimate and closed forms");
  t_opt(compare);

  Outcome outcome;
  std::ostringstream out, err;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    outcome.exit_code = code == 0 ? kOk : kInputError;
    outcome.out = out.str();
    outcome.err = err.str();
    return outcome;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const RunReport report = dispatch(command, o);
    outcome.out = render(report, o.json, o.timings);
  } catch (const InputError& e) {
    outcome.exit_code = kInputError;
    outcome.err = std::string("input error: ") + e.what() + "\n";
  } catch (const BudgetExceeded& e) {
    outcome.exit_code = kBudgetRefused;
    outcome.err = std::string("refused: ") + e.what() + "\n";
  } catch (const GenerationFailure& e) {
    outcome.exit_code = kGenerationFailed;
    outcome.err = std::string("generation failed: ") + e.what() + "\n";
  }
  return outcome;
}

}  // namespace hyperis::cli
