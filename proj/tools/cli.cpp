#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "selftest.hpp"
#include "yamada/chain.hpp"
#include "yamada/diagram.hpp"
#include "yamada/error.hpp"
#include "yamada/io.hpp"
#include "yamada/multigraph.hpp"
#include "yamada/replace.hpp"
#include "yamada/roots.hpp"

namespace yamada::cli {

namespace {

struct Common {
  std::string in;
  std::string json;
  std::string out;
  std::string format = "text";
};

void add_io(CLI::App* cmd, Common& c, bool needs_input) {
  auto* in = cmd->add_option("--in", c.in, "input JSON file");
  auto* js = cmd->add_option("--json", c.json, "inline input JSON");
  in->excludes(js);
  if (!needs_input) {
    in->group("");
    js->group("");
  }
  cmd->add_option("--out", c.out, "write output to this file instead of stdout");
  cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json", "csv", "svg"}));
}

std::string read_input(const Common& c) {
  if (!c.json.empty()) return c.json;
  if (c.in.empty()) throw CLI::RequiredError("--in or --json");
  std::ifstream f(c.in);
  if (!f) throw Error(ErrorKind::kParse, "cannot read " + c.in);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<int> parse_range(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto colon = part.find(':');
    try {
      if (colon == std::string::npos) {
        out.push_back(std::stoi(part));
      } else {
        const int a = std::stoi(part.substr(0, colon));
        const int b = std::stoi(part.substr(colon + 1));
        for (int v = a; v <= b; ++v) out.push_back(v);
      }
    } catch (const std::exception&) {
      throw CLI::ValidationError("range", "cannot parse '" + text + "'");
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string poly_output(const LaurentPoly& p, const std::string& format) {
  if (format == "json") return poly_to_json(p);
  return p.to_string() + "\n";
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Yamada polynomials of graphs and spatial-graph diagrams"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Common common;
  std::function<std::string()> action;

  // graph-h / graph-h-oracle / flow
  std::size_t edge_guard = kDefaultEdgeGuard;
  std::size_t oracle_guard = kDefaultOracleGuard;
  bool reduced = false;
  auto* graph_h = app.add_subcommand("graph-h", "Yamada polynomial H(G) of an abstract graph");
  add_io(graph_h, common, true);
  graph_h->add_option("--guard", edge_guard, "edge guard of the recursion")->capture_default_str();
  graph_h->add_flag("--reduced", reduced, "use the reduction engine (guard 96)");
  graph_h->callback([&] {
    action = [&] {
      const Multigraph g = parse_graph(read_input(common));
      return poly_output(reduced ? yamada_H_reduced(g, std::max(edge_guard, kDefaultReducedGuard)) : yamada_H(g, edge_guard),
                         common.format);
    };
  });

  auto* graph_oracle = app.add_subcommand("graph-h-oracle", "H(G) by the subset expansion");
  add_io(graph_oracle, common, true);
  graph_oracle->add_option("--guard", oracle_guard, "edge guard")->capture_default_str();
  graph_oracle->callback([&] {
    action = [&] { return poly_output(h_subset_oracle(parse_graph(read_input(common)), oracle_guard), common.format); };
  });

  auto* flow = app.add_subcommand("flow", "flow polynomial F(G; t)");
  add_io(flow, common, true);
  flow->add_option("--guard", edge_guard, "edge guard")->capture_default_str();
  flow->callback([&] {
    action = [&] {
      const LaurentPoly f = flow_poly(parse_graph(read_input(common)), edge_guard);
      if (common.format == "json") return poly_to_json(f);
      return f.to_string('t') + "\n";
    };
  });

  // chain
  bool chain_oracle = false;
  std::size_t chain_guard = kDefaultEdgeGuard;
  auto* chain = app.add_subcommand("chain", "chain polynomial of a labelled graph");
  add_io(chain, common, true);
  chain->add_flag("--oracle", chain_oracle, "use the flow-polynomial expansion");
  chain->add_option("--guard", chain_guard, "edge guard")->capture_default_str();
  chain->callback([&] {
    action = [&] {
      const LabelledGraph lg = parse_labelled_graph(read_input(common));
      const MultiPoly ch = chain_oracle ? chain_flow_oracle(lg, std::min<std::size_t>(chain_guard, 12)) : chain_poly(lg, chain_guard);
      return common.format == "json" ? multipoly_to_json(ch) : ch.to_string() + "\n";
    };
  });

  // diagrams
  StateSumOptions state_options;
  bool report = false;
  auto add_state_flags = [&](CLI::App* cmd) {
    cmd->add_option("--crossing-guard", state_options.crossing_guard, "largest crossing count")->capture_default_str();
    cmd->add_option("--edge-guard", state_options.edge_guard, "largest state graph")->capture_default_str();
  };
  auto* diagram_r = app.add_subcommand("diagram-r", "state sum R[g] of a diagram");
  add_io(diagram_r, common, true);
  add_state_flags(diagram_r);
  diagram_r->add_flag("--report", report, "also print the planarity diagnostic");
  diagram_r->callback([&] {
    action = [&] {
      const DiagramCode code = parse_diagram(read_input(common));
      std::string text = poly_output(yamada_R(code, state_options), common.format);
      if (report) {
        const ValidationReport rep = validate(code);
        text += "components " + std::to_string(rep.components) + ", faces " + std::to_string(rep.faces) + ", genus " +
                std::to_string(rep.genus) + "\n";
        for (const auto& w : rep.warnings) text += "warning: " + w + "\n";
      }
      return text;
    };
  });

  auto* mirror_cmd = app.add_subcommand("mirror", "mirror image of a diagram");
  add_io(mirror_cmd, common, true);
  mirror_cmd->callback([&] { action = [&] { return diagram_to_json(mirror(parse_diagram(read_input(common)))); }; });

  auto* close_cmd = app.add_subcommand("close", "identify the two attachment vertices of a piece");
  add_io(close_cmd, common, true);
  close_cmd->callback([&] { action = [&] { return diagram_to_json(close_piece(parse_diagram(read_input(common)))); }; });

  auto* compose = app.add_subcommand("compose", "R of a cycle, theta or bouquet of pieces");
  add_io(compose, common, true);
  add_state_flags(compose);
  compose->callback([&] {
    action = [&] {
      const CompositionRequest req = parse_composition(read_input(common), state_options);
      return poly_output(r_compose(req.shape, req.arity, req.pieces), common.format);
    };
  });

  // family
  int n = 1;
  int s = 1;
  int k = 1;
  std::string sign = "+";
  int degree_cap = kDefaultDegreeCap;
  auto* family = app.add_subcommand("family", "R of C_n(Theta_s(infinity^k))");
  add_io(family, common, false);
  family->add_option("--n", n, "cycle length")->required()->check(CLI::PositiveNumber);
  family->add_option("--s", s, "theta width")->required()->check(CLI::PositiveNumber);
  family->add_option("--k", k, "crossings per piece")->required()->check(CLI::NonNegativeNumber);
  family->add_option("--sign", sign, "+ or -")->check(CLI::IsMember({"+", "-"}))->capture_default_str();
  family->add_option("--degree-cap", degree_cap, "largest degree")->capture_default_str();
  family->callback([&] {
    action = [&] { return poly_output(family_polynomial(n, s, k, parse_twist(sign), degree_cap), common.format); };
  });

  // roots-scan
  std::string n_range = "2:6";
  std::string s_range = "1:2";
  std::string k_range = "1:2";
  std::string sign_set = "+";
  RootOptions root_options;
  int jobs = 1;
  auto* scan = app.add_subcommand("roots-scan", "roots of every family member in a grid");
  add_io(scan, common, false);
  scan->add_option("--n", n_range, "n values, e.g. 2:6 or 2,4,8")->capture_default_str();
  scan->add_option("--s", s_range, "s values")->capture_default_str();
  scan->add_option("--k", k_range, "k values")->capture_default_str();
  scan->add_option("--sign", sign_set, "+, - or both")->check(CLI::IsMember({"+", "-", "both"}))->capture_default_str();
  scan->add_option("--tol", root_options.tol, "residual tolerance")->capture_default_str();
  scan->add_option("--max-iterations", root_options.max_iterations, "Aberth sweeps")->capture_default_str();
  scan->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  scan->add_option("--degree-cap", degree_cap, "largest degree")->capture_default_str();
  scan->callback([&] {
    action = [&] {
      FamilyGrid grid{parse_range(n_range), parse_range(s_range), parse_range(k_range), {}};
      if (sign_set != "-") grid.signs.push_back(Twist::kPlus);
      if (sign_set != "+") grid.signs.push_back(Twist::kMinus);
      const auto records = scan_family(grid, root_options, jobs, degree_cap);
      if (common.format == "json") return roots_to_json(records);
      if (common.format == "svg") return roots_svg(records);
      return roots_csv(records);
    };
  });

  // density
  std::string z0_text;
  double eps = 0.1;
  DensityCaps caps;
  bool exhaustive = false;
  auto* density = app.add_subcommand("density", "search a family root near a target");
  add_io(density, common, false);
  density->add_option("--z0", z0_text, "target, e.g. 0.5i or 0.3-0.2i")->required();
  density->add_option("--eps", eps, "radius")->capture_default_str();
  density->add_option("--kmax", caps.k_max, "largest k")->capture_default_str();
  density->add_option("--smax", caps.s_max, "largest s")->capture_default_str();
  density->add_option("--nmax", caps.n_max, "largest n")->capture_default_str();
  density->add_option("--degree-cap", caps.degree_cap, "largest degree")->capture_default_str();
  density->add_option("--tol", root_options.tol, "residual tolerance")->capture_default_str();
  density->add_option("--jobs", jobs, "worker threads for the cache fill")->check(CLI::PositiveNumber)->capture_default_str();
  density->add_flag("--exhaustive", exhaustive, "search the whole grid for the closest root");
  density->callback([&] {
    action = [&] {
      const Complex z0 = parse_complex(z0_text);
      RootCache cache(root_options);
      if (jobs > 1 && exhaustive) cache.prefill(caps, std::abs(z0) <= 1 ? Twist::kPlus : Twist::kMinus, jobs);
      const DensityResult r = density_witness(z0, eps, caps, &cache, exhaustive);
      if (common.format == "text") {
        if (!r.witness) {
          return "not found; closest distance " + format_double(r.best_distance) + "\n";
        }
        const auto& f = r.witness->found;
        return "root " + format_complex(f.root) + " of (n,s,k,sign) = (" + std::to_string(f.n) + "," + std::to_string(f.s) + "," +
               std::to_string(f.k) + "," + twist_symbol(f.sign) + ") at distance " + format_double(r.witness->distance) + "\n";
      }
      return density_to_json(r);
    };
  });

  // curve
  std::string z_text;
  CurveOptions curve_options;
  auto* curve = app.add_subcommand("curve", "limit-curve gap |lambda1| - |lambda2|");
  add_io(curve, common, false);
  curve->add_option("--s", s, "theta width")->required()->check(CLI::PositiveNumber);
  curve->add_option("--k", k, "crossings per piece")->required()->check(CLI::PositiveNumber);
  curve->add_option("--z", z_text, "evaluate the gap at this point only");
  curve->add_option("--step", curve_options.step, "grid step")->capture_default_str();
  curve->add_option("--extent", curve_options.re_max, "half-width of the square grid")->capture_default_str();
  curve->callback([&] {
    action = [&] {
      if (!z_text.empty()) return format_double(limit_curve_gap(parse_complex(z_text), s, k)) + "\n";
      curve_options.re_min = curve_options.im_min = -curve_options.re_max;
      curve_options.im_max = curve_options.re_max;
      const auto points = sample_gap_curve(s, k, curve_options);
      std::string text = "re,im\n";
      for (const auto& p : points) text += format_double(p.real()) + "," + format_double(p.imag()) + "\n";
      return text;
    };
  });

  // omega
  bool omega_scan = false;
  double omega_step = 0.01;
  auto* omega = app.add_subcommand("omega", "membership in the region Omega");
  add_io(omega, common, false);
  omega->add_option("--z", z_text, "point to test");
  omega->add_flag("--scan", omega_scan, "grid-scan [-2,2]^2 for points outside Omega");
  omega->add_option("--step", omega_step, "scan step")->capture_default_str();
  omega->callback([&] {
    action = [&] {
      if (omega_scan) {
        std::string text = "re,im\n";
        const int steps = static_cast<int>(std::floor(4.0 / omega_step + 0.5));
        for (int j = 0; j <= steps; ++j) {
          for (int i = 0; i <= steps; ++i) {
            const Complex z(-2.0 + i * omega_step, -2.0 + j * omega_step);
            if (z == Complex(0) || std::abs(z) < 1e-12) continue;
            if (!omega_member(z)) text += format_double(z.real()) + "," + format_double(z.imag()) + "\n";
          }
        }
        return text;
      }
      if (z_text.empty()) throw CLI::RequiredError("--z or --scan");
      return std::string(omega_member(parse_complex(z_text)) ? "true" : "false") + "\n";
    };
  });

  // selftest
  bool swap_convention = false;
  int selftest_status = 0;
  auto* selftest = app.add_subcommand("selftest", "golden closed forms and small oracle checks");
  selftest->add_flag("--swap-smoothing", swap_convention, "evaluate with the S+/S- smoothings exchanged");
  selftest->callback([&] {
    action = [&] {
      std::ostringstream os;
      selftest_status = run_selftest(os, swap_convention ? SmoothingConvention::kSwapped : SmoothingConvention::kCalibrated);
      return os.str();
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    const std::string text = action();
    if (!common.out.empty()) {
      std::ofstream f(common.out);
      if (!f) throw Error(ErrorKind::kInvalidArgument, "cannot write " + common.out);
      f << text;
    } else {
      out << text;
    }
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return selftest_status == 0 ? 0 : 1;
}

}  // namespace yamada::cli
