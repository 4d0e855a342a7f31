#include "cube/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <map>

#include "cube/charpoly.hpp"
#include "cube/groves.hpp"
#include "cube/json_io.hpp"
#include "cube/networks.hpp"
#include "cube/recurrence.hpp"
#include "cube/svg.hpp"
#include "cube/verify.hpp"

namespace cube {

Region RunConfig::build_region() const {
  if (region == "triangle") return Region::triangle(m);
  if (region == "cylinder") return Region::cylinder(n, m);
  if (region == "torus") return Region::torus(A, B);
  throw UsageError("--region: unknown region '" + region + "'");
}

namespace {

Vertex vertex_arg(const std::string& flag, const std::string& text) {
  try {
    return parse_vertex(text);
  } catch (const std::exception& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

Rational rational_arg(const std::string& flag, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::exception& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

std::pair<Vertex, Rational> assignment_arg(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos) throw UsageError("--assign: expected x[i,j,k]=p/q, got '" + text + "'");
  return {vertex_arg("--assign", text.substr(0, eq)), rational_arg("--assign", text.substr(eq + 1))};
}

void require_positive(const std::string& flag, int value, int minimum) {
  if (value < minimum) throw UsageError(flag + " must be at least " + std::to_string(minimum));
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"Exact evolution and certification of the cube recurrence", "cube"};
  app.require_subcommand(1);

  std::string a_text, b_text, v_text, fill_text, json_path;
  std::vector<std::string> assign_text;
  std::uint64_t seed = 1;

  auto* evolve = app.add_subcommand("evolve", "Evolve the recurrence on a region");
  evolve->add_option("--region", cfg.region, "triangle, cylinder or torus")
      ->check(CLI::IsMember({"triangle", "cylinder", "torus"}));
  evolve->add_option("--m", cfg.m, "Triangle index or cylinder width");
  evolve->add_option("--n", cfg.n, "Cylinder period parameter");
  evolve->add_option("--A", a_text, "First torus period i,j,k");
  evolve->add_option("--B", b_text, "Second torus period i,j,k");
  evolve->add_option("--tmax", cfg.t_max, "Last time slice")->required();
  evolve->add_option("--assign", assign_text, "x[i,j,k]=p/q; repeatable");
  evolve->add_option("--fill", fill_text, "Value of unassigned variables (default 1 when --assign is given)");
  evolve->add_flag("--keep-symbolic", cfg.keep_symbolic, "Leave unassigned variables symbolic");
  evolve->add_option("--json", json_path, "Output file");

  auto* groves = app.add_subcommand("groves", "Enumerate the groves of G(v,t)");
  groves->add_option("--t", cfg.t, "Size of the grove region")->required();
  groves->add_option("--v", v_text, "Apex i,j,k (default: the apex of the right color near the origin)");
  groves->add_option("--svg", cfg.svg_out, "Draw the groves to this file");
  groves->add_option("--json", json_path, "Output file")->expected(0, 1);

  auto* jcoeff = app.add_subcommand("jcoeff", "Weighted cylinder grove counts J_0..J_m");
  auto* qpoly = app.add_subcommand("qpoly", "Characteristic polynomial of the cylinder sequences");
  auto* network = app.add_subcommand("network", "The strip network of a cylinder");
  for (auto* sub : {jcoeff, qpoly, network}) {
    sub->add_option("--n", cfg.n, "Cylinder period parameter")->required();
    sub->add_option("--m", cfg.m, "Cylinder width")->required();
  }
  jcoeff->add_option("--json", json_path, "Output file")->expected(0, 1);
  qpoly->add_option("--r", cfg.r, "Polynomial of the r-fold root products");
  qpoly->add_option("--json", json_path, "Output file")->expected(0, 1);
  network->add_option("--dot", cfg.dot_out, "Write the edge list to this file");
  network->add_option("--svg", cfg.svg_out, "Draw the network to this file");

  auto* verify = app.add_subcommand("verify", "Certification checks");
  verify->require_subcommand(1);
  auto* periodicity = verify->add_subcommand("periodicity", "Rotation and period identities on the triangle");
  periodicity->add_option("--m", cfg.m, "Triangle index")->required();
  periodicity->add_flag("--symbolic", cfg.symbolic, "Compare polynomials instead of random points");
  auto* cylrec = verify->add_subcommand("cylrec", "Boundary-adjacent linear recurrence");
  auto* pleth = verify->add_subcommand("pleth", "Linear recurrence at depth m - i");
  for (auto* sub : {cylrec, pleth}) {
    sub->add_option("--n", cfg.n, "Cylinder period parameter")->required();
    sub->add_option("--m", cfg.m, "Cylinder width")->required();
    sub->add_option("--lmax", cfg.l_max, "Last sequence index")->capture_default_str();
    sub->add_option("--j", cfg.j, "Only the vertex with this j");
  }
  pleth->add_option("--i", cfg.i, "Row of the vertex")->required();
  pleth->add_flag("--symbolic", cfg.symbolic, "One symbolic certificate instead of random points");
  auto* vgroves = verify->add_subcommand("groves", "Grove sums against recurrence values");
  vgroves->add_option("--t", cfg.t, "Size of the grove region")->required();
  auto* entropy = verify->add_subcommand("entropy", "Degree growth on a torus");
  entropy->add_option("--tmax", cfg.t_max, "Last step T")->capture_default_str();
  entropy->add_option("--A", a_text, "First torus period i,j,k");
  entropy->add_option("--B", b_text, "Second torus period i,j,k");
  entropy->add_option("--v", v_text, "Vertex i,j,k (default 0,0,0)");

  for (auto* sub : {periodicity, cylrec, pleth, vgroves})
    sub->add_option("--seed", seed, "Seed for random rational points");
  for (auto* sub : {periodicity, pleth}) sub->add_option("--trials", cfg.trials, "Random points")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    CLI::App* cur = &app;
    while (!cur->get_subcommands().empty()) cur = cur->get_subcommands().front();
    cfg.command = Command::Help;
    cfg.help = cur->help();
    return cfg;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  auto given = [](CLI::App* sub, const char* flag) { return sub->count(flag) > 0; };
  bool json_given = false;
  if (evolve->parsed()) {
    cfg.command = Command::Evolve;
    json_given = given(evolve, "--json");
    if (cfg.region != "torus" && !given(evolve, "--m")) throw UsageError("--m is required for the " + cfg.region + " region");
    if (cfg.region == "torus" && given(evolve, "--m")) throw UsageError("--m does not apply to the torus");
    if (cfg.region != "torus" && (given(evolve, "--A") || given(evolve, "--B")))
      throw UsageError("--A/--B apply only to the torus");
    if (cfg.region != "cylinder" && given(evolve, "--n")) throw UsageError("--n applies only to the cylinder");
    if (cfg.region == "triangle") require_positive("--m", cfg.m, 1);
    if (cfg.region == "cylinder") {
      require_positive("--m", cfg.m, 2);
      require_positive("--n", cfg.n, 1);
    }
    require_positive("--tmax", cfg.t_max, 0);
    if (given(evolve, "--fill")) cfg.fill = rational_arg("--fill", fill_text);
    if (cfg.fill && cfg.keep_symbolic) throw UsageError("--fill and --keep-symbolic are exclusive");
  } else if (groves->parsed()) {
    cfg.command = Command::Groves;
    json_given = given(groves, "--json");
    require_positive("--t", cfg.t, 2);
  } else if (jcoeff->parsed() || qpoly->parsed() || network->parsed()) {
    cfg.command = jcoeff->parsed() ? Command::JCoeff : qpoly->parsed() ? Command::QPoly : Command::Network;
    json_given = (jcoeff->parsed() && given(jcoeff, "--json")) || (qpoly->parsed() && given(qpoly, "--json"));
    require_positive("--n", cfg.n, 1);
    require_positive("--m", cfg.m, 2);
    if (cfg.r && (*cfg.r < 1 || *cfg.r > cfg.m)) throw UsageError("--r must lie in 1..m");
  } else if (periodicity->parsed()) {
    cfg.command = Command::VerifyPeriodicity;
    require_positive("--m", cfg.m, 3);
    require_positive("--trials", cfg.trials, 1);
    if (given(periodicity, "--seed")) cfg.seed = seed;
  } else if (cylrec->parsed() || pleth->parsed()) {
    CLI::App* sub = cylrec->parsed() ? cylrec : pleth;
    cfg.command = cylrec->parsed() ? Command::VerifyCylrec : Command::VerifyPleth;
    require_positive("--n", cfg.n, 1);
    require_positive("--m", cfg.m, 2);
    require_positive("--lmax", cfg.l_max, 0);
    require_positive("--trials", cfg.trials, 1);
    if (cfg.j && (*cfg.j < 0 || *cfg.j > 2)) throw UsageError("--j must be 0, 1 or 2");
    if (pleth->parsed() && (cfg.i < 0 || cfg.i >= cfg.m)) throw UsageError("--i must lie in 0..m-1");
    if (given(sub, "--seed")) cfg.seed = seed;
  } else if (vgroves->parsed()) {
    cfg.command = Command::VerifyGroves;
    require_positive("--t", cfg.t, 2);
    cfg.seed = seed;
  } else if (entropy->parsed()) {
    cfg.command = Command::VerifyEntropy;
    require_positive("--tmax", cfg.t_max, 6);
  }

  if (!a_text.empty()) cfg.A = vertex_arg("--A", a_text);
  if (!b_text.empty()) cfg.B = vertex_arg("--B", b_text);
  if (!v_text.empty()) cfg.v = vertex_arg("--v", v_text);
  if (json_given && !json_path.empty()) cfg.json_out = json_path;

  if (cfg.command == Command::Evolve) {
    Region region;
    try {
      region = cfg.build_region();
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception& e) {
      throw UsageError(std::string("--A/--B: ") + e.what());
    }
    auto vars = region.variables();
    for (const auto& text : assign_text) {
      auto [u, q] = assignment_arg(text);
      if (!std::binary_search(vars.begin(), vars.end(), u))
        throw UsageError("--assign: " + to_string(u) + " is not a canonical variable of " + region.describe());
      cfg.assignments.emplace_back(u, q);
    }
  }
  return cfg;
}

namespace {

void emit(const Json& j, const std::optional<std::string>& path, std::ostream& out) {
  std::string text = j.dump(2) + "\n";
  if (path) write_file(*path, text);
  else out << text;
}

Vertex default_apex(int t) {
  for (const Vertex& apex : {Vertex{0, 0, 0}, Vertex{1, 0, -1}, Vertex{0, 1, -1}})
    if (floor_mod(t + 1 - color(apex), 3) == 0) return apex;
  return {};
}

int run_evolve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Region region = cfg.build_region();
  LaurentAlgebra alg;
  for (const auto& [u, q] : cfg.assignments) alg.assign[VarId{u}] = q;
  if (cfg.fill) alg.fill = *cfg.fill;
  else if (!cfg.assignments.empty() && !cfg.keep_symbolic) alg.fill = Rational(1);
  Recurrence rec(region, alg);
  auto values = rec.evolve_slice(cfg.t_max);
  std::vector<std::pair<Recurrence::Key, const LaurentPoly*>> order;
  for (const auto& [key, val] : values) order.emplace_back(key, &val);
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first.second < b.first.second; });
  Json j = Json::object();
  for (const auto& [key, val] : order) j[key_string(key.first, key.second)] = to_json(*val);
  emit(j, cfg.json_out, out);
  err << "evolve: " << values.size() << " values on " << region.describe() << " for t <= " << cfg.t_max << "\n";
  return kExitPass;
}

int run_groves(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Vertex apex = cfg.v.value_or(default_apex(cfg.t));
  GroveRegion g = build_region(apex, cfg.t);
  auto forests = enumerate_groves(g);
  Json list = Json::array();
  for (const auto& f : forests) {
    Json diag = Json::array();
    for (const auto& [u, w] : forest_edges(g, f)) diag.push_back({to_string(u), to_string(w)});
    list.push_back({{"weight", to_json(weight(g, f))}, {"diagonals", diag}});
  }
  Json j;
  j["apex"] = to_string(apex);
  j["t"] = cfg.t;
  j["count"] = forests.size();
  j["weight_sum"] = to_json(grove_sum(g, forests));
  j["groves"] = list;
  emit(j, cfg.json_out, out);
  if (cfg.svg_out) write_file(*cfg.svg_out, groves_svg(g, forests));
  err << "groves: " << forests.size() << " groves of G(" << to_string(apex) << "," << cfg.t << ")\n";
  return kExitPass;
}

int run_jcoeff(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto groves = enumerate_cyl_groves(cfg.n, cfg.m);
  std::vector<LaurentPoly> J(static_cast<std::size_t>(cfg.m) + 1);
  std::vector<std::size_t> counts(J.size(), 0);
  for (const auto& g : groves) {
    J[static_cast<std::size_t>(g.h)] += g.weight;
    ++counts[static_cast<std::size_t>(g.h)];
  }
  Json j;
  j["n"] = cfg.n;
  j["m"] = cfg.m;
  j["J"] = to_json(J)["coeffs"];
  j["grove_counts"] = counts;
  emit(j, cfg.json_out, out);
  err << "jcoeff: " << groves.size() << " groves of Cylinder(" << cfg.n << "," << cfg.m << ")\n";
  return kExitPass;
}

int run_qpoly(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  CharPoly q = char_poly_Q(cfg.n, cfg.m);
  if (cfg.r) q = char_poly_plethysm(q, *cfg.r);
  emit(to_json(q), cfg.json_out, out);
  err << "qpoly: degree " << q.degree() << " for Cylinder(" << cfg.n << "," << cfg.m << ")"
      << (cfg.r ? ", r=" + std::to_string(*cfg.r) : std::string()) << "\n";
  return kExitPass;
}

int run_network(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Network net = build_strip_network(cfg.n, cfg.m);
  std::string text = net.to_text();
  if (cfg.dot_out) write_file(*cfg.dot_out, text);
  else out << text;
  if (cfg.svg_out) write_file(*cfg.svg_out, network_svg(net));
  err << "network: " << net.nodes.size() << " nodes, " << net.edges.size() << " edges\n";
  return kExitPass;
}

CheckMode mode_of(const RunConfig& cfg) {
  if (cfg.symbolic) return Symbolic{};
  return RandomRational{cfg.seed.value_or(1), cfg.trials};
}

std::vector<int> columns(const RunConfig& cfg) {
  if (cfg.j) return {*cfg.j};
  return {0, 1, 2};
}

int run_periodicity(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto rep = check_periodicity(cfg.m, mode_of(cfg));
  emit(to_json(rep), std::nullopt, out);
  err << "periodicity m=" << cfg.m << ": " << (rep.pass() ? "pass" : "FAIL") << " (" << rep.comparisons
      << " comparisons)\n";
  return rep.pass() ? kExitPass : kExitFail;
}

int run_recurrences(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  bool cyl = cfg.command == Command::VerifyCylrec;
  Region region = Region::cylinder(cfg.n, cfg.m);
  Json certs = Json::array();
  int code = kExitPass;
  auto record = [&](const RecurrenceCertificate& c, bool too_small) {
    Json j = to_json(c);
    if (too_small) j["error"] = "WindowTooSmall";
    certs.push_back(j);
    if (too_small) code = std::max(code, kExitWindowTooSmall);
  };
  for (int jj : columns(cfg)) {
    int i = cyl ? cfg.m - 1 : cfg.i;
    Vertex v{i, jj, -i - jj};
    try {
      if (cyl) {
        std::optional<Assignment> spec;
        if (cfg.seed) spec = random_assignment(region, *cfg.seed + static_cast<std::uint64_t>(jj));
        record(check_cylinder_recurrence(cfg.n, cfg.m, v, cfg.l_max, spec), false);
      } else {
        for (const auto& c : check_plethysm_recurrence(cfg.n, cfg.m, v, cfg.l_max, mode_of(cfg))) record(c, false);
      }
    } catch (const WindowTooSmall& e) {
      record(e.certificate, true);
    }
  }
  Json j;
  j["check"] = cyl ? "cylrec" : "pleth";
  j["n"] = cfg.n;
  j["m"] = cfg.m;
  j["l_max"] = cfg.l_max;
  if (cyl) {
    j["mode"] = cfg.seed ? "random" : "symbolic";
  } else {
    j["i"] = cfg.i;
    j["r"] = cfg.m - cfg.i;
    j["mode"] = cfg.symbolic ? "symbolic" : "random";
  }
  if (cfg.seed || !cfg.symbolic) j["seed"] = cfg.seed.value_or(1);
  j["certificates"] = certs;
  bool pass = code == kExitPass;
  if (cyl && cfg.n == 1) {
    Assignment at;
    if (cfg.seed) at = random_assignment(region, *cfg.seed);
    else
      for (const auto& u : region.variables()) at[VarId{u}] = 1;
    Vertex v{cfg.m - 1, columns(cfg).front(), 1 - cfg.m - columns(cfg).front()};
    auto sub = check_fixed_vertex_subsample(cfg.m, v, at, 3 * (2 * cfg.m + 4) + 3);
    j["subsample"] = to_json(sub);
    if (!sub.pass()) {
      pass = false;
      code = std::max(code, kExitFail);
    }
  }
  j["pass"] = pass;
  emit(j, std::nullopt, out);
  err << j["check"].get<std::string>() << " n=" << cfg.n << " m=" << cfg.m << ": "
      << (code == kExitPass ? "pass" : code == kExitWindowTooSmall ? "window too small" : "FAIL") << " ("
      << certs.size() << " certificates)\n";
  return code;
}

int run_verify_groves(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto results = cross_check_grove_oracle(default_grove_scope(cfg.t, cfg.seed.value_or(1)));
  Json list = Json::array();
  bool pass = true;
  for (const auto& r : results) {
    list.push_back(to_json(r));
    pass = pass && r.match;
  }
  Json j;
  j["check"] = "groves";
  j["t"] = cfg.t;
  j["results"] = list;
  j["pass"] = pass;
  emit(j, std::nullopt, out);
  err << "groves t=" << cfg.t << ": " << (pass ? "pass" : "FAIL") << " (" << results.size() << " cases)\n";
  return pass ? kExitPass : kExitFail;
}

int run_entropy(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto rep = measure_degree_growth(cfg.A, cfg.B, cfg.v.value_or(Vertex{}), cfg.t_max);
  emit(to_json(rep), std::nullopt, out);
  err << "entropy T<=" << cfg.t_max << ": " << (rep.pass() ? "pass" : "FAIL") << ", d(T_max)=" << rep.degrees.back()
      << "\n";
  return rep.pass() ? kExitPass : kExitFail;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    switch (cfg.command) {
      case Command::Help:
        out << cfg.help;
        return kExitPass;
      case Command::Evolve: return run_evolve(cfg, out, err);
      case Command::Groves: return run_groves(cfg, out, err);
      case Command::JCoeff: return run_jcoeff(cfg, out, err);
      case Command::QPoly: return run_qpoly(cfg, out, err);
      case Command::Network: return run_network(cfg, out, err);
      case Command::VerifyPeriodicity: return run_periodicity(cfg, out, err);
      case Command::VerifyCylrec:
      case Command::VerifyPleth: return run_recurrences(cfg, out, err);
      case Command::VerifyGroves: return run_verify_groves(cfg, out, err);
      case Command::VerifyEntropy: return run_entropy(cfg, out, err);
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitFail;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_args(args);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nRun 'cube --help' for usage.\n";
    return kExitUsage;
  }
  return run(cfg, out, err);
}

}  // namespace cube
