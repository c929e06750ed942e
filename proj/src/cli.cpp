#include "netcode/cli.hpp"

#include <CLI11.hpp>
#include <iostream>
#include <sstream>
#include <thread>

#include "netcode/json_io.hpp"

namespace netcode {

namespace {

uint64_t parse_budget(const std::string& text) {
  if (text.rfind("2^", 0) == 0) return uint64_t(1) << std::stoul(text.substr(2));
  return std::stoull(text);
}

std::set<std::string> split_nodes(const std::string& text) {
  std::set<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == ',') {
      if (!cur.empty()) out.insert(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.insert(cur);
  return out;
}

void emit(const std::string& text, const std::string& outPath, std::ostream& out) {
  if (outPath.empty())
    out << text;
  else
    write_text(outPath, text);
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

struct CommonOpts {
  std::string netPath, codePath, bcPath, outPath;
  std::string edge, node, fromNodes, toNodes;
  std::string delta, mode = "linear", budget, format = "json";
  int n = 1;
  int workers = 0;
  int points = 100;
  uint64_t seed = 1;
  bool roundTrip = false;
};

}  // namespace

bool round_trip_network(const std::string& path, std::vector<std::string>& warnings) {
  Json doc = load_json(path);
  NetworkFile first = parse_network_file(doc);
  warnings = first.warnings;
  Json echoed = serialize_network_file(first);
  NetworkFile second = parse_network_file(echoed);
  return serialize_network_file(second) == echoed;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"acyclic network coding: single-edge capacity perturbations"};
  app.require_subcommand(1);
  CommonOpts o;

  auto* validate = app.add_subcommand("validate", "check a network file against the schema");
  validate->add_option("--net", o.netPath, "network JSON")->required();
  validate->add_flag("--round-trip", o.roundTrip, "also check parse/serialize round trip");
  validate->add_option("--out", o.outPath, "write the report here instead of stdout");

  auto* maxflow = app.add_subcommand("maxflow", "exact max-flow between node sets");
  maxflow->add_option("--net", o.netPath)->required();
  maxflow->add_option("--from", o.fromNodes, "comma-separated source nodes")->required();
  maxflow->add_option("--to", o.toNodes, "comma-separated sink nodes")->required();
  maxflow->add_option("--out", o.outPath);

  auto* cutset = app.add_subcommand("cutset-region", "cut-set bound region for the demand");
  cutset->add_option("--net", o.netPath)->required();
  cutset->add_option("--format", o.format, "json or csv");
  cutset->add_option("--out", o.outPath);

  auto* robust = app.add_subcommand("check-robustness",
                                    "cut bounds drop by at most delta under edge reduction");
  robust->add_option("--net", o.netPath)->required();
  robust->add_option("--edge", o.edge)->required();
  robust->add_option("--delta", o.delta)->required();
  robust->add_option("--points", o.points, "sampled region points");
  robust->add_option("--seed", o.seed);
  robust->add_option("--out", o.outPath);

  auto* perturb = app.add_subcommand("perturb",
                                     "kernel-restrict a linear code around an edge reduction");
  perturb->add_option("--net", o.netPath)->required();
  perturb->add_option("--code", o.codePath)->required();
  perturb->add_option("--edge", o.edge)->required();
  perturb->add_option("--delta", o.delta)->required();
  perturb->add_option("--out", o.outPath);

  auto* mac = app.add_subcommand("mac-region", "MAC region at the code-induced distribution");
  mac->add_option("--net", o.netPath)->required();
  mac->add_option("--code", o.codePath)->required();
  mac->add_option("--node", o.node, "receiver node (its inputs form the channel output)")
      ->required();
  mac->add_option("--out", o.outPath);

  auto* dbc = app.add_subcommand("dbc-region", "deterministic broadcast channel region");
  dbc->add_option("--bc", o.bcPath, "BC JSON: inputAlphabet, functions, inputDist")->required();
  dbc->add_option("--out", o.outPath);

  auto* verify = app.add_subcommand("verify-theorem",
                                    "replay the MAC + broadcast proof chain on an instance");
  verify->add_option("--net", o.netPath)->required();
  verify->add_option("--code", o.codePath)->required();
  verify->add_option("--edge", o.edge)->required();
  verify->add_option("--node", o.node)->required();
  verify->add_option("--out", o.outPath);

  auto* oracle = app.add_subcommand("oracle", "exhaustive zero-error achievable rate set");
  oracle->add_option("--net", o.netPath)->required();
  oracle->add_option("--n", o.n, "blocklength");
  oracle->add_option("--mode", o.mode, "linear or all");
  oracle->add_option("--budget", o.budget, "max codes, e.g. 2^24");
  oracle->add_option("--workers", o.workers, "0 = hardware parallelism");
  oracle->add_option("--format", o.format, "json or csv");
  oracle->add_option("--out", o.outPath);

  auto* gap = app.add_subcommand("oracle-gap",
                                 "achievable-set degradation after an edge reduction");
  gap->add_option("--net", o.netPath)->required();
  gap->add_option("--edge", o.edge)->required();
  gap->add_option("--delta", o.delta)->required();
  gap->add_option("--n", o.n);
  gap->add_option("--mode", o.mode);
  gap->add_option("--budget", o.budget);
  gap->add_option("--workers", o.workers);
  gap->add_option("--out", o.outPath);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& ex) {
    if (ex.get_exit_code() == 0) {
      // --help goes to stdout with success.
      out << app.help();
      return 0;
    }
    err << "error: " << ex.what() << "\n";
    return 1;
  }

  try {
    uint64_t budget = o.budget.empty() ? default_budget() : parse_budget(o.budget);
    int workers = o.workers > 0 ? o.workers : int(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;

    if (validate->parsed()) {
      Json doc = load_json(o.netPath);
      NetworkFile file = parse_network_file(doc);
      ValidationReport net = validate_network(file.net);
      ValidationReport dem = validate_demand(file.net, file.demand);
      Json rep = Json::object();
      rep["command"] = "validate";
      rep["ok"] = net.ok() && dem.ok();
      Json violations = Json::array();
      for (const auto& v : net.violations) violations.push_back(v);
      for (const auto& v : dem.violations) violations.push_back(v);
      rep["violations"] = std::move(violations);
      rep["warnings"] = file.warnings;
      if (o.roundTrip) {
        std::vector<std::string> warnings;
        rep["roundTrip"] = round_trip_network(o.netPath, warnings);
      }
      emit(dump(rep), o.outPath, out);
      return rep["ok"].get<bool>() ? 0 : 1;
    }

    if (maxflow->parsed()) {
      NetworkFile file = parse_network_file(load_json(o.netPath));
      Rational value = max_flow(file.net, split_nodes(o.fromNodes), split_nodes(o.toNodes));
      Json rep = Json::object();
      rep["command"] = "maxflow";
      rep["from"] = split_nodes(o.fromNodes);
      rep["to"] = split_nodes(o.toNodes);
      rep["value"] = format_rational(value);
      emit(dump(rep), o.outPath, out);
      return 0;
    }

    if (cutset->parsed()) {
      NetworkFile file = parse_network_file(load_json(o.netPath));
      CutsetRegion region = cutset_region(file.net, file.demand);
      if (o.format == "csv") {
        std::ostringstream csv;
        csv << "sources,sinks,bound\n";
        for (const auto& c : region.constraints) {
          for (size_t i = 0; i < c.sources.size(); ++i) csv << (i ? "|" : "") << c.sources[i];
          csv << ",";
          for (size_t i = 0; i < c.sinkNodes.size(); ++i) csv << (i ? "|" : "") << c.sinkNodes[i];
          csv << "," << format_rational(c.bound) << "\n";
        }
        emit(csv.str(), o.outPath, out);
      } else {
        Json rep = serialize_cutset_region(region);
        emit(dump(rep), o.outPath, out);
      }
      return 0;
    }

    if (robust->parsed()) {
      NetworkFile file = parse_network_file(load_json(o.netPath));
      RobustnessReport rep = check_delta_robustness(file.net, file.demand, o.edge,
                                                    parse_rational(o.delta), o.points, o.seed);
      emit(dump(serialize_robustness(rep)), o.outPath, out);
      return rep.pass ? 0 : 2;
    }

    if (perturb->parsed()) {
      NetworkFile file = parse_network_file(load_json(o.netPath));
      LinearNetworkCode code = parse_code_file(load_json(o.codePath), file.net, file.demand);
      RateLossReport rep = verify_rate_loss(code, o.edge, parse_rational(o.delta));
      emit(dump(serialize_rate_loss(rep)), o.outPath, out);
      return rep.pass ? 0 : 2;
    }

    if (mac->parsed()) {
      NetworkFile file = parse_network_file(load_json(o.netPath));
      LinearNetworkCode code = parse_code_file(load_json(o.codePath), file.net, file.demand);
      std::vector<std::string> selection;
      for (const auto& s : file.demand.sources()) selection.push_back(msg_var(s.id));
      for (const Edge* e : file.net.in_edges(o.node)) selection.push_back(edge_var(e->id));
      DistributionTable joint = induced_distribution(code, selection);
      emit(dump(serialize_region(mac_region_from_code(joint))), o.outPath, out);
      return 0;
    }

    if (dbc->parsed()) {
      Json doc = load_json(o.bcPath);
      DeterministicBC bc;
      bc.inputAlphabet = doc.at("inputAlphabet").get<uint64_t>();
      for (const auto& fn : doc.at("functions"))
        bc.functions.push_back(fn.get<std::vector<uint64_t>>());
      if (doc.contains("inputDist")) {
        for (const auto& p : doc["inputDist"])
          bc.inputDist.push_back(p.is_string() ? parse_rational(p.get<std::string>())
                                               : Rational(p.get<long long>()));
      } else {
        bc.inputDist.assign(bc.inputAlphabet, Rational(1, long(bc.inputAlphabet)));
      }
      emit(dump(serialize_region(dbc_region(bc))), o.outPath, out);
      return 0;
    }

    if (verify->parsed()) {
      NetworkFile file = parse_network_file(load_json(o.netPath));
      LinearNetworkCode code = parse_code_file(load_json(o.codePath), file.net, file.demand);
      TheoremInstance inst{std::move(code), o.node, o.edge};
      TheoremReport rep = verify_theorem(inst);
      emit(dump(serialize_theorem_report(rep)), o.outPath, out);
      return rep.pass ? 0 : 2;
    }

    if (oracle->parsed()) {
      NetworkFile file = parse_network_file(load_json(o.netPath));
      auto rates = achievable_set(file.net, file.demand, o.n, parse_code_mode(o.mode), budget,
                                  workers);
      std::vector<std::string> sources;
      for (const auto& s : file.demand.sources()) sources.push_back(s.id);
      if (o.format == "csv") {
        std::ostringstream csv;
        for (size_t i = 0; i < sources.size(); ++i) csv << (i ? "," : "") << sources[i];
        csv << "\n";
        for (const auto& r : rates) {
          for (size_t i = 0; i < r.size(); ++i) csv << (i ? "," : "") << format_rational(r[i]);
          csv << "\n";
        }
        emit(csv.str(), o.outPath, out);
      } else {
        emit(dump(serialize_rate_set(rates, sources)), o.outPath, out);
      }
      return 0;
    }

    if (gap->parsed()) {
      NetworkFile file = parse_network_file(load_json(o.netPath));
      DeltaGapReport rep = delta_gap_report(file.net, file.demand, o.edge,
                                            parse_rational(o.delta), o.n,
                                            parse_code_mode(o.mode), budget, workers);
      emit(dump(serialize_delta_gap(rep)), o.outPath, out);
      return rep.pass ? 0 : 2;
    }
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return 1;
  }
  err << "error: no command\n";
  return 1;
}

}  // namespace netcode
