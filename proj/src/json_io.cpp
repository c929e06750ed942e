#include "netcode/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace netcode {

namespace {

Rational rational_field(const Json& value, const std::string& where) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return Rational(value.get<long long>());
  throw std::invalid_argument(where + ": expected a rational string or integer");
}

const Json& required(const Json& doc, const std::string& key, const std::string& where) {
  auto it = doc.find(key);
  if (it == doc.end()) throw std::invalid_argument(where + ": missing field \"" + key + "\"");
  return *it;
}

}  // namespace

NetworkFile parse_network_file(const Json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("network file: expected a JSON object");
  NetworkFile file;

  std::vector<std::string> nodes;
  for (const auto& n : required(doc, "nodes", "network file"))
    nodes.push_back(n.get<std::string>());

  std::vector<Edge> edges;
  for (const auto& e : required(doc, "edges", "network file")) {
    Edge edge;
    edge.id = required(e, "id", "edge").get<std::string>();
    edge.from = required(e, "from", "edge " + edge.id).get<std::string>();
    edge.to = required(e, "to", "edge " + edge.id).get<std::string>();
    edge.capacity = rational_field(required(e, "capacity", "edge " + edge.id),
                                   "edge " + edge.id + " capacity");
    edges.push_back(std::move(edge));
  }
  std::string name = doc.value("name", "");
  file.net = Network(name, std::move(nodes), std::move(edges));

  std::vector<SourceSpec> sources;
  if (doc.contains("sources")) {
    for (const auto& s : doc["sources"]) {
      SourceSpec spec;
      spec.id = required(s, "id", "source").get<std::string>();
      spec.node = required(s, "node", "source " + spec.id).get<std::string>();
      spec.rate =
          rational_field(required(s, "rate", "source " + spec.id), "source " + spec.id + " rate");
      sources.push_back(std::move(spec));
    }
  }
  std::map<std::string, std::set<std::string>> demands;
  if (doc.contains("demands")) {
    for (const auto& [node, wanted] : doc["demands"].items()) {
      std::set<std::string> set;
      for (const auto& s : wanted) set.insert(s.get<std::string>());
      demands[node] = std::move(set);
    }
  }
  file.demand = DemandSpec(std::move(sources), std::move(demands));

  static const std::set<std::string> known{"name", "nodes", "edges", "sources", "demands"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.count(key)) {
      file.extras[key] = value;
      file.warnings.push_back("unknown field \"" + key + "\" preserved");
    }
  }
  return file;
}

Json serialize_network_file(const NetworkFile& file) {
  Json doc = Json::object();
  if (!file.net.name().empty()) doc["name"] = file.net.name();
  doc["nodes"] = file.net.nodes();
  Json edges = Json::array();
  for (const auto& e : file.net.edges()) {
    Json edge = Json::object();
    edge["id"] = e.id;
    edge["from"] = e.from;
    edge["to"] = e.to;
    edge["capacity"] = format_rational(e.capacity);
    edges.push_back(std::move(edge));
  }
  doc["edges"] = std::move(edges);
  Json sources = Json::array();
  for (const auto& s : file.demand.sources()) {
    Json src = Json::object();
    src["id"] = s.id;
    src["node"] = s.node;
    src["rate"] = format_rational(s.rate);
    sources.push_back(std::move(src));
  }
  doc["sources"] = std::move(sources);
  Json demands = Json::object();
  for (const auto& [node, wanted] : file.demand.demands()) {
    Json list = Json::array();
    for (const auto& s : wanted) list.push_back(s);
    demands[node] = std::move(list);
  }
  doc["demands"] = std::move(demands);
  for (const auto& [key, value] : file.extras.items()) doc[key] = value;
  return doc;
}

LinearNetworkCode parse_code_file(const Json& doc, const Network& net, const DemandSpec& demand) {
  LinearNetworkCode code;
  code.net = net;
  code.demand = demand;
  code.blocklength = int(required(doc, "blocklength", "code file").get<long long>());
  if (code.blocklength < 1) throw std::invalid_argument("code file: blocklength must be >= 1");

  const Json& encoders = required(doc, "encoders", "code file");
  for (const auto& e : net.edges()) {
    auto it = encoders.find(e.id);
    if (it == encoders.end())
      throw std::invalid_argument("code file: missing encoder for edge \"" + e.id + "\"");
    code.encoders[e.id] = Gf2Matrix::parse_sized(it->get<std::string>(), edge_bits(code, e),
                                                 input_bits(code, e.from));
  }
  const Json& decoders = required(doc, "decoders", "code file");
  for (const auto& [node, wanted] : demand.demands()) {
    for (const auto& s : wanted) {
      std::string key = node + ":" + s;
      auto it = decoders.find(key);
      if (it == decoders.end())
        throw std::invalid_argument("code file: missing decoder \"" + key + "\"");
      code.decoders[{node, s}] = Gf2Matrix::parse_sized(
          it->get<std::string>(), message_bits(code, s), input_bits(code, node));
    }
  }
  return code;
}

Json serialize_code_file(const LinearNetworkCode& code) {
  Json doc = Json::object();
  doc["blocklength"] = code.blocklength;
  Json encoders = Json::object();
  for (const auto& [edge, m] : code.encoders) encoders[edge] = m.to_text();
  doc["encoders"] = std::move(encoders);
  Json decoders = Json::object();
  for (const auto& [key, m] : code.decoders) decoders[key.first + ":" + key.second] = m.to_text();
  doc["decoders"] = std::move(decoders);
  return doc;
}

double report_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::strtod(buf, nullptr);
}

Json serialize_region(const RateRegion& region) {
  Json doc = Json::object();
  doc["dimension"] = region.dimension;
  doc["labels"] = region.labels;
  Json offset = Json::array();
  for (double o : region.offset) offset.push_back(report_real(o));
  doc["offset"] = std::move(offset);
  Json ineqs = Json::array();
  for (const auto& ineq : region.inequalities) {
    Json row = Json::object();
    row["subset"] = ineq.subset;
    row["bound"] = report_real(ineq.bound);
    row["label"] = ineq.label;
    ineqs.push_back(std::move(row));
  }
  doc["inequalities"] = std::move(ineqs);
  return doc;
}

Json serialize_cutset_region(const CutsetRegion& region) {
  Json doc = Json::object();
  doc["demandType"] = demand_type_name(region.type);
  doc["sources"] = region.sourceOrder;
  Json rows = Json::array();
  for (const auto& c : region.constraints) {
    Json row = Json::object();
    row["sources"] = c.sources;
    row["sinks"] = c.sinkNodes;
    row["bound"] = format_rational(c.bound);
    row["label"] = c.label;
    rows.push_back(std::move(row));
  }
  doc["constraints"] = std::move(rows);
  return doc;
}

Json serialize_rate_loss(const RateLossReport& rep) {
  Json doc = Json::object();
  doc["edge"] = rep.edge;
  doc["delta"] = format_rational(rep.delta);
  Json rows = Json::array();
  for (const auto& p : rep.perSource) {
    Json row = Json::object();
    row["s"] = p.source;
    row["originalRate"] = format_rational(p.originalRate);
    row["restrictedRate"] = format_rational(p.restrictedRate);
    row["bound"] = format_rational(p.bound);
    rows.push_back(std::move(row));
  }
  doc["perSource"] = std::move(rows);
  doc["pass"] = rep.pass;
  return doc;
}

Json serialize_robustness(const RobustnessReport& rep) {
  Json doc = Json::object();
  doc["edge"] = rep.edge;
  doc["delta"] = format_rational(rep.delta);
  Json rows = Json::array();
  for (const auto& c : rep.constraintChecks) {
    Json row = Json::object();
    row["label"] = c.label;
    row["boundBefore"] = format_rational(c.before);
    row["boundAfter"] = format_rational(c.after);
    row["pass"] = c.pass;
    rows.push_back(std::move(row));
  }
  doc["constraintChecks"] = std::move(rows);
  doc["pointsChecked"] = rep.pointsChecked;
  doc["pointFailures"] = rep.pointFailures;
  doc["pass"] = rep.pass;
  return doc;
}

namespace {

Json serialize_margins(const std::vector<SubsetMargin>& margins) {
  Json rows = Json::array();
  for (const auto& m : margins) {
    Json row = Json::object();
    row["label"] = m.label;
    row["lhs"] = report_real(m.lhs);
    row["bound"] = report_real(m.bound);
    row["margin"] = report_real(m.margin);
    row["pass"] = m.pass;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Json serialize_theorem_report(const TheoremReport& rep) {
  Json doc = Json::object();
  doc["structureOk"] = rep.structureOk;
  doc["delta"] = format_rational(rep.delta);
  doc["degenerateSources"] = rep.degenerate;
  Json mac = Json::object();
  mac["sources"] = rep.mac.sources;
  Json rmac = Json::array();
  for (double v : rep.mac.rMac) rmac.push_back(report_real(v));
  mac["rMac"] = std::move(rmac);
  Json perr = Json::array();
  for (double v : rep.mac.errorProb) perr.push_back(report_real(v));
  mac["errorProb"] = std::move(perr);
  mac["epsilon"] = report_real(rep.mac.epsilon);
  mac["regionChecks"] = serialize_margins(rep.mac.regionChecks);
  mac["rateChecks"] = serialize_margins(rep.mac.rateChecks);
  mac["pass"] = rep.mac.pass;
  doc["mac"] = std::move(mac);
  doc["chosenWe"] = rep.chosenWe;
  Json bc = Json::object();
  bc["entropyGivenWe"] = report_real(rep.bc.chosenEntropy);
  bc["averageEntropy"] = report_real(rep.bc.averageEntropy);
  bc["deterministic"] = rep.bc.deterministic;
  bc["chainChecks"] = serialize_margins(rep.bc.chainChecks);
  bc["targetChecks"] = serialize_margins(rep.bc.targetChecks);
  bc["pass"] = rep.bc.pass;
  doc["bc"] = std::move(bc);
  doc["pass"] = rep.pass;
  return doc;
}

Json serialize_rate_set(const std::vector<std::vector<Rational>>& rates,
                        const std::vector<std::string>& sources) {
  Json doc = Json::object();
  doc["sources"] = sources;
  Json rows = Json::array();
  for (const auto& r : rates) {
    Json row = Json::array();
    for (const auto& v : r) row.push_back(format_rational(v));
    rows.push_back(std::move(row));
  }
  doc["achievable"] = std::move(rows);
  return doc;
}

Json serialize_delta_gap(const DeltaGapReport& rep) {
  Json doc = Json::object();
  doc["edge"] = rep.edge;
  doc["delta"] = format_rational(rep.delta);
  auto rates = [](const std::vector<std::vector<Rational>>& set) {
    Json rows = Json::array();
    for (const auto& r : set) {
      Json row = Json::array();
      for (const auto& v : r) row.push_back(format_rational(v));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  doc["achievableBefore"] = rates(rep.achievableBefore);
  doc["achievableAfter"] = rates(rep.achievableAfter);
  doc["worstGap"] = format_rational(rep.worstGap);
  doc["pass"] = rep.pass;
  return doc;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open \"" + path + "\"");
  Json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& ex) {
    throw std::invalid_argument("cannot parse \"" + path + "\": " + ex.what());
  }
  return doc;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write \"" + path + "\"");
  out << text;
}

}  // namespace netcode
