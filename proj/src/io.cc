// Copyright 2026 The lbubfl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "lbubfl/io.h"

#include <fstream>
#include <map>
#include <sstream>

namespace lbubfl {

namespace {

template <typename T>
T Field(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw Error(ErrorKind::kInput, std::string("missing field '") + key + "'");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kInput,
                std::string("field '") + key + "' has the wrong type: " + e.what());
  }
}

bool HasPoint(const Json& obj) {
  return obj.contains("x") && obj.contains("y");
}

Point PointOf(const Json& obj) {
  return {Field<double>(obj, "x"), Field<double>(obj, "y")};
}

}  // namespace

Instance InstanceFromJson(const Json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::kInput, "instance must be an object");
  if (doc.contains("version") && Field<int>(doc, "version") != kFormatVersion) {
    throw Error(ErrorKind::kInput, "unsupported instance version");
  }
  const int lower = Field<int>(doc, "L");
  const int upper = Field<int>(doc, "U");
  const Json& facilities = doc.contains("facilities") ? doc["facilities"] : Json();
  const Json& clients = doc.contains("clients") ? doc["clients"] : Json();
  if (!facilities.is_array() || !clients.is_array()) {
    throw Error(ErrorKind::kInput, "facilities and clients must be arrays");
  }
  std::vector<std::string> fids;
  std::vector<double> costs;
  std::vector<std::string> cids;
  bool all_points = true;
  for (const Json& f : facilities) {
    fids.push_back(Field<std::string>(f, "id"));
    costs.push_back(Field<double>(f, "cost"));
    all_points = all_points && HasPoint(f);
  }
  for (const Json& c : clients) {
    cids.push_back(Field<std::string>(c, "id"));
    all_points = all_points && HasPoint(c);
  }
  if (doc.contains("matrix")) {
    std::vector<double> matrix = Field<std::vector<double>>(doc, "matrix");
    const size_t n = fids.size() + cids.size();
    if (matrix.size() != n * n) {
      std::ostringstream msg;
      msg << "matrix has " << matrix.size() << " entries, expected " << n * n;
      throw Error(ErrorKind::kInput, msg.str());
    }
    return Instance::FromMatrix(fids, costs, cids, std::move(matrix), lower, upper);
  }
  if (!all_points) {
    throw Error(ErrorKind::kInput,
                "every point needs x and y when no matrix is given");
  }
  std::vector<Point> fp;
  std::vector<Point> cp;
  for (const Json& f : facilities) fp.push_back(PointOf(f));
  for (const Json& c : clients) cp.push_back(PointOf(c));
  return Instance::FromCoordinates(fids, costs, fp, cids, cp, lower, upper);
}

Json InstanceToJson(const Instance& inst) {
  Json doc;
  doc["version"] = kFormatVersion;
  doc["L"] = inst.lower();
  doc["U"] = inst.upper();
  Json facilities = Json::array();
  for (int i = 0; i < inst.num_facilities(); ++i) {
    Json f;
    f["id"] = inst.facility_id(i);
    f["cost"] = inst.open_cost(i);
    if (inst.has_coordinates()) {
      f["x"] = inst.point(inst.FacilityPoint(i)).x;
      f["y"] = inst.point(inst.FacilityPoint(i)).y;
    }
    facilities.push_back(f);
  }
  Json clients = Json::array();
  for (int j = 0; j < inst.num_clients(); ++j) {
    Json c;
    c["id"] = inst.client_id(j);
    if (inst.has_coordinates()) {
      c["x"] = inst.point(inst.ClientPoint(j)).x;
      c["y"] = inst.point(inst.ClientPoint(j)).y;
    }
    clients.push_back(c);
  }
  doc["facilities"] = facilities;
  doc["clients"] = clients;
  if (!inst.has_coordinates()) doc["matrix"] = inst.matrix();
  return doc;
}

Solution SolutionFromJson(const Instance& inst, const Json& doc) {
  Solution sol;
  for (const std::string& id : Field<std::vector<std::string>>(doc, "open")) {
    sol.open.push_back(inst.FacilityIndex(id));
  }
  std::sort(sol.open.begin(), sol.open.end());
  sol.assign.assign(inst.num_clients(), -1);
  const Json& assign = doc.contains("assign") ? doc["assign"] : Json();
  if (!assign.is_object()) throw Error(ErrorKind::kInput, "assign must be an object");
  for (auto it = assign.begin(); it != assign.end(); ++it) {
    if (!it.value().is_string()) {
      throw Error(ErrorKind::kInput, "assign values must be facility ids");
    }
    sol.assign[inst.ClientIndex(it.key())] =
        inst.FacilityIndex(it.value().get<std::string>());
  }
  ValidateSolution(inst, sol);
  return sol;
}

Json SolutionToJson(const Instance& inst, const Solution& sol) {
  Json doc;
  Json open = Json::array();
  for (int i : sol.open) open.push_back(inst.facility_id(i));
  doc["open"] = open;
  Json assign = Json::object();
  for (int j = 0; j < inst.num_clients(); ++j) {
    assign[inst.client_id(j)] = inst.facility_id(sol.assign[j]);
  }
  doc["assign"] = assign;
  doc["cost"] = Cost(inst, sol);
  BoundReport report = CheckBounds(inst, sol, 1.0, 1.0);
  doc["min_load"] = report.min_load;
  doc["max_load"] = report.max_load;
  return doc;
}

Json TriCriteriaToJson(const Instance& inst, const TriCriteriaSolution& tri) {
  Json doc = SolutionToJson(inst, tri.AsSolution());
  doc["stage"] = "tricriteria";
  doc["lp_objective"] = tri.lp_objective;
  doc["measured_alpha"] = tri.measured_alpha;
  doc["measured_beta"] = tri.measured_beta;
  doc["integral_lower"] = tri.integral_lower;
  doc["integral_upper"] = tri.integral_upper;
  doc["tightened_lower"] = tri.tightened_lower;
  Json clusters = Json::array();
  for (const Cluster& cl : tri.clusters) {
    Json c;
    c["center"] = inst.client_id(cl.center);
    c["kind"] = cl.kind == ClusterKind::kSparse ? "sparse" : "dense";
    c["demand"] = cl.demand;
    Json members = Json::array();
    for (int i : cl.members) members.push_back(inst.facility_id(i));
    c["members"] = members;
    clusters.push_back(c);
  }
  doc["clusters"] = clusters;
  Json rounded = Json::array();
  for (size_t k = 0; k < tri.rounded_open.size(); ++k) {
    rounded.push_back({{"facility", inst.facility_id(tri.rounded_open[k])},
                       {"fractional_load", tri.fractional_load[k]}});
  }
  doc["rounded_open"] = rounded;
  return doc;
}

Json I1ToJson(const I1Instance& i1) {
  Json doc = InstanceToJson(i1.AsInstance());
  doc["stage"] = "I1";
  Json location = Json::object();
  for (int j = 0; j < i1.base.num_clients(); ++j) {
    location[i1.base.client_id(j)] = i1.base.facility_id(i1.location[j]);
  }
  doc["location"] = location;
  return doc;
}

Json I2ToJson(const I2Instance& i2) {
  Json doc;
  doc["stage"] = "I2";
  doc["L"] = i2.lower;
  Json facilities = Json::array();
  for (int a = 0; a < i2.size(); ++a) {
    facilities.push_back({{"id", i2.facility_ids[a]},
                          {"count", i2.count[a]},
                          {"clients", i2.clients[a]}});
  }
  doc["facilities"] = facilities;
  doc["dist"] = i2.dist;
  return doc;
}

Json CflInstanceToJson(const CflInstance& icap) {
  Json doc;
  doc["stage"] = "Icap";
  doc["L"] = icap.lower;
  doc["delta"] = icap.delta;
  Json sites = Json::array();
  for (const CflSite& s : icap.sites) {
    sites.push_back({{"id", s.id},
                     {"role", SiteRoleName(s.role)},
                     {"demand", s.demand},
                     {"capacity", s.capacity},
                     {"open_cost", s.open_cost},
                     {"nn_dist", s.nn_dist},
                     {"clients", s.clients}});
  }
  doc["sites"] = sites;
  doc["dist"] = icap.dist;
  return doc;
}

Json CflSolutionToJson(const CflInstance& icap, const CflSolution& sol) {
  Json doc;
  doc["stage"] = "AScap";
  doc["solver"] = sol.solver;
  Json open = Json::array();
  for (int a = 0; a < sol.size(); ++a) {
    if (sol.open[a]) open.push_back(icap.sites[a].id);
  }
  doc["open"] = open;
  Json ship = Json::array();
  for (int a = 0; a < sol.size(); ++a) {
    for (int b = 0; b < sol.size(); ++b) {
      if (sol.Ship(a, b) == 0) continue;
      ship.push_back({{"demand", icap.sites[a].id},
                      {"supply", icap.sites[b].id},
                      {"amount", sol.Ship(a, b)}});
    }
  }
  doc["ship"] = ship;
  doc["cost"] = CflCost(icap, sol);
  return doc;
}

Json TreeFixToJson(const I2Instance& i2, const TreeFixResult& fix) {
  const std::vector<std::string>& ids = i2.facility_ids;
  Json doc;
  doc["stage"] = "treefix";
  Json nodes = Json::array();
  for (int a = 0; a < i2.size(); ++a) {
    Json node;
    node["id"] = ids[a];
    node["n"] = i2.count[a];
    node["pi"] = fix.type1.loads[a];
    node["in_p"] = static_cast<bool>(fix.forest.in_p[a]);
    node["eta"] = fix.forest.eta[a] >= 0 ? Json(ids[fix.forest.eta[a]]) : Json();
    node["partner"] =
        fix.forest.partner[a] >= 0 ? Json(ids[fix.forest.partner[a]]) : Json();
    node["depth"] = fix.forest.depth[a];
    node["edge_cost"] = fix.forest.edge_cost[a];
    node["opened"] = static_cast<bool>(fix.opened[a]);
    node["final_count"] = fix.final_held[a].size();
    nodes.push_back(node);
  }
  doc["nodes"] = nodes;
  Json rho = Json::array();
  for (int a = 0; a < i2.size(); ++a) {
    for (int b = 0; b < i2.size(); ++b) {
      if (a != b && fix.type1.Rho(a, b) > 0) {
        rho.push_back({{"from", ids[a]}, {"to", ids[b]}, {"count", fix.type1.Rho(a, b)}});
      }
    }
  }
  doc["type1"] = rho;
  Json events = Json::array();
  for (const TreeEvent& e : fix.events) {
    events.push_back(
        {{"kind", e.kind}, {"from", ids[e.from]}, {"to", ids[e.to]}, {"count", e.count}});
  }
  doc["events"] = events;
  const TreeFixChecks& c = fix.checks;
  doc["checks"] = {{"claim_out", c.claim_out},     {"claim_in", c.claim_in},
                   {"observation", c.observation}, {"forest_shape", c.forest_shape},
                   {"non_root_2l", c.non_root_2l}, {"sibling", c.sibling},
                   {"edge_l", c.edge_l},           {"p_root", c.p_root}};
  return doc;
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kInput, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kInput, path + ": " + e.what());
  }
}

void WriteJsonFile(const std::string& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kInput, "cannot write " + path);
  out << doc.dump(2) << "\n";
}

}  // namespace lbubfl
