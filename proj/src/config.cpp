#include "isoprof/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "isoprof/expression.hpp"
#include "isoprof/io.hpp"

namespace isoprof {

using nlohmann::json;

std::string format_g12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

WarpedSurface surface_from_json(const std::string& text) {
  json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("catalog"))
    throw DomainError("surface config: missing \"catalog\"");
  Catalog c = catalog_from_name(doc["catalog"].get<std::string>());
  double t_num = doc.value("T_num", -1.0);
  if (c != Catalog::custom) {
    WarpedSurface W = WarpedSurface::make(c);
    if (t_num > 0.0) W.set_t_num(t_num);
    return W;
  }
  if (!doc.contains("warp") || !doc["warp"].is_object())
    throw DomainError("surface config: custom catalog needs a \"warp\" object");
  const json& w = doc["warp"];
  for (const char* key : {"phi", "dphi", "ddphi"})
    if (!w.contains(key))
      throw DomainError(std::string("surface config: warp missing \"") + key +
                        "\"");
  if (!(t_num > 0.0))
    throw DomainError("surface config: custom warp requires T_num > 0");
  Warp warp;
  warp.phi = parse_expression(w["phi"].get<std::string>());
  warp.dphi = parse_expression(w["dphi"].get<std::string>());
  warp.ddphi = parse_expression(w["ddphi"].get<std::string>());
  if (w.contains("dddphi0")) warp.dddphi0 = w["dddphi0"].get<double>();
  return WarpedSurface::custom(std::move(warp), t_num);
}

std::string scenario_surface_json(const std::string& text) {
  json doc = parse_json(text);
  if (doc.is_object() && doc.contains("surface"))
    return doc["surface"].dump();
  return text;
}

PlacementScenario scenario_from_json(const std::string& text,
                                     const WarpedSurface& surface) {
  json doc = parse_json(text);
  if (!doc.is_object())
    throw DomainError("scenario config: expected a JSON object");
  PlacementScenario sc;
  sc.surface = &surface;
  std::vector<Interval> ivs;
  if (doc.contains("E")) {
    for (const auto& pair : doc["E"]) {
      if (!pair.is_array() || pair.size() != 2)
        throw DomainError("scenario config: E must be a list of [a, b] pairs");
      ivs.push_back({pair[0].get<double>(), pair[1].get<double>()});
    }
  }
  sc.E = SymmetricRegion(std::move(ivs));
  for (const char* key : {"b", "dD", "r0"})
    if (!doc.contains(key))
      throw DomainError(std::string("scenario config: missing \"") + key +
                        "\"");
  sc.b = doc["b"].get<double>();
  sc.dD = doc["dD"].get<double>();
  sc.r0 = doc["r0"].get<double>();
  sc.inj_override = doc.value("inj_override", -1.0);
  sc.validate();
  return sc;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write file: " + path);
  out << content;
}

}  // namespace isoprof
