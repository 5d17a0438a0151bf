#include "mhess/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace mhess {

namespace {

// shortest round-trip formatting, stable across runs
std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

Json to_json(const Domain& d) {
  Json j;
  switch (d.kind()) {
    case Domain::Kind::Ball:
      j["kind"] = "ball";
      j["n"] = d.dim();
      j["R"] = d.radius();
      break;
    case Domain::Kind::Disc:
      j["kind"] = "disc";
      j["R"] = d.radius();
      break;
    case Domain::Kind::Ellipse:
      j["kind"] = "ellipse";
      j["a"] = d.semi_axis_a();
      j["b"] = d.semi_axis_b();
      break;
  }
  return j;
}

Domain domain_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "ball") return Domain::ball(j.at("n").get<int>(), j.at("R").get<double>());
  if (kind == "disc") return Domain::disc(j.at("R").get<double>());
  if (kind == "ellipse")
    return Domain::ellipse(j.at("a").get<double>(), j.at("b").get<double>());
  throw std::invalid_argument("domain_from_json: unknown kind '" + kind + "'");
}

Json to_json(const RadialFunction& w) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "radial";
  j["R"] = w.radius();
  j["N"] = w.size();
  j["values"] = w.values();
  return j;
}

RadialFunction radial_from_json(const Json& j) {
  require(j.at("kind").get<std::string>() == "radial",
          "radial_from_json: not a radial profile");
  auto values = j.at("values").get<std::vector<double>>();
  require(static_cast<int>(values.size()) == j.at("N").get<int>(),
          "radial_from_json: node count mismatch");
  return RadialFunction(j.at("R").get<double>(), std::move(values));
}

Json to_json(const GridFunction2D& u) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "grid2d";
  j["domain"] = to_json(u.domain());
  j["nr"] = u.nr();
  j["ntheta"] = u.ntheta();
  j["values"] = u.values();
  return j;
}

GridFunction2D grid_from_json(const Json& j) {
  require(j.at("kind").get<std::string>() == "grid2d", "grid_from_json: not a 2-D field");
  const Domain d = domain_from_json(j.at("domain"));
  const int nr = j.at("nr").get<int>();
  const int ntheta = j.at("ntheta").get<int>();
  auto values = j.at("values").get<std::vector<double>>();
  PolarGrid g(d, nr, ntheta);
  require(values.size() == g.node_count(), "grid_from_json: node count mismatch");
  return GridFunction2D(std::move(g), std::move(values));
}

Json to_json(const AdmissibilityReport& rep) {
  Json j;
  j["m"] = rep.m;
  j["admissible"] = rep.admissible;
  j["worst_node"] = rep.worst_node;
  j["worst_order"] = rep.worst_order;
  j["worst_value"] = rep.worst_value;
  j["sign_checked"] = rep.sign_checked;
  j["margin"] = rep.margin;
  return j;
}

Json to_json(const FunctionalValue& fv) {
  Json j;
  j["name"] = fv.name;
  j["value"] = fv.value;
  j["m"] = fv.m;
  if (fv.l) j["l"] = *fv.l;
  j["grid_spec"] = fv.grid_spec;
  j["admissible_input"] = fv.admissible_input;
  return j;
}

Json to_json(const InequalityReport& rep) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["name"] = rep.name;
  j["m"] = rep.m;
  j["l"] = rep.l;
  j["lhs"] = rep.lhs;
  j["rhs"] = rep.rhs;
  j["margin"] = rep.margin;
  j["orientation"] = rep.orientation;
  j["tolerance"] = rep.tolerance;
  j["verdict"] = rep.pass ? "pass" : "fail";
  j["inputs"] = rep.inputs;
  return j;
}

std::string radial_csv(const RadialFunction& w) {
  std::ostringstream os;
  os << "r,w\n";
  for (int i = 0; i < w.size(); ++i) os << fmt(w.r(i)) << "," << fmt(w[i]) << "\n";
  return os.str();
}

std::string grid_csv(const GridFunction2D& u) {
  std::ostringstream os;
  os << "r,theta,value\n";
  os << "0,0," << fmt(u.at(0, 0)) << "\n";
  for (int i = 1; i < u.nr(); ++i)
    for (int j = 0; j < u.ntheta(); ++j)
      os << fmt(u.grid().rho(i)) << "," << fmt(u.grid().theta(j)) << "," << fmt(u.at(i, j))
         << "\n";
  return os.str();
}

std::string reports_csv(const std::vector<InequalityReport>& reports) {
  std::ostringstream os;
  os << "name,m,l,lhs,rhs,margin,verdict\n";
  for (const auto& r : reports) {
    os << r.name << "," << r.m << "," << r.l << "," << fmt(r.lhs) << "," << fmt(r.rhs) << ","
       << fmt(r.margin) << "," << (r.pass ? "pass" : "fail") << "\n";
  }
  return os.str();
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(out.good(), "atomic_write: cannot open " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

}  // namespace mhess
