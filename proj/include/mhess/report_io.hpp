#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "mhess/admissibility.hpp"
#include "mhess/domain.hpp"
#include "mhess/grid.hpp"
#include "mhess/inequalities.hpp"
#include "mhess/integrals.hpp"
#include "mhess/radial.hpp"

namespace mhess {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

Json to_json(const Domain& d);
Domain domain_from_json(const Json& j);

Json to_json(const RadialFunction& w);
RadialFunction radial_from_json(const Json& j);

Json to_json(const GridFunction2D& u);
GridFunction2D grid_from_json(const Json& j);

Json to_json(const AdmissibilityReport& rep);
Json to_json(const FunctionalValue& fv);
Json to_json(const InequalityReport& rep);

// CSV emitters. Radial profiles are "r,w" rows; 2-D fields are long-format
// "r,theta,value" rows with the pole written once.
std::string radial_csv(const RadialFunction& w);
std::string grid_csv(const GridFunction2D& u);
std::string reports_csv(const std::vector<InequalityReport>& reports);

// Writes through a temp file and renames, so readers never see partial data.
void atomic_write(const std::filesystem::path& path, const std::string& content);

}  // namespace mhess
