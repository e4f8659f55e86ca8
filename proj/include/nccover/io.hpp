#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "nccover/algebra.hpp"
#include "nccover/frames.hpp"
#include "nccover/torus.hpp"

namespace nccover {

using json = nlohmann::ordered_json;

json matrix_to_json(const Mat& m);
Mat matrix_from_json(const json& j);

json algebra_to_json(const StarAlgebra& a);
StarAlgebra algebra_from_json(const json& j);
json action_to_json(const GroupAction& g);
GroupAction action_from_json(const StarAlgebra& a, const json& j);

json torus_to_json(const TorusElement& x);
TorusElement torus_from_json(const json& j);

json report_to_json(const RiggedFrameReport& r);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);
std::vector<std::vector<double>> read_csv(const std::string& path);

}  // namespace nccover
