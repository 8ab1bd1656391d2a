#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "socprec/experiments.hpp"
#include "socprec/tables.hpp"
#include "socprec/theory.hpp"

namespace socprec {

nlohmann::ordered_json to_json(const RecoveryRegime& regime);
nlohmann::ordered_json to_json(const TheoryPoint& point);
nlohmann::ordered_json to_json(const ExperimentReport& report);
nlohmann::ordered_json to_json(const TableResult& table);

/// Header: alpha,beta_over_alpha,r_mode,stat,empirical,stderr,theory,pass
std::string csv_header();
std::string to_csv_rows(const ExperimentReport& report);
std::string to_csv_rows(const TableResult& table);

/// Header: rho,beta_w,alpha,mode. Only reached points are written.
std::string contour_csv(const std::vector<ContourPoint>& points);

}  // namespace socprec
