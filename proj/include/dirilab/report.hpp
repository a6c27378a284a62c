#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace dirilab {

using json = nlohmann::json;

struct CheckReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_err = 0.0;
    double rel_err = 0.0;
    double tolerance = 0.0;
    bool verdict = false;
    json params = json::object();
    std::vector<std::pair<double, double>> trace;
    json extra = json::object();

    // fills abs_err and rel_err from lhs and rhs
    void compare();
};

CheckReport make_report(std::string name, double lhs, double rhs);
json to_json(const CheckReport& r);

} // namespace dirilab
