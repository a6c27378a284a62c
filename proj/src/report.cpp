#include "dirilab/report.hpp"

#include <algorithm>
#include <cmath>

namespace dirilab {

void CheckReport::compare() {
    abs_err = std::abs(lhs - rhs);
    rel_err = abs_err / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
}

CheckReport make_report(std::string name, double lhs, double rhs) {
    CheckReport r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.compare();
    return r;
}

json to_json(const CheckReport& r) {
    json j;
    j["name"] = r.name;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["abs_err"] = r.abs_err;
    j["rel_err"] = r.rel_err;
    j["tolerance"] = r.tolerance;
    j["verdict"] = r.verdict ? "pass" : "fail";
    j["params"] = r.params;
    json tr = json::array();
    for (auto [x, y] : r.trace) tr.push_back({x, y});
    j["trace"] = tr;
    if (!r.extra.empty()) j["extra"] = r.extra;
    return j;
}

} // namespace dirilab
