#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include <json.hpp>

#include "dirilab/expseries.hpp"
#include "dirilab/series.hpp"

namespace dirilab {

using json = nlohmann::json;

// Parses JSON text, rejecting duplicate object keys. Errors carry a JSON-pointer path.
json parse_json_strict(const std::string& text);
json read_json_file(const std::string& path);

[[noreturn]] void schema_error(const std::string& pointer, const std::string& msg);
std::string pointer_join(const std::string& pointer, const std::string& token);
std::string pointer_join(const std::string& pointer, std::size_t index);

// schema helpers; `ptr` is the JSON pointer of `obj`
void check_keys(const json& obj, const std::string& ptr, std::initializer_list<const char*> allowed);
double get_number(const json& obj, const std::string& ptr, const char* key, double fallback);
double require_number(const json& obj, const std::string& ptr, const char* key);
int get_int(const json& obj, const std::string& ptr, const char* key, int fallback);
bool get_bool(const json& obj, const std::string& ptr, const char* key, bool fallback);
std::string get_string(const json& obj, const std::string& ptr, const char* key, const std::string& fallback);
std::vector<double> get_numbers(const json& obj, const std::string& ptr, const char* key, std::vector<double> fallback);
cplx get_complex(const json& obj, const std::string& ptr, const char* key, cplx fallback);

// {"terms":[{"n":2,"re":1.0,"im":0.0}, ...]}
DirichletPolynomial polynomial_from_json(const json& j, const std::string& ptr = "");
// {"terms":[{"a":1,"b":0,"re":...,"im":...}, ...]}
GeneralizedSeries generalized_from_json(const json& j, const std::string& ptr = "");
// {"angles":[{"p":2,"theta":3.14159}, ...]}
Character character_from_json(const json& j, const std::string& ptr = "");
// corpus name, polynomial or generalized series (detected from the term keys)
ExpSeries series_from_json(const json& j, const std::string& ptr = "");

json to_json(const DirichletPolynomial& f);
json to_json(const GeneralizedSeries& f);
json to_json(const Character& chi);

// header plus rows, full double precision
std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

// Writes all files or none: each goes to a temporary name first and is renamed at the end.
void write_files_atomic(const std::string& dir, const std::vector<std::pair<std::string, std::string>>& files);

} // namespace dirilab
