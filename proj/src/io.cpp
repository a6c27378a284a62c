#include "dirilab/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "dirilab/corpus.hpp"

namespace dirilab {

namespace {
std::string escape_token(const std::string& t) {
    std::string out;
    for (char c : t) {
        if (c == '~')
            out += "~0";
        else if (c == '/')
            out += "~1";
        else
            out += c;
    }
    return out;
}

struct Frame {
    bool array = false;
    long index = -1;
    std::string key;
    std::set<std::string> keys;
};

std::string frames_pointer(const std::vector<Frame>& st) {
    std::string p;
    for (std::size_t i = 0; i + 1 < st.size(); ++i)
        p += st[i].array ? "/" + std::to_string(st[i].index) : "/" + escape_token(st[i].key);
    return p;
}

const json& member(const json& obj, const std::string& ptr, const char* key) {
    if (!obj.is_object()) schema_error(ptr, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) schema_error(pointer_join(ptr, key), "missing required field");
    return *it;
}

double as_number(const json& v, const std::string& ptr) {
    if (!v.is_number()) schema_error(ptr, "expected a number");
    double x = v.get<double>();
    if (!std::isfinite(x)) schema_error(ptr, "expected a finite number");
    return x;
}

cplx coefficient(const json& t, const std::string& ptr) {
    double re = as_number(member(t, ptr, "re"), pointer_join(ptr, "re"));
    double im = t.contains("im") ? as_number(t["im"], pointer_join(ptr, "im")) : 0.0;
    return {re, im};
}

const json& terms_array(const json& j, const std::string& ptr) {
    if (!j.is_object()) schema_error(ptr, "expected an object with a \"terms\" array");
    check_keys(j, ptr, {"terms"});
    const json& t = member(j, ptr, "terms");
    if (!t.is_array()) schema_error(pointer_join(ptr, "terms"), "expected an array");
    return t;
}

long long as_integer(const json& v, const std::string& ptr) {
    if (!v.is_number_integer()) schema_error(ptr, "expected an integer");
    return v.get<long long>();
}
} // namespace

std::string pointer_join(const std::string& pointer, const std::string& token) {
    return pointer + "/" + escape_token(token);
}

std::string pointer_join(const std::string& pointer, std::size_t index) {
    return pointer + "/" + std::to_string(index);
}

void schema_error(const std::string& pointer, const std::string& msg) {
    fail(ErrorKind::InvalidInput, (pointer.empty() ? std::string("/") : pointer) + ": " + msg);
}

json parse_json_strict(const std::string& text) {
    std::vector<Frame> st;
    auto cb = [&st](int, json::parse_event_t ev, json& parsed) {
        auto bump = [&st] {
            if (!st.empty() && st.back().array) ++st.back().index;
        };
        switch (ev) {
        case json::parse_event_t::object_start:
            bump();
            st.push_back({});
            break;
        case json::parse_event_t::array_start:
            bump();
            st.push_back({true, -1, {}, {}});
            break;
        case json::parse_event_t::key: {
            auto k = parsed.get<std::string>();
            auto& top = st.back();
            if (!top.keys.insert(k).second) {
                schema_error(frames_pointer(st) + "/" + escape_token(k), "duplicate key");
            }
            top.key = k;
            break;
        }
        case json::parse_event_t::value:
            bump();
            break;
        case json::parse_event_t::object_end:
        case json::parse_event_t::array_end:
            st.pop_back();
            break;
        }
        return true;
    };
    try {
        return json::parse(text, cb);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::InvalidInput, std::string("malformed JSON: ") + e.what());
    }
}

json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::InvalidInput, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_strict(ss.str());
}

void check_keys(const json& obj, const std::string& ptr, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) schema_error(ptr, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) schema_error(pointer_join(ptr, it.key()), "unknown field");
    }
}

double get_number(const json& obj, const std::string& ptr, const char* key, double fallback) {
    auto it = obj.find(key);
    return it == obj.end() ? fallback : as_number(*it, pointer_join(ptr, key));
}

double require_number(const json& obj, const std::string& ptr, const char* key) {
    return as_number(member(obj, ptr, key), pointer_join(ptr, key));
}

int get_int(const json& obj, const std::string& ptr, const char* key, int fallback) {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    long long v = as_integer(*it, pointer_join(ptr, key));
    if (v < INT32_MIN || v > INT32_MAX) schema_error(pointer_join(ptr, key), "integer out of range");
    return static_cast<int>(v);
}

bool get_bool(const json& obj, const std::string& ptr, const char* key, bool fallback) {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_boolean()) schema_error(pointer_join(ptr, key), "expected a boolean");
    return it->get<bool>();
}

std::string get_string(const json& obj, const std::string& ptr, const char* key, const std::string& fallback) {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_string()) schema_error(pointer_join(ptr, key), "expected a string");
    return it->get<std::string>();
}

std::vector<double> get_numbers(const json& obj, const std::string& ptr, const char* key, std::vector<double> fallback) {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    std::string p = pointer_join(ptr, key);
    if (!it->is_array()) schema_error(p, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < it->size(); ++i) out.push_back(as_number((*it)[i], pointer_join(p, i)));
    return out;
}

cplx get_complex(const json& obj, const std::string& ptr, const char* key, cplx fallback) {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    std::string p = pointer_join(ptr, key);
    if (it->is_number()) return {as_number(*it, p), 0.0};
    if (!it->is_array() || it->size() != 2) schema_error(p, "expected a number or [re, im]");
    return {as_number((*it)[0], pointer_join(p, 0)), as_number((*it)[1], pointer_join(p, 1))};
}

DirichletPolynomial polynomial_from_json(const json& j, const std::string& ptr) {
    const json& arr = terms_array(j, ptr);
    std::string ap = pointer_join(ptr, "terms");
    std::vector<DirichletTerm> terms;
    std::set<long long> seen;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        std::string tp = pointer_join(ap, i);
        check_keys(arr[i], tp, {"n", "re", "im"});
        long long n = as_integer(member(arr[i], tp, "n"), pointer_join(tp, "n"));
        if (n < 1) schema_error(pointer_join(tp, "n"), "n must be a positive integer");
        if (!seen.insert(n).second) schema_error(pointer_join(tp, "n"), "duplicate n");
        terms.push_back({static_cast<std::uint64_t>(n), coefficient(arr[i], tp)});
    }
    return DirichletPolynomial(std::move(terms));
}

GeneralizedSeries generalized_from_json(const json& j, const std::string& ptr) {
    const json& arr = terms_array(j, ptr);
    std::string ap = pointer_join(ptr, "terms");
    std::vector<GeneralizedTerm> terms;
    std::set<std::pair<long long, long long>> seen;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        std::string tp = pointer_join(ap, i);
        check_keys(arr[i], tp, {"a", "b", "re", "im"});
        long long a = as_integer(member(arr[i], tp, "a"), pointer_join(tp, "a"));
        long long b = as_integer(member(arr[i], tp, "b"), pointer_join(tp, "b"));
        if (std::abs(a) > 1 << 20 || std::abs(b) > 1 << 20) schema_error(tp, "exponent out of range");
        if (!seen.insert({a, b}).second) schema_error(tp, "duplicate (a,b) pair");
        terms.push_back({static_cast<int>(a), static_cast<int>(b), coefficient(arr[i], tp)});
    }
    try {
        return GeneralizedSeries(std::move(terms));
    } catch (const Error& e) {
        schema_error(ap, e.what());
    }
}

Character character_from_json(const json& j, const std::string& ptr) {
    check_keys(j, ptr, {"angles"});
    const json& arr = member(j, ptr, "angles");
    std::string ap = pointer_join(ptr, "angles");
    if (!arr.is_array()) schema_error(ap, "expected an array");
    std::map<std::uint64_t, double> angles;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        std::string tp = pointer_join(ap, i);
        check_keys(arr[i], tp, {"p", "theta"});
        long long p = as_integer(member(arr[i], tp, "p"), pointer_join(tp, "p"));
        if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) schema_error(pointer_join(tp, "p"), "p must be prime");
        double th = as_number(member(arr[i], tp, "theta"), pointer_join(tp, "theta"));
        if (!angles.emplace(static_cast<std::uint64_t>(p), th).second) schema_error(pointer_join(tp, "p"), "duplicate prime");
    }
    return Character(std::move(angles));
}

ExpSeries series_from_json(const json& j, const std::string& ptr) {
    if (j.is_string()) {
        auto name = j.get<std::string>();
        if (!corpus_has(name)) schema_error(ptr, "unknown corpus entry \"" + name + "\"");
        return corpus_series(name);
    }
    if (j.is_object() && j.contains("terms") && j["terms"].is_array() && !j["terms"].empty() &&
        j["terms"][0].is_object() && j["terms"][0].contains("a"))
        return generalized_from_json(j, ptr);
    return polynomial_from_json(j, ptr);
}

json to_json(const DirichletPolynomial& f) {
    json arr = json::array();
    for (const auto& t : f.terms()) arr.push_back({{"n", t.n}, {"re", t.a.real()}, {"im", t.a.imag()}});
    return {{"terms", arr}};
}

json to_json(const GeneralizedSeries& f) {
    json arr = json::array();
    for (const auto& t : f.terms()) arr.push_back({{"a", t.a}, {"b", t.b}, {"re", t.c.real()}, {"im", t.c.imag()}});
    return {{"terms", arr}};
}

json to_json(const Character& chi) {
    json arr = json::array();
    for (const auto& [p, th] : chi.angles()) arr.push_back({{"p", p}, {"theta", th}});
    return {{"angles", arr}};
}

std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
    out += "\n";
    char buf[64];
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", r[i]);
            out += (i ? "," : "");
            out += buf;
        }
        out += "\n";
    }
    return out;
}

void write_files_atomic(const std::string& dir, const std::vector<std::pair<std::string, std::string>>& files) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) fail(ErrorKind::InvalidInput, "cannot create output directory " + dir);
    std::vector<std::pair<fs::path, fs::path>> staged;
    auto cleanup = [&] {
        for (auto& [tmp, dst] : staged) fs::remove(tmp, ec);
    };
    for (const auto& [name, content] : files) {
        fs::path dst = fs::path(dir) / name;
        fs::path tmp = dst;
        tmp += ".tmp";
        std::ofstream out(tmp, std::ios::binary);
        out << content;
        out.close();
        staged.emplace_back(tmp, dst);
        if (!out) {
            cleanup();
            fail(ErrorKind::InvalidInput, "cannot write " + dst.string());
        }
    }
    for (auto& [tmp, dst] : staged) fs::rename(tmp, dst);
}

} // namespace dirilab
