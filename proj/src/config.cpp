#include "qball/config.hpp"

#include "qball/errors.hpp"
#include "qball/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace qball {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace((unsigned char)s[a])) ++a;
    while (b > a && std::isspace((unsigned char)s[b - 1])) --b;
    return s.substr(a, b - a);
}

} // namespace

double parse_number(const std::string& text, const std::string& context) {
    const std::string t = trim(text);
    if (t.empty()) throw ConfigError(context + ": empty number");
    const size_t slash = t.find('/');
    auto one = [&](const std::string& part) {
        char* end = nullptr;
        const double v = std::strtod(part.c_str(), &end);
        if (end != part.c_str() + part.size() || part.empty())
            throw ConfigError(context + ": cannot parse number '" + part + "'");
        return v;
    };
    if (slash == std::string::npos) return one(t);
    const double num = one(trim(t.substr(0, slash)));
    const double den = one(trim(t.substr(slash + 1)));
    if (den == 0.0) throw ConfigError(context + ": division by zero in '" + t + "'");
    return num / den;
}

Config Config::parse_string(const std::string& text) {
    Config c;
    c.raw_ = text;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        if (c.kv_.count(key))
            throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        c.kv_[key] = val;
    }
    return c;
}

Config Config::parse_file(const std::string& path) {
    std::string text;
    try {
        text = read_text_file(path);
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    return parse_string(text);
}

bool Config::has(const std::string& key) const { return kv_.count(key) != 0; }

std::string Config::get_str(const std::string& key, const std::string& dflt) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? dflt : it->second;
}

std::string Config::req_str(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) throw ConfigError("missing required key '" + key + "'");
    return it->second;
}

double Config::get_num(const std::string& key, double dflt) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? dflt : parse_number(it->second, key);
}

double Config::req_num(const std::string& key) const { return parse_number(req_str(key), key); }

int Config::get_int(const std::string& key, int dflt) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return dflt;
    const double v = parse_number(it->second, key);
    if (v != std::floor(v)) throw ConfigError(key + ": expected an integer, got " + it->second);
    return (int)v;
}

std::vector<double> Config::get_num_list(const std::string& key) const {
    std::vector<double> out;
    auto it = kv_.find(key);
    if (it == kv_.end()) return out;
    std::istringstream ss(it->second);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(parse_number(cell, key));
    return out;
}

Potential Config::potential() const {
    Potential p = Potential::reference();
    p.m = get_num("potential.m", 1.0);
    if (has("potential.coeffs")) {
        p.coeffs.clear();
        std::istringstream ss(req_str("potential.coeffs"));
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            const size_t colon = cell.find(':');
            if (colon == std::string::npos)
                throw ConfigError("potential.coeffs: expected exponent:coefficient pairs");
            const double k = parse_number(cell.substr(0, colon), "potential.coeffs");
            if (k != std::floor(k) || k < 1)
                throw ConfigError("potential.coeffs: exponents must be positive integers");
            p.coeffs.emplace_back((int)k, parse_number(cell.substr(colon + 1), "potential.coeffs"));
        }
    }
    if (!(p.m > 0.0)) throw ConfigError("potential.m must be positive");
    return p;
}

} // namespace qball
