#pragma once

#include "qball/potential.hpp"

#include <map>
#include <string>
#include <vector>

namespace qball {

// Flat key = value text with dotted section prefixes, '#' comments, and
// rational literals (e.g. -1/3) accepted wherever a number is expected.
//
//   potential.m      = 1
//   potential.coeffs = 3:-1/3, 4:1/4
//   grid.r_max       = 30
//   grid.n           = 3000
//   solver.delta     = 2e-4
//   sweep.deltas     = 1.25e-5, 2.5e-5, 5e-5
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text);

    bool has(const std::string& key) const;
    std::string get_str(const std::string& key, const std::string& dflt) const;
    std::string req_str(const std::string& key) const;
    double get_num(const std::string& key, double dflt) const;
    double req_num(const std::string& key) const;
    int get_int(const std::string& key, int dflt) const;
    std::vector<double> get_num_list(const std::string& key) const; // empty if absent

    // "k:a, k:a, ..." exponent:coefficient pairs.
    Potential potential() const;

    const std::string& raw_text() const { return raw_; }

private:
    std::map<std::string, std::string> kv_;
    std::string raw_;
};

// Parses a double, accepting the rational form p/q.  Throws ConfigError.
double parse_number(const std::string& text, const std::string& context);

} // namespace qball
