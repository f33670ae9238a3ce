#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qball {

// Doubles are serialized with 17 significant digits everywhere: lossless
// round-trip, and identical configs produce byte-identical numeric output.
std::string fmt17(double x);

// Minimal ordered JSON emitter.  Key order is insertion order, doubles go
// through fmt17; that is what makes repeated runs byte-comparable.
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array(const std::string& key);
    JsonWriter& begin_object(const std::string& key);
    JsonWriter& end_array();
    JsonWriter& field(const std::string& key, double v);
    JsonWriter& field(const std::string& key, int v);
    JsonWriter& field(const std::string& key, long long v);
    JsonWriter& field(const std::string& key, bool v);
    JsonWriter& field(const std::string& key, const std::string& v);
    JsonWriter& element(double v);
    std::string str() const { return out_; }

private:
    void comma();
    void key(const std::string& k);
    std::string out_;
    std::vector<bool> first_; // per nesting level
};

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// CSV with a one-line header; all numbers through fmt17.
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows);

// Reads a numeric CSV written by write_csv; returns column-major data.
std::vector<std::vector<double>> read_csv_columns(const std::string& path, int expect_cols);

// FNV-1a 64-bit hash of a byte string, hex-encoded (config fingerprinting).
std::string fnv1a64_hex(const std::string& bytes);

} // namespace qball
