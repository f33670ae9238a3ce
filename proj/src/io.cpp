#include "qball/io.hpp"

#include "qball/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qball {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void JsonWriter::comma() {
    if (!first_.empty()) {
        if (!first_.back()) out_ += ',';
        first_.back() = false;
    }
}

void JsonWriter::key(const std::string& k) {
    comma();
    out_ += '"';
    out_ += k;
    out_ += "\":";
}

JsonWriter& JsonWriter::begin_object() {
    comma();
    out_ += '{';
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::begin_object(const std::string& k) {
    key(k);
    out_ += '{';
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    out_ += '}';
    first_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::begin_array(const std::string& k) {
    key(k);
    out_ += '[';
    first_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    out_ += ']';
    first_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& k, double v) {
    key(k);
    out_ += fmt17(v);
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& k, int v) {
    key(k);
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& k, long long v) {
    key(k);
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& k, bool v) {
    key(k);
    out_ += v ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::field(const std::string& k, const std::string& v) {
    key(k);
    out_ += '"';
    for (char c : v) {
        if (c == '"' || c == '\\') out_ += '\\';
        if (c == '\n') {
            out_ += "\\n";
            continue;
        }
        out_ += c;
    }
    out_ += '"';
    return *this;
}

JsonWriter& JsonWriter::element(double v) {
    comma();
    out_ += fmt17(v);
    return *this;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open for writing: " + path);
    f << content;
    if (!f) throw Error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
    std::string out = header;
    out += '\n';
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += fmt17(row[i]);
        }
        out += '\n';
    }
    write_text_file(path, out);
}

std::vector<std::vector<double>> read_csv_columns(const std::string& path, int expect_cols) {
    const std::string text = read_text_file(path);
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw Error("empty csv: " + path);
    std::vector<std::vector<double>> cols(expect_cols);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        for (int i = 0; i < expect_cols; ++i) {
            if (!std::getline(ls, cell, ',')) throw Error("short row in csv: " + path);
            cols[i].push_back(std::stod(cell));
        }
    }
    return cols;
}

std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

} // namespace qball
