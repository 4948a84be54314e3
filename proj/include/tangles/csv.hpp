#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

namespace tangles {

// Deterministic CSV output: fixed 9-significant-digit formatting, '.'
// decimal, comma separators, caller-controlled row order.
class CsvWriter {
public:
    static std::string format(double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.9g", v);
        return buf;
    }

    explicit CsvWriter(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void comment(const std::string& text) { comments_.push_back(text); }

    void row(const std::vector<std::string>& cells) {
        std::string line;
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) line += ',';
            line += cells[i];
        }
        rows_.push_back(std::move(line));
    }

    std::string str() const {
        std::string out;
        for (const auto& c : comments_) out += "# " + c + "\n";
        for (size_t i = 0; i < columns_.size(); ++i) {
            if (i) out += ',';
            out += columns_[i];
        }
        out += '\n';
        for (const auto& r : rows_) out += r + "\n";
        return out;
    }

    void write(const std::string& path) const {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file " + path);
        f << str();
    }

private:
    std::vector<std::string> columns_;
    std::vector<std::string> comments_;
    std::vector<std::string> rows_;
};

// FNV-1a over the canonical serialized configuration.
inline uint64_t config_hash(const std::string& canonical) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hash_hex(uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace tangles
