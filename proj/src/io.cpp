#include "abmod/io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include "abmod/errors.hpp"

namespace abmod {

ModuleDescription ModuleDescription::from_module(const AbModule& m, std::string name) {
    ModuleDescription d;
    d.rank = m.rank();
    d.truncation = m.trunc();
    d.name = std::move(name);
    d.a_matrix = m.a_matrix();
    return d;
}

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string current;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(current);
            current.clear();
        } else if (c != '\r') {
            current.push_back(c);
        }
    }
    if (!current.empty()) lines.push_back(current);
    return lines;
}

std::string trimmed(const std::string& s) {
    size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

int parse_int_field(const std::string& value, int line) {
    std::string t = trimmed(value);
    if (t.empty()) throw ParseError(line, 1, "missing integer value");
    try {
        size_t used = 0;
        int v = std::stoi(t, &used);
        if (used != t.size()) throw ParseError(line, 1, "trailing junk after integer");
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError(line, 1, "invalid integer '" + t + "'");
    }
}

}  // namespace

ModuleDescription parse_module_description(const std::string& text) {
    std::vector<std::string> lines = split_lines(text);
    if (lines.empty() || trimmed(lines[0]) != "abmod/1")
        throw ParseError(1, 1, "expected schema header 'abmod/1'");
    ModuleDescription d;
    bool have_rank = false, have_trunc = false;
    size_t i = 1;
    for (; i < lines.size(); ++i) {
        std::string line = trimmed(lines[i]);
        int lineno = static_cast<int>(i) + 1;
        if (line.empty()) continue;
        size_t colon = line.find(':');
        if (colon == std::string::npos)
            throw ParseError(lineno, 1, "expected 'key: value'");
        std::string key = trimmed(line.substr(0, colon));
        std::string value = line.substr(colon + 1);
        if (key == "rank") {
            d.rank = parse_int_field(value, lineno);
            if (d.rank < 1) throw ParseError(lineno, 1, "rank must be positive");
            have_rank = true;
        } else if (key == "truncation") {
            d.truncation = parse_int_field(value, lineno);
            if (d.truncation < 1)
                throw ParseError(lineno, 1, "truncation must be positive");
            have_trunc = true;
        } else if (key == "name") {
            d.name = trimmed(value);
        } else if (key == "a_matrix") {
            if (!trimmed(value).empty())
                throw ParseError(lineno, 1, "a_matrix block starts on the next line");
            ++i;
            break;
        } else {
            throw ParseError(lineno, 1, "unknown key '" + key + "'");
        }
    }
    if (!have_rank) throw ParseError(1, 1, "missing rank");
    if (!have_trunc) throw ParseError(1, 1, "missing truncation");
    d.a_matrix = SeriesMatrix(d.rank, d.rank, d.truncation);
    int row = 0;
    for (; i < lines.size() && row < d.rank; ++i) {
        int lineno = static_cast<int>(i) + 1;
        if (trimmed(lines[i]).empty()) continue;
        std::stringstream ss(lines[i]);
        std::string cell;
        int col = 0;
        while (std::getline(ss, cell, ';')) {
            if (col >= d.rank)
                throw ParseError(lineno, 1, "too many entries in a_matrix row");
            d.a_matrix.set(row, col, parse_series(trimmed(cell), d.truncation, lineno));
            ++col;
        }
        if (col != d.rank)
            throw ParseError(lineno, 1, "expected " + std::to_string(d.rank) +
                                            " entries in a_matrix row");
        ++row;
    }
    if (row != d.rank)
        throw ParseError(static_cast<int>(lines.size()), 1,
                         "a_matrix block has too few rows");
    for (; i < lines.size(); ++i)
        if (!trimmed(lines[i]).empty())
            throw ParseError(static_cast<int>(i) + 1, 1, "trailing content");
    return d;
}

std::string print_module_description(const ModuleDescription& d) {
    std::ostringstream out;
    out << "abmod/1\n";
    out << "rank: " << d.rank << "\n";
    out << "truncation: " << d.truncation << "\n";
    if (!d.name.empty()) out << "name: " << d.name << "\n";
    out << "a_matrix:\n";
    for (int i = 0; i < d.rank; ++i) {
        for (int j = 0; j < d.rank; ++j) {
            if (j > 0) out << " ; ";
            out << d.a_matrix.at(i, j).to_string();
        }
        out << "\n";
    }
    return out.str();
}

ModuleDescription load_module_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_module_description(buf.str());
}

void save_module_file(const std::string& path, const ModuleDescription& d) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file '" + path + "'");
    out << print_module_description(d);
}

std::string content_digest(const std::string& bytes) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<size_t>(i)] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

}  // namespace abmod
