#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pswkb/errors.hpp"
#include "pswkb/grid.hpp"

namespace pswkb {

// 17-significant-digit decimal rendering via to_chars: locale independent and
// value-deterministic.
inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    if (ec != std::errc{}) throw error("format_double: conversion failed");
    return std::string(buf, ptr);
}

using json = nlohmann::ordered_json;

inline json grid_to_json(const Grid1D& g) {
    return json{{"min", g.x_min()}, {"max", g.x_max()}, {"n", g.size()}};
}

inline Grid1D grid_from_json(const json& j) {
    return Grid1D(j.at("min").get<double>(), j.at("max").get<double>(),
                  j.at("n").get<std::size_t>());
}

// CSV payload with a '#'-prefixed JSON header line holding all metadata.
struct FieldFile {
    json header;
    std::vector<std::vector<double>> rows;
};

inline void write_field_csv(const std::string& path, const json& header,
                            const std::vector<std::vector<double>>& rows) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw config_error("cannot open output file: " + path);
    os << "# " << header.dump() << "\n";
    std::string line;
    for (const auto& row : rows) {
        line.clear();
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) line.push_back(',');
            line += format_double(row[i]);
        }
        line.push_back('\n');
        os << line;
    }
    if (!os) throw error("write failed: " + path);
}

inline FieldFile read_field_csv(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw config_error("cannot open input file: " + path);
    FieldFile f;
    std::string line;
    if (!std::getline(is, line) || line.size() < 2 || line[0] != '#')
        throw error("missing '# {json}' header line: " + path);
    f.header = json::parse(line.substr(1));
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            const std::size_t next = line.find(',', pos);
            const std::string tok =
                line.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
            double v = 0.0;
            auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc{}) throw error("bad CSV number: " + tok);
            row.push_back(v);
            if (next == std::string::npos) break;
            pos = next + 1;
        }
        f.rows.push_back(std::move(row));
    }
    return f;
}

} // namespace pswkb
