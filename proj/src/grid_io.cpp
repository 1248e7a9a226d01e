#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lgp/grid.hpp"

namespace lgp {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Parses every numeric token of the stream, accepting commas as separators
// and "nan"/"inf" spellings that the stream extractor does not handle.
std::vector<double> read_values(std::istream& in, const std::string& path) {
    std::vector<double> vals;
    std::string tok;
    while (in >> tok) {
        size_t start = 0;
        while (start < tok.size()) {
            size_t comma = tok.find(',', start);
            std::string piece = tok.substr(start, comma == std::string::npos
                                                      ? std::string::npos
                                                      : comma - start);
            if (!piece.empty()) {
                const char* s = piece.c_str();
                char* end = nullptr;
                double v = std::strtod(s, &end);
                if (end == s || *end != '\0')
                    throw Error(Errc::io, path + ": malformed value '" + piece + "'");
                vals.push_back(v);
            }
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }
    return vals;
}

FieldHeader parse_header(std::istream& in, const std::string& path) {
    std::string line;
    if (!std::getline(in, line) || line.empty() || line[0] != '#')
        throw Error(Errc::io, path + ": missing field header");
    std::istringstream hs(line.substr(1));
    FieldHeader h;
    if (!(hs >> h.nx >> h.ny >> h.h >> h.x0 >> h.y0))
        throw Error(Errc::io, path + ": malformed field header");
    return h;
}

}  // namespace

void save_field(const std::string& path, const DomainGrid& grid, const ScalarField& u,
                bool mask_outside) {
    std::ofstream out(path);
    if (!out) throw Error(Errc::io, "cannot open " + path + " for writing");
    out << "# " << grid.nx << ' ' << grid.ny << ' ' << fmt_double(grid.h) << ' '
        << fmt_double(grid.origin.x) << ' ' << fmt_double(grid.origin.y) << '\n';
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            int p = grid.idx(i, j);
            double v = u.at(p);
            if (mask_outside && !grid.is_inside(p)) v = std::nan("");
            out << (i ? "," : "") << fmt_double(v);
        }
        out << '\n';
    }
    if (!out) throw Error(Errc::io, "failed writing " + path);
}

ScalarField load_field(const std::string& path, const DomainGrid& grid) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io, "cannot open " + path);
    FieldHeader h = parse_header(in, path);
    if (h.nx != grid.nx || h.ny != grid.ny)
        throw Error(Errc::io, path + ": field dimensions " + std::to_string(h.nx) + "x" +
                                  std::to_string(h.ny) + " do not match the grid");
    if (std::abs(h.h - grid.h) > 1e-9 * std::max(1.0, grid.h))
        throw Error(Errc::io, path + ": cell size does not match the grid");
    auto vals = read_values(in, path);
    if (vals.size() != static_cast<size_t>(grid.nx) * grid.ny)
        throw Error(Errc::io, path + ": expected " +
                                  std::to_string(static_cast<size_t>(grid.nx) * grid.ny) +
                                  " values, found " + std::to_string(vals.size()));
    ScalarField u(grid.nx, grid.ny, 0.0);
    u.v = std::move(vals);
    return u;
}

FieldHeader peek_field_header(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io, "cannot open " + path);
    return parse_header(in, path);
}

void save_pgm(const std::string& path, const DomainGrid& grid, const ScalarField& u) {
    double lo = 0, hi = 0;
    bool any = false;
    for (size_t p = 0; p < u.size(); ++p)
        if (grid.is_inside(static_cast<int>(p))) {
            double v = u.v[p];
            if (!any) {
                lo = hi = v;
                any = true;
            } else {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
    double span = hi - lo;

    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::io, "cannot open " + path + " for writing");
    out << "P5\n" << grid.nx << ' ' << grid.ny << "\n255\n";
    std::vector<unsigned char> row(static_cast<size_t>(grid.nx));
    for (int j = grid.ny - 1; j >= 0; --j) {
        for (int i = 0; i < grid.nx; ++i) {
            int p = grid.idx(i, j);
            unsigned char b = 0;
            if (grid.is_inside(p) && span > 0) {
                double t = (u.at(p) - lo) / span;
                b = static_cast<unsigned char>(std::lround(255.0 * t));
            }
            row[static_cast<size_t>(i)] = b;
        }
        out.write(reinterpret_cast<const char*>(row.data()), grid.nx);
    }
    if (!out) throw Error(Errc::io, "failed writing " + path);
}

}  // namespace lgp
