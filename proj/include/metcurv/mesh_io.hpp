#pragma once

// OFF and OBJ triangle-mesh readers. Only vertex positions and triangular faces are used.

#include <array>
#include <cctype>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "surface.hpp"

namespace metcurv {

enum class MeshFormat
{
    off,
    obj,
};

namespace detail {

// Next non-empty, non-comment line; tracks the 1-based line number.
inline bool next_content_line(std::istream& in, std::string& line, std::size_t& lineno)
{
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
        if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
}

} // namespace detail

inline SurfaceSample read_off(std::istream& in)
{
    std::string line;
    std::size_t lineno = 0;
    if (!detail::next_content_line(in, line, lineno)) throw ParseError("OFF: empty input", 0);
    std::istringstream hs(line);
    std::string magic;
    hs >> magic;
    if (magic != "OFF") throw ParseError("OFF: missing OFF header", lineno);
    long long nv = -1, nf = -1, ne = 0;
    if (!(hs >> nv)) {
        if (!detail::next_content_line(in, line, lineno)) throw ParseError("OFF: missing counts", lineno);
        hs = std::istringstream(line);
        hs >> nv;
    }
    if (!(hs >> nf) || nv < 0 || nf < 0) throw ParseError("OFF: bad vertex/face counts", lineno);
    hs >> ne;

    std::vector<Vec3> v;
    v.reserve(static_cast<std::size_t>(nv));
    for (long long i = 0; i < nv; ++i) {
        if (!detail::next_content_line(in, line, lineno)) throw ParseError("OFF: unexpected end in vertex list", lineno);
        std::istringstream ls(line);
        Vec3 p;
        if (!(ls >> p.x >> p.y >> p.z)) throw ParseError("OFF: bad vertex", lineno);
        v.push_back(p);
    }
    std::vector<std::array<std::size_t, 3>> f;
    f.reserve(static_cast<std::size_t>(nf));
    for (long long i = 0; i < nf; ++i) {
        if (!detail::next_content_line(in, line, lineno)) throw ParseError("OFF: unexpected end in face list", lineno);
        std::istringstream ls(line);
        long long k = 0;
        if (!(ls >> k)) throw ParseError("OFF: bad face", lineno);
        if (k != 3) throw ParseError("OFF: non-triangle face with " + std::to_string(k) + " vertices", lineno);
        long long a, b, c;
        if (!(ls >> a >> b >> c)) throw ParseError("OFF: bad face", lineno);
        if (a < 0 || b < 0 || c < 0 || a >= nv || b >= nv || c >= nv)
            throw ParseError("OFF: face index out of range", lineno);
        f.push_back({static_cast<std::size_t>(a), static_cast<std::size_t>(b), static_cast<std::size_t>(c)});
    }
    return SurfaceSample::from_mesh(std::move(v), std::move(f));
}

inline SurfaceSample read_obj(std::istream& in)
{
    std::string line;
    std::size_t lineno = 0;
    std::vector<Vec3> v;
    std::vector<std::array<std::size_t, 3>> f;
    while (detail::next_content_line(in, line, lineno)) {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "v") {
            Vec3 p;
            if (!(ls >> p.x >> p.y >> p.z)) throw ParseError("OBJ: bad vertex", lineno);
            v.push_back(p);
        } else if (tag == "f") {
            std::vector<long long> idx;
            std::string tok;
            while (ls >> tok) {
                try {
                    idx.push_back(std::stoll(tok.substr(0, tok.find('/'))));
                } catch (const std::exception&) {
                    throw ParseError("OBJ: bad face index '" + tok + "'", lineno);
                }
            }
            if (idx.size() != 3)
                throw ParseError("OBJ: non-triangle face with " + std::to_string(idx.size()) + " vertices", lineno);
            std::array<std::size_t, 3> t{};
            for (std::size_t k = 0; k < 3; ++k) {
                long long i = idx[k];
                i = i < 0 ? static_cast<long long>(v.size()) + i : i - 1;
                if (i < 0 || i >= static_cast<long long>(v.size()))
                    throw ParseError("OBJ: face index out of range", lineno);
                t[k] = static_cast<std::size_t>(i);
            }
            f.push_back(t);
        }
        // other records (vn, vt, o, g, s, usemtl, ...) are ignored
    }
    return SurfaceSample::from_mesh(std::move(v), std::move(f));
}

inline SurfaceSample load_mesh(const std::filesystem::path& path, std::optional<MeshFormat> format = std::nullopt)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string(), 0);
    if (!format) {
        auto ext = path.extension().string();
        for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (ext == ".off") format = MeshFormat::off;
        else if (ext == ".obj") format = MeshFormat::obj;
        else throw ArgumentError("load_mesh: unknown mesh extension '" + ext + "'");
    }
    return *format == MeshFormat::off ? read_off(in) : read_obj(in);
}

} // namespace metcurv
