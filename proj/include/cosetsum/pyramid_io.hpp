#pragma once

#include <filesystem>
#include <string>

#include "cosetsum/grid.hpp"
#include "cosetsum/json_io.hpp"
#include "cosetsum/transform.hpp"

namespace cosetsum {

// Pyramid directory: coarse.bin, w_<j>_<nu>.bin, a_<j>.bin and manifest.json.
// <nu> is the 0/1 direction written as a bit string, e.g. "01".

inline std::string direction_key(const Index& nu) {
    std::string s;
    for (auto v : nu)
        s += std::to_string(v);
    return s;
}

inline void save_pyramid(const std::filesystem::path& dir, const Pyramid<double>& p) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw FormatError("cannot create directory '" + dir.string() + "': " + ec.message());
    json shapes = json::object();
    save_grid((dir / "coarse.bin").string(), p.coarse);
    shapes["coarse"] = p.coarse.shape();
    for (std::size_t j = 0; j < p.levels; ++j) {
        for (std::size_t d = 0; d < p.directions.size(); ++d) {
            const std::string name = "w_" + std::to_string(j) + "_" + direction_key(p.directions[d]) + ".bin";
            save_grid((dir / name).string(), p.detail[j][d]);
            shapes[name] = p.detail[j][d].shape();
        }
        if (p.method == TransformMethod::coset) {
            const std::string name = "a_" + std::to_string(j) + ".bin";
            save_grid((dir / name).string(), p.aux[j]);
            shapes[name] = p.aux[j].shape();
        }
    }
    std::vector<std::string> dirs;
    for (const auto& nu : p.directions)
        dirs.push_back(direction_key(nu));
    json manifest{{"format", "cosetsum-pyramid"},
                  {"version", 1},
                  {"method", to_string(p.method)},
                  {"system-id", p.system_id},
                  {"levels", p.levels},
                  {"dim", p.input_shape.size()},
                  {"input_shape", p.input_shape},
                  {"directions", dirs},
                  {"shapes", shapes}};
    write_json_file((dir / "manifest.json").string(), manifest);
}

inline Pyramid<double> load_pyramid(const std::filesystem::path& dir) {
    const json m = read_json_file((dir / "manifest.json").string());
    Pyramid<double> p;
    try {
        if (m.value("format", "") != "cosetsum-pyramid")
            throw FormatError("'" + dir.string() + "' is not a pyramid directory");
        const std::string method = m.at("method").get<std::string>();
        if (method == "coset")
            p.method = TransformMethod::coset;
        else if (method == "tensor")
            p.method = TransformMethod::tensor;
        else
            throw FormatError("unknown transform method '" + method + "' in manifest");
        p.system_id = m.at("system-id").get<std::string>();
        p.levels = m.at("levels").get<std::size_t>();
        p.input_shape = m.at("input_shape").get<std::vector<std::size_t>>();
        for (const auto& key : m.at("directions")) {
            Index nu;
            for (char c : key.get<std::string>())
                nu.push_back(c == '1' ? 1 : 0);
            p.directions.push_back(std::move(nu));
        }
    } catch (const json::exception& ex) {
        throw FormatError(std::string("malformed pyramid manifest: ") + ex.what());
    }
    p.coarse = load_grid((dir / "coarse.bin").string());
    p.detail.resize(p.levels);
    for (std::size_t j = 0; j < p.levels; ++j) {
        for (const auto& nu : p.directions)
            p.detail[j].push_back(load_grid((dir / ("w_" + std::to_string(j) + "_" + direction_key(nu) + ".bin")).string()));
        if (p.method == TransformMethod::coset)
            p.aux.push_back(load_grid((dir / ("a_" + std::to_string(j) + ".bin")).string()));
    }
    return p;
}

} // namespace cosetsum
