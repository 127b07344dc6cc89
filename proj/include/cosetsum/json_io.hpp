#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cosetsum/constructors.hpp"
#include "cosetsum/errors.hpp"
#include "cosetsum/mask.hpp"
#include "cosetsum/wavelet_system.hpp"

namespace cosetsum {

using json = nlohmann::json;

// Filter JSON:
//   {"dim": n, "mode": "exact"|"float",
//    "entries": [{"index": [..], "num": "<int>", "exp2": e} | {"index": [..], "value": x}, ...]}
// entries sorted lexicographically by index.

inline json filter_to_json(const Filter& f) {
    json entries = json::array();
    for (const auto& [k, v] : f) {
        json e;
        e["index"] = k;
        if (v.is_exact()) {
            e["num"] = v.exact().numerator().get_str();
            e["exp2"] = v.exact().exponent();
        } else {
            e["value"] = v.to_double();
        }
        entries.push_back(std::move(e));
    }
    return json{{"dim", f.dim()}, {"mode", to_string(f.kind())}, {"entries", std::move(entries)}};
}

inline json mask_to_json(const Mask& m) { return filter_to_json(m.filter()); }

inline Filter filter_from_json(const json& j) {
    try {
        if (!j.is_object())
            throw FormatError("filter JSON must be an object");
        const auto dim = j.at("dim").get<std::size_t>();
        const std::string mode = j.value("mode", "exact");
        ScalarKind kind;
        if (mode == "exact")
            kind = ScalarKind::exact;
        else if (mode == "float")
            kind = ScalarKind::approx;
        else
            throw FormatError("unknown filter mode '" + mode + "'");
        Filter f(dim, kind);
        for (const auto& e : j.at("entries")) {
            auto k = e.at("index").get<Index>();
            if (k.size() != dim)
                throw FormatError("filter entry index has length " + std::to_string(k.size()) + ", expected " +
                                  std::to_string(dim));
            if (f.entries().count(k))
                throw FormatError("duplicate filter entry at (" + index_key(k) + ")");
            Scalar v = Scalar::zero(kind);
            if (kind == ScalarKind::exact) {
                if (!e.contains("num"))
                    throw FormatError("exact filter entry needs \"num\" and \"exp2\"");
                const auto& num = e.at("num");
                std::string ns = num.is_string() ? num.get<std::string>() : num.dump();
                v = Scalar(Dyadic::from_parts(ns, e.value("exp2", 0UL)));
            } else {
                v = Scalar::approx(e.at("value").get<double>());
            }
            f.set(k, v);
        }
        return f;
    } catch (const json::exception& ex) {
        throw FormatError(std::string("malformed filter JSON: ") + ex.what());
    }
}

inline Mask mask_from_json(const json& j) { return Mask(filter_from_json(j)); }

// Wavelet system bundle:
//   {"dim", "kind", "tau", "taud", "wavelets": {"<nu>": filter}, "duals": {"<nu>": filter}}
// with <nu> the comma-joined direction, e.g. "1,0".

inline json system_to_json(const WaveletSystem& s) {
    json w = json::object(), d = json::object();
    for (std::size_t i = 0; i < s.directions.size(); ++i) {
        w[index_key(s.directions[i])] = mask_to_json(s.wavelets[i]);
        d[index_key(s.directions[i])] = mask_to_json(s.duals[i]);
    }
    return json{{"dim", s.dim},
                {"kind", to_string(s.kind)},
                {"tau", mask_to_json(s.tau)},
                {"taud", mask_to_json(s.taud)},
                {"wavelets", std::move(w)},
                {"duals", std::move(d)}};
}

inline Index parse_index_key(const std::string& key) {
    Index k;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            std::size_t used = 0;
            k.push_back(std::stoll(part, &used));
            if (used != part.size())
                throw FormatError("");
        } catch (const std::exception&) {
            throw FormatError("bad direction key '" + key + "'");
        }
    }
    return k;
}

inline WaveletSystem system_from_json(const json& j) {
    try {
        WaveletSystem s;
        s.dim = j.at("dim").get<std::size_t>();
        const auto kind = j.value("kind", "coset");
        if (kind == "univariate")
            s.kind = SystemKind::univariate;
        else if (kind == "tensor")
            s.kind = SystemKind::tensor;
        else if (kind == "coset")
            s.kind = SystemKind::coset;
        else
            throw FormatError("unknown system kind '" + kind + "'");
        s.tau = mask_from_json(j.at("tau"));
        s.taud = mask_from_json(j.at("taud"));
        // Keys are read back in lexicographic order of the directions.
        std::map<Index, std::pair<std::optional<Mask>, std::optional<Mask>>> bands;
        for (const auto& [key, f] : j.at("wavelets").items())
            bands[parse_index_key(key)].first = mask_from_json(f);
        for (const auto& [key, f] : j.at("duals").items())
            bands[parse_index_key(key)].second = mask_from_json(f);
        for (auto& [nu, pair] : bands) {
            if (nu.size() != s.dim)
                throw FormatError("system bundle: direction (" + index_key(nu) + ") has the wrong length");
            if (!pair.first || !pair.second)
                throw FormatError("system bundle: direction (" + index_key(nu) + ") lacks a wavelet or a dual");
            s.directions.push_back(nu);
            s.wavelets.push_back(std::move(*pair.first));
            s.duals.push_back(std::move(*pair.second));
        }
        return s;
    } catch (const json::exception& ex) {
        throw FormatError(std::string("malformed system JSON: ") + ex.what());
    }
}

/// Coset representatives file: {"dim": n, "reps": [[..], ...]} or a bare array.
inline CosetReps coset_reps_from_json(const json& j) {
    try {
        const json& reps = j.is_array() ? j : j.at("reps");
        auto pts = reps.get<std::vector<Index>>();
        if (pts.empty())
            throw FormatError("empty coset representative list");
        std::size_t dim = j.is_object() && j.contains("dim") ? j.at("dim").get<std::size_t>() : pts.front().size();
        return CosetReps(dim, std::move(pts));
    } catch (const json::exception& ex) {
        throw FormatError(std::string("malformed coset representative JSON: ") + ex.what());
    }
}

inline json read_json_file(const std::string& path) {
    std::ifstream is(path);
    if (!is)
        throw FormatError("cannot open '" + path + "'");
    try {
        return json::parse(is);
    } catch (const json::parse_error& ex) {
        throw FormatError("'" + path + "': " + ex.what());
    }
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream os(path);
    if (!os)
        throw FormatError("cannot open '" + path + "' for writing");
    os << j.dump(2) << '\n';
}

} // namespace cosetsum
