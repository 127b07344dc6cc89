#pragma once

#include <chrono>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cosetsum/cosetsum.hpp"

namespace cosetsum::cli {

enum ExitCode : int { exit_pass = 0, exit_fail = 1, exit_usage = 2 };

/// Thrown for bad flag combinations; maps to exit code 2.
class UsageError : public Error {
public:
    using Error::Error;
};

struct GenConfig {
    std::string family = "dd";
    unsigned order = 4;
    std::string op = "none";
    std::size_t dim = 2;
    std::string gamma_file;
    std::string blocks;
    std::string bundle;
    std::string grid;
    double constant = 0.0;
    bool has_constant = false;
    std::uint64_t seed = 0;
    std::string mode = "exact";
    std::string output;
};

struct VerifyConfig {
    std::string check;
    std::string mask_file;
    std::string dual_file;
    std::string system_file;
    unsigned cap = 64;
};

struct TransformConfig {
    std::string direction;
    std::string input;
    std::string method = "coset";
    std::string family = "dd";
    unsigned order = 4;
    std::size_t levels = 1;
    std::string mode = "float";
    std::string output;
};

struct BenchmarkConfig {
    std::vector<unsigned> orders{4};
    std::vector<std::size_t> dims{2, 3, 4};
    std::size_t size = 0; // 0: per-dimension default
    std::vector<std::string> methods{"coset", "tensor"};
    std::optional<std::size_t> levels;
    std::uint64_t seed = 0;
};

namespace detail {

inline unsigned half_order(unsigned order) {
    if (order < 2 || order % 2 != 0)
        throw UsageError("--order must be an even number >= 2 (order 2k selects k)");
    return order / 2;
}

inline ScalarKind parse_mode(const std::string& mode) {
    if (mode == "exact")
        return ScalarKind::exact;
    if (mode == "float")
        return ScalarKind::approx;
    throw UsageError("--mode must be exact or float");
}

inline Mask family_mask(const std::string& family, unsigned order) {
    if (family == "haar")
        return catalog::haar();
    if (family == "spline1")
        return catalog::linear_spline();
    if (family == "dd")
        return catalog::deslauriers_dubuc(half_order(order));
    if (family == "dd-dual")
        return catalog::dd_dual(half_order(order));
    if (family == "daub2")
        return catalog::daubechies2();
    throw UsageError("unknown family '" + family + "' (haar, spline1, dd, dd-dual, daub2)");
}

/// (S, U) pair behind a transform or a system bundle.
inline std::pair<Mask, Mask> family_pair(const std::string& family, unsigned order) {
    if (family == "dd" || family == "dd-dual") {
        const unsigned k = half_order(order);
        return {catalog::dd_dual(k), catalog::deslauriers_dubuc(k)};
    }
    if (family == "haar")
        return {catalog::haar(), catalog::haar()};
    throw UsageError("family '" + family + "' does not define a biorthogonal pair (use dd or haar)");
}

inline std::vector<HybridBlock> parse_blocks(const std::string& spec, const Mask& r) {
    std::vector<HybridBlock> blocks;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos)
            throw UsageError("--blocks entries look like coset:2 or tensor:1");
        const std::string op = item.substr(0, colon);
        HybridBlock b;
        if (op == "coset" || op == "cosetsum")
            b.op = LiftOperator::coset_sum;
        else if (op == "tensor")
            b.op = LiftOperator::tensor_product;
        else
            throw UsageError("unknown block operator '" + op + "'");
        try {
            b.dim = std::stoul(item.substr(colon + 1));
        } catch (const std::exception&) {
            throw UsageError("bad block dimension in '" + item + "'");
        }
        b.mask = r;
        blocks.push_back(std::move(b));
    }
    if (blocks.empty())
        throw UsageError("--blocks is empty");
    return blocks;
}

inline std::vector<std::size_t> parse_shape(const std::string& s) {
    std::vector<std::size_t> shape;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, 'x')) {
        try {
            shape.push_back(std::stoul(item));
        } catch (const std::exception&) {
            throw UsageError("bad grid shape '" + s + "' (expected e.g. 64x64)");
        }
    }
    if (shape.empty())
        throw UsageError("empty grid shape");
    return shape;
}

inline void emit(const json& j, const std::string& output, std::ostream& out) {
    if (output.empty() || output == "-")
        out << j.dump(2) << '\n';
    else
        write_json_file(output, j);
}

inline json scalar_json(const Scalar& s) {
    if (s.is_exact())
        return s.exact().to_string();
    return s.to_double();
}

inline json certificate(const std::string& check, const CheckResult& r) {
    json j{{"check", check}, {"pass", r.pass}, {"residual", scalar_json(r.residual)}};
    if (r.witness_index)
        j["witness_index"] = *r.witness_index;
    if (r.witness_point)
        j["witness_point"] = r.witness_point->bits();
    if (!r.detail.empty())
        j["detail"] = r.detail;
    return j;
}

inline Grid<double> random_grid(const std::vector<std::size_t>& shape, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Grid<double> g(shape);
    for (auto& v : g.values())
        v = dist(rng);
    return g;
}

inline Grid<Dyadic> to_exact(const Grid<double>& g) {
    return map_grid<Dyadic>(g, [](double v) { return Dyadic::from_double(v); });
}

inline Grid<double> to_double(const Grid<Dyadic>& g) {
    return map_grid<double>(g, [](const Dyadic& v) { return v.to_double(); });
}

template <class T>
Pyramid<double> pyramid_to_double(const Pyramid<T>& p) {
    if constexpr (std::is_same_v<T, double>) {
        return p;
    } else {
        Pyramid<double> q;
        q.method = p.method;
        q.system_id = p.system_id;
        q.levels = p.levels;
        q.input_shape = p.input_shape;
        q.directions = p.directions;
        q.coarse = to_double(p.coarse);
        for (const auto& lvl : p.detail) {
            q.detail.emplace_back();
            for (const auto& b : lvl)
                q.detail.back().push_back(to_double(b));
        }
        for (const auto& a : p.aux)
            q.aux.push_back(to_double(a));
        return q;
    }
}

inline Pyramid<Dyadic> pyramid_to_exact(const Pyramid<double>& p) {
    Pyramid<Dyadic> q;
    q.method = p.method;
    q.system_id = p.system_id;
    q.levels = p.levels;
    q.input_shape = p.input_shape;
    q.directions = p.directions;
    q.coarse = to_exact(p.coarse);
    for (const auto& lvl : p.detail) {
        q.detail.emplace_back();
        for (const auto& b : lvl)
            q.detail.back().push_back(to_exact(b));
    }
    for (const auto& a : p.aux)
        q.aux.push_back(to_exact(a));
    return q;
}

inline std::size_t default_benchmark_size(std::size_t n) {
    switch (n) {
    case 1: return 4096;
    case 2: return 64;
    case 3: return 32;
    case 4: return 16;
    default: return 8;
    }
}

inline std::size_t full_depth(const std::vector<std::size_t>& shape) {
    std::size_t j = 0;
    for (;;) {
        for (auto s : shape)
            if ((s >> j) % 2 != 0 || (s >> j) < 2)
                return j;
        ++j;
    }
}

} // namespace detail

// ---------------------------------------------------------------------------

inline int cmd_gen(const GenConfig& c, std::ostream& out) {
    const ScalarKind kind = detail::parse_mode(c.mode);
    if (!c.grid.empty()) {
        if (c.output.empty())
            throw UsageError("gen --grid needs -o <file>");
        const auto shape = detail::parse_shape(c.grid);
        Grid<double> g = c.has_constant ? Grid<double>(shape, c.constant) : detail::random_grid(shape, c.seed);
        save_grid(c.output, g);
        return exit_pass;
    }
    if (!c.bundle.empty()) {
        auto [s, u] = detail::family_pair(c.family, c.order);
        WaveletSystem sys;
        if (c.bundle == "coset")
            sys = build_coset_system(s, u, c.dim);
        else if (c.bundle == "tensor")
            sys = build_tensor_system(s, u, c.dim);
        else
            throw UsageError("--bundle must be coset or tensor");
        detail::emit(system_to_json(sys), c.output, out);
        return exit_pass;
    }
    Mask r = detail::family_mask(c.family, c.order);
    if (kind == ScalarKind::approx)
        r = to_float(r);
    else if (r.kind() != ScalarKind::exact)
        throw UsageError("family '" + c.family + "' is only available with --mode float");
    Mask result = r;
    if (c.op == "none") {
        if (!c.gamma_file.empty())
            throw UsageError("--gamma requires --op cosetsum");
    } else if (c.op == "cosetsum") {
        if (!c.gamma_file.empty()) {
            CosetReps reps = coset_reps_from_json(read_json_file(c.gamma_file));
            auto res = coset_sum_with_diagnostics(r, reps);
            if (res.collisions)
                std::cerr << "warning: directional placements overlap for this coset representative set\n";
            result = res.mask;
        } else {
            result = coset_sum(r, c.dim);
        }
    } else if (c.op == "tensor") {
        result = tensor_product(r, c.dim);
    } else if (c.op == "hybrid") {
        if (c.blocks.empty())
            throw UsageError("--op hybrid needs --blocks, e.g. coset:2,tensor:1");
        result = hybrid(detail::parse_blocks(c.blocks, r));
    } else {
        throw UsageError("--op must be cosetsum, tensor, hybrid or none");
    }
    detail::emit(mask_to_json(result), c.output, out);
    return exit_pass;
}

inline int cmd_verify(const VerifyConfig& c, std::ostream& out) {
    auto need = [](const std::string& path, const char* flag) {
        if (path.empty())
            throw UsageError(std::string("this check needs ") + flag);
        return path;
    };
    json cert;
    bool pass = true;
    if (c.check == "interpolatory") {
        Mask m = mask_from_json(read_json_file(need(c.mask_file, "--mask")));
        auto r = is_interpolatory(m);
        cert = detail::certificate(c.check, r);
        pass = r.pass;
    } else if (c.check == "biorthogonal") {
        Mask m = mask_from_json(read_json_file(need(c.mask_file, "--mask")));
        Mask d = mask_from_json(read_json_file(need(c.dual_file, "--dual")));
        auto r = is_biorthogonal(m, d);
        cert = detail::certificate(c.check, r);
        pass = r.pass;
    } else if (c.check == "accuracy") {
        Mask m = mask_from_json(read_json_file(need(c.mask_file, "--mask")));
        auto r = accuracy_number(m, c.cap);
        cert = {{"check", c.check}, {"pass", true}};
        cert["accuracy"] = r.accuracy ? json(*r.accuracy) : json(nullptr);
        cert["cap_reached"] = r.cap_reached();
        if (r.witness_point)
            cert["witness_point"] = r.witness_point->bits();
        if (r.witness_order)
            cert["witness_order"] = *r.witness_order;
    } else if (c.check == "moments") {
        Mask m = mask_from_json(read_json_file(need(c.mask_file, "--mask")));
        auto v = vanishing_moments(m, c.cap);
        cert = {{"check", c.check}, {"pass", true}};
        cert["vanishing_moments"] = v ? json(*v) : json(nullptr);
        cert["cap_reached"] = !v.has_value();
    } else if (c.check == "muep") {
        WaveletSystem s = system_from_json(read_json_file(need(c.system_file, "--system")));
        auto r = s.verify();
        cert = detail::certificate(c.check, r);
        pass = r.pass;
    } else {
        throw UsageError("--check must be interpolatory, biorthogonal, accuracy, moments or muep");
    }
    out << cert.dump(2) << '\n';
    return pass ? exit_pass : exit_fail;
}

namespace detail {
template <class T>
int run_decompose(const TransformConfig& c, const Grid<T>& g, const Mask& s, const Mask& u, std::ostream& out) {
    OpCounter counter;
    Pyramid<T> p = c.method == "coset" ? coset_decompose(g, s, u, c.levels, &counter)
                                       : tensor_decompose(g, s, u, c.levels, &counter);
    save_pyramid(c.output, pyramid_to_double(p));
    out << json{{"direction", "decompose"}, {"method", c.method}, {"levels", c.levels},
                {"samples", counter.samples_processed}, {"multiplicative_ops", counter.multiplicative_ops}}
                   .dump()
        << '\n';
    return exit_pass;
}

template <class T>
int run_reconstruct(const TransformConfig& c, const Pyramid<T>& p, const Mask& s, const Mask& u, std::ostream& out) {
    OpCounter counter;
    Grid<T> g = p.method == TransformMethod::coset ? coset_reconstruct(p, u, &counter)
                                                   : tensor_reconstruct(p, s, u, &counter);
    if constexpr (std::is_same_v<T, double>)
        save_grid(c.output, g);
    else
        save_grid(c.output, to_double(g));
    out << json{{"direction", "reconstruct"}, {"method", to_string(p.method)}, {"levels", p.levels},
                {"multiplicative_ops", counter.multiplicative_ops}}
                   .dump()
        << '\n';
    return exit_pass;
}
} // namespace detail

inline int cmd_transform(const TransformConfig& c, std::ostream& out) {
    if (c.output.empty())
        throw UsageError("transform needs -o <output>");
    if (c.method != "coset" && c.method != "tensor")
        throw UsageError("--method must be coset or tensor");
    const ScalarKind kind = detail::parse_mode(c.mode);
    auto [s, u] = detail::family_pair(c.family, c.order);
    if (c.direction == "decompose") {
        Grid<double> g = load_grid(c.input);
        if (kind == ScalarKind::exact)
            return detail::run_decompose(c, detail::to_exact(g), s, u, out);
        return detail::run_decompose(c, g, s, u, out);
    }
    if (c.direction == "reconstruct") {
        Pyramid<double> p = load_pyramid(c.input);
        const std::string expected = transform_system_id(p.method, s, u);
        if (p.system_id != expected)
            throw UsageError("pyramid system-id '" + p.system_id + "' does not match the requested filters ('" +
                             expected + "')");
        if (to_string(p.method) != c.method)
            throw UsageError("pyramid was produced by the " + std::string(to_string(p.method)) + " method");
        if (kind == ScalarKind::exact)
            return detail::run_reconstruct(c, detail::pyramid_to_exact(p), s, u, out);
        return detail::run_reconstruct(c, p, s, u, out);
    }
    throw UsageError("transform direction must be decompose or reconstruct");
}

/// One CSV row per (method, n, k): method,n,k,size,levels,ops_per_sample,seconds
inline int cmd_benchmark(const BenchmarkConfig& c, std::ostream& out) {
    constexpr std::size_t max_samples = std::size_t{1} << 26;
    out << "method,n,k,size,levels,ops_per_sample,seconds\n";
    for (const auto& method : c.methods)
        if (method != "coset" && method != "tensor")
            throw UsageError("unknown benchmark method '" + method + "'");
    for (const auto& method : c.methods)
        for (std::size_t n : c.dims)
            for (unsigned order : c.orders) {
                const unsigned k = detail::half_order(order);
                const std::size_t size = c.size ? c.size : detail::default_benchmark_size(n);
                if (n == 0 || n > 12)
                    throw UsageError("benchmark dimension out of range");
                double total = 1;
                for (std::size_t i = 0; i < n; ++i)
                    total *= static_cast<double>(size);
                if (total > static_cast<double>(max_samples))
                    throw UsageError("benchmark grid of " + std::to_string(size) + "^" + std::to_string(n) +
                                     " samples exceeds the memory guard");
                std::vector<std::size_t> shape(n, size);
                const std::size_t levels = c.levels ? *c.levels : detail::full_depth(shape);
                const Grid<double> g = detail::random_grid(shape, c.seed);
                const Mask s = catalog::dd_dual(k);
                const Mask u = catalog::deslauriers_dubuc(k);
                OpCounter counter;
                auto t0 = std::chrono::steady_clock::now();
                if (method == "coset")
                    coset_reconstruct(coset_decompose(g, s, u, levels, &counter), u, &counter);
                else
                    tensor_reconstruct(tensor_decompose(g, s, u, levels, &counter), s, u, &counter);
                double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.6f", measured_complexity(counter).value());
                out << method << ',' << n << ',' << k << ',' << size << ',' << levels << ',' << buf << ',';
                std::snprintf(buf, sizeof buf, "%.6f", secs);
                out << buf << '\n';
            }
    return exit_pass;
}

} // namespace cosetsum::cli
