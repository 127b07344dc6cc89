#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <functional>
#include <istream>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "cosetsum/errors.hpp"
#include "cosetsum/mask.hpp"

namespace cosetsum {

// Dense n-D array with row-major storage (last axis fastest). All index
// arithmetic through at() is periodic.
template <class T>
class Grid {
public:
    using value_type = T;

    Grid() = default;
    explicit Grid(std::vector<std::size_t> shape, const T& fill = T{}) : shape_(std::move(shape)) {
        if (shape_.empty())
            throw InvalidArgument("grid dimension must be at least 1");
        for (auto s : shape_)
            if (s == 0)
                throw InvalidArgument("grid axis sizes must be >= 1");
        strides_.assign(shape_.size(), 1);
        for (std::size_t i = shape_.size() - 1; i > 0; --i)
            strides_[i - 1] = strides_[i] * shape_[i];
        data_.assign(strides_[0] * shape_[0], fill);
    }

    std::size_t dim() const noexcept { return shape_.size(); }
    const std::vector<std::size_t>& shape() const noexcept { return shape_; }
    const std::vector<std::size_t>& strides() const noexcept { return strides_; }
    std::size_t size() const noexcept { return data_.size(); }

    std::span<T> values() noexcept { return data_; }
    std::span<const T> values() const noexcept { return data_; }
    T& operator[](std::size_t i) { return data_[i]; }
    const T& operator[](std::size_t i) const { return data_[i]; }

    /// Linear offset of a point, reduced modulo the shape.
    std::size_t offset(std::span<const std::int64_t> k) const {
        std::size_t off = 0;
        for (std::size_t i = 0; i < shape_.size(); ++i) {
            auto n = static_cast<std::int64_t>(shape_[i]);
            std::int64_t r = k[i] % n;
            if (r < 0)
                r += n;
            off += static_cast<std::size_t>(r) * strides_[i];
        }
        return off;
    }
    T& at(std::span<const std::int64_t> k) { return data_[offset(k)]; }
    const T& at(std::span<const std::int64_t> k) const { return data_[offset(k)]; }

    /// Multi-index of a linear offset.
    Index point(std::size_t off) const {
        Index k(shape_.size());
        for (std::size_t i = 0; i < shape_.size(); ++i) {
            k[i] = static_cast<std::int64_t>(off / strides_[i]);
            off %= strides_[i];
        }
        return k;
    }

    friend bool operator==(const Grid& a, const Grid& b) { return a.shape_ == b.shape_ && a.data_ == b.data_; }

private:
    std::vector<std::size_t> shape_;
    std::vector<std::size_t> strides_;
    std::vector<T> data_;
};

/// Applies fn element-wise, producing a grid of the result type.
template <class U, class T, class Fn>
Grid<U> map_grid(const Grid<T>& g, Fn&& fn) {
    Grid<U> out(g.shape());
    for (std::size_t i = 0; i < g.size(); ++i)
        out[i] = fn(g[i]);
    return out;
}

// ---------------------------------------------------------------------------
// Binary grid file: "CSWG", u32 version = 1, u32 dim, u64 size per axis,
// then little-endian binary64 values in row-major order.

inline constexpr char grid_magic[4] = {'C', 'S', 'W', 'G'};
inline constexpr std::uint32_t grid_format_version = 1;

namespace detail {
template <class U>
U to_little_endian(U v) {
    if constexpr (std::endian::native == std::endian::big) {
        auto bytes = std::bit_cast<std::array<unsigned char, sizeof(U)>>(v);
        std::reverse(bytes.begin(), bytes.end());
        return std::bit_cast<U>(bytes);
    }
    return v;
}
template <class U>
void write_le(std::ostream& os, U v) {
    v = to_little_endian(v);
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}
template <class U>
U read_le(std::istream& is) {
    U v{};
    if (!is.read(reinterpret_cast<char*>(&v), sizeof v))
        throw FormatError("truncated grid file");
    return to_little_endian(v);
}
} // namespace detail

inline void write_grid(std::ostream& os, const Grid<double>& g) {
    os.write(grid_magic, 4);
    detail::write_le<std::uint32_t>(os, grid_format_version);
    detail::write_le<std::uint32_t>(os, static_cast<std::uint32_t>(g.dim()));
    for (auto s : g.shape())
        detail::write_le<std::uint64_t>(os, s);
    for (double v : g.values())
        detail::write_le<std::uint64_t>(os, std::bit_cast<std::uint64_t>(v));
    if (!os)
        throw FormatError("failed to write grid");
}

inline Grid<double> read_grid(std::istream& is) {
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, grid_magic, 4) != 0)
        throw FormatError("not a grid file (bad magic)");
    auto version = detail::read_le<std::uint32_t>(is);
    if (version != grid_format_version)
        throw FormatError("unsupported grid file version " + std::to_string(version));
    auto dim = detail::read_le<std::uint32_t>(is);
    if (dim == 0 || dim > 16)
        throw FormatError("grid dimension out of range");
    std::vector<std::size_t> shape(dim);
    std::uint64_t total = 1;
    for (auto& s : shape) {
        s = static_cast<std::size_t>(detail::read_le<std::uint64_t>(is));
        if (s == 0 || total > (std::uint64_t{1} << 40) / s)
            throw FormatError("grid shape out of range");
        total *= s;
    }
    Grid<double> g(shape);
    for (auto& v : g.values())
        v = std::bit_cast<double>(detail::read_le<std::uint64_t>(is));
    if (is.peek() != std::char_traits<char>::eof())
        throw FormatError("trailing bytes after grid payload");
    return g;
}

inline void save_grid(const std::string& path, const Grid<double>& g) {
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw FormatError("cannot open '" + path + "' for writing");
    write_grid(os, g);
}

inline Grid<double> load_grid(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw FormatError("cannot open '" + path + "'");
    return read_grid(is);
}

} // namespace cosetsum
