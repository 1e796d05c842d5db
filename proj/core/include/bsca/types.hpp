#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bsca {

using file_id = std::int32_t;      // 0-based index into the file library
using location_id = std::int32_t;  // 0-based user location index
using cache_id = std::int32_t;     // 0-based cache index; the MBS is implicit
using slot_t = std::int64_t;

/// One request per slot: a single (file, location) pair.
struct Request {
    slot_t slot = 0;  // 1-based
    file_id file = 0;
    location_id location = 0;

    friend bool operator==(const Request&, const Request&) = default;
};

/// Dense column-major matrix. Columns are contiguous so that per-cache
/// vectors (files x caches layouts) can be handed out as spans.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, double value = 0.0)
        : rows_(rows),
          cols_(cols),
          data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), value) {}

    double& operator()(int r, int c) { return data_[index(r, c)]; }
    double operator()(int r, int c) const { return data_[index(r, c)]; }

    std::span<double> col(int c) {
        return {data_.data() + index(0, c), static_cast<std::size_t>(rows_)};
    }
    std::span<const double> col(int c) const {
        return {data_.data() + index(0, c), static_cast<std::size_t>(rows_)};
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t index(int r, int c) const {
        return static_cast<std::size_t>(c) * static_cast<std::size_t>(rows_) +
               static_cast<std::size_t>(r);
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

/// Raised for malformed experiment configuration (CLI exit code 1).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised for file input/output failures, including trace parse errors
/// (CLI exit code 2).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Splitmix64 step; used to derive independent sub-seeds from one master
/// seed so that runs stay reproducible regardless of policy count.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace bsca
