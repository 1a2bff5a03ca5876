#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace cmdp {

/// Dense row-major 2-d table. Rows are contiguous and exposed as spans.
template <class T>
class Grid2 {
public:
    Grid2() = default;
    Grid2(int rows, int cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int i, int j) { return data_[idx(i, j)]; }
    const T& operator()(int i, int j) const { return data_[idx(i, j)]; }

    std::span<T> row(int i) { return {data_.data() + idx(i, 0), static_cast<std::size_t>(cols_)}; }
    std::span<const T> row(int i) const {
        return {data_.data() + idx(i, 0), static_cast<std::size_t>(cols_)};
    }

    std::span<T> flat() { return data_; }
    std::span<const T> flat() const { return data_; }
    bool empty() const { return data_.empty(); }

    bool operator==(const Grid2&) const = default;

private:
    std::size_t idx(int i, int j) const {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return static_cast<std::size_t>(i) * cols_ + j;
    }

    int rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

/// Dense row-major 3-d table; innermost dimension contiguous.
template <class T>
class Grid3 {
public:
    Grid3() = default;
    Grid3(int d0, int d1, int d2, T fill = T{})
        : d0_(d0), d1_(d1), d2_(d2),
          data_(static_cast<std::size_t>(d0) * d1 * d2, fill) {}

    int dim0() const { return d0_; }
    int dim1() const { return d1_; }
    int dim2() const { return d2_; }

    T& operator()(int i, int j, int k) { return data_[idx(i, j, k)]; }
    const T& operator()(int i, int j, int k) const { return data_[idx(i, j, k)]; }

    std::span<T> row(int i, int j) {
        return {data_.data() + idx(i, j, 0), static_cast<std::size_t>(d2_)};
    }
    std::span<const T> row(int i, int j) const {
        return {data_.data() + idx(i, j, 0), static_cast<std::size_t>(d2_)};
    }

    std::span<T> flat() { return data_; }
    std::span<const T> flat() const { return data_; }
    bool empty() const { return data_.empty(); }

    bool operator==(const Grid3&) const = default;

private:
    std::size_t idx(int i, int j, int k) const {
        assert(i >= 0 && i < d0_ && j >= 0 && j < d1_ && k >= 0 && k < d2_);
        return (static_cast<std::size_t>(i) * d1_ + j) * d2_ + k;
    }

    int d0_ = 0, d1_ = 0, d2_ = 0;
    std::vector<T> data_;
};

}  // namespace cmdp
