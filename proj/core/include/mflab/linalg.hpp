#pragma once
#include "mflab/field.hpp"

#include <optional>
#include <vector>

namespace mflab {

/* Dense matrix over F_p, row-major. */
class Mat {
  public:
    Mat() = default;
    Mat(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static Mat identity(size_t n);
    static Mat zero(size_t rows, size_t cols) { return Mat(rows, cols); }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    uint32_t& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
    uint32_t at(size_t r, size_t c) const { return a_[r * cols_ + c]; }
    const uint32_t* row(size_t r) const { return a_.data() + r * cols_; }
    uint32_t* row(size_t r) { return a_.data() + r * cols_; }
    bool operator==(const Mat& o) const = default;

    Mat mul(const Mat& o, const Fp& fp) const;
    Mat add(const Mat& o, const Fp& fp) const;
    Mat sub(const Mat& o, const Fp& fp) const;
    Mat scaled(uint32_t c, const Fp& fp) const;
    Mat transpose() const;
    std::vector<uint32_t> apply(const std::vector<uint32_t>& v, const Fp& fp) const;
    /* columns picked by index list */
    Mat select_cols(const std::vector<size_t>& idx) const;
    Mat select_rows(const std::vector<size_t>& idx) const;
    /* horizontal / vertical concatenation */
    Mat hcat(const Mat& o) const;
    Mat vcat(const Mat& o) const;
    bool is_zero() const;

  private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<uint32_t> a_;
};

/* Reduced row echelon form computed in place; returns pivot column indices. */
std::vector<size_t> rref(Mat& m, const Fp& fp);

size_t rank(Mat m, const Fp& fp);

/* Basis of the right nullspace {v : Av = 0}, one column per basis vector. */
Mat nullspace(const Mat& a, const Fp& fp);

/* Some solution of Ax = b, or nullopt when inconsistent. */
std::optional<std::vector<uint32_t>> solve_linear(const Mat& a, const std::vector<uint32_t>& b,
                                                  const Fp& fp);

/* Inverse of a square matrix, or nullopt when singular. */
std::optional<Mat> inverse(const Mat& a, const Fp& fp);

/* Characteristic polynomial coefficients c_0..c_n (monic, c_n = 1),
 * via Hessenberg reduction. */
std::vector<uint32_t> charpoly(Mat a, const Fp& fp);

/* Incremental row-space accumulator; used wherever many spans and ranks
 * over the same ambient space are needed. */
class RowSpan {
  public:
    explicit RowSpan(size_t width) : width_(width) {}
    /* reduce v against the span; returns the residual (empty means contained) */
    std::vector<uint32_t> residual(std::vector<uint32_t> v, const Fp& fp) const;
    /* add v to the span if independent; returns true when the span grew */
    bool insert(std::vector<uint32_t> v, const Fp& fp);
    size_t dim() const { return rows_.size(); }
    size_t width() const { return width_; }
    /* pivot columns, in insertion order */
    const std::vector<size_t>& leads() const { return lead_; }
    /* non-pivot columns, ascending; residuals are supported exactly there */
    std::vector<size_t> free_coords() const;
    bool contains(std::vector<uint32_t> v, const Fp& fp) const
    {
        return residual(std::move(v), fp).empty();
    }

  private:
    size_t width_;
    std::vector<std::vector<uint32_t>> rows_;  // echelonized, leading entry 1
    std::vector<size_t> lead_;
};

}  // namespace mflab
