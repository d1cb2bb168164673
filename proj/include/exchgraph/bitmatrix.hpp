#pragma once

#include <bit>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace exchgraph {

/// Row-major bit-packed 0/1 matrix. Bits beyond column `cols` in the last
/// word of each row are always zero.
class BitMatrix {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t kBits = 64;

    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_row() const { return wpr_; }

    bool get(std::size_t i, std::size_t j) const { return (row(i)[j / kBits] >> (j % kBits)) & 1U; }
    void set(std::size_t i, std::size_t j, bool v = true) {
        Word& w = data_[i * wpr_ + j / kBits];
        const Word mask = Word{1} << (j % kBits);
        w = v ? (w | mask) : (w & ~mask);
    }
    void flip(std::size_t i, std::size_t j) { data_[i * wpr_ + j / kBits] ^= Word{1} << (j % kBits); }

    std::span<const Word> row(std::size_t i) const { return {data_.data() + i * wpr_, wpr_}; }
    std::span<Word> row(std::size_t i) { return {data_.data() + i * wpr_, wpr_}; }

    std::size_t row_popcount(std::size_t i) const;
    std::size_t popcount() const;

    BitMatrix transpose() const;

    static BitMatrix identity(std::size_t n);
    static BitMatrix ones(std::size_t rows, std::size_t cols);

    bool operator==(const BitMatrix& o) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<Word> data_;
};

/// Binary dump: "XGB1", little-endian u64 rows, cols, then ceil(cols/64)
/// little-endian words per row.
void write_binary(std::ostream& os, const BitMatrix& m);
BitMatrix read_binary(std::istream& is);

/// Edge list: header lines starting with '#', then one "i\tj" per edge.
void write_edge_list(std::ostream& os, const BitMatrix& m, const std::vector<std::string>& header);
BitMatrix read_edge_list(std::istream& is);

}  // namespace exchgraph
