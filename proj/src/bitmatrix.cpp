#include "exchgraph/bitmatrix.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "exchgraph/error.hpp"

namespace exchgraph {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), wpr_((cols + kBits - 1) / kBits), data_(rows * wpr_, 0) {}

std::size_t BitMatrix::row_popcount(std::size_t i) const {
    std::size_t c = 0;
    for (Word w : row(i)) c += std::popcount(w);
    return c;
}

std::size_t BitMatrix::popcount() const {
    std::size_t c = 0;
    for (Word w : data_) c += std::popcount(w);
    return c;
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        const auto r = row(i);
        for (std::size_t w = 0; w < wpr_; ++w) {
            Word bits = r[w];
            while (bits) {
                const std::size_t j = w * kBits + std::countr_zero(bits);
                bits &= bits - 1;
                t.set(j, i);
            }
        }
    }
    return t;
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
}

BitMatrix BitMatrix::ones(std::size_t rows, std::size_t cols) {
    BitMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j);
    }
    return m;
}

namespace {

void put_u64(std::ostream& os, std::uint64_t v) {
    char b[8];
    for (int k = 0; k < 8; ++k) b[k] = static_cast<char>((v >> (8 * k)) & 0xff);
    os.write(b, 8);
}

std::uint64_t get_u64(std::istream& is) {
    unsigned char b[8];
    if (!is.read(reinterpret_cast<char*>(b), 8)) throw IoError("binary matrix: truncated input");
    std::uint64_t v = 0;
    for (int k = 7; k >= 0; --k) v = (v << 8) | b[k];
    return v;
}

}  // namespace

void write_binary(std::ostream& os, const BitMatrix& m) {
    os.write("XGB1", 4);
    put_u64(os, m.rows());
    put_u64(os, m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (auto w : m.row(i)) put_u64(os, w);
    }
    if (!os) throw IoError("binary matrix: write failed");
}

BitMatrix read_binary(std::istream& is) {
    char magic[4];
    if (!is.read(magic, 4) || std::string(magic, 4) != "XGB1") throw IoError("binary matrix: bad magic");
    const std::uint64_t rows = get_u64(is), cols = get_u64(is);
    BitMatrix m(rows, cols);
    const std::size_t tail_bits = cols % BitMatrix::kBits;
    for (std::size_t i = 0; i < rows; ++i) {
        auto r = m.row(i);
        for (auto& w : r) w = get_u64(is);
        if (tail_bits && !r.empty() && (r.back() >> tail_bits) != 0) throw IoError("binary matrix: nonzero padding bits");
    }
    return m;
}

void write_edge_list(std::ostream& os, const BitMatrix& m, const std::vector<std::string>& header) {
    for (const auto& h : header) os << "# " << h << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const auto r = m.row(i);
        for (std::size_t w = 0; w < r.size(); ++w) {
            BitMatrix::Word bits = r[w];
            while (bits) {
                const std::size_t j = w * BitMatrix::kBits + std::countr_zero(bits);
                bits &= bits - 1;
                os << i << '\t' << j << '\n';
            }
        }
    }
    if (!os) throw IoError("edge list: write failed");
}

BitMatrix read_edge_list(std::istream& is) {
    std::size_t rows = 0, cols = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream hs(line.substr(1));
            std::string key;
            hs >> key;
            if (key == "m") hs >> rows;
            else if (key == "n") hs >> cols;
            continue;
        }
        std::istringstream ls(line);
        std::size_t i, j;
        if (!(ls >> i >> j)) throw IoError("edge list: malformed line '" + line + "'");
        edges.emplace_back(i, j);
    }
    // a declared shape is binding; otherwise infer it from the edges
    const bool declared = rows > 0 && cols > 0;
    for (auto [i, j] : edges) {
        if (declared && (i >= rows || j >= cols))
            throw IoError("edge list: edge (" + std::to_string(i) + ", " + std::to_string(j) + ") outside the declared shape");
        rows = std::max(rows, i + 1);
        cols = std::max(cols, j + 1);
    }
    if (rows == 0 || cols == 0) throw IoError("edge list: cannot determine matrix shape");
    BitMatrix m(rows, cols);
    for (auto [i, j] : edges) m.set(i, j);
    return m;
}

}  // namespace exchgraph
