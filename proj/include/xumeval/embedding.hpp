// SPDX-FileCopyrightText: 2026 xumeval contributors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file embedding.hpp
 * @brief Unit-norm embedding sets and the XEMB binary format.
 *
 * Frame and sentence embeddings are inputs to this toolkit, never computed
 * here. Every vector is renormalized to unit Euclidean norm at admission,
 * which makes raw dot products and cosine similarities interchangeable and
 * absorbs any positive scaling of the source data. Zero and non-finite
 * vectors are rejected.
 *
 * XEMB layout (little-endian):
 *   magic "XEMB" | version u16 (=1) | count u32 | dim u32
 *   count * dim float32, row-major
 *   label flag u8 (0/1); if 1: count strings, each u16 length + UTF-8 bytes
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "xumeval/error.hpp"

namespace xumeval {

inline constexpr double kNormTolerance = 1e-6;

/// Scales `values` to unit Euclidean norm in place.
/// Throws ArgumentError on zero vectors, NumericError on NaN/Inf.
inline void normalize(std::vector<double>& values) {
    double sum_sq = 0.0;
    for (double v : values) {
        if (!std::isfinite(v)) throw NumericError("embedding contains NaN or Inf");
        sum_sq += v * v;
    }
    const double norm = std::sqrt(sum_sq);
    if (!(norm > 0.0)) throw ArgumentError("zero vector cannot be normalized");
    for (double& v : values) v /= norm;
}

/// max(a.b, 0), clamped into [0, 1]. Requires equal dimensions.
inline double clamped_cosine(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw ArgumentError("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()));
    }
    if (a.empty()) throw ArgumentError("empty vectors have no cosine");
    double dot = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
    return std::clamp(dot, 0.0, 1.0);
}

/// Ordered collection of unit-norm vectors with optional unique labels.
class EmbeddingSet {
public:
    EmbeddingSet() = default;

    static EmbeddingSet from_rows(std::vector<std::vector<double>> rows,
                                  std::vector<std::string> labels = {}) {
        EmbeddingSet set;
        if (!rows.empty()) {
            set.dim_ = rows.front().size();
            if (set.dim_ == 0) throw ArgumentError("embedding dimension must be >= 1");
        }
        set.values_.reserve(rows.size() * set.dim_);
        for (auto& row : rows) {
            if (row.size() != set.dim_) {
                throw ArgumentError("all embeddings must share one dimension");
            }
            normalize(row);
            set.values_.insert(set.values_.end(), row.begin(), row.end());
        }
        set.count_ = rows.size();
        set.attach_labels(std::move(labels));
        return set;
    }

    std::size_t size() const noexcept { return count_; }
    std::size_t dim() const noexcept { return dim_; }
    bool empty() const noexcept { return count_ == 0; }

    std::span<const double> row(std::size_t i) const {
        if (i >= count_) {
            throw RangeError("row " + std::to_string(i) + " out of range [0, " +
                             std::to_string(count_) + ")");
        }
        return {values_.data() + i * dim_, dim_};
    }

    bool has_labels() const noexcept { return !labels_.empty(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    /// New set holding rows `indices`, order preserving; labels follow.
    EmbeddingSet select(std::span<const int> indices) const {
        EmbeddingSet out;
        out.dim_ = dim_;
        out.values_.reserve(indices.size() * dim_);
        for (int idx : indices) {
            if (idx < 0 || static_cast<std::size_t>(idx) >= count_) {
                throw RangeError("selection index " + std::to_string(idx) +
                                 " out of range [0, " + std::to_string(count_) + ")");
            }
            auto r = row(static_cast<std::size_t>(idx));
            out.values_.insert(out.values_.end(), r.begin(), r.end());
            if (has_labels()) out.labels_.push_back(labels_[static_cast<std::size_t>(idx)]);
        }
        out.count_ = indices.size();
        return out;
    }

private:
    void attach_labels(std::vector<std::string> labels) {
        if (labels.empty()) return;
        if (labels.size() != count_) {
            throw ArgumentError("label count " + std::to_string(labels.size()) +
                                " does not match embedding count " + std::to_string(count_));
        }
        std::unordered_set<std::string_view> seen;
        for (const auto& label : labels) {
            if (!seen.insert(label).second) throw ArgumentError("duplicate label \"" + label + "\"");
        }
        labels_ = std::move(labels);
    }

    std::vector<double> values_;
    std::vector<std::string> labels_;
    std::size_t count_ = 0;
    std::size_t dim_ = 0;

    friend EmbeddingSet load_embedding_file(const std::filesystem::path&);
};

/// Mean of all rows, renormalized. Throws on empty sets and on mean
/// vectors with zero norm (exactly opposing inputs).
inline std::vector<double> mean_pooled(const EmbeddingSet& set) {
    if (set.empty()) throw ArgumentError("cannot mean-pool an empty embedding set");
    std::vector<double> mean(set.dim(), 0.0);
    for (std::size_t i = 0; i < set.size(); ++i) {
        auto r = set.row(i);
        for (std::size_t d = 0; d < set.dim(); ++d) mean[d] += r[d];
    }
    for (double& v : mean) v /= static_cast<double>(set.size());
    normalize(mean);
    return mean;
}

namespace detail {

class BinaryReader {
public:
    explicit BinaryReader(const std::filesystem::path& path) : path_(path.string()), in_(path, std::ios::binary) {
        if (!in_) throw LoadError("cannot open file: " + path_);
    }

    std::size_t offset() const noexcept { return offset_; }

    void read_exact(void* dst, std::size_t n, const char* what) {
        in_.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
        if (static_cast<std::size_t>(in_.gcount()) != n) {
            throw FormatError(path_ + ": truncated while reading " + std::string(what),
                              offset_ + static_cast<std::size_t>(std::max<std::streamsize>(in_.gcount(), 0)));
        }
        offset_ += n;
    }

    std::uint16_t read_u16(const char* what) {
        std::uint8_t b[2];
        read_exact(b, 2, what);
        return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
    }

    std::uint32_t read_u32(const char* what) {
        std::uint8_t b[4];
        read_exact(b, 4, what);
        return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
               (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
    }

    bool at_eof() {
        return in_.peek() == std::char_traits<char>::eof();
    }

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
    std::ifstream in_;
    std::size_t offset_ = 0;
};

inline void write_u16(std::ofstream& out, std::uint16_t v) {
    const char b[2] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff)};
    out.write(b, 2);
}

inline void write_u32(std::ofstream& out, std::uint32_t v) {
    const char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                       static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
    out.write(b, 4);
}

}  // namespace detail

/// Loads an XEMB file, renormalizing every row. Structural problems raise
/// FormatError carrying the byte offset of the failure.
inline EmbeddingSet load_embedding_file(const std::filesystem::path& path) {
    detail::BinaryReader reader(path);

    char magic[4];
    reader.read_exact(magic, 4, "magic");
    if (std::memcmp(magic, "XEMB", 4) != 0) {
        throw FormatError(reader.path() + ": bad magic (expected \"XEMB\")", 0);
    }
    const std::uint16_t version = reader.read_u16("version");
    if (version != 1) {
        throw FormatError(reader.path() + ": unsupported version " + std::to_string(version), 4);
    }
    const std::uint32_t count = reader.read_u32("count");
    if (count == 0) throw FormatError(reader.path() + ": count must be >= 1", 6);
    const std::uint32_t dim = reader.read_u32("dim");
    if (dim == 0) throw FormatError(reader.path() + ": dim must be >= 1", 10);

    EmbeddingSet set;
    set.dim_ = dim;
    set.count_ = count;
    set.values_.resize(static_cast<std::size_t>(count) * dim);
    std::vector<float> row(dim);
    std::vector<double> drow(dim);
    for (std::uint32_t i = 0; i < count; ++i) {
        const std::size_t row_offset = reader.offset();
        reader.read_exact(row.data(), sizeof(float) * dim, "embedding payload");
        for (std::uint32_t d = 0; d < dim; ++d) drow[d] = static_cast<double>(row[d]);
        try {
            normalize(drow);
        } catch (const Error& e) {
            throw FormatError(reader.path() + ": row " + std::to_string(i) + ": " + e.what(),
                              row_offset);
        }
        std::copy(drow.begin(), drow.end(), set.values_.begin() + static_cast<std::size_t>(i) * dim);
    }

    if (!reader.at_eof()) {
        std::uint8_t flag;
        reader.read_exact(&flag, 1, "label flag");
        if (flag > 1) {
            throw FormatError(reader.path() + ": label flag must be 0 or 1", reader.offset() - 1);
        }
        if (flag == 1) {
            std::vector<std::string> labels;
            labels.reserve(count);
            for (std::uint32_t i = 0; i < count; ++i) {
                const std::uint16_t len = reader.read_u16("label length");
                std::string label(len, '\0');
                if (len > 0) reader.read_exact(label.data(), len, "label bytes");
                labels.push_back(std::move(label));
            }
            try {
                set.attach_labels(std::move(labels));
            } catch (const Error& e) {
                throw FormatError(reader.path() + ": " + e.what(), reader.offset());
            }
        }
    }
    return set;
}

/// Writes an EmbeddingSet as XEMB (float32 payload).
inline void save_embedding_file(const std::filesystem::path& path, const EmbeddingSet& set) {
    if (set.empty()) throw ArgumentError("refusing to write an empty embedding set");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw LoadError("cannot open file for writing: " + path.string());
    out.write("XEMB", 4);
    detail::write_u16(out, 1);
    detail::write_u32(out, static_cast<std::uint32_t>(set.size()));
    detail::write_u32(out, static_cast<std::uint32_t>(set.dim()));
    for (std::size_t i = 0; i < set.size(); ++i) {
        for (double v : set.row(i)) {
            const float f = static_cast<float>(v);
            out.write(reinterpret_cast<const char*>(&f), sizeof(float));
        }
    }
    const std::uint8_t flag = set.has_labels() ? 1 : 0;
    out.write(reinterpret_cast<const char*>(&flag), 1);
    if (flag) {
        for (const auto& label : set.labels()) {
            if (label.size() > 0xffff) throw ArgumentError("label too long for XEMB: " + label);
            detail::write_u16(out, static_cast<std::uint16_t>(label.size()));
            out.write(label.data(), static_cast<std::streamsize>(label.size()));
        }
    }
    if (!out) throw LoadError("write failed: " + path.string());
}

}  // namespace xumeval
