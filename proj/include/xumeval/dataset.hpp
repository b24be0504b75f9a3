// SPDX-FileCopyrightText: 2026 xumeval contributors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file dataset.hpp
 * @brief Dataset manifests, the redundancy filter, and corpus statistics.
 *
 * Manifests are JSON lines, one video per line:
 *
 *   {"video_id": str, "duration_s": number, "frame_count": int,
 *    "fps": number, "gt_video_summary": [int], "gt_text_summary": str,
 *    "gt_frame_scores": [number] (optional),
 *    "split": "train"|"val"|"test",
 *    "frame_emb": path (optional), "text_emb": path (optional)}
 *
 * Ground-truth video summaries live on the normalized timeline, whose
 * length is min(frame_count, target_frames). Validation failures carry
 * their line numbers and are reported together.
 *
 * The redundancy filter is a greedy sequential scan in temporal order:
 * frame 0 is always kept; frame i is kept iff its similarity to every
 * already-kept frame stays below the threshold. Deterministic and
 * order-respecting by construction.
 *
 * Similarity matrices use the XSIM file layout (little-endian):
 *   magic "XSIM" | count u32 | count * count float32, row-major
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "xumeval/embedding.hpp"
#include "xumeval/error.hpp"
#include "xumeval/parse.hpp"
#include "xumeval/temporal.hpp"
#include "xumeval/text_metrics.hpp"

#include <json.hpp>

namespace xumeval {

inline constexpr double kDefaultRedundancyThreshold = 0.93;

enum class Split { Train, Val, Test };

inline std::string split_name(Split split) {
    switch (split) {
        case Split::Train: return "train";
        case Split::Val: return "val";
        case Split::Test: return "test";
    }
    throw ArgumentError("invalid Split");
}

inline Split parse_split(std::string_view word) {
    if (word == "train") return Split::Train;
    if (word == "val") return Split::Val;
    if (word == "test") return Split::Test;
    throw ParseError("unknown split label \"" + std::string(word) +
                     "\" (expected train, val, or test)");
}

/// One manifest entry.
struct VideoRecord {
    std::string video_id;
    double duration_s = 0.0;
    int frame_count = 0;
    double fps = 1.0;
    std::vector<int> gt_video_summary;           // sorted unique, normalized timeline
    std::string gt_text_summary;                 // may embed temporal tokens
    std::optional<std::vector<double>> gt_frame_scores;  // normalized-timeline length
    Split split = Split::Train;
    std::optional<std::string> frame_emb;
    std::optional<std::string> text_emb;

    int normalized_len(int target_frames = kDefaultTargetFrames) const {
        return normalized_length(frame_count, target_frames);
    }
};

namespace detail {

inline void validate_record(const VideoRecord& rec, int target_frames, int token_width,
                            std::vector<std::string>& problems, std::size_t line_no) {
    const auto complain = [&](const std::string& what) {
        problems.push_back("line " + std::to_string(line_no) + ": " + what);
    };
    if (rec.video_id.empty()) complain("video_id must be non-empty");
    if (rec.frame_count < 1) complain("frame_count must be >= 1");
    if (!(rec.fps > 0.0)) complain("fps must be positive");
    if (rec.duration_s < 0.0) complain("duration_s must be non-negative");
    if (rec.frame_count >= 1 && rec.fps > 0.0 &&
        std::abs(static_cast<double>(rec.frame_count) - rec.duration_s * rec.fps) > 1.0 + 1e-9) {
        complain("frame_count " + std::to_string(rec.frame_count) +
                 " is more than one frame away from duration_s * fps");
    }
    const int norm_len = rec.normalized_len(target_frames);
    int prev = -1;
    for (int idx : rec.gt_video_summary) {
        if (idx < 0 || idx >= norm_len) {
            complain("gt_video_summary index " + std::to_string(idx) +
                     " outside normalized timeline [0, " + std::to_string(norm_len) + ")");
        }
        if (idx <= prev) complain("gt_video_summary must be sorted and unique");
        prev = idx;
    }
    if (rec.gt_frame_scores &&
        rec.gt_frame_scores->size() != static_cast<std::size_t>(norm_len)) {
        complain("gt_frame_scores has " + std::to_string(rec.gt_frame_scores->size()) +
                 " entries, expected normalized length " + std::to_string(norm_len));
    }
    (void)token_width;
}

}  // namespace detail

/// Loads and validates a JSONL manifest. Every offending line is listed
/// in one LoadError; nothing is returned unless the whole file is clean.
inline std::vector<VideoRecord> load_manifest(const std::filesystem::path& path,
                                              int target_frames = kDefaultTargetFrames,
                                              int token_width = kDefaultTokenWidth) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open manifest: " + path.string());

    std::vector<VideoRecord> records;
    std::vector<std::string> problems;
    std::unordered_map<std::string, std::size_t> first_line_of_id;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            problems.push_back("line " + std::to_string(line_no) + ": " + e.what());
            continue;
        }
        VideoRecord rec;
        try {
            rec.video_id = obj.at("video_id").get<std::string>();
            rec.duration_s = obj.at("duration_s").get<double>();
            rec.frame_count = obj.at("frame_count").get<int>();
            rec.fps = obj.value("fps", 1.0);
            rec.gt_video_summary = obj.at("gt_video_summary").get<std::vector<int>>();
            rec.gt_text_summary = obj.at("gt_text_summary").get<std::string>();
            if (obj.contains("gt_frame_scores")) {
                rec.gt_frame_scores = obj.at("gt_frame_scores").get<std::vector<double>>();
            }
            rec.split = parse_split(obj.at("split").get<std::string>());
            if (obj.contains("frame_emb")) rec.frame_emb = obj.at("frame_emb").get<std::string>();
            if (obj.contains("text_emb")) rec.text_emb = obj.at("text_emb").get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            problems.push_back("line " + std::to_string(line_no) + ": " + e.what());
            continue;
        } catch (const ParseError& e) {
            problems.push_back("line " + std::to_string(line_no) + ": " + e.what());
            continue;
        }
        detail::validate_record(rec, target_frames, token_width, problems, line_no);
        const auto [it, inserted] = first_line_of_id.emplace(rec.video_id, line_no);
        if (!inserted) {
            problems.push_back("line " + std::to_string(line_no) + ": duplicate video_id \"" +
                               rec.video_id + "\" (first seen on line " +
                               std::to_string(it->second) + ")");
        }
        records.push_back(std::move(rec));
    }
    if (!problems.empty()) {
        std::string message = path.string() + ": manifest rejected:";
        for (const auto& p : problems) message += "\n  " + p;
        throw LoadError(message);
    }
    return records;
}

/// Square similarity matrix with values in [-1, 1].
class SimMatrix {
public:
    SimMatrix(std::size_t n, std::vector<double> values) : n_(n), values_(std::move(values)) {
        if (values_.size() != n_ * n_) {
            throw ArgumentError("similarity matrix must be square: got " +
                                std::to_string(values_.size()) + " values for n = " +
                                std::to_string(n_));
        }
    }

    std::size_t size() const noexcept { return n_; }

    double at(std::size_t i, std::size_t j) const {
        if (i >= n_ || j >= n_) throw RangeError("similarity index out of range");
        return values_[i * n_ + j];
    }

private:
    std::size_t n_;
    std::vector<double> values_;
};

/// Loads an XSIM similarity matrix file.
inline SimMatrix load_similarity_file(const std::filesystem::path& path) {
    detail::BinaryReader reader(path);
    char magic[4];
    reader.read_exact(magic, 4, "magic");
    if (std::memcmp(magic, "XSIM", 4) != 0) {
        throw FormatError(reader.path() + ": bad magic (expected \"XSIM\")", 0);
    }
    const std::uint32_t count = reader.read_u32("count");
    if (count == 0) throw FormatError(reader.path() + ": count must be >= 1", 4);
    std::vector<double> values(static_cast<std::size_t>(count) * count);
    std::vector<float> row(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        reader.read_exact(row.data(), sizeof(float) * count, "similarity payload");
        for (std::uint32_t j = 0; j < count; ++j) {
            values[static_cast<std::size_t>(i) * count + j] = static_cast<double>(row[j]);
        }
    }
    return SimMatrix(count, std::move(values));
}

/// Greedy sequential redundancy filter over `n` frames: keep frame 0,
/// keep frame i iff sim(i, k) < threshold for every already-kept k < i.
/// `sim` must be callable as double(std::size_t, std::size_t).
template <typename SimFn>
std::vector<int> redundancy_filter(std::size_t n, SimFn&& sim, double threshold) {
    if (!(threshold > 0.0) || threshold > 1.0) {
        throw ArgumentError("threshold must be in (0, 1], got " + std::to_string(threshold));
    }
    std::vector<int> kept;
    for (std::size_t i = 0; i < n; ++i) {
        bool redundant = false;
        for (int k : kept) {
            if (sim(i, static_cast<std::size_t>(k)) >= threshold) {
                redundant = true;
                break;
            }
        }
        if (!redundant) kept.push_back(static_cast<int>(i));
    }
    return kept;
}

inline std::vector<int> redundancy_filter(const SimMatrix& sims,
                                          double threshold = kDefaultRedundancyThreshold) {
    return redundancy_filter(sims.size(), [&](std::size_t i, std::size_t j) { return sims.at(i, j); },
                             threshold);
}

///// Redundancy filter over caption embeddings: similarity is the plain
/// cosine (unit-norm dot product, not clamped).
inline std::vector<int> redundancy_filter(const EmbeddingSet& captions,
                                          double threshold = kDefaultRedundancyThreshold) {
    const auto cosine = [&](std::size_t i, std::size_t j) {
        auto a = captions.row(i);
        auto b = captions.row(j);
        double dot = 0.0;
        for (std::size_t d = 0; d < a.size(); ++d) dot += a[d] * b[d];
        return dot;
    };
    return redundancy_filter(captions.size(), cosine, threshold);
}

/// Corpus-level aggregates.
struct CorpusStats {
    std::size_t n_videos = 0;
    double mean_duration_s = 0.0;
    double mean_text_tokens = 0.0;          // over token-stripped text summaries
    double mean_video_summary_frames = 0.0;
    double mean_compression_ratio = 0.0;    // |gt_video_summary| / frame_count
};

inline CorpusStats corpus_stats(std::span<const VideoRecord> records,
                                int token_width = kDefaultTokenWidth) {
    if (records.empty()) throw ArgumentError("corpus_stats requires a non-empty corpus");
    CorpusStats stats;
    stats.n_videos = records.size();
    double duration = 0.0, text_tokens = 0.0, summary_frames = 0.0, compression = 0.0;
    for (const auto& rec : records) {
        duration += rec.duration_s;
        const auto parsed = parse_v2vt(rec.gt_text_summary, token_width);
        text_tokens += static_cast<double>(tokenize(parsed.clean_text).size());
        summary_frames += static_cast<double>(rec.gt_video_summary.size());
        compression += static_cast<double>(rec.gt_video_summary.size()) /
                       static_cast<double>(rec.frame_count);
    }
    const auto n = static_cast<double>(records.size());
    stats.mean_duration_s = duration / n;
    stats.mean_text_tokens = text_tokens / n;
    stats.mean_video_summary_frames = summary_frames / n;
    stats.mean_compression_ratio = compression / n;
    return stats;
}

struct SplitCounts {
    std::size_t train = 0;
    std::size_t val = 0;
    std::size_t test = 0;
};

inline SplitCounts split_counts(std::span<const VideoRecord> records) {
    SplitCounts counts;
    for (const auto& rec : records) {
        switch (rec.split) {
            case Split::Train: ++counts.train; break;
            case Split::Val: ++counts.val; break;
            case Split::Test: ++counts.test; break;
        }
    }
    return counts;
}

}  // namespace xumeval
