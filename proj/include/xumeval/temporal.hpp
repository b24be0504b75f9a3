// SPDX-FileCopyrightText: 2026 xumeval contributors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file temporal.hpp
 * @brief Temporal prompt tokens and timeline normalization.
 *
 * A temporal token is a zero-padded frame reference rendered in natural
 * language, e.g. "[f00]", "[f07]", "[f99]" for width 2. Tokens index the
 * normalized timeline produced by downsampling a source video to a fixed
 * length (default 100 frames). Timeline normalization uses floor-based
 * uniform sampling: normalized index k maps to source frame
 * floor(k * original_count / target_count), which is deterministic,
 * monotone, and the identity when the counts are equal.
 *
 * Videos shorter than the target length are conventionally kept at native
 * length instead of being upsampled; see make_normalized_map(). A
 * TimelineMap built with original_count < target_count is still well
 * defined (source indices repeat) and reports shorter_than_target().
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "xumeval/error.hpp"

namespace xumeval {

inline constexpr int kDefaultTokenWidth = 2;
inline constexpr int kDefaultTargetFrames = 100;

namespace detail {

inline std::int64_t pow10(int exponent) {
    std::int64_t v = 1;
    for (int i = 0; i < exponent; ++i) v *= 10;
    return v;
}

}  // namespace detail

/// A frame reference on the normalized timeline plus its rendered width.
struct TemporalToken {
    int index = 0;
    int width = kDefaultTokenWidth;
};

/// Renders `index` as a temporal token, e.g. (7, 2) -> "[f07]".
/// Throws RangeError when the index does not fit the width.
inline std::string encode_temporal_token(int index, int width = kDefaultTokenWidth) {
    if (width < 1) throw ArgumentError("token width must be >= 1, got " + std::to_string(width));
    if (index < 0 || index >= detail::pow10(width)) {
        throw RangeError("temporal index " + std::to_string(index) + " out of range for width " +
                         std::to_string(width));
    }
    std::string digits = std::to_string(index);
    std::string out = "[f";
    out.append(static_cast<std::size_t>(width) - digits.size(), '0');
    out += digits;
    out += ']';
    return out;
}

inline std::string encode_temporal_token(const TemporalToken& token) {
    return encode_temporal_token(token.index, token.width);
}

/// Inverse of encode_temporal_token. Throws ParseError unless `text` is
/// exactly "[f" + `width` decimal digits + "]".
inline int decode_temporal_token(std::string_view text, int width = kDefaultTokenWidth) {
    if (width < 1) throw ArgumentError("token width must be >= 1, got " + std::to_string(width));
    const auto fail = [&](const char* why) -> int {
        throw ParseError(std::string("malformed temporal token \"") + std::string(text) + "\": " + why);
    };
    if (text.size() != static_cast<std::size_t>(width) + 3) return fail("wrong length");
    if (text.substr(0, 2) != "[f") return fail("expected \"[f\" prefix");
    if (text.back() != ']') return fail("expected \"]\" suffix");
    int value = 0;
    for (int i = 0; i < width; ++i) {
        char c = text[static_cast<std::size_t>(i) + 2];
        if (c < '0' || c > '9') return fail("non-digit in index field");
        value = value * 10 + (c - '0');
    }
    return value;
}

/// Monotone map from the normalized timeline to source frame indices.
class TimelineMap {
public:
    TimelineMap(int original_count, int target_count = kDefaultTargetFrames, double fps = 1.0)
        : original_count_(original_count), target_count_(target_count), fps_(fps) {
        if (original_count < 1) {
            throw ArgumentError("original_count must be >= 1, got " + std::to_string(original_count));
        }
        if (target_count < 1) {
            throw ArgumentError("target_count must be >= 1, got " + std::to_string(target_count));
        }
        if (!(fps > 0.0)) throw ArgumentError("fps must be positive");
    }

    int original_count() const noexcept { return original_count_; }
    int target_count() const noexcept { return target_count_; }
    double fps() const noexcept { return fps_; }

    /// True when the source video has fewer frames than the target length,
    /// i.e. normalized indices repeat source frames.
    bool shorter_than_target() const noexcept { return original_count_ < target_count_; }

    /// Source frame index for normalized index k: floor(k * L / T).
    int to_original(int norm_index) const {
        check_index(norm_index);
        return static_cast<int>(static_cast<std::int64_t>(norm_index) * original_count_ /
                                target_count_);
    }

    /// Timestamp of the source frame behind normalized index k, in seconds.
    double to_original_timestamp(int norm_index) const {
        return static_cast<double>(to_original(norm_index)) / fps_;
    }

private:
    void check_index(int norm_index) const {
        if (norm_index < 0 || norm_index >= target_count_) {
            throw RangeError("normalized index " + std::to_string(norm_index) +
                             " out of range [0, " + std::to_string(target_count_) + ")");
        }
    }

    int original_count_;
    int target_count_;
    double fps_;
};

inline TimelineMap build_timeline_map(int original_count,
                                      int target_count = kDefaultTargetFrames,
                                      double fps = 1.0) {
    return TimelineMap(original_count, target_count, fps);
}

/// Normalization policy for real videos: clamp the target to the native
/// frame count so short videos are never upsampled.
inline TimelineMap make_normalized_map(int original_count,
                                       int requested_target = kDefaultTargetFrames,
                                       double fps = 1.0) {
    return TimelineMap(original_count, std::min(original_count, std::max(1, requested_target)), fps);
}

/// Effective normalized length of a video under the native-length policy.
inline int normalized_length(int frame_count, int target_frames = kDefaultTargetFrames) {
    return std::min(frame_count, target_frames);
}

/// One normalized position: its temporal token and the source frame whose
/// visual features fill the adjacent slot.
struct InterleavedEntry {
    TemporalToken token;
    int source_frame = 0;
};

/// Token/visual-slot pairs for a whole normalized timeline, one entry per
/// normalized frame, token indices 0..target_count-1 in order.
struct InterleavedSequence {
    std::vector<InterleavedEntry> entries;
    int token_width = kDefaultTokenWidth;
};

inline InterleavedSequence build_interleaved_sequence(const TimelineMap& map,
                                                      int token_width = kDefaultTokenWidth) {
    const std::int64_t capacity = detail::pow10(token_width);
    if (map.target_count() > capacity) {
        throw ArgumentError("token width " + std::to_string(token_width) + " cannot index " +
                            std::to_string(map.target_count()) + " normalized frames");
    }
    InterleavedSequence seq;
    seq.token_width = token_width;
    seq.entries.reserve(static_cast<std::size_t>(map.target_count()));
    for (int k = 0; k < map.target_count(); ++k) {
        seq.entries.push_back({TemporalToken{k, token_width}, map.to_original(k)});
    }
    return seq;
}

}  // namespace xumeval
