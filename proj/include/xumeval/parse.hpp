// SPDX-FileCopyrightText: 2026 xumeval contributors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file parse.hpp
 * @brief Temporal-aware parsing of model-generated summaries.
 *
 * Model output comes in three flavours selected by the task instruction:
 * VIDEO (temporal tokens only), TEXT (plain prose), and BOTH (prose with
 * embedded temporal tokens). parse_v2v() and parse_v2vt() turn the raw
 * string into a ParsedSummary: decoded frame indices in appearance order
 * (duplicates keep the first occurrence), the prose with token substrings
 * removed and whitespace runs collapsed, and the (raw offset, index) span
 * of every valid token for display or reconstruction.
 *
 * Tokens are recognized anywhere in the string, including glued to words,
 * since model output spacing is unreliable. A bracketed candidate with the
 * wrong digit count (e.g. "[f123]" at width 2) is never decoded; it is
 * counted in the diagnostics and, for mixed text, left in place as prose.
 */

#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "xumeval/error.hpp"
#include "xumeval/temporal.hpp"

namespace xumeval {

/// Which summary modality the model was instructed to produce.
enum class TaskKind { Video, Text, Both };

inline std::string task_word(TaskKind task) {
    switch (task) {
        case TaskKind::Video: return "VIDEO";
        case TaskKind::Text: return "TEXT";
        case TaskKind::Both: return "BOTH";
    }
    throw ArgumentError("invalid TaskKind");
}

inline TaskKind parse_task_kind(std::string_view word) {
    if (word == "VIDEO") return TaskKind::Video;
    if (word == "TEXT") return TaskKind::Text;
    if (word == "BOTH") return TaskKind::Both;
    throw ParseError("unknown task kind \"" + std::string(word) + "\" (expected VIDEO, TEXT, or BOTH)");
}

/// The instruction template handed to the model for a given task.
inline std::string make_task_instruction(TaskKind task) {
    return "Please generate a " + task_word(task) + " summarization for this video.";
}

/// Raw-text location of one valid temporal token occurrence.
struct TokenSpan {
    std::size_t offset = 0;  // character offset of '[' in the raw string
    int index = 0;           // decoded frame index
};

struct ParseDiagnostics {
    int malformed_tokens = 0;     // bracketed candidates with the wrong digit count
    int duplicate_tokens = 0;     // valid tokens dropped by the keep-first rule
    int dropped_out_of_range = 0; // indices removed by validate_against_timeline
};

struct ParsedSummary {
    std::string clean_text;              // token-free prose, whitespace collapsed
    std::vector<int> frame_indices;      // decoded indices, deduplicated keep-first
    std::vector<TokenSpan> token_spans;  // every valid occurrence, offsets increasing
    TaskKind task = TaskKind::Both;
    ParseDiagnostics diagnostics;
};

namespace detail {

struct TokenCandidate {
    std::size_t begin = 0;  // offset of '['
    std::size_t end = 0;    // offset one past ']'
    int digits = 0;
    int value = 0;  // meaningful only when digits == requested width
};

/// Scans for "[f<digits>]" candidates of any digit count.
inline std::vector<TokenCandidate> scan_token_candidates(std::string_view raw) {
    std::vector<TokenCandidate> out;
    std::size_t i = 0;
    while (i + 2 < raw.size()) {
        if (raw[i] != '[' || raw[i + 1] != 'f') {
            ++i;
            continue;
        }
        std::size_t j = i + 2;
        int digits = 0;
        long long value = 0;
        while (j < raw.size() && raw[j] >= '0' && raw[j] <= '9') {
            value = value * 10 + (raw[j] - '0');
            if (value > 1'000'000'000LL) value = 1'000'000'000LL;  // cap, width is small
            ++digits;
            ++j;
        }
        if (digits > 0 && j < raw.size() && raw[j] == ']') {
            out.push_back({i, j + 1, digits, static_cast<int>(value)});
            i = j + 1;
        } else {
            ++i;
        }
    }
    return out;
}

inline bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

/// Collapses whitespace runs to single spaces and trims both ends.
inline std::string collapse_whitespace(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (char c : text) {
        if (is_ascii_space(c)) {
            if (!out.empty()) pending_space = true;
        } else {
            if (pending_space) out += ' ';
            pending_space = false;
            out += c;
        }
    }
    return out;
}

}  // namespace detail

/// Parses VIDEO-task output: temporal tokens with optional separators.
/// Throws EmptySummaryError when no valid token is present.
inline ParsedSummary parse_v2v(std::string_view raw, int width = kDefaultTokenWidth) {
    if (width < 1) throw ArgumentError("token width must be >= 1, got " + std::to_string(width));
    ParsedSummary summary;
    summary.task = TaskKind::Video;
    std::unordered_set<int> seen;
    for (const auto& cand : detail::scan_token_candidates(raw)) {
        if (cand.digits != width) {
            ++summary.diagnostics.malformed_tokens;
            continue;
        }
        summary.token_spans.push_back({cand.begin, cand.value});
        if (seen.insert(cand.value).second) {
            summary.frame_indices.push_back(cand.value);
        } else {
            ++summary.diagnostics.duplicate_tokens;
        }
    }
    if (summary.frame_indices.empty()) {
        throw EmptySummaryError("model output contains no valid temporal token");
    }
    return summary;
}

/// Parses TEXT/BOTH-task output: prose with embedded temporal tokens.
/// Zero tokens is valid (pure text summary).
inline ParsedSummary parse_v2vt(std::string_view raw, int width = kDefaultTokenWidth,
                                TaskKind task = TaskKind::Both) {
    if (width < 1) throw ArgumentError("token width must be >= 1, got " + std::to_string(width));
    ParsedSummary summary;
    summary.task = task;
    std::string stripped;
    stripped.reserve(raw.size());
    std::size_t copied_to = 0;
    std::unordered_set<int> seen;
    for (const auto& cand : detail::scan_token_candidates(raw)) {
        if (cand.digits != width) {
            ++summary.diagnostics.malformed_tokens;
            continue;  // stays in the prose
        }
        stripped.append(raw.substr(copied_to, cand.begin - copied_to));
        copied_to = cand.end;
        summary.token_spans.push_back({cand.begin, cand.value});
        if (seen.insert(cand.value).second) {
            summary.frame_indices.push_back(cand.value);
        } else {
            ++summary.diagnostics.duplicate_tokens;
        }
    }
    stripped.append(raw.substr(copied_to));
    summary.clean_text = detail::collapse_whitespace(stripped);
    return summary;
}

/// Drops indices outside the map's normalized timeline and sorts the rest
/// ascending, the canonical form consumed by the metric suite. Narrative
/// order stays available through token_spans. Throws EmptySummaryError
/// when nothing survives.
inline ParsedSummary validate_against_timeline(ParsedSummary summary, const TimelineMap& map) {
    const int limit = normalized_length(map.original_count(), map.target_count());
    std::vector<int> kept;
    kept.reserve(summary.frame_indices.size());
    for (int idx : summary.frame_indices) {
        if (idx < limit) {
            kept.push_back(idx);
        } else {
            ++summary.diagnostics.dropped_out_of_range;
        }
    }
    if (kept.empty()) {
        throw EmptySummaryError("all frame indices fall outside the normalized timeline of length " +
                                std::to_string(limit));
    }
    std::sort(kept.begin(), kept.end());
    summary.frame_indices = std::move(kept);
    return summary;
}

}  // namespace xumeval
