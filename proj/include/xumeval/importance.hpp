// SPDX-FileCopyrightText: 2026 xumeval contributors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file importance.hpp
 * @brief Per-frame importance scores from decoder digit logits.
 *
 * When a language model writes a temporal token, the logits behind its
 * digit positions carry the model's confidence in that frame reference.
 * The probability of the whole index is approximated by the product of
 * the per-digit softmax probabilities at the ids actually decoded, e.g.
 * p(tens, ones) ~= p(tens) * p(ones) for width-2 tokens.
 *
 * importance_vector() spreads these probabilities over the normalized
 * timeline: each referenced frame receives its own product probability,
 * unreferenced frames receive 0, and the scalar mean over the referenced
 * frames is reported alongside. The per-frame vector is what the rank
 * correlation metrics consume; the scalar is the aggregate summary value.
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "xumeval/error.hpp"

#include <json.hpp>

namespace xumeval {

/// Numerically stable softmax (max-subtraction). Output sums to 1.
/// Throws NumericError on non-finite input, ArgumentError on empty input.
inline std::vector<double> softmax(std::span<const double> logits) {
    if (logits.empty()) throw ArgumentError("softmax input must be non-empty");
    double max_logit = logits[0];
    for (double v : logits) {
        if (!std::isfinite(v)) throw NumericError("softmax input contains NaN or Inf");
        max_logit = std::max(max_logit, v);
    }
    std::vector<double> out(logits.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        out[i] = std::exp(logits[i] - max_logit);
        sum += out[i];
    }
    for (double& v : out) v /= sum;
    return out;
}

/// Digit logits captured while the model decoded one temporal token.
struct LogitRecord {
    int position = 0;     // output-sequence index of the tens digit
    int frame_index = 0;  // the integer the digits decode to
    std::vector<double> tens_logits;
    std::vector<double> ones_logits;
    int decoded_tens_id = 0;
    int decoded_ones_id = 0;
};

namespace detail {

inline double decoded_probability(std::span<const double> logits, int decoded_id) {
    if (decoded_id < 0 || static_cast<std::size_t>(decoded_id) >= logits.size()) {
        throw RangeError("decoded id " + std::to_string(decoded_id) +
                         " out of range for logit vector of size " + std::to_string(logits.size()));
    }
    return softmax(logits)[static_cast<std::size_t>(decoded_id)];
}

}  // namespace detail

/// Product of the per-digit softmax probabilities at the decoded ids;
/// generalizes p(tens, ones) to any digit count.
inline double digit_product_probability(
    std::span<const std::pair<std::vector<double>, int>> digits) {
    if (digits.empty()) throw ArgumentError("at least one digit position required");
    double p = 1.0;
    for (const auto& [logits, decoded_id] : digits) {
        p *= detail::decoded_probability(logits, decoded_id);
    }
    return p;
}

/// p(tens) * p(ones) for one width-2 token.
inline double digit_pair_probability(const LogitRecord& rec) {
    if (rec.tens_logits.size() != rec.ones_logits.size() || rec.tens_logits.size() < 2) {
        throw ArgumentError("tens and ones logit vectors must have identical dimension >= 2");
    }
    return detail::decoded_probability(rec.tens_logits, rec.decoded_tens_id) *
           detail::decoded_probability(rec.ones_logits, rec.decoded_ones_id);
}

/// Per-frame importance scores over a normalized timeline.
struct ImportanceVector {
    std::vector<double> scores;  // one entry per normalized frame, 0 where unreferenced
    double mean_score = 0.0;     // mean of the M record probabilities
};

/// Assigns each record's product probability to its frame; frames without
/// a record score 0. Records must reference distinct, in-range frames.
inline ImportanceVector importance_vector(const std::vector<LogitRecord>& records,
                                          int timeline_len) {
    if (timeline_len < 1) throw ArgumentError("timeline_len must be >= 1");
    if (records.empty()) throw EmptySummaryError("no logit records to score");
    ImportanceVector result;
    result.scores.assign(static_cast<std::size_t>(timeline_len), 0.0);
    std::vector<bool> used(static_cast<std::size_t>(timeline_len), false);
    double sum = 0.0;
    for (const auto& rec : records) {
        if (rec.frame_index < 0 || rec.frame_index >= timeline_len) {
            throw RangeError("frame index " + std::to_string(rec.frame_index) +
                             " out of range for timeline of length " + std::to_string(timeline_len));
        }
        const auto frame = static_cast<std::size_t>(rec.frame_index);
        if (used[frame]) {
            throw ArgumentError("duplicate frame index " + std::to_string(rec.frame_index) +
                                " (canonicalize records before scoring)");
        }
        used[frame] = true;
        const double p = digit_pair_probability(rec);
        result.scores[frame] = p;
        sum += p;
    }
    result.mean_score = sum / static_cast<double>(records.size());
    return result;
}

/// Reads logit records from a JSON-lines file: one object per line with
/// fields position, frame_index, tens_logits, ones_logits,
/// decoded_tens_id, decoded_ones_id.
inline std::vector<LogitRecord> load_logit_records(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open logit file: " + path.string());
    std::vector<LogitRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw LoadError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
        try {
            LogitRecord rec;
            rec.position = obj.at("position").get<int>();
            rec.frame_index = obj.at("frame_index").get<int>();
            rec.tens_logits = obj.at("tens_logits").get<std::vector<double>>();
            rec.ones_logits = obj.at("ones_logits").get<std::vector<double>>();
            rec.decoded_tens_id = obj.at("decoded_tens_id").get<int>();
            rec.decoded_ones_id = obj.at("decoded_ones_id").get<int>();
            if (rec.tens_logits.size() != rec.ones_logits.size() || rec.tens_logits.size() < 2) {
                throw LoadError(path.string() + ":" + std::to_string(line_no) +
                                ": tens/ones logit vectors must have identical dimension >= 2");
            }
            records.push_back(std::move(rec));
        } catch (const nlohmann::json::exception& e) {
            throw LoadError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return records;
}

}  // namespace xumeval
