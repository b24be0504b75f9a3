// SPDX-FileCopyrightText: 2026 xumeval contributors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file text_metrics.hpp
 * @brief Caption-style text metrics: BLEU-4, ROUGE-L, CIDEr-D.
 *
 * Configuration is fixed so corpus numbers are reproducible, and echoed
 * into every report:
 *   - tokenize(): lowercase, ASCII punctuation split into separate
 *     tokens, split on Unicode whitespace.
 *   - bleu4(): modified n-gram precisions n=1..4, geometric mean,
 *     brevity penalty, no smoothing (any zero precision gives 0).
 *   - rouge_l(): LCS F-measure with beta = 1 (balanced).
 *   - cider(): CIDEr-D with n=1..4 uniform weights, length-penalty
 *     sigma = 6, x10 scale; IDF from the reference corpus.
 */

#pragma once

#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <span>
#include <tuple>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "xumeval/error.hpp"

namespace xumeval {

inline constexpr double kRougeBeta = 1.0;
inline constexpr double kCiderSigma = 6.0;
inline constexpr double kCiderScale = 10.0;
inline constexpr int kMaxNgramOrder = 4;

namespace detail {

inline bool is_unicode_space(char32_t cp) {
    switch (cp) {
        case 0x09: case 0x0a: case 0x0b: case 0x0c: case 0x0d: case 0x20:
        case 0x85: case 0xa0: case 0x1680: case 0x2028: case 0x2029:
        case 0x202f: case 0x205f: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200a;
    }
}

/// Decodes one UTF-8 code point at `i`; invalid bytes pass through as-is.
inline char32_t next_code_point(std::string_view text, std::size_t& i) {
    const auto byte = static_cast<unsigned char>(text[i]);
    std::size_t len = 1;
    char32_t cp = byte;
    if ((byte & 0xe0) == 0xc0) { len = 2; cp = byte & 0x1f; }
    else if ((byte & 0xf0) == 0xe0) { len = 3; cp = byte & 0x0f; }
    else if ((byte & 0xf8) == 0xf0) { len = 4; cp = byte & 0x07; }
    if (len > 1) {
        if (i + len > text.size()) { ++i; return byte; }
        for (std::size_t k = 1; k < len; ++k) {
            const auto cont = static_cast<unsigned char>(text[i + k]);
            if ((cont & 0xc0) != 0x80) { ++i; return byte; }
            cp = (cp << 6) | (cont & 0x3f);
        }
    }
    i += len;
    return cp;
}

inline bool is_ascii_punct(char32_t cp) {
    return cp < 0x80 && std::ispunct(static_cast<int>(cp));
}

}  // namespace detail

/// Lowercases, splits punctuation into separate tokens, splits on
/// Unicode whitespace. Fixed so corpus numbers are reproducible.
inline std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    const auto flush = [&] {
        if (!current.empty()) {
            tokens.push_back(current);
            current.clear();
        }
    };
    std::size_t i = 0;
    while (i < text.size()) {
        const std::size_t start = i;
        const char32_t cp = detail::next_code_point(text, i);
        if (detail::is_unicode_space(cp)) {
            flush();
        } else if (detail::is_ascii_punct(cp)) {
            flush();
            tokens.emplace_back(1, static_cast<char>(cp));
        } else if (cp < 0x80) {
            current += static_cast<char>(std::tolower(static_cast<int>(cp)));
        } else {
            current.append(text.substr(start, i - start));
        }
    }
    flush();
    return tokens;
}

struct TextScore {
    double bleu4 = 0.0;
    double rouge_l = 0.0;
    double cider = 0.0;
};

namespace detail {

using NgramCounts = std::unordered_map<std::string, int>;

/// N-grams keyed as tokens joined with a separator byte.
inline NgramCounts count_ngrams(std::span<const std::string> tokens, int n) {
    NgramCounts counts;
    if (tokens.size() < static_cast<std::size_t>(n)) return counts;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        std::string key;
        for (int k = 0; k < n; ++k) {
            if (k > 0) key += '\x1f';
            key += tokens[i + static_cast<std::size_t>(k)];
        }
        ++counts[key];
    }
    return counts;
}

}  // namespace detail

/// BLEU-4 against a single reference, no smoothing.
inline double bleu4(std::span<const std::string> pred, std::span<const std::string> ref) {
    if (pred.empty()) return 0.0;
    double log_sum = 0.0;
    for (int n = 1; n <= kMaxNgramOrder; ++n) {
        if (pred.size() < static_cast<std::size_t>(n)) return 0.0;
        const auto pred_counts = detail::count_ngrams(pred, n);
        const auto ref_counts = detail::count_ngrams(ref, n);
        const auto total = pred.size() - static_cast<std::size_t>(n) + 1;
        long long clipped = 0;
        for (const auto& [gram, count] : pred_counts) {
            const auto it = ref_counts.find(gram);
            if (it != ref_counts.end()) clipped += std::min(count, it->second);
        }
        if (clipped == 0) return 0.0;
        log_sum += 0.25 * std::log(static_cast<double>(clipped) / static_cast<double>(total));
    }
    const auto c = static_cast<double>(pred.size());
    const auto r = static_cast<double>(ref.size());
    const double brevity = c > r ? 1.0 : std::exp(1.0 - r / c);
    return brevity * std::exp(log_sum);
}

/// ROUGE-L: F-measure over the longest common subsequence, beta = 1.
inline double rouge_l(std::span<const std::string> pred, std::span<const std::string> ref) {
    if (pred.empty() || ref.empty()) return 0.0;
    // single-row LCS table
    std::vector<std::size_t> prev(ref.size() + 1, 0), curr(ref.size() + 1, 0);
    for (std::size_t i = 1; i <= pred.size(); ++i) {
        for (std::size_t j = 1; j <= ref.size(); ++j) {
            if (pred[i - 1] == ref[j - 1]) {
                curr[j] = prev[j - 1] + 1;
            } else {
                curr[j] = std::max(prev[j], curr[j - 1]);
            }
        }
        std::swap(prev, curr);
    }
    const auto lcs = static_cast<double>(prev[ref.size()]);
    if (lcs == 0.0) return 0.0;
    const double recall = lcs / static_cast<double>(ref.size());
    const double precision = lcs / static_cast<double>(pred.size());
    const double beta_sq = kRougeBeta * kRougeBeta;
    return (1.0 + beta_sq) * precision * recall / (recall + beta_sq * precision);
}

struct CiderResult {
    std::vector<double> per_item;
    double mean = 0.0;
    bool degenerate_idf = false;  // single-item corpus: IDF carries no signal
};

/// CIDEr-D over index-aligned corpora, one reference per prediction.
inline CiderResult cider(const std::vector<std::vector<std::string>>& preds,
                         const std::vector<std::vector<std::string>>& refs) {
    if (preds.size() != refs.size()) {
        throw ArgumentError("prediction and reference corpora must be index-aligned");
    }
    if (preds.empty()) throw ArgumentError("empty corpus");

    const auto corpus_size = static_cast<double>(refs.size());
    const double log_ref_len = std::log(corpus_size);

    std::unordered_map<std::string, int> doc_freq;
    for (const auto& ref : refs) {
        std::unordered_set<std::string> seen;
        for (int n = 1; n <= kMaxNgramOrder; ++n) {
            for (const auto& [gram, count] : detail::count_ngrams(ref, n)) seen.insert(gram);
        }
        for (const auto& gram : seen) ++doc_freq[gram];
    }

    using WeightMap = std::unordered_map<std::string, double>;
    const auto vectorize = [&](std::span<const std::string> tokens) {
        std::array<WeightMap, kMaxNgramOrder> vec;
        std::array<double, kMaxNgramOrder> norm{};
        long long bigram_length = 0;
        for (int n = 1; n <= kMaxNgramOrder; ++n) {
            for (const auto& [gram, tf] : detail::count_ngrams(tokens, n)) {
                const auto it = doc_freq.find(gram);
                const double df = std::log(std::max(1.0, it == doc_freq.end() ? 0.0 : double(it->second)));
                const double w = static_cast<double>(tf) * (log_ref_len - df);
                vec[n - 1][gram] = w;
                norm[n - 1] += w * w;
                if (n == 2) bigram_length += tf;
            }
        }
        for (double& v : norm) v = std::sqrt(v);
        return std::tuple{std::move(vec), norm, bigram_length};
    };

    CiderResult result;
    result.degenerate_idf = refs.size() < 2;
    result.per_item.reserve(preds.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < preds.size(); ++i) {
        const auto [vec_h, norm_h, len_h] = vectorize(preds[i]);
        const auto [vec_r, norm_r, len_r] = vectorize(refs[i]);
        const double delta = static_cast<double>(len_h - len_r);
        const double penalty = std::exp(-(delta * delta) / (2.0 * kCiderSigma * kCiderSigma));
        double item = 0.0;
        for (int n = 0; n < kMaxNgramOrder; ++n) {
            double val = 0.0;
            for (const auto& [gram, w_h] : vec_h[n]) {
                const auto it = vec_r[n].find(gram);
                if (it == vec_r[n].end()) continue;
                val += std::min(w_h, it->second) * it->second;
            }
            if (norm_h[n] != 0.0 && norm_r[n] != 0.0) val /= norm_h[n] * norm_r[n];
            item += val * penalty;
        }
        item = item / kMaxNgramOrder * kCiderScale;
        result.per_item.push_back(item);
        sum += item;
    }
    result.mean = sum / static_cast<double>(preds.size());
    return result;
}

}  // namespace xumeval
